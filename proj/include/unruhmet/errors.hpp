#pragma once

#include <stdexcept>
#include <string>

namespace unruhmet {

// Base for recoverable computation errors. Parameter sweeps convert these
// into flagged records; the CLI maps them to exit code 2.
class ModelError : public std::runtime_error {
public:
    ModelError(std::string name, const std::string& msg)
        : std::runtime_error(msg), name_(std::move(name)) {}

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

class CouplingOutOfRange : public ModelError {
public:
    explicit CouplingOutOfRange(const std::string& msg)
        : ModelError("CouplingOutOfRange", msg) {}
};

class DegenerateTemperature : public ModelError {
public:
    explicit DegenerateTemperature(const std::string& msg)
        : ModelError("DegenerateTemperature", msg) {}
};

class NotHermitian : public ModelError {
public:
    explicit NotHermitian(const std::string& msg)
        : ModelError("NotHermitian", msg) {}
};

class NotXState : public ModelError {
public:
    explicit NotXState(const std::string& msg)
        : ModelError("NotXState", msg) {}
};

class InvalidPovm : public ModelError {
public:
    explicit InvalidPovm(const std::string& msg)
        : ModelError("InvalidPovm", msg) {}
};

class StepTooLarge : public ModelError {
public:
    explicit StepTooLarge(const std::string& msg)
        : ModelError("StepTooLarge", msg) {}
};

} // namespace unruhmet
