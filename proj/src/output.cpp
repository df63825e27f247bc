#include "unruhmet/output.hpp"

#include <cstdio>

namespace unruhmet {

std::string format_double(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

namespace {

std::string join_flags(const std::vector<std::string>& flags) {
    std::string out;
    for (std::size_t i = 0; i < flags.size(); ++i) {
        if (i > 0) out += ';';
        out += flags[i];
    }
    return out;
}

} // namespace

std::string records_to_csv(const std::vector<SweepRecord>& records) {
    std::string out;
    out.reserve(records.size() * 128 + 64);

    if (!records.empty())
        for (const auto& [name, value] : records.front().coordinates) {
            out += to_string(name);
            out += ',';
        }
    out += "qfi,concurrence,alpha,beta,gamma,flags\n";

    for (const SweepRecord& r : records) {
        for (const auto& [name, value] : r.coordinates) {
            out += format_double(value);
            out += ',';
        }
        out += format_double(r.qfi);
        out += ',';
        out += format_double(r.concurrence);
        out += ',';
        out += format_double(r.coefficients.alpha);
        out += ',';
        out += format_double(r.coefficients.beta);
        out += ',';
        out += format_double(r.coefficients.gamma);
        out += ',';
        out += join_flags(r.flags);
        out += '\n';
    }
    return out;
}

nlohmann::json record_to_json(const SweepRecord& record) {
    nlohmann::json j;
    if (!record.coordinates.empty()) {
        nlohmann::json coords;
        for (const auto& [name, value] : record.coordinates)
            coords[to_string(name)] = value;
        j["coordinates"] = coords;
    }
    j["qfi"] = record.qfi;
    j["concurrence"] = record.concurrence;
    j["alpha"] = record.coefficients.alpha;
    j["beta"] = record.coefficients.beta;
    j["gamma"] = record.coefficients.gamma;
    j["flags"] = record.flags;
    return j;
}

std::string records_to_json(const nlohmann::json& meta,
                            const std::vector<SweepRecord>& records) {
    nlohmann::json doc;
    doc["meta"] = meta;
    nlohmann::json array = nlohmann::json::array();
    for (const SweepRecord& r : records) array.push_back(record_to_json(r));
    doc["records"] = array;
    return doc.dump(2) + "\n";
}

nlohmann::json axis_to_json(const AxisSpec& axis) {
    return nlohmann::json{{"name", to_string(axis.name)},
                          {"start", axis.start},
                          {"stop", axis.stop},
                          {"points", axis.points},
                          {"scale", axis.scale == AxisScale::log ? "log"
                                                                 : "linear"}};
}

} // namespace unruhmet
