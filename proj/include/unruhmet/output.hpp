#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "unruhmet/explore.hpp"

namespace unruhmet {

/// Formats a double with 17 significant digits (round-trip exact).
std::string format_double(double value);

/// CSV table for sweep records: axis columns in coordinate order, then qfi,
/// concurrence, alpha, beta, gamma, flags. One header row, 17-significant-
/// digit decimals, ';'-joined flags, final line newline-terminated.
std::string records_to_csv(const std::vector<SweepRecord>& records);

nlohmann::json record_to_json(const SweepRecord& record);

/// JSON document {"meta": ..., "records": [...]} that reserialises
/// byte-identically after a parse round trip.
std::string records_to_json(const nlohmann::json& meta,
                            const std::vector<SweepRecord>& records);

nlohmann::json axis_to_json(const AxisSpec& axis);

} // namespace unruhmet
