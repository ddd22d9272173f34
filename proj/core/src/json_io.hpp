#pragma once

// nlohmann/json conversions shared by the I/O translation units. Private to
// the core library.

#include <json.hpp>

#include "bohmslit/config.hpp"
#include "bohmslit/experiment.hpp"
#include "bohmslit/statistics.hpp"

namespace bohmslit::detail {

nlohmann::ordered_json config_to_json(const RunConfig& cfg);
nlohmann::ordered_json to_json(const ChiSquare& c);
nlohmann::ordered_json to_json(const ScreenHistogram& h);
nlohmann::ordered_json to_json(const SelectiveReport& r);
nlohmann::ordered_json to_json(const ComparisonReport& r);

}  // namespace bohmslit::detail
