#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <string_view>

#include "etf/verify/aggregate.hpp"

namespace etf::verify {

/// JSON view of a report with a fixed key order. When `summary_text` is
/// given, localization entries also carry the sentence text.
nlohmann::ordered_json to_json(const SummaryReport& report, std::string_view summary_text = {});

/// Human-readable report for terminals.
std::string render_text(const SummaryReport& report, std::string_view summary_text = {});

}  // namespace etf::verify
