#pragma once

#include <string_view>
#include <vector>

#include "etf/client/chat_model.hpp"
#include "etf/code/token.hpp"
#include "etf/ner/types.hpp"
#include "etf/verify/aggregate.hpp"

namespace etf::verify {

/// Parses the `[{entity_name:"", relevant_sentence:""}]` reply of the direct
/// prompt. Code fences and text around the outermost brackets are ignored,
/// and unquoted keys are tolerated. Each finding is checked against the
/// summary; names that never occur there are kept but marked ungrounded.
/// Throws MalformedBackendOutput when no list can be recovered.
std::vector<DirectFinding> parse_direct_output(std::string_view response, std::string_view summary_text);

/// Direct baseline: one prompt over the whole summary. The report is
/// HALLUCINATED iff the model lists at least one finding; localization holds
/// the summary sentences quoted by findings.
SummaryReport direct_verify(const code::SourceUnit& code, const ner::Summary& summary, client::ChatModel& model,
                            int max_attempts = 3);

}  // namespace etf::verify
