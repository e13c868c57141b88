#pragma once

#include <string>
#include <vector>

#include "ruleforge/search.hpp"

namespace rf {

// Exit codes: 0 success (even when no complete solution was found),
// 2 user/config error, 3 internal invariant violation.
int cli_main(int argc, const char* const* argv);

// Report body is byte-identical for identical flags and seed; the wall-time
// line is prefixed with '#' and excluded from that guarantee.
std::string run_report(const Problem& problem, const LearnConfig& cfg, const LearnResult& res,
                       double wall_ms);

// Program files: one rule per line, '#' comments.
std::vector<Rule> load_program_file(const std::string& path);

}  // namespace rf
