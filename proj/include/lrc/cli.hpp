#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lrc::cli {

enum ExitCode { kOk = 0, kSuboptimal = 1, kInconclusive = 2, kInvalidInput = 3 };

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Rendered reports, also used by tests.
std::string table_text(std::uint32_t q);
std::string params_text(std::uint32_t q);

}  // namespace lrc::cli
