#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cct::cli {

// Runs one cct command. Returns 0 on success, 1 on domain errors
// ("error: <category>: <detail>" on err), 2 on usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cct::cli
