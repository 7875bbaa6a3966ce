#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace curate::cli {

/// Runs one `curate` invocation. `args` excludes the program name.
/// Returns 0 on success, 1 on an operational error, 2 on a usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace curate::cli
