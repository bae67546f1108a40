#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace degenrad::cli {

/// Entry point behind the `degenrad` binary:
///   degenrad <rearrange|solve|verify|regularity> --config <path> --out <dir>
/// Returns 0 on success, 2 on configuration/validation failure, 3 on
/// numerical failure; error messages name the failing check.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace degenrad::cli
