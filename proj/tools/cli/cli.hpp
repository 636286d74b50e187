#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dpdlogit::cli {

/// Parses `args` (without the program name), runs the subcommand and returns
/// the process exit code: 0 success, 2 usage or data error, 3 non-convergence,
/// 4 singular matrix, 5 too many failed simulation replications.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dpdlogit::cli
