#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace aesq {

/// Exit codes: 0 ok, 1 usage or validation, 2 infeasible parameters,
/// 3 tolerance or consistency failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "%.12g"
std::string format_real(double v);

}  // namespace aesq
