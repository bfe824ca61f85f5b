#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace starprod::cli {

inline constexpr int kReportSchema = 1;
inline constexpr int kToleranceTableVersion = 1;

/// Default tolerance for every named residual a command can report.
const std::map<std::string, double>& default_tolerances();

/// Exit codes: 0 pass, 1 fail, 2 usage or parse error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace starprod::cli
