#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dhsim {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int {
    kOk = 0,
    kPropertyViolation = 1,
    kInputError = 2,
    kInfeasible = 3,
    kOracleBudget = 4,
};

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dhsim
