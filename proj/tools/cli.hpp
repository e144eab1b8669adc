#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ciaodv/scenario.hpp"

namespace ciaodv::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;

/// Bad invocation or unusable scenario; maps to exit code 2.
class UserError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A built-in name or a path to a scenario file.
ScenarioSpec load_scenario(std::string_view ref);

/// Entry point behind the `ciaodv` binary. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ciaodv::cli
