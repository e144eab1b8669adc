#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ciaodv/scenario.hpp"

namespace ciaodv {

class UnknownScenario : public std::invalid_argument {
 public:
  explicit UnknownScenario(std::string_view name);
};

/// fig1, fig2, fig3, table1, star_relay.
const std::vector<std::string>& builtin_names();
ScenarioSpec builtin(std::string_view name);

/// K sources and K sinks joined only through one relay R whose forwarding
/// capacity equals two flows' load.
ScenarioSpec star_relay(std::uint32_t k = 4);

}  // namespace ciaodv
