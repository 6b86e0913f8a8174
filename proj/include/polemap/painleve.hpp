#pragma once

#include "polemap/taylor.hpp"

namespace polemap {

/// First Painleve transcendent y'' = 6 y^2 + t as the first-order system
/// y1' = y2, y2' = 6 y1^2 + t. State is [y, y'].
OdeSystem painleve1();

/// Looks up a built-in system by label. Throws std::invalid_argument for
/// unknown names.
OdeSystem named_system(const std::string& name);

}  // namespace polemap
