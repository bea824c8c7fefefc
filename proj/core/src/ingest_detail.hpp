#pragma once

#include "gridscreen/network.hpp"

namespace gridscreen::detail {

// Unique bus ids and branch endpoints that name existing buses.
void check_references(const PowerNetwork& network);

}  // namespace gridscreen::detail
