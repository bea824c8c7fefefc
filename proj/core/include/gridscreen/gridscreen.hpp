#pragma once

#include "gridscreen/dcflow.hpp"
#include "gridscreen/graph.hpp"
#include "gridscreen/network.hpp"
#include "gridscreen/report.hpp"
#include "gridscreen/screening.hpp"
#include "gridscreen/severity.hpp"
#include "gridscreen/topology.hpp"
