#pragma once

// Umbrella header: the full library.

#include "ighastar/core/dominance.hpp"
#include "ighastar/core/hybrid_astar.hpp"
#include "ighastar/core/iha_star.hpp"
#include "ighastar/core/igha_star.hpp"
#include "ighastar/core/resolution.hpp"
#include "ighastar/core/rules.hpp"
#include "ighastar/core/search_state.hpp"
#include "ighastar/core/types.hpp"

#include "ighastar/domains/goal.hpp"
#include "ighastar/domains/kinematic_car.hpp"
#include "ighastar/domains/kinodynamic_car.hpp"
#include "ighastar/domains/point_robot.hpp"

#include "ighastar/worlds/elevation_map.hpp"
#include "ighastar/worlds/generators.hpp"
#include "ighastar/worlds/map_io.hpp"
#include "ighastar/worlds/occupancy_grid.hpp"
#include "ighastar/worlds/query_set.hpp"

#include "ighastar/bench/config.hpp"
#include "ighastar/bench/rankplot.hpp"
#include "ighastar/bench/records.hpp"
#include "ighastar/bench/runner.hpp"
#include "ighastar/bench/summary.hpp"
#include "ighastar/bench/svg_render.hpp"

#include "ighastar/util/check.hpp"
#include "ighastar/util/rng.hpp"
#include "ighastar/util/text.hpp"
