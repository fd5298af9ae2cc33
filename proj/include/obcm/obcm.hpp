#ifndef OBCM_OBCM_HPP
#define OBCM_OBCM_HPP

// Umbrella header: solvers and benchmark harness for one-sided bipartite
// crossing minimisation.

#include "obcm/bench.hpp"
#include "obcm/classic.hpp"
#include "obcm/cross_table.hpp"
#include "obcm/exact.hpp"
#include "obcm/instance.hpp"
#include "obcm/rng.hpp"
#include "obcm/search.hpp"
#include "obcm/stats.hpp"

#endif
