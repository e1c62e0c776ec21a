#ifndef LIFTCOAL_LIFTCOAL_HPP
#define LIFTCOAL_LIFTCOAL_HPP

#include "liftcoal/coalescent_sim.hpp"
#include "liftcoal/crp_gem.hpp"
#include "liftcoal/exact_oracle.hpp"
#include "liftcoal/gauss_jacobi.hpp"
#include "liftcoal/lifting.hpp"
#include "liftcoal/partition.hpp"
#include "liftcoal/plane_tree.hpp"
#include "liftcoal/rates.hpp"
#include "liftcoal/rational.hpp"
#include "liftcoal/rng.hpp"
#include "liftcoal/stats.hpp"
#include "liftcoal/verify.hpp"

#endif
