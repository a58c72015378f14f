// Umbrella header for the polar coded-modulation toolkit.
#ifndef POLARCM_HPP
#define POLARCM_HPP

#include "polarcm/analysis.hpp"
#include "polarcm/channels.hpp"
#include "polarcm/csv.hpp"
#include "polarcm/demap.hpp"
#include "polarcm/f2.hpp"
#include "polarcm/figures.hpp"
#include "polarcm/mlc.hpp"
#include "polarcm/polar.hpp"
#include "polarcm/quadrature.hpp"
#include "polarcm/rng.hpp"
#include "polarcm/sbp.hpp"
#include "polarcm/sim.hpp"

#endif
