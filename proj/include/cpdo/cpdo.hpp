#pragma once

// Umbrella header for the whole library.

#include "model.hpp"    // parameters, single-step and closed-form capital
#include "exact.hpp"    // exact rational probabilities and enumeration
#include "asym.hpp"     // normal-approximation layer
#include "bounds.hpp"   // analytic bounds
#include "philox.hpp"   // counter-based RNG
#include "sim.hpp"      // Monte Carlo paths, ensembles, diagnostics
#include "io.hpp"       // JSON/CSV serialization
