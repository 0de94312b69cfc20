#pragma once

// Umbrella header: hypergraph structure learning from smooth signals.

#include "hsls/baselines.hpp"
#include "hsls/errors.hpp"
#include "hsls/eval.hpp"
#include "hsls/hypergraph.hpp"
#include "hsls/io.hpp"
#include "hsls/parallel.hpp"
#include "hsls/reduction.hpp"
#include "hsls/rng.hpp"
#include "hsls/smoothness.hpp"
#include "hsls/solver.hpp"
#include "hsls/synth.hpp"
