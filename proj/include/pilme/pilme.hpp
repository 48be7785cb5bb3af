#pragma once

#include "pilme/anf.hpp"
#include "pilme/bit_table.hpp"
#include "pilme/boolean_function.hpp"
#include "pilme/error.hpp"
#include "pilme/formula.hpp"
#include "pilme/hypergraph.hpp"
#include "pilme/lme_state.hpp"
#include "pilme/quantum_sim.hpp"
#include "pilme/reductions.hpp"
