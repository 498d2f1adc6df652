#pragma once

// Umbrella header: the whole calculus in one include.

#include "qpg/qnum.hpp"        // deformation context, q-integers
#include "qpg/pg_algebra.hpp"  // para-Grassmann elements and products
#include "qpg/fock.hpp"        // exact matrix realisation
#include "qpg/berezin.hpp"     // generalised integration
#include "qpg/coherent.hpp"    // symbols, quantisation, pairing
#include "qpg/trace.hpp"       // coherent-state trace formula
#include "qpg/thermo.hpp"      // partition functions and observables
#include "qpg/op_parser.hpp"   // operator expression language
#include "qpg/json_io.hpp"     // JSON export
