#pragma once

// ============================================================================
// trace.hpp -- operator traces through the coherent-state integral
//
// The trace of an operator is the full integral of the coherent weight
// against its symbol:
//
//     tr A = integral  mu * symbol(A).
//
// Only the diagonal symbol components reach the all-top monomial, and for
// each of them the weight contributes [k-1-n]_q!^{-1} against the symbol's
// [n]_q!^{-1}; the reflection [n]_q! [k-1-n]_q! = [k-1]_q! cancels the
// integral normalisation exactly, which is what makes this formula an
// identity rather than an approximation.  The matrix trace of fock.hpp is
// the independent cross-check.
// ============================================================================

#include "qpg/berezin.hpp"
#include "qpg/coherent.hpp"
#include "qpg/fock.hpp"
#include "qpg/pg_algebra.hpp"

namespace qpg {

/// tr A computed entirely on the symbol side.
inline Complex symbolic_trace(const FockOp& a) {
  const QContext& ctx = a.context();
  return integrate_full(
      antiwick_mul(measure_weight(ctx), coherent_matrix_element(a)));
}

}  // namespace qpg
