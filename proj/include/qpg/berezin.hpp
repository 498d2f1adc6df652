#pragma once

// ============================================================================
// berezin.hpp -- generalised integration over para-Grassmann variables
//
// The one-variable rule extracts the top power, everything below integrates
// to zero:
//
//     integral dtheta theta^n = N delta_{n,k-1},    N = sqrt([k-1]_q!),
//
// and likewise for thetabar with the measure written on the right.  The
// choice of N makes the pair integral of the coherent weight reproduce the
// q-factorials that normalise the Fock basis, which is what turns the
// resolution of unity into an exact statement.  The full multi-mode integral
// therefore reads off one coefficient -- the all-top monomial -- scaled by
// ([k-1]_q!)^m.  All integrals act on the anti-Wick normal form, i.e. they
// are defined with respect to the concatenation product of pg_algebra.hpp.
// ============================================================================

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qpg/pg_algebra.hpp"
#include "qpg/qnum.hpp"

namespace qpg {

/// The normalisation N = sqrt([k-1]_q!) of the single-variable integral.
inline double norm_const(const QContext& ctx) {
  return std::sqrt(q_factorial(ctx, ctx.k() - 1));
}

namespace detail {

inline void require_pg_mode(const QContext& ctx, int mode) {
  if (mode < 1 || mode > ctx.modes())
    throw std::out_of_range("berezin: mode index out of range");
}

/// Shared kernel: keep the terms whose selected exponent fields all equal
/// k-1, clear those fields, and scale by `factor`.
inline PGElement project_top(const PGElement& f, double factor,
                             const std::vector<int>& fields) {
  const detail::PGLayout lay(f.context());
  std::vector<std::pair<std::uint64_t, Complex>> acc;
  for (const auto& [key, c] : f.packed_terms()) {
    bool top = true;
    std::uint64_t cleared = key;
    for (int fld : fields) {
      if (lay.field(key, fld) != lay.k - 1) {
        top = false;
        break;
      }
      cleared = lay.with_field(cleared, fld, 0);
    }
    if (top) acc.emplace_back(cleared, factor * c);
  }
  return PGElement::from_packed(f.context(), std::move(acc));
}

}  // namespace detail

/// integral dtheta_i f: the theta_i^{k-1} layer survives with a factor N.
inline PGElement integrate_left(const PGElement& f, int mode) {
  detail::require_pg_mode(f.context(), mode);
  return detail::project_top(f, norm_const(f.context()), {mode - 1});
}

/// integral f dthetabar_i: the thetabar_i^{k-1} layer survives with a
/// factor N.
inline PGElement integrate_right(const PGElement& f, int mode) {
  detail::require_pg_mode(f.context(), mode);
  return detail::project_top(f, norm_const(f.context()),
                             {f.context().modes() + mode - 1});
}

/// integral dtheta_i f dthetabar_i: both top layers of mode i, with an
/// exact N^2 = [k-1]_q! (no square root rounding).
inline PGElement integrate_pair(const PGElement& f, int mode) {
  detail::require_pg_mode(f.context(), mode);
  const QContext& ctx = f.context();
  return detail::project_top(f, q_factorial(ctx, ctx.k() - 1),
                             {mode - 1, ctx.modes() + mode - 1});
}

/// The scalar result of integrating over every mode pair: the coefficient
/// of the all-top monomial times ([k-1]_q!)^m.
inline Complex integrate_full(const PGElement& f) {
  const QContext& ctx = f.context();
  const detail::PGLayout lay(ctx);
  const auto it = f.packed_terms().find(lay.top_key());
  if (it == f.packed_terms().end()) return {0.0, 0.0};
  double factor = 1.0;
  for (int i = 0; i < ctx.modes(); ++i)
    factor *= q_factorial(ctx, ctx.k() - 1);
  return factor * it->second;
}

}  // namespace qpg
