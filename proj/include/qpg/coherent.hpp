#pragma once

// ============================================================================
// coherent.hpp -- coherent-state calculus: symbols, quantisation, pairing
//
// The coherent weight (one factor per mode)
//
//     mu = prod_i sum_{p=0}^{k-1} theta_i^p thetabar_i^p / [p]_q!
//
// is the normal-ordered deformed exponential of theta*thetabar.  Against the
// integral calculus it plays the role of the Gaussian measure of the Bargmann
// picture:
//
//   * coherent_matrix_element maps an operator A to its symbol, the element
//     whose (theta^{n'}, thetabar^{n}) coefficient is
//     <n|A|n'> / sqrt([n]_q! [n']_q!);
//
//   * toeplitz quantises a symbol phi back to an operator via
//     <n|T_phi|n'> = integral  e_n * mu * phi * ebar_{n'}  with the
//     normalised holomorphic basis e_n = theta^n / sqrt([n]_q!);
//
//   * sesquilinear is the induced pairing (f, g) = integral f^* mu g.
//
// All products here are the anti-Wick concatenation, which is commutative on
// normal forms, so the placement of phi against mu is immaterial.  The two
// maps are calibrated so that T_1 = identity (the resolution of unity),
// T_{theta_i} = a_i, T_{thetabar_i} = a_i^dag, and the trace of A is the
// full integral of mu times the symbol of A (see trace.hpp).
// ============================================================================

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "qpg/berezin.hpp"
#include "qpg/fock.hpp"
#include "qpg/pg_algebra.hpp"
#include "qpg/qnum.hpp"

namespace qpg {

/// Normalisation 1/sqrt([n]_q!) of the n-quantum coherent component.
inline double coherent_coeff(const QContext& ctx, int n) {
  return 1.0 / std::sqrt(q_factorial(ctx, n));
}

/// The coherent weight mu (k^m terms, all diagonal in the exponents).
inline PGElement measure_weight(const QContext& ctx) {
  PGElement w = PGElement::constant(ctx, {1.0, 0.0});
  for (int i = 1; i <= ctx.modes(); ++i) {
    PGElement factor(ctx);
    std::vector<int> e(ctx.modes(), 0);
    for (int p = 0; p < ctx.k(); ++p) {
      e[i - 1] = p;
      factor = add(factor,
                   monomial(ctx, e, e, {1.0 / q_factorial(ctx, p), 0.0}));
    }
    w = antiwick_mul(w, factor);
  }
  return w;
}

namespace detail {

/// Packed key halves and factorial products for every basis index, shared by
/// the symbol map and the quantisation loop.
struct BasisTable {
  std::vector<std::uint64_t> hol_key;      // theta^{occ(idx)} packed
  std::vector<std::uint64_t> antihol_key;  // thetabar^{occ(idx)} packed
  std::vector<double> fact;                // prod_i [n_i]_q!

  explicit BasisTable(const QContext& ctx) {
    const PGLayout lay(ctx);
    const int dim = fock_dimension(ctx);
    hol_key.resize(dim);
    antihol_key.resize(dim);
    fact.resize(dim);
    for (int idx = 0; idx < dim; ++idx) {
      std::uint64_t hol = 0, antihol = 0;
      double f = 1.0;
      int rest = idx;
      for (int i = 0; i < lay.modes; ++i) {
        const int n = rest % lay.k;
        rest /= lay.k;
        hol |= static_cast<std::uint64_t>(n) << (i * lay.width);
        antihol |= static_cast<std::uint64_t>(n)
                   << ((lay.modes + i) * lay.width);
        f *= q_factorial(ctx, n);
      }
      hol_key[idx] = hol;
      antihol_key[idx] = antihol;
      fact[idx] = f;
    }
  }
};

}  // namespace detail

/// The symbol of A: coefficient of theta^{n'} thetabar^{n} is
/// <n|A|n'> / sqrt([n]_q! [n']_q!).
inline PGElement coherent_matrix_element(const FockOp& a) {
  const QContext& ctx = a.context();
  const detail::BasisTable basis(ctx);
  const int dim = a.dim();
  std::vector<std::pair<std::uint64_t, Complex>> acc;
  acc.reserve(static_cast<std::size_t>(dim) * dim);
  for (int row = 0; row < dim; ++row) {
    for (int col = 0; col < dim; ++col) {
      const Complex entry = a.matrix()(row, col);
      if (entry == Complex{0.0, 0.0}) continue;
      const double norm = std::sqrt(basis.fact[row] * basis.fact[col]);
      acc.emplace_back(basis.hol_key[col] | basis.antihol_key[row],
                       entry / norm);
    }
  }
  return PGElement::from_packed(ctx, std::move(acc));
}

/// Anti-Wick (contravariant) quantisation of a symbol.
inline FockOp toeplitz(const PGElement& phi) {
  const QContext& ctx = phi.context();
  const detail::BasisTable basis(ctx);
  const int dim = fock_dimension(ctx);
  const PGElement weighted = antiwick_mul(measure_weight(ctx), phi);

  // Normalised single-term bra/ket factors, built once per basis index.
  std::vector<PGElement> bra, ket;
  bra.reserve(dim);
  ket.reserve(dim);
  for (int idx = 0; idx < dim; ++idx) {
    const Complex norm{1.0 / std::sqrt(basis.fact[idx]), 0.0};
    bra.push_back(
        PGElement::from_packed(ctx, {{basis.hol_key[idx], norm}}));
    ket.push_back(
        PGElement::from_packed(ctx, {{basis.antihol_key[idx], norm}}));
  }

  Matrix mat(dim, dim);
  for (int row = 0; row < dim; ++row) {
    const PGElement left = antiwick_mul(bra[row], weighted);
    for (int col = 0; col < dim; ++col)
      mat(row, col) = integrate_full(antiwick_mul(left, ket[col]));
  }
  return {ctx, mat};
}

/// The coherent pairing (f, g) = integral f^* mu g.  Positive definite on
/// the holomorphic subalgebra, where the normalised monomials
/// theta^n / sqrt([n]_q!) come out orthonormal; indefinite on the full
/// algebra (mixed terms couple through the measure), but always Hermitian:
/// (f, g) = conj (g, f).
inline Complex sesquilinear(const PGElement& f, const PGElement& g) {
  detail::require_compatible(f, g, "sesquilinear");
  const QContext& ctx = f.context();
  return integrate_full(
      antiwick_mul(conjugate(f), antiwick_mul(measure_weight(ctx), g)));
}

}  // namespace qpg
