#pragma once

// ============================================================================
// qnum.hpp -- deformation context and q-deformed integer arithmetic
//
// Everything in this library is parameterised by a context holding the
// nilpotency order k (so q = e^{i*pi/k} is a primitive 2k-th root of unity),
// the number of modes m, the real commutation coefficient alpha of the
// para-Grassmann generators, and a comparison tolerance.  The q-integers
//
//     [n]_q = (q^n - q^{-n}) / (q - q^{-1}) = sin(n*pi/k) / sin(pi/k)
//
// are real, vanish exactly when k | n, and reduce to ordinary integers as
// k -> infinity.  They drive the matrix elements of the deformed ladder
// operators as well as the normalisation constants of the integral calculus.
// ============================================================================

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qpg {

using Complex = std::complex<double>;

/// Shared deformation parameters.  Instances are cheap to copy; every
/// algebra object carries one and operations require compatible contexts
/// (same k, same mode count, same alpha).
class QContext {
 public:
  explicit QContext(int k, int modes = 1, double alpha = 1.0,
                    double tol = 1e-10)
      : k_(k), m_(modes), alpha_(alpha), tol_(tol) {
    if (k_ < 2)
      throw std::invalid_argument("QContext: nilpotency order k must be >= 2");
    if (m_ < 1)
      throw std::invalid_argument("QContext: mode count must be >= 1");
    if (alpha_ == 0.0 || !std::isfinite(alpha_))
      throw std::invalid_argument(
          "QContext: alpha must be a finite nonzero real");
    if (!(tol_ > 0.0))
      throw std::invalid_argument("QContext: tolerance must be positive");
  }

  [[nodiscard]] int k() const noexcept { return k_; }
  [[nodiscard]] int modes() const noexcept { return m_; }
  [[nodiscard]] double alpha() const noexcept { return alpha_; }
  [[nodiscard]] double tol() const noexcept { return tol_; }

  /// The unit phase q = e^{i*pi/k}.
  [[nodiscard]] Complex q() const { return q_power(1); }

  /// q^e for any (possibly negative) integer exponent, computed in polar
  /// form so the modulus stays exactly 1.
  [[nodiscard]] Complex q_power(int e) const {
    return std::polar(1.0, std::numbers::pi * static_cast<double>(e) /
                               static_cast<double>(k_));
  }

  [[nodiscard]] bool compatible(const QContext& other) const noexcept {
    return k_ == other.k_ && m_ == other.m_ && alpha_ == other.alpha_;
  }

 private:
  int k_;
  int m_;
  double alpha_;
  double tol_;
};

// ---------------------------------------------------------------------------
// q-integers and their factorials
// ---------------------------------------------------------------------------

/// [n]_q = sin(n*pi/k)/sin(pi/k) for n >= 0.  Multiples of k give an exact
/// 0.0 -- the sine quotient would leave an O(1e-16) residue and nilpotency
/// bookkeeping downstream relies on these zeros being exact.
inline double q_int(const QContext& ctx, int n) {
  if (n < 0) throw std::domain_error("q_int: n must be non-negative");
  if (n % ctx.k() == 0) return 0.0;
  const double step = std::numbers::pi / static_cast<double>(ctx.k());
  return std::sin(static_cast<double>(n) * step) / std::sin(step);
}

/// [n]_q! = [1]_q [2]_q ... [n]_q with [0]_q! = 1.  Only defined below the
/// nilpotency order; [k]_q = 0 would silently zero out every normalisation
/// that uses it, so asking for it is treated as a logic error.
inline double q_factorial(const QContext& ctx, int n) {
  if (n < 0 || n >= ctx.k())
    throw std::domain_error("q_factorial: n must lie in [0, k-1]");
  double prod = 1.0;
  for (int j = 1; j <= n; ++j) prod *= q_int(ctx, j);
  return prod;
}

/// Truncated deformed exponential e_q^x = sum_{p=0}^{k-1} x^p / [p]_q!.
/// The series stops at p = k-1 because [k]_q = 0; this is the scalar shadow
/// of the coherent-state weight used by the integral calculus.
inline Complex q_exp_scalar(const QContext& ctx, Complex x) {
  Complex sum{1.0, 0.0};
  Complex power{1.0, 0.0};
  double fact = 1.0;
  for (int p = 1; p < ctx.k(); ++p) {
    power *= x;
    fact *= q_int(ctx, p);
    sum += power / fact;
  }
  return sum;
}

}  // namespace qpg
