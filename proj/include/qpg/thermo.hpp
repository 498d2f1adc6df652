#pragma once

// ============================================================================
// thermo.hpp -- statistical mechanics of k-nilpotent modes
//
// A single mode of energy eps carries the equidistant spectrum
// {0, eps, ..., (k-1) eps}, so its canonical partition function is the
// finite geometric sum
//
//     Z_1 = (1 - e^{-k x}) / (1 - e^{-x}),        x = beta * eps,
//
// interpolating between the two-level fermion (k = 2) and the boson
// (k -> infinity).  Mean energy, specific heat and the grand-canonical
// occupation all follow from derivatives of log Z_1:
//
//     <n>  = 1/(e^x - 1) - k/(e^{kx} - 1),
//     C    = x^2/4 * ( 1/sinh^2(x/2) - k^2/sinh^2(kx/2) ).
//
// At k = 2 the occupation collapses to the Fermi-Dirac function exactly,
// and as k -> infinity it approaches Bose-Einstein; the closed Bose forms
// are provided as references.  A variant spectrum {[n]_q eps} ("primed")
// replaces the linear levels by q-integers; it has no closed geometric form
// and is evaluated as an explicit spectral sum.
//
// Numerics: everything is written against expm1/sinh so both signs of x and
// extreme magnitudes stay finite; the x -> 0 degeneracy (where numerator and
// denominator vanish together) is handled by short series with a switchover
// at |x| ~ 1e-6, which keeps every observable smooth through eps = mu.
// ============================================================================

#include <cmath>
#include <stdexcept>
#include <vector>

#include "qpg/qnum.hpp"

namespace qpg::thermo {

namespace detail {

constexpr double kSeriesCutoff = 1e-6;

/// True when x is so close to zero that the geometric ratio degenerates and
/// the short series is both safe and more accurate.  The second condition
/// keeps the series inside its radius for very large k.
inline bool near_zero(int k, double x) {
  return std::abs(x) < kSeriesCutoff && std::abs(k * x) < 1e-3;
}

/// (1 - e^{-kx}) / (1 - e^{-x}), continued through x = 0 with value k.
inline double partition_core(int k, double x) {
  const double kk = static_cast<double>(k);
  if (near_zero(k, x)) {
    const double s1 = kk * (kk - 1.0) / 2.0;
    const double s2 = kk * (kk - 1.0) * (2.0 * kk - 1.0) / 6.0;
    const double s3 = kk * kk * (kk - 1.0) * (kk - 1.0) / 4.0;
    return kk - s1 * x + s2 * x * x / 2.0 - s3 * x * x * x / 6.0;
  }
  return std::expm1(-kk * x) / std::expm1(-x);
}

/// 1/(e^x - 1) - k/(e^{kx} - 1): the occupation bracket, continued through
/// x = 0 with value (k-1)/2.
inline double occupation_core(int k, double x) {
  const double kk = static_cast<double>(k);
  if (near_zero(k, x)) {
    return (kk - 1.0) / 2.0 - (kk * kk - 1.0) * x / 12.0 +
           (kk * kk * kk * kk - 1.0) * x * x * x / 720.0;
  }
  return 1.0 / std::expm1(x) - kk / std::expm1(kk * x);
}

/// x^2/4 * (1/sinh^2(x/2) - k^2/sinh^2(kx/2)), continued through x = 0 with
/// value 0.  Written as a difference of squares of y/(2 sinh(y/2)) so that
/// huge |x| underflows cleanly to 0 instead of overflowing.
inline double specific_heat_core(int k, double x) {
  const double kk = static_cast<double>(k);
  if (near_zero(k, x)) {
    const double x2 = x * x;
    return (kk * kk - 1.0) * x2 / 12.0 -
           (kk * kk * kk * kk - 1.0) * x2 * x2 / 240.0;
  }
  const double p = x / (2.0 * std::sinh(x / 2.0));
  const double q = kk * x / (2.0 * std::sinh(kk * x / 2.0));
  return p * p - q * q;
}

inline void require_beta(double beta) {
  if (beta < 0.0 || !std::isfinite(beta))
    throw std::invalid_argument("thermo: beta must be finite and >= 0");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// single-mode canonical ensemble
// ---------------------------------------------------------------------------

/// Z_1(beta) for a mode of energy eps; beta = 0 gives the state count k.
inline double partition_single(const QContext& ctx, double eps, double beta) {
  detail::require_beta(beta);
  return detail::partition_core(ctx.k(), beta * eps);
}

/// Mean energy <E> = eps * (1/(e^x - 1) - k/(e^{kx} - 1)); saturates at the
/// spectrum midpoint (k-1) eps / 2 for beta -> 0 and dies exponentially for
/// beta -> infinity.
inline double mean_energy_single(const QContext& ctx, double eps,
                                 double beta) {
  detail::require_beta(beta);
  return eps * detail::occupation_core(ctx.k(), beta * eps);
}

/// Specific heat C = d<E>/dT at k_B = 1: a single Schottky-like hump that
/// vanishes in both temperature limits for finite k.
inline double specific_heat_single(const QContext& ctx, double eps,
                                   double beta) {
  detail::require_beta(beta);
  return detail::specific_heat_core(ctx.k(), beta * eps);
}

// ---------------------------------------------------------------------------
// spectral sums and the primed (q-integer) spectrum
// ---------------------------------------------------------------------------

/// The deformed level set {[n]_q * eps : n = 0..k-1}.  Unlike the linear
/// spectrum it is bounded by eps/sin(pi/k) and symmetric about its midpoint.
inline std::vector<double> prime_spectrum(const QContext& ctx, double eps) {
  std::vector<double> levels(ctx.k());
  for (int n = 0; n < ctx.k(); ++n) levels[n] = q_int(ctx, n) * eps;
  return levels;
}

inline double spectral_partition(const std::vector<double>& energies,
                                 double beta) {
  detail::require_beta(beta);
  if (energies.empty())
    throw std::invalid_argument("thermo: empty spectrum");
  double z = 0.0;
  for (double e : energies) z += std::exp(-beta * e);
  return z;
}

inline double spectral_mean_energy(const std::vector<double>& energies,
                                   double beta) {
  const double z = spectral_partition(energies, beta);
  double acc = 0.0;
  for (double e : energies) acc += e * std::exp(-beta * e);
  return acc / z;
}

/// C = beta^2 * Var(E) evaluated against the shifted weights, which keeps
/// the variance numerically non-negative.
inline double spectral_specific_heat(const std::vector<double>& energies,
                                     double beta) {
  const double z = spectral_partition(energies, beta);
  const double mean = spectral_mean_energy(energies, beta);
  double var = 0.0;
  for (double e : energies)
    var += (e - mean) * (e - mean) * std::exp(-beta * e);
  return beta * beta * var / z;
}

/// Z'_1: the partition function over the q-integer spectrum.
inline double partition_single_prime(const QContext& ctx, double eps,
                                     double beta) {
  return spectral_partition(prime_spectrum(ctx, eps), beta);
}

// ---------------------------------------------------------------------------
// grand-canonical ensemble
// ---------------------------------------------------------------------------

/// Grand partition function of independent levels eps_j at chemical
/// potential mu: the product of single-mode factors at x_j = beta(eps_j-mu).
inline double grand_partition(const QContext& ctx,
                              const std::vector<double>& levels, double mu,
                              double beta) {
  detail::require_beta(beta);
  if (levels.empty())
    throw std::invalid_argument("thermo: grand_partition needs >= 1 level");
  double z = 1.0;
  for (double eps : levels)
    z *= detail::partition_core(ctx.k(), beta * (eps - mu));
  return z;
}

/// Mean occupation of one level: (k-1)/2 at eps = mu, Fermi-Dirac for k = 2,
/// Bose-Einstein as k -> infinity, and bounded by k-1 from below the
/// chemical potential.
inline double mean_occupation(const QContext& ctx, double eps, double mu,
                              double beta) {
  detail::require_beta(beta);
  return detail::occupation_core(ctx.k(), beta * (eps - mu));
}

// ---------------------------------------------------------------------------
// k -> infinity (Bose) reference forms
// ---------------------------------------------------------------------------

inline double bose_mean_energy(double eps, double beta) {
  detail::require_beta(beta);
  if (beta * eps <= 0.0)
    throw std::domain_error("bose_mean_energy: requires beta * eps > 0");
  return eps / std::expm1(beta * eps);
}

inline double bose_specific_heat(double eps, double beta) {
  detail::require_beta(beta);
  const double x = beta * eps;
  if (x == 0.0) return 1.0;
  const double p = x / (2.0 * std::sinh(x / 2.0));
  return p * p;
}

inline double bose_occupation(double eps, double mu, double beta) {
  detail::require_beta(beta);
  if (beta * (eps - mu) <= 0.0)
    throw std::domain_error("bose_occupation: requires eps > mu");
  return 1.0 / std::expm1(beta * (eps - mu));
}

// ---------------------------------------------------------------------------
// curve emission for the figure outputs
// ---------------------------------------------------------------------------

/// One sample of an observable: the inverse temperature it was evaluated at
/// and its value.  Points align index-by-index with the grid passed to
/// emit_curve (temperatures for the energy/heat curves, level energies for
/// occupation curves).
struct ThermoPoint {
  double beta;
  double value;
};

enum class CurveKind { mean_energy, specific_heat, occupation };

struct CurveParams {
  double eps = 1.0;   ///< level energy (temperature-swept curves)
  double mu = 0.0;    ///< chemical potential (occupation curves)
  double beta = 1.0;  ///< fixed inverse temperature (occupation curves)
  bool bose = false;  ///< emit the k -> infinity reference instead
};

namespace detail {

inline void require_monotone(const std::vector<double>& grid) {
  if (grid.empty())
    throw std::invalid_argument("emit_curve: grid must be non-empty");
  if (grid.size() < 2) return;
  const bool increasing = grid[1] > grid[0];
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const bool step_up = grid[i] > grid[i - 1];
    if (grid[i] == grid[i - 1] || step_up != increasing)
      throw std::invalid_argument("emit_curve: grid must be strictly "
                                  "monotone");
  }
}

}  // namespace detail

/// Samples one observable over a grid.  For mean_energy and specific_heat
/// the grid holds temperatures T > 0 (points carry beta = 1/T); for
/// occupation it holds level energies swept at fixed params.beta.
inline std::vector<ThermoPoint> emit_curve(const QContext& ctx,
                                           CurveKind kind,
                                           const CurveParams& params,
                                           const std::vector<double>& grid) {
  detail::require_monotone(grid);
  std::vector<ThermoPoint> points;
  points.reserve(grid.size());
  switch (kind) {
    case CurveKind::mean_energy:
    case CurveKind::specific_heat:
      for (double t : grid) {
        if (t <= 0.0)
          throw std::invalid_argument(
              "emit_curve: temperatures must be positive");
        const double beta = 1.0 / t;
        double value;
        if (kind == CurveKind::mean_energy)
          value = params.bose ? bose_mean_energy(params.eps, beta)
                              : mean_energy_single(ctx, params.eps, beta);
        else
          value = params.bose ? bose_specific_heat(params.eps, beta)
                              : specific_heat_single(ctx, params.eps, beta);
        points.push_back({beta, value});
      }
      break;
    case CurveKind::occupation:
      for (double eps : grid) {
        const double value =
            params.bose ? bose_occupation(eps, params.mu, params.beta)
                        : mean_occupation(ctx, eps, params.mu, params.beta);
        points.push_back({params.beta, value});
      }
      break;
  }
  return points;
}

}  // namespace qpg::thermo
