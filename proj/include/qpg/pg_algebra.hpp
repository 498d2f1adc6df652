#pragma once

// ============================================================================
// pg_algebra.hpp -- the k-nilpotent para-Grassmann algebra on m modes
//
// Generators theta_1..theta_m and conjugates thetabar_1..thetabar_m obey
//
//     theta_i^k = thetabar_i^k = 0,
//     theta_i * thetabar_i = alpha * thetabar_i * theta_i      (same mode),
//     generators of distinct modes commute freely.
//
// Every element has a unique anti-Wick normal form: a complex combination of
//
//     theta_m^{n_m} ... theta_1^{n_1} thetabar_m^{n'_m} ... thetabar_1^{n'_1}
//
// with all exponents in [0, k-1].  Elements are stored sparsely as a map
// from packed exponent keys to coefficients.  The key packs the 2m exponents
// into bit fields wide enough that adding two in-range keys never carries
// across a field boundary, so the concatenation product is a single integer
// addition followed by a nilpotency check per field.
//
// Two products are provided:
//
//   * mul          -- the algebra product: commutation rules are applied to
//                     reach normal form, so pulling a thetabar past a theta
//                     of the same mode contributes a power of 1/alpha;
//   * antiwick_mul -- formal concatenation of normal forms with *no*
//                     commutation factors.  This is the product under which
//                     the integral calculus of berezin.hpp is formulated and
//                     it agrees with mul exactly when alpha = 1.
// ============================================================================

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qpg/qnum.hpp"

namespace qpg {

namespace detail {

/// Bit-field layout of a packed exponent key.  Mode i (1-based) stores its
/// theta exponent in field i-1 and its thetabar exponent in field m+i-1.
/// Field width is chosen so that 2k-2, the largest sum of two admissible
/// exponents, still fits -- key addition is then carry-free.
struct PGLayout {
  int modes;
  int k;
  int width;
  std::uint64_t mask;

  explicit PGLayout(const QContext& ctx)
      : modes(ctx.modes()),
        k(ctx.k()),
        width(std::bit_width(static_cast<unsigned>(2 * ctx.k() - 2))),
        mask((std::uint64_t{1} << width) - 1) {
    if (2 * modes * width > 64)
      throw std::domain_error(
          "para-Grassmann layout: 2m exponent fields do not fit in 64 bits "
          "for this (k, m)");
  }

  [[nodiscard]] int field(std::uint64_t key, int f) const {
    return static_cast<int>((key >> (f * width)) & mask);
  }
  [[nodiscard]] int hol(std::uint64_t key, int mode1) const {
    return field(key, mode1 - 1);
  }
  [[nodiscard]] int antihol(std::uint64_t key, int mode1) const {
    return field(key, modes + mode1 - 1);
  }
  [[nodiscard]] std::uint64_t with_field(std::uint64_t key, int f,
                                         int value) const {
    key &= ~(mask << (f * width));
    return key | (static_cast<std::uint64_t>(value) << (f * width));
  }
  /// All 2m exponents equal to k-1 (the only key surviving full integration).
  [[nodiscard]] std::uint64_t top_key() const {
    std::uint64_t key = 0;
    for (int f = 0; f < 2 * modes; ++f)
      key |= static_cast<std::uint64_t>(k - 1) << (f * width);
    return key;
  }
  /// True if every field is an admissible exponent (< k).
  [[nodiscard]] bool in_range(std::uint64_t key) const {
    for (int f = 0; f < 2 * modes; ++f)
      if (field(key, f) >= k) return false;
    return true;
  }
  /// Swap the theta and thetabar halves (degree swap under conjugation).
  [[nodiscard]] std::uint64_t swapped(std::uint64_t key) const {
    const int half = modes * width;
    const std::uint64_t lo = key & ((std::uint64_t{1} << half) - 1);
    return (lo << half) | (key >> half);
  }
};

}  // namespace detail

/// Sparse element of the para-Grassmann algebra in anti-Wick normal form.
/// Value semantics; the deformation context travels with the element and all
/// binary operations insist on compatible contexts.
class PGElement {
 public:
  /// A decoded term: exponent tuples (mode 1 first) plus coefficient.
  struct Term {
    std::vector<int> n;   ///< theta exponents
    std::vector<int> nb;  ///< thetabar exponents
    Complex coeff;
  };

  /// The zero element.
  explicit PGElement(const QContext& ctx) : ctx_(ctx) {
    (void)detail::PGLayout(ctx);  // reject (k, m) beyond the packed layout
  }

  static PGElement constant(const QContext& ctx, Complex c) {
    PGElement e(ctx);
    if (c != Complex{0.0, 0.0}) e.coeff_.emplace(0, c);
    return e;
  }

  [[nodiscard]] const QContext& context() const noexcept { return ctx_; }
  [[nodiscard]] bool is_zero() const noexcept { return coeff_.empty(); }
  [[nodiscard]] std::size_t term_count() const noexcept {
    return coeff_.size();
  }

  /// Coefficient of theta^n thetabar^nb (zero if the monomial is absent).
  [[nodiscard]] Complex coefficient(const std::vector<int>& n,
                                    const std::vector<int>& nb) const {
    const auto it = coeff_.find(pack(ctx_, n, nb));
    return it == coeff_.end() ? Complex{0.0, 0.0} : it->second;
  }

  /// Decoded view of all stored terms, in a fixed deterministic order.
  [[nodiscard]] std::vector<Term> terms() const {
    const detail::PGLayout lay(ctx_);
    std::vector<Term> out;
    out.reserve(coeff_.size());
    for (const auto& [key, c] : coeff_) {
      Term t;
      t.n.resize(lay.modes);
      t.nb.resize(lay.modes);
      for (int i = 1; i <= lay.modes; ++i) {
        t.n[i - 1] = lay.hol(key, i);
        t.nb[i - 1] = lay.antihol(key, i);
      }
      t.coeff = c;
      out.push_back(std::move(t));
    }
    return out;
  }

  /// Renders e.g. "(-0.5+0i)·t2^1 t1^2 tb2^0 tb1^1" with terms joined by
  /// " + "; the zero element renders as "0".
  [[nodiscard]] std::string to_string() const {
    if (coeff_.empty()) return "0";
    const detail::PGLayout lay(ctx_);
    std::string out;
    bool first = true;
    for (const auto& [key, c] : coeff_) {
      if (!first) out += " + ";
      first = false;
      out += format_coeff(c);
      out += "·";
      for (int i = lay.modes; i >= 1; --i) {
        out += "t" + std::to_string(i) + "^" + std::to_string(lay.hol(key, i));
        out += " ";
      }
      for (int i = lay.modes; i >= 1; --i) {
        out +=
            "tb" + std::to_string(i) + "^" + std::to_string(lay.antihol(key, i));
        if (i > 1) out += " ";
      }
    }
    return out;
  }

  // --- low-level packed interface ------------------------------------------
  // Used by the integral calculus and the coherent-state bridge, where terms
  // are produced in bulk and per-term tuple allocation would dominate.

  [[nodiscard]] const std::map<std::uint64_t, Complex>& packed_terms()
      const noexcept {
    return coeff_;
  }

  static std::uint64_t pack(const QContext& ctx, const std::vector<int>& n,
                            const std::vector<int>& nb) {
    const detail::PGLayout lay(ctx);
    if (static_cast<int>(n.size()) != lay.modes ||
        static_cast<int>(nb.size()) != lay.modes)
      throw std::invalid_argument(
          "PGElement: exponent tuples must have one entry per mode");
    std::uint64_t key = 0;
    for (int i = 0; i < lay.modes; ++i) {
      if (n[i] < 0 || n[i] >= lay.k || nb[i] < 0 || nb[i] >= lay.k)
        throw std::invalid_argument(
            "PGElement: exponents must lie in [0, k-1]");
      key |= static_cast<std::uint64_t>(n[i]) << (i * lay.width);
      key |= static_cast<std::uint64_t>(nb[i])
             << ((lay.modes + i) * lay.width);
    }
    return key;
  }

  /// Builds an element from packed (key, coefficient) pairs: sorts,
  /// accumulates duplicates, prunes zeros, rejects out-of-range exponents.
  static PGElement from_packed(const QContext& ctx,
                               std::vector<std::pair<std::uint64_t, Complex>>
                                   terms) {
    const detail::PGLayout lay(ctx);
    std::sort(terms.begin(), terms.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    PGElement e(ctx);
    auto hint = e.coeff_.end();
    std::size_t i = 0;
    while (i < terms.size()) {
      const std::uint64_t key = terms[i].first;
      if (!lay.in_range(key))
        throw std::invalid_argument(
            "PGElement: packed key has an exponent outside [0, k-1]");
      Complex sum{0.0, 0.0};
      for (; i < terms.size() && terms[i].first == key; ++i)
        sum += terms[i].second;
      if (sum != Complex{0.0, 0.0})
        hint = e.coeff_.emplace_hint(hint, key, sum);
    }
    return e;
  }

 private:
  static std::string format_coeff(Complex c) {
    char buf[64];
    const double re = c.real() == 0.0 ? 0.0 : c.real();
    const double im = c.imag() == 0.0 ? 0.0 : c.imag();
    std::snprintf(buf, sizeof(buf), "(%g%+gi)", re, im);
    return buf;
  }

  QContext ctx_;
  std::map<std::uint64_t, Complex> coeff_;
};

// ---------------------------------------------------------------------------
// construction and linear structure
// ---------------------------------------------------------------------------

/// c * theta^n thetabar^nb with exponent tuples indexed by mode (mode 1
/// first).  Exponents outside [0, k-1] are rejected.
inline PGElement monomial(const QContext& ctx, const std::vector<int>& n,
                          const std::vector<int>& nb, Complex c) {
  return PGElement::from_packed(ctx, {{PGElement::pack(ctx, n, nb), c}});
}

namespace detail {

inline void require_compatible(const PGElement& f, const PGElement& g,
                               const char* what) {
  if (!f.context().compatible(g.context()))
    throw std::invalid_argument(std::string(what) +
                                ": incompatible contexts (k, m, alpha)");
}

}  // namespace detail

inline PGElement add(const PGElement& f, const PGElement& g) {
  detail::require_compatible(f, g, "add");
  std::vector<std::pair<std::uint64_t, Complex>> acc;
  acc.reserve(f.term_count() + g.term_count());
  for (const auto& t : f.packed_terms()) acc.push_back(t);
  for (const auto& t : g.packed_terms()) acc.push_back(t);
  return PGElement::from_packed(f.context(), std::move(acc));
}

inline PGElement scale(const PGElement& f, Complex c) {
  std::vector<std::pair<std::uint64_t, Complex>> acc;
  acc.reserve(f.term_count());
  for (const auto& [key, v] : f.packed_terms()) acc.emplace_back(key, c * v);
  return PGElement::from_packed(f.context(), std::move(acc));
}

// ---------------------------------------------------------------------------
// products
// ---------------------------------------------------------------------------

namespace detail {

/// Shared product kernel.  Concatenation in normal form adds exponents
/// fieldwise; any field reaching k kills the term.  When `use_alpha` is set
/// the same-mode reorderings thetabar_i^b (from the left factor) past
/// theta_i^c (from the right factor) contribute alpha^{-b*c} per mode.
inline PGElement product(const PGElement& f, const PGElement& g,
                         bool use_alpha) {
  require_compatible(f, g, "mul");
  const QContext& ctx = f.context();
  const PGLayout lay(ctx);
  const double alpha = ctx.alpha();
  const bool track_alpha = use_alpha && alpha != 1.0;

  std::vector<std::pair<std::uint64_t, Complex>> acc;
  acc.reserve(f.term_count() * g.term_count());
  for (const auto& [kf, cf] : f.packed_terms()) {
    for (const auto& [kg, cg] : g.packed_terms()) {
      const std::uint64_t key = kf + kg;  // carry-free by field-width choice
      if (!lay.in_range(key)) continue;
      Complex c = cf * cg;
      if (track_alpha) {
        long crossings = 0;
        for (int i = 1; i <= lay.modes; ++i)
          crossings += static_cast<long>(lay.antihol(kf, i)) * lay.hol(kg, i);
        if (crossings != 0)
          c *= std::pow(alpha, static_cast<double>(-crossings));
      }
      acc.emplace_back(key, c);
    }
  }
  return PGElement::from_packed(ctx, std::move(acc));
}

}  // namespace detail

/// Algebra product: reorders into anti-Wick normal form using the
/// commutation rule, picking up powers of 1/alpha for same-mode crossings.
inline PGElement mul(const PGElement& f, const PGElement& g) {
  return detail::product(f, g, true);
}

/// Formal concatenation of normal forms without commutation factors.  The
/// integral calculus is defined against this product; it coincides with
/// mul exactly when alpha = 1.
inline PGElement antiwick_mul(const PGElement& f, const PGElement& g) {
  return detail::product(f, g, false);
}

// ---------------------------------------------------------------------------
// conjugation and comparison
// ---------------------------------------------------------------------------

/// Antilinear involution: swaps theta and thetabar degrees mode by mode and
/// conjugates coefficients.  For real alpha it is an anti-automorphism of
/// the algebra product: (f g)* = g* f*.
inline PGElement conjugate(const PGElement& f) {
  const detail::PGLayout lay(f.context());
  std::vector<std::pair<std::uint64_t, Complex>> acc;
  acc.reserve(f.term_count());
  for (const auto& [key, c] : f.packed_terms())
    acc.emplace_back(lay.swapped(key), std::conj(c));
  return PGElement::from_packed(f.context(), std::move(acc));
}

/// Coefficient-wise comparison within the contexts' tolerance (the larger of
/// the two, so the check is symmetric).
inline bool equal_within_tol(const PGElement& f, const PGElement& g) {
  detail::require_compatible(f, g, "equal_within_tol");
  const double tol = std::max(f.context().tol(), g.context().tol());
  auto it = f.packed_terms().begin();
  auto jt = g.packed_terms().begin();
  const auto fe = f.packed_terms().end();
  const auto ge = g.packed_terms().end();
  while (it != fe || jt != ge) {
    if (jt == ge || (it != fe && it->first < jt->first)) {
      if (std::abs(it->second) > tol) return false;
      ++it;
    } else if (it == fe || jt->first < it->first) {
      if (std::abs(jt->second) > tol) return false;
      ++jt;
    } else {
      if (std::abs(it->second - jt->second) > tol) return false;
      ++it;
      ++jt;
    }
  }
  return true;
}

}  // namespace qpg
