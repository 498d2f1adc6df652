#pragma once

// ============================================================================
// fock.hpp -- exact finite-dimensional matrix realisation
//
// Each mode carries a k-dimensional Fock space spanned by |0>, ..., |k-1>;
// m modes live on the k^m-dimensional tensor product.  Basis states are
// indexed in mixed radix with mode 1 varying fastest:
//
//     index(n_1, ..., n_m) = sum_i n_i * k^{i-1}.
//
// The deformed ladder operators act per mode as
//
//     a |n> = sqrt([n]_q) |n-1>,   a^dag |n> = sqrt([n+1]_q) |n+1>,
//
// so a^k = (a^dag)^k = 0 holds *exactly* (the [k]_q = 0 entry is an exact
// zero, see qnum.hpp) and a^dag is the adjoint of a by construction.  This
// realisation is the independent oracle against which the symbolic calculus
// is validated; everything here is plain dense linear algebra.
// ============================================================================

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include "qpg/qnum.hpp"

namespace qpg {

using Matrix = Eigen::MatrixXcd;

/// Dense matrices scale as (k^m)^2 in memory and (k^m)^3 in products; the
/// oracle refuses dimensions past this guard rather than thrash.
inline constexpr long kMaxFockDim = 4096;

/// k^m with the guard applied.
inline int fock_dimension(const QContext& ctx) {
  long dim = 1;
  for (int i = 0; i < ctx.modes(); ++i) {
    dim *= ctx.k();
    if (dim > kMaxFockDim)
      throw std::domain_error(
          "fock: k^m exceeds the dense-matrix guard of 4096");
  }
  return static_cast<int>(dim);
}

/// Occupation digits (n_1, ..., n_m) of a basis index, mode 1 first.
inline std::vector<int> occupation_of_index(const QContext& ctx, int index) {
  const int dim = fock_dimension(ctx);
  if (index < 0 || index >= dim)
    throw std::out_of_range("fock: basis index out of range");
  std::vector<int> occ(ctx.modes());
  for (int i = 0; i < ctx.modes(); ++i) {
    occ[i] = index % ctx.k();
    index /= ctx.k();
  }
  return occ;
}

inline int index_of_occupation(const QContext& ctx,
                               const std::vector<int>& occ) {
  if (static_cast<int>(occ.size()) != ctx.modes())
    throw std::invalid_argument("fock: occupation needs one entry per mode");
  (void)fock_dimension(ctx);
  int index = 0;
  for (int i = ctx.modes() - 1; i >= 0; --i) {
    if (occ[i] < 0 || occ[i] >= ctx.k())
      throw std::out_of_range("fock: occupation digit out of range");
    index = index * ctx.k() + occ[i];
  }
  return index;
}

/// An operator on the m-mode Fock space: a context plus its dense matrix.
class FockOp {
 public:
  FockOp(const QContext& ctx, Matrix mat) : ctx_(ctx), mat_(std::move(mat)) {
    const int dim = fock_dimension(ctx_);
    if (mat_.rows() != dim || mat_.cols() != dim)
      throw std::invalid_argument(
          "FockOp: matrix dimension does not match k^m");
  }

  [[nodiscard]] const QContext& context() const noexcept { return ctx_; }
  [[nodiscard]] const Matrix& matrix() const noexcept { return mat_; }
  [[nodiscard]] int dim() const noexcept {
    return static_cast<int>(mat_.rows());
  }

 private:
  QContext ctx_;
  Matrix mat_;
};

namespace detail {

inline void require_compatible(const FockOp& a, const FockOp& b,
                               const char* what) {
  if (!a.context().compatible(b.context()))
    throw std::invalid_argument(std::string(what) +
                                ": incompatible contexts (k, m, alpha)");
}

inline void require_mode(const QContext& ctx, int mode) {
  if (mode < 1 || mode > ctx.modes())
    throw std::out_of_range("fock: mode index out of range");
}

}  // namespace detail

inline FockOp identity_op(const QContext& ctx) {
  const int dim = fock_dimension(ctx);
  return {ctx, Matrix::Identity(dim, dim)};
}

/// Annihilator of mode i (1-based): acts as a on that tensor factor and as
/// the identity elsewhere.  Built column by column; the only nonzero in
/// column |..., n_i, ...> is sqrt([n_i]_q) at the index with n_i lowered.
inline FockOp annihilation(const QContext& ctx, int mode) {
  detail::require_mode(ctx, mode);
  const int dim = fock_dimension(ctx);
  long stride = 1;
  for (int i = 1; i < mode; ++i) stride *= ctx.k();
  Matrix mat = Matrix::Zero(dim, dim);
  for (int col = 0; col < dim; ++col) {
    const int n = static_cast<int>((col / stride) % ctx.k());
    if (n >= 1) mat(col - stride, col) = std::sqrt(q_int(ctx, n));
  }
  return {ctx, mat};
}

/// Creator of mode i: the adjoint of the annihilator by construction.
inline FockOp creation(const QContext& ctx, int mode) {
  FockOp a = annihilation(ctx, mode);
  return {ctx, a.matrix().adjoint()};
}

/// Number operator of mode i: diagonal with the occupation digit n_i.
inline FockOp number_op(const QContext& ctx, int mode) {
  detail::require_mode(ctx, mode);
  const int dim = fock_dimension(ctx);
  long stride = 1;
  for (int i = 1; i < mode; ++i) stride *= ctx.k();
  Matrix mat = Matrix::Zero(dim, dim);
  for (int idx = 0; idx < dim; ++idx)
    mat(idx, idx) = static_cast<double>((idx / stride) % ctx.k());
  return {ctx, mat};
}

inline FockOp compose(const FockOp& a, const FockOp& b) {
  detail::require_compatible(a, b, "compose");
  return {a.context(), a.matrix() * b.matrix()};
}

inline FockOp add(const FockOp& a, const FockOp& b) {
  detail::require_compatible(a, b, "add");
  return {a.context(), a.matrix() + b.matrix()};
}

inline FockOp sub(const FockOp& a, const FockOp& b) {
  detail::require_compatible(a, b, "sub");
  return {a.context(), a.matrix() - b.matrix()};
}

inline FockOp scale(const FockOp& a, Complex c) {
  return {a.context(), c * a.matrix()};
}

inline FockOp adjoint(const FockOp& a) {
  return {a.context(), a.matrix().adjoint()};
}

inline Complex matrix_trace(const FockOp& a) { return a.matrix().trace(); }

/// Applies a scalar function to the eigenvalues of a *diagonal* operator
/// (how exponentials of number operators are formed).  Off-diagonal content
/// above the context tolerance is rejected rather than silently dropped.
inline FockOp func_of_diagonal(const FockOp& a,
                               const std::function<Complex(Complex)>& f) {
  const Matrix& m = a.matrix();
  const int dim = a.dim();
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c)
      if (r != c && std::abs(m(r, c)) > a.context().tol())
        throw std::invalid_argument(
            "func_of_diagonal: operator is not diagonal");
  Matrix out = Matrix::Zero(dim, dim);
  for (int d = 0; d < dim; ++d) out(d, d) = f(m(d, d));
  return {a.context(), out};
}

/// Largest entry magnitude; the norm used by the validation suites.
inline double max_abs(const FockOp& a) {
  return a.matrix().cwiseAbs().maxCoeff();
}

}  // namespace qpg
