#pragma once
// Bordered Gram matrix F_ij = (S_i, S_j) of a basis {S_0, S_1, T_1, ...}
// where S_0(x0) != 0, S_1 vanishes to first order and the T_i span the
// sections vanishing to second order. The Bergman density at x0 is
// I_00 |S_0(x0)|^2 with I = F^-1, and I_00 is extracted three ways:
//
//   schur_i00            pivot on F_00 and invert the Schur complement
//                        Mt = F_rest,rest - F_rest,0 F_0,rest / F_00
//   inverse00_oracle     LDL^T solve of F x = e_0
//   orthonormalize_i00   F = G G^*, H = G^-1, sum_i |H_i0|^2
//
// budgets(i, j) bounds |true F_ij - stored F_ij|; it stands in for the
// Hormander corrections u_P that are not constructed here.

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "bergman/errors.hpp"
#include "bergman/model_geometry.hpp"
#include "bergman/radial_quadrature.hpp"

namespace bergman {

template <class Scalar = double>
struct ErrorBudget {
  Scalar scale = 0;

  // C exp(-(log m)^2 / 8)
  static ErrorBudget canonical(Scalar C, long m) {
    using std::exp;
    using std::log;
    if (!(C >= Scalar(0))) throw DomainError("budget constant must be nonnegative");
    const Scalar L = log(Scalar(m));
    return {C * exp(-L * L / Scalar(8))};
  }
};

template <class Scalar = double>
struct BorderedGram {
  using Complex = std::complex<Scalar>;
  using ComplexMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
  using RealMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  ComplexMatrix entries;
  RealMatrix budgets;

  Eigen::Index dim() const { return entries.rows(); }

  static BorderedGram from_entries(const ComplexMatrix& F) {
    BorderedGram G{F, RealMatrix::Zero(F.rows(), F.cols())};
    G.validate();
    return G;
  }

  // Shape, exact Hermitian symmetry and nonnegative budgets. Positive
  // definiteness is left to the factorisations that need it.
  void validate() const {
    if (entries.rows() < 2 || entries.rows() != entries.cols())
      throw DomainError("Gram matrix must be square with dim >= 2");
    if (budgets.rows() != entries.rows() || budgets.cols() != entries.cols())
      throw DomainError("budget matrix shape differs from the Gram matrix");
    for (Eigen::Index i = 0; i < dim(); ++i) {
      if (entries(i, i).imag() != Scalar(0)) throw DomainError("Gram diagonal must be real");
      for (Eigen::Index j = 0; j < i; ++j)
        if (entries(i, j) != std::conj(entries(j, i)))
          throw DomainError("Gram matrix is not Hermitian");
    }
    if ((budgets.array() < Scalar(0)).any()) throw DomainError("budgets must be nonnegative");
  }
};

// Gram matrix of lambda_0 * 1, lambda_1 * z and the normalised monomials
// z^d (d in extra_degrees, each >= 2) over |z| <= log m / sqrt(m). Rotational
// symmetry makes it the identity; the budget scale is placed on every entry
// touching row or column 0 or 1, the V-block carries none.
template <class Scalar>
BorderedGram<Scalar> assemble_truncated_gram(const ModelGeometry<Scalar>& geom, long m,
                                             const std::vector<int>& extra_degrees,
                                             const ErrorBudget<Scalar>& budget,
                                             const QuadratureConfig<Scalar>& cfg = {}) {
  using std::sqrt;
  std::vector<int> degrees{0, 1};
  for (int d : extra_degrees) {
    if (d < 2) throw DomainError("V-block degrees must be >= 2");
    for (int e : degrees)
      if (e == d) throw DomainError("V-block degrees must be distinct");
    degrees.push_back(d);
  }
  if (!(budget.scale >= Scalar(0))) throw DomainError("budget scale must be nonnegative");

  const Scalar R = truncation_radius<Scalar>(m);
  const auto n = static_cast<Eigen::Index>(degrees.size());
  std::vector<Scalar> diag(degrees.size());
  for (std::size_t i = 0; i < degrees.size(); ++i)
    diag[i] = monomial_moment(geom, m, degrees[i], degrees[i], R, cfg).real();

  BorderedGram<Scalar> G;
  G.entries.resize(n, n);
  G.budgets.setZero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    G.entries(i, i) = Scalar(1);
    for (Eigen::Index j = 0; j < i; ++j) {
      const auto moment = monomial_moment(geom, m, degrees[i], degrees[j], R, cfg);
      const auto value = moment / sqrt(diag[i] * diag[j]);
      G.entries(i, j) = value;
      G.entries(j, i) = std::conj(value);
    }
  }
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (i < 2 || j < 2) G.budgets(i, j) = budget.scale;
  return G;
}

template <class Scalar = double>
struct SchurResult {
  Scalar value = 0;
  Scalar lo = 0;
  Scalar hi = 0;
  Scalar spread = 0; // first-order bound on |delta I_00| from the budgets
};

// I_00 = 1/F_00 + (1/F_00)^2 b Mt^-1 b^*, with b = F_0,rest. The interval
// uses d I_00 = -sum_kl I_0k dF_kl I_l0, so spread = sum |I_0k| |I_l0| B_kl.
template <class Scalar>
SchurResult<Scalar> schur_i00(const BorderedGram<Scalar>& G) {
  using Complex = std::complex<Scalar>;
  using ComplexMatrix = typename BorderedGram<Scalar>::ComplexMatrix;
  using RowVector = Eigen::Matrix<Complex, 1, Eigen::Dynamic>;
  G.validate();
  if (Eigen::LLT<ComplexMatrix>(G.entries).info() != Eigen::Success)
    throw NotPositiveDefinite("Gram matrix is not positive definite");

  const Eigen::Index k = G.dim() - 1;
  const Scalar pivot = G.entries(0, 0).real();
  const RowVector b = G.entries.block(0, 1, 1, k);
  const ComplexMatrix schur =
      G.entries.block(1, 1, k, k) - b.adjoint() * b / pivot;
  Eigen::LLT<ComplexMatrix> schur_llt(schur);
  if (schur_llt.info() != Eigen::Success)
    throw SingularSchurComplement("Schur complement is singular");

  // y = Mt^-1 b^*, so b Mt^-1 b^* = b y and I_0,rest = -(y^*) / F_00.
  const auto y = schur_llt.solve(b.adjoint()).eval();
  const Scalar inv_pivot = Scalar(1) / pivot;
  SchurResult<Scalar> out;
  out.value = inv_pivot + inv_pivot * inv_pivot * (b * y)(0, 0).real();

  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> row0(G.dim());
  row0(0) = std::abs(out.value);
  row0.tail(k) = (y * inv_pivot).cwiseAbs();
  out.spread = row0.dot(G.budgets * row0);
  out.lo = out.value - out.spread;
  out.hi = out.value + out.spread;
  return out;
}

template <class Scalar>
Scalar inverse00_oracle(const BorderedGram<Scalar>& G) {
  using ComplexMatrix = typename BorderedGram<Scalar>::ComplexMatrix;
  using ComplexVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;
  G.validate();
  Eigen::LDLT<ComplexMatrix> ldlt(G.entries);
  if (ldlt.info() != Eigen::Success || !(ldlt.vectorD().real().array() > Scalar(0)).all())
    throw NotPositiveDefinite("Gram matrix is not positive definite");
  const ComplexVector e0 = ComplexVector::Unit(G.dim(), 0);
  return ldlt.solve(e0)(0).real();
}

template <class Scalar>
Scalar orthonormalize_i00(const BorderedGram<Scalar>& G) {
  using ComplexMatrix = typename BorderedGram<Scalar>::ComplexMatrix;
  using ComplexVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;
  G.validate();
  Eigen::LLT<ComplexMatrix> llt(G.entries);
  if (llt.info() != Eigen::Success)
    throw NotPositiveDefinite("Gram matrix is not positive definite");
  // Column 0 of H = G^-1 with G the lower Cholesky factor.
  ComplexVector h0 = ComplexVector::Unit(G.dim(), 0);
  llt.matrixL().solveInPlace(h0);
  return h0.squaredNorm();
}

} // namespace bergman
