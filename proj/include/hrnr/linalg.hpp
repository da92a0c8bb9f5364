#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <complex>
#include <random>
#include <vector>

#include "hrnr/error.hpp"
#include "hrnr/geometry.hpp"

namespace hrnr {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

inline void require_square(const CMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0)
    fail(ErrorKind::InvalidModel, std::string(what) + ": matrix must be square and nonempty");
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (!finite(m(i, j))) fail(ErrorKind::InvalidModel, std::string(what) + ": non-finite entry");
}

/// (e^{i xi} M + e^{-i xi} M*) / 2
inline CMatrix real_part(const CMatrix& m, double xi = 0.0) {
  const Point w = unit(xi);
  CMatrix r = w * m;
  return (r + r.adjoint()) * 0.5;
}

/// Ascending eigenvalues of a Hermitian matrix.
inline RVector hermitian_eigenvalues(const CMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) fail(ErrorKind::EigFailure, "Hermitian eigensolver did not converge");
  return es.eigenvalues();
}

inline double op_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

/// Square root of a Hermitian positive semidefinite matrix; small negative
/// eigenvalues are clamped to 0.
inline CMatrix psd_sqrt(const CMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  if (es.info() != Eigen::Success) fail(ErrorKind::EigFailure, "Hermitian eigensolver did not converge");
  RVector ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const CMatrix& v = es.eigenvectors();
  return v * ev.cast<Point>().asDiagonal() * v.adjoint();
}

inline std::size_t numerical_rank_psd(const CMatrix& h, double eps) {
  RVector ev = hermitian_eigenvalues(h);
  std::size_t r = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev(i) > eps) ++r;
  return r;
}

inline bool is_normal(const CMatrix& m, double eps_eig) {
  const double fn = m.norm();
  return (m * m.adjoint() - m.adjoint() * m).norm() <= eps_eig * std::max(1.0, fn * fn);
}

/// Haar-distributed unitary via QR of a complex Gaussian matrix.
template <class Rng>
CMatrix random_unitary(Rng& rng, Eigen::Index n) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix z(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) z(i, j) = Point(g(rng), g(rng));
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ();
  CMatrix r = qr.matrixQR();
  for (Eigen::Index j = 0; j < n; ++j) {
    const Point d = r(j, j);
    const double a = std::abs(d);
    if (a > 0.0) q.col(j) *= d / a;
  }
  return q;
}

/// Q diag(values) Q* for a random unitary Q.
template <class Rng>
CMatrix random_normal_with(Rng& rng, const std::vector<Point>& values) {
  const auto n = static_cast<Eigen::Index>(values.size());
  CMatrix q = random_unitary(rng, n);
  CVector d(n);
  for (Eigen::Index i = 0; i < n; ++i) d(i) = values[static_cast<std::size_t>(i)];
  return q * d.asDiagonal() * q.adjoint();
}

inline CMatrix diag(const std::vector<Point>& values) {
  const auto n = static_cast<Eigen::Index>(values.size());
  CMatrix m = CMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = values[static_cast<std::size_t>(i)];
  return m;
}

}  // namespace hrnr
