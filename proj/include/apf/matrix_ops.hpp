#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "apf/errors.hpp"

namespace apf {

inline void require_finite(const Eigen::Ref<const Eigen::MatrixXd>& m,
                           const std::string& what) {
  if (!m.allFinite()) throw ConfigError(what + ": non-finite entries");
}

inline void require_square(const Eigen::Ref<const Eigen::MatrixXd>& m,
                           const std::string& what) {
  if (m.rows() == 0 || m.rows() != m.cols())
    throw ConfigError(what + ": expected a non-empty square matrix, got " +
                      std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
}

/// e^{M t} via scaling-and-squaring Pade (relative accuracy well below 1e-12
/// at the matrix sizes handled here).
inline Eigen::MatrixXd expm(const Eigen::Ref<const Eigen::MatrixXd>& m,
                            double t = 1.0) {
  require_square(m, "expm");
  if (!std::isfinite(t) || t < 0.0)
    throw DomainError("expm: t must be finite and >= 0");
  return (m * t).exp();
}

/// Largest singular value (induced 2-norm). All certificate constants use
/// this norm.
inline double spectral_norm(const Eigen::Ref<const Eigen::MatrixXd>& m) {
  if (m.size() == 0) throw ConfigError("spectral_norm: empty matrix");
  if (m.rows() == 1 || m.cols() == 1) return m.norm();
  return Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues()(0);
}

inline bool is_hurwitz(const Eigen::Ref<const Eigen::MatrixXd>& m,
                       double margin = 1e-9) {
  require_square(m, "is_hurwitz");
  Eigen::EigenSolver<Eigen::MatrixXd> es(m, /*computeEigenvectors=*/false);
  return es.eigenvalues().real().maxCoeff() < -margin;
}

inline bool is_symmetric(const Eigen::Ref<const Eigen::MatrixXd>& m,
                         double rtol = 1e-12) {
  if (m.rows() != m.cols()) return false;
  return (m - m.transpose()).cwiseAbs().maxCoeff() <=
         rtol * std::max(1.0, m.cwiseAbs().maxCoeff());
}

inline bool is_positive_definite(const Eigen::Ref<const Eigen::MatrixXd>& m) {
  if (!is_symmetric(m)) return false;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  return es.eigenvalues().minCoeff() > 0.0;
}

inline Eigen::MatrixXd controllability_matrix(
    const Eigen::Ref<const Eigen::MatrixXd>& a,
    const Eigen::Ref<const Eigen::VectorXd>& b) {
  require_square(a, "controllability_matrix");
  if (a.rows() != b.rows())
    throw ConfigError("controllability_matrix: A/B row mismatch");
  const Eigen::Index n = a.rows();
  Eigen::MatrixXd ctrb(n, n);
  Eigen::VectorXd col = b;
  for (Eigen::Index i = 0; i < n; ++i) {
    ctrb.col(i) = col;
    col = a * col;
  }
  return ctrb;
}

/// Rank test on the controllability matrix; singular values below
/// rtol * sigma_max count as zero.
inline bool is_controllable(const Eigen::Ref<const Eigen::MatrixXd>& a,
                            const Eigen::Ref<const Eigen::VectorXd>& b,
                            double rtol = 1e-9) {
  const Eigen::MatrixXd ctrb = controllability_matrix(a, b);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(ctrb);
  const auto& sv = svd.singularValues();
  return sv(sv.size() - 1) > rtol * sv(0);
}

/// Solves H'P + PH = -Q for symmetric positive-definite P via the
/// vectorized (Kronecker) linear system. Dimensions here are tiny, so the
/// n^2 x n^2 dense solve is the simplest reliable route.
inline Eigen::MatrixXd solve_lyapunov(const Eigen::Ref<const Eigen::MatrixXd>& h,
                                      const Eigen::Ref<const Eigen::MatrixXd>& q) {
  require_square(h, "solve_lyapunov");
  require_finite(h, "solve_lyapunov H");
  if (q.rows() != h.rows() || q.cols() != h.cols())
    throw ConfigError("solve_lyapunov: Q dimension mismatch");
  if (!is_symmetric(q) || !is_positive_definite(q))
    throw ConfigError("solve_lyapunov: Q must be symmetric positive-definite");
  if (!is_hurwitz(h))
    throw PreconditionError("solve_lyapunov: uncontracted dynamics (H is not Hurwitz)");

  const Eigen::Index n = h.rows();
  Eigen::MatrixXd k(n * n, n * n);
  const Eigen::MatrixXd ht = h.transpose();
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  // vec(H'P) = (I (x) H') vec(P), vec(PH) = (H' (x) I) vec(P)
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      k.block(i * n, j * n, n, n) = id(i, j) * ht + ht(i, j) * id;
    }
  Eigen::VectorXd rhs(n * n);
  for (Eigen::Index j = 0; j < n; ++j) rhs.segment(j * n, n) = -q.col(j);
  const Eigen::VectorXd x = k.fullPivLu().solve(rhs);
  Eigen::MatrixXd p(n, n);
  for (Eigen::Index j = 0; j < n; ++j) p.col(j) = x.segment(j * n, n);
  return 0.5 * (p + p.transpose());
}

/// Single-input pole placement via Ackermann's formula. Returns the row gain
/// K with eig(A + BK) at the requested (conjugate-closed) locations.
inline Eigen::RowVectorXd place_poles_single_input(
    const Eigen::Ref<const Eigen::MatrixXd>& a,
    const Eigen::Ref<const Eigen::VectorXd>& b,
    const std::vector<std::complex<double>>& poles) {
  require_square(a, "place_poles_single_input");
  const Eigen::Index n = a.rows();
  if (b.rows() != n) throw ConfigError("place_poles_single_input: B size mismatch");
  if (static_cast<Eigen::Index>(poles.size()) != n)
    throw ConfigError("place_poles_single_input: need exactly n poles");
  if (!is_controllable(a, b))
    throw PreconditionError("pair (A,B) not controllable");

  // Target characteristic polynomial; conjugate closure makes it real.
  std::vector<std::complex<double>> coef(n + 1, 0.0);
  coef[0] = 1.0;
  for (const auto& p : poles) {
    for (Eigen::Index i = n; i >= 1; --i) coef[i] = coef[i] - p * coef[i - 1];
  }
  double imag_max = 0.0;
  for (const auto& c : coef) imag_max = std::max(imag_max, std::abs(c.imag()));
  if (imag_max > 1e-9)
    throw ConfigError("place_poles_single_input: poles not closed under conjugation");

  Eigen::MatrixXd phi = Eigen::MatrixXd::Zero(n, n);  // Horner on A
  for (Eigen::Index i = 0; i <= n; ++i) {
    phi = phi * a + coef[i].real() * Eigen::MatrixXd::Identity(n, n);
  }
  const Eigen::MatrixXd ctrb = controllability_matrix(a, b);
  Eigen::VectorXd en = Eigen::VectorXd::Zero(n);
  en(n - 1) = 1.0;
  // row = e_n' C^{-1}  ==>  C' row' = e_n
  const Eigen::VectorXd row = ctrb.transpose().colPivHouseholderQr().solve(en);
  return -(row.transpose() * phi);
}

}  // namespace apf
