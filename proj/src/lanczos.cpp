#include "bose/lanczos.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <random>
#include <vector>

#include "bose/errors.hpp"
#include "bose/simd.hpp"

namespace bose {
namespace {

struct TridiagEigen {
  double theta_min;
  double tail_weight;  // |last component| of the minimizing Ritz vector
};

TridiagEigen smallest_ritz(const std::vector<double>& alpha,
                           const std::vector<double>& beta) {
  const int m = static_cast<int>(alpha.size());
  Eigen::VectorXd d(m), e(std::max(m - 1, 0));
  for (int i = 0; i < m; ++i) d[i] = alpha[i];
  for (int i = 0; i + 1 < m; ++i) e[i] = beta[i];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(d, e, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success)
    throw numerical_error("lanczos: tridiagonal eigensolve failed");
  int which = 0;
  solver.eigenvalues().minCoeff(&which);
  return {solver.eigenvalues()[which],
          std::fabs(solver.eigenvectors()(m - 1, which))};
}

}  // namespace

EigenResult lanczos_smallest(const ApplyFn& apply, std::size_t n, int max_iter,
                             double tol) {
  const auto& kern = simd::active();
  max_iter = static_cast<int>(std::min<std::size_t>(max_iter, n));
  std::vector<std::vector<double>> basis;
  std::vector<double> alpha, beta;
  std::vector<double> v(n), w(n);

  std::mt19937_64 rng(0xB05EULL);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (auto& x : v) x = uni(rng);
  double nrm = std::sqrt(kern.dot(v.data(), v.data(), n));
  kern.scal(1.0 / nrm, v.data(), n);

  double op_scale = 1e-300;
  EigenResult res;
  double prev_theta = 0.0;
  int stagnant = 0;
  for (int j = 0; j < max_iter; ++j) {
    basis.push_back(v);
    apply(v.data(), w.data());
    const double a = kern.dot(v.data(), w.data(), n);
    alpha.push_back(a);
    kern.axpy(-a, v.data(), w.data(), n);
    if (j > 0) kern.axpy(-beta.back(), basis[j - 1].data(), w.data(), n);
    // full reorthogonalization, two passes
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : basis) {
        const double c = kern.dot(q.data(), w.data(), n);
        kern.axpy(-c, q.data(), w.data(), n);
      }
    const double b = std::sqrt(kern.dot(w.data(), w.data(), n));
    op_scale = std::max({op_scale, std::fabs(a), b});
    const TridiagEigen ritz = smallest_ritz(alpha, beta);
    res.eigenvalue = ritz.theta_min;
    res.residual = b * ritz.tail_weight;
    res.iterations = j + 1;
    if (b <= 1e-14 * op_scale) {  // invariant subspace
      res.residual = 0.0;
      res.converged = true;
      return res;
    }
    if (j >= 10 && res.residual <= tol * op_scale) {
      res.converged = true;
      return res;
    }
    stagnant = (j > 0 && std::fabs(ritz.theta_min - prev_theta) <=
                             1e-14 * op_scale)
                   ? stagnant + 1
                   : 0;
    prev_theta = ritz.theta_min;
    if (stagnant >= 25 && res.residual <= 1e-4 * op_scale) {
      res.converged = true;
      return res;
    }
    beta.push_back(b);
    kern.scal(1.0 / b, w.data(), n);
    v = w;
  }
  return res;
}

EigenResult dense_smallest(const ApplyFn& apply, std::size_t n) {
  if (n > 6000) throw domain_error("dense_smallest: operator too large");
  Eigen::MatrixXd mat(n, n);
  std::vector<double> e(n, 0.0), col(n);
  for (std::size_t j = 0; j < n; ++j) {
    e[j] = 1.0;
    apply(e.data(), col.data());
    for (std::size_t i = 0; i < n; ++i) mat(i, j) = col[i];
    e[j] = 0.0;
  }
  mat = 0.5 * (mat + mat.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(mat,
                                                        Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw numerical_error("dense_smallest: eigensolve failed");
  EigenResult res;
  res.eigenvalue = solver.eigenvalues().minCoeff();
  res.residual = 0.0;
  res.iterations = static_cast<int>(n);
  res.converged = true;
  return res;
}

}  // namespace bose
