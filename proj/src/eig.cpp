#include "conekit/eig.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace conekit {

SymEig sym_eig(const DMat& m) {
  if (!m.is_square()) throw std::invalid_argument("sym_eig: matrix not square");
  const int n = m.rows();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::fabs(m(i, j) - m(j, i)) > 1e-12)
        throw std::invalid_argument("sym_eig: matrix not symmetric within 1e-12");
  Eigen::MatrixXd em(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) em(i, j) = (m(i, j) + m(j, i)) / 2.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(em);
  if (es.info() != Eigen::Success) throw std::runtime_error("sym_eig: eigensolver failed");
  SymEig out;
  out.eigenvalues.resize(n);
  out.eigenvectors = DMat(n, n);
  for (int i = 0; i < n; ++i) out.eigenvalues[i] = es.eigenvalues()(i);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.eigenvectors(i, j) = es.eigenvectors()(i, j);
  return out;
}

double min_eigenvalue(const DMat& m) {
  auto e = sym_eig(m);
  return e.eigenvalues.empty() ? 0.0 : e.eigenvalues.front();
}

}  // namespace conekit
