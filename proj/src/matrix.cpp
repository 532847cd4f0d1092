#include "conekit/matrix.hpp"

#include <cmath>

namespace conekit {

DMat to_double(const RatMat& m) {
  DMat r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r(i, j) = rat_to_double(m(i, j));
  return r;
}

RatMat to_rational(const DMat& m) {
  RatMat r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r(i, j) = rat_from_double(m(i, j));
  return r;
}

DVec to_double(const RatVec& v) {
  DVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = rat_to_double(v[i]);
  return r;
}

RatVec to_rational(const DVec& v) {
  RatVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = rat_from_double(v[i]);
  return r;
}

Rat max_abs_entry(const RatMat& m) {
  Rat best(0);
  for (const auto& x : m.data()) {
    Rat a = rat_abs(x);
    if (a > best) best = a;
  }
  return best;
}

double max_abs_entry(const DMat& m) {
  double best = 0.0;
  for (double x : m.data()) best = std::max(best, std::fabs(x));
  return best;
}

std::vector<std::pair<int, int>> sym_coords(int n) {
  std::vector<std::pair<int, int>> c;
  c.reserve(sym_dim(n));
  for (int i = 0; i < n; ++i) c.emplace_back(i, i);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) c.emplace_back(i, j);
  return c;
}

RatVec sym_vec(const RatMat& m) {
  if (!m.is_square()) throw std::invalid_argument("sym_vec: matrix not square");
  auto coords = sym_coords(m.rows());
  RatVec v;
  v.reserve(coords.size());
  for (auto [i, j] : coords) v.push_back(m(i, j));
  return v;
}

}  // namespace conekit
