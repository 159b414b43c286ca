#include "tomoreg/linear_map.hpp"

#include "tomoreg/rng.hpp"

namespace tomoreg {

LinearMap identity_map(Index n) {
  auto id = [](const Vec& x) { return x; };
  return LinearMap(n, n, id, id);
}

LinearMap map_from_dense(const Mat& m) {
  auto mat = std::make_shared<Mat>(m);
  return LinearMap(
      m.cols(), m.rows(),
      [mat](const Vec& x) -> Vec { return (*mat) * x; },
      [mat](const Vec& y) -> Vec { return mat->transpose() * y; });
}

Mat materialize_dense(const LinearMap& m, Index entry_cap) {
  if (m.in_dim() * m.out_dim() > entry_cap)
    throw std::invalid_argument("materialize_dense: dimension cap exceeded");
  Mat out(m.out_dim(), m.in_dim());
  Vec e = Vec::Zero(m.in_dim());
  for (Index j = 0; j < m.in_dim(); ++j) {
    e[j] = 1.0;
    out.col(j) = m.forward(e);
    e[j] = 0.0;
  }
  return out;
}

double operator_norm_estimate(const LinearMap& m, int iterations, std::uint64_t seed) {
  CounterRng rng(seed);
  Vec v(m.in_dim());
  for (Index i = 0; i < v.size(); ++i)
    v[i] = rng.uniform(static_cast<std::uint64_t>(i)) - 0.5;
  if (v.norm() == 0.0) v[0] = 1.0;
  v /= v.norm();
  double eig = 0.0;
  for (int it = 0; it < iterations; ++it) {
    Vec w = m.normal(v);
    double nw = w.norm();
    if (nw == 0.0) return 0.0;
    eig = v.dot(w);
    v = w / nw;
  }
  return std::sqrt(std::max(eig, 0.0));
}

}  // namespace tomoreg
