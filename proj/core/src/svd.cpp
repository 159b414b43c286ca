#include "tomoreg/svd.hpp"

#include <Eigen/SVD>
#include <limits>

namespace tomoreg {

Index TruncationPolicy::kept(const SvdFactorization& f) const {
  switch (mode) {
    case Mode::None:
      return f.rank;
    case Mode::Rank:
      return std::min(max_rank, f.rank);
    case Mode::Threshold: {
      const double cut = threshold * f.singular_values[0];
      Index k = 0;
      while (k < f.rank && f.singular_values[k] >= cut) ++k;
      return k;
    }
  }
  return f.rank;
}

SvdFactorization svd_factor(const Mat& m, Index entry_cap) {
  if (!m.allFinite()) throw std::invalid_argument("svd_factor: nonfinite entries");
  if (m.size() > entry_cap) throw std::invalid_argument("svd_factor: dense cap exceeded");

  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vec& s = svd.singularValues();
  const double s_max = s.size() > 0 ? s[0] : 0.0;
  const double cutoff = static_cast<double>(std::max(m.rows(), m.cols())) *
                        std::numeric_limits<double>::epsilon() * s_max;

  Index r = 0;
  while (r < s.size() && s[r] > cutoff) ++r;

  SvdFactorization f;
  f.rank = r;
  f.u = svd.matrixU().leftCols(r);
  f.v = svd.matrixV().leftCols(r);
  f.singular_values = s.head(r);
  return f;
}

Vec pinv_apply(const SvdFactorization& f, const Vec& g, const TruncationPolicy& policy) {
  if (g.size() != f.rows()) throw std::invalid_argument("pinv_apply: dimension mismatch");
  const Index k = policy.kept(f);
  if (k == 0) return Vec::Zero(f.cols());
  const Vec coeffs =
      (f.u.leftCols(k).transpose() * g).array() / f.singular_values.head(k).array();
  return f.v.leftCols(k) * coeffs;
}

Mat pinv_dense(const SvdFactorization& f, const TruncationPolicy& policy) {
  const Index k = policy.kept(f);
  if (k == 0) return Mat::Zero(f.cols(), f.rows());
  return f.v.leftCols(k) *
         f.singular_values.head(k).cwiseInverse().asDiagonal() *
         f.u.leftCols(k).transpose();
}

PenroseReport verify_penrose(const Mat& m, const Mat& x) {
  if (x.rows() != m.cols() || x.cols() != m.rows())
    throw std::invalid_argument("verify_penrose: shape mismatch");
  PenroseReport r;
  const Mat mx = m * x;
  const Mat xm = x * m;
  r.mxm_m = (mx * m - m).norm();
  r.xmx_x = (xm * x - x).norm();
  r.mx_sym = (mx.transpose() - mx).norm();
  r.xm_sym = (xm.transpose() - xm).norm();
  return r;
}

Mat pseudo_commutant(const Mat& r, const Mat& c, Index entry_cap) {
  if (c.rows() != r.cols() || c.cols() != r.cols())
    throw std::invalid_argument("pseudo_commutant: shape mismatch");
  const auto f = svd_factor(r, entry_cap);
  return r * c * pinv_dense(f);
}

double frobenius_objective(const Mat& x, const Mat& r, const Mat& a) {
  if (x.cols() != r.rows() || a.rows() != x.rows() || a.cols() != r.cols())
    throw std::invalid_argument("frobenius_objective: shape mismatch");
  return 0.5 * (a - x * r).squaredNorm();
}

}  // namespace tomoreg
