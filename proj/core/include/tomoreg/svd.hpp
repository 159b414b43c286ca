#pragma once

#include "tomoreg/types.hpp"

namespace tomoreg {

/// Thin SVD truncated to the numerical rank.
struct SvdFactorization {
  Mat u;               // m x r, orthonormal columns
  Vec singular_values; // length r, strictly positive, nonincreasing
  Mat v;               // n x r, orthonormal columns
  Index rank = 0;

  Index rows() const { return u.rows(); }
  Index cols() const { return v.rows(); }
};

/// Which singular components pinv_apply keeps.
struct TruncationPolicy {
  enum class Mode { None, Rank, Threshold };
  Mode mode = Mode::None;
  Index max_rank = 0;
  double threshold = 0.0;  // relative to the largest singular value

  static TruncationPolicy none() { return {}; }
  static TruncationPolicy rank(Index k) {
    if (k < 1) throw std::invalid_argument("TruncationPolicy: rank must be >= 1");
    return {Mode::Rank, k, 0.0};
  }
  static TruncationPolicy threshold_rel(double tau) {
    if (!(tau > 0.0) || tau >= 1.0)
      throw std::invalid_argument("TruncationPolicy: threshold must be in (0, 1)");
    return {Mode::Threshold, 0, tau};
  }

  Index kept(const SvdFactorization& f) const;
};

inline constexpr Index kDenseCap = 16'000'000;  // entries per matrix

/// Dense SVD with singular values below max(m,n)*eps*s_max dropped.
SvdFactorization svd_factor(const Mat& m, Index entry_cap = kDenseCap);

/// Truncated pseudo-inverse action: sum over kept components of (u_i'g / s_i) v_i.
/// With no truncation this is the minimum-norm least-squares solution M\dag g.
Vec pinv_apply(const SvdFactorization& f, const Vec& g,
               const TruncationPolicy& policy = TruncationPolicy::none());

/// Dense pseudo-inverse assembled from the factorization.
Mat pinv_dense(const SvdFactorization& f,
               const TruncationPolicy& policy = TruncationPolicy::none());

/// Residuals of the four Penrose conditions for a candidate pseudo-inverse X.
struct PenroseReport {
  double mxm_m = 0.0;     // ||MXM - M||_F
  double xmx_x = 0.0;     // ||XMX - X||_F
  double mx_sym = 0.0;    // ||(MX)' - MX||_F
  double xm_sym = 0.0;    // ||(XM)' - XM||_F

  bool accepted(double m_norm) const {
    const double tol = 1e-8 * (1.0 + m_norm);
    return mxm_m <= tol && xmx_x <= tol && mx_sym <= tol && xm_sym <= tol;
  }
};

PenroseReport verify_penrose(const Mat& m, const Mat& x);

/// Minimum-Frobenius-norm minimizer of X -> ||RC - XR||_F, equal to R*C*pinv(R).
Mat pseudo_commutant(const Mat& r, const Mat& c, Index entry_cap = kDenseCap);

/// Exactly 0.5 * ||A - XR||_F^2.
double frobenius_objective(const Mat& x, const Mat& r, const Mat& a);

}  // namespace tomoreg
