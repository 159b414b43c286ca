#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include "test_util.hpp"
#include "tomoreg/svd.hpp"

using namespace tomoreg;

TEST_CASE("svd_factor on simple matrices") {
  Mat d = Mat::Zero(3, 3);
  d.diagonal() << 3.0, 2.0, 0.0;
  const auto f = svd_factor(d);
  CHECK(f.rank == 2);
  CHECK(f.singular_values[0] == doctest::Approx(3.0));
  CHECK(f.singular_values[1] == doctest::Approx(2.0));

  std::mt19937_64 rng(1);
  const Mat q = test::rand_orthogonal(rng, 8);
  const auto fq = svd_factor(q);
  CHECK(fq.rank == 8);
  for (Index i = 0; i < 8; ++i)
    CHECK(fq.singular_values[i] == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("svd_factor invariants on a random rectangular matrix") {
  std::mt19937_64 rng(2);
  const Mat m = test::rand_mat(rng, 12, 20);
  const auto f = svd_factor(m);
  CHECK((f.u.transpose() * f.u - Mat::Identity(f.rank, f.rank)).norm() <= 1e-10);
  CHECK((f.v.transpose() * f.v - Mat::Identity(f.rank, f.rank)).norm() <= 1e-10);
  const Mat rec = f.u * f.singular_values.asDiagonal() * f.v.transpose();
  CHECK((rec - m).norm() <= 1e-10 * m.norm());
  for (Index i = 1; i < f.rank; ++i)
    CHECK(f.singular_values[i] <= f.singular_values[i - 1]);
  CHECK(f.singular_values.minCoeff() > 0.0);
}

TEST_CASE("svd_factor rejects bad input") {
  Mat m = Mat::Ones(2, 2);
  m(0, 0) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(svd_factor(m), std::invalid_argument);
  CHECK_THROWS_AS(svd_factor(Mat::Ones(10, 10), 99), std::invalid_argument);
}

TEST_CASE("pinv_apply: diagonal case") {
  Mat m = Mat::Zero(2, 2);
  m(0, 0) = 2.0;
  const auto f = svd_factor(m);
  Vec g(2);
  g << 6.0, 5.0;
  const Vec x = pinv_apply(f, g);
  CHECK(x[0] == doctest::Approx(3.0));
  CHECK(x[1] == doctest::Approx(0.0));
}

TEST_CASE("pinv_apply recovers exact preimages of injective maps") {
  std::mt19937_64 rng(3);
  const Mat m = test::rand_mat(rng, 10, 6);
  const Vec f0 = test::rand_vec(rng, 6);
  const Vec x = pinv_apply(svd_factor(m), m * f0);
  CHECK((x - f0).norm() <= 1e-9 * f0.norm());
}

TEST_CASE("pinv_apply matches the normal-equations solve for full column rank") {
  std::mt19937_64 rng(4);
  const Mat m = test::rand_mat(rng, 10, 6);
  const Vec g = test::rand_vec(rng, 10);
  const Vec x = pinv_apply(svd_factor(m), g);
  const Vec oracle = (m.transpose() * m).ldlt().solve(m.transpose() * g);
  CHECK((x - oracle).norm() <= 1e-9 * oracle.norm());
}

TEST_CASE("pinv_apply output lies in the row space") {
  std::mt19937_64 rng(5);
  const Mat m = test::rand_rank_deficient(rng, 12, 8, 5);
  const auto f = svd_factor(m);
  CHECK(f.rank == 5);
  const Vec g = test::rand_vec(rng, 12);
  const Vec x = pinv_apply(f, g);
  const Vec kernel_part = x - f.v * (f.v.transpose() * x);
  CHECK(kernel_part.norm() <= 1e-9 * x.norm());
}

TEST_CASE("truncation policies") {
  Mat m = Mat::Zero(4, 4);
  m.diagonal() << 8.0, 4.0, 2.0, 1.0;
  const auto f = svd_factor(m);
  CHECK(TruncationPolicy::none().kept(f) == 4);
  CHECK(TruncationPolicy::rank(2).kept(f) == 2);
  CHECK(TruncationPolicy::threshold_rel(0.3).kept(f) == 2);  // keeps 8 and 4
  CHECK_THROWS_AS(TruncationPolicy::rank(0), std::invalid_argument);
  CHECK_THROWS_AS(TruncationPolicy::threshold_rel(1.5), std::invalid_argument);

  Vec g(4);
  g << 8.0, 4.0, 2.0, 1.0;
  const Vec trunc = pinv_apply(f, g, TruncationPolicy::rank(2));
  CHECK(trunc[0] == doctest::Approx(1.0));
  CHECK(trunc[1] == doctest::Approx(1.0));
  CHECK(trunc[2] == doctest::Approx(0.0));
  CHECK(trunc[3] == doctest::Approx(0.0));
}

TEST_CASE("verify_penrose") {
  const Mat id = Mat::Identity(4, 4);
  const auto r_id = verify_penrose(id, id);
  CHECK(r_id.mxm_m == 0.0);
  CHECK(r_id.xmx_x == 0.0);
  CHECK(r_id.mx_sym == 0.0);
  CHECK(r_id.xm_sym == 0.0);
  CHECK(r_id.accepted(id.norm()));

  std::mt19937_64 rng(6);
  const Mat m = test::rand_mat(rng, 9, 13);
  const Mat x = pinv_dense(svd_factor(m));
  CHECK(verify_penrose(m, x).accepted(m.norm()));

  // X agreeing with the pseudo-inverse except on the kernel fails XMX = X.
  Mat m2 = Mat::Zero(2, 2);
  m2(0, 0) = 1.0;
  const Mat x2 = Mat::Identity(2, 2);
  const auto r2 = verify_penrose(m2, x2);
  CHECK(r2.xmx_x > 0.5);
}

TEST_CASE("pseudo_commutant with C = I is the range projector") {
  std::mt19937_64 rng(7);
  const Mat r = test::rand_mat(rng, 6, 10);
  const Mat phi = pseudo_commutant(r, Mat::Identity(10, 10));
  CHECK((phi * phi - phi).norm() <= 1e-9 * (1.0 + phi.norm()));
}

TEST_CASE("pseudo_commutant commutes exactly for invertible R") {
  std::mt19937_64 rng(8);
  Mat r = test::rand_mat(rng, 7, 7);
  r += 7.0 * Mat::Identity(7, 7);  // comfortably invertible
  const Mat c = test::rand_mat(rng, 7, 7);
  const Mat phi = pseudo_commutant(r, c);
  CHECK((phi - r * c * r.inverse()).norm() <= 1e-9 * phi.norm());
  CHECK((r * c - phi * r).norm() <= 1e-9 * (r * c).norm());
}

TEST_CASE("pseudo_commutant minimizes the Frobenius objective") {
  std::mt19937_64 rng(9);
  const Mat r = test::rand_mat(rng, 8, 12);
  Mat c = test::rand_mat(rng, 12, 12);
  c = 0.5 * (c + c.transpose());
  const Mat phi = pseudo_commutant(r, c);
  const Mat a = r * c;

  const double best = frobenius_objective(phi, r, a);
  for (int trial = 0; trial < 100; ++trial) {
    const Mat x = phi + 0.1 * test::rand_mat(rng, 8, 8);
    CHECK(frobenius_objective(x, r, a) >= best - 1e-12);
  }
  // First-order condition of the Frobenius objective at the minimizer.
  CHECK(((phi * r - a) * r.transpose()).norm() <= 1e-8 * a.norm());
}

TEST_CASE("minimum-norm property of A R-dagger") {
  std::mt19937_64 rng(10);
  const Mat r = test::rand_rank_deficient(rng, 6, 9, 4);
  const Mat a = test::rand_mat(rng, 6, 9);
  const auto f = svd_factor(r);
  const Mat ard = a * pinv_dense(f);

  // Kernel direction of X -> XR: any K with KR = 0. Build one from the
  // cokernel of R (vectors orthogonal to its column space).
  Eigen::FullPivLU<Mat> lu(r.transpose());
  const Mat coker = lu.kernel();  // columns span ker(R')
  REQUIRE(coker.cols() > 0);
  const Mat k = test::rand_mat(rng, 6, coker.cols()) * coker.transpose();
  CHECK((k * r).norm() <= 1e-10 * k.norm() * r.norm());

  const double inner = (ard.array() * k.array()).sum();
  CHECK(std::abs(inner) <= 1e-9 * ard.norm() * k.norm());
  CHECK((ard + k).squaredNorm() >= ard.squaredNorm());
  // Pythagoras from the orthogonality.
  CHECK((ard + k).squaredNorm() ==
        doctest::Approx(ard.squaredNorm() + k.squaredNorm()).epsilon(1e-8));
}

TEST_CASE("frobenius_objective values") {
  std::mt19937_64 rng(11);
  const Mat r = test::rand_mat(rng, 4, 5);
  const Mat x = test::rand_mat(rng, 3, 4);
  CHECK(frobenius_objective(x, r, x * r) == doctest::Approx(0.0));
  CHECK(frobenius_objective(Mat::Zero(3, 4), r, Mat::Zero(3, 5)) == 0.0);

  const Mat a = test::rand_mat(rng, 3, 5);
  double brute = 0.0;
  const Mat diff = a - x * r;
  for (Index i = 0; i < diff.rows(); ++i)
    for (Index j = 0; j < diff.cols(); ++j) brute += diff(i, j) * diff(i, j);
  CHECK(frobenius_objective(x, r, a) == doctest::Approx(0.5 * brute).epsilon(1e-12));

  CHECK_THROWS_AS(frobenius_objective(x, r, Mat::Zero(4, 4)), std::invalid_argument);
}
