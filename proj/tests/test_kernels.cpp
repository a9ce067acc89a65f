#include <cmath>
#include <numbers>

#include <doctest.h>
#include <Eigen/Eigenvalues>

#include "krignet/errors.hpp"
#include "krignet/kernel.hpp"
#include "krignet/pd_audit.hpp"
#include "krignet/rng.hpp"

using namespace krignet;

namespace {

Eigen::VectorXd vec2(double a, double b) {
  Eigen::VectorXd v(2);
  v << a, b;
  return v;
}

Eigen::VectorXd vec1(double a) {
  Eigen::VectorXd v(1);
  v << a;
  return v;
}

Eigen::MatrixXd random_points(int n, int d, std::uint64_t seed) {
  SubstreamRng rng(seed, 0);
  Eigen::MatrixXd pts(n, d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j) pts(i, j) = rng.uniform(-3.0, 3.0);
  return pts;
}

std::vector<Kernel> all_valid_families_dim2() {
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(2, 2);
  return {Kernel::linear(id),
          Kernel::neural_net(id),
          Kernel::squared_exponential(1.0, 2),
          Kernel::nonstat_squared_exponential(1.0, 1.0, 2),
          Kernel::arc_cosine_i(2),
          Kernel::arc_cosine_ii(2),
          Kernel::white_noise_limit(2),
          Kernel::normalized_arcsine_limit(2),
          Kernel::half_width_se_limit(1.0, 2)};
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("linear kernel is the weight covariance form") {
  const auto k = Kernel::linear(Eigen::MatrixXd::Identity(2, 2));
  CHECK(k.eval(vec2(1, 2), vec2(3, 4)) == doctest::Approx(11.0).epsilon(1e-15));
  // Gram on the standard basis is the identity.
  Eigen::MatrixXd pts(2, 2);
  pts << 1, 0, 0, 1;
  const Eigen::MatrixXd g = gram_values(k, pts);
  CHECK(g.isApprox(Eigen::MatrixXd::Identity(2, 2), 1e-15));

  Eigen::MatrixXd sigma(2, 2);
  sigma << 2, 1, 1, 3;
  const auto ks = Kernel::linear(sigma);
  const Eigen::VectorXd x = vec2(1, -1), y = vec2(0.5, 2);
  CHECK(ks.eval(x, y) == doctest::Approx(x.dot(sigma * y)).epsilon(1e-15));
}

TEST_CASE("erf-network kernel closed form (Williams 1998, with the square root)") {
  const auto k = Kernel::neural_net(Eigen::MatrixXd::Identity(2, 2));
  // (2/pi) asin(2/3) at x = x' = (1,0).
  CHECK(k.eval(vec2(1, 0), vec2(1, 0)) ==
        doctest::Approx(0.46455905439753997).epsilon(1e-15));
  // General pair against the explicit formula.
  const Eigen::VectorXd x = vec2(0.3, -1.2), y = vec2(2.0, 0.7);
  const double num = 2.0 * x.dot(y);
  const double den = std::sqrt((1.0 + 2.0 * x.dot(x)) * (1.0 + 2.0 * y.dot(y)));
  CHECK(k.eval(x, y) ==
        doctest::Approx(2.0 / std::numbers::pi * std::asin(num / den)).epsilon(1e-15));
}

TEST_CASE("squared exponential and its improper half-width relative") {
  const auto se = Kernel::squared_exponential(1.0, 1);
  CHECK(se.eval(vec1(0.3), vec1(0.3)) == 1.0);
  CHECK(se.eval(vec1(0), vec1(1)) == doctest::Approx(std::exp(-0.5)).epsilon(1e-15));
  const auto hw = Kernel::half_width_se_limit(1.0, 1);
  CHECK(hw.eval(vec1(0), vec1(1)) == doctest::Approx(std::exp(-0.25)).epsilon(1e-15));
  // Same family up to the doubled denominator: hw at lag h equals se at h/sqrt(2).
  CHECK(hw.eval(vec1(0), vec1(2)) ==
        doctest::Approx(se.eval(vec1(0), vec1(2 / std::numbers::sqrt2))).epsilon(1e-12));
}

TEST_CASE("bump-network kernel pins k(0,0) to the hidden-unit second moment") {
  const auto k = Kernel::nonstat_squared_exponential(1.0, 1.0, 1);
  // (1 + 2 sa^2/sg^2)^(-d/2) = 3^(-1/2)
  CHECK(k.eval(vec1(0), vec1(0)) == doctest::Approx(0.57735026918962573).epsilon(1e-15));
  // Symmetric decay away from the origin in both arguments.
  CHECK(k.eval(vec1(1), vec1(1)) < k.eval(vec1(0), vec1(0)));
  CHECK(k.eval(vec1(1), vec1(-1)) == doctest::Approx(k.eval(vec1(-1), vec1(1))));
  // d = 2 normalization: product of per-coordinate constants.
  const auto k2 = Kernel::nonstat_squared_exponential(1.0, 1.0, 2);
  CHECK(k2.eval(vec2(0, 0), vec2(0, 0)) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("arc-cosine kernels") {
  const auto k1 = Kernel::arc_cosine_i(2);
  const auto k2 = Kernel::arc_cosine_ii(2);
  const Eigen::VectorXd x = vec2(2, 0), y = vec2(0, 3);
  CHECK(k1.eval(x, x) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(k1.eval(x, y) == doctest::Approx(0.5).epsilon(1e-15));          // orthogonal
  CHECK(k1.eval(x, -x) == doctest::Approx(0.0).epsilon(1e-15));         // antiparallel
  CHECK(k2.eval(x, x) == doctest::Approx(4.0).epsilon(1e-15));          // ||x||^2 exactly
  CHECK(k2.eval(x, y) == doctest::Approx(6.0 / std::numbers::pi).epsilon(1e-15));
  // Range property of the order-0 kernel.
  SubstreamRng rng(99, 0);
  for (int t = 0; t < 200; ++t) {
    const Eigen::VectorXd a = vec2(rng.uniform(-3, 3), rng.uniform(-3, 3));
    const Eigen::VectorXd b = vec2(rng.uniform(-3, 3), rng.uniform(-3, 3));
    const double v = k1.eval(a, b);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("white noise and normalized arcsine limits") {
  const auto wn = Kernel::white_noise_limit(1);
  CHECK(wn.eval(vec1(0.5), vec1(0.5)) == 1.0);
  CHECK(wn.eval(vec1(0.5), vec1(0.5000001)) == 0.0);
  const auto as = Kernel::normalized_arcsine_limit(2);
  CHECK(as.eval(vec2(3, 0), vec2(7, 0)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(as.eval(vec2(1, 0), vec2(0, 1)) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("neural-net kernel converges to the normalized arcsine limit") {
  const Eigen::VectorXd x = vec2(0.7, -0.4), y = vec2(-1.1, 0.5);
  const auto limit = Kernel::normalized_arcsine_limit(2);
  const double target = limit.eval(x, y);
  double prev_err = 1e30;
  for (double s : {1e2, 1e4, 1e6}) {
    const auto nn = Kernel::neural_net(s * Eigen::MatrixXd::Identity(2, 2));
    const double err = std::abs(nn.eval(x, y) - target);
    CHECK(err < prev_err);
    prev_err = err;
  }
  CHECK(prev_err < 1e-5);
}

TEST_CASE("sigmoid tanh form") {
  const auto k = Kernel::sigmoid_tanh(0.5, -0.2, 2);
  CHECK(k.eval(vec2(1, 2), vec2(3, -1)) ==
        doctest::Approx(std::tanh(0.5 * 1.0 - 0.2)).epsilon(1e-15));
  CHECK_FALSE(k.valid_covariance());
}

TEST_CASE("symmetry across all families") {
  SubstreamRng rng(5, 0);
  for (const auto& k : all_valid_families_dim2()) {
    for (int t = 0; t < 50; ++t) {
      const Eigen::VectorXd x = vec2(rng.uniform(-3, 3), rng.uniform(-3, 3));
      const Eigen::VectorXd y = vec2(rng.uniform(-3, 3), rng.uniform(-3, 3));
      CHECK(k.eval(x, y) == k.eval(y, x));
    }
  }
  const auto st = Kernel::sigmoid_tanh(1.0, 0.0, 2);
  CHECK(st.eval(vec2(1, 2), vec2(3, 4)) == st.eval(vec2(3, 4), vec2(1, 2)));
}

TEST_CASE("every proper family is PSD on random 50-point sets") {
  for (const auto& k : all_valid_families_dim2()) {
    const Eigen::MatrixXd pts = random_points(50, 2, 314);
    const Eigen::MatrixXd g = gram_values(k, pts);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g, Eigen::EigenvaluesOnly);
    const double floor = -1e-8 * g.diagonal().maxCoeff();
    CHECK(es.eigenvalues().minCoeff() >= floor);
  }
}

TEST_CASE("input validation") {
  const auto se = Kernel::squared_exponential(1.0, 2);
  CHECK_THROWS_AS(se.eval(vec1(1), vec2(1, 2)), std::invalid_argument);
  CHECK_THROWS_AS(Kernel::squared_exponential(0.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(Kernel::squared_exponential(1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(Kernel::nonstat_squared_exponential(1.0, -1.0, 1), std::invalid_argument);
  // Normalized families reject the zero vector (no direction).
  CHECK_THROWS_AS(Kernel::arc_cosine_i(2).eval(vec2(0, 0), vec2(1, 1)),
                  std::invalid_argument);
  CHECK_THROWS_AS(Kernel::arc_cosine_ii(2).eval(vec2(1, 1), vec2(0, 0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(Kernel::normalized_arcsine_limit(2).eval(vec2(0, 0), vec2(0, 0)),
                  std::invalid_argument);
  // Asymmetric or indefinite weight covariances are rejected.
  Eigen::MatrixXd bad(2, 2);
  bad << 1, 2, 0, 1;
  CHECK_THROWS_AS(Kernel::linear(bad), std::invalid_argument);
  Eigen::MatrixXd indef(2, 2);
  indef << 1, 2, 2, 1;
  CHECK_THROWS_AS(Kernel::neural_net(indef), std::invalid_argument);
}

TEST_CASE("cross covariance") {
  const auto se = Kernel::squared_exponential(1.0, 1);
  Eigen::MatrixXd pts(1, 1);
  pts << 0.7;
  CHECK(cross_covariance(se, pts, vec1(0.7))(0) == 1.0);

  const auto wn = Kernel::white_noise_limit(1);
  Eigen::MatrixXd pts3(3, 1);
  pts3 << 0, 1, 2;
  CHECK(cross_covariance(wn, pts3, vec1(0.5)).isZero(0.0));

  const auto lin = Kernel::linear(Eigen::MatrixXd::Identity(2, 2));
  Eigen::MatrixXd p1(1, 2);
  p1 << 1, 1;
  CHECK(cross_covariance(lin, p1, vec2(2, 3))(0) == doctest::Approx(5.0).epsilon(1e-15));
}

TEST_CASE("variogram of stationary families") {
  const auto se = Kernel::squared_exponential(1.0, 1);
  CHECK(variogram(se, 0.0) == 0.0);
  CHECK(variogram(se, 1.0) == doctest::Approx(0.39346934028736658).epsilon(1e-15));
  CHECK(variogram(se, 50.0) == doctest::Approx(1.0).epsilon(1e-12));  // sill
  double prev = -1.0;
  for (double h = 0.0; h <= 5.0; h += 0.25) {
    const double g = variogram(se, h);
    CHECK(g >= prev);
    prev = g;
  }
  CHECK_THROWS_AS(variogram(Kernel::arc_cosine_i(1), 1.0), std::invalid_argument);
  CHECK_THROWS_AS(variogram(se, -1.0), std::invalid_argument);
}

TEST_CASE("gram assembly, jitter policy, and the sigmoid rejection") {
  const auto se = Kernel::squared_exponential(1.0, 1);
  Eigen::MatrixXd pts(3, 1);
  pts << 0, 1, 2;
  const GramMatrix g = gram(se, pts);
  CHECK(g.jitter == 0.0);  // well-conditioned, no inflation needed

  // Duplicated points make the Gram exactly singular; the policy must rescue
  // it with a small recorded jitter rather than fail.
  Eigen::MatrixXd dup(3, 1);
  dup << 0, 0, 1;
  const GramMatrix gd = gram(se, dup);
  CHECK(gd.jitter > 0.0);
  CHECK(gd.jitter <= 1e-6 * gd.values.diagonal().mean());

  // SigmoidTanh is rejected by default and genuinely indefinite when forced:
  // jitter at the cap cannot make it PD.
  const auto st = Kernel::sigmoid_tanh(1.0, 0.0, 1);
  CHECK_THROWS_AS(gram(st, pts), std::invalid_argument);
  Eigen::MatrixXd wide(3, 1);
  wide << -2.5, 0.3, 2.8;
  CHECK_THROWS_AS(gram(st, wide, JitterPolicy{}, Exec::Parallel, true),
                  SingularSystemError);
}

TEST_CASE("parallel gram equals serial gram bitwise") {
  for (const auto& k : all_valid_families_dim2()) {
    const Eigen::MatrixXd pts = random_points(23, 2, 2024);
    const Eigen::MatrixXd gs = gram_values(k, pts, Exec::Serial);
    const Eigen::MatrixXd gp = gram_values(k, pts, Exec::Parallel);
    CHECK((gs.array() == gp.array()).all());
  }
}

TEST_CASE("PD audit flags the tanh kernel and clears the proper families") {
  const auto se = Kernel::squared_exponential(1.0, 2);
  const auto se_report = audit_positive_definite(se, 10, 20, 42);
  CHECK_FALSE(se_report.is_violated);
  CHECK(se_report.min_eigenvalue >= -1e-10);

  const auto wn = Kernel::white_noise_limit(2);
  CHECK_FALSE(audit_positive_definite(wn, 10, 20, 42).is_violated);  // identity Gram

  const auto st = Kernel::sigmoid_tanh(1.0, 0.0, 1);
  const auto report = audit_positive_definite(st, 3, 100, 11);
  CHECK(report.is_violated);
  CHECK(report.min_eigenvalue <= -1e-6);
  // The witness reproduces the reported eigenvalue.
  const Eigen::MatrixXd g =
      gram_values(st, report.witness_points, Exec::Serial, true);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g, Eigen::EigenvaluesOnly);
  CHECK(es.eigenvalues().minCoeff() == doctest::Approx(report.min_eigenvalue).epsilon(1e-12));

  // Deterministic under a fixed seed, regardless of scheduling.
  const auto again = audit_positive_definite(st, 3, 100, 11, Exec::Serial);
  CHECK(again.min_eigenvalue == report.min_eigenvalue);
  CHECK(again.witness_trial == report.witness_trial);
  CHECK((again.witness_points.array() == report.witness_points.array()).all());

  CHECK_THROWS_AS(audit_positive_definite(st, 1, 10, 0), std::invalid_argument);
  CHECK_THROWS_AS(audit_positive_definite(st, 3, 0, 0), std::invalid_argument);
}

}  // TEST_SUITE
