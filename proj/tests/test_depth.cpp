#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include <doctest.h>

#include "krignet/depth.hpp"
#include "krignet/rng.hpp"
#include "oracles.hpp"

using namespace krignet;

namespace {

Eigen::MatrixXd random_curves(int n, int g, std::uint64_t seed, int tie_every = 0) {
  SubstreamRng rng(seed, 0);
  Eigen::MatrixXd curves(n, g);
  for (int i = 0; i < n; ++i)
    for (int t = 0; t < g; ++t) curves(i, t) = rng.uniform(-2.0, 2.0);
  // Optionally inject exact ties so the tie handling is exercised.
  if (tie_every > 0)
    for (int i = tie_every; i < n; i += tie_every) curves.row(i) = curves.row(i - tie_every);
  return curves;
}

PathEnsemble make_ensemble(const Eigen::MatrixXd& curves, std::uint64_t seed) {
  PathEnsemble e;
  e.grid.resize(curves.cols(), 1);
  for (Eigen::Index t = 0; t < curves.cols(); ++t) e.grid(t, 0) = static_cast<double>(t);
  e.paths = curves;
  e.provenance = Provenance::GP;
  e.seed = seed;
  return e;
}

}  // namespace

TEST_SUITE("depth") {

TEST_CASE("three nested constant curves") {
  // The middle curve is contained by the single (outer, inner) pair; the
  // outer curves are contained by no pair. C(3,2) = 3.
  Eigen::MatrixXd curves(3, 4);
  curves.row(0).setConstant(-1.0);
  curves.row(1).setConstant(0.0);
  curves.row(2).setConstant(1.0);
  const Eigen::VectorXd bd = band_depths(curves);
  CHECK(bd(0) == 0.0);
  CHECK(bd(1) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(bd(2) == 0.0);
  // MBD agrees exactly here: containment is all-or-nothing for constants.
  const Eigen::VectorXd mbd = modified_band_depths(curves);
  CHECK(mbd(0) == 0.0);
  CHECK(mbd(1) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(mbd(2) == 0.0);
}

TEST_CASE("identical curves share the maximal depth") {
  Eigen::MatrixXd curves(4, 3);
  curves.setConstant(2.5);
  const Eigen::VectorXd bd = band_depths(curves);
  // Every curve is inside every band of the other three: C(3,2)/C(4,2) = 1/2.
  for (int i = 0; i < 4; ++i) CHECK(bd(i) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("half-in half-out curve gets modified credit but no band credit") {
  // Curve 2 sits inside the band of (0, 1) on exactly half the grid points.
  Eigen::MatrixXd curves(3, 4);
  curves.row(0) << 0, 0, 0, 0;
  curves.row(1) << 1, 1, 1, 1;
  curves.row(2) << 0.5, 0.5, 2.0, 2.0;
  const Eigen::VectorXd bd = band_depths(curves);
  const Eigen::VectorXd mbd = modified_band_depths(curves);
  CHECK(bd(2) == 0.0);
  CHECK(mbd(2) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));  // (1/2) / C(3,2)
}

TEST_CASE("both depths equal the brute-force enumeration exactly") {
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    const Eigen::MatrixXd curves = random_curves(12, 9, seed, seed == 3 ? 3 : 0);
    const Eigen::VectorXd bd = band_depths(curves);
    const Eigen::VectorXd bd_ref = oracle::band_depths(curves);
    const Eigen::VectorXd mbd = modified_band_depths(curves);
    const Eigen::VectorXd mbd_ref = oracle::modified_band_depths(curves);
    // Integer counting inside: equality is exact, not approximate.
    CHECK((bd.array() == bd_ref.array()).all());
    CHECK((mbd.array() == mbd_ref.array()).all());
  }
  // Larger fixture against the serial path too.
  const Eigen::MatrixXd big = random_curves(50, 25, 99);
  CHECK((band_depths(big).array() == oracle::band_depths(big).array()).all());
  CHECK((modified_band_depths(big, Exec::Serial).array() ==
         oracle::modified_band_depths(big).array()).all());
  CHECK((band_depths(big, Exec::Serial).array() == band_depths(big).array()).all());
}

TEST_CASE("depths are invariant under monotone value transforms") {
  const Eigen::MatrixXd curves = random_curves(10, 7, 4);
  const Eigen::VectorXd base_bd = band_depths(curves);
  const Eigen::VectorXd base_mbd = modified_band_depths(curves);
  const Eigen::MatrixXd affine = (2.0 * curves.array() + 3.0).matrix();
  const Eigen::MatrixXd cubic = curves.array().cube().matrix();
  CHECK((band_depths(affine).array() == base_bd.array()).all());
  CHECK((band_depths(cubic).array() == base_bd.array()).all());
  CHECK((modified_band_depths(affine).array() == base_mbd.array()).all());
  CHECK((modified_band_depths(cubic).array() == base_mbd.array()).all());
}

TEST_CASE("depths are equivariant under curve reordering") {
  const Eigen::MatrixXd curves = random_curves(9, 6, 12);
  const Eigen::VectorXd base = band_depths(curves);
  std::vector<int> perm(9);
  std::iota(perm.begin(), perm.end(), 0);
  std::reverse(perm.begin(), perm.end());
  std::swap(perm[2], perm[5]);
  Eigen::MatrixXd shuffled(9, 6);
  for (int i = 0; i < 9; ++i) shuffled.row(i) = curves.row(perm[i]);
  const Eigen::VectorXd after = band_depths(shuffled);
  for (int i = 0; i < 9; ++i) CHECK(after(i) == base(perm[static_cast<std::size_t>(i)]));
}

TEST_CASE("depth input validation") {
  CHECK_THROWS_AS(band_depths(Eigen::MatrixXd(2, 5)), std::invalid_argument);   // n < 3
  CHECK_THROWS_AS(band_depths(Eigen::MatrixXd(3, 0)), std::invalid_argument);   // empty grid
  Eigen::MatrixXd bad(3, 2);
  bad.setZero();
  bad(1, 1) = std::nan("");
  CHECK_THROWS_AS(modified_band_depths(bad), std::invalid_argument);
  CHECK(depth_method_name(DepthMethod::BandDepth) == std::string("band_depth"));
  CHECK(depth_method_name(DepthMethod::ModifiedBandDepth) ==
        std::string("modified_band_depth"));
}

TEST_CASE("rank statistic uses mid-ranks and the exact branch below ten") {
  // Fully separated groups of five: A = {1,2,3,4,5}, B = {6,...,10} as depth
  // values. W = 15 is the most extreme configuration; the exact two-sided
  // p-value is 2 / C(10,5) = 2/252.
  Eigen::VectorXd pooled(10);
  pooled << 1, 2, 3, 4, 5, 6, 7, 8, 9, 10;
  const auto r = rank_test_on_depths(pooled, 5, 5, DepthMethod::BandDepth);
  CHECK(r.exact);
  CHECK_FALSE(r.degenerate);
  CHECK(r.statistic == 15.0);
  CHECK(r.p_value == doctest::Approx(0.0079365079365079361).epsilon(1e-15));
  CHECK(r.m1 == 5);
  CHECK(r.m2 == 5);

  // Ties get mid-ranks: runs (0,0,0), (1,1,1), (2,2), (3,3) carry mid-ranks
  // 2, 5, 7.5 and 9.5, so A = {0,0,0,1,1} sums to 16.
  Eigen::VectorXd tied(10);
  tied << 0, 0, 0, 1, 1, 1, 2, 2, 3, 3;
  const auto rt = rank_test_on_depths(tied, 5, 5, DepthMethod::BandDepth);
  CHECK(rt.statistic == 16.0);
}

TEST_CASE("exact branch equals subset enumeration on random tied fixtures") {
  SubstreamRng rng(55, 0);
  for (int rep = 0; rep < 12; ++rep) {
    const int m1 = 5 + rep % 3;
    const int m2 = 5 + (rep / 3) % 3;
    Eigen::VectorXd pooled(m1 + m2);
    // Coarse lattice values force heavy ties.
    for (int i = 0; i < m1 + m2; ++i)
      pooled(i) = std::floor(rng.uniform(0.0, 4.0)) / 3.0;
    const auto r = rank_test_on_depths(pooled, m1, m2, DepthMethod::ModifiedBandDepth);
    const double ref = oracle::rank_sum_p(pooled, m1);
    REQUIRE(r.exact);
    if (r.degenerate) {
      CHECK(r.p_value == 1.0);
    } else {
      CHECK(r.p_value == doctest::Approx(ref).epsilon(1e-12));
    }
  }
}

TEST_CASE("normal branch matches the tie-corrected closed form") {
  // Both groups of size 12 push the test onto the normal approximation.
  SubstreamRng rng(66, 0);
  Eigen::VectorXd pooled(24);
  for (int i = 0; i < 24; ++i) pooled(i) = std::floor(rng.uniform(0.0, 6.0));
  const auto r = rank_test_on_depths(pooled, 12, 12, DepthMethod::BandDepth);
  CHECK_FALSE(r.exact);
  // Reference: mid-ranks, mu = m1(n+1)/2, tie-corrected variance, erfc tail.
  const auto r2 = oracle::doubled_midranks(pooled);
  double w = 0.0;
  for (int i = 0; i < 12; ++i) w += static_cast<double>(r2[static_cast<std::size_t>(i)]) / 2.0;
  const double mu = 12.0 * 25.0 / 2.0;
  double tie_sum = 0.0;
  std::vector<double> sorted(pooled.data(), pooled.data() + 24);
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t a = 0; a < sorted.size();) {
    std::size_t b = a;
    while (b < sorted.size() && sorted[b] == sorted[a]) ++b;
    const double t = static_cast<double>(b - a);
    tie_sum += t * t * t - t;
    a = b;
  }
  const double var = (12.0 * 12.0 / 12.0) * (25.0 - tie_sum / (24.0 * 23.0));
  const double z = (w - mu) / std::sqrt(var);
  const double p = std::erfc(std::abs(z) / std::numbers::sqrt2);
  CHECK(r.statistic == doctest::Approx(w).epsilon(1e-15));
  CHECK(r.p_value == doctest::Approx(p).epsilon(1e-12));
}

TEST_CASE("degenerate pools report p = 1 with the flag set") {
  Eigen::VectorXd all_tied(12);
  all_tied.setConstant(0.25);
  const auto r = rank_test_on_depths(all_tied, 6, 6, DepthMethod::BandDepth);
  CHECK(r.degenerate);
  CHECK(r.p_value == 1.0);

  // Duplicated ensembles through the full pipeline: pooling two copies of the
  // same curves leaves every depth duplicated, the statistic lands exactly on
  // its null mean, and the result is flagged.
  const Eigen::MatrixXd curves = random_curves(6, 5, 8);
  const PathEnsemble a = make_ensemble(curves, 1);
  const PathEnsemble b = make_ensemble(curves, 2);
  const auto full = rank_test(a, b, DepthMethod::BandDepth);
  CHECK(full.degenerate);
  CHECK(full.p_value == 1.0);
  CHECK(full.m1 == 6);
  CHECK(full.m2 == 6);
}

TEST_CASE("roughness alternatives yield a tiny p-value") {
  // Depth ranks are blind to a pure location swap (the pooled picture is
  // symmetric), but they separate central flat curves from wild oscillating
  // ones: group A sits deep inside the pooled bands at every grid point,
  // group B keeps escaping them.
  SubstreamRng rng(500, 0);
  Eigen::MatrixXd a_curves(12, 8), b_curves(12, 8);
  for (int i = 0; i < 12; ++i) {
    const double level = rng.uniform(-0.5, 0.5);
    for (int t = 0; t < 8; ++t) {
      a_curves(i, t) = level;
      b_curves(i, t) = rng.uniform(-2.0, 2.0);
    }
  }
  const auto full = rank_test(make_ensemble(a_curves, 1), make_ensemble(b_curves, 2),
                              DepthMethod::ModifiedBandDepth);
  CHECK(full.p_value < 0.01);
}

TEST_CASE("rank test validates shapes") {
  const Eigen::MatrixXd curves = random_curves(6, 5, 3);
  PathEnsemble a = make_ensemble(curves, 1);
  PathEnsemble b = make_ensemble(curves, 2);
  b.grid(1, 0) += 0.5;  // grids must match exactly
  CHECK_THROWS_AS(rank_test(a, b, DepthMethod::BandDepth), std::invalid_argument);

  PathEnsemble small = make_ensemble(random_curves(4, 5, 4), 3);
  PathEnsemble other = make_ensemble(random_curves(6, 5, 5), 4);
  CHECK_THROWS_AS(rank_test(small, other, DepthMethod::BandDepth), std::invalid_argument);

  CHECK_THROWS_AS(rank_test_on_depths(Eigen::VectorXd::Zero(9), 5, 4, DepthMethod::BandDepth),
                  std::invalid_argument);
}

}  // TEST_SUITE
