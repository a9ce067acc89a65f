#include "krignet/depth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace krignet {

namespace {

long long choose2(long long k) { return k * (k - 1) / 2; }

void check_curves(const Eigen::MatrixXd& curves) {
  if (curves.rows() < 3)
    throw std::invalid_argument("depth: need at least 3 curves");
  if (curves.cols() < 1) throw std::invalid_argument("depth: empty grid");
  if (!curves.allFinite()) throw std::invalid_argument("depth: non-finite curve values");
}

}  // namespace

const char* depth_method_name(DepthMethod m) {
  return m == DepthMethod::BandDepth ? "band_depth" : "modified_band_depth";
}

Eigen::VectorXd band_depths(const Eigen::MatrixXd& curves, Exec exec) {
  check_curves(curves);
  const Eigen::Index n = curves.rows();
  const Eigen::Index g = curves.cols();
  const double pairs = static_cast<double>(choose2(n));
  Eigen::VectorXd out(n);
#pragma omp parallel for schedule(dynamic) if (exec == Exec::Parallel)
  for (Eigen::Index i = 0; i < n; ++i) {
    long long contained = 0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j == i) continue;
      for (Eigen::Index k = j + 1; k < n; ++k) {
        if (k == i) continue;
        bool inside = true;
        for (Eigen::Index t = 0; t < g; ++t) {
          const double lo = std::min(curves(j, t), curves(k, t));
          const double hi = std::max(curves(j, t), curves(k, t));
          const double v = curves(i, t);
          if (v < lo || v > hi) {
            inside = false;
            break;
          }
        }
        if (inside) ++contained;
      }
    }
    out(i) = static_cast<double>(contained) / pairs;
  }
  return out;
}

Eigen::VectorXd modified_band_depths(const Eigen::MatrixXd& curves, Exec exec) {
  check_curves(curves);
  const Eigen::Index n = curves.rows();
  const Eigen::Index g = curves.cols();
  const long long base = choose2(n - 1);  // pairs not involving curve i
  Eigen::VectorXd out(n);
#pragma omp parallel for schedule(dynamic) if (exec == Exec::Parallel)
  for (Eigen::Index i = 0; i < n; ++i) {
    // At each grid point, the pairs whose band misses curve i are exactly
    // those lying entirely on one strict side of it; everything else
    // (including ties, bands being closed) contains it.
    long long total = 0;
    for (Eigen::Index t = 0; t < g; ++t) {
      const double v = curves(i, t);
      long long above = 0, below = 0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        if (curves(j, t) > v)
          ++above;
        else if (curves(j, t) < v)
          ++below;
      }
      total += base - choose2(above) - choose2(below);
    }
    out(i) = static_cast<double>(total) /
             (static_cast<double>(g) * static_cast<double>(choose2(n)));
  }
  return out;
}

Eigen::VectorXd depths(const Eigen::MatrixXd& curves, DepthMethod method, Exec exec) {
  return method == DepthMethod::BandDepth ? band_depths(curves, exec)
                                          : modified_band_depths(curves, exec);
}

RankTestResult rank_test_on_depths(const Eigen::VectorXd& pooled_depths, int m1, int m2,
                                   DepthMethod method) {
  const int n = m1 + m2;
  if (m1 < 5 || m2 < 5) throw std::invalid_argument("rank_test: need m1, m2 >= 5");
  if (pooled_depths.size() != n)
    throw std::invalid_argument("rank_test: depth count does not match group sizes");

  RankTestResult res;
  res.m1 = m1;
  res.m2 = m2;
  res.method = method;
  res.depths = pooled_depths;

  // Mid-ranks via sorted tie runs. Doubled mid-ranks ((a+1) + b for the run
  // [a, b)) are integers, so the statistic and all comparisons below are
  // exact.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (pooled_depths(a) != pooled_depths(b)) return pooled_depths(a) < pooled_depths(b);
    return a < b;
  });
  std::vector<long long> doubled_rank(n);
  std::vector<long long> tie_sizes;
  for (int a = 0; a < n;) {
    int b = a;
    while (b < n && pooled_depths(order[b]) == pooled_depths(order[a])) ++b;
    for (int t = a; t < b; ++t) doubled_rank[order[t]] = a + 1 + b;
    tie_sizes.push_back(b - a);
    a = b;
  }

  long long w2 = 0;
  for (int i = 0; i < m1; ++i) w2 += doubled_rank[i];
  res.statistic = static_cast<double>(w2) / 2.0;

  const long long mu2 = static_cast<long long>(m1) * (n + 1);
  const bool all_tied = tie_sizes.size() == 1;
  res.degenerate = all_tied || w2 == mu2;

  // Exact null distribution when a group is small: count subsets of size m1
  // by doubled-rank sum. Counts stay below 2^53 for the n this branch
  // accepts, so doubles hold them exactly.
  if (std::min(m1, m2) < 10 && n <= 60) {
    res.exact = true;
    const long long max_sum = static_cast<long long>(n) * (n + 1);
    std::vector<std::vector<double>> count(
        static_cast<std::size_t>(m1) + 1,
        std::vector<double>(static_cast<std::size_t>(max_sum) + 1, 0.0));
    count[0][0] = 1.0;
    for (int i = 0; i < n; ++i) {
      const long long r = doubled_rank[i];
      for (int c = std::min(i + 1, m1); c >= 1; --c) {
        for (long long s = max_sum; s >= r; --s) {
          if (count[c - 1][s - r] != 0.0) count[c][s] += count[c - 1][s - r];
        }
      }
    }
    const long long dev = std::llabs(w2 - mu2);
    double extreme = 0.0, total = 0.0;
    for (long long s = 0; s <= max_sum; ++s) {
      const double c = count[m1][s];
      if (c == 0.0) continue;
      total += c;
      if (std::llabs(s - mu2) >= dev) extreme += c;
    }
    res.p_value = extreme / total;
    return res;
  }

  // Normal approximation with tie-corrected variance, no continuity
  // correction.
  double tie_term = 0.0;
  for (long long t : tie_sizes) tie_term += static_cast<double>(t * t * t - t);
  const double dn = n;
  const double var =
      (static_cast<double>(m1) * m2 / 12.0) * ((dn + 1.0) - tie_term / (dn * (dn - 1.0)));
  if (var <= 0.0) {
    res.degenerate = true;
    res.p_value = 1.0;
    return res;
  }
  const double z = (static_cast<double>(w2 - mu2) / 2.0) / std::sqrt(var);
  res.p_value = std::erfc(std::abs(z) / std::numbers::sqrt2);
  return res;
}

RankTestResult rank_test(const PathEnsemble& group_a, const PathEnsemble& group_b,
                         DepthMethod method, Exec exec) {
  group_a.validate();
  group_b.validate();
  if (group_a.grid.rows() != group_b.grid.rows() ||
      group_a.grid.cols() != group_b.grid.cols() ||
      !(group_a.grid.array() == group_b.grid.array()).all())
    throw std::invalid_argument("rank_test: ensembles are on different grids");
  const int m1 = static_cast<int>(group_a.n_paths());
  const int m2 = static_cast<int>(group_b.n_paths());
  if (m1 < 5 || m2 < 5) throw std::invalid_argument("rank_test: need m1, m2 >= 5");

  Eigen::MatrixXd pooled(m1 + m2, group_a.paths.cols());
  pooled.topRows(m1) = group_a.paths;
  pooled.bottomRows(m2) = group_b.paths;
  const Eigen::VectorXd d = depths(pooled, method, exec);
  return rank_test_on_depths(d, m1, m2, method);
}

}  // namespace krignet
