#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace krignet {

/// Pairwise (cascade) summation. Fixed recursion shape: the result depends
/// only on the data, not on thread count or chunking, so reductions built on
/// it replay bit-identically.
inline double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 32) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

struct MeanVar {
  double mean = 0.0;
  double variance = 0.0;  // unbiased (n-1)
};

/// Two-pass mean/variance with pairwise reductions in both passes.
inline MeanVar pairwise_mean_variance(std::span<const double> v) {
  MeanVar out;
  const std::size_t n = v.size();
  if (n == 0) return out;
  out.mean = pairwise_sum(v) / static_cast<double>(n);
  if (n < 2) return out;

  // Sum of squared deviations, same cascade shape as pairwise_sum.
  struct Rec {
    static double run(std::span<const double> s, double mean) {
      if (s.size() <= 32) {
        double acc = 0.0;
        for (double x : s) {
          const double d = x - mean;
          acc += d * d;
        }
        return acc;
      }
      const std::size_t half = s.size() / 2;
      return run(s.first(half), mean) + run(s.subspan(half), mean);
    }
  };
  out.variance = Rec::run(v, out.mean) / static_cast<double>(n - 1);
  return out;
}

struct Moments {
  double mean = 0.0;
  double variance = 0.0;  // unbiased (n-1)
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
};

/// First four sample moments, central sums accumulated with the same fixed
/// cascade as pairwise_sum. Skewness and kurtosis use the population
/// normalization (moment ratios), adequate for the large samples they gate.
inline Moments pairwise_moments(std::span<const double> v) {
  Moments out;
  const std::size_t n = v.size();
  if (n == 0) return out;
  out.mean = pairwise_sum(v) / static_cast<double>(n);
  if (n < 2) return out;

  struct Sums {
    double s2 = 0.0, s3 = 0.0, s4 = 0.0;
    Sums operator+(const Sums& o) const { return {s2 + o.s2, s3 + o.s3, s4 + o.s4}; }
  };
  struct Rec {
    static Sums run(std::span<const double> s, double mean) {
      if (s.size() <= 32) {
        Sums acc;
        for (double x : s) {
          const double d = x - mean;
          const double d2 = d * d;
          acc.s2 += d2;
          acc.s3 += d2 * d;
          acc.s4 += d2 * d2;
        }
        return acc;
      }
      const std::size_t half = s.size() / 2;
      return run(s.first(half), mean) + run(s.subspan(half), mean);
    }
  };
  const Sums s = Rec::run(v, out.mean);
  const double dn = static_cast<double>(n);
  out.variance = s.s2 / (dn - 1.0);
  const double m2 = s.s2 / dn;
  if (m2 > 0.0) {
    out.skewness = (s.s3 / dn) / (m2 * std::sqrt(m2));
    out.excess_kurtosis = (s.s4 / dn) / (m2 * m2) - 3.0;
  }
  return out;
}

}  // namespace krignet
