#pragma once

#include <Eigen/Core>

#include "krignet/exec.hpp"
#include "krignet/path_ensemble.hpp"

namespace krignet {

enum class DepthMethod { BandDepth, ModifiedBandDepth };

const char* depth_method_name(DepthMethod m);

/// Band depth (J = 2) of every curve in `curves` (one curve per row).
/// Depth of curve i = (number of pairs (j < k), j != i, k != i, whose closed
/// band [min(c_j,c_k), max(c_j,c_k)] contains c_i at EVERY grid point)
/// divided by C(n,2). Boundary contact counts as containment; the curve's
/// own pairs are excluded from the numerator but the denominator keeps all
/// C(n,2) pairs. Requires n >= 3.
Eigen::VectorXd band_depths(const Eigen::MatrixXd& curves, Exec exec = Exec::Parallel);

/// Modified band depth (J = 2): same pairs and conventions, but each pair
/// contributes the fraction of grid points at which the curve lies inside the
/// band, averaged over the C(n,2) pairs. Uses the per-point above/below
/// counting identity, which the brute-force enumeration tests pin down.
Eigen::VectorXd modified_band_depths(const Eigen::MatrixXd& curves,
                                     Exec exec = Exec::Parallel);

Eigen::VectorXd depths(const Eigen::MatrixXd& curves, DepthMethod method,
                       Exec exec = Exec::Parallel);

struct RankTestResult {
  double statistic = 0.0;  // rank-sum of group A depths (mid-ranks)
  double p_value = 1.0;
  int m1 = 0;
  int m2 = 0;
  DepthMethod method = DepthMethod::BandDepth;
  /// Exact enumeration was used (min(m1,m2) < 10), otherwise the
  /// tie-corrected normal approximation.
  bool exact = false;
  /// Degenerate configuration: all pooled depths tied, or the statistic sits
  /// exactly at its null mean; p_value is 1 in both cases.
  bool degenerate = false;
  Eigen::VectorXd depths;  // pooled, group A rows first
};

/// Two-sided rank-sum test on pooled depth values: do the two ensembles of
/// curves come from the same population? Pools the curves (A first), computes
/// depths on the pooled ensemble, mid-ranks them, and sums group A's ranks.
/// p-value: exact enumeration of the rank-sum distribution when
/// min(m1,m2) < 10, else a normal approximation with tie-corrected variance
/// (no continuity correction). Grids must match exactly; m1, m2 >= 5.
RankTestResult rank_test(const PathEnsemble& group_a, const PathEnsemble& group_b,
                         DepthMethod method, Exec exec = Exec::Parallel);

/// The statistic/p-value machinery on precomputed depth values (group A =
/// first m1 entries). Exposed for fixture-driven tests.
RankTestResult rank_test_on_depths(const Eigen::VectorXd& pooled_depths, int m1, int m2,
                                   DepthMethod method);

}  // namespace krignet
