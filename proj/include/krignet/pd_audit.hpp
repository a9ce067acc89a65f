#pragma once

#include <cstdint>

#include <Eigen/Core>

#include "krignet/exec.hpp"
#include "krignet/kernel.hpp"

namespace krignet {

/// Outcome of a randomized positive-semidefiniteness audit.
struct PdAuditReport {
  bool is_violated = false;
  /// Most negative eigenvalue seen over all trials.
  double min_eigenvalue = 0.0;
  /// Point set (n_points x d) whose Gram attains min_eigenvalue.
  Eigen::MatrixXd witness_points;
  int witness_trial = 0;
  int n_points = 0;
  int n_trials = 0;
  /// Violation threshold actually applied: -1e-8 x max diagonal seen.
  double threshold = 0.0;
};

/// Sample n_trials random point sets (coordinates i.i.d. uniform on [-3,3],
/// one substream per trial), assemble the raw Gram of each (no jitter),
/// eigen-decompose, and report the most negative eigenvalue with its witness
/// set. A kernel is flagged violated when that eigenvalue falls below
/// -1e-8 times the largest Gram diagonal entry encountered — the same
/// round-off allowance a valid family must stay above.
///
/// Trials are independent, so the scan parallelizes over trials; the
/// per-trial minima are reduced serially afterwards, keeping the report
/// identical for any thread count.
PdAuditReport audit_positive_definite(const Kernel& kernel, int n_points, int n_trials,
                                      std::uint64_t seed, Exec exec = Exec::Parallel);

}  // namespace krignet
