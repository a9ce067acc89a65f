#pragma once

#include <cstdint>

#include <Eigen/Core>

#include "krignet/exec.hpp"

namespace krignet {

enum class Provenance { GP, MLP };

const char* provenance_name(Provenance p);

/// A finite-grid ensemble of sample paths: one row of `paths` per path, one
/// column per grid point. Shared currency between the GP sampler, the MLP
/// sampler, and the depth machinery.
struct PathEnsemble {
  Eigen::MatrixXd grid;   // g x d, one row per grid point
  Eigen::MatrixXd paths;  // m x g
  Provenance provenance = Provenance::GP;
  std::uint64_t seed = 0;

  Eigen::Index n_paths() const { return paths.rows(); }
  Eigen::Index n_grid() const { return grid.rows(); }

  /// Throws std::invalid_argument on shape mismatch, non-finite entries, or a
  /// 1-D grid that is not strictly increasing.
  void validate() const;
};

/// Unbiased sample covariance across paths per grid-point pair (g x g).
/// Requires >= 2 paths. Entries are computed pairwise per (i,j), so the
/// parallel and serial schedules agree bitwise.
Eigen::MatrixXd empirical_covariance(const PathEnsemble& ensemble,
                                     Exec exec = Exec::Parallel);

}  // namespace krignet
