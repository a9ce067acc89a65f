#include "krignet/path_ensemble.hpp"

#include <stdexcept>
#include <vector>

#include "krignet/numerics.hpp"

namespace krignet {

const char* provenance_name(Provenance p) {
  return p == Provenance::GP ? "GP" : "MLP";
}

void PathEnsemble::validate() const {
  if (grid.rows() == 0 || paths.rows() == 0)
    throw std::invalid_argument("PathEnsemble: empty grid or path set");
  if (paths.cols() != grid.rows())
    throw std::invalid_argument("PathEnsemble: path length does not match grid size");
  if (!grid.allFinite() || !paths.allFinite())
    throw std::invalid_argument("PathEnsemble: non-finite entries");
  if (grid.cols() == 1) {
    for (Eigen::Index i = 1; i < grid.rows(); ++i)
      if (grid(i, 0) <= grid(i - 1, 0))
        throw std::invalid_argument("PathEnsemble: 1-D grid must be strictly increasing");
  }
}

Eigen::MatrixXd empirical_covariance(const PathEnsemble& ensemble, Exec exec) {
  ensemble.validate();
  const Eigen::Index m = ensemble.n_paths();
  const Eigen::Index g = ensemble.n_grid();
  if (m < 2) throw std::invalid_argument("empirical_covariance: need at least 2 paths");

  // Center each column with a pairwise mean so the result is independent of
  // the schedule below.
  Eigen::MatrixXd centered(m, g);
  std::vector<double> col(static_cast<std::size_t>(m));
  for (Eigen::Index j = 0; j < g; ++j) {
    for (Eigen::Index i = 0; i < m; ++i) col[static_cast<std::size_t>(i)] = ensemble.paths(i, j);
    const double mean = pairwise_sum(col) / static_cast<double>(m);
    centered.col(j) = ensemble.paths.col(j).array() - mean;
  }

  Eigen::MatrixXd cov(g, g);
#pragma omp parallel for schedule(dynamic) if (exec == Exec::Parallel)
  for (Eigen::Index i = 0; i < g; ++i) {
    for (Eigen::Index j = i; j < g; ++j) {
      cov(i, j) = centered.col(i).dot(centered.col(j)) / static_cast<double>(m - 1);
    }
  }
  cov.triangularView<Eigen::StrictlyLower>() = cov.transpose();
  return cov;
}

}  // namespace krignet
