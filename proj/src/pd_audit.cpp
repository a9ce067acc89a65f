#include "krignet/pd_audit.hpp"

#include <stdexcept>
#include <vector>

#include <Eigen/Eigenvalues>

#include "krignet/rng.hpp"

namespace krignet {

PdAuditReport audit_positive_definite(const Kernel& kernel, int n_points, int n_trials,
                                      std::uint64_t seed, Exec exec) {
  if (n_points < 2) throw std::invalid_argument("audit_positive_definite: n_points must be >= 2");
  if (n_trials < 1) throw std::invalid_argument("audit_positive_definite: n_trials must be >= 1");

  const int d = kernel.input_dim();
  std::vector<double> min_eig(n_trials);
  std::vector<double> max_diag(n_trials);

#pragma omp parallel for schedule(dynamic) if (exec == Exec::Parallel)
  for (int t = 0; t < n_trials; ++t) {
    SubstreamRng rng(seed, static_cast<std::uint64_t>(t));
    Eigen::MatrixXd pts(n_points, d);
    for (int i = 0; i < n_points; ++i)
      for (int j = 0; j < d; ++j) pts(i, j) = rng.uniform(-3.0, 3.0);
    Eigen::MatrixXd g = gram_values(kernel, pts, Exec::Serial, /*allow_invalid=*/true);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g, Eigen::EigenvaluesOnly);
    min_eig[t] = es.eigenvalues().minCoeff();
    max_diag[t] = g.diagonal().maxCoeff();
  }

  PdAuditReport report;
  report.n_points = n_points;
  report.n_trials = n_trials;
  int worst = 0;
  double peak_diag = 0.0;
  for (int t = 0; t < n_trials; ++t) {
    if (min_eig[t] < min_eig[worst]) worst = t;
    if (max_diag[t] > peak_diag) peak_diag = max_diag[t];
  }
  report.min_eigenvalue = min_eig[worst];
  report.witness_trial = worst;
  report.threshold = -1e-8 * (peak_diag > 0.0 ? peak_diag : 1.0);
  report.is_violated = report.min_eigenvalue < report.threshold;

  // Regenerate the winning point set from its substream rather than storing
  // every trial's points.
  SubstreamRng rng(seed, static_cast<std::uint64_t>(worst));
  report.witness_points.resize(n_points, d);
  for (int i = 0; i < n_points; ++i)
    for (int j = 0; j < d; ++j) report.witness_points(i, j) = rng.uniform(-3.0, 3.0);
  return report;
}

}  // namespace krignet
