#include "krignet/gp.hpp"

#include <algorithm>
#include <stdexcept>

#include "krignet/rng.hpp"

namespace krignet {

GPModel::GPModel(MeanFunction m, Kernel k, double noise)
    : mean(m), kernel(std::move(k)), noise_variance(noise) {
  if (noise_variance < 0.0)
    throw std::invalid_argument("GPModel: noise variance must be nonnegative");
  if (!kernel.valid_covariance())
    throw std::invalid_argument("GPModel: sigmoid_tanh is not a valid covariance function");
}

void Observations::validate(int input_dim) const {
  if (points.rows() == 0) throw std::invalid_argument("Observations: empty");
  if (points.rows() != values.size())
    throw std::invalid_argument("Observations: point/value count mismatch");
  if (points.cols() != input_dim)
    throw std::invalid_argument("Observations: dimension does not match kernel");
  if (!points.allFinite() || !values.allFinite())
    throw std::invalid_argument("Observations: non-finite entries");
}

std::vector<Prediction> predict(const GPModel& model, const Observations& obs,
                                const Eigen::MatrixXd& targets, const JitterPolicy& policy,
                                Exec exec) {
  obs.validate(model.kernel.input_dim());
  if (targets.cols() != model.kernel.input_dim())
    throw std::invalid_argument("predict: target dimension does not match kernel");

  const Eigen::Index n = obs.points.rows();
  Eigen::MatrixXd noisy = gram_values(model.kernel, obs.points, exec);
  noisy.diagonal().array() += model.noise_variance;
  auto fac = jittered_llt(noisy, policy, "predict");

  Eigen::VectorXd residual = obs.values;
  for (Eigen::Index i = 0; i < n; ++i) residual(i) -= model.mean(obs.points.row(i));
  const Eigen::VectorXd alpha = fac.llt.solve(residual);

  std::vector<Prediction> out(static_cast<std::size_t>(targets.rows()));
#pragma omp parallel for schedule(dynamic) if (exec == Exec::Parallel)
  for (Eigen::Index t = 0; t < targets.rows(); ++t) {
    Eigen::VectorXd x = targets.row(t);
    const Eigen::VectorXd ks = cross_covariance(model.kernel, obs.points, x);
    const double kss = model.kernel.eval(x, x);
    Prediction p;
    p.target = x;
    p.mean = model.mean(x) + ks.dot(alpha);
    const double raw = kss - ks.dot(fac.llt.solve(ks));
    if (raw < 0.0) {
      p.variance = 0.0;
      p.variance_clamped = raw < -1e-8 * std::max(kss, 1.0);
    } else {
      p.variance = raw;
    }
    out[static_cast<std::size_t>(t)] = std::move(p);
  }
  return out;
}

PathEnsemble sample_prior(const GPModel& model, const Eigen::MatrixXd& grid, int n_paths,
                          std::uint64_t seed, const JitterPolicy& policy, Exec exec) {
  if (n_paths < 1) throw std::invalid_argument("sample_prior: n_paths must be >= 1");
  if (grid.rows() == 0) throw std::invalid_argument("sample_prior: empty grid");
  if (grid.cols() != model.kernel.input_dim())
    throw std::invalid_argument("sample_prior: grid dimension does not match kernel");

  const Eigen::Index g = grid.rows();
  Eigen::MatrixXd gram = gram_values(model.kernel, grid, exec);
  auto fac = jittered_llt(gram, policy, "sample_prior");
  const Eigen::MatrixXd chol = fac.llt.matrixL();

  Eigen::VectorXd mean_vec(g);
  for (Eigen::Index i = 0; i < g; ++i) mean_vec(i) = model.mean(grid.row(i));

  PathEnsemble ens;
  ens.grid = grid;
  ens.paths.resize(n_paths, g);
  ens.provenance = Provenance::GP;
  ens.seed = seed;
#pragma omp parallel for schedule(dynamic) if (exec == Exec::Parallel)
  for (int p = 0; p < n_paths; ++p) {
    SubstreamRng rng(seed, static_cast<std::uint64_t>(p));
    const Eigen::VectorXd z = rng.normals(g);
    ens.paths.row(p) = (mean_vec + chol * z).transpose();
  }
  ens.validate();
  return ens;
}

}  // namespace krignet
