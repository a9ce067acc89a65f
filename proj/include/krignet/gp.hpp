#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "krignet/exec.hpp"
#include "krignet/kernel.hpp"
#include "krignet/path_ensemble.hpp"

namespace krignet {

/// Known (Simple-Kriging) mean. Zero is Constant(0); both evaluate to a
/// fixed value everywhere.
struct MeanFunction {
  double value = 0.0;

  static MeanFunction zero() { return {0.0}; }
  static MeanFunction constant(double v) { return {v}; }

  double operator()(const Eigen::VectorXd&) const { return value; }
};

/// Prior Z ~ GP(mean, kernel) observed through Y(x_i) = Z(x_i) + eps_i with
/// eps i.i.d. N(0, noise_variance).
struct GPModel {
  MeanFunction mean;
  Kernel kernel;
  double noise_variance = 0.0;

  GPModel(MeanFunction m, Kernel k, double noise);
};

struct Observations {
  Eigen::MatrixXd points;  // n x d
  Eigen::VectorXd values;  // n

  void validate(int input_dim) const;
};

struct Prediction {
  Eigen::VectorXd target;
  double mean = 0.0;
  double variance = 0.0;
  /// Set when the computed variance fell below -1e-8 x k(x*,x*) before being
  /// clamped to zero — i.e. beyond what round-off alone explains.
  bool variance_clamped = false;
};

/// Simple-Kriging / GPR posterior at each target:
///   mean     = m(x*) + k*' (Sigma + s^2 I)^{-1} (y - m)
///   variance = k(x*,x*) - k*' (Sigma + s^2 I)^{-1} k*
/// The mean is exactly the MAP of the Gaussian conditional. Both solves go
/// through one Cholesky factorization of the noisy Gram; no explicit inverse
/// is ever formed. Targets are independent given the factorization, so the
/// loop parallelizes over targets with bitwise-identical results.
std::vector<Prediction> predict(const GPModel& model, const Observations& obs,
                                const Eigen::MatrixXd& targets,
                                const JitterPolicy& policy = {},
                                Exec exec = Exec::Parallel);

/// Draw n_paths prior realizations of Z on the grid: mean + L z with L the
/// (jittered) Cholesky factor of the grid Gram and z standard normal.
/// Observation noise is NOT added — this samples the latent field Z, not Y.
/// Path p draws from substream (seed, p), so scheduling cannot change the
/// ensemble.
PathEnsemble sample_prior(const GPModel& model, const Eigen::MatrixXd& grid, int n_paths,
                          std::uint64_t seed, const JitterPolicy& policy = {},
                          Exec exec = Exec::Parallel);

}  // namespace krignet
