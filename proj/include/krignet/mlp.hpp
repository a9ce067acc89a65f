#pragma once

#include <cstdint>

#include <Eigen/Core>

#include "krignet/exec.hpp"
#include "krignet/kernel.hpp"
#include "krignet/path_ensemble.hpp"
#include "krignet/rng.hpp"

namespace krignet {

enum class TransferKind { Linear, Erf, CosinePhase, GaussianBump, Heaviside, ReLU };

const char* transfer_name(TransferKind k);

/// Hidden-unit nonlinearity h(x; a) together with the Gaussian law of its
/// weights a (and the uniform phase for the cosine unit). Construct through
/// the factories; objects are immutable and safe to share across threads.
class TransferFunction {
 public:
  /// h = a'x, a ~ N(0, weight_cov).
  static TransferFunction linear(Eigen::MatrixXd weight_cov);

  /// h = erf(a'x), a ~ N(0, weight_cov).
  static TransferFunction erf(Eigen::MatrixXd weight_cov);

  /// h = sqrt(2) cos(a'x + phi), a ~ N(0, sigma^-2 I), phi ~ U(0, 2pi).
  /// length_scale is the sigma of the squared-exponential kernel this unit
  /// induces; the weight variance is its inverse square.
  static TransferFunction cosine_phase(double length_scale, int input_dim);

  /// h = exp(-||x-a||^2 / (2 bump_width^2)), a ~ N(0, weight_spread^2 I).
  static TransferFunction gaussian_bump(double bump_width, double weight_spread,
                                        int input_dim);

  /// h = 1{a'x >= 0} (closed half-line: h = 1 at a'x = 0), a ~ N(0, I).
  static TransferFunction heaviside(int input_dim);

  /// h = max(0, a'x), a ~ N(0, I).
  static TransferFunction relu(int input_dim);

  TransferKind kind() const { return kind_; }
  int input_dim() const { return input_dim_; }
  bool has_phase() const { return kind_ == TransferKind::CosinePhase; }
  double length_scale() const { return length_scale_; }
  double bump_width() const { return bump_width_; }
  double weight_spread() const { return weight_spread_; }
  const Eigen::MatrixXd& weight_cov() const { return weight_cov_; }

  /// One weight draw a ~ N(0, weight covariance), consuming exactly
  /// input_dim normals from rng.
  Eigen::VectorXd draw_weights(SubstreamRng& rng) const;

  /// One phase draw; consumes one uniform for CosinePhase, nothing otherwise.
  double draw_phase(SubstreamRng& rng) const;

  /// h(x; a) (phase ignored by phase-free kinds).
  double eval(const Eigen::VectorXd& a, double phase, const Eigen::VectorXd& x) const;

  /// The closed-form family with E[h(x;a) h(x';a)] = scale * kernel(x,x').
  /// scale is 1 except for Heaviside and ReLU, where the second-moment
  /// integral equals half the arc-cosine kernel (Cho & Saul 2009 normalize
  /// the kernels with a factor 2).
  struct InducedKernel {
    Kernel kernel;
    double scale = 1.0;
  };
  InducedKernel induced_kernel() const;

 private:
  TransferFunction() : weight_scale_(1.0) {}

  TransferKind kind_ = TransferKind::Linear;
  int input_dim_ = 0;
  Eigen::MatrixXd weight_cov_;     // Linear / Erf
  Eigen::MatrixXd weight_factor_;  // symmetric sqrt of weight_cov_
  double weight_scale_ = 1.0;      // isotropic kinds: a = weight_scale * z
  double length_scale_ = 0.0;      // CosinePhase
  double bump_width_ = 0.0;        // GaussianBump
  double weight_spread_ = 0.0;     // GaussianBump
};

/// Prior over single-hidden-layer networks y(x) = b0 + sum_j b_j h(x; a_j)
/// with L = hidden_units and Var(b_j) = total_output_variance / L, so the
/// output variance stays fixed as L grows. b0 is sampled only when
/// bias_included (default off: the bias shifts the limit kernel by a
/// constant, which the squared-exponential comparisons must not carry).
struct MLPPriorConfig {
  TransferFunction transfer;
  int hidden_units = 1;
  double total_output_variance = 1.0;
  bool bias_included = false;

  void validate() const;
};

struct RealizedNetwork {
  TransferFunction transfer;
  Eigen::MatrixXd hidden_weights;  // L x d, a_j as rows
  Eigen::VectorXd phases;          // L (zeros for phase-free transfers)
  Eigen::VectorXd output_weights;  // L
  double bias = 0.0;
  bool bias_included = false;

  double eval(const Eigen::VectorXd& x) const;

  /// All grid points at once (g x d in, g out); same values as eval per row.
  Eigen::VectorXd eval_on_grid(const Eigen::MatrixXd& grid) const;
};

/// Draw one network. Draw order per unit j: the d weight normals, then the
/// phase; after all units, b0 (iff bias), then b_1..b_L. sample_network(cfg,
/// seed) equals path 0 of sample_paths(cfg, ., ., seed).
RealizedNetwork sample_network(const MLPPriorConfig& config, std::uint64_t seed);

/// n_paths independent networks evaluated on the grid; network p draws from
/// substream (seed, p). provenance = MLP.
PathEnsemble sample_paths(const MLPPriorConfig& config, const Eigen::MatrixXd& grid,
                          int n_paths, std::uint64_t seed, Exec exec = Exec::Parallel);

struct KernelEstimate {
  double value = 0.0;
  double std_error = 0.0;
  long n_mc = 0;
};

/// Monte-Carlo estimate of E[h(x;a) h(x';a)] over n_mc i.i.d. weight (and
/// phase) draws. Draws are grouped in fixed blocks of 4096 with one substream
/// per block, and the products are reduced pairwise, so value and std_error
/// are identical for any thread count.
KernelEstimate mc_kernel(const TransferFunction& transfer, const Eigen::VectorXd& x,
                         const Eigen::VectorXd& y, long n_mc, std::uint64_t seed,
                         Exec exec = Exec::Parallel);

}  // namespace krignet
