#pragma once

#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "krignet/exec.hpp"

namespace krignet {

/// Closed-form covariance families. The first six are the proper
/// transfer-function kernels; WhiteNoiseLimit, NormalizedArcsineLimit and
/// HalfWidthSELimit are the improper-weight-prior limits, kept as first-class
/// families because the limiting prior itself cannot be sampled. SigmoidTanh
/// is the classic tanh "kernel" of the SVM literature; it is not positive
/// semidefinite and exists here only so the PD audit can demonstrate that.
enum class KernelFamily {
  Linear,
  NeuralNet,
  SquaredExponential,
  NonStatSquaredExponential,
  ArcCosineI,
  ArcCosineII,
  WhiteNoiseLimit,
  NormalizedArcsineLimit,
  HalfWidthSELimit,
  SigmoidTanh,
};

const char* family_name(KernelFamily f);

/// Immutable covariance function. Construct through the named factories;
/// parameters are validated once there and the object is safe to share and
/// evaluate concurrently.
class Kernel {
 public:
  /// k(x,x') = x' Sigma_w x'. weight_cov must be symmetric PSD.
  static Kernel linear(Eigen::MatrixXd weight_cov);

  /// Erf-network kernel (Williams 1998):
  /// k = (2/pi) asin( 2 x'Sx' / sqrt((1+2 x'Sx)(1+2 x''Sx'')) ).
  static Kernel neural_net(Eigen::MatrixXd weight_cov);

  /// k = exp(-||x-x'||^2 / (2 sigma^2)), sigma > 0.
  static Kernel squared_exponential(double length_scale, int input_dim);

  /// Gaussian-bump network kernel,
  ///   k = k0 exp(-x'x/c1) exp(-||x-x'||^2/c2) exp(-x''x'/c1)
  /// with c1 = 2 sg^2 + 4 sa^2, c2 = 4 sg^2 + 2 sg^4/sa^2 and
  /// k0 = (1 + 2 sa^2/sg^2)^(-d/2); k0 is pinned so that k(0,0) equals
  /// E[h(0;a)^2] of the bump transfer function.
  static Kernel nonstat_squared_exponential(double bump_width, double weight_spread,
                                            int input_dim);

  /// k = 1 - theta/pi with cos(theta) = x'x'' / (||x|| ||x'||). Order-0
  /// arc-cosine kernel (Cho & Saul 2009). Inputs must be nonzero.
  static Kernel arc_cosine_i(int input_dim);

  /// k = ||x|| ||x'|| (sin(theta) + (pi-theta) cos(theta)) / pi. Order-1
  /// arc-cosine kernel. Inputs must be nonzero.
  static Kernel arc_cosine_ii(int input_dim);

  /// Improper limit of SquaredExponential: k = 1 iff x == x', else 0.
  static Kernel white_noise_limit(int input_dim);

  /// Improper limit of NeuralNet: k = (2/pi) asin( x'x'' / (||x|| ||x'||) ).
  static Kernel normalized_arcsine_limit(int input_dim);

  /// Improper limit of the bump kernel: k = exp(-||x-x'||^2 / (4 sg^2)).
  static Kernel half_width_se_limit(double bump_width, int input_dim);

  /// k = tanh(slope * x'x'' + offset). Never positive definite; rejected by
  /// gram()/GP paths unless explicitly allowed for auditing.
  static Kernel sigmoid_tanh(double slope, double offset, int input_dim);

  KernelFamily family() const { return family_; }
  int input_dim() const { return input_dim_; }
  const Eigen::MatrixXd& weight_cov() const { return weight_cov_; }
  double length_scale() const { return length_scale_; }
  double bump_width() const { return bump_width_; }
  double weight_spread() const { return weight_spread_; }
  double slope() const { return slope_; }
  double offset() const { return offset_; }

  /// Depends on the lag x - x' only (isotropic): SquaredExponential,
  /// WhiteNoiseLimit and HalfWidthSELimit.
  bool stationary() const;

  /// False only for SigmoidTanh.
  bool valid_covariance() const { return family_ != KernelFamily::SigmoidTanh; }

  /// Evaluate k(x, x'). Symmetric in its arguments. Throws
  /// std::invalid_argument on dimension mismatch or a zero vector passed to a
  /// normalized family (ArcCosineI/II, NormalizedArcsineLimit).
  double eval(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;

 private:
  Kernel() = default;

  KernelFamily family_ = KernelFamily::SquaredExponential;
  int input_dim_ = 0;
  Eigen::MatrixXd weight_cov_;  // Linear, NeuralNet
  double length_scale_ = 0.0;   // SquaredExponential
  double bump_width_ = 0.0;     // NonStat / HalfWidthSELimit
  double weight_spread_ = 0.0;  // NonStat
  double slope_ = 0.0;          // SigmoidTanh
  double offset_ = 0.0;         // SigmoidTanh
  // cached NonStat constants
  double c1_ = 0.0, c2_ = 0.0, k0_ = 0.0;
};

/// Diagonal-inflation schedule used to stabilize Cholesky factorizations.
/// Scales are relative to the mean diagonal of the matrix at hand: zero
/// jitter is tried first, then initial_scale, growing by `growth` up to
/// max_scale, after which SingularSystemError is thrown.
struct JitterPolicy {
  double initial_scale = 1e-12;
  double growth = 10.0;
  double max_scale = 1e-6;
};

/// Data covariance matrix on a finite point set, with the stabilizing jitter
/// that was actually added to its diagonal (0 when none was needed).
struct GramMatrix {
  Eigen::MatrixXd values;  // n x n, jitter included on the diagonal
  Eigen::MatrixXd points;  // n x d, one row per point
  double jitter = 0.0;
};

/// Raw kernel matrix (k(x_i, x_j)), no jitter, no factorization attempt.
/// Row-parallel; entries are pure evaluations so Serial/Parallel agree
/// bitwise. Set allow_invalid to assemble SigmoidTanh matrices for auditing.
Eigen::MatrixXd gram_values(const Kernel& kernel, const Eigen::MatrixXd& points,
                            Exec exec = Exec::Parallel, bool allow_invalid = false);

/// Assemble the Gram matrix and escalate jitter per `policy` until LLT
/// succeeds. Throws SingularSystemError at the cap.
GramMatrix gram(const Kernel& kernel, const Eigen::MatrixXd& points,
                const JitterPolicy& policy = {}, Exec exec = Exec::Parallel,
                bool allow_invalid = false);

/// (k(x_1,t), ..., k(x_n,t)).
Eigen::VectorXd cross_covariance(const Kernel& kernel, const Eigen::MatrixXd& points,
                                 const Eigen::VectorXd& target);

/// Semivariogram gamma(h) = k(0) - k(h) of a stationary family, h >= 0.
/// Throws std::invalid_argument for non-stationary families.
double variogram(const Kernel& kernel, double lag);

/// Factor `matrix + jitter*I` by LLT, escalating jitter per policy.
/// On success `matrix` holds the jittered matrix. Throws SingularSystemError
/// at the cap.
struct JitteredLlt {
  Eigen::LLT<Eigen::MatrixXd> llt;
  double jitter = 0.0;
};
JitteredLlt jittered_llt(Eigen::MatrixXd& matrix, const JitterPolicy& policy,
                         const std::string& context);

}  // namespace krignet
