#include "krignet/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "krignet/numerics.hpp"

namespace krignet {

namespace {

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

Eigen::MatrixXd symmetric_sqrt(const Eigen::MatrixXd& m, const char* who) {
  require(m.rows() > 0 && m.rows() == m.cols(),
          "transfer: weight covariance must be square and nonempty");
  if (!m.isApprox(m.transpose(), 1e-12))
    throw std::invalid_argument(std::string(who) + ": weight covariance must be symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  const double floor = -1e-12 * std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  if (es.eigenvalues().minCoeff() < floor)
    throw std::invalid_argument(std::string(who) +
                                ": weight covariance must be positive semidefinite");
  Eigen::VectorXd roots = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * roots.asDiagonal() * es.eigenvectors().transpose();
}

constexpr int kMcBlock = 4096;

}  // namespace

const char* transfer_name(TransferKind k) {
  switch (k) {
    case TransferKind::Linear: return "linear";
    case TransferKind::Erf: return "erf";
    case TransferKind::CosinePhase: return "cos";
    case TransferKind::GaussianBump: return "bump";
    case TransferKind::Heaviside: return "heaviside";
    case TransferKind::ReLU: return "relu";
  }
  return "unknown";
}

TransferFunction TransferFunction::linear(Eigen::MatrixXd weight_cov) {
  TransferFunction t;
  t.kind_ = TransferKind::Linear;
  t.weight_factor_ = symmetric_sqrt(weight_cov, "linear");
  t.weight_cov_ = std::move(weight_cov);
  t.input_dim_ = static_cast<int>(t.weight_cov_.rows());
  return t;
}

TransferFunction TransferFunction::erf(Eigen::MatrixXd weight_cov) {
  TransferFunction t;
  t.kind_ = TransferKind::Erf;
  t.weight_factor_ = symmetric_sqrt(weight_cov, "erf");
  t.weight_cov_ = std::move(weight_cov);
  t.input_dim_ = static_cast<int>(t.weight_cov_.rows());
  return t;
}

TransferFunction TransferFunction::cosine_phase(double length_scale, int input_dim) {
  require(length_scale > 0.0, "cosine_phase: length scale must be positive");
  require(input_dim > 0, "cosine_phase: input dimension must be positive");
  TransferFunction t;
  t.kind_ = TransferKind::CosinePhase;
  t.length_scale_ = length_scale;
  t.weight_scale_ = 1.0 / length_scale;
  t.input_dim_ = input_dim;
  return t;
}

TransferFunction TransferFunction::gaussian_bump(double bump_width, double weight_spread,
                                                 int input_dim) {
  require(bump_width > 0.0, "gaussian_bump: bump width must be positive");
  require(weight_spread > 0.0, "gaussian_bump: weight spread must be positive");
  require(input_dim > 0, "gaussian_bump: input dimension must be positive");
  TransferFunction t;
  t.kind_ = TransferKind::GaussianBump;
  t.bump_width_ = bump_width;
  t.weight_spread_ = weight_spread;
  t.weight_scale_ = weight_spread;
  t.input_dim_ = input_dim;
  return t;
}

TransferFunction TransferFunction::heaviside(int input_dim) {
  require(input_dim > 0, "heaviside: input dimension must be positive");
  TransferFunction t;
  t.kind_ = TransferKind::Heaviside;
  t.input_dim_ = input_dim;
  return t;
}

TransferFunction TransferFunction::relu(int input_dim) {
  require(input_dim > 0, "relu: input dimension must be positive");
  TransferFunction t;
  t.kind_ = TransferKind::ReLU;
  t.input_dim_ = input_dim;
  return t;
}

Eigen::VectorXd TransferFunction::draw_weights(SubstreamRng& rng) const {
  Eigen::VectorXd z = rng.normals(input_dim_);
  if (weight_factor_.size() > 0) return weight_factor_ * z;
  if (weight_scale_ != 1.0) z *= weight_scale_;
  return z;
}

double TransferFunction::draw_phase(SubstreamRng& rng) const {
  if (!has_phase()) return 0.0;
  return rng.uniform(0.0, 2.0 * std::numbers::pi);
}

double TransferFunction::eval(const Eigen::VectorXd& a, double phase,
                              const Eigen::VectorXd& x) const {
  switch (kind_) {
    case TransferKind::Linear:
      return a.dot(x);
    case TransferKind::Erf:
      return std::erf(a.dot(x));
    case TransferKind::CosinePhase:
      return std::numbers::sqrt2 * std::cos(a.dot(x) + phase);
    case TransferKind::GaussianBump:
      return std::exp(-(x - a).squaredNorm() / (2.0 * bump_width_ * bump_width_));
    case TransferKind::Heaviside:
      return a.dot(x) >= 0.0 ? 1.0 : 0.0;
    case TransferKind::ReLU:
      return std::max(0.0, a.dot(x));
  }
  throw std::invalid_argument("transfer eval: unknown kind");
}

TransferFunction::InducedKernel TransferFunction::induced_kernel() const {
  switch (kind_) {
    case TransferKind::Linear:
      return {Kernel::linear(weight_cov_), 1.0};
    case TransferKind::Erf:
      return {Kernel::neural_net(weight_cov_), 1.0};
    case TransferKind::CosinePhase:
      return {Kernel::squared_exponential(length_scale_, input_dim_), 1.0};
    case TransferKind::GaussianBump:
      return {Kernel::nonstat_squared_exponential(bump_width_, weight_spread_, input_dim_),
              1.0};
    case TransferKind::Heaviside:
      return {Kernel::arc_cosine_i(input_dim_), 0.5};
    case TransferKind::ReLU:
      return {Kernel::arc_cosine_ii(input_dim_), 0.5};
  }
  throw std::invalid_argument("induced_kernel: unknown kind");
}

void MLPPriorConfig::validate() const {
  if (hidden_units < 1)
    throw std::invalid_argument("MLPPriorConfig: hidden_units must be >= 1");
  if (!(total_output_variance > 0.0))
    throw std::invalid_argument("MLPPriorConfig: total_output_variance must be positive");
}

double RealizedNetwork::eval(const Eigen::VectorXd& x) const {
  double y = bias;
  for (Eigen::Index j = 0; j < output_weights.size(); ++j)
    y += output_weights(j) * transfer.eval(hidden_weights.row(j), phases(j), x);
  return y;
}

Eigen::VectorXd RealizedNetwork::eval_on_grid(const Eigen::MatrixXd& grid) const {
  if (grid.cols() != transfer.input_dim())
    throw std::invalid_argument("eval_on_grid: grid dimension mismatch");
  const Eigen::Index g = grid.rows();
  const Eigen::Index L = hidden_weights.rows();
  Eigen::MatrixXd h;
  if (transfer.kind() == TransferKind::GaussianBump) {
    // h_ij = exp(-||x_i - a_j||^2 / 2 sg^2) via the squared-distance expansion.
    const double denom = 2.0 * transfer.bump_width() * transfer.bump_width();
    const Eigen::VectorXd g2 = grid.rowwise().squaredNorm();
    const Eigen::VectorXd a2 = hidden_weights.rowwise().squaredNorm();
    Eigen::MatrixXd d2 = g2.replicate(1, L) + a2.transpose().replicate(g, 1) -
                         2.0 * grid * hidden_weights.transpose();
    h = (d2.array() / -denom).exp().matrix();
  } else {
    h = grid * hidden_weights.transpose();  // g x L preactivations
    switch (transfer.kind()) {
      case TransferKind::Linear:
        break;
      case TransferKind::Erf:
        h = h.unaryExpr([](double v) { return std::erf(v); });
        break;
      case TransferKind::CosinePhase:
        h = (std::numbers::sqrt2 *
             (h.rowwise() + phases.transpose()).array().cos())
                .matrix();
        break;
      case TransferKind::Heaviside:
        h = (h.array() >= 0.0).cast<double>().matrix();
        break;
      case TransferKind::ReLU:
        h = h.cwiseMax(0.0);
        break;
      case TransferKind::GaussianBump:
        break;  // handled above
    }
  }
  Eigen::VectorXd out = h * output_weights;
  out.array() += bias;
  return out;
}

namespace {

RealizedNetwork sample_network_stream(const MLPPriorConfig& config, SubstreamRng& rng) {
  const int L = config.hidden_units;
  const int d = config.transfer.input_dim();
  RealizedNetwork net{config.transfer,
                      Eigen::MatrixXd(L, d),
                      Eigen::VectorXd::Zero(L),
                      Eigen::VectorXd(L),
                      0.0,
                      config.bias_included};
  for (int j = 0; j < L; ++j) {
    net.hidden_weights.row(j) = config.transfer.draw_weights(rng).transpose();
    net.phases(j) = config.transfer.draw_phase(rng);
  }
  const double sigma_b = std::sqrt(config.total_output_variance / L);
  if (config.bias_included) net.bias = sigma_b * rng.normal();
  for (int j = 0; j < L; ++j) net.output_weights(j) = sigma_b * rng.normal();
  return net;
}

}  // namespace

RealizedNetwork sample_network(const MLPPriorConfig& config, std::uint64_t seed) {
  config.validate();
  SubstreamRng rng(seed, 0);
  return sample_network_stream(config, rng);
}

PathEnsemble sample_paths(const MLPPriorConfig& config, const Eigen::MatrixXd& grid,
                          int n_paths, std::uint64_t seed, Exec exec) {
  config.validate();
  if (n_paths < 1) throw std::invalid_argument("sample_paths: n_paths must be >= 1");
  if (grid.rows() == 0) throw std::invalid_argument("sample_paths: empty grid");
  if (grid.cols() != config.transfer.input_dim())
    throw std::invalid_argument("sample_paths: grid dimension mismatch");

  PathEnsemble ens;
  ens.grid = grid;
  ens.paths.resize(n_paths, grid.rows());
  ens.provenance = Provenance::MLP;
  ens.seed = seed;
#pragma omp parallel for schedule(dynamic) if (exec == Exec::Parallel)
  for (int p = 0; p < n_paths; ++p) {
    SubstreamRng rng(seed, static_cast<std::uint64_t>(p));
    const RealizedNetwork net = sample_network_stream(config, rng);
    ens.paths.row(p) = net.eval_on_grid(grid).transpose();
  }
  ens.validate();
  return ens;
}

KernelEstimate mc_kernel(const TransferFunction& transfer, const Eigen::VectorXd& x,
                         const Eigen::VectorXd& y, long n_mc, std::uint64_t seed, Exec exec) {
  if (n_mc < 100) throw std::invalid_argument("mc_kernel: n_mc must be >= 100");
  if (x.size() != transfer.input_dim() || y.size() != transfer.input_dim())
    throw std::invalid_argument("mc_kernel: point dimension mismatch");

  std::vector<double> products(static_cast<std::size_t>(n_mc));
  const long n_blocks = (n_mc + kMcBlock - 1) / kMcBlock;
#pragma omp parallel for schedule(dynamic) if (exec == Exec::Parallel)
  for (long b = 0; b < n_blocks; ++b) {
    SubstreamRng rng(seed, static_cast<std::uint64_t>(b));
    const long lo = b * kMcBlock;
    const long hi = std::min(n_mc, lo + kMcBlock);
    for (long i = lo; i < hi; ++i) {
      const Eigen::VectorXd a = transfer.draw_weights(rng);
      const double phase = transfer.draw_phase(rng);
      products[static_cast<std::size_t>(i)] =
          transfer.eval(a, phase, x) * transfer.eval(a, phase, y);
    }
  }

  const MeanVar mv = pairwise_mean_variance(products);
  KernelEstimate est;
  est.value = mv.mean;
  est.std_error = std::sqrt(mv.variance / static_cast<double>(n_mc));
  est.n_mc = n_mc;
  return est;
}

}  // namespace krignet
