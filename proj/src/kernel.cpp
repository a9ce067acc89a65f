#include "krignet/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "krignet/errors.hpp"

namespace krignet {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

Eigen::MatrixXd checked_weight_cov(Eigen::MatrixXd m, const char* who) {
  require(m.rows() > 0 && m.rows() == m.cols(),
          std::string(who) + ": weight covariance must be square and nonempty");
  require(m.isApprox(m.transpose(), 1e-12),
          std::string(who) + ": weight covariance must be symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  double floor = -1e-12 * std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  require(es.eigenvalues().minCoeff() >= floor,
          std::string(who) + ": weight covariance must be positive semidefinite");
  return m;
}

// asin/acos argument clamped against rounding drift just outside [-1, 1].
double clamp_unit(double v) { return std::clamp(v, -1.0, 1.0); }

double nonzero_norm(const Eigen::VectorXd& v, const char* who) {
  double n = v.norm();
  require(n > 0.0, std::string(who) + ": zero input vector has no direction");
  return n;
}

}  // namespace

const char* family_name(KernelFamily f) {
  switch (f) {
    case KernelFamily::Linear: return "linear";
    case KernelFamily::NeuralNet: return "neural_net";
    case KernelFamily::SquaredExponential: return "squared_exponential";
    case KernelFamily::NonStatSquaredExponential: return "nonstat_squared_exponential";
    case KernelFamily::ArcCosineI: return "arc_cosine_i";
    case KernelFamily::ArcCosineII: return "arc_cosine_ii";
    case KernelFamily::WhiteNoiseLimit: return "white_noise_limit";
    case KernelFamily::NormalizedArcsineLimit: return "normalized_arcsine_limit";
    case KernelFamily::HalfWidthSELimit: return "half_width_se_limit";
    case KernelFamily::SigmoidTanh: return "sigmoid_tanh";
  }
  return "unknown";
}

Kernel Kernel::linear(Eigen::MatrixXd weight_cov) {
  Kernel k;
  k.family_ = KernelFamily::Linear;
  k.weight_cov_ = checked_weight_cov(std::move(weight_cov), "linear");
  k.input_dim_ = static_cast<int>(k.weight_cov_.rows());
  return k;
}

Kernel Kernel::neural_net(Eigen::MatrixXd weight_cov) {
  Kernel k;
  k.family_ = KernelFamily::NeuralNet;
  k.weight_cov_ = checked_weight_cov(std::move(weight_cov), "neural_net");
  k.input_dim_ = static_cast<int>(k.weight_cov_.rows());
  return k;
}

Kernel Kernel::squared_exponential(double length_scale, int input_dim) {
  require(length_scale > 0.0, "squared_exponential: length scale must be positive");
  require(input_dim > 0, "squared_exponential: input dimension must be positive");
  Kernel k;
  k.family_ = KernelFamily::SquaredExponential;
  k.length_scale_ = length_scale;
  k.input_dim_ = input_dim;
  return k;
}

Kernel Kernel::nonstat_squared_exponential(double bump_width, double weight_spread,
                                           int input_dim) {
  require(bump_width > 0.0, "nonstat_squared_exponential: bump width must be positive");
  require(weight_spread > 0.0,
          "nonstat_squared_exponential: weight spread must be positive");
  require(input_dim > 0, "nonstat_squared_exponential: input dimension must be positive");
  Kernel k;
  k.family_ = KernelFamily::NonStatSquaredExponential;
  k.bump_width_ = bump_width;
  k.weight_spread_ = weight_spread;
  k.input_dim_ = input_dim;
  double sg2 = bump_width * bump_width;
  double sa2 = weight_spread * weight_spread;
  k.c1_ = 2.0 * sg2 + 4.0 * sa2;
  k.c2_ = 4.0 * sg2 + 2.0 * sg2 * sg2 / sa2;
  k.k0_ = std::pow(1.0 + 2.0 * sa2 / sg2, -0.5 * input_dim);
  return k;
}

Kernel Kernel::arc_cosine_i(int input_dim) {
  require(input_dim > 0, "arc_cosine_i: input dimension must be positive");
  Kernel k;
  k.family_ = KernelFamily::ArcCosineI;
  k.input_dim_ = input_dim;
  return k;
}

Kernel Kernel::arc_cosine_ii(int input_dim) {
  require(input_dim > 0, "arc_cosine_ii: input dimension must be positive");
  Kernel k;
  k.family_ = KernelFamily::ArcCosineII;
  k.input_dim_ = input_dim;
  return k;
}

Kernel Kernel::white_noise_limit(int input_dim) {
  require(input_dim > 0, "white_noise_limit: input dimension must be positive");
  Kernel k;
  k.family_ = KernelFamily::WhiteNoiseLimit;
  k.input_dim_ = input_dim;
  return k;
}

Kernel Kernel::normalized_arcsine_limit(int input_dim) {
  require(input_dim > 0, "normalized_arcsine_limit: input dimension must be positive");
  Kernel k;
  k.family_ = KernelFamily::NormalizedArcsineLimit;
  k.input_dim_ = input_dim;
  return k;
}

Kernel Kernel::half_width_se_limit(double bump_width, int input_dim) {
  require(bump_width > 0.0, "half_width_se_limit: bump width must be positive");
  require(input_dim > 0, "half_width_se_limit: input dimension must be positive");
  Kernel k;
  k.family_ = KernelFamily::HalfWidthSELimit;
  k.bump_width_ = bump_width;
  k.input_dim_ = input_dim;
  return k;
}

Kernel Kernel::sigmoid_tanh(double slope, double offset, int input_dim) {
  require(input_dim > 0, "sigmoid_tanh: input dimension must be positive");
  Kernel k;
  k.family_ = KernelFamily::SigmoidTanh;
  k.slope_ = slope;
  k.offset_ = offset;
  k.input_dim_ = input_dim;
  return k;
}

bool Kernel::stationary() const {
  switch (family_) {
    case KernelFamily::SquaredExponential:
    case KernelFamily::WhiteNoiseLimit:
    case KernelFamily::HalfWidthSELimit:
      return true;
    default:
      return false;
  }
}

double Kernel::eval(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
  require(x.size() == input_dim_ && y.size() == input_dim_,
          std::string(family_name(family_)) + ": input dimension mismatch");
  constexpr double pi = std::numbers::pi;
  switch (family_) {
    case KernelFamily::Linear:
      return x.dot(weight_cov_ * y);
    case KernelFamily::NeuralNet: {
      double xy = x.dot(weight_cov_ * y);
      double xx = x.dot(weight_cov_ * x);
      double yy = y.dot(weight_cov_ * y);
      return (2.0 / pi) *
             std::asin(clamp_unit(2.0 * xy / std::sqrt((1.0 + 2.0 * xx) * (1.0 + 2.0 * yy))));
    }
    case KernelFamily::SquaredExponential: {
      double d2 = (x - y).squaredNorm();
      return std::exp(-d2 / (2.0 * length_scale_ * length_scale_));
    }
    case KernelFamily::NonStatSquaredExponential: {
      // One exp of the summed exponent: the sum commutes under x <-> y, so
      // evaluation is exactly symmetric (three separate exp factors would
      // round differently depending on argument order).
      double d2 = (x - y).squaredNorm();
      return k0_ * std::exp(-(x.squaredNorm() + y.squaredNorm()) / c1_ - d2 / c2_);
    }
    case KernelFamily::ArcCosineI: {
      double nx = nonzero_norm(x, "arc_cosine_i");
      double ny = nonzero_norm(y, "arc_cosine_i");
      double theta = std::acos(clamp_unit(x.dot(y) / (nx * ny)));
      return 1.0 - theta / pi;
    }
    case KernelFamily::ArcCosineII: {
      double nx = nonzero_norm(x, "arc_cosine_ii");
      double ny = nonzero_norm(y, "arc_cosine_ii");
      double theta = std::acos(clamp_unit(x.dot(y) / (nx * ny)));
      return nx * ny / pi * (std::sin(theta) + (pi - theta) * std::cos(theta));
    }
    case KernelFamily::WhiteNoiseLimit:
      return x == y ? 1.0 : 0.0;
    case KernelFamily::NormalizedArcsineLimit: {
      double nx = nonzero_norm(x, "normalized_arcsine_limit");
      double ny = nonzero_norm(y, "normalized_arcsine_limit");
      return (2.0 / pi) * std::asin(clamp_unit(x.dot(y) / (nx * ny)));
    }
    case KernelFamily::HalfWidthSELimit: {
      double d2 = (x - y).squaredNorm();
      return std::exp(-d2 / (4.0 * bump_width_ * bump_width_));
    }
    case KernelFamily::SigmoidTanh:
      return std::tanh(slope_ * x.dot(y) + offset_);
  }
  throw std::invalid_argument("eval: unknown kernel family");
}

Eigen::MatrixXd gram_values(const Kernel& kernel, const Eigen::MatrixXd& points, Exec exec,
                            bool allow_invalid) {
  require(points.cols() == kernel.input_dim(),
          "gram_values: point dimension does not match kernel input dimension");
  require(points.rows() > 0, "gram_values: empty point set");
  if (!kernel.valid_covariance() && !allow_invalid)
    throw std::invalid_argument(
        "gram_values: sigmoid_tanh is not a valid covariance; pass allow_invalid to "
        "assemble it for auditing");
  const Eigen::Index n = points.rows();
  Eigen::MatrixXd out(n, n);
  // Upper triangle only, mirrored afterwards; each entry is a pure function of
  // its two rows, so the parallel and serial schedules produce identical bits.
#pragma omp parallel for schedule(dynamic) if (exec == Exec::Parallel)
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::VectorXd xi = points.row(i);
    for (Eigen::Index j = i; j < n; ++j) {
      out(i, j) = kernel.eval(xi, points.row(j));
    }
  }
  out.triangularView<Eigen::StrictlyLower>() = out.transpose();
  return out;
}

GramMatrix gram(const Kernel& kernel, const Eigen::MatrixXd& points,
                const JitterPolicy& policy, Exec exec, bool allow_invalid) {
  GramMatrix g;
  g.points = points;
  g.values = gram_values(kernel, points, exec, allow_invalid);
  auto fac = jittered_llt(g.values, policy,
                          std::string("gram(") + family_name(kernel.family()) + ")");
  g.jitter = fac.jitter;
  return g;
}

Eigen::VectorXd cross_covariance(const Kernel& kernel, const Eigen::MatrixXd& points,
                                 const Eigen::VectorXd& target) {
  require(points.cols() == kernel.input_dim() && target.size() == kernel.input_dim(),
          "cross_covariance: dimension mismatch");
  Eigen::VectorXd out(points.rows());
  for (Eigen::Index i = 0; i < points.rows(); ++i)
    out(i) = kernel.eval(points.row(i), target);
  return out;
}

double variogram(const Kernel& kernel, double lag) {
  require(kernel.stationary(), "variogram: kernel is not stationary");
  require(lag >= 0.0, "variogram: lag must be nonnegative");
  Eigen::VectorXd zero = Eigen::VectorXd::Zero(kernel.input_dim());
  Eigen::VectorXd shifted = zero;
  shifted(0) = lag;
  return kernel.eval(zero, zero) - kernel.eval(zero, shifted);
}

JitteredLlt jittered_llt(Eigen::MatrixXd& matrix, const JitterPolicy& policy,
                         const std::string& context) {
  const double mean_diag = matrix.diagonal().mean();
  const double unit = mean_diag > 0.0 ? mean_diag : 1.0;
  JitteredLlt out;
  out.llt.compute(matrix);
  if (out.llt.info() == Eigen::Success) return out;
  double prev = 0.0;
  for (double scale = policy.initial_scale; scale <= policy.max_scale * (1.0 + 1e-15);
       scale *= policy.growth) {
    double jitter = scale * unit;
    matrix.diagonal().array() += jitter - prev;
    prev = jitter;
    out.llt.compute(matrix);
    if (out.llt.info() == Eigen::Success) {
      out.jitter = jitter;
      return out;
    }
  }
  throw SingularSystemError(context + ": Cholesky failed at maximum jitter " +
                            std::to_string(policy.max_scale * unit));
}

}  // namespace krignet
