// krignet CLI: prior sampling (GP and wide-MLP), Simple-Kriging prediction,
// Monte-Carlo kernel estimation, depth-based two-sample comparison, and
// positive-definiteness audits. Every stochastic command writes a manifest
// that the `replay` command re-executes byte-identically.

#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "krignet/csv.hpp"
#include "krignet/depth.hpp"
#include "krignet/errors.hpp"
#include "krignet/exec.hpp"
#include "krignet/gp.hpp"
#include "krignet/kernel.hpp"
#include "krignet/manifest.hpp"
#include "krignet/mlp.hpp"
#include "krignet/path_ensemble.hpp"
#include "krignet/pd_audit.hpp"
#include "krignet/svg.hpp"
#include "krignet/version.hpp"

namespace kn = krignet;

namespace {

// ---------------------------------------------------------------------------
// Shared argument bundles

struct KernelArgs {
  std::string family = "se";
  int dim = 1;
  double sigma = 1.0;    // SE length scale
  double sigma_g = 1.0;  // bump width (nonstat, halfwidth)
  double sigma_a = 1.0;  // weight spread (nonstat)
  double slope = 1.0;    // sigmoid
  double offset = 0.0;   // sigmoid
  std::string weight_cov_file;  // linear, nn; identity when empty
};

void add_kernel_options(CLI::App* cmd, KernelArgs& a) {
  cmd->add_option("--kernel", a.family,
                  "kernel family: linear|nn|se|nonstat|acos1|acos2|whitenoise|"
                  "arcsine|halfwidth|sigmoid")
      ->capture_default_str();
  cmd->add_option("--dim", a.dim, "input dimension")->capture_default_str();
  cmd->add_option("--sigma", a.sigma, "SE length scale")->capture_default_str();
  cmd->add_option("--sigma-g", a.sigma_g, "bump width (nonstat/halfwidth)")
      ->capture_default_str();
  cmd->add_option("--sigma-a", a.sigma_a, "weight spread (nonstat)")->capture_default_str();
  cmd->add_option("--slope", a.slope, "sigmoid slope")->capture_default_str();
  cmd->add_option("--offset", a.offset, "sigmoid offset")->capture_default_str();
  cmd->add_option("--weight-cov", a.weight_cov_file,
                  "CSV file with the weight covariance (linear/nn); identity if omitted");
}

void kernel_args_to_manifest(const KernelArgs& a, kn::Manifest& m) {
  m.set("kernel", a.family);
  m.set("dim", std::to_string(a.dim));
  m.set("sigma", kn::format_double(a.sigma));
  m.set("sigma_g", kn::format_double(a.sigma_g));
  m.set("sigma_a", kn::format_double(a.sigma_a));
  m.set("slope", kn::format_double(a.slope));
  m.set("offset", kn::format_double(a.offset));
  if (!a.weight_cov_file.empty()) m.set("weight_cov", a.weight_cov_file);
}

Eigen::MatrixXd load_weight_cov(const std::string& file, int dim) {
  if (file.empty()) return Eigen::MatrixXd::Identity(dim, dim);
  Eigen::MatrixXd m = kn::read_points_csv(file);
  if (m.rows() != m.cols())
    throw std::invalid_argument("weight covariance file must hold a square matrix");
  return m;
}

kn::Kernel kernel_from_manifest(const kn::Manifest& m) {
  const std::string family = m.at("kernel");
  const int dim = std::stoi(m.at("dim"));
  const auto num = [&](const char* key) { return kn::parse_double(m.at(key), key); };
  if (family == "linear")
    return kn::Kernel::linear(load_weight_cov(m.get_or("weight_cov", ""), dim));
  if (family == "nn")
    return kn::Kernel::neural_net(load_weight_cov(m.get_or("weight_cov", ""), dim));
  if (family == "se") return kn::Kernel::squared_exponential(num("sigma"), dim);
  if (family == "nonstat")
    return kn::Kernel::nonstat_squared_exponential(num("sigma_g"), num("sigma_a"), dim);
  if (family == "acos1") return kn::Kernel::arc_cosine_i(dim);
  if (family == "acos2") return kn::Kernel::arc_cosine_ii(dim);
  if (family == "whitenoise") return kn::Kernel::white_noise_limit(dim);
  if (family == "arcsine") return kn::Kernel::normalized_arcsine_limit(dim);
  if (family == "halfwidth") return kn::Kernel::half_width_se_limit(num("sigma_g"), dim);
  if (family == "sigmoid")
    return kn::Kernel::sigmoid_tanh(num("slope"), num("offset"), dim);
  throw std::invalid_argument("unknown kernel family '" + family + "'");
}

struct TransferArgs {
  std::string kind = "cos";
  int dim = 1;
  double sigma = 1.0;    // cos length scale
  double sigma_g = 1.0;  // bump width
  double sigma_a = 1.0;  // bump weight spread
  std::string weight_cov_file;  // linear, erf
};

void add_transfer_options(CLI::App* cmd, TransferArgs& a) {
  cmd->add_option("--transfer", a.kind,
                  "transfer function: linear|erf|cos|bump|heaviside|relu")
      ->capture_default_str();
  cmd->add_option("--dim", a.dim, "input dimension")->capture_default_str();
  cmd->add_option("--sigma", a.sigma, "cos length scale")->capture_default_str();
  cmd->add_option("--sigma-g", a.sigma_g, "bump width")->capture_default_str();
  cmd->add_option("--sigma-a", a.sigma_a, "bump weight spread")->capture_default_str();
  cmd->add_option("--weight-cov", a.weight_cov_file,
                  "CSV file with the weight covariance (linear/erf); identity if omitted");
}

void transfer_args_to_manifest(const TransferArgs& a, kn::Manifest& m) {
  m.set("transfer", a.kind);
  m.set("dim", std::to_string(a.dim));
  m.set("sigma", kn::format_double(a.sigma));
  m.set("sigma_g", kn::format_double(a.sigma_g));
  m.set("sigma_a", kn::format_double(a.sigma_a));
  if (!a.weight_cov_file.empty()) m.set("weight_cov", a.weight_cov_file);
}

kn::TransferFunction transfer_from_manifest(const kn::Manifest& m) {
  const std::string kind = m.at("transfer");
  const int dim = std::stoi(m.at("dim"));
  const auto num = [&](const char* key) { return kn::parse_double(m.at(key), key); };
  if (kind == "linear")
    return kn::TransferFunction::linear(load_weight_cov(m.get_or("weight_cov", ""), dim));
  if (kind == "erf")
    return kn::TransferFunction::erf(load_weight_cov(m.get_or("weight_cov", ""), dim));
  if (kind == "cos") return kn::TransferFunction::cosine_phase(num("sigma"), dim);
  if (kind == "bump")
    return kn::TransferFunction::gaussian_bump(num("sigma_g"), num("sigma_a"), dim);
  if (kind == "heaviside") return kn::TransferFunction::heaviside(dim);
  if (kind == "relu") return kn::TransferFunction::relu(dim);
  throw std::invalid_argument("unknown transfer '" + kind + "'");
}

// ---------------------------------------------------------------------------
// Misc plumbing

Eigen::MatrixXd parse_grid(const std::string& spec) {
  const auto c1 = spec.find(':');
  const auto c2 = spec.find(':', c1 == std::string::npos ? c1 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos)
    throw std::invalid_argument("grid must be lo:hi:count, e.g. -3:3:100");
  const double lo = kn::parse_double(spec.substr(0, c1), "grid lo");
  const double hi = kn::parse_double(spec.substr(c1 + 1, c2 - c1 - 1), "grid hi");
  const double count_raw = kn::parse_double(spec.substr(c2 + 1), "grid count");
  const int count = static_cast<int>(count_raw);
  if (count < 2 || count_raw != count)
    throw std::invalid_argument("grid count must be an integer >= 2");
  if (!(hi > lo)) throw std::invalid_argument("grid needs lo < hi");
  Eigen::MatrixXd g(count, 1);
  for (int i = 0; i < count; ++i)
    g(i, 0) = lo + (hi - lo) * static_cast<double>(i) / (count - 1);
  return g;
}

/// KRIGNET_OUT_DIR redirects where outputs land (directory only); an explicit
/// replay --out-dir wins over the environment.
std::string resolve_out_base(const std::string& out, const std::string& out_dir_override) {
  std::filesystem::path p(out);
  std::string dir = out_dir_override;
  if (dir.empty()) {
    if (const char* env = std::getenv("KRIGNET_OUT_DIR")) dir = env;
  }
  if (dir.empty()) return out;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw kn::IoError("cannot create output directory " + dir);
  return (std::filesystem::path(dir) / p.filename()).string();
}

std::string timestamp_utc() {
  std::time_t now = std::time(nullptr);
  char buf[32];
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

kn::Manifest base_manifest(const std::string& command) {
  kn::Manifest m;
  m.set("command", command);
  m.set("version", kn::kVersion);
  m.set("manifest_format", std::to_string(kn::kManifestFormat));
  m.set("created", timestamp_utc());
  return m;
}

void write_outputs_note(const std::vector<std::string>& files) {
  for (const auto& f : files) std::cout << "wrote " << f << '\n';
}

std::uint64_t seed_from(const kn::Manifest& m) {
  try {
    return std::stoull(m.at("seed"));
  } catch (const std::exception&) {
    throw std::invalid_argument("manifest seed is not an unsigned integer");
  }
}

// ---------------------------------------------------------------------------
// Command execution from a manifest. Fresh CLI invocations build the manifest
// first and run through the same functions, so `replay` cannot diverge.

void execute_sample(const kn::Manifest& m, const std::string& out_dir) {
  const std::string base = resolve_out_base(m.at("out"), out_dir);
  const Eigen::MatrixXd grid = parse_grid(m.at("grid"));
  const int n_paths = std::stoi(m.at("n_paths"));
  const std::uint64_t seed = seed_from(m);
  kn::PathEnsemble ens;
  if (m.at("kind") == "gp") {
    kn::GPModel model(kn::MeanFunction::constant(kn::parse_double(m.at("mean"), "mean")),
                      kernel_from_manifest(m), 0.0);
    ens = kn::sample_prior(model, grid, n_paths, seed);
  } else {
    kn::MLPPriorConfig config{transfer_from_manifest(m), std::stoi(m.at("hidden")),
                              kn::parse_double(m.at("c"), "c"), m.at("bias") == "1"};
    ens = kn::sample_paths(config, grid, n_paths, seed);
  }
  kn::write_ensemble_csv(base + ".csv", ens);
  kn::write_ensemble_svg(base + ".svg", ens);
  kn::write_manifest(base + ".manifest", m);
  write_outputs_note({base + ".csv", base + ".svg", base + ".manifest"});
}

void execute_krige(const kn::Manifest& m, const std::string& out_dir) {
  const std::string base = resolve_out_base(m.at("out"), out_dir);
  const kn::Observations obs = kn::read_observations_csv(m.at("obs"));
  const Eigen::MatrixXd targets = kn::read_points_csv(m.at("targets"));
  kn::GPModel model(kn::MeanFunction::constant(kn::parse_double(m.at("mean"), "mean")),
                    kernel_from_manifest(m), kn::parse_double(m.at("noise"), "noise"));
  const auto preds = kn::predict(model, obs, targets);
  kn::write_predictions_csv(base + ".csv", preds);
  kn::write_manifest(base + ".manifest", m);
  write_outputs_note({base + ".csv", base + ".manifest"});
}

void execute_estimate(const kn::Manifest& m, const std::string& out_dir) {
  const std::string base = resolve_out_base(m.at("out"), out_dir);
  const kn::TransferFunction transfer = transfer_from_manifest(m);
  const Eigen::MatrixXd pairs = kn::read_points_csv(m.at("pairs"));
  const int d = transfer.input_dim();
  if (pairs.cols() != 2 * d)
    throw std::invalid_argument("pairs file must have 2*dim columns (x then x')");
  const long n_mc = std::stol(m.at("n_mc"));
  const std::uint64_t seed = seed_from(m);
  const auto induced = transfer.induced_kernel();
  std::vector<kn::EstimateRow> rows;
  rows.reserve(static_cast<std::size_t>(pairs.rows()));
  for (Eigen::Index i = 0; i < pairs.rows(); ++i) {
    kn::EstimateRow row;
    row.x = pairs.row(i).head(d);
    row.y = pairs.row(i).tail(d);
    // One substream family per row so row order cannot leak between rows.
    row.estimate = kn::mc_kernel(transfer, row.x, row.y, n_mc,
                                 kn::substream_seed(seed, static_cast<std::uint64_t>(i)));
    row.closed_form = induced.scale * induced.kernel.eval(row.x, row.y);
    rows.push_back(std::move(row));
  }
  kn::write_estimates_csv(base + ".csv", rows);
  kn::write_manifest(base + ".manifest", m);
  write_outputs_note({base + ".csv", base + ".manifest"});
}

void execute_compare(const kn::Manifest& m, const std::string& out_dir) {
  const std::string base = resolve_out_base(m.at("out"), out_dir);
  const kn::PathEnsemble a = kn::read_ensemble_csv(m.at("group_a"));
  const kn::PathEnsemble b = kn::read_ensemble_csv(m.at("group_b"));
  const std::string method_name = m.at("method");
  kn::DepthMethod method;
  if (method_name == "bd")
    method = kn::DepthMethod::BandDepth;
  else if (method_name == "mbd")
    method = kn::DepthMethod::ModifiedBandDepth;
  else
    throw std::invalid_argument("method must be bd or mbd");
  const double alpha = kn::parse_double(m.at("alpha"), "alpha");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("alpha must lie strictly between 0 and 1");
  const kn::RankTestResult res = kn::rank_test(a, b, method);
  kn::write_rank_result_csv(base + ".csv", res);
  kn::write_manifest(base + ".manifest", m);
  std::cout << "rank-sum statistic " << kn::format_double(res.statistic) << ", p-value "
            << kn::format_double(res.p_value) << " ("
            << (res.exact ? "exact" : "normal approximation") << ")\n";
  if (res.degenerate) std::cout << "note: degenerate ranking (tied depths), p fixed at 1\n";
  std::cout << "H0 (same population) " << (res.p_value < alpha ? "REJECTED" : "accepted")
            << " at alpha=" << kn::format_double(alpha) << '\n';
  write_outputs_note({base + ".csv", base + ".manifest"});
}

void execute_audit(const kn::Manifest& m, const std::string& out_dir) {
  const kn::Kernel kernel = kernel_from_manifest(m);
  const int n_points = std::stoi(m.at("points"));
  const int n_trials = std::stoi(m.at("trials"));
  const std::uint64_t seed = seed_from(m);
  const kn::PdAuditReport report =
      kn::audit_positive_definite(kernel, n_points, n_trials, seed);
  std::cout << "family " << kn::family_name(kernel.family()) << ": min eigenvalue "
            << kn::format_double(report.min_eigenvalue) << " over " << report.n_trials
            << " trials of " << report.n_points << " points\n";
  std::cout << (report.is_violated ? "NOT a valid covariance (negative eigenvalue witness found)"
                                   : "no violation found (consistent with PSD)")
            << '\n';
  if (m.has("out")) {
    const std::string base = resolve_out_base(m.at("out"), out_dir);
    kn::write_points_csv(base + ".csv", report.witness_points);
    kn::write_manifest(base + ".manifest", m);
    write_outputs_note({base + ".csv", base + ".manifest"});
  }
}

void execute(const kn::Manifest& m, const std::string& out_dir) {
  const std::string& command = m.at("command");
  if (command == "sample")
    execute_sample(m, out_dir);
  else if (command == "krige")
    execute_krige(m, out_dir);
  else if (command == "estimate-kernel")
    execute_estimate(m, out_dir);
  else if (command == "compare")
    execute_compare(m, out_dir);
  else if (command == "audit-pd")
    execute_audit(m, out_dir);
  else
    throw std::invalid_argument("manifest names unknown command '" + command + "'");
}

// ---------------------------------------------------------------------------

int run(int argc, char** argv) {
  CLI::App app{"kernels, Simple Kriging, wide stochastic MLPs, and depth-based "
               "two-sample tests"};
  app.require_subcommand(1);
  app.set_config("--config", "", "read options from an INI config file");
  int threads = 0;
  app.add_option("--threads", threads, "worker threads (0 = all available)")
      ->capture_default_str();

  // sample
  auto* sample = app.add_subcommand("sample", "draw prior sample paths (CSV + SVG)");
  sample->require_subcommand(1);
  struct {
    KernelArgs kernel;
    double mean = 0.0;
    std::string grid = "-3:3:100";
    int n_paths = 10;
    std::uint64_t seed = 0;
    std::string out = "ensemble";
  } sg;
  auto* sample_gp = sample->add_subcommand("gp", "Gaussian-process prior");
  add_kernel_options(sample_gp, sg.kernel);
  sample_gp->add_option("--mean", sg.mean, "constant prior mean")->capture_default_str();
  sample_gp->add_option("--grid", sg.grid, "1-D grid lo:hi:count")->capture_default_str();
  sample_gp->add_option("--n-paths", sg.n_paths, "number of paths")->capture_default_str();
  sample_gp->add_option("--seed", sg.seed, "RNG seed")->required();
  sample_gp->add_option("--out", sg.out, "output base path")->capture_default_str();

  struct {
    TransferArgs transfer;
    int hidden = 20;
    double c = 1.0;
    bool bias = false;
    std::string grid = "-3:3:100";
    int n_paths = 10;
    std::uint64_t seed = 0;
    std::string out = "ensemble";
  } sm;
  auto* sample_mlp = sample->add_subcommand("mlp", "wide stochastic MLP prior");
  add_transfer_options(sample_mlp, sm.transfer);
  sample_mlp->add_option("--hidden", sm.hidden, "hidden units L")->capture_default_str();
  sample_mlp->add_option("--c", sm.c, "total output variance (Var b = c/L)")
      ->capture_default_str();
  sample_mlp->add_flag("--bias", sm.bias, "include the bias term b0");
  sample_mlp->add_option("--grid", sm.grid, "1-D grid lo:hi:count")->capture_default_str();
  sample_mlp->add_option("--n-paths", sm.n_paths, "number of paths")->capture_default_str();
  sample_mlp->add_option("--seed", sm.seed, "RNG seed")->required();
  sample_mlp->add_option("--out", sm.out, "output base path")->capture_default_str();

  // krige
  struct {
    KernelArgs kernel;
    std::string obs, targets;
    double noise = 0.0;
    double mean = 0.0;
    std::string out = "predictions";
  } kr;
  auto* krige = app.add_subcommand("krige", "Simple-Kriging / GPR prediction");
  add_kernel_options(krige, kr.kernel);
  krige->add_option("--obs", kr.obs, "observations CSV (x1..xd,y rows)")->required();
  krige->add_option("--targets", kr.targets, "target points CSV")->required();
  krige->add_option("--noise", kr.noise, "observation noise variance")->capture_default_str();
  krige->add_option("--mean", kr.mean, "constant prior mean")->capture_default_str();
  krige->add_option("--out", kr.out, "output base path")->capture_default_str();

  // estimate-kernel
  struct {
    TransferArgs transfer;
    std::string pairs;
    long n_mc = 1000000;
    std::uint64_t seed = 0;
    std::string out = "estimates";
  } es;
  auto* estimate = app.add_subcommand(
      "estimate-kernel", "Monte-Carlo estimate of E[h(x;a)h(x';a)] vs the closed form");
  add_transfer_options(estimate, es.transfer);
  estimate->add_option("--pairs", es.pairs, "CSV of point pairs (x1..xd,x'1..x'd rows)")
      ->required();
  estimate->add_option("--n-mc", es.n_mc, "Monte-Carlo draws per pair")
      ->capture_default_str();
  estimate->add_option("--seed", es.seed, "RNG seed")->required();
  estimate->add_option("--out", es.out, "output base path")->capture_default_str();

  // compare
  struct {
    std::string group_a, group_b;
    std::string method = "bd";
    double alpha = 0.05;
    std::string out = "comparison";
  } cp;
  auto* compare = app.add_subcommand(
      "compare", "depth-based rank test: do two ensembles share a population?");
  compare->add_option("--group-a", cp.group_a, "first ensemble CSV")->required();
  compare->add_option("--group-b", cp.group_b, "second ensemble CSV")->required();
  compare->add_option("--method", cp.method, "depth: bd (band) or mbd (modified band)")
      ->capture_default_str();
  compare->add_option("--alpha", cp.alpha, "significance level for the verdict line")
      ->capture_default_str();
  compare->add_option("--out", cp.out, "output base path")->capture_default_str();

  // audit-pd
  struct {
    KernelArgs kernel{.family = "sigmoid"};
    int points = 10;
    int trials = 100;
    std::uint64_t seed = 0;
    std::string out;
  } au;
  auto* audit = app.add_subcommand("audit-pd",
                                   "randomized positive-semidefiniteness audit");
  add_kernel_options(audit, au.kernel);
  audit->add_option("--points", au.points, "points per trial")->capture_default_str();
  audit->add_option("--trials", au.trials, "number of trials")->capture_default_str();
  audit->add_option("--seed", au.seed, "RNG seed")->required();
  audit->add_option("--out", au.out, "optional base path for the witness CSV");

  // replay
  struct {
    std::string manifest;
    std::string out_dir;
  } rp;
  auto* replay = app.add_subcommand("replay", "re-run a command from its manifest");
  replay->add_option("--manifest", rp.manifest, "manifest file to replay")->required();
  replay->add_option("--out-dir", rp.out_dir, "redirect outputs to this directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  if (threads < 0) throw std::invalid_argument("--threads must be nonnegative");
  if (threads > 0) kn::set_thread_count(threads);

  if (sample_gp->parsed() || sample_mlp->parsed()) {
    kn::Manifest m = base_manifest("sample");
    if (sample_gp->parsed()) {
      m.set("kind", "gp");
      kernel_args_to_manifest(sg.kernel, m);
      m.set("mean", kn::format_double(sg.mean));
      m.set("grid", sg.grid);
      m.set("n_paths", std::to_string(sg.n_paths));
      m.set("seed", std::to_string(sg.seed));
      m.set("out", sg.out);
    } else {
      m.set("kind", "mlp");
      transfer_args_to_manifest(sm.transfer, m);
      m.set("hidden", std::to_string(sm.hidden));
      m.set("c", kn::format_double(sm.c));
      m.set("bias", sm.bias ? "1" : "0");
      m.set("grid", sm.grid);
      m.set("n_paths", std::to_string(sm.n_paths));
      m.set("seed", std::to_string(sm.seed));
      m.set("out", sm.out);
    }
    execute(m, "");
  } else if (krige->parsed()) {
    kn::Manifest m = base_manifest("krige");
    kernel_args_to_manifest(kr.kernel, m);
    m.set("obs", kr.obs);
    m.set("targets", kr.targets);
    m.set("noise", kn::format_double(kr.noise));
    m.set("mean", kn::format_double(kr.mean));
    m.set("out", kr.out);
    execute(m, "");
  } else if (estimate->parsed()) {
    kn::Manifest m = base_manifest("estimate-kernel");
    transfer_args_to_manifest(es.transfer, m);
    m.set("pairs", es.pairs);
    m.set("n_mc", std::to_string(es.n_mc));
    m.set("seed", std::to_string(es.seed));
    m.set("out", es.out);
    execute(m, "");
  } else if (compare->parsed()) {
    kn::Manifest m = base_manifest("compare");
    m.set("group_a", cp.group_a);
    m.set("group_b", cp.group_b);
    m.set("method", cp.method);
    m.set("alpha", kn::format_double(cp.alpha));
    m.set("out", cp.out);
    execute(m, "");
  } else if (audit->parsed()) {
    kn::Manifest m = base_manifest("audit-pd");
    kernel_args_to_manifest(au.kernel, m);
    m.set("points", std::to_string(au.points));
    m.set("trials", std::to_string(au.trials));
    m.set("seed", std::to_string(au.seed));
    if (!au.out.empty()) m.set("out", au.out);
    execute(m, "");
  } else if (replay->parsed()) {
    kn::Manifest m = kn::read_manifest(rp.manifest);
    m.set("created", timestamp_utc());  // informational; outputs do not carry it
    execute(m, rp.out_dir);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const kn::SingularSystemError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 2;
  } catch (const kn::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return 3;
  } catch (const kn::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
