// Timing harness for the serial/parallel pairs: each hot operation runs in
// both execution modes, the wall times are printed side by side, and the
// results are checked for bitwise equality (the determinism contract the
// tests also enforce). Not a ctest target — run `krignet_bench` manually.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "krignet/depth.hpp"
#include "krignet/exec.hpp"
#include "krignet/gp.hpp"
#include "krignet/kernel.hpp"
#include "krignet/mlp.hpp"
#include "krignet/rng.hpp"

using namespace krignet;

namespace {

double time_seconds(const std::function<void()>& fn) {
  const auto start = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void report(const std::string& name, double serial, double parallel, bool identical) {
  std::printf("%-28s serial %8.3fs   parallel %8.3fs   speedup %5.2fx   %s\n",
              name.c_str(), serial, parallel, parallel > 0 ? serial / parallel : 0.0,
              identical ? "bitwise-identical" : "MISMATCH");
}

Eigen::MatrixXd random_points(int n, int d, std::uint64_t seed) {
  SubstreamRng rng(seed, 0);
  Eigen::MatrixXd pts(n, d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j) pts(i, j) = rng.uniform(-3.0, 3.0);
  return pts;
}

}  // namespace

int main() {
  std::printf("krignet benchmark: serial reference vs OpenMP loops (%d threads)\n\n",
              max_threads());

  {
    const Kernel kernel = Kernel::neural_net(Eigen::MatrixXd::Identity(4, 4));
    const Eigen::MatrixXd pts = random_points(1500, 4, 1);
    Eigen::MatrixXd gs, gp;
    const double ts = time_seconds([&] { gs = gram_values(kernel, pts, Exec::Serial); });
    const double tp = time_seconds([&] { gp = gram_values(kernel, pts, Exec::Parallel); });
    report("gram 1500x1500 (nn)", ts, tp, (gs.array() == gp.array()).all());
  }

  {
    const GPModel model(MeanFunction::zero(), Kernel::squared_exponential(1.0, 1), 0.0);
    Eigen::MatrixXd grid(200, 1);
    for (int i = 0; i < 200; ++i) grid(i, 0) = -3.0 + 6.0 * i / 199.0;
    PathEnsemble es, ep;
    const double ts =
        time_seconds([&] { es = sample_prior(model, grid, 2000, 7, JitterPolicy{}, Exec::Serial); });
    const double tp =
        time_seconds([&] { ep = sample_prior(model, grid, 2000, 7, JitterPolicy{}, Exec::Parallel); });
    report("gp 2000 paths x 200 pts", ts, tp, (es.paths.array() == ep.paths.array()).all());
  }

  {
    const MLPPriorConfig cfg{TransferFunction::cosine_phase(1.0, 1), 500, 1.0, false};
    Eigen::MatrixXd grid(100, 1);
    for (int i = 0; i < 100; ++i) grid(i, 0) = -3.0 + 6.0 * i / 99.0;
    PathEnsemble es, ep;
    const double ts =
        time_seconds([&] { es = sample_paths(cfg, grid, 1000, 7, Exec::Serial); });
    const double tp =
        time_seconds([&] { ep = sample_paths(cfg, grid, 1000, 7, Exec::Parallel); });
    report("mlp 1000 paths (L=500)", ts, tp, (es.paths.array() == ep.paths.array()).all());
  }

  {
    const Eigen::MatrixXd curves = random_points(300, 60, 9);
    Eigen::VectorXd ds, dp;
    const double ts = time_seconds([&] { ds = band_depths(curves, Exec::Serial); });
    const double tp = time_seconds([&] { dp = band_depths(curves, Exec::Parallel); });
    report("band depth 300 curves", ts, tp, (ds.array() == dp.array()).all());
  }

  {
    const Eigen::MatrixXd curves = random_points(300, 60, 9);
    Eigen::VectorXd ds, dp;
    const double ts = time_seconds([&] { ds = modified_band_depths(curves, Exec::Serial); });
    const double tp = time_seconds([&] { dp = modified_band_depths(curves, Exec::Parallel); });
    report("modified band depth 300", ts, tp, (ds.array() == dp.array()).all());
  }

  {
    const auto transfer = TransferFunction::cosine_phase(1.0, 2);
    Eigen::VectorXd x(2), y(2);
    x << 0.3, -1.0;
    y << 1.2, 0.4;
    KernelEstimate es, ep;
    const double ts =
        time_seconds([&] { es = mc_kernel(transfer, x, y, 4000000, 3, Exec::Serial); });
    const double tp =
        time_seconds([&] { ep = mc_kernel(transfer, x, y, 4000000, 3, Exec::Parallel); });
    report("mc kernel 4e6 draws", ts, tp,
           es.value == ep.value && es.std_error == ep.std_error);
  }

  return 0;
}
