#include "krignet/svg.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "krignet/errors.hpp"

namespace krignet {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 500.0;
constexpr double kMargin = 56.0;

constexpr std::array<const char*, 10> kPalette = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

}  // namespace

void write_ensemble_svg(const std::string& path, const PathEnsemble& ensemble) {
  ensemble.validate();
  if (ensemble.grid.cols() != 1)
    throw std::invalid_argument("write_ensemble_svg: only 1-D grids plot");

  const double x_lo = ensemble.grid.col(0).minCoeff();
  const double x_hi = ensemble.grid.col(0).maxCoeff();
  double y_lo = ensemble.paths.minCoeff();
  double y_hi = ensemble.paths.maxCoeff();
  if (y_hi == y_lo) {  // flat ensemble: open a unit window around it
    y_lo -= 0.5;
    y_hi += 0.5;
  }
  const double x_span = x_hi > x_lo ? x_hi - x_lo : 1.0;
  const double y_span = y_hi - y_lo;
  const auto sx = [&](double x) {
    return kMargin + (x - x_lo) / x_span * (kWidth - 2.0 * kMargin);
  };
  const auto sy = [&](double y) {
    return kHeight - kMargin - (y - y_lo) / y_span * (kHeight - 2.0 * kMargin);
  };

  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
  out << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
  out << "<rect x=\"" << fmt(kMargin) << "\" y=\"" << fmt(kMargin) << "\" width=\""
      << fmt(kWidth - 2 * kMargin) << "\" height=\"" << fmt(kHeight - 2 * kMargin)
      << "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
  out << "<text x=\"" << fmt(kMargin) << "\" y=\"" << fmt(kHeight - kMargin + 18.0)
      << "\" font-family=\"sans-serif\" font-size=\"12\">" << fmt(x_lo) << "</text>\n";
  out << "<text x=\"" << fmt(kWidth - kMargin) << "\" y=\"" << fmt(kHeight - kMargin + 18.0)
      << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\">" << fmt(x_hi)
      << "</text>\n";
  out << "<text x=\"" << fmt(kMargin - 6.0) << "\" y=\"" << fmt(kHeight - kMargin)
      << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\">" << fmt(y_lo)
      << "</text>\n";
  out << "<text x=\"" << fmt(kMargin - 6.0) << "\" y=\"" << fmt(kMargin + 4.0)
      << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\">" << fmt(y_hi)
      << "</text>\n";
  out << "<text x=\"" << fmt(kWidth / 2.0) << "\" y=\"" << fmt(kMargin - 12.0)
      << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">"
      << provenance_name(ensemble.provenance) << " ensemble, " << ensemble.n_paths()
      << " paths, seed " << ensemble.seed << "</text>\n";

  for (Eigen::Index p = 0; p < ensemble.paths.rows(); ++p) {
    out << "<polyline fill=\"none\" stroke=\""
        << kPalette[static_cast<std::size_t>(p % static_cast<Eigen::Index>(kPalette.size()))]
        << "\" stroke-width=\"1\" stroke-opacity=\"0.85\" points=\"";
    for (Eigen::Index t = 0; t < ensemble.grid.rows(); ++t) {
      if (t) out << ' ';
      out << fmt(sx(ensemble.grid(t, 0))) << ',' << fmt(sy(ensemble.paths(p, t)));
    }
    out << "\"/>\n";
  }
  out << "</svg>\n";
  out.flush();
  if (!out) throw IoError("cannot write " + path);
}

}  // namespace krignet
