#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "krignet/depth.hpp"
#include "krignet/gp.hpp"
#include "krignet/kernel.hpp"
#include "krignet/mlp.hpp"
#include "krignet/path_ensemble.hpp"

namespace krignet {

/// Shortest round-trip decimal form of v (%.17g trimmed by the C library),
/// C locale, never locale-dependent.
std::string format_double(double v);

/// Strict double parse of a full token (std::from_chars); no locale, no
/// partial consumption. Throws ParseError with `where` on failure.
double parse_double(const std::string& token, const std::string& where);

/// Numeric CSV payload with '#' comment lines. All data rows must have the
/// same column count. Throws ParseError (with file:line context) on malformed
/// input, IoError when the file cannot be read.
struct CsvTable {
  std::vector<std::string> comments;  // '#' lines in order, prefix stripped
  Eigen::MatrixXd data;
};
CsvTable read_csv(const std::string& path);

/// One row per point: x1,...,xd.
void write_points_csv(const std::string& path, const Eigen::MatrixXd& points);
Eigen::MatrixXd read_points_csv(const std::string& path);

/// One row per observation: x1,...,xd,y.
void write_observations_csv(const std::string& path, const Observations& obs);
Observations read_observations_csv(const std::string& path);

/// Header comment `# provenance=<GP|MLP> seed=<s>`, then the grid
/// coordinates as the first data row, then one path per row. 1-D grids only.
void write_ensemble_csv(const std::string& path, const PathEnsemble& ensemble);
PathEnsemble read_ensemble_csv(const std::string& path);

/// Header comment `# n=<n> jitter=<j>`, then dense matrix rows.
void write_gram_csv(const std::string& path, const GramMatrix& gram);

/// One row per target: x1,...,xd,mean,variance.
void write_predictions_csv(const std::string& path,
                           const std::vector<Prediction>& predictions);

/// Single row: statistic,p_value,m1,m2,method.
void write_rank_result_csv(const std::string& path, const RankTestResult& result);

/// One row per pair: x1..xd,y1..yd,value,std_error,n_mc,closed_form,abs_err
/// where closed_form is the expectation the estimate targets (the Table-like
/// closed form times the transfer's proportionality scale).
struct EstimateRow {
  Eigen::VectorXd x;
  Eigen::VectorXd y;
  KernelEstimate estimate;
  double closed_form = 0.0;
};
void write_estimates_csv(const std::string& path, const std::vector<EstimateRow>& rows);

}  // namespace krignet
