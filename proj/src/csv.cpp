#include "krignet/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <system_error>

#include "krignet/errors.hpp"

namespace krignet {

namespace {

std::string line_context(const std::string& path, std::size_t line) {
  return path + ":" + std::to_string(line);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

void finish_write(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw IoError("cannot write " + path);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  // Prefer the shortest representation that round-trips, for readable files.
  for (int prec = 1; prec < 17; ++prec) {
    char shorter[64];
    std::snprintf(shorter, sizeof shorter, "%.*g", prec, v);
    double back = 0.0;
    std::from_chars(shorter, shorter + std::strlen(shorter), back);
    if (back == v || (std::isnan(back) && std::isnan(v))) return shorter;
  }
  return buf;
}

double parse_double(const std::string& token, const std::string& where) {
  const std::string t = trim(token);
  if (t.empty()) throw ParseError(where + ": empty numeric field");
  double value = 0.0;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last)
    throw ParseError(where + ": malformed number '" + t + "'");
  return value;
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  CsvTable table;
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  Eigen::Index width = -1;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    if (stripped[0] == '#') {
      table.comments.push_back(trim(stripped.substr(1)));
      continue;
    }
    const auto fields = split_fields(stripped);
    std::vector<double> row;
    row.reserve(fields.size());
    for (const auto& f : fields)
      row.push_back(parse_double(f, line_context(path, lineno)));
    if (width < 0) {
      width = static_cast<Eigen::Index>(row.size());
    } else if (static_cast<Eigen::Index>(row.size()) != width) {
      throw ParseError(line_context(path, lineno) + ": expected " +
                       std::to_string(width) + " fields, got " +
                       std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
  }
  if (in.bad()) throw IoError("read error on " + path);
  table.data.resize(static_cast<Eigen::Index>(rows.size()), std::max<Eigen::Index>(width, 0));
  for (Eigen::Index i = 0; i < table.data.rows(); ++i)
    for (Eigen::Index j = 0; j < table.data.cols(); ++j)
      table.data(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return table;
}

namespace {

void write_row(std::ofstream& out, const Eigen::VectorXd& row) {
  for (Eigen::Index j = 0; j < row.size(); ++j) {
    if (j) out << ',';
    out << format_double(row(j));
  }
  out << '\n';
}

}  // namespace

void write_points_csv(const std::string& path, const Eigen::MatrixXd& points) {
  auto out = open_out(path);
  for (Eigen::Index i = 0; i < points.rows(); ++i) write_row(out, points.row(i));
  finish_write(out, path);
}

Eigen::MatrixXd read_points_csv(const std::string& path) {
  CsvTable t = read_csv(path);
  if (t.data.rows() == 0) throw ParseError(path + ": no points");
  return t.data;
}

void write_observations_csv(const std::string& path, const Observations& obs) {
  auto out = open_out(path);
  for (Eigen::Index i = 0; i < obs.points.rows(); ++i) {
    Eigen::VectorXd row(obs.points.cols() + 1);
    row.head(obs.points.cols()) = obs.points.row(i);
    row(obs.points.cols()) = obs.values(i);
    write_row(out, row);
  }
  finish_write(out, path);
}

Observations read_observations_csv(const std::string& path) {
  CsvTable t = read_csv(path);
  if (t.data.rows() == 0) throw ParseError(path + ": no observations");
  if (t.data.cols() < 2)
    throw ParseError(path + ": observation rows need at least one coordinate and a value");
  Observations obs;
  obs.points = t.data.leftCols(t.data.cols() - 1);
  obs.values = t.data.rightCols(1);
  return obs;
}

void write_ensemble_csv(const std::string& path, const PathEnsemble& ensemble) {
  ensemble.validate();
  if (ensemble.grid.cols() != 1)
    throw std::invalid_argument("write_ensemble_csv: only 1-D grids serialize");
  auto out = open_out(path);
  out << "# provenance=" << provenance_name(ensemble.provenance)
      << " seed=" << ensemble.seed << '\n';
  write_row(out, ensemble.grid.col(0));
  for (Eigen::Index p = 0; p < ensemble.paths.rows(); ++p)
    write_row(out, ensemble.paths.row(p));
  finish_write(out, path);
}

PathEnsemble read_ensemble_csv(const std::string& path) {
  CsvTable t = read_csv(path);
  PathEnsemble ens;
  bool have_header = false;
  for (const auto& c : t.comments) {
    std::istringstream ss(c);
    std::string tok;
    bool saw_prov = false, saw_seed = false;
    while (ss >> tok) {
      if (tok.rfind("provenance=", 0) == 0) {
        const std::string v = tok.substr(11);
        if (v == "GP")
          ens.provenance = Provenance::GP;
        else if (v == "MLP")
          ens.provenance = Provenance::MLP;
        else
          throw ParseError(path + ": unknown provenance '" + v + "'");
        saw_prov = true;
      } else if (tok.rfind("seed=", 0) == 0) {
        try {
          ens.seed = std::stoull(tok.substr(5));
        } catch (const std::exception&) {
          throw ParseError(path + ": malformed seed in header");
        }
        saw_seed = true;
      }
    }
    if (saw_prov && saw_seed) have_header = true;
  }
  if (!have_header)
    throw ParseError(path + ": missing '# provenance=<GP|MLP> seed=<s>' header");
  if (t.data.rows() < 2)
    throw ParseError(path + ": need a grid row and at least one path row");
  ens.grid = t.data.row(0).transpose();
  ens.paths = t.data.bottomRows(t.data.rows() - 1);
  ens.validate();
  return ens;
}

void write_gram_csv(const std::string& path, const GramMatrix& gram) {
  auto out = open_out(path);
  out << "# n=" << gram.values.rows() << " jitter=" << format_double(gram.jitter) << '\n';
  for (Eigen::Index i = 0; i < gram.values.rows(); ++i) write_row(out, gram.values.row(i));
  finish_write(out, path);
}

void write_predictions_csv(const std::string& path,
                           const std::vector<Prediction>& predictions) {
  auto out = open_out(path);
  for (const auto& p : predictions) {
    Eigen::VectorXd row(p.target.size() + 2);
    row.head(p.target.size()) = p.target;
    row(p.target.size()) = p.mean;
    row(p.target.size() + 1) = p.variance;
    write_row(out, row);
  }
  finish_write(out, path);
}

void write_rank_result_csv(const std::string& path, const RankTestResult& result) {
  auto out = open_out(path);
  out << format_double(result.statistic) << ',' << format_double(result.p_value) << ','
      << result.m1 << ',' << result.m2 << ',' << depth_method_name(result.method) << '\n';
  finish_write(out, path);
}

void write_estimates_csv(const std::string& path, const std::vector<EstimateRow>& rows) {
  auto out = open_out(path);
  for (const auto& r : rows) {
    Eigen::VectorXd coords(r.x.size() + r.y.size());
    coords << r.x, r.y;
    for (Eigen::Index j = 0; j < coords.size(); ++j) out << format_double(coords(j)) << ',';
    out << format_double(r.estimate.value) << ',' << format_double(r.estimate.std_error)
        << ',' << r.estimate.n_mc << ',' << format_double(r.closed_form) << ','
        << format_double(std::abs(r.estimate.value - r.closed_form)) << '\n';
  }
  finish_write(out, path);
}

}  // namespace krignet
