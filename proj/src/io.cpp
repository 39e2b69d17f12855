#include "bandprec/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace bandprec {

using nlohmann::json;

std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

const char* norm_name(NormKind kind) {
  switch (kind) {
    case NormKind::LInfOp: return "linf-op";
    case NormKind::L2Op: return "l2-op";
    case NormKind::Frobenius: return "frobenius";
    case NormKind::MaxAbs: return "max-abs";
  }
  return "unknown";
}

NormKind parse_norm_kind(const std::string& name) {
  if (name == "linf-op") return NormKind::LInfOp;
  if (name == "l2-op") return NormKind::L2Op;
  if (name == "frobenius") return NormKind::Frobenius;
  if (name == "max-abs") return NormKind::MaxAbs;
  throw ParseError("unknown norm '" + name + "' (expected linf-op, l2-op, frobenius, max-abs)");
}

EstimatorKind parse_estimator_kind(const std::string& name) {
  if (name == "mle") return EstimatorKind::GraphicalMle;
  if (name == "bayes-l2") return EstimatorKind::BayesFrobenius;
  if (name == "bayes-l1") return EstimatorKind::BayesStein;
  if (name == "ref") return EstimatorKind::ReferencePrior;
  if (name == "cholesky") return EstimatorKind::CholeskyBanding;
  throw ParseError("unknown estimator '" + name +
                   "' (expected mle, bayes-l1, bayes-l2, ref, cholesky)");
}

const char* scenario_kind_name(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::Ar1: return "ar1";
    case ScenarioKind::Ar4: return "ar4";
    case ScenarioKind::Fgn: return "fgn";
  }
  return "unknown";
}

ScenarioKind parse_scenario_kind(const std::string& name) {
  if (name == "ar1") return ScenarioKind::Ar1;
  if (name == "ar4") return ScenarioKind::Ar4;
  if (name == "fgn") return ScenarioKind::Fgn;
  throw ParseError("unknown scenario '" + name + "' (expected ar1, ar4, fgn)");
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  for (;;) {
    const size_t pos = line.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& field, size_t line_no) {
  const std::string t = trim(field);
  double v = 0.0;
  const char* begin = t.data();
  const char* end = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end)
    throw ParseError("line " + std::to_string(line_no) + ": '" + field + "' is not a number");
  return v;
}

}  // namespace

Matrix parse_csv_matrix(const std::string& text, const CsvOptions& options) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  size_t line_no = 0;
  bool skipped_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (options.header && !skipped_header) {
      skipped_header = true;
      continue;
    }
    const auto fields = split(t, ',');
    std::vector<double> row;
    row.reserve(fields.size());
    for (const auto& f : fields) row.push_back(parse_double(f, line_no));
    if (!rows.empty() && row.size() != rows.front().size())
      throw ParseError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(rows.front().size()) + " fields, got " +
                       std::to_string(row.size()));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("no numeric rows found");
  Matrix m(Index(rows.size()), Index(rows.front().size()));
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) m(i, j) = rows[size_t(i)][size_t(j)];
  return m;
}

Matrix read_csv_matrix(const std::string& path, const CsvOptions& options) {
  return parse_csv_matrix(read_text_file(path), options);
}

SampleStats stats_from_data_options(const Matrix& data, bool center) {
  if (!center) return SampleStats::from_data(data);
  Matrix centered = data;
  centered.rowwise() -= data.colwise().mean();
  return SampleStats::from_data(centered);
}

SampleStats stats_from_csv(const std::string& path, const CsvOptions& options) {
  return stats_from_data_options(read_csv_matrix(path, options), options.center);
}

std::string matrix_to_csv(const Matrix& m) {
  std::string out;
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out += ',';
      out += format_full(m(i, j));
    }
    out += '\n';
  }
  return out;
}

void write_csv_matrix(const std::string& path, const Matrix& m) {
  write_text_file(path, matrix_to_csv(m));
}

namespace {

std::string sanitize(const std::string& s) {
  std::string out = s;
  for (char& c : out)
    if (c == '\n' || c == '|' || c == '\r') c = ' ';
  return out;
}

std::string join_indices(const std::vector<Index>& v) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

}  // namespace

std::string result_table_to_csv(const ResultTable& table) {
  std::string out;
  out += "# scenario=" + std::string(scenario_kind_name(table.scenario.kind)) + "\n";
  out += "# rho=" + format_full(table.scenario.rho) + "\n";
  out += "# hurst=" + format_full(table.scenario.hurst) + "\n";
  out += "# p=" + std::to_string(table.scenario.p) + "\n";
  out += "# n=" + std::to_string(table.scenario.n) + "\n";
  out += "# replications=" + std::to_string(table.scenario.replications) + "\n";
  out += "# seed=" + std::to_string(table.scenario.seed) + "\n";
  out += "# delta=" + format_full(table.delta) + "\n";
  out += "# k=" + (table.fixed_k ? std::to_string(*table.fixed_k) : std::string("auto")) + "\n";
  out += "# rho_prior=" + table.rho_prior_name + "\n";
  out += "# selected_k=" + join_indices(table.selected_k) + "\n";
  out += "# degenerate_sd=" + std::string(table.degenerate_sd ? "1" : "0") + "\n";
  for (const auto& f : table.failures)
    out += "# failure=" + std::to_string(f.replication) + "|" + sanitize(f.stage) + "|" +
           sanitize(f.message) + "\n";
  out += "estimator,norm,mean,sd,count\n";
  for (size_t i = 0; i < table.estimators.size(); ++i)
    for (size_t j = 0; j < table.norms.size(); ++j) {
      const ResultCell& c = table.cells[i][j];
      out += std::string(estimator_name(table.estimators[i])) + "," +
             norm_name(table.norms[j]) + "," + format_full(c.mean) + "," + format_full(c.sd) +
             "," + std::to_string(c.count) + "\n";
    }
  return out;
}

ResultTable result_table_from_csv(const std::string& text) {
  ResultTable table;
  std::istringstream in(text);
  std::string line;
  size_t line_no = 0;
  bool saw_header = false;
  std::vector<std::pair<std::string, std::string>> row_keys;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t[0] == '#') {
      const std::string body = trim(t.substr(1));
      const size_t eq = body.find('=');
      if (eq == std::string::npos)
        throw ParseError("line " + std::to_string(line_no) + ": metadata without '='");
      const std::string key = body.substr(0, eq);
      const std::string value = body.substr(eq + 1);
      if (key == "scenario") table.scenario.kind = parse_scenario_kind(value);
      else if (key == "rho") table.scenario.rho = parse_double(value, line_no);
      else if (key == "hurst") table.scenario.hurst = parse_double(value, line_no);
      else if (key == "p") table.scenario.p = Index(parse_double(value, line_no));
      else if (key == "n") table.scenario.n = Index(parse_double(value, line_no));
      else if (key == "replications") table.scenario.replications = int(parse_double(value, line_no));
      else if (key == "seed") table.scenario.seed = std::stoull(value);
      else if (key == "delta") table.delta = parse_double(value, line_no);
      else if (key == "k") table.fixed_k = value == "auto" ? std::optional<Index>{} : std::optional<Index>{Index(parse_double(value, line_no))};
      else if (key == "rho_prior") table.rho_prior_name = value;
      else if (key == "degenerate_sd") table.degenerate_sd = value == "1";
      else if (key == "selected_k") {
        if (!value.empty())
          for (const auto& f : split(value, ',')) table.selected_k.push_back(Index(parse_double(f, line_no)));
      } else if (key == "failure") {
        const auto parts = split(value, '|');
        if (parts.size() != 3)
          throw ParseError("line " + std::to_string(line_no) + ": malformed failure record");
        table.failures.push_back({int(parse_double(parts[0], line_no)), parts[1], parts[2]});
      } else {
        throw ParseError("line " + std::to_string(line_no) + ": unknown metadata key '" + key + "'");
      }
      continue;
    }
    if (!saw_header) {
      if (t != "estimator,norm,mean,sd,count")
        throw ParseError("line " + std::to_string(line_no) + ": unexpected column header");
      saw_header = true;
      continue;
    }
    const auto fields = split(t, ',');
    if (fields.size() != 5)
      throw ParseError("line " + std::to_string(line_no) + ": expected 5 fields");
    const EstimatorKind est = parse_estimator_kind(fields[0]);
    const NormKind nk = parse_norm_kind(fields[1]);
    if (table.estimators.empty() || table.estimators.back() != est) table.estimators.push_back(est);
    if (table.estimators.size() == 1) table.norms.push_back(nk);
    ResultCell cell{parse_double(fields[2], line_no), parse_double(fields[3], line_no),
                    int(parse_double(fields[4], line_no))};
    if (table.cells.size() < table.estimators.size()) table.cells.emplace_back();
    table.cells.back().push_back(cell);
  }
  if (!saw_header) throw ParseError("missing column header");
  return table;
}

std::string result_table_to_json(const ResultTable& table) {
  json j;
  j["config"]["scenario"] = scenario_kind_name(table.scenario.kind);
  j["config"]["rho"] = table.scenario.rho;
  j["config"]["hurst"] = table.scenario.hurst;
  j["config"]["p"] = table.scenario.p;
  j["config"]["n"] = table.scenario.n;
  j["config"]["replications"] = table.scenario.replications;
  j["config"]["seed"] = table.scenario.seed;
  j["config"]["delta"] = table.delta;
  if (table.fixed_k) j["config"]["k"] = *table.fixed_k;
  else j["config"]["k"] = "auto";
  j["config"]["rho_prior"] = table.rho_prior_name;
  j["selected_k"] = table.selected_k;
  j["degenerate_sd"] = table.degenerate_sd;
  j["cells"] = json::array();
  for (size_t i = 0; i < table.estimators.size(); ++i)
    for (size_t jn = 0; jn < table.norms.size(); ++jn) {
      const ResultCell& c = table.cells[i][jn];
      j["cells"].push_back({{"estimator", estimator_name(table.estimators[i])},
                            {"norm", norm_name(table.norms[jn])},
                            {"mean", c.mean},
                            {"sd", c.sd},
                            {"count", c.count}});
    }
  j["failures"] = json::array();
  for (const auto& f : table.failures)
    j["failures"].push_back(
        {{"replication", f.replication}, {"stage", f.stage}, {"message", f.message}});
  return j.dump(2) + "\n";
}

void print_result_table(std::ostream& os, const ResultTable& table) {
  os << "scenario " << scenario_kind_name(table.scenario.kind) << ", p=" << table.scenario.p
     << ", n=" << table.scenario.n << ", replications=" << table.scenario.replications
     << ", k=" << (table.fixed_k ? std::to_string(*table.fixed_k) : std::string("auto")) << "\n";
  if (table.degenerate_sd) os << "note: single replication, sd reported as 0\n";
  if (!table.failures.empty()) os << "note: " << table.failures.size() << " failed replication step(s)\n";
  char buf[64];
  os << "norm";
  for (auto e : table.estimators) {
    std::snprintf(buf, sizeof(buf), "  %16s", estimator_name(e));
    os << buf;
  }
  os << "\n";
  for (size_t j = 0; j < table.norms.size(); ++j) {
    std::snprintf(buf, sizeof(buf), "%-9s", norm_name(table.norms[j]));
    os << buf;
    for (size_t i = 0; i < table.estimators.size(); ++i) {
      const ResultCell& c = table.cells[i][j];
      std::snprintf(buf, sizeof(buf), "  %8.3f (%5.3f)", c.mean, c.sd);
      os << buf;
    }
    os << "\n";
  }
}

std::string band_posterior_to_csv(const BandPosterior& bp) {
  std::string out = "# mode=" + std::to_string(bp.mode) + "\n";
  out += "k,log_marginal,log_prior,posterior\n";
  for (size_t i = 0; i < bp.k_values.size(); ++i)
    out += std::to_string(bp.k_values[i]) + "," + format_full(bp.log_marginals[i]) + "," +
           format_full(bp.log_priors[i]) + "," + format_full(bp.posterior[i]) + "\n";
  return out;
}

std::string band_posterior_to_json(const BandPosterior& bp) {
  json j;
  j["mode"] = bp.mode;
  j["k"] = bp.k_values;
  j["log_marginal"] = bp.log_marginals;
  j["log_prior"] = bp.log_priors;
  j["posterior"] = bp.posterior;
  return j.dump(2) + "\n";
}

std::string draws_to_csv(const std::vector<Matrix>& draws) {
  std::string out;
  for (size_t d = 0; d < draws.size(); ++d) {
    out += "# draw " + std::to_string(d + 1) + "\n";
    out += matrix_to_csv(draws[d]);
  }
  return out;
}

std::string draws_to_json(const std::vector<Matrix>& draws) {
  json j = json::array();
  for (const auto& m : draws) {
    json rows = json::array();
    for (Index i = 0; i < m.rows(); ++i) {
      json row = json::array();
      for (Index jj = 0; jj < m.cols(); ++jj) row.push_back(m(i, jj));
      rows.push_back(std::move(row));
    }
    j.push_back(std::move(rows));
  }
  return j.dump() + "\n";
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace bandprec
