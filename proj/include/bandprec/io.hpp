#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "bandprec/estimators.hpp"
#include "bandprec/evidence.hpp"
#include "bandprec/experiment.hpp"
#include "bandprec/matrix.hpp"

namespace bandprec {

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

struct CsvOptions {
  bool header = false;  // skip the first line
  bool center = false;  // subtract column means before forming S
};

// Shortest decimal string that round-trips a double (%.17g).
std::string format_full(double v);

const char* norm_name(NormKind kind);
NormKind parse_norm_kind(const std::string& name);
EstimatorKind parse_estimator_kind(const std::string& name);
const char* scenario_kind_name(ScenarioKind kind);
ScenarioKind parse_scenario_kind(const std::string& name);

// Rectangular numeric CSV, rows = observations. Errors name the line.
Matrix read_csv_matrix(const std::string& path, const CsvOptions& options = {});
Matrix parse_csv_matrix(const std::string& text, const CsvOptions& options = {});

// Parse a data CSV and form SampleStats.
SampleStats stats_from_csv(const std::string& path, const CsvOptions& options = {});
SampleStats stats_from_data_options(const Matrix& data, bool center);

// Row-major, comma-separated, no header, full precision.
std::string matrix_to_csv(const Matrix& m);
void write_csv_matrix(const std::string& path, const Matrix& m);

std::string result_table_to_csv(const ResultTable& table);
ResultTable result_table_from_csv(const std::string& text);
std::string result_table_to_json(const ResultTable& table);

// Human summary mirroring the "mean (sd)" table layout.
void print_result_table(std::ostream& os, const ResultTable& table);

std::string band_posterior_to_csv(const BandPosterior& bp);
std::string band_posterior_to_json(const BandPosterior& bp);

std::string draws_to_csv(const std::vector<Matrix>& draws);
std::string draws_to_json(const std::vector<Matrix>& draws);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace bandprec
