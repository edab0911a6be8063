#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "csv.hpp"
#include "mfrac/errors.hpp"
#include "mfrac/expr.hpp"
#include "mfrac/heat.hpp"
#include "mfrac/special.hpp"

namespace mfrac::cli {

enum ExitCode : int { kOk = 0, kValidation = 1, kConvergence = 2, kIo = 3 };

class IoError : public Error {
 public:
  using Error::Error;
};

struct HeatConfig {
  /// L, k, beta, initial profile and n_terms; alpha is taken from alphas.
  HeatProblem problem;
  std::vector<double> alphas;
  double t = 0.0;
  int x_points = 101;
  std::string output;
};

/// Reads a JSON document with keys L, k, alpha (number or list), beta, f,
/// n_terms, t, x_points and output. Errors name the offending key.
HeatConfig heat_config_from_json(std::string_view text);

/// Re-checks every numeric constraint; throws ParameterError naming the key.
void validate(const HeatConfig& cfg);

/// Column x followed by u_alpha_<alpha> for each alpha, on x_points uniform
/// samples of [0, L].
CsvTable heat_table(const HeatConfig& cfg);

/// L = 1, k = 0.003, t = 150, f = 50 x (1 - x), alpha in {0.2, 0.4, 0.6,
/// 0.8, 1.0}, 201 points, 51 terms.
HeatConfig figure_config(double beta);

/// figure1.csv (beta = 0.5), figure2.csv (beta = 1) and figure3.csv (beta = 2).
void write_figures(const std::filesystem::path& dir);

struct CompareRow {
  std::string family;
  double beta = 1.0;
  TruncationIndex trunc = TruncationIndex::infinite();
  /// deriv_limit value.
  double value = 0.0;
  /// value minus the beta = 1 closed form.
  double deviation_closed = 0.0;
  /// Difference quotient at eps0 = 1e-2 t^alpha.
  double quotient_eps0 = 0.0;
  /// |quotient_eps0 - quotient_eps0 of the Alternative row|.
  double quotient_gap_alternative = 0.0;
};

/// Conformable, Generalized(i) for i in {1, 2, 5, 10, 20}, Alternative and
/// MFractional(beta) for beta in {0.5, 1, 2}, in that order.
std::vector<CompareRow> compare_families(const Expr& f, double alpha, double t);

CsvTable compare_table(const std::vector<CompareRow>& rows);

/// Runs the command line given without the program name. Messages go to err,
/// results to out. Returns an ExitCode.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mfrac::cli
