#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include "mfrac/fracderiv.hpp"
#include "mfrac/fracint.hpp"
#include "mfrac/ode.hpp"

namespace mfrac::cli {

namespace {

using nlohmann::json;

constexpr double kBothTolerance = 1e-5;

const char* const kHeatKeys[] = {"L", "k", "alpha", "beta", "f", "n_terms", "t", "x_points", "output"};

double number_at(const json& j, const char* key) {
  if (!j.contains(key)) throw ParameterError(std::string("config key '") + key + "' is missing");
  const json& v = j.at(key);
  if (!v.is_number()) throw ParameterError(std::string("config key '") + key + "' must be a number");
  return v.get<double>();
}

int integer_at(const json& j, const char* key) {
  const json& v = j.at(key);
  if (!v.is_number_integer()) {
    throw ParameterError(std::string("config key '") + key + "' must be an integer");
  }
  return v.get<int>();
}

std::string string_at(const json& j, const char* key) {
  if (!j.contains(key)) throw ParameterError(std::string("config key '") + key + "' is missing");
  const json& v = j.at(key);
  if (!v.is_string()) throw ParameterError(std::string("config key '") + key + "' must be a string");
  return v.get<std::string>();
}

Expr parse_profile(const std::string& text, const char* name) {
  try {
    return parse(text);
  } catch (const ParseError& e) {
    throw ParseError(std::string(name) + ": " + e.what(), e.offset());
  }
}

HeatConfig heat_config_from(const json& j) {
  if (!j.is_object()) throw ParameterError("config must be a JSON object");
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* k : kHeatKeys) known = known || item.key() == k;
    if (!known) throw ParameterError("config key '" + item.key() + "' is not recognised");
  }

  HeatConfig cfg;
  cfg.problem.L = number_at(j, "L");
  cfg.problem.k = number_at(j, "k");
  cfg.problem.beta = number_at(j, "beta");
  cfg.problem.initial_profile = parse_profile(string_at(j, "f"), "config key 'f'");
  if (j.contains("n_terms")) cfg.problem.n_terms = integer_at(j, "n_terms");
  cfg.t = number_at(j, "t");
  if (j.contains("x_points")) cfg.x_points = integer_at(j, "x_points");
  cfg.output = string_at(j, "output");

  if (!j.contains("alpha")) throw ParameterError("config key 'alpha' is missing");
  const json& a = j.at("alpha");
  if (a.is_number()) {
    cfg.alphas = {a.get<double>()};
  } else if (a.is_array()) {
    for (const json& v : a) {
      if (!v.is_number()) throw ParameterError("config key 'alpha' must hold numbers");
      cfg.alphas.push_back(v.get<double>());
    }
  } else {
    throw ParameterError("config key 'alpha' must be a number or a list of numbers");
  }
  validate(cfg);
  return cfg;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error while reading '" + path + "'");
  return ss.str();
}

void write_table(const CsvTable& table, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    table.write(out);
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  table.write(file);
  file.flush();
  if (!file) throw IoError("error while writing '" + path + "'");
}

TruncationIndex parse_index(const std::string& text) {
  try {
    return TruncationIndex::parse(text);
  } catch (const Error&) {
    throw ParameterError("--i must be a positive integer or 'inf', got '" + text + "'");
  }
}

struct FracArgs {
  double alpha = 0.5;
  double beta = 1.0;
  std::string i = "inf";

  FracParams params() const { return {alpha, beta, parse_index(i)}; }
};

void add_frac_options(CLI::App* cmd, FracArgs& a) {
  cmd->add_option("--alpha", a.alpha, "Order alpha")->capture_default_str();
  cmd->add_option("--beta", a.beta, "Mittag-Leffler parameter beta")->capture_default_str();
  cmd->add_option("--i", a.i, "Truncation index (integer or inf)")->capture_default_str();
}

}  // namespace

void validate(const HeatConfig& cfg) {
  const HeatProblem& p = cfg.problem;
  if (!(p.L > 0.0) || !std::isfinite(p.L)) throw ParameterError("L must be positive");
  if (!(p.k > 0.0) || !std::isfinite(p.k)) throw ParameterError("k must be positive");
  if (!(p.beta > 0.0) || !std::isfinite(p.beta)) throw ParameterError("beta must be positive");
  if (p.n_terms < 1) throw ParameterError("n_terms must be at least 1");
  if (cfg.alphas.empty()) throw ParameterError("alpha must list at least one value");
  for (double a : cfg.alphas) {
    if (!(a > 0.0 && a <= 1.0)) throw ParameterError("alpha values must lie in (0, 1], got " + format_shortest(a));
  }
  if (!(cfg.t >= 0.0) || !std::isfinite(cfg.t)) throw ParameterError("t must be non-negative");
  if (cfg.x_points < 2) throw ParameterError("x_points must be at least 2");
}

HeatConfig heat_config_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParameterError(std::string("config is not valid JSON: ") + e.what());
  }
  return heat_config_from(j);
}

CsvTable heat_table(const HeatConfig& cfg) {
  validate(cfg);
  HeatProblem prob = cfg.problem;
  prob.alpha = cfg.alphas.front();
  const std::vector<double> coeffs = fourier_coeffs(prob);

  std::vector<std::string> header{"x"};
  std::vector<HeatSolution> columns;
  for (double a : cfg.alphas) {
    header.push_back("u_alpha_" + format_shortest(a));
    prob.alpha = a;
    columns.push_back(HeatSolution::from_coefficients(prob, coeffs));
  }

  CsvTable table(std::move(header));
  const int n = cfg.x_points;
  for (int j = 0; j < n; ++j) {
    const double x = (j == n - 1) ? prob.L : prob.L * (static_cast<double>(j) / (n - 1));
    std::vector<double> row{x};
    for (const HeatSolution& s : columns) row.push_back(s(x, cfg.t));
    table.add_row(row);
  }
  return table;
}

HeatConfig figure_config(double beta) {
  HeatConfig cfg;
  cfg.problem.L = 1.0;
  cfg.problem.k = 0.003;
  cfg.problem.beta = beta;
  cfg.problem.initial_profile = parse("50*x*(1-x)");
  cfg.problem.n_terms = 51;
  cfg.alphas = {0.2, 0.4, 0.6, 0.8, 1.0};
  cfg.t = 150.0;
  cfg.x_points = 201;
  return cfg;
}

void write_figures(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory '" + dir.string() + "': " + ec.message());
  const std::pair<const char*, double> figures[] = {
      {"figure1.csv", 0.5}, {"figure2.csv", 1.0}, {"figure3.csv", 2.0}};
  std::ostringstream unused;
  for (const auto& [name, beta] : figures) {
    write_table(heat_table(figure_config(beta)), (dir / name).string(), unused);
  }
}

std::vector<CompareRow> compare_families(const Expr& f, double alpha, double t) {
  const RealFn fn = [&f](double s) { return eval(f, s); };
  const DualFn fd = [&f](double s) { return eval_dual(f, s); };
  const double closed = deriv_closed(fd, FracParams{alpha, 1.0, TruncationIndex::infinite()}, t);
  const double eps0 = 1e-2 * std::pow(t, alpha);

  std::vector<DerivFamily> families{Conformable{}};
  for (std::uint64_t i : {1, 2, 5, 10, 20}) families.push_back(Generalized{i});
  families.push_back(Alternative{});
  for (double b : {0.5, 1.0, 2.0}) families.push_back(MFractional{b});

  const double q_alt = deriv_quotient(fn, family_params(Alternative{}, alpha), t, eps0);
  std::vector<CompareRow> rows;
  for (const DerivFamily& fam : families) {
    const FracParams p = family_params(fam, alpha);
    CompareRow r;
    r.family = family_name(fam);
    r.beta = p.beta;
    r.trunc = p.trunc;
    r.value = deriv_limit(fn, p, t).value;
    r.deviation_closed = r.value - closed;
    r.quotient_eps0 = deriv_quotient(fn, p, t, eps0);
    r.quotient_gap_alternative = std::abs(r.quotient_eps0 - q_alt);
    rows.push_back(r);
  }
  return rows;
}

CsvTable compare_table(const std::vector<CompareRow>& rows) {
  CsvTable table({"family", "beta", "i", "value", "deviation_closed", "quotient_eps0",
                  "quotient_gap_alternative"});
  for (const CompareRow& r : rows) {
    table.add_row(std::vector<std::string>{r.family, format_csv(r.beta), r.trunc.to_string(),
                                           format_csv(r.value), format_csv(r.deviation_closed),
                                           format_csv(r.quotient_eps0),
                                           format_csv(r.quotient_gap_alternative)});
  }
  return table;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Truncated M-fractional calculus toolkit"};
  app.name("mfrac");
  app.require_subcommand(1);

  double z = 0.0;
  FracArgs ml_args;
  CLI::App* ml = app.add_subcommand("ml-eval", "Evaluate the truncated Mittag-Leffler function");
  ml->add_option("--z", z, "Argument")->required();
  ml->add_option("--beta", ml_args.beta, "Parameter beta")->capture_default_str();
  ml->add_option("--i", ml_args.i, "Truncation index (integer or inf)")->capture_default_str();

  std::string expr_text;
  double t = 1.0;
  std::string method = "both";
  FracArgs d_args;
  CLI::App* deriv = app.add_subcommand("deriv", "Truncated M-fractional derivative of f at t");
  deriv->add_option("--f", expr_text, "Expression in t")->required();
  add_frac_options(deriv, d_args);
  deriv->add_option("--t", t, "Evaluation point")->required();
  deriv->add_option("--method", method, "closed, limit or both")
      ->check(CLI::IsMember({"closed", "limit", "both"}))
      ->capture_default_str();

  double a = 0.0;
  FracArgs i_args;
  CLI::App* integ = app.add_subcommand("integrate", "M-fractional integral of f over [a, t]");
  integ->add_option("--f", expr_text, "Expression in x")->required();
  integ->add_option("--a", a, "Lower limit")->required();
  integ->add_option("--t", t, "Upper limit")->required();
  add_frac_options(integ, i_args);

  double mu2 = 1.0, c = 1.0, t0 = 0.1, t1 = 1.0;
  int points = 11, steps = 1000;
  std::string sign = "plus";
  std::string output;
  FracArgs o_args;
  CLI::App* ode = app.add_subcommand("ode", "Linear M-fractional ODE D v +/- mu2 v = 0");
  ode->add_option("--mu2", mu2, "Coefficient mu^2 > 0")->capture_default_str();
  ode->add_option("--sign", sign, "plus or minus")->check(CLI::IsMember({"plus", "minus"}))->capture_default_str();
  ode->add_option("--c", c, "Scale of the solution")->capture_default_str();
  ode->add_option("--alpha", o_args.alpha, "Order alpha in (0, 1]")->capture_default_str();
  ode->add_option("--beta", o_args.beta, "Parameter beta")->capture_default_str();
  ode->add_option("--t0", t0, "Start of the sampled range (> 0)")->capture_default_str();
  ode->add_option("--t1", t1, "End of the sampled range")->capture_default_str();
  ode->add_option("--points", points, "Number of output rows")->capture_default_str();
  ode->add_option("--steps", steps, "RK4 steps of the numerical solution")->capture_default_str();
  ode->add_option("--output", output, "CSV path (default stdout)");

  std::string config_path;
  json overrides = json::object();
  double h_L = 0, h_k = 0, h_beta = 0, h_t = 0;
  int h_terms = 0, h_points = 0;
  std::vector<double> h_alpha;
  std::string h_f, h_output;
  CLI::App* heat = app.add_subcommand("heat", "Series solution of the M-fractional heat equation");
  heat->add_option("--config", config_path, "JSON configuration file");
  CLI::Option* o_L = heat->add_option("--L", h_L, "Domain length");
  CLI::Option* o_k = heat->add_option("--k", h_k, "Diffusivity");
  CLI::Option* o_alpha = heat->add_option("--alpha", h_alpha, "Order(s) alpha");
  CLI::Option* o_beta = heat->add_option("--beta", h_beta, "Parameter beta");
  CLI::Option* o_f = heat->add_option("--f", h_f, "Initial profile in x");
  CLI::Option* o_terms = heat->add_option("--n-terms", h_terms, "Number of series terms");
  CLI::Option* o_t = heat->add_option("--t", h_t, "Time");
  CLI::Option* o_points = heat->add_option("--x-points", h_points, "Number of x samples");
  CLI::Option* o_out = heat->add_option("--output", h_output, "CSV path ('-' for stdout)");

  double cmp_alpha = 0.5;
  CLI::App* compare = app.add_subcommand("compare", "Compare the derivative families at one point");
  compare->add_option("--f", expr_text, "Expression in t")->required();
  compare->add_option("--alpha", cmp_alpha, "Order alpha")->capture_default_str();
  compare->add_option("--t", t, "Evaluation point")->capture_default_str();
  compare->add_option("--output", output, "CSV path (default stdout)");

  std::string dir = ".";
  CLI::App* figures = app.add_subcommand("figures", "Write the heat-equation figure data");
  figures->add_option("--dir", dir, "Output directory")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  }

  try {
    if (ml->parsed()) {
      const double v = ml_truncated(z, MLParams{ml_args.beta, parse_index(ml_args.i)});
      out << format_shortest(v) << '\n';
    } else if (deriv->parsed()) {
      const Expr f = parse_profile(expr_text, "--f");
      const FracParams p = d_args.params();
      std::optional<double> closed, limit;
      if (method != "limit") closed = deriv_closed([&](double s) { return eval_dual(f, s); }, p, t);
      if (method != "closed") limit = deriv_limit([&](double s) { return eval(f, s); }, p, t).value;
      if (closed) out << "closed = " << format_shortest(*closed) << '\n';
      if (limit) out << "limit = " << format_shortest(*limit) << '\n';
      if (closed && limit) {
        const double diff = std::abs(*closed - *limit);
        out << "difference = " << format_shortest(diff) << '\n';
        if (diff > kBothTolerance) {
          err << "error: closed form and limit disagree by " << format_shortest(diff) << '\n';
          return kConvergence;
        }
      }
    } else if (integ->parsed()) {
      const Expr f = parse_profile(expr_text, "--f");
      const QuadratureResult r = mfrac_integral([&](double s) { return eval(f, s); }, a, t, i_args.params());
      out << "value = " << format_shortest(r.value) << '\n';
      out << "error_estimate = " << format_shortest(r.abs_error_estimate) << '\n';
    } else if (ode->parsed()) {
      if (points < 2) throw ParameterError("--points must be at least 2");
      LinearOdeProblem prob{mu2, sign == "plus" ? OdeSign::Plus : OdeSign::Minus, c,
                            FracParams{o_args.alpha, o_args.beta, TruncationIndex::infinite()}};
      const OdeSolution closed = solve_linear(prob);
      const double s = prob.sign == OdeSign::Plus ? 1.0 : -1.0;
      const OdeSolution numeric =
          solve_general([&](double, double v) { return -s * mu2 * v; }, t0, closed(t0), t1, prob.p, steps);
      CsvTable table({"t", "v_closed", "v_numeric", "residual"});
      for (int j = 0; j < points; ++j) {
        const double tj = (j == points - 1) ? t1 : t0 + (t1 - t0) * (static_cast<double>(j) / (points - 1));
        table.add_row(std::vector<double>{tj, closed(tj), numeric(tj),
                                          verify_linear(closed, prob, {tj}).max_abs});
      }
      write_table(table, output, out);
    } else if (heat->parsed()) {
      json j = json::object();
      if (!config_path.empty()) {
        try {
          j = json::parse(read_file(config_path));
        } catch (const json::parse_error& e) {
          throw ParameterError("config '" + config_path + "' is not valid JSON: " + e.what());
        }
        if (!j.is_object()) throw ParameterError("config must be a JSON object");
      }
      if (o_L->count()) j["L"] = h_L;
      if (o_k->count()) j["k"] = h_k;
      if (o_alpha->count()) j["alpha"] = h_alpha;
      if (o_beta->count()) j["beta"] = h_beta;
      if (o_f->count()) j["f"] = h_f;
      if (o_terms->count()) j["n_terms"] = h_terms;
      if (o_t->count()) j["t"] = h_t;
      if (o_points->count()) j["x_points"] = h_points;
      if (o_out->count()) j["output"] = h_output;
      const HeatConfig cfg = heat_config_from(j);
      write_table(heat_table(cfg), cfg.output, out);
    } else if (compare->parsed()) {
      const Expr f = parse_profile(expr_text, "--f");
      write_table(compare_table(compare_families(f, cmp_alpha, t)), output, out);
    } else if (figures->parsed()) {
      write_figures(dir);
      out << "wrote figure1.csv, figure2.csv, figure3.csv to " << dir << '\n';
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << '\n';
    return kConvergence;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  }
  return kOk;
}

}  // namespace mfrac::cli
