#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <nlohmann/json.hpp>

#include "bohrwig/graph.hpp"
#include "bohrwig/json_io.hpp"
#include "bohrwig/verify.hpp"
#include "bohrwig/weylquant.hpp"
#include "bohrwig/wigner.hpp"

namespace bohrwig::cli {

namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError(fmt::format("cannot open '{}'", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void check_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) throw UsageError(fmt::format("{} must be positive, got {}", name, v));
}

void validate(const RunConfig& cfg) {
  check_positive(cfg.tol.freq, "eps_freq");
  check_positive(cfg.tol.coeff, "eps_coeff");
  check_positive(cfg.quadrature_agreement, "quadrature_agreement");
  check_positive(cfg.scheme.area_constant, "area_constant");
  if (cfg.K) check_positive(*cfg.K, "K");
}

// --- symbols by name ------------------------------------------------------------

struct NamedSymbol {
  Symbol symbol;
  bool needs_real;
};

NamedSymbol parse_symbol(const std::string& name, FrequencyKind kind, const RunConfig& cfg) {
  auto colon = name.find(':');
  std::string head = name.substr(0, colon);
  std::string arg = colon == std::string::npos ? "" : name.substr(colon + 1);
  auto need_arg = [&] {
    if (arg.empty()) throw UsageError(fmt::format("symbol '{}' needs a parameter, e.g. {}:1", head, head));
  };
  auto number = [&] {
    need_arg();
    try {
      std::size_t used = 0;
      double v = std::stod(arg, &used);
      if (used != arg.size()) throw std::invalid_argument(arg);
      return v;
    } catch (const std::exception&) {
      throw UsageError(fmt::format("bad parameter '{}' for symbol '{}'", arg, head));
    }
  };
  auto label = [&] {
    need_arg();
    try {
      return Frequency::parse(arg, kind);
    } catch (const std::exception&) {
      throw UsageError(fmt::format("bad frequency '{}' for symbol '{}'", arg, head));
    }
  };
  if (head == "sigma1") return {symbols::character(label(), cfg.tol), false};
  if (head == "sigma2" && arg.empty()) return {symbols::momentum(kind, cfg.tol), false};
  if (head == "sigma3") return {symbols::momentum_character(label(), cfg.tol), false};
  if (head == "e" && arg.empty()) return {symbols::holonomy(cfg.scheme, cfg.tol), true};
  if (head == "e_aps") {
    double K = number();
    check_positive(K, "K");
    return {symbols::aps(K, cfg.tol), true};
  }
  if (head == "e_reg") {
    double eps = number();
    check_positive(eps, "eps");
    return {symbols::holonomy_regularized(Regularization::constant_cap(cfg.scheme, eps), cfg.tol), true};
  }
  throw UsageError(fmt::format(
      "unknown symbol '{}' (expected sigma1:MU0, sigma2, sigma3:MU0, e, e_aps:K, e_reg:EPS)", name));
}

bool names_real_symbol(const std::string& name) {
  return name == "e" || name.rfind("e_aps:", 0) == 0 || name.rfind("e_reg:", 0) == 0;
}

Frequency label_of_kind(double x, FrequencyKind kind) {
  if (kind == FrequencyKind::real) return Frequency::real(x);
  return Frequency::parse(fmt::format("{}", x), FrequencyKind::rational);
}

// --- subcommands --------------------------------------------------------------

int cmd_figures(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.K) throw UsageError("figures needs K (--K or \"K\" in the config file)");
  GraphOptions opts;
  opts.scheme = cfg.scheme;
  opts.K = cfg.K;
  opts.beta_lo = cfg.beta_lo;
  opts.beta_hi = cfg.beta_hi;
  opts.samples = cfg.samples;

  namespace fs = std::filesystem;
  fs::create_directories(cfg.output_dir);
  auto emit = [&](const std::string& file, const std::vector<GraphPoint>& points) {
    fs::path path = fs::path(cfg.output_dir) / file;
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
    write_graph_csv(os, points, cfg.seed);
    fmt::print(out, "{} ({} rows)\n", path.string(), points.size());
  };

  auto e = graph_export(GraphOperator::e, opts);
  auto aps = graph_export(GraphOperator::e_aps, opts);
  auto h = graph_export(GraphOperator::h_mu0, opts);
  std::vector<GraphPoint> all = e;
  all.insert(all.end(), aps.begin(), aps.end());
  all.insert(all.end(), h.begin(), h.end());
  emit("e_graph.csv", e);
  emit("e_aps_graph.csv", aps);
  emit("h_mu0_graph.csv", h);
  emit("comparison.csv", all);
  emit("e_branches.csv", e_branches(opts));
  emit("e_curve.csv", e_curve(opts));

  fs::path script = fs::path(cfg.output_dir) / "figures.gp";
  std::ofstream gp(script, std::ios::binary);
  fmt::print(gp,
             "# seed={}\n"
             "set datafile separator ','\n"
             "set terminal pngcairo size 900,900\n"
             "set xlabel 'beta'\n"
             "set ylabel 'alpha'\n"
             "set size square\n"
             "set output 'e_graph.png'\n"
             "plot 'e_curve.csv' using 3:2 with lines title 'e', \\\n"
             "     'e_graph.csv' using 3:2 with points pt 7 ps 0.3 title 'S(beta)'\n"
             "set output 'e_aps_graph.png'\n"
             "plot 'e_aps_graph.csv' using 3:2 with lines title 'e_APS'\n"
             "set output 'h_mu0_graph.png'\n"
             "plot 'h_mu0_graph.csv' using 3:2 with lines title 'h_mu0'\n"
             "set output 'comparison.png'\n"
             "plot 'comparison.csv' using 3:(strcol(1) eq 'e' ? $2 : NaN) with points pt 7 ps 0.3 title 'e', \\\n"
             "     'comparison.csv' using 3:(strcol(1) eq 'e_aps' ? $2 : NaN) with lines title 'e_APS', \\\n"
             "     'comparison.csv' using 3:(strcol(1) eq 'h_mu0' ? $2 : NaN) with lines title 'h_mu0'\n"
             "set output 'e_branches.png'\n"
             "plot 'e_branches.csv' using 3:(strcol(4) eq 'solid' ? $2 : NaN) with points pt 7 ps 0.3 title 'solid', \\\n"
             "     'e_branches.csv' using 3:(strcol(4) eq 'dashed' ? $2 : NaN) with points pt 6 ps 0.3 title 'dashed'\n",
             cfg.seed);
  fmt::print(out, "{}\n", script.string());
  return ok;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  VerifyConfig vc;
  vc.seed = cfg.seed;
  vc.tol = cfg.tol;
  vc.scheme = cfg.scheme;
  vc.K = cfg.K;
  vc.quadrature_agreement = cfg.quadrature_agreement;
  json reports = json::array();
  bool failed = false;
  for (const auto& r : verify_all(vc)) {
    failed = failed || !r.failures.empty();
    reports.push_back(to_json(r));
  }
  json doc = {{"seed", cfg.seed}, {"suites", reports}};
  out << doc.dump(2) << '\n';
  return failed ? verification_failed : ok;
}

int cmd_solve(const RunConfig& cfg, double beta, bool adjoint_relation, std::ostream& out) {
  SolutionSet set = adjoint_relation ? solve_S_adjoint(cfg.scheme, beta) : solve_S(cfg.scheme, beta);
  json rows = json::array();
  const char* key = adjoint_relation ? "beta" : "alpha";
  for (const auto& s : set.solutions) {
    rows.push_back({{key, s.alpha}, {"residual", s.residual}, {"branch", to_string(s.branch)}});
  }
  out << rows.dump() << '\n';
  return ok;
}

int cmd_wigner(const RunConfig& cfg, const std::string& f1, const std::string& f2, int grid,
               std::ostream& out) {
  CylFunction psi = parse_cyl(read_file(f1), cfg.tol);
  CylFunction psi2 = parse_cyl(read_file(f2), cfg.tol);
  if (psi.kind() != psi2.kind()) throw UsageError("both inputs must have the same frequency kind");
  WignerData w = wigner(psi, psi2);
  fmt::print(out, "mu,nu,re,im\n");
  for (const auto& e : w.entries()) {
    fmt::print(out, "{:.17g},{:.17g},{:.17g},{:.17g}\n", e.mu.to_double(), e.nu.to_double(), e.value.real(),
               e.value.imag());
  }
  if (grid > 0) {
    fmt::print(out, "\nx,mu,re,im\n");
    const double two_pi = 2.0 * 3.14159265358979323846;
    for (const auto& [mu, slice] : w.realization().slices()) {
      for (int i = 0; i < grid; ++i) {
        double x = two_pi * i / grid;
        Complex v = eval_real(slice, x);
        fmt::print(out, "{:.17g},{:.17g},{:.17g},{:.17g}\n", x, mu.to_double(), v.real(), v.imag());
      }
    }
  }
  return ok;
}

int cmd_quantize(const RunConfig& cfg, const std::string& name, const std::string& file,
                 const std::vector<double>& window, bool real_kind, std::ostream& out) {
  if (!window.empty()) {
    if (window.size() != 3 || window[2] < 0) throw UsageError("--window takes LO HI COUNT");
    FrequencyKind kind = real_kind || names_real_symbol(name) ? FrequencyKind::real : FrequencyKind::rational;
    NamedSymbol s = parse_symbol(name, kind, cfg);
    const double lo = window[0], hi = window[1];
    fmt::print(out, "# seed={}\nalpha,beta,re,im\n", cfg.seed);
    for (double b : sample_grid(lo, hi, static_cast<std::size_t>(window[2]))) {
      Frequency beta = label_of_kind(b, kind);
      auto alphas = s.symbol.col_support(beta);
      std::sort(alphas.begin(), alphas.end(), FrequencyLess{});
      for (const auto& alpha : alphas) {
        double a = alpha.to_double();
        if (a < lo || a > hi) continue;
        Complex m = matrix_element(s.symbol, alpha, beta);
        fmt::print(out, "{:.17g},{:.17g},{:.17g},{:.17g}\n", a, b, m.real(), m.imag());
      }
    }
    return ok;
  }
  if (file.empty()) throw UsageError("quantize needs an input file or --window");
  CylFunction psi = parse_cyl(read_file(file), cfg.tol);
  if (names_real_symbol(name) && psi.kind() == FrequencyKind::rational) psi = promote_to_real(psi);
  NamedSymbol s = parse_symbol(name, psi.kind(), cfg);
  out << to_json(quantize_apply(s.symbol, psi)).dump() << '\n';
  return ok;
}

int cmd_convergence(const RunConfig& cfg, double beta, int n_max, const std::string& schedule,
                    std::ostream& out) {
  if (n_max < 1) throw UsageError("--n-max must be at least 1");
  std::vector<double> eps;
  for (int n = 1; n <= n_max; ++n) {
    if (schedule == "harmonic") eps.push_back(1.0 / n);
    else eps.push_back(std::ldexp(1.0, -n));
  }
  ConvergenceReport r = convergence_check(cfg.scheme, beta, eps);
  json doc = {{"beta", r.beta},
              {"epsilons", r.epsilons},
              {"N", r.first_stable ? json(*r.first_stable) : json(nullptr)},
              {"spurious", r.spurious},
              {"missing", r.missing}};
  out << doc.dump() << '\n';
  return r.first_stable ? ok : verification_failed;
}

int cmd_norm(const RunConfig& cfg, const std::string& name, const std::vector<double>& seed_values,
             int radius, bool real_kind, std::ostream& out) {
  if (radius < 0) throw UsageError("--radius must be nonnegative");
  FrequencyKind kind = real_kind || names_real_symbol(name) ? FrequencyKind::real : FrequencyKind::rational;
  NamedSymbol s = parse_symbol(name, kind, cfg);
  std::vector<Frequency> seeds;
  for (double x : seed_values) seeds.push_back(label_of_kind(x, kind));
  json sections = json::array();
  double prev = 0.0;
  bool monotone = true;
  for (int r = 0; r <= radius; ++r) {
    SectionNorm n = finite_section_norm(s.symbol, seeds, r);
    monotone = monotone && n.value >= prev - 1e-10 * std::max(1.0, prev);
    prev = n.value;
    sections.push_back({{"radius", r}, {"value", n.value}, {"dimension", n.dimension}, {"iterations", n.iterations}});
  }
  json doc = {{"symbol", s.symbol.name()},
              {"schur_bound", s.symbol.schur() ? json(schur_norm_bound(s.symbol)) : json(nullptr)},
              {"sections", sections},
              {"nondecreasing", monotone}};
  out << doc.dump() << '\n';
  return ok;
}

}  // namespace

std::optional<std::string> system_getenv(const char* name) {
  if (const char* v = std::getenv(name)) return std::string(v);
  return std::nullopt;
}

RunConfig load_config(const std::string& path, RunConfig cfg) {
  json j = parse_json(read_file(path));
  if (!j.is_object()) throw JsonInputError("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    auto num = [&]() -> double {
      if (!value.is_number()) throw JsonInputError(fmt::format("config key '{}' must be a number", key));
      return value.get<double>();
    };
    if (key == "eps_freq") cfg.tol.freq = num();
    else if (key == "eps_coeff") cfg.tol.coeff = num();
    else if (key == "quadrature_agreement") cfg.quadrature_agreement = num();
    else if (key == "area_constant") cfg.scheme.area_constant = num();
    else if (key == "mu0") cfg.scheme.mu0 = num();
    else if (key == "K") cfg.K = num();
    else if (key == "beta_lo") cfg.beta_lo = num();
    else if (key == "beta_hi") cfg.beta_hi = num();
    else if (key == "samples") {
      if (!value.is_number_unsigned()) throw JsonInputError("config key 'samples' must be a nonnegative integer");
      cfg.samples = value.get<std::size_t>();
    } else if (key == "seed") {
      if (!value.is_number_unsigned()) throw JsonInputError("config key 'seed' must be a nonnegative integer");
      cfg.seed = value.get<std::uint64_t>();
    } else if (key == "output_dir") {
      if (!value.is_string()) throw JsonInputError("config key 'output_dir' must be a string");
      cfg.output_dir = value.get<std::string>();
    } else {
      throw JsonInputError(fmt::format("unknown config key '{}'", key));
    }
  }
  return cfg;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Getenv& getenv) {
  CLI::App app{"Wigner functions and Weyl quantization on the Bohr compactification", "bohrwig"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::optional<double> eps_freq, eps_coeff, quad, area, mu0, K, beta_lo, beta_hi;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
  std::optional<std::string> output_dir;
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--eps-freq", eps_freq, "frequency snapping tolerance");
  app.add_option("--eps-coeff", eps_coeff, "relative coefficient drop tolerance");
  app.add_option("--quad-agreement", quad, "quadrature agreement target");
  app.add_option("--area-constant", area, "area constant C in |a+b|(a-b)^2 = C");
  app.add_option("--mu0", mu0, "shift of the comparison operator h_mu0");
  app.add_option("--K", K, "APS constant");
  app.add_option("--seed", seed, "seed for randomized sweeps");
  app.add_option("--output-dir", output_dir, "directory for emitted files");
  app.add_option("--beta-lo", beta_lo, "lower end of the beta range");
  app.add_option("--beta-hi", beta_hi, "upper end of the beta range");
  app.add_option("--samples", samples, "number of beta samples");

  auto* figures = app.add_subcommand("figures", "write graph data and a gnuplot script");
  auto* verify = app.add_subcommand("verify", "run the property suites");

  auto* solve = app.add_subcommand("solve", "print S(beta)");
  double solve_beta = 0.0;
  bool solve_adjoint = false;
  solve->add_option("beta", solve_beta, "beta")->required();
  solve->add_flag("--adjoint", solve_adjoint, "solve for beta given alpha instead");

  auto* wig = app.add_subcommand("wigner", "print Wigner data of two CylFunction files");
  std::string wig_a, wig_b;
  int wig_grid = 0;
  wig->add_option("psi", wig_a, "first JSON file")->required();
  wig->add_option("psi2", wig_b, "second JSON file")->required();
  wig->add_option("--grid", wig_grid, "also evaluate each slice at this many points of [0, 2 pi)");

  auto* quant = app.add_subcommand("quantize", "apply a built-in symbol");
  std::string q_name, q_file;
  std::vector<double> q_window;
  bool q_real = false;
  quant->add_option("symbol", q_name, "sigma1:MU0, sigma2, sigma3:MU0, e, e_aps:K, e_reg:EPS")->required();
  quant->add_option("psi", q_file, "JSON file");
  quant->add_option("--window", q_window, "dump matrix elements: LO HI COUNT")->expected(3);
  quant->add_flag("--real", q_real, "use real frequencies for sigma symbols in --window mode");

  auto* conv = app.add_subcommand("convergence", "strong convergence of the regularized operators");
  double conv_beta = 0.0;
  int conv_n = 200;
  std::string conv_schedule = "harmonic";
  conv->add_option("beta", conv_beta, "beta")->required();
  conv->add_option("--n-max", conv_n, "number of regularization parameters");
  conv->add_option("--schedule", conv_schedule, "eps_n = 1/n (harmonic) or 2^-n (dyadic)")
      ->check(CLI::IsMember({"harmonic", "dyadic"}));

  auto* norm = app.add_subcommand("norm", "finite-section norm estimates");
  std::string n_name;
  std::vector<double> n_seeds{-10.0};
  int n_radius = 5;
  bool n_real = false;
  norm->add_option("symbol", n_name, "symbol name")->required();
  norm->add_option("--seeds", n_seeds, "seed frequencies");
  norm->add_option("--radius", n_radius, "largest section radius");
  norm->add_flag("--real", n_real, "use real frequencies for sigma symbols");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? ok : usage_error;
  }

  try {
    RunConfig cfg;
    if (!config_path.empty()) cfg = load_config(config_path, cfg);
    if (auto dir = getenv("BOHRWIG_OUTPUT_DIR"); dir && !dir->empty()) cfg.output_dir = *dir;
    if (eps_freq) cfg.tol.freq = *eps_freq;
    if (eps_coeff) cfg.tol.coeff = *eps_coeff;
    if (quad) cfg.quadrature_agreement = *quad;
    if (area) cfg.scheme.area_constant = *area;
    if (mu0) cfg.scheme.mu0 = *mu0;
    if (K) cfg.K = *K;
    if (seed) cfg.seed = *seed;
    if (output_dir) cfg.output_dir = *output_dir;
    if (beta_lo) cfg.beta_lo = *beta_lo;
    if (beta_hi) cfg.beta_hi = *beta_hi;
    if (samples) cfg.samples = *samples;
    validate(cfg);

    if (*figures) return cmd_figures(cfg, out);
    if (*verify) return cmd_verify(cfg, out);
    if (*solve) return cmd_solve(cfg, solve_beta, solve_adjoint, out);
    if (*wig) return cmd_wigner(cfg, wig_a, wig_b, wig_grid, out);
    if (*quant) return cmd_quantize(cfg, q_name, q_file, q_window, q_real, out);
    if (*conv) return cmd_convergence(cfg, conv_beta, conv_n, conv_schedule, out);
    if (*norm) return cmd_norm(cfg, n_name, n_seeds, n_radius, n_real, out);
  } catch (const UsageError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return usage_error;
  } catch (const JsonInputError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return usage_error;
  } catch (const KindMismatch& e) {
    fmt::print(err, "error: {}\n", e.what());
    return usage_error;
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return verification_failed;
  }
  return usage_error;
}

}  // namespace bohrwig::cli
