#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <set>
#include <sstream>

#include "wh/cli.hpp"
#include "wh/gabor_cylinder.hpp"
#include "wh/gabor_line.hpp"
#include "wh/groups.hpp"
#include "wh/quantize.hpp"
#include "wh/stellar.hpp"

namespace wh::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Reads typed values out of one JSON object and rejects keys nobody asked for.
class ParamReader {
 public:
  ParamReader(const json& j, std::string scope) : j_(j), scope_(std::move(scope)) {
    if (!j_.is_object()) throw ConfigError(scope_ + " must be an object");
  }

  bool has(const std::string& key) {
    used_.insert(key);
    return j_.contains(key);
  }
  const json& raw(const std::string& key) {
    used_.insert(key);
    return j_.at(key);
  }

  double number(const std::string& key, double def) {
    if (!has(key)) return def;
    const auto& v = j_.at(key);
    if (!v.is_number()) throw ConfigError(where(key) + " must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError(where(key) + " must be finite");
    return x;
  }
  double positive(const std::string& key, double def) {
    const double x = number(key, def);
    if (!(x > 0.0)) throw ConfigError(where(key) + " must be positive");
    return x;
  }
  std::int64_t integer(const std::string& key, std::int64_t def, std::int64_t lo, std::int64_t hi) {
    if (!has(key)) return def;
    const auto& v = j_.at(key);
    if (!v.is_number_integer()) throw ConfigError(where(key) + " must be an integer");
    const auto x = v.get<std::int64_t>();
    if (x < lo || x > hi)
      throw ConfigError(where(key) + " must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return x;
  }
  bool flag(const std::string& key, bool def) {
    if (!has(key)) return def;
    if (!j_.at(key).is_boolean()) throw ConfigError(where(key) + " must be true or false");
    return j_.at(key).get<bool>();
  }
  std::string text(const std::string& key, const std::string& def) {
    if (!has(key)) return def;
    if (!j_.at(key).is_string()) throw ConfigError(where(key) + " must be a string");
    return j_.at(key).get<std::string>();
  }

  Grid1D grid(const std::string& key, const Grid1D& def) {
    if (!has(key)) return def;
    ParamReader g(j_.at(key), where(key));
    const auto count = static_cast<std::size_t>(g.integer("count", static_cast<std::int64_t>(def.count()), 2, 1 << 16));
    Grid1D out = def;
    try {
      if (g.has("half_width")) {
        out = Grid1D::centered(g.positive("half_width", 1.0), count);
      } else {
        out = Grid1D(g.number("start", def.start()), g.positive("step", def.step()), count);
      }
    } catch (const std::invalid_argument& e) {
      throw ConfigError(where(key) + ": " + e.what());
    }
    g.finish();
    return out;
  }

  PhaseSpaceGrid phase_grid(const std::string& key, const PhaseSpaceGrid& def) {
    if (!has(key)) return def;
    ParamReader g(j_.at(key), where(key));
    PhaseSpaceGrid out{g.grid("omega", def.omega), g.grid("b", def.b)};
    g.finish();
    return out;
  }

  std::string where(const std::string& key) const { return scope_ + "." + key; }

  void finish() const {
    for (const auto& [key, value] : j_.items())
      if (!used_.count(key)) throw ConfigError("unknown parameter '" + where(key) + "'");
  }

 private:
  const json& j_;
  std::string scope_;
  std::set<std::string> used_;
};

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------- group-check

std::string unit_name(const BasisTerm& t) {
  if (t.coef == 0) return "0";
  std::string s = t.coef < 0 ? "-" : "";
  if (std::abs(t.coef) != 1) s += std::to_string(std::abs(t.coef));
  return s + "E" + std::to_string(t.i) + std::to_string(t.j);
}

RunResult run_group_check(const ExperimentConfig& cfg) {
  ParamReader p(cfg.parameters, "parameters");
  const auto samples = static_cast<std::size_t>(p.integer("samples", 1000, 1, 1000000));
  const double tol = p.positive("tolerance", 1e-12);
  std::vector<std::int64_t> primes{5};
  if (p.has("primes")) {
    primes.clear();
    const auto& arr = p.raw("primes");
    if (!arr.is_array()) throw ConfigError("parameters.primes must be an array");
    for (const auto& v : arr) {
      if (!v.is_number_integer()) throw ConfigError("parameters.primes must hold integers");
      const auto q = v.get<std::int64_t>();
      if (q > 101 || q < 3 || q % 2 == 0 || !is_prime(q)) throw ConfigError("parameters.primes entries must be odd primes <= 101");
      primes.push_back(q);
    }
  }
  p.finish();

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  auto vec = [&](std::size_t n) {
    std::vector<double> v(n);
    for (auto& x : v) x = u(rng);
    return v;
  };

  json variants = json::array();
  bool all = true;
  auto record = [&](const std::string& name, double err) {
    const bool ok = err <= tol;
    all = all && ok;
    variants.push_back({{"name", name}, {"samples", samples}, {"max_error", err}, {"passed", ok}});
  };

  {
    double err = 0.0;
    for (std::size_t k = 0; k < samples; ++k) {
      const WHElement<double> g1{u(rng), u(rng), u(rng)}, g2{u(rng), u(rng), u(rng)};
      err = std::max(err, wh_to_matrix(wh_compose(g1, g2)).max_abs_diff(wh_to_matrix(g1) * wh_to_matrix(g2)));
    }
    record("H1(R)", err);
  }
  {
    std::uniform_int_distribution<std::int64_t> ui(-50, 50);
    double err = 0.0;
    for (std::size_t k = 0; k < samples; ++k) {
      const WHElement<std::int64_t> g1{ui(rng), ui(rng), ui(rng)}, g2{ui(rng), ui(rng), ui(rng)};
      const auto g = wh_compose(g1, g2);
      auto m = [](const WHElement<std::int64_t>& x) {
        return wh_to_matrix_polarized({static_cast<double>(x.c), static_cast<double>(x.a), static_cast<double>(x.b)});
      };
      err = std::max(err, m(g).max_abs_diff(m(g1) * m(g2)));
    }
    record("H1(Z)", err);
  }
  for (std::size_t n : {1u, 2u, 3u}) {
    double err = 0.0;
    for (std::size_t k = 0; k < samples; ++k) {
      const PolarizedElement g1{vec(n), vec(n), u(rng)}, g2{vec(n), vec(n), u(rng)};
      err = std::max(err, phn_to_matrix(phn_compose(g1, g2)).max_abs_diff(phn_to_matrix(g1) * phn_to_matrix(g2)));
    }
    record("PH_" + std::to_string(n), err);
  }
  for (std::size_t d : {2u, 4u}) {
    double err = 0.0;
    for (std::size_t k = 0; k < samples; ++k) {
      const SymplecticWHElement g1{u(rng), vec(d)}, g2{u(rng), vec(d)};
      err = std::max(err, symplectic_to_matrix(symplectic_compose(g1, g2))
                              .max_abs_diff(symplectic_to_matrix(g1) * symplectic_to_matrix(g2)));
    }
    record("H(R^" + std::to_string(d) + ")", err);
  }
  {
    double err = 0.0;
    for (std::size_t k = 0; k < samples; ++k) {
      GWH3Element g1, g2;
      g1.z = u(rng);
      g2.z = u(rng);
      for (auto* g : {&g1, &g2}) {
        for (auto& y : g->y) y = u(rng);
        for (auto& x : g->x) x = u(rng);
      }
      err = std::max(err, gwh3_to_matrix(gwh3_compose(g1, g2)).max_abs_diff(gwh3_to_matrix(g1) * gwh3_to_matrix(g2)));
    }
    record("GWH3", err);
  }

  json zp = json::array();
  for (auto q : primes) {
    const auto r = zp_group_check(q);
    const bool ok = r.closed && r.order_is_p_cubed && r.exponent_p && r.identity_and_inverse;
    all = all && ok;
    zp.push_back({{"p", r.p},
                  {"distinct_elements", r.distinct_elements},
                  {"closed", r.closed},
                  {"order_is_p_cubed", r.order_is_p_cubed},
                  {"exponent_p", r.exponent_p},
                  {"identity_and_inverse", r.identity_and_inverse},
                  {"passed", ok}});
  }

  const auto basis = strict_upper_basis(4);
  json names = json::array();
  for (const auto& b : basis) names.push_back(unit_name(b));
  json rows = json::array();
  for (const auto& row : commutator_table(4)) {
    json r = json::array();
    for (const auto& t : row) r.push_back(unit_name(t));
    rows.push_back(r);
  }
  json filtration = json::array();
  for (const auto& f : nilpotency_filtration_check(4)) {
    all = all && f.passed;
    filtration.push_back({{"inclusion", f.name}, {"passed", f.passed}});
  }

  json report = {{"schema", 1},
                 {"command", "group-check"},
                 {"tolerance", tol},
                 {"variants", variants},
                 {"zp", zp},
                 {"commutator_table", {{"basis", names}, {"rows", rows}}},
                 {"filtration", filtration},
                 {"all_passed", all}};
  RunResult out;
  out.files.push_back({"group_check.json", dump(report)});
  return out;
}

// ---------------------------------------------------------------- gabor

SampledSignal read_signal_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open signal CSV " + path.string());
  std::vector<double> t;
  std::vector<cplx> v;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#' || std::isalpha(static_cast<unsigned char>(line[0]))) continue;
    std::stringstream ss(line);
    std::string c0, c1, c2;
    if (!std::getline(ss, c0, ',') || !std::getline(ss, c1, ',') || !std::getline(ss, c2, ','))
      throw ConfigError("signal CSV " + path.string() + ": rows need t,re,im");
    try {
      t.push_back(std::stod(c0));
      v.emplace_back(std::stod(c1), std::stod(c2));
    } catch (const std::exception&) {
      throw ConfigError("signal CSV " + path.string() + ": bad number");
    }
  }
  if (t.size() < 2) throw ConfigError("signal CSV " + path.string() + ": need at least two samples");
  const double step = (t.back() - t.front()) / static_cast<double>(t.size() - 1);
  for (std::size_t i = 1; i < t.size(); ++i)
    if (std::abs(t[i] - t[i - 1] - step) > 1e-9 * std::max(1.0, std::abs(step)))
      throw ConfigError("signal CSV " + path.string() + ": t must be uniformly spaced");
  try {
    return SampledSignal(Grid1D(t.front(), step, t.size()), std::move(v));
  } catch (const std::invalid_argument& e) {
    throw ConfigError("signal CSV " + path.string() + ": " + e.what());
  }
}

double rel_l2_error(const SampledSignal& a, const SampledSignal& ref) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    num += std::norm(a.values[i] - ref.values[i]);
    den += std::norm(ref.values[i]);
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

RunResult run_gabor(const ExperimentConfig& cfg) {
  ParamReader p(cfg.parameters, "parameters");
  const std::string name = p.text("signal", "gaussian");
  const bool from_csv = p.has("signal_csv");
  const std::string csv = from_csv ? p.text("signal_csv", "") : "";
  const Grid1D tgrid = p.grid("time", default_time_grid());
  const PhaseSpaceGrid tf = p.phase_grid("tf", default_tf_grid());
  const double width = p.positive("probe_width", 1.0);
  std::vector<std::array<double, 2>> shifts{{1.0, 1.0}, {2.0, -0.5}};
  if (p.has("covariance")) {
    shifts.clear();
    const auto& arr = p.raw("covariance");
    if (!arr.is_array()) throw ConfigError("parameters.covariance must be an array of [omega0, b0]");
    for (const auto& s : arr) {
      if (!s.is_array() || s.size() != 2 || !s[0].is_number() || !s[1].is_number())
        throw ConfigError("parameters.covariance must be an array of [omega0, b0]");
      shifts.push_back({s[0].get<double>(), s[1].get<double>()});
    }
  }
  p.finish();

  SampledSignal s = from_csv ? read_signal_csv(csv) : SampledSignal(tgrid);
  if (!from_csv) {
    try {
      s = named_test_signal(name, tgrid);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("parameters.signal: ") + e.what());
    }
  }
  const Probe probe(gaussian_signal(s.grid, width), "gaussian(" + format_double(width) + ")");

  RunResult out;
  const auto S = gabor_transform(probe, s, tf, &out.warnings);
  const auto back = gabor_reconstruct(probe, S, &out.warnings);
  const double es = s.norm_sq(), ec = S.energy();

  std::vector<double> modulus(S.values.size());
  double peak = 0.0;
  for (std::size_t i = 0; i < modulus.size(); ++i) {
    modulus[i] = std::abs(S.values[i]);
    peak = std::max(peak, modulus[i]);
  }
  json cov = json::array();
  for (const auto& [o0, b0] : shifts) {
    const double r = covariance_residual(probe, s, o0, b0, tf, CovariancePhase::derived, &out.warnings);
    cov.push_back({{"omega0", o0}, {"b0", b0}, {"residual", r}, {"relative", r / peak}});
  }
  json report = {{"schema", 1},
                 {"command", "gabor"},
                 {"signal", from_csv ? csv : name},
                 {"probe", probe.id},
                 {"signal_energy", es},
                 {"coefficient_energy", ec},
                 {"parseval_relative_error", std::abs(ec - es) / es},
                 {"reconstruction_relative_l2_error", rel_l2_error(back, s)},
                 {"max_abs_coefficient", peak},
                 {"covariance", cov},
                 {"uncertainty_product", uncertainty_product(s, &out.warnings)}};
  out.files.push_back({"gabor_modulus.csv", grid_csv(tf.omega, tf.b, "omega", "b", modulus)});
  out.files.push_back({"gabor_report.json", dump(report)});
  return out;
}

// ---------------------------------------------------------------- cylinder

RunResult run_cylinder(const ExperimentConfig& cfg) {
  ParamReader p(cfg.parameters, "parameters");
  const double lambda = p.positive("lambda", 2.0);
  if (lambda > kVonMisesMaxLambda) throw ConfigError("parameters.lambda must lie in (0, 50]");
  const auto ng = static_cast<std::size_t>(p.integer("n_gamma", 256, 8, 1 << 14));
  const auto nt = static_cast<std::size_t>(p.integer("n_theta", 256, 8, 1 << 14));
  const std::string sig = p.text("signal", "von-mises");
  const bool auto_m = !p.has("M");
  const int max_m_cap = static_cast<int>((ng - 1) / 2);
  int M = auto_m ? 0 : static_cast<int>(p.integer("M", 0, 0, max_m_cap));
  const int m = static_cast<int>(p.integer("m", 0, -64, 64));
  const int mp = static_cast<int>(p.integer("mprime", 0, -64, 64));
  const auto nk = static_cast<std::size_t>(p.integer("kernel_count", 129, 2, 4096));
  p.finish();

  const auto psi = von_mises(lambda, ng);
  CircularSignal phi = psi;
  if (sig == "mode3") {
    for (std::size_t i = 0; i < ng; ++i) {
      const double g = phi.grid.point(i);
      phi.values[i] = std::polar(1.0 + std::cos(g), 3.0 * g);
    }
    const double nrm = std::sqrt(phi.norm_sq());
    for (auto& v : phi.values) v /= nrm;
  } else if (sig != "von-mises") {
    throw ConfigError("parameters.signal must be \"von-mises\" or \"mode3\"");
  }
  if (auto_m) M = choose_truncation_order(psi, phi);

  RunResult out;
  const auto S = cyl_gabor_transform(psi, phi, M, Grid1D::circle(nt));
  const auto back = cyl_reconstruct(psi, S, &out.warnings);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < ng; ++i) {
    num += std::norm(back.values[i] - phi.values[i]);
    den += std::norm(phi.values[i]);
  }

  const Grid1D axis(-kTwoPi, 2.0 * kTwoPi / static_cast<double>(nk - 1), nk);
  std::vector<double> re(nk * nk), im(nk * nk), ab(nk * nk);
  for (std::size_t i = 0; i < nk; ++i)
    for (std::size_t j = 0; j < nk; ++j) {
      const cplx k = reproducing_kernel(lambda, m, axis.point(i), mp, axis.point(j));
      re[i * nk + j] = k.real();
      im[i * nk + j] = k.imag();
      ab[i * nk + j] = std::abs(k);
    }
  json report = {{"schema", 1},
                 {"command", "cylinder"},
                 {"lambda", lambda},
                 {"signal", sig},
                 {"M", M},
                 {"M_chosen_automatically", auto_m},
                 {"signal_energy", phi.norm_sq()},
                 {"coefficient_energy", S.energy()},
                 {"parseval_error", std::abs(S.energy() - phi.norm_sq())},
                 {"roundtrip_relative_l2_error", std::sqrt(num / den)},
                 {"edge_energy", S.edge_energy()},
                 {"kernel", {{"m", m}, {"mprime", mp}, {"count", nk}}}};
  out.files.push_back({"kernel_re.csv", grid_csv(axis, axis, "theta", "thetaprime", re)});
  out.files.push_back({"kernel_im.csv", grid_csv(axis, axis, "theta", "thetaprime", im)});
  out.files.push_back({"kernel_abs.csv", grid_csv(axis, axis, "theta", "thetaprime", ab)});
  out.files.push_back({"cylinder_report.json", dump(report)});
  return out;
}

// ---------------------------------------------------------------- quantize

json density_json(const DensityReport& d) {
  return {{"trace", d.trace},
          {"trace_imag", d.trace_imag},
          {"hermiticity_defect", d.hermiticity_defect},
          {"min_eigenvalue", d.min_eigenvalue},
          {"purity", d.purity}};
}

Distribution gaussian_weight(const PhaseSpaceGrid& g, double vo, double vb, double o0, double b0) {
  Distribution w(g);
  for (std::size_t k = 0; k < g.omega.count(); ++k)
    for (std::size_t j = 0; j < g.b.count(); ++j) {
      const double o = g.omega.point(k) - o0, b = g.b.point(j) - b0;
      w.at(k, j) = std::exp(-o * o / (2 * vo) - b * b / (2 * vb));
    }
  return w;
}

RunResult run_quantize(const ExperimentConfig& cfg) {
  ParamReader p(cfg.parameters, "parameters");
  const PhaseSpaceGrid grid = p.phase_grid("grid", {Grid1D::centered(16.0, 256), Grid1D::centered(16.0, 256)});
  const Grid1D tgrid = p.grid("time", Grid1D::centered(20.0, 256));
  const double width = p.positive("probe_width", 1.0);
  std::optional<Distribution> w;
  std::string source;
  if (p.has("w")) {
    ParamReader wp(p.raw("w"), "parameters.w");
    if (wp.has("csv")) {
      source = wp.text("csv", "");
      w = read_distribution_csv(source);
    } else {
      const std::string builder = wp.text("builder", "gaussian");
      source = builder;
      if (builder == "gaussian") {
        w = gaussian_weight(grid, wp.positive("var_omega", 1.0), wp.positive("var_b", 1.0), wp.number("omega0", 0.0),
                            wp.number("b0", 0.0))
                .normalized();
      } else if (builder == "par") {
        w = par_kernel_closed(wp.positive("a", 1.0), wp.positive("r", 1.0), grid).normalized();
      } else {
        throw ConfigError("parameters.w.builder must be \"gaussian\" or \"par\"");
      }
    }
    wp.finish();
  } else {
    source = "gaussian";
    w = gaussian_weight(grid, 1.0, 1.0, 0.0, 0.0).normalized();
  }
  p.finish();

  RunResult out;
  const auto probe = gaussian_probe_signal(width, tgrid, &out.warnings);
  const auto K = quantize_to_kernel(*w, probe, &out.warnings);
  const auto d = density_diagnostics(K);

  const std::size_t n = K.size();
  std::string csv = "t_i,t_j,re,im\n";
  csv.reserve(n * n * 80);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const cplx v = K.at(i, j);
      csv += format_double(tgrid.point(i)) + "," + format_double(tgrid.point(j)) + "," + format_double(v.real()) + "," +
             format_double(v.imag()) + "\n";
    }
  json report = {{"schema", 1},
                 {"command", "quantize"},
                 {"w", source},
                 {"w_mass", w->mass()},
                 {"probe_width", width},
                 {"time_points", n},
                 {"diagnostics", density_json(d)}};
  out.files.push_back({"kernel.csv", std::move(csv)});
  out.files.push_back({"quantize_report.json", dump(report)});
  return out;
}

// ---------------------------------------------------------------- stellar

ZeroSet zeros_from_json(const json& arr, const std::string& where) {
  if (!arr.is_array()) throw ConfigError(where + " must be an array of {\"re\", \"im\"}");
  ZeroSet z;
  for (const auto& e : arr) {
    if (!e.is_object() || !e.contains("re") || !e.contains("im") || !e["re"].is_number() || !e["im"].is_number() ||
        e.size() != 2)
      throw ConfigError(where + " entries must be {\"re\": number, \"im\": number}");
    z.points.emplace_back(e["re"].get<double>(), e["im"].get<double>());
  }
  return z;
}

json minima_json(const std::vector<LocalMinimum>& mins) {
  json a = json::array();
  for (const auto& m : mins) a.push_back({{"omega", m.omega}, {"b", m.b}, {"value", m.value}});
  return a;
}

json matches_json(const std::vector<ZeroMatch>& ms) {
  json a = json::array();
  for (const auto& m : ms) {
    json e = {{"zero", {{"re", m.zero.real()}, {"im", m.zero.imag()}}}, {"matched", m.minimum.has_value()}};
    if (m.minimum) {
      e["minimum"] = {{"omega", m.minimum->omega}, {"b", m.minimum->b}, {"value", m.minimum->value}};
      e["displacement"] = m.displacement;
    }
    a.push_back(e);
  }
  return a;
}

RunResult run_stellar(const ExperimentConfig& cfg) {
  ParamReader p(cfg.parameters, "parameters");
  StellarParams sp;
  ZeroSet zeros = ZeroSet::pentagon();
  std::string fixture = "pentagon";
  if (p.has("zeros")) {
    const auto& z = p.raw("zeros");
    if (z.is_string()) {
      if (z.get<std::string>() != "pentagon") throw ConfigError("parameters.zeros: the only named fixture is \"pentagon\"");
    } else {
      zeros = zeros_from_json(z, "parameters.zeros");
      fixture = "inline";
    }
  }
  if (p.has("zeros_file")) {
    const std::string path = p.text("zeros_file", "");
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open zeros file " + path);
    json doc;
    try {
      doc = json::parse(in);
    } catch (const json::parse_error& e) {
      throw ConfigError("zeros file " + path + " is not valid JSON");
    }
    zeros = zeros_from_json(doc, "zeros file " + path);
    fixture = path;
  }
  sp.s = p.number("s", sp.s);
  if (!(sp.s > 0.0 && sp.s < 1.0)) throw ConfigError("s must lie in (0,1)");
  sp.probe_a = p.positive("a", sp.probe_a);
  sp.probe_r = p.positive("r", sp.probe_r);
  sp.grid = p.phase_grid("grid", sp.grid);
  sp.time_grid = p.grid("time", sp.time_grid);
  sp.rel_threshold = p.number("rel_threshold", sp.rel_threshold);
  if (!(sp.rel_threshold > 0.0 && sp.rel_threshold < 1.0)) throw ConfigError("parameters.rel_threshold must lie in (0,1)");
  sp.match_cutoff = p.positive("match_cutoff", sp.match_cutoff);
  sp.origin_radius = p.number("origin_radius", sp.origin_radius);
  if (sp.origin_radius < 0.0) throw ConfigError("parameters.origin_radius must be non-negative");
  sp.symmetry_order = static_cast<int>(p.integer("symmetry_order", sp.symmetry_order, 1, 64));
  const bool quantize = p.flag("quantize", false);
  p.finish();

  RunResult out;
  const auto rep = stellar_experiment(zeros, sp, &out.warnings);
  json zs = json::array();
  for (const auto& z : zeros.points) zs.push_back({{"re", z.real()}, {"im", z.imag()}});
  json report = {{"schema", 1},
                 {"command", "stellar"},
                 {"zeros", zs},
                 {"fixture", fixture},
                 {"s", sp.s},
                 {"a", sp.probe_a},
                 {"r", sp.probe_r},
                 {"normalization", rep.w.normalization},
                 {"tail_fraction", rep.w.tail_fraction},
                 {"portrait_mass", rep.portrait.mass()},
                 {"rel_threshold", sp.rel_threshold},
                 {"minima_w", minima_json(rep.minima_w)},
                 {"minima_portrait", minima_json(rep.minima_portrait)},
                 {"matches_w", matches_json(rep.matches_w)},
                 {"matches_portrait", matches_json(rep.matches_portrait)},
                 {"unmatched_portrait", minima_json(rep.unmatched_portrait)},
                 {"matched_count", rep.matched_count},
                 {"max_displacement", rep.matched_count > 0 ? json(rep.max_displacement) : json(nullptr)},
                 {"symmetry_order", sp.symmetry_order},
                 {"symmetry_residual_w", finite_or_null(rep.symmetry_residual_w)},
                 {"symmetry_residual_portrait", finite_or_null(rep.symmetry_residual_portrait)}};
  if (quantize) report["density"] = density_json(quantize_stellar(zeros, sp, &out.warnings).diagnostics);
  out.files.push_back({"w.csv", grid_csv(sp.grid.omega, sp.grid.b, "omega", "b", rep.w.w.values)});
  out.files.push_back({"portrait.csv", grid_csv(sp.grid.omega, sp.grid.b, "omega", "b", rep.portrait.values)});
  out.files.push_back({"stellar_report.json", dump(report)});
  return out;
}

}  // namespace

RunResult execute(const ExperimentConfig& config) {
  if (config.command == "group-check") return run_group_check(config);
  if (config.command == "gabor") return run_gabor(config);
  if (config.command == "cylinder") return run_cylinder(config);
  if (config.command == "quantize") return run_quantize(config);
  if (config.command == "stellar") return run_stellar(config);
  if (config.command.empty()) throw ConfigError("no command given");
  throw ConfigError("unknown command '" + config.command + "'");
}

}  // namespace wh::cli
