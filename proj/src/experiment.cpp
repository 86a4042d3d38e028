#include "dpweno/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "dpweno/dp_solver.hpp"
#include "dpweno/exact_solutions.hpp"
#include "dpweno/mudp_solver.hpp"

namespace dpweno {

std::string to_string(Equation eq) { return eq == Equation::Dp ? "dp" : "mudp"; }

Equation equation_from_string(const std::string& name) {
  if (name == "dp") return Equation::Dp;
  if (name == "mudp") return Equation::MuDp;
  throw std::invalid_argument("unknown equation '" + name + "' (expected dp or mudp)");
}

std::string to_string(ReferenceKind kind) {
  switch (kind) {
    case ReferenceKind::Exact: return "exact";
    case ReferenceKind::SelfFine: return "self_fine";
    case ReferenceKind::SelfPair: return "self_pair";
    case ReferenceKind::None: break;
  }
  return "none";
}

ReferenceKind reference_from_string(const std::string& name) {
  if (name == "exact") return ReferenceKind::Exact;
  if (name == "self_fine") return ReferenceKind::SelfFine;
  if (name == "self_pair") return ReferenceKind::SelfPair;
  if (name == "none") return ReferenceKind::None;
  throw std::invalid_argument("unknown reference '" + name + "' (expected exact, self_fine, self_pair or none)");
}

Solver make_solver(Equation eq, const WenoConfig& cfg, const UniformGrid& grid) {
  cfg.validate();
  if (eq == Equation::Dp) {
    auto a = std::make_shared<const PeriodicOperator>(build_dp_elliptic(grid, elliptic_order_for(cfg.scheme)));
    return {[cfg, a](const StateField& u) { return dp_rhs(u, cfg, *a); },
            [cfg, a](const StateField& u) { return dp_auxiliary(u, cfg, *a); }};
  }
  auto ops = std::make_shared<const MuDpOperators>(build_mudp_operators(grid, mu_order_for(cfg.scheme)));
  return {[cfg, ops](const StateField& u) { return mudp_rhs(u, cfg, *ops); },
          [ops](const StateField& u) { return mudp_auxiliary(u, *ops); }};
}

// ---------------------------------------------------------------------------
// Initial conditions

namespace {

const std::set<std::string> kDpExact{"constant", "soliton", "peakon", "shock_peakon"};
const std::set<std::string> kMuExact{"constant", "mu_peakon", "mu_shock"};

ParticleState particles(const RunConfig& cfg) {
  ParticleState st{cfg.params("psi"), cfg.params("phi"), {}};
  if (cfg.ic == "mu_shock") st.s = cfg.params("s");
  if (st.psi.size() != st.phi.size() || (cfg.ic == "mu_shock" && st.s.size() != st.psi.size()) || st.psi.empty()) {
    throw std::invalid_argument("ic: psi, phi (and s) must be non-empty lists of equal length");
  }
  return st;
}

TwoPeakonParams two_peakon(const RunConfig& cfg) {
  TwoPeakonParams p;
  p.c1 = cfg.param("c1", p.c1);
  p.x1 = cfg.param("x1", p.x1);
  p.c2 = cfg.param("c2", p.c2);
  p.x2 = cfg.param("x2", p.x2);
  p.sign = cfg.param("sign", 1.0) < 0.0 ? -1 : 1;
  return p;
}

std::filesystem::path profile_path(const RunOptions& opts) {
  return opts.profile_cache.empty() ? opts.output_root / "cache" / "mu_profile.bin" : opts.profile_cache;
}

}  // namespace

std::vector<std::string> known_initial_conditions() {
  return {"constant", "soliton", "peakon", "two_peakon", "shock_peakon", "peakon_antipeakon",
          "triple", "wavebreak", "mu_smooth", "mu_peakon", "mu_shock"};
}

StateField initial_field(const RunConfig& cfg, const UniformGrid& grid, const RunOptions& opts) {
  const std::string& ic = cfg.ic;
  if (ic == "mu_smooth") {
    const SmoothProfile prof = cached_smooth_profile(profile_path(opts));
    StateField u(grid);
    const bool aligned = prof.n_cells % grid.size() == 0 && std::abs(grid.length() - prof.params.period) < 1e-12 &&
                         std::abs(grid.x_min() + 0.5 * prof.params.period) < 1e-12;
    for (int i = 0; i < grid.size(); ++i) u[i] = aligned ? prof.sample(i, grid.size()) : prof(grid.point(i));
    return u;
  }
  if (auto exact = exact_field(cfg, grid, 0.0)) return *std::move(exact);
  if (ic == "two_peakon") {
    const TwoPeakonParams p = two_peakon(cfg);
    return sample_field(grid, [&](double x) { return dp_two_peakon_ic(x, p); });
  }
  if (ic == "peakon_antipeakon") return sample_field(grid, dp_peakon_antipeakon_ic);
  if (ic == "triple") return sample_field(grid, dp_triple_ic);
  if (ic == "wavebreak") {
    const int variant = static_cast<int>(cfg.param("variant", 1.0));
    return sample_field(grid, [&](double x) { return dp_wavebreak_ic(x, variant); });
  }
  throw std::invalid_argument("ic: unknown initial condition '" + ic + "'");
}

std::optional<StateField> exact_field(const RunConfig& cfg, const UniformGrid& grid, double t) {
  const std::string& ic = cfg.ic;
  if (ic == "constant") {
    const double c = cfg.param("value", 1.0);
    return sample_field(grid, [&](double) { return c; });
  }
  if (ic == "soliton") {
    const SolitonParams p{cfg.param("amplitude", 1.0), cfg.param("speed", 5.0)};
    return sample_field(grid, [&](double x) { return dp_soliton(x, t, p); });
  }
  if (ic == "peakon") {
    const double c = cfg.param("speed", 1.0);
    const int sign = cfg.param("sign", 1.0) < 0.0 ? -1 : 1;
    return sample_field(grid, [&](double x) { return dp_peakon(x, t, c, sign); });
  }
  if (ic == "shock_peakon") return sample_field(grid, [&](double x) { return dp_shock_peakon(x, t); });
  if (ic == "mu_peakon" || ic == "mu_shock") {
    const ParticleState st = t > 0.0 ? evolve_particles(particles(cfg), t) : particles(cfg);
    return sample_field(grid, [&](double x) { return mu_particle_field(x, st); });
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// RunConfig

double RunConfig::param(const std::string& key, double fallback) const {
  const auto it = ic_params.find(key);
  if (it == ic_params.end()) return fallback;
  if (it->second.size() != 1) throw std::invalid_argument("ic." + key + ": expected a single value");
  return it->second.front();
}

std::vector<double> RunConfig::params(const std::string& key) const {
  const auto it = ic_params.find(key);
  if (it == ic_params.end()) throw std::invalid_argument("ic." + key + ": missing");
  return it->second;
}

WenoConfig RunConfig::weno() const {
  WenoConfig w;
  w.scheme = scheme;
  w.cfl = cfl;
  w.dt_mode = dt_mode;
  if (weights_simple) w.simple_linear_weights = *weights_simple;
  for (const auto& [r, row] : weights_mr) {
    if (r < 2 || r > 4 || static_cast<int>(row.size()) != r) {
      throw std::invalid_argument("weights.mr" + std::to_string(r) + ": expected " + std::to_string(r) + " values");
    }
    for (int l = 1; l <= r; ++l) w.mr_linear_weights(r, l) = row[static_cast<std::size_t>(l - 1)];
  }
  return w;
}

void RunConfig::validate() const {
  if (name.empty()) throw std::invalid_argument("name: must not be empty");
  if (!(x_max > x_min)) throw std::invalid_argument("domain: need x_min < x_max");
  if (n.empty()) throw std::invalid_argument("n: at least one grid size required");
  for (int v : n) {
    if (v < UniformGrid::kMinPoints) throw std::invalid_argument("n: " + std::to_string(v) + " is below the minimum of 9");
  }
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw std::invalid_argument("t_end: must be finite and >= 0");
  if (!(cfl > 0.0)) throw std::invalid_argument("cfl: must be positive");
  for (double s : snapshots) {
    if (!(s >= 0.0 && s <= t_end)) throw std::invalid_argument("snapshots: times must lie in [0, t_end]");
  }
  const auto ics = known_initial_conditions();
  if (std::find(ics.begin(), ics.end(), ic) == ics.end()) throw std::invalid_argument("ic: unknown initial condition '" + ic + "'");
  try {
    weno().validate();
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string("weights: ") + e.what());
  }
  if (reference == ReferenceKind::Exact) {
    const auto& ok = equation == Equation::Dp ? kDpExact : kMuExact;
    if (!ok.contains(ic)) {
      throw std::invalid_argument("reference: no exact solution for ic '" + ic + "' with equation " + to_string(equation));
    }
  }
  if ((reference == ReferenceKind::SelfFine || reference == ReferenceKind::SelfPair) && layout != GridLayout::Nodes) {
    throw std::invalid_argument("grid: self references need the nodes layout (coincident points under refinement)");
  }
  if (ic == "mu_peakon" || ic == "mu_shock") particles(*this);
}

// ---------------------------------------------------------------------------
// Text format

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string fmt(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

double parse_double(const std::string& key, const std::string& s) {
  const std::string t = trim(s);
  double v = 0.0;
  const auto r = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || r.ec != std::errc() || r.ptr != t.data() + t.size()) {
    throw std::invalid_argument(key + ": '" + t + "' is not a number");
  }
  return v;
}

std::vector<double> parse_list(const std::string& key, const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(key, item));
  return out;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt(v[i]);
  return s;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  cfg.n.clear();
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  std::set<std::string> seen;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!seen.insert(key).second) throw std::invalid_argument(key + ": given twice (line " + std::to_string(line_no) + ")");
    if (key == "name") cfg.name = value;
    else if (key == "equation") cfg.equation = equation_from_string(value);
    else if (key == "scheme") cfg.scheme = scheme_from_string(value);
    else if (key == "domain") {
      const auto d = parse_list(key, value);
      if (d.size() != 2) throw std::invalid_argument("domain: expected 'x_min, x_max'");
      cfg.x_min = d[0];
      cfg.x_max = d[1];
    } else if (key == "n") {
      for (double v : parse_list(key, value)) {
        if (v != std::floor(v)) throw std::invalid_argument("n: grid sizes must be integers");
        cfg.n.push_back(static_cast<int>(v));
      }
    } else if (key == "grid") {
      if (value == "nodes") cfg.layout = GridLayout::Nodes;
      else if (value == "cells") cfg.layout = GridLayout::CellCenters;
      else throw std::invalid_argument("grid: expected nodes or cells");
    } else if (key == "t_end") cfg.t_end = parse_double(key, value);
    else if (key == "snapshots") cfg.snapshots = value.empty() ? std::vector<double>{} : parse_list(key, value);
    else if (key == "cfl") cfg.cfl = parse_double(key, value);
    else if (key == "dt_mode") {
      if (value == "linear") cfg.dt_mode = DtMode::Linear;
      else if (value == "accuracy") cfg.dt_mode = DtMode::AccuracyScaled;
      else throw std::invalid_argument("dt_mode: expected linear or accuracy");
    } else if (key == "ic") cfg.ic = value;
    else if (key.starts_with("ic.")) cfg.ic_params[key.substr(3)] = parse_list(key, value);
    else if (key == "weights.simple") {
      const auto w = parse_list(key, value);
      if (w.size() != 3) throw std::invalid_argument("weights.simple: expected 3 values");
      cfg.weights_simple = std::array<double, 3>{w[0], w[1], w[2]};
    } else if (key == "weights.mr2" || key == "weights.mr3" || key == "weights.mr4") {
      cfg.weights_mr[key.back() - '0'] = parse_list(key, value);
    } else if (key == "reference") cfg.reference = reference_from_string(value);
    else if (key == "output_dir") cfg.output_dir = value;
    else throw std::invalid_argument("unknown key '" + key + "' on line " + std::to_string(line_no));
  }
  if (cfg.n.empty()) cfg.n = RunConfig{}.n;
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& cfg) {
  std::ostringstream o;
  o << "name = " << cfg.name << '\n';
  o << "equation = " << to_string(cfg.equation) << '\n';
  o << "scheme = " << to_string(cfg.scheme) << '\n';
  o << "domain = " << fmt(cfg.x_min) << ", " << fmt(cfg.x_max) << '\n';
  o << "n = " << join(std::vector<double>(cfg.n.begin(), cfg.n.end())) << '\n';
  if (cfg.layout == GridLayout::CellCenters) o << "grid = cells\n";
  o << "t_end = " << fmt(cfg.t_end) << '\n';
  if (!cfg.snapshots.empty()) o << "snapshots = " << join(cfg.snapshots) << '\n';
  o << "cfl = " << fmt(cfg.cfl) << '\n';
  o << "dt_mode = " << (cfg.dt_mode == DtMode::Linear ? "linear" : "accuracy") << '\n';
  o << "ic = " << cfg.ic << '\n';
  for (const auto& [k, v] : cfg.ic_params) o << "ic." << k << " = " << join(v) << '\n';
  if (cfg.weights_simple) {
    o << "weights.simple = " << join(std::vector<double>(cfg.weights_simple->begin(), cfg.weights_simple->end())) << '\n';
  }
  for (const auto& [r, row] : cfg.weights_mr) o << "weights.mr" << r << " = " << join(row) << '\n';
  o << "reference = " << to_string(cfg.reference) << '\n';
  if (!cfg.output_dir.empty()) o << "output_dir = " << cfg.output_dir << '\n';
  return o.str();
}

// ---------------------------------------------------------------------------
// Catalog

std::vector<RunConfig> experiment_catalog() {
  std::vector<RunConfig> c;
  auto add = [&](RunConfig r) { c.push_back(std::move(r)); };
  const double tp = MuSmoothParams{}.period;

  {
    RunConfig r;
    r.name = "dp-soliton-accuracy";
    r.scheme = Scheme::Weno5Simple;
    r.x_min = -50;
    r.x_max = 50;
    r.n = {80, 160, 320, 640, 1280};
    r.t_end = 1;
    r.dt_mode = DtMode::AccuracyScaled;
    r.ic = "soliton";
    r.ic_params = {{"amplitude", {1}}, {"speed", {5}}};
    r.reference = ReferenceKind::Exact;
    add(r);
  }
  for (int sign : {1, -1}) {
    RunConfig r;
    r.name = sign > 0 ? "dp-peakon" : "dp-antipeakon";
    r.scheme = Scheme::Weno5Simple;
    r.x_min = -40;
    r.x_max = 40;
    r.n = {640};
    r.t_end = 16;
    r.snapshots = {4, 8, 12, 16};
    r.ic = "peakon";
    r.ic_params = {{"speed", {1}}, {"sign", {static_cast<double>(sign)}}};
    r.reference = ReferenceKind::Exact;
    add(r);
  }
  for (int sign : {1, -1}) {
    RunConfig r;
    r.name = sign > 0 ? "dp-two-peakon" : "dp-two-antipeakon";
    r.scheme = Scheme::MrWeno5;
    r.x_min = -40;
    r.x_max = 40;
    r.n = {1280};
    r.t_end = 12;
    r.snapshots = {0, 4, 8, 12};
    r.ic = "two_peakon";
    r.ic_params = {{"c1", {2}}, {"x1", {-13.792}}, {"c2", {1}}, {"x2", {-4}}, {"sign", {static_cast<double>(sign)}}};
    r.reference = ReferenceKind::SelfFine;
    add(r);
  }
  {
    RunConfig r;
    r.name = "dp-shock-peakon";
    r.scheme = Scheme::Weno5Simple;
    r.x_min = -25;
    r.x_max = 25;
    r.n = {640};
    r.layout = GridLayout::CellCenters;
    r.t_end = 6;
    r.snapshots = {3, 6};
    r.ic = "shock_peakon";
    r.reference = ReferenceKind::Exact;
    add(r);
  }
  {
    RunConfig r;
    r.name = "dp-peakon-antipeakon";
    r.scheme = Scheme::MrWeno7;
    r.x_min = -20;
    r.x_max = 20;
    r.n = {640};
    r.t_end = 7;
    r.snapshots = {0, 4, 5, 7};
    r.ic = "peakon_antipeakon";
    r.reference = ReferenceKind::SelfFine;
    add(r);
  }
  {
    RunConfig r;
    r.name = "dp-triple";
    r.scheme = Scheme::Weno5Simple;
    r.x_min = -20;
    r.x_max = 20;
    r.n = {640};
    r.t_end = 7;
    r.snapshots = {0, 2, 5.32, 7};
    r.ic = "triple";
    r.reference = ReferenceKind::SelfFine;
    add(r);
  }
  {
    RunConfig r;
    r.name = "dp-wavebreak-1";
    r.scheme = Scheme::Weno5Simple;
    r.x_min = -2;
    r.x_max = 2;
    r.n = {640};
    r.t_end = 1.1;
    r.snapshots = {0, 0.18, 0.5, 1.1};
    r.ic = "wavebreak";
    r.ic_params = {{"variant", {1}}};
    r.reference = ReferenceKind::SelfFine;
    add(r);
  }
  {
    RunConfig r;
    r.name = "dp-wavebreak-2";
    r.scheme = Scheme::MrWeno7;
    r.x_min = -100;
    r.x_max = 100;
    r.n = {2560};
    r.t_end = 30;
    r.snapshots = {0, 10, 20, 30};
    r.ic = "wavebreak";
    r.ic_params = {{"variant", {2}}};
    r.reference = ReferenceKind::None;
    add(r);
  }
  {
    RunConfig r;
    r.name = "mudp-accuracy";
    r.equation = Equation::MuDp;
    r.scheme = Scheme::Weno5Simple;
    r.x_min = -0.5 * tp;
    r.x_max = 0.5 * tp;
    r.n = {32, 64, 128, 256, 512};
    r.t_end = 0.1;
    r.dt_mode = DtMode::AccuracyScaled;
    r.ic = "mu_smooth";
    r.reference = ReferenceKind::SelfPair;
    add(r);
  }
  {
    RunConfig r;
    r.name = "mudp-peakon-1";
    r.equation = Equation::MuDp;
    r.scheme = Scheme::Weno5Simple;
    r.n = {160};
    r.t_end = 10;
    r.snapshots = {0, 1, 5, 10};
    r.ic = "mu_peakon";
    r.ic_params = {{"psi", {0.333}}, {"phi", {-0.5}}};
    r.reference = ReferenceKind::Exact;
    add(r);
  }
  {
    RunConfig r;
    r.name = "mudp-peakon-2";
    r.equation = Equation::MuDp;
    r.scheme = Scheme::MrWeno5;
    r.n = {160};
    r.t_end = 10;
    r.snapshots = {0, 1, 5, 10};
    r.ic = "mu_peakon";
    r.ic_params = {{"psi", {0.1, 0.08}}, {"phi", {0.4, 0.1}}};
    r.reference = ReferenceKind::Exact;
    add(r);
  }
  for (int k : {1, 2}) {
    RunConfig r;
    r.name = "mudp-shock-" + std::to_string(k);
    r.equation = Equation::MuDp;
    r.scheme = k == 1 ? Scheme::Weno5Simple : Scheme::MrWeno5;
    r.n = {320};
    r.t_end = 5;
    r.snapshots = {0, 1, 3, 5};
    r.ic = "mu_shock";
    if (k == 1) r.ic_params = {{"psi", {0.333}}, {"phi", {0.1}}, {"s", {0.1}}};
    else r.ic_params = {{"psi", {0.3, 0.1}}, {"phi", {0.2, 0.5}}, {"s", {0.4, 0.2}}};
    r.weights_simple = std::array<double, 3>{0.4, 0.3, 0.3};
    r.weights_mr = {{2, {1.0 / 11, 10.0 / 11}}, {3, {0.666, 0.001, 0.333}}};
    r.reference = ReferenceKind::Exact;
    add(r);
  }
  return c;
}

std::optional<RunConfig> find_experiment(const std::string& name) {
  for (auto& r : experiment_catalog()) {
    if (r.name == name) return r;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Runner

double GridRun::conservation_drift() const {
  return std::abs(conserved_final - conserved_initial) / std::max(1.0, std::abs(conserved_initial));
}

namespace {

double dx_sum(const StateField& u) {
  double s = 0.0;
  for (double v : u.values()) s += v;
  return s * u.grid().dx();
}

std::vector<double> output_times(const RunConfig& cfg) {
  std::set<double> t(cfg.snapshots.begin(), cfg.snapshots.end());
  t.insert(cfg.t_end);
  return {t.begin(), t.end()};
}

GridRun simulate(const RunConfig& cfg, const WenoConfig& w, int n, const std::vector<double>& times,
                 const RunOptions& opts) {
  const UniformGrid grid = make_grid(cfg.x_min, cfg.x_max, n, cfg.layout);
  const Solver solver = make_solver(cfg.equation, w, grid);
  GridRun r;
  r.n = n;
  r.times = times;
  StateField u = initial_field(cfg, grid, opts);
  r.conserved_initial = dx_sum(u);
  const auto start = std::chrono::steady_clock::now();
  double t = 0.0;
  for (double target : times) {
    if (target > t) {
      const IntegrationResult res = integrate(u, solver.rhs, TimePolicy::for_config(w, target), t);
      u = res.u;
      r.steps += res.steps;
      t = res.t;
    }
    r.snapshots.push_back(u);
    r.auxiliary.push_back(solver.auxiliary(u));
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.conserved_final = dx_sum(u);
  return r;
}

StateField restrict_by(const StateField& fine, const UniformGrid& coarse) {
  const int factor = fine.size() / coarse.size();
  StateField out(coarse);
  for (int i = 0; i < coarse.size(); ++i) out[i] = fine[i * factor];
  return out;
}

class Runner {
 public:
  Runner(const RunConfig& cfg, const RunOptions& opts) : cfg_(cfg), opts_(opts), times_(output_times(cfg)) {}

  const GridRun& trajectory(Scheme scheme, int n) {
    const auto key = std::pair{static_cast<int>(scheme), n};
    auto it = cache_.find(key);
    if (it == cache_.end()) {
      WenoConfig w = cfg_.weno();
      w.scheme = scheme;
      it = cache_.emplace(key, simulate(cfg_, w, n, times_, opts_)).first;
    }
    return it->second;
  }

  /// Reference fields at the output times for the grid of size n, if any.
  std::optional<std::vector<StateField>> reference(int n) {
    const UniformGrid grid = make_grid(cfg_.x_min, cfg_.x_max, n, cfg_.layout);
    std::vector<StateField> out;
    switch (cfg_.reference) {
      case ReferenceKind::None: return std::nullopt;
      case ReferenceKind::Exact:
        for (double t : times_) out.push_back(*exact_field(cfg_, grid, t));
        return out;
      case ReferenceKind::SelfFine:
      case ReferenceKind::SelfPair: {
        const bool fine = cfg_.reference == ReferenceKind::SelfFine;
        const GridRun& r = trajectory(fine ? Scheme::MrWeno7 : cfg_.scheme, fine ? 4 * n : 2 * n);
        for (const StateField& s : r.snapshots) out.push_back(restrict_by(s, grid));
        return out;
      }
    }
    return std::nullopt;
  }

  const std::vector<double>& times() const { return times_; }

 private:
  const RunConfig& cfg_;
  const RunOptions& opts_;
  std::vector<double> times_;
  std::map<std::pair<int, int>, GridRun> cache_;
};

std::string time_label(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", t);
  return buf;
}

void write_snapshot(const std::filesystem::path& file, const StateField& u, const StateField& q, const StateField* ref) {
  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  out << (ref ? "x,u,q,u_ref\n" : "x,u,q\n");
  char buf[128];
  for (int i = 0; i < u.size(); ++i) {
    if (ref) std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", u.grid().point(i), u[i], q[i], (*ref)[i]);
    else std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", u.grid().point(i), u[i], q[i]);
    out << buf;
  }
}

void write_table(const std::filesystem::path& file, const std::vector<ErrorReport>& table) {
  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  out << "n,l1,order_l1,linf,order_linf\n";
  char buf[160];
  for (const auto& r : table) {
    std::snprintf(buf, sizeof buf, "%d,%.17g,", r.n, r.l1);
    out << buf;
    if (r.order_l1) {
      std::snprintf(buf, sizeof buf, "%.6f", *r.order_l1);
      out << buf;
    }
    std::snprintf(buf, sizeof buf, ",%.17g,", r.linf);
    out << buf;
    if (r.order_linf) {
      std::snprintf(buf, sizeof buf, "%.6f", *r.order_linf);
      out << buf;
    }
    out << '\n';
  }
}

nlohmann::json metadata(const RunResult& res, const WenoConfig& w) {
  using nlohmann::json;
  const RunConfig& cfg = res.config;
  json m;
  m["name"] = cfg.name;
  m["equation"] = to_string(cfg.equation);
  m["scheme"] = to_string(cfg.scheme);
  m["domain"] = {cfg.x_min, cfg.x_max};
  m["grid"] = cfg.layout == GridLayout::Nodes ? "nodes" : "cells";
  m["t_end"] = cfg.t_end;
  m["initial_condition"] = cfg.ic;
  m["reference"] = to_string(cfg.reference);
  m["epsilon"] = w.epsilon;
  m["weights"]["simple"] = w.simple_linear_weights;
  for (int r = 2; r <= 4; ++r) {
    std::vector<double> row;
    for (int l = 1; l <= r; ++l) row.push_back(w.mr_linear_weights(r, l));
    m["weights"]["mr" + std::to_string(r)] = row;
  }
  const TimePolicy policy = TimePolicy::for_config(w, cfg.t_end);
  m["time_step"]["cfl"] = policy.cfl;
  m["time_step"]["mode"] = policy.mode == StepMode::Linear ? "cfl*dx" : (policy.mode == StepMode::Accuracy5 ? "cfl*dx^(5/3)" : "cfl*dx^(7/3)");
  m["conserved_quantity"] = "dx*sum(u)";
  json runs = json::array();
  for (const GridRun& r : res.runs) {
    json j;
    j["n"] = r.n;
    j["dt"] = policy.dt((cfg.x_max - cfg.x_min) / r.n);
    j["steps"] = r.steps;
    j["wall_seconds"] = r.seconds;
    j["conserved_initial"] = r.conserved_initial;
    j["conserved_final"] = r.conserved_final;
    j["conservation_drift"] = r.conservation_drift();
    j["snapshot_times"] = r.times;
    if (r.error) {
      j["l1_error"] = r.error->l1;
      j["linf_error"] = r.error->linf;
    }
    runs.push_back(j);
  }
  m["runs"] = runs;
  m["config"] = serialize_config(cfg);
  return m;
}

RunResult execute(const RunConfig& cfg, const RunOptions& opts, bool table) {
  cfg.validate();
  if (table) {
    if (cfg.reference == ReferenceKind::None) throw std::invalid_argument("reference: convergence needs a reference");
    for (std::size_t i = 1; i < cfg.n.size(); ++i) {
      if (cfg.n[i] != 2 * cfg.n[i - 1]) throw std::invalid_argument("n: convergence grid sizes must double");
    }
  }
  RunResult res{cfg, {}, {}, opts.output_root / (cfg.output_dir.empty() ? cfg.name : cfg.output_dir)};
  if (opts.write_files) std::filesystem::create_directories(res.directory);
  Runner runner(cfg, opts);
  for (int n : cfg.n) {
    GridRun run = runner.trajectory(cfg.scheme, n);
    const auto ref = runner.reference(n);
    if (ref) run.error = error_norms(run.snapshots.back(), ref->back());
    if (opts.write_files) {
      for (std::size_t k = 0; k < run.times.size(); ++k) {
        const auto file = res.directory / ("solution_n" + std::to_string(n) + "_t" + time_label(run.times[k]) + ".csv");
        write_snapshot(file, run.snapshots[k], run.auxiliary[k], ref ? &(*ref)[k] : nullptr);
      }
    }
    if (table) res.table.push_back({n, run.error->l1, run.error->linf, std::nullopt, std::nullopt});
    res.runs.push_back(std::move(run));
  }
  if (table) res.table = convergence_orders(std::move(res.table));
  if (opts.write_files) {
    if (table) write_table(res.directory / "convergence.csv", res.table);
    std::ofstream meta(res.directory / "metadata.json");
    meta << metadata(res, cfg.weno()).dump(2) << '\n';
  }
  return res;
}

}  // namespace

RunResult run(const RunConfig& cfg, const RunOptions& opts) { return execute(cfg, opts, false); }

RunResult run_convergence(const RunConfig& cfg, const RunOptions& opts) { return execute(cfg, opts, true); }

}  // namespace dpweno
