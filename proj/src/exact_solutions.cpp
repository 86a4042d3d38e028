#include "dpweno/exact_solutions.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "dpweno/time_integration.hpp"

namespace dpweno {

namespace {

double sign0(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

double unit_wrap(double x) {
  double r = x - std::floor(x);
  return r >= 1.0 ? 0.0 : r;
}

}  // namespace

double dp_soliton(double x, double t, const SolitonParams& p) {
  const double s5 = std::sqrt(5.0);
  const double xi = x - p.speed * t;
  if (std::abs(xi) < 1e-8) return p.amplitude * (4.0 - s5);
  const double e = std::exp(-std::abs(xi));
  // expand in d = b - 1 so the vanishing radicand keeps full relative precision in the far field
  const double d = 2.0 * e / (1.0 - e);
  const double b = 1.0 + d;
  const double cubic =
      ((((38.0 + 17.0 * s5) / 27.0 * d + (38.0 + 17.0 * s5) / 9.0) * d + (17.0 + 8.0 * s5) / 9.0) * d) -
      (25.0 + 10.0 * s5) / 27.0;
  const double neg_radicand =
      d * ((((233.0 * s5 / 54.0 + 521.0 / 54.0) * d + 466.0 * s5 / 27.0 + 1042.0 / 27.0) * d + 389.0 * s5 / 18.0 +
            2609.0 / 54.0) * d + 235.0 * s5 / 27.0 + 175.0 / 9.0);
  const std::complex<double> z(cubic, std::sqrt(neg_radicand));
  const double big_x = 2.0 * std::pow(z, 1.0 / 3.0).real() + (2.0 + s5) / 3.0 * b;
  return p.amplitude * ((4.0 - s5) - 2.0 * s5 / (big_x * big_x - 1.0));
}

double dp_peakon(double x, double t, double c, int sign) {
  const double s = sign >= 0 ? 1.0 : -1.0;
  return s * c * std::exp(-std::abs(x - s * c * t));
}

double dp_shock_peakon(double x, double t) { return -sign0(x) * std::exp(-std::abs(x)) / (t + 1.0); }

double dp_two_peakon_ic(double x, const TwoPeakonParams& p) {
  const double s = p.sign >= 0 ? 1.0 : -1.0;
  return s * (p.c1 * std::exp(-std::abs(x - p.x1)) + p.c2 * std::exp(-std::abs(x - p.x2)));
}

double dp_peakon_antipeakon_ic(double x) { return std::exp(-std::abs(x + 5.0)) - std::exp(-std::abs(x - 5.0)); }

double dp_triple_ic(double x) {
  return std::exp(-std::abs(x + 5.0)) + sign0(x) * std::exp(-std::abs(x)) - std::exp(-std::abs(x - 5.0));
}

double dp_wavebreak_ic(double x, int variant) {
  if (variant == 1) return std::exp(0.5 * x * x) * std::sin(std::numbers::pi * x);
  if (variant == 2) {
    const double s = 1.0 / std::cosh(0.1 * (x + 50.0));
    return s * s;
  }
  throw std::invalid_argument("dp_wavebreak_ic: variant must be 1 or 2");
}

// ---------------------------------------------------------------------------

double mu_green(double x) {
  const double y = unit_wrap(x);
  return 0.5 * y * (y - 1.0) + 13.0 / 12.0;
}

double mu_green_deriv(double x) {
  const double y = unit_wrap(x);
  return y == 0.0 ? 0.0 : y - 0.5;
}

ParticleRates mu_peakon_ode_rhs(const ParticleState& st) {
  const int m = st.size();
  ParticleRates r{std::vector<double>(m, 0.0), std::vector<double>(m, 0.0), {}};
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const double d = st.phi[i] - st.phi[j];
      r.dphi[i] += st.psi[j] * mu_green(d);
      r.dpsi[i] -= 2.0 * st.psi[i] * st.psi[j] * mu_green_deriv(d);
    }
  }
  return r;
}

ParticleRates mu_shock_ode_rhs(const ParticleState& st) {
  const int m = st.size();
  if (static_cast<int>(st.s.size()) != m) throw std::invalid_argument("mu_shock_ode_rhs: missing shock strengths");
  ParticleRates r{std::vector<double>(m, 0.0), std::vector<double>(m, 0.0), std::vector<double>(m, 0.0)};
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const double d = st.phi[i] - st.phi[j];
      const double gp = mu_green_deriv(d);
      r.dphi[i] += st.psi[j] * mu_green(d) + st.s[i] * gp;
      r.dpsi[i] += 2.0 * (st.psi[j] - st.psi[i] * st.psi[j] * gp);
      r.ds[i] -= st.s[i] * st.psi[j] * gp;
    }
  }
  return r;
}

namespace {

std::vector<double> pack(const ParticleState& st) {
  std::vector<double> y;
  y.insert(y.end(), st.psi.begin(), st.psi.end());
  y.insert(y.end(), st.phi.begin(), st.phi.end());
  y.insert(y.end(), st.s.begin(), st.s.end());
  return y;
}

ParticleState unpack(const std::vector<double>& y, int m, bool shocks) {
  ParticleState st;
  st.psi.assign(y.begin(), y.begin() + m);
  st.phi.assign(y.begin() + m, y.begin() + 2 * m);
  if (shocks) st.s.assign(y.begin() + 2 * m, y.begin() + 3 * m);
  return st;
}

}  // namespace

ParticleState evolve_particles(const ParticleState& initial, double t_end, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("evolve_particles: dt must be positive");
  const int m = initial.size();
  const bool shocks = initial.has_shocks();
  if (static_cast<int>(initial.phi.size()) != m) throw std::invalid_argument("evolve_particles: psi/phi sizes differ");
  ParticleState st = initial;
  for (double& p : st.phi) p = unit_wrap(p);
  auto f = [&](const std::vector<double>& y) {
    const ParticleState s = unpack(y, m, shocks);
    const ParticleRates r = shocks ? mu_shock_ode_rhs(s) : mu_peakon_ode_rhs(s);
    ParticleState rates{r.dpsi, r.dphi, r.ds};
    return pack(rates);
  };
  std::vector<double> y = pack(st);
  double t = 0.0;
  while (t < t_end) {
    double h = dt;
    bool last = false;
    if (t_end - (t + h) <= 1e-9 * dt) {
      h = t_end - t;
      last = true;
    }
    y = rk4_step(y, h, f);
    for (int i = 0; i < m; ++i) y[m + i] = unit_wrap(y[m + i]);
    t = last ? t_end : t + h;
  }
  return unpack(y, m, shocks);
}

double mu_peakon_field(double x, const ParticleState& st) {
  double u = 0.0;
  for (int i = 0; i < st.size(); ++i) u += st.psi[i] * mu_green(x - st.phi[i]);
  return u;
}

double mu_shock_field(double x, const ParticleState& st) {
  double u = 0.0;
  for (int i = 0; i < st.size(); ++i) u += st.psi[i] * mu_green(x - st.phi[i]) + st.s[i] * mu_green_deriv(x - st.phi[i]);
  return u;
}

double mu_particle_field(double x, const ParticleState& st) {
  return st.has_shocks() ? mu_shock_field(x, st) : mu_peakon_field(x, st);
}

// ---------------------------------------------------------------------------

double SmoothProfile::sample(int i, int n) const {
  if (n <= 0 || n_cells % n != 0) throw std::invalid_argument("SmoothProfile::sample: n must divide n_cells");
  int r = i % n;
  if (r < 0) r += n;
  return values[static_cast<std::size_t>(r) * static_cast<std::size_t>(n_cells / n)];
}

double SmoothProfile::operator()(double xq) const {
  const double h = spacing();
  double s = (xq + 0.5 * params.period) / h;
  s -= n_cells * std::floor(s / n_cells);
  const int j = static_cast<int>(std::floor(s));
  const double f = s - j;
  auto v = [&](int k) {
    int r = (j + k) % n_cells;
    if (r < 0) r += n_cells;
    return values[static_cast<std::size_t>(r)];
  };
  // four-point Lagrange on j-1..j+2
  const double w0 = -f * (f - 1.0) * (f - 2.0) / 6.0;
  const double w1 = (f + 1.0) * (f - 1.0) * (f - 2.0) / 2.0;
  const double w2 = -(f + 1.0) * f * (f - 2.0) / 2.0;
  const double w3 = (f + 1.0) * f * (f - 1.0) / 6.0;
  return w0 * v(-1) + w1 * v(0) + w2 * v(1) + w3 * v(2);
}

namespace {

struct ProfileOde {
  MuSmoothParams p;

  double f(double phi) const {
    return 2.0 * p.mu0 * (p.crest - phi) * (phi - p.trough) / (p.speed - phi);
  }
  double df(double phi) const {
    const double a = p.crest - phi, b = phi - p.trough, c = p.speed - phi;
    return 2.0 * p.mu0 * ((a - b) * c + a * b) / (c * c);
  }
  std::array<double, 2> rhs(const std::array<double, 2>& y) const { return {y[1], 0.5 * df(y[0])}; }

  std::array<double, 2> step(const std::array<double, 2>& y, double h) const {
    auto add = [](const std::array<double, 2>& a, const std::array<double, 2>& k, double s) {
      return std::array<double, 2>{a[0] + s * k[0], a[1] + s * k[1]};
    };
    const auto k1 = rhs(y);
    const auto k2 = rhs(add(y, k1, 0.5 * h));
    const auto k3 = rhs(add(y, k2, 0.5 * h));
    const auto k4 = rhs(add(y, k3, h));
    return {y[0] + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
            y[1] + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1])};
  }
};

}  // namespace

SmoothProfile mu_smooth_profile(const MuSmoothParams& params, int n_cells) {
  if (n_cells < 2 || (n_cells & (n_cells - 1)) != 0) throw std::invalid_argument("mu_smooth_profile: n_cells must be a power of two");
  if (!(params.trough < params.crest && params.crest < params.speed)) {
    throw std::invalid_argument("mu_smooth_profile: need trough < crest < speed");
  }
  const ProfileOde ode{params};
  SmoothProfile prof{params, n_cells, std::vector<double>(static_cast<std::size_t>(n_cells) + 1)};
  const double h = prof.spacing();
  const int mid = n_cells / 2;  // x = 0

  std::array<double, 2> y{params.anchor_value, std::sqrt(ode.f(params.anchor_value))};
  const int to_origin = std::max(1, static_cast<int>(std::ceil(std::abs(params.anchor_x) / h)));
  const double h0 = -params.anchor_x / to_origin;
  for (int k = 0; k < to_origin; ++k) y = ode.step(y, h0);
  const std::array<double, 2> at_origin = y;

  prof.values[mid] = y[0];
  for (int j = mid; j < n_cells; ++j) {
    y = ode.step(y, h);
    prof.values[j + 1] = y[0];
  }
  y = at_origin;
  for (int j = mid; j > 0; --j) {
    y = ode.step(y, -h);
    prof.values[j - 1] = y[0];
  }
  const double slack = 1e-9 * (params.crest - params.trough);
  for (int j = 0; j <= n_cells; ++j) {
    const double v = prof.values[j];
    if (!std::isfinite(v) || v < params.trough - slack || v > params.crest + slack) {
      std::ostringstream msg;
      msg << "mu_smooth_profile: profile left [m, M] at x = " << prof.x(j) << " (value " << v << ")";
      throw NumericalError(msg.str());
    }
  }
  return prof;
}

namespace {

std::string profile_header(const MuSmoothParams& p, int n_cells) {
  std::ostringstream h;
  h.precision(17);
  h << "dpweno-profile " << p.crest << ' ' << p.trough << ' ' << p.speed << ' ' << p.mu0 << ' ' << p.period << ' '
    << p.anchor_x << ' ' << p.anchor_value << ' ' << n_cells;
  return h.str();
}

}  // namespace

void save_profile(const SmoothProfile& profile, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("save_profile: cannot open " + path.string());
  out << profile_header(profile.params, profile.n_cells) << '\n';
  out.write(reinterpret_cast<const char*>(profile.values.data()),
            static_cast<std::streamsize>(profile.values.size() * sizeof(double)));
  if (!out) throw std::runtime_error("save_profile: write failed for " + path.string());
}

std::optional<SmoothProfile> load_profile(const std::filesystem::path& path, const MuSmoothParams& params, int n_cells) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::string header;
  std::getline(in, header);
  if (header != profile_header(params, n_cells)) return std::nullopt;
  SmoothProfile prof{params, n_cells, std::vector<double>(static_cast<std::size_t>(n_cells) + 1)};
  in.read(reinterpret_cast<char*>(prof.values.data()), static_cast<std::streamsize>(prof.values.size() * sizeof(double)));
  if (in.gcount() != static_cast<std::streamsize>(prof.values.size() * sizeof(double))) return std::nullopt;
  return prof;
}

SmoothProfile cached_smooth_profile(const std::filesystem::path& path, const MuSmoothParams& params, int n_cells) {
  if (auto p = load_profile(path, params, n_cells)) return *std::move(p);
  SmoothProfile prof = mu_smooth_profile(params, n_cells);
  try {
    save_profile(prof, path);
  } catch (const std::exception&) {
  }
  return prof;
}

}  // namespace dpweno
