#pragma once

// Command-line front end. Each subcommand is a plain function writing CSV to
// an ostream and returning a process exit code, so the whole surface can be
// driven from tests without spawning processes.
//
//   geometry    point values of K, k, k0, k0 - k, L
//   regions     boundary-curve table, optionally classified at a fixed r
//   qle-scan    E(0, 0) along r, a or M_ir
//   minimality  E(y_eps) - E(0) for a perturbation family
//
// Exit codes: 0 success, 2 domain error, 3 I/O error.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "kerrqle/energy.hpp"
#include "kerrqle/errors.hpp"
#include "kerrqle/kerr_metric.hpp"
#include "kerrqle/mass_relations.hpp"
#include "kerrqle/quadrature.hpp"
#include "kerrqle/regions.hpp"
#include "kerrqle/surface_geometry.hpp"

namespace kerrqle::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 2;
inline constexpr int kExitIo = 3;

/// Shortest-safe round-trip formatting, 17 significant digits.
inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// f(0), ..., f(n-1) evaluated on a few worker threads; results keep input order.
template <class T>
std::vector<T> parallel_map(std::size_t n, const std::function<T(std::size_t)>& f) {
  std::vector<T> out(n);
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(n, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
    return out;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) out[i] = f(i);
    });
  }
  for (auto& t : pool) t.join();
  return out;
}

/// Inclusive grid `min:max:step`. The point count is rounded to the nearest
/// whole step and a last point overshooting max is clamped to it. The token
/// `rk` in place of min or max resolves to `rk_value`.
inline std::vector<double> parse_grid(const std::string& text, std::optional<double> rk_value = std::nullopt) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() == 1) parts = {parts[0], parts[0], "1"};
  if (parts.size() != 3) throw DomainError("grid must be min:max:step, got '" + text + "'");
  auto number = [&](const std::string& s) {
    if (s == "rk") {
      if (!rk_value) throw DomainError("grid token 'rk' is not available here");
      return *rk_value;
    }
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || !std::isfinite(v)) throw DomainError("bad number '" + s + "' in grid '" + text + "'");
    return v;
  };
  const double lo = number(parts[0]), hi = number(parts[1]), step = number(parts[2]);
  if (!(step > 0.0)) throw DomainError("grid step must be positive");
  if (hi < lo) throw DomainError("grid max must not be below min");
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 0.5));
  std::vector<double> v(count + 1);
  for (std::size_t i = 0; i <= count; ++i) v[i] = lo + static_cast<double>(i) * step;
  v.back() = std::min(v.back(), hi);
  return v;
}

// ---------------------------------------------------------------- geometry

struct GeometryOptions {
  double m = 1.0;
  double a = 0.0;
  double r = 3.0;
  std::optional<double> theta;
  bool pole = false;
};

inline int cmd_geometry(const GeometryOptions& o, std::ostream& out, std::ostream& err) {
  try {
    const SurfaceSpec s(KerrParams(o.m, o.a), o.r);
    const double th = o.pole ? 0.0 : o.theta.value_or(std::numbers::pi / 2.0);
    if (!(th >= 0.0 && th <= std::numbers::pi)) throw AxisError("theta must lie in [0, pi]");
    const double K = th == 0.0 || th == std::numbers::pi ? pole_curvature(s) : gaussian_curvature(s, th);
    const double k = mean_curvature_k(s, th);
    const double k0 = embedded_mean_curvature_k0(s, th);
    out << "quantity,value\n";
    out << "theta," << fmt(th) << '\n';
    out << "K," << fmt(K) << '\n';
    out << "k," << fmt(k) << '\n';
    out << "k0," << fmt(k0) << '\n';
    out << "k0_minus_k," << fmt(k0 - k) << '\n';
    out << "L," << fmt(L_value(s, th)) << '\n';
    return kExitOk;
  } catch (const std::domain_error& e) {
    err << "geometry: " << e.what() << '\n';
    return kExitDomain;
  }
}

// ----------------------------------------------------------------- regions

struct RegionsOptions {
  double m = 1.0;
  double a_min = 0.0;
  std::optional<double> a_max;
  std::size_t n = 101;
  std::optional<double> r;
  double tol = kDefaultBoundaryTol;
};

inline int cmd_regions(const RegionsOptions& o, std::ostream& out, std::ostream& err) {
  try {
    if (!(o.m > 0.0)) throw DomainError("mass must be positive");
    const double a_max = o.a_max.value_or(o.m);
    if (!(o.a_min >= 0.0) || a_max > o.m || a_max < o.a_min) throw DomainError("need 0 <= a-min <= a-max <= m");
    if (o.n == 0) throw DomainError("n must be positive");
    std::vector<double> grid(o.n);
    for (std::size_t i = 0; i < o.n; ++i) {
      grid[i] = o.n == 1 ? o.a_min
                         : o.a_min + (a_max - o.a_min) * static_cast<double>(i) / static_cast<double>(o.n - 1);
    }
    const auto rows = boundary_curve_table(o.m, grid);
    out << "a,r_plus,r_k,sqrt3a" << (o.r ? ",class" : "") << '\n';
    for (const auto& row : rows) {
      out << fmt(row.a) << ',' << fmt(row.r_plus) << ',' << fmt(row.r_k) << ',' << fmt(row.sqrt3a);
      if (o.r) out << ',' << to_string(classify(KerrParams(o.m, row.a), *o.r, o.tol));
      out << '\n';
    }
    return kExitOk;
  } catch (const std::domain_error& e) {
    err << "regions: " << e.what() << '\n';
    return kExitDomain;
  }
}

// ---------------------------------------------------------------- qle-scan

enum class ScanMode { VsR, VsA, VsMir };

inline ScanMode parse_mode(const std::string& s) {
  if (s == "vs_r") return ScanMode::VsR;
  if (s == "vs_a") return ScanMode::VsA;
  if (s == "vs_mir") return ScanMode::VsMir;
  throw DomainError("unknown scan mode '" + s + "'");
}

struct QleScanOptions {
  ScanMode mode = ScanMode::VsR;
  double m = 1.0;
  std::string a = "0";
  std::string r = "3";
  std::string mir;
  double dtheta = kDefaultDtheta;
  QuadratureRule rule = QuadratureRule::Trapezoid;
};

struct ScanRow {
  double param = 0.0;
  double E = 0.0;
  double error = 0.0;
  std::string skip;  // empty when E is valid
};

inline ScanRow scan_point(double m, double a, double r, double param, QuadratureRule rule, double dtheta) {
  ScanRow row;
  row.param = param;
  if (!(a >= 0.0 && a <= m)) {
    row.skip = "spin_out_of_range";
    return row;
  }
  const KerrParams p(m, a);
  if (!(r > 0.0) || r < r_plus(p)) {
    row.skip = "inside_horizon";
    return row;
  }
  if (r <= r_k(p)) {
    row.skip = "not_embeddable";
    return row;
  }
  try {
    const auto e = critical_value(SurfaceSpec(p, r), rule, dtheta);
    row.E = e.value;
    row.error = e.error_estimate;
  } catch (const InadmissibleGaugeError&) {
    row.skip = "inadmissible";
  } catch (const DomainError&) {
    row.skip = "domain_error";
  }
  return row;
}

inline int cmd_qle_scan(const QleScanOptions& o, std::ostream& out, std::ostream& err) {
  try {
    if (!(o.m > 0.0)) throw DomainError("mass must be positive");
    if (!(o.dtheta > 0.0 && o.dtheta < 1.0)) throw DomainError("dtheta must lie in (0, 1)");
    std::vector<double> grid;
    std::function<ScanRow(std::size_t)> eval;
    switch (o.mode) {
      case ScanMode::VsR: {
        const double a = parse_grid(o.a).front();
        std::optional<double> rk;
        if (a >= 0.0 && a <= o.m) rk = r_k(KerrParams(o.m, a)) + 1e-6 * o.m;
        grid = parse_grid(o.r, rk);
        eval = [&, a](std::size_t i) { return scan_point(o.m, a, grid[i], grid[i], o.rule, o.dtheta); };
        break;
      }
      case ScanMode::VsA: {
        const double r = parse_grid(o.r).front();
        grid = parse_grid(o.a);
        eval = [&, r](std::size_t i) { return scan_point(o.m, grid[i], r, grid[i], o.rule, o.dtheta); };
        break;
      }
      case ScanMode::VsMir: {
        if (o.mir.empty()) throw DomainError("vs_mir needs --mir");
        const double r = parse_grid(o.r).front();
        grid = parse_grid(o.mir);
        eval = [&, r](std::size_t i) {
          const double mir = grid[i];
          if (!(mir >= o.m / std::numbers::sqrt2 && mir <= o.m)) {
            ScanRow row;
            row.param = mir;
            row.skip = "mir_out_of_range";
            return row;
          }
          return scan_point(o.m, a_from_mir(o.m, mir), r, mir, o.rule, o.dtheta);
        };
        break;
      }
    }
    const auto rows = parallel_map<ScanRow>(grid.size(), eval);
    out << "param,E,error_estimate,skip_reason\n";
    bool any = false;
    for (const auto& row : rows) {
      if (row.skip.empty()) {
        any = true;
        out << fmt(row.param) << ',' << fmt(row.E) << ',' << fmt(row.error) << ",\n";
      } else {
        out << fmt(row.param) << ",,," << row.skip << '\n';
      }
    }
    if (!any) {
      err << "qle-scan: every grid point was skipped\n";
      return kExitDomain;
    }
    return kExitOk;
  } catch (const std::domain_error& e) {
    err << "qle-scan: " << e.what() << '\n';
    return kExitDomain;
  }
}

// -------------------------------------------------------------- minimality

struct MinimalityOptions {
  double m = 1.0;
  double a = 0.5;
  double r = 3.0;
  PerturbationFamily family = PerturbationFamily::SinCos;
  double eps_max = 0.3;
  std::size_t n = 7;
  bool force = false;
  double dtheta = kDefaultDtheta;
  QuadratureRule rule = QuadratureRule::Trapezoid;
};

inline int cmd_minimality(const MinimalityOptions& o, std::ostream& out, std::ostream& err) {
  try {
    const KerrParams p(o.m, o.a);
    if (o.r <= r_h(p) && !o.force) {
      std::ostringstream os;
      os << "r=" << o.r << " <= r_h(a)=" << r_h(p)
         << "; the minimality statement does not apply (use --force to probe anyway)";
      throw DomainError(os.str());
    }
    if (o.r <= r_plus(p)) throw HorizonError("r must lie outside the outer horizon");
    if (!(o.dtheta > 0.0 && o.dtheta < 1.0)) throw DomainError("dtheta must lie in (0, 1)");
    if (o.n == 0) throw DomainError("n must be positive");
    const SurfaceSpec s(p, o.r);
    std::vector<double> eps(o.n);
    for (std::size_t i = 0; i < o.n; ++i) {
      eps[i] = o.n == 1 ? o.eps_max : o.eps_max * static_cast<double>(i) / static_cast<double>(o.n - 1);
    }
    const auto rows = parallel_map<MinimalityRow>(eps.size(), [&](std::size_t i) {
      return minimality_probe(s, o.family, std::span<const double>(&eps[i], 1), o.rule, o.dtheta).front();
    });
    out << "eps,delta_E,admissible\n";
    for (const auto& row : rows) {
      out << fmt(row.eps) << ',' << (row.admissible ? fmt(row.delta_E) : std::string()) << ','
          << (row.admissible ? "true" : "false") << '\n';
    }
    return kExitOk;
  } catch (const std::domain_error& e) {
    err << "minimality: " << e.what() << '\n';
    return kExitDomain;
  }
}

// ------------------------------------------------------------------ driver

/// Writes `body` to stdout or to `path`. Returns kExitIo on failure.
inline int emit(const std::string& path, const std::string& body, std::ostream& out, std::ostream& err) {
  if (path.empty() || path == "-") {
    out << body;
    out.flush();
    return out ? kExitOk : kExitIo;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) {
    err << "cannot open '" << path << "' for writing\n";
    return kExitIo;
  }
  f << body;
  f.close();
  if (!f) {
    err << "write to '" << path << "' failed\n";
    return kExitIo;
  }
  return kExitOk;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kerr constant-radius surfaces: geometry, regions and quasi-local energy"};
  app.require_subcommand(1);
  std::string out_path;
  double m = 1.0;

  GeometryOptions geo;
  auto* g = app.add_subcommand("geometry", "curvatures at one theta or at the pole");
  g->add_option("--a", geo.a, "spin")->required();
  g->add_option("--r", geo.r, "Boyer-Lindquist radius")->required();
  g->add_option("--theta", geo.theta, "polar angle in [0, pi] (default pi/2)");
  g->add_flag("--pole", geo.pole, "evaluate at theta = 0");

  RegionsOptions reg;
  std::optional<double> reg_r;
  auto* rg = app.add_subcommand("regions", "table of r_+, r_k and sqrt(3) a");
  rg->add_option("--a-min", reg.a_min, "first spin");
  rg->add_option("--a-max", reg.a_max, "last spin (default m)");
  rg->add_option("--n", reg.n, "number of spins")->check(CLI::PositiveNumber);
  rg->add_option("--r", reg_r, "classify each spin at this radius");
  rg->add_option("--tol", reg.tol, "boundary tolerance")->check(CLI::NonNegativeNumber);

  QleScanOptions qs;
  std::string mode = "vs_r", rule = "trapezoid";
  auto* q = app.add_subcommand("qle-scan", "E(0,0) along a one-parameter family");
  q->add_option("--mode", mode, "vs_r | vs_a | vs_mir");
  q->add_option("--a", qs.a, "spin, or spin grid min:max:step for vs_a");
  q->add_option("--r", qs.r, "radius, or radius grid for vs_r (token rk allowed)");
  q->add_option("--mir", qs.mir, "irreducible-mass grid for vs_mir");
  q->add_option("--dtheta", qs.dtheta, "quadrature spacing");
  q->add_option("--rule", rule, "trapezoid | simpson");

  MinimalityOptions mo;
  std::string family = "sincos", mrule = "trapezoid";
  auto* mn = app.add_subcommand("minimality", "E(y_eps) - E(0) for perturbations of the gauge");
  mn->add_option("--a", mo.a, "spin")->required();
  mn->add_option("--r", mo.r, "radius")->required();
  mn->add_option("--family", family, "sincos (1) | sin2sin (2)");
  mn->add_option("--eps-max", mo.eps_max, "largest eps");
  mn->add_option("--n", mo.n, "number of eps values from 0 to eps-max")->check(CLI::PositiveNumber);
  mn->add_flag("--force", mo.force, "run even when r <= r_h(a)");
  mn->add_option("--dtheta", mo.dtheta, "quadrature spacing");
  mn->add_option("--rule", mrule, "trapezoid | simpson");

  for (auto* sub : {g, rg, q, mn}) {
    sub->add_option("--m", m, "mass (default 1)");
    sub->add_option("--out", out_path, "output file (default stdout)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitDomain;
  }

  std::ostringstream body;
  int code = kExitOk;
  try {
    if (g->parsed()) {
      geo.m = m;
      code = cmd_geometry(geo, body, err);
    } else if (rg->parsed()) {
      reg.m = m;
      reg.r = reg_r;
      code = cmd_regions(reg, body, err);
    } else if (q->parsed()) {
      qs.m = m;
      qs.mode = parse_mode(mode);
      qs.rule = parse_rule(rule);
      code = cmd_qle_scan(qs, body, err);
    } else if (mn->parsed()) {
      mo.m = m;
      mo.family = parse_family(family);
      mo.rule = parse_rule(mrule);
      code = cmd_minimality(mo, body, err);
    }
  } catch (const std::invalid_argument& e) {
    err << e.what() << '\n';
    return kExitDomain;
  } catch (const std::domain_error& e) {
    err << e.what() << '\n';
    return kExitDomain;
  }
  if (code != kExitOk) return code;
  return emit(out_path, body.str(), out, err);
}

}  // namespace kerrqle::cli
