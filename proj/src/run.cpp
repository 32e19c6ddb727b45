#include "bose/run.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "bose/bound.hpp"
#include "bose/decay.hpp"
#include "bose/dyson.hpp"
#include "bose/errors.hpp"
#include "bose/ideal_gas.hpp"
#include "bose/lattice.hpp"
#include "bose/potential.hpp"
#include "bose/scattering.hpp"

namespace bose::cli {
namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary);
    if (!f) throw domain_error("cannot open output path: " + path);
    f << content;
    if (!f) throw domain_error("short write to: " + path);
  }
  std::filesystem::rename(tmp, path);
}

nlohmann::json load_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw domain_error("cannot read: " + path);
  return nlohmann::json::parse(f);  // parse errors carry byte locations
}

struct GridSpec {
  double lo = 0.0, hi = 0.0;
  int count = 0;
};

GridSpec parse_grid(const std::string& text) {
  GridSpec g;
  char colon1 = 0, colon2 = 0;
  std::istringstream is(text);
  if (!(is >> g.lo >> colon1 >> g.hi >> colon2 >> g.count) || colon1 != ':' ||
      colon2 != ':' || g.count < 1)
    throw domain_error("grid spec must be lo:hi:count, got '" + text + "'");
  return g;
}

int jobs_from_env() {
  const char* env = std::getenv("BOSE_THERMO_JOBS");
  if (!env) return 1;
  const int j = std::atoi(env);
  return j >= 1 ? j : 1;
}

const char* method_name(ScatteringMethod m) {
  switch (m) {
    case ScatteringMethod::ode: return "ode";
    case ScatteringMethod::variational: return "variational";
    case ScatteringMethod::closed_form: return "closed_form";
  }
  return "?";
}

int cmd_scattering(const std::string& pot_path, const std::string& method,
                   double r_max, int steps, double R, int mesh,
                   const std::string& out_path, std::ostream& out) {
  const RadialPotential p = RadialPotential::from_json(load_json(pot_path));
  ScatteringSolution sol;
  if (method == "ode")
    sol = scattering_length_ode(p, r_max, steps);
  else if (method == "variational")
    sol = scattering_length_variational(p, R > 0.0 ? R : 4.0 * std::max(p.range(), 1.0), mesh);
  else
    throw domain_error("scattering: method must be ode or variational");
  out << "a=" << fmt(sol.a) << " residual=" << fmt(sol.tail_fit_residual)
      << " method=" << method_name(sol.method) << "\n";
  if (!out_path.empty()) {
    nlohmann::json j = {{"a", sol.a},
                        {"tail_fit_residual", sol.tail_fit_residual},
                        {"tail_slope", sol.tail_slope},
                        {"method", method_name(sol.method)}};
    write_atomic(out_path, j.dump(2) + "\n");
  }
  return 0;
}

int cmd_truncate(const std::string& pot_path, double phi,
                 const std::string& out_path, std::ostream& out) {
  const RadialPotential p = RadialPotential::from_json(load_json(pot_path));
  const TruncatedPotential t = truncate(p, phi);
  out << "mode=" << (t.mode() == TruncatedPotential::Mode::unchanged
                         ? "unchanged"
                         : t.mode() == TruncatedPotential::Mode::tail_cut
                               ? "tail_cut"
                               : "explicit_step")
      << " s=" << fmt(t.cut_radius_s()) << " budget=" << fmt(t.budget())
      << " epsilon=" << fmt(t.epsilon()) << "\n";
  if (!out_path.empty()) write_atomic(out_path, t.to_json().dump(2) + "\n");
  return 0;
}

int cmd_ideal(double beta, const std::string& rho_grid, double cv_step,
              const std::string& out_path, const std::string& format,
              std::ostream& out) {
  const GridSpec g = parse_grid(rho_grid);
  std::ostringstream csv;
  csv << "# units: hbar = 2m = 1\n";
  csv << "T,rho,mu0,f0,cV,condensate\n";
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < g.count; ++i) {
    const double rho =
        g.count == 1 ? g.lo : g.lo + (g.hi - g.lo) * i / (g.count - 1);
    const double T = 1.0 / beta;
    const double mu = mu0(beta, rho);
    const double f = f0(beta, rho);
    const double cv = specific_heat(beta, rho, cv_step > 0.0 ? cv_step : 1e-3 * T);
    const double cond = condensate_density(beta, rho);
    csv << fmt(T) << ',' << fmt(rho) << ',' << fmt(mu) << ',' << fmt(f) << ','
        << fmt(cv) << ',' << fmt(cond) << "\n";
    rows.push_back({{"T", T},
                    {"rho", rho},
                    {"mu0", mu},
                    {"f0", f},
                    {"cV", cv},
                    {"condensate", cond}});
  }
  const std::string payload =
      format == "json" ? rows.dump(2) + "\n" : csv.str();
  if (!out_path.empty())
    write_atomic(out_path, payload);
  else
    out << payload;
  out << "ideal: " << g.count << " rows at beta=" << fmt(beta) << "\n";
  return 0;
}

int cmd_bound(double a, double beta, double rho, double delta, double A,
              double B, const std::string& out_path, std::ostream& out) {
  const BoundReport rep = lower_bound(a, beta, rho, delta, A, B);
  out << "branch=" << branch_name(rep.branch)
      << " lower_bound=" << fmt(rep.lower_bound)
      << " error_factor=" << fmt(rep.error_factor) << "\n";
  if (!out_path.empty()) write_atomic(out_path, rep.to_json().dump(2) + "\n");
  return 0;
}

int cmd_sweep(const std::string& x_grid, double beta, double rho, double delta,
              int jobs, const std::string& out_path, std::ostream& out) {
  const GridSpec g = parse_grid(x_grid);
  if (!(g.lo > 0.0) || !(g.hi > 0.0))
    throw domain_error("sweep: x grid must be positive (log spacing)");
  std::vector<double> xs(g.count);
  for (int i = 0; i < g.count; ++i)
    xs[i] = g.count == 1
                ? g.lo
                : g.lo * std::pow(g.hi / g.lo, double(i) / (g.count - 1));
  std::vector<std::string> rows(xs.size());
  const double scale = rho * rho * std::pow(beta, 2.5);
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const double a = xs[i] / scale;
      const BoundReport rep = lower_bound(a, beta, rho, delta);
      std::ostringstream row;
      row << fmt(xs[i]) << ',' << branch_name(rep.branch) << ','
          << fmt(rep.error_factor) << ',' << fmt(rep.lower_bound) << "\n";
      rows[i] = row.str();
    }
  };
  if (jobs <= 1 || xs.size() < 2) {
    work(0, xs.size());
  } else {
    const std::size_t nthread = std::min<std::size_t>(jobs, xs.size());
    std::vector<std::thread> pool;
    const std::size_t chunk = (xs.size() + nthread - 1) / nthread;
    for (std::size_t t = 0; t < nthread; ++t) {
      const std::size_t b = t * chunk;
      const std::size_t e = std::min(xs.size(), b + chunk);
      if (b < e) pool.emplace_back(work, b, e);
    }
    for (auto& th : pool) th.join();
  }
  std::ostringstream csv;
  csv << "# units: hbar = 2m = 1\n";
  csv << "x,branch,error_factor,lower_bound\n";
  for (const auto& r : rows) csv << r;
  if (!out_path.empty())
    write_atomic(out_path, csv.str());
  else
    out << csv.str();
  out << "sweep: " << xs.size() << " rows\n";
  return 0;
}

struct KernelsOpts {
  std::string check = "dyson";
  int grid_n = 32;
  double box = 32.0;
  double R = 8.0;
  double r0 = 4.0;
  double phi = 40.0;
  double eps = 0.3;
  double s_cutoff = 8.0;
  int scatterers = 1;
  std::uint64_t seed = 0;
  std::string u_choice = "hat_with_hole";
  bool allow_coarse = false;
  double lambda = 0.78539816339744831;  // pi/4
  int mesh = 1024;
  int order = 2;
  std::string dump_prefix;
  std::string out_path;
};

int cmd_kernels(const KernelsOpts& o, std::ostream& out) {
  nlohmann::json verdict;
  if (o.check == "dyson") {
    const Lattice lat(o.box, o.grid_n);
    const TruncatedPotential tv = truncate(RadialPotential::hard_core(o.r0), o.phi);
    const CutoffProfile cutoff{o.s_cutoff};
    DysonCheckConfig cfg;
    cfg.R = o.R;
    cfg.epsilon = o.eps;
    cfg.seed = o.seed;
    cfg.u_choice = o.u_choice == "hat" ? UChoice::hat : UChoice::hat_with_hole;
    cfg.enforce_resolution = !o.allow_coarse;
    cfg.scatterers =
        sample_scatterers(o.box, o.scatterers, o.R / 5.0, o.seed);
    // numerical floor from the scatterer-free (pure kinetic) operator
    DysonCheckConfig empty = cfg;
    empty.scatterers.clear();
    const double floor =
        std::fabs(verify_dyson(empty, tv, cutoff, lat).min_eigenvalue);
    const DysonVerdict v = verify_dyson(cfg, tv, cutoff, lat);
    const double tol = 4.0 * floor + 1e-10;
    verdict = v.to_json(tol);
    verdict["config"] = cfg.to_json();
    verdict["holds"] = v.min_eigenvalue >= -tol;
    if (!o.dump_prefix.empty()) {
      Field h = build_h(lat, cutoff);
      Field fR = build_fR(h, o.R);
      Field wR = build_wR(fR);
      write_field(h, o.dump_prefix + "_h");
      write_field(fR, o.dump_prefix + "_fR");
      write_field(wR, o.dump_prefix + "_wR");
    }
  } else if (o.check == "hole") {
    const HoleVerdict coarse = verify_hole_lemma(o.r0, o.R, o.lambda, o.mesh / 2);
    const HoleVerdict fine = verify_hole_lemma(o.r0, o.R, o.lambda, o.mesh);
    const double floor =
        std::fabs(verify_hole_lemma(o.r0, o.R, 0.0, o.mesh).min_eigenvalue);
    const double trend = std::fabs(coarse.min_eigenvalue - fine.min_eigenvalue);
    const double tol = 4.0 * floor + trend + 1e-12;
    verdict = fine.to_json(tol);
    verdict["config"] = {{"R0", o.r0}, {"R", o.R}, {"lambda", o.lambda}, {"mesh", o.mesh}};
    verdict["holds"] = fine.min_eigenvalue >= -tol;
  } else if (o.check == "decay") {
    const Lattice lat(o.box, o.grid_n);
    const DecayCheck chk =
        decay_bound_check(MomentumBump::stock(), o.s_cutoff, lat, o.order);
    verdict = {{"inequality", "decay"},
               {"holds", chk.holds},
               {"min_margin", chk.min_margin},
               {"slope", chk.slope},
               {"order_n", chk.order_n},
               {"config", {{"s", o.s_cutoff}, {"grid_n", o.grid_n}, {"box", o.box}}}};
  } else {
    throw domain_error("kernels-verify: check must be dyson, hole or decay");
  }
  out << "check=" << o.check << " holds=" << (verdict["holds"].get<bool>() ? 1 : 0)
      << "\n";
  if (!o.out_path.empty()) write_atomic(o.out_path, verdict.dump(2) + "\n");
  return verdict["holds"].get<bool>() ? 0 : 2;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"dilute Bose gas thermodynamics toolkit (units: hbar = 2m = 1)"};
  app.require_subcommand(1);

  // scattering
  auto* sc = app.add_subcommand("scattering", "scattering length of a potential");
  std::string sc_pot, sc_method = "ode", sc_out;
  double sc_rmax = 0.0, sc_R = 0.0;
  int sc_steps = 512, sc_mesh = 4096;
  sc->add_option("--potential", sc_pot, "JSON potential spec")->required();
  sc->add_option("--method", sc_method, "ode | variational");
  sc->add_option("--r-max", sc_rmax, "ode integration end (default 5 max(R0,1))");
  sc->add_option("--steps", sc_steps, "ode profile samples");
  sc->add_option("--R", sc_R, "variational sphere radius");
  sc->add_option("--mesh", sc_mesh, "variational radial mesh");
  sc->add_option("--out", sc_out, "write solution JSON here");

  // truncate
  auto* tr = app.add_subcommand("truncate", "cap the r^2 moment at 2 phi");
  std::string tr_pot, tr_out;
  double tr_phi = 0.0;
  tr->add_option("--potential", tr_pot, "JSON potential spec")->required();
  tr->add_option("--phi", tr_phi, "budget scale phi")->required();
  tr->add_option("--out", tr_out, "write truncated potential JSON here");

  // ideal
  auto* id = app.add_subcommand("ideal", "ideal Bose gas table over a rho grid");
  double id_beta = 1.0, id_cv = 0.0;
  std::string id_grid, id_out, id_fmt = "csv";
  id->add_option("--beta", id_beta, "inverse temperature")->required();
  id->add_option("--rho-grid", id_grid, "lo:hi:count (linear)")->required();
  id->add_option("--cv-step", id_cv, "specific-heat T step");
  id->add_option("--out", id_out, "output path (stdout if omitted)");
  id->add_option("--format", id_fmt, "csv | json");

  // bound
  auto* bd = app.add_subcommand("bound", "free-energy lower bound report");
  double bd_a = 0.0, bd_beta = 0.0, bd_rho = 0.0, bd_delta = 1e-4;
  double bd_A = 4.0 / 403.0, bd_B = 2.0 / 403.0;
  std::string bd_out;
  bd->add_option("--a", bd_a, "scattering length")->required();
  bd->add_option("--beta", bd_beta, "inverse temperature")->required();
  bd->add_option("--rho", bd_rho, "density")->required();
  bd->add_option("--delta", bd_delta, "exponent slack delta");
  bd->add_option("--A", bd_A, "phi exponent A in [4/403, 79/403]");
  bd->add_option("--B", bd_B, "C exponent B in [2/403, 161/403]");
  bd->add_option("--out", bd_out, "write report JSON here");

  // sweep
  auto* sw = app.add_subcommand("sweep", "bound sweep over x = a rho^2 beta^{5/2}");
  std::string sw_grid, sw_out;
  double sw_beta = 1.0, sw_rho = 1.0, sw_delta = 1e-4;
  int sw_jobs = jobs_from_env();
  sw->add_option("--x-grid", sw_grid, "lo:hi:count (log spacing)")->required();
  sw->add_option("--beta", sw_beta, "inverse temperature");
  sw->add_option("--rho", sw_rho, "density");
  sw->add_option("--delta", sw_delta, "exponent slack delta");
  sw->add_option("--jobs", sw_jobs, "worker threads (env BOSE_THERMO_JOBS)");
  sw->add_option("--out", sw_out, "output CSV path");

  // kernels-verify
  auto* kv = app.add_subcommand("kernels-verify", "discretized inequality checks");
  KernelsOpts ko;
  kv->add_option("--check", ko.check, "dyson | hole | decay")->required();
  kv->add_option("--grid-n", ko.grid_n, "lattice points per axis");
  kv->add_option("--box", ko.box, "box side length");
  kv->add_option("--R", ko.R, "hat range R");
  kv->add_option("--r0", ko.r0, "interaction range R0 (hole: well radius)");
  kv->add_option("--phi", ko.phi, "truncation budget phi");
  kv->add_option("--eps", ko.eps, "Dyson epsilon");
  kv->add_option("--s-cutoff", ko.s_cutoff, "momentum cutoff scale s");
  kv->add_option("--scatterers", ko.scatterers, "number of scatterers");
  kv->add_option("--seed", ko.seed, "scatterer placement seed");
  kv->add_option("--u-choice", ko.u_choice, "hat | hat_with_hole");
  kv->add_flag("--allow-coarse", ko.allow_coarse, "skip the 4-cell resolution check");
  kv->add_option("--lambda", ko.lambda, "hole-lemma well strength");
  kv->add_option("--mesh", ko.mesh, "hole-lemma radial mesh");
  kv->add_option("--order", ko.order, "decay-lemma n in {0..3}");
  kv->add_option("--dump-fields", ko.dump_prefix, "dump h/fR/wR with this prefix");
  kv->add_option("--out", ko.out_path, "write verdict JSON here");

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return 0;
    }
    err << e.what() << "\n";
    return 1;
  }

  try {
    if (sc->parsed())
      return cmd_scattering(sc_pot, sc_method, sc_rmax, sc_steps, sc_R, sc_mesh,
                            sc_out, out);
    if (tr->parsed()) return cmd_truncate(tr_pot, tr_phi, tr_out, out);
    if (id->parsed())
      return cmd_ideal(id_beta, id_grid, id_cv, id_out, id_fmt, out);
    if (bd->parsed())
      return cmd_bound(bd_a, bd_beta, bd_rho, bd_delta, bd_A, bd_B, bd_out, out);
    if (sw->parsed())
      return cmd_sweep(sw_grid, sw_beta, sw_rho, sw_delta, sw_jobs, sw_out, out);
    if (kv->parsed()) return cmd_kernels(ko, out);
  } catch (const domain_error& e) {
    err << "domain error: " << e.what() << "\n";
    return 1;
  } catch (const nlohmann::json::exception& e) {
    err << "input error: " << e.what() << "\n";
    return 1;
  } catch (const numerical_error& e) {
    err << "numerical error: " << e.what() << "\n";
    return 2;
  }
  err << "no subcommand\n";
  return 1;
}

}  // namespace bose::cli
