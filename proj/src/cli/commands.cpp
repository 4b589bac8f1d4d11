#include "pwk/cli/commands.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "pwk/cli/svg.hpp"
#include "pwk/field/sigma.hpp"
#include "pwk/flow/unfolding.hpp"
#include "pwk/lyapunov/certificates.hpp"
#include "pwk/lyapunov/closed_forms.hpp"
#include "pwk/lyapunov/expansion.hpp"

namespace pwk::cli {

namespace fs = std::filesystem;
using algebra::ExactScalar;
using field::Point;
using flow::fmt_double;

namespace {

flow::FlowOptions flow_options(const RunConfig& c) {
  flow::FlowOptions f;
  f.int_tol = c.int_tol;
  f.loc_tol = c.loc_tol;
  return f;
}

flow::CycleSearchOptions search_options(const RunConfig& c) {
  flow::CycleSearchOptions o;
  o.map.flow.int_tol = c.int_tol;
  o.map.flow.loc_tol = c.loc_tol;
  o.cycle_tol = c.cycle_tol;
  o.grid_n = c.grid_n;
  o.r_min = c.r_min;
  o.r_max = c.r_max;
  o.noise_floor = 10.0 * c.int_tol;
  return o;
}

Point focus_of(const field::Scenario& sc) {
  if (!sc.focus) throw ConfigError("scenario '" + sc.name + "' has no monodromic point to expand around");
  return *sc.focus;
}

fs::path out_path(const RunConfig& c, const std::string& file) {
  fs::path dir(c.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + c.out_dir + "': " + ec.message());
  return dir / file;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw ConfigError("cannot write '" + p.string() + "'");
  f << text;
}

std::string point_str(const Point& p) { return "(" + p.x.to_string() + ", " + p.y.to_string() + ")"; }

std::string indent(std::string s) {
  for (std::size_t i = s.find('\n'); i != std::string::npos; i = s.find('\n', i + 1)) s.insert(i + 1, "    ");
  return s;
}

void describe(const field::Scenario& sc, std::ostream& out) {
  out << "scenario: " << sc.name << "\n";
  out << "  " << sc.description << "\n";
  if (sc.system.is_smooth()) {
    out << "  smooth: " << indent(sc.system.z1().to_string()) << "\n";
  } else {
    out << "  sigma: x = " << sc.system.sigma_x().to_string() << "\n";
    out << "  zone 1 (x < sigma): " << indent(sc.system.z1().to_string()) << "\n";
    out << "  zone 2 (x > sigma): " << indent(sc.system.z2().to_string()) << "\n";
  }
}

void print_cycles(const std::vector<flow::CrossingLimitCycle>& cycles, std::ostream& out) {
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    const auto& c = cycles[i];
    out << "  cycle " << i + 1 << ": u* = " << fmt_double(c.u_star) << "  amplitude = " << fmt_double(c.amplitude)
        << "  period = " << fmt_double(c.period) << "  residual = " << fmt_double(c.residual) << "  "
        << flow::to_string(c.stability) << "\n";
  }
}

std::string residual_poly(const std::vector<ExactScalar>& v) {
  std::string s;
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (v[j].is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += "(" + v[j].to_string() + ")*u^" + std::to_string(j);
  }
  return s.empty() ? "0" : s;
}

struct Verdicts {
  int pass = 0;
  int fail = 0;
  void line(std::ostream& out, bool ok, const std::string& what) {
    (ok ? pass : fail)++;
    out << (ok ? "PASS " : "FAIL ") << what << "\n";
  }
};

void report_darboux(std::ostream& out, Verdicts& v, const std::string& name, const lyap::DarbouxCheck& chk) {
  v.line(out, chk.ok, name);
  if (!chk.ok) {
    out << "  first-integral residual: " << chk.integral_residual.to_string() << "\n";
    out << "  integrating-factor residual: " << chk.factor_residual.to_string() << "\n";
  }
}

}  // namespace

int cmd_lyapunov(const RunConfig& cfg, std::ostream& out) {
  validate(cfg);
  field::Scenario sc = resolve_scenario(cfg);
  const Point p = focus_of(sc);
  describe(sc, out);
  out << "focus: " << point_str(p) << "\n";
  out << "order: " << cfg.order << "\n";
  const bool smooth = sc.system.is_smooth();
  const bool weak = sc.system.z1().jacobian(p).trace().is_zero() && sc.system.z2().jacobian(p).trace().is_zero();
  if (!weak) {
    double v1 = smooth ? lyap::first_lyapunov_smooth(lyap::linear_tau(sc.system.z1(), p))
                       : lyap::first_lyapunov_piecewise(sc.system, p);
    out << "V1 ~ " << fmt_double(v1) << "\n";
    out << "higher quantities need zero trace at the focus\n";
    return kComputationFailure;
  }
  lyap::LyapunovExpansion V =
      smooth ? lyap::smooth_lyapunov(sc.system.z1(), p, cfg.order) : lyap::piecewise_lyapunov(sc.system, p, cfg.order);
  out << "mode: " << (smooth ? "smooth displacement map" : "piecewise difference map") << "\n";
  out << "V1 = 0 ~ 0\n";
  for (int k = 2; k <= cfg.order; ++k) {
    out << "V" << k << " = " << V[k].to_string() << " ~ " << fmt_double(V[k].to_double()) << "\n";
  }
  if (auto j = V.first_nonzero()) {
    out << "first nonzero: V" << *j << " (" << (V[*j].sign() > 0 ? "unstable" : "stable") << ")\n";
  } else {
    out << "first nonzero: none up to order " << cfg.order << "\n";
  }
  return kOk;
}

int cmd_cycles(const RunConfig& cfg, std::ostream& out) {
  validate(cfg);
  field::Scenario sc = resolve_scenario(cfg);
  const Point p = focus_of(sc);
  if (!(p.x == sc.system.sigma_x())) throw ConfigError("the focus does not lie on the separation line");
  describe(sc, out);
  flow::CycleSearchOptions search = search_options(cfg);
  std::vector<flow::CrossingLimitCycle> cycles;
  int code = kOk;

  if (cfg.unfold > 0) {
    if (!sc.family) throw ConfigError("--unfold needs a scenario built from the weak-focus family");
    flow::ExperimentOptions eo;
    eo.stages = cfg.unfold;
    eo.eps1 = ExactScalar::parse(cfg.eps1);
    eo.eps2 = ExactScalar::parse(cfg.eps2);
    eo.eps3 = ExactScalar::parse(cfg.eps3);
    eo.eps3_sign = cfg.eps3_sign;
    eo.max_retries = cfg.max_retries;
    eo.search = search;
    auto show = [&](const flow::ExperimentResult& r) {
      for (const auto& s : r.stages) {
        out << "stage " << s.stage << ": " << (s.ok ? "ok" : "failed");
        if (!s.used.empty()) out << ", applied " << s.used;
        out << ", tried";
        for (const auto& t : s.tried) out << ' ' << t;
        if (s.tried.empty()) out << " nothing";
        out << ", sign changes " << s.sign_changes << ", cycles " << s.cycles;
        if (!s.note.empty()) out << " (" << s.note << ")";
        out << "\n";
      }
    };
    try {
      flow::ExperimentResult r = flow::three_cycle_experiment(*sc.family, eo);
      show(r);
      cycles = r.scan.cycles;
    } catch (const flow::StageFailure& f) {
      show(f.partial);
      out << "stage " << f.stage << " failed after trying";
      for (const auto& t : f.tried) out << ' ' << t;
      out << ": " << f.what() << "\n";
      cycles = f.partial.scan.cycles;
      code = kComputationFailure;
    }
  } else {
    flow::CycleScan scan = flow::find_crossing_cycles(flow::NumericSystem(sc.system), p.y.to_double(), search);
    if (!scan.unresolved.empty()) {
      out << scan.unresolved.size() << " sign change(s) could not be refined to the cycle tolerance\n";
      code = kComputationFailure;
    }
    cycles = scan.cycles;
  }
  std::ostringstream csv;
  flow::write_cycles_csv(csv, cycles);
  const fs::path path = out_path(cfg, "cycles.csv");
  write_file(path, csv.str());
  print_cycles(cycles, out);
  out << cycles.size() << " crossing limit cycles found\n";
  out << "table: " << path.string() << "\n";
  return code;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out) {
  validate(cfg);
  field::Scenario sc = resolve_scenario(cfg);
  flow::State x0;
  if (cfg.start) {
    x0 = *cfg.start;
  } else if (!sc.seeds.empty()) {
    x0 = sc.seeds.front();
  } else {
    throw ConfigError("no start point: give --start x,y");
  }
  const double T = cfg.time.value_or(sc.portrait_time);
  flow::FlowOptions fo = flow_options(cfg);
  if (cfg.bbox) fo.box = {(*cfg.bbox)[0], (*cfg.bbox)[1], (*cfg.bbox)[2], (*cfg.bbox)[3]};
  flow::Trajectory tr = flow::integrate(flow::NumericSystem(sc.system), x0, T, fo);
  std::ostringstream csv;
  flow::write_trajectory_csv(csv, tr);
  const fs::path path = out_path(cfg, "trajectory.csv");
  write_file(path, csv.str());
  out << "scenario: " << sc.name << "\n";
  out << "start: " << fmt_double(x0[0]) << ", " << fmt_double(x0[1]) << "  time: " << fmt_double(T) << "\n";
  out << "samples: " << tr.samples.size() << "  sigma events: " << tr.events.size() << "\n";
  for (const auto& e : tr.events) {
    out << "  t = " << fmt_double(e.t) << "  y = " << fmt_double(e.y) << "  " << flow::to_string(e.kind)
        << "  residual " << fmt_double(e.residual) << "\n";
  }
  if (!tr.samples.empty()) {
    const auto& l = tr.samples.back();
    out << "end: t = " << fmt_double(l.t) << "  (" << fmt_double(l.x) << ", " << fmt_double(l.y) << ") "
        << flow::to_string(l.zone) << "\n";
  }
  if (tr.left_first_quadrant) out << "warning: orbit left the first quadrant\n";
  if (tr.left_box) out << "note: orbit left the bounding box\n";
  out << "trajectory: " << path.string() << "\n";
  if (tr.aborted) {
    out << "aborted: " << tr.diagnostic << "\n";
    return kComputationFailure;
  }
  return kOk;
}

int cmd_portrait(const RunConfig& cfg, std::ostream& out) {
  validate(cfg);
  field::Scenario sc = resolve_scenario(cfg);
  if (sc.seeds.empty()) throw InvalidArgument("no seed points: nothing to draw, no file written");
  const double T = cfg.time.value_or(sc.portrait_time);
  flow::FlowOptions fo = flow_options(cfg);
  const auto& b = sc.bbox;
  const double mx = 0.25 * (b[1] - b[0]);
  const double my = 0.25 * (b[3] - b[2]);
  fo.box = {b[0] - mx, b[1] + mx, b[2] - my, b[3] + my};
  const flow::NumericSystem ns(sc.system);
  std::vector<flow::Trajectory> orbits;
  for (const auto& s : sc.seeds) {
    orbits.push_back(flow::integrate(ns, s, T, fo));
    if (!orbits.back().diagnostic.empty()) out << "seed (" << fmt_double(s[0]) << ", " << fmt_double(s[1])
                                                << "): " << orbits.back().diagnostic << "\n";
  }
  const std::string svg = render_portrait(sc, orbits);
  const fs::path path = out_path(cfg, "portrait.svg");
  write_file(path, svg);
  out << "scenario: " << sc.name << "\n";
  out << "orbits: " << orbits.size() << "  time: " << fmt_double(T) << "\n";
  out << "portrait: " << path.string() << "\n";
  return kOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  validate(cfg);
  field::Scenario sc = resolve_scenario(cfg);
  describe(sc, out);
  Verdicts v;
  // The corruption goes to the most specific check available.
  enum class Target { None, Zone, Sigma, Continuity };
  Target target = Target::None;
  if (cfg.corrupt) {
    target = Target::Zone;
    if (sc.family && !sc.system.is_smooth()) {
      const auto& fm = *sc.family;
      if (fm.z1.model == field::ZoneModel::Competition && fm.z2.model == field::ZoneModel::Facilitation &&
          fm.z1.knobs.t.is_zero() && fm.z2.knobs.t.is_zero() &&
          lyap::hat_v2(fm.z1.k, fm.z1.n, fm.z1.e, fm.z2.k, fm.z2.n, fm.z2.e).is_zero() &&
          lyap::hat_v3(fm.z2.k, fm.z2.n, fm.z2.e).is_zero()) {
        target = Target::Sigma;
      } else if (flow::continuity_residual(sc.system).zero()) {
        target = Target::Continuity;
      }
    }
  }
  bool corrupt_pending = cfg.corrupt;
  auto maybe_corrupt = [&](lyap::DarbouxCertificate& c) {
    if (!corrupt_pending || target != Target::Zone) return;
    c.A.add_term(0, 0, ExactScalar(1));
    corrupt_pending = false;
    out << "(certificate corrupted: constant term of A shifted by 1)\n";
  };

  if (sc.family) {
    const auto& fam = *sc.family;
    const bool smooth = sc.system.is_smooth();
    for (int z = 1; z <= (smooth ? 1 : 2); ++z) {
      const field::ZoneSpec& spec = z == 1 ? fam.z1 : fam.z2;
      const auto& zone = sc.system.zone(z);
      const std::string tag = smooth ? "field" : "zone " + std::to_string(z);
      if (!spec.knobs.t.is_zero() || !(spec.knobs.a == ExactScalar(1))) {
        out << "SKIP " << tag << ": trace or determinant knob set, no center certificate\n";
        continue;
      }
      if (spec.model == field::ZoneModel::Competition) {
        auto cert = lyap::competition_center_certificate(spec.k, spec.n, spec.e);
        maybe_corrupt(cert);
        report_darboux(out, v, tag + " competition Darboux first integral", lyap::verify_darboux(zone, cert));
      } else if (lyap::hat_v3(spec.k, spec.n, spec.e).is_zero()) {
        auto cert = lyap::facilitation_center_certificate(spec.k, spec.n);
        maybe_corrupt(cert);
        report_darboux(out, v, tag + " facilitation Darboux first integral", lyap::verify_darboux(zone, cert));
      } else {
        out << "SKIP " << tag << ": facilitation center polynomial is nonzero ("
            << lyap::hat_v3(spec.k, spec.n, spec.e).to_string() << "), weak focus\n";
      }
    }
    if (!smooth && fam.z1.model == field::ZoneModel::Competition && fam.z2.model == field::ZoneModel::Facilitation &&
        fam.z1.knobs.t.is_zero() && fam.z2.knobs.t.is_zero()) {
      const ExactScalar h2 = lyap::hat_v2(fam.z1.k, fam.z1.n, fam.z1.e, fam.z2.k, fam.z2.n, fam.z2.e);
      const ExactScalar h3 = lyap::hat_v3(fam.z2.k, fam.z2.n, fam.z2.e);
      if (h2.is_zero() && h3.is_zero()) {
        auto cert = lyap::piecewise_center_certificate(fam.z1.k, fam.z1.n, fam.z2.k, fam.z2.n);
        if (corrupt_pending && target == Target::Sigma) {
          cert.zone1.A.add_term(0, 0, ExactScalar(1));
          corrupt_pending = false;
          out << "(certificate corrupted: constant term of A1 shifted by 1)\n";
        }
        auto chk = lyap::verify_sigma_center(sc.system, cert);
        v.line(out, chk.ok, "sigma-center certificate");
        if (!chk.ok) {
          out << "  " << chk.failure << "\n";
          out << "  zone 1 first-integral residual: " << chk.zone1.integral_residual.to_string() << "\n";
          out << "  zone 2 first-integral residual: " << chk.zone2.integral_residual.to_string() << "\n";
          out << "  restriction residual 1: " << residual_poly(chk.restriction1_residual) << "\n";
          out << "  restriction residual 2: " << residual_poly(chk.restriction2_residual) << "\n";
        }
      } else {
        out << "SKIP sigma-center certificate: H2 = " << h2.to_string() << ", H3 = " << h3.to_string() << "\n";
      }
    }
  }

  if (!sc.system.is_smooth()) {
    field::PiecewiseKolmogorovSystem sys = sc.system;
    if (flow::continuity_residual(sys).zero()) {
      if (corrupt_pending && target == Target::Continuity) {
        field::WeakFocusFamily fam = *sc.family;
        fam.z1.e = fam.z1.e + ExactScalar::rational(1, 1000);
        sys = field::build_family(fam);
        corrupt_pending = false;
        out << "(system corrupted: e1 shifted by 1/1000)\n";
      }
      flow::ContinuityResidual r = flow::continuity_residual(sys);
      v.line(out, r.zero(), "continuity identity Z1 = Z2 on sigma");
      if (!r.zero()) out << "  " << r.to_string() << "\n";
      if (sc.family) {
        auto bad = flow::continuity_set_violations(field::zone_params(sc.family->z1), field::zone_params(sc.family->z2));
        std::string list;
        for (const auto& b : bad) list += " [" + b + "]";
        v.line(out, bad.empty(), "continuous-family equations" + (bad.empty() ? std::string() : ":" + list));
      }
    }
    if (sc.focus && sc.focus->x == sys.sigma_x()) {
      const bool clean = flow::verify_no_sliding_near(sys, sc.focus->y, ExactScalar::rational(1, 10));
      out << "INFO sigma near the focus (window 1/10): "
          << (clean ? "crossing only" : "sliding or escaping points present") << "\n";
    }
  }
  if (corrupt_pending) out << "note: no certificate available to corrupt\n";
  if (v.pass + v.fail == 0) out << "no certificate applies\n";
  out << v.pass << " passed, " << v.fail << " failed\n";
  return v.fail == 0 ? kOk : kComputationFailure;
}

int run(const std::string& command, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (command == "lyapunov") return cmd_lyapunov(cfg, out);
    if (command == "cycles") return cmd_cycles(cfg, out);
    if (command == "portrait") return cmd_portrait(cfg, out);
    if (command == "verify") return cmd_verify(cfg, out);
    if (command == "simulate") return cmd_simulate(cfg, out);
    err << "unknown command '" << command << "'\n";
    return kConfigError;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const FieldMismatch& e) {
    err << "field-extension mismatch: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kComputationFailure;
  }
}

}  // namespace pwk::cli
