#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "pwk/cli/commands.hpp"

namespace pwk::cli {

namespace {

struct Flags {
  std::string scenario, config, eps1, eps2, eps3, out, bbox, start;
  int order = 0, unfold = 0, eps3_sign = 0, max_retries = 0, grid_n = 0;
  double tol_int = 0, tol_loc = 0, tol_cycle = 0, r_min = 0, r_max = 0, time = 0;
  bool corrupt = false;
};

std::array<double, 2> parse_pair(const std::string& text) {
  auto comma = text.find(',');
  if (comma == std::string::npos) throw ConfigError("--start takes x,y");
  try {
    return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw ConfigError("bad --start value '" + text + "'");
  }
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Piecewise Kolmogorov systems: Lyapunov quantities, certificates, flows and limit cycles"};
  app.require_subcommand(1);
  Flags f;
  struct Bound {
    CLI::App* sub;
    std::map<std::string, CLI::Option*> opt;
  };
  std::vector<Bound> subs;
  const std::vector<std::pair<std::string, std::string>> names = {
      {"lyapunov", "exact Lyapunov quantities V1..VK at the focus"},
      {"cycles", "crossing limit cycles, optionally after the staged unfolding"},
      {"portrait", "SVG phase portrait"},
      {"verify", "center certificates and continuity identities"},
      {"simulate", "integrate one orbit and write it as CSV"}};
  for (const auto& [name, help] : names) {
    Bound b{app.add_subcommand(name, help), {}};
    auto* s = b.sub;
    b.opt["scenario"] = s->add_option("--scenario", f.scenario, "preset name");
    b.opt["config"] = s->add_option("--config", f.config, "JSON config file");
    b.opt["order"] = s->add_option("--order,-K", f.order, "truncation order K");
    b.opt["tol-int"] = s->add_option("--tol-int", f.tol_int, "integration tolerance");
    b.opt["tol-loc"] = s->add_option("--tol-loc", f.tol_loc, "event location tolerance");
    b.opt["tol-cycle"] = s->add_option("--tol-cycle", f.tol_cycle, "limit cycle residual tolerance");
    b.opt["unfold"] = s->add_option("--unfold", f.unfold, "number of unfolding stages (0..3)");
    b.opt["eps1"] = s->add_option("--eps1", f.eps1, "stage 1 magnitude, exact (e.g. 1/100)");
    b.opt["eps2"] = s->add_option("--eps2", f.eps2, "stage 2 magnitude");
    b.opt["eps3"] = s->add_option("--eps3", f.eps3, "stage 3 magnitude");
    b.opt["eps3-sign"] = s->add_option("--eps3-sign", f.eps3_sign, "force the homothety sign (+1 or -1)");
    b.opt["max-retries"] = s->add_option("--max-retries", f.max_retries, "back-off retries per stage");
    b.opt["grid-n"] = s->add_option("--grid-n", f.grid_n, "return-map samples");
    b.opt["r-min"] = s->add_option("--r-min", f.r_min, "smallest sampled distance from the focus");
    b.opt["r-max"] = s->add_option("--r-max", f.r_max, "largest sampled distance from the focus");
    b.opt["out"] = s->add_option("--out", f.out, "output directory");
    b.opt["bbox"] = s->add_option("--bbox", f.bbox, "x0,x1,y0,y1");
    b.opt["start"] = s->add_option("--start", f.start, "x,y start point for simulate");
    b.opt["time"] = s->add_option("--time", f.time, "integration time (negative runs backward)");
    b.opt["corrupt"] = s->add_flag("--corrupt", f.corrupt, "perturb the certificate before checking it");
    subs.push_back(std::move(b));
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  const Bound* used = nullptr;
  for (const auto& b : subs) {
    if (b.sub->parsed()) used = &b;
  }
  if (!used) return kConfigError;
  auto given = [&](const char* k) { return used->opt.at(k)->count() > 0; };

  RunConfig cfg;
  try {
    if (given("config")) cfg = load_config(f.config);
    if (given("scenario")) {
      cfg.scenario = f.scenario;
      cfg.inline_system.reset();
    }
    if (given("order")) cfg.order = f.order;
    if (given("tol-int")) cfg.int_tol = f.tol_int;
    if (given("tol-loc")) cfg.loc_tol = f.tol_loc;
    if (given("tol-cycle")) cfg.cycle_tol = f.tol_cycle;
    if (given("unfold")) cfg.unfold = f.unfold;
    if (given("eps1")) cfg.eps1 = f.eps1;
    if (given("eps2")) cfg.eps2 = f.eps2;
    if (given("eps3")) cfg.eps3 = f.eps3;
    if (given("eps3-sign")) cfg.eps3_sign = f.eps3_sign;
    if (given("max-retries")) cfg.max_retries = f.max_retries;
    if (given("grid-n")) cfg.grid_n = f.grid_n;
    if (given("r-min")) cfg.r_min = f.r_min;
    if (given("r-max")) cfg.r_max = f.r_max;
    if (given("out")) cfg.out_dir = f.out;
    if (given("bbox")) cfg.bbox = parse_bbox(f.bbox);
    if (given("start")) cfg.start = parse_pair(f.start);
    if (given("time")) cfg.time = f.time;
    if (given("corrupt")) cfg.corrupt = f.corrupt;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  }
  return run(used->sub->get_name(), cfg, out, err);
}

}  // namespace pwk::cli
