#include "covert/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <tuple>

#include "covert/catching.hpp"
#include "covert/channel.hpp"
#include "covert/csv.hpp"
#include "covert/geometry.hpp"
#include "covert/params.hpp"
#include "covert/simulator.hpp"
#include "covert/splitting.hpp"
#include "covert/verify.hpp"

namespace covert::cli {

namespace {

using geometry::RepresentativeMode;

const std::vector<double> kPowerGridW = {0.1, 0.5, 1.0, 1.5, 2.0};
const std::vector<double> kMessageGrid = {300, 400, 500, 600, 700};
const std::vector<double> kSideGrid = {800, 1000, 1200, 1400, 1600};
const std::vector<double> kCase1MessageGrid = {300, 400, 500, 600};
const std::vector<double> kCase2MessageGrid = {300, 600, 900, 1200};
const std::vector<double> kLambdaGrid = {0.01, 0.04, 0.06, 0.1};

struct Options {
  std::string config_path;
  std::vector<std::string> sets;
  std::uint64_t seed = 7;
  long long trials = -1;  // < 0: subcommand default
  std::string out_dir;
  std::string mode = "paper-literal";
  bool random_phase = false;
  bool per_symbol = false;
  unsigned threads = 0;
  double rate = 0.0;  // > 0 overrides the Monte-Carlo average rate
  std::uint64_t rate_trials = 1000000;
  int window = 10;
  int l_max = -1;
  int n_max = -1;
  int mc_l_max = 20;
  int mc_stride = 5;
  int points = 201;
  bool verbose = false;
};

struct Context {
  Options opt;
  ScenarioConfig cfg;
  RepresentativeMode mode = RepresentativeMode::kPaperLiteral;
  std::map<std::tuple<double, double, double, double, double, double, double>, double> rates;

  std::uint64_t trials_or(std::uint64_t fallback) const {
    return opt.trials < 0 ? fallback : static_cast<std::uint64_t>(opt.trials);
  }

  sim::SimOptions sim_options() const {
    sim::SimOptions so;
    so.threads = opt.threads;
    so.random_phase = opt.random_phase;
    so.per_symbol = opt.per_symbol;
    return so;
  }

  // R-bar depends only on the Alice->satellite link.
  double rate_for(const ScenarioConfig& c) {
    if (opt.rate > 0.0) return opt.rate;
    const auto key = std::make_tuple(c.p_a_dbw, c.g_a_db, c.g_b_db, c.k0, c.sigma_b_dbm, c.d_ab, c.alpha_los);
    if (auto it = rates.find(key); it != rates.end()) return it->second;
    const double r = channel::average_rate(c, opt.rate_trials, opt.seed, opt.threads).mean_rate;
    rates.emplace(key, r);
    return r;
  }

  void stamp(CsvTable& t, const ScenarioConfig& c, std::uint64_t trials) const {
    t.add_meta("seed", std::to_string(opt.seed));
    t.add_meta("trials", std::to_string(trials));
    t.add_meta("config_hash", config_hash_hex(c));
    t.add_meta("mode", std::string(geometry::mode_name(mode)));
    t.add_meta("rate_trials", opt.rate > 0.0 ? std::string("override") : std::to_string(opt.rate_trials));
    if (opt.random_phase) t.add_meta("random_phase", "1");
    if (opt.per_symbol) t.add_meta("per_symbol", "1");
  }
};

using Tables = std::vector<CsvTable>;

void emit(const Tables& tables, const Options& opt, std::ostream& out, std::ostream& err) {
  if (opt.out_dir.empty()) {
    for (std::size_t i = 0; i < tables.size(); ++i) {
      if (i) out << '\n';
      out << tables[i].render();
    }
    return;
  }
  std::filesystem::create_directories(opt.out_dir);
  for (const auto& t : tables) {
    const auto path = std::filesystem::path(opt.out_dir) / (t.name() + ".csv");
    t.write(path);
    err << "wrote " << path.string() << '\n';
  }
}

ScenarioConfig with_power_w(ScenarioConfig c, double watts) {
  c.p_a_dbw = linear_to_db(watts);
  return c;
}

// ---------------------------------------------------------------------------

Tables cmd_rate(Context& ctx) {
  const std::uint64_t trials = ctx.trials_or(1000000);
  const auto est = channel::average_rate(ctx.cfg, trials, ctx.opt.seed, ctx.opt.threads);
  CsvTable t("rate", {"mean_rate", "std_error", "trials", "seed", "degenerate"});
  t.add_row({fmt_num(est.mean_rate), fmt_num(est.std_error), std::to_string(est.trials),
             std::to_string(est.seed), est.degenerate ? "1" : "0"});
  t.add_meta("seed", std::to_string(ctx.opt.seed));
  t.add_meta("trials", std::to_string(trials));
  t.add_meta("config_hash", config_hash_hex(ctx.cfg));
  t.add_meta("units", "bits_per_symbol_log2");
  return {t};
}

Tables cmd_distlaw(Context& ctx) {
  const geometry::DistanceLaw law(ctx.cfg.u);
  const int points = std::max(2, ctx.opt.points);
  CsvTable t("distlaw", {"d", "pdf", "cdf", "partial_moment"});
  for (int k = 0; k < points; ++k) {
    const double d = k == points - 1 ? law.max_distance() : law.max_distance() * k / (points - 1);
    t.add_row({fmt_num(d), fmt_num(law.pdf(d)), fmt_num(law.cdf(d)), fmt_num(law.partial_first_moment(d))});
  }
  t.add_meta("config_hash", config_hash_hex(ctx.cfg));
  t.add_meta("u", fmt_num(ctx.cfg.u));
  return {t};
}

int default_l_max(const Context& ctx, const ScenarioConfig& c) {
  return std::min(ctx.opt.l_max > 0 ? ctx.opt.l_max : 100, c.m_bits);
}

bool on_stride(int index_from_one, int stride) {
  return stride <= 1 || (index_from_one - 1) % stride == 0;
}

Tables cmd_sweep_window(Context& ctx) {
  const std::uint64_t trials = ctx.trials_or(0);
  const double r_bar = ctx.rate_for(ctx.cfg);
  const int l_max = default_l_max(ctx, ctx.cfg);
  CsvTable t("sweep_window", {"L", "p_ca", "ci", "source"});
  CsvTable strata("sweep_window_strata",
                  {"L", "s", "d1", "d2", "p_dis", "d_bar", "d_slant", "p_md", "p_catch_given_s"});
  for (int l = 1; l <= l_max; ++l) {
    const auto b = catching::catch_probability(l, ctx.cfg, r_bar, ctx.mode);
    t.add_row({std::to_string(l), fmt_num(b.p_ca), "0", "analytic"});
    for (const auto& s : b.strata) {
      strata.add_row({std::to_string(l), std::to_string(s.s), fmt_num(s.d1), fmt_num(s.d2),
                      fmt_num(s.p_dis), fmt_num(s.d_bar), fmt_num(s.d_slant), fmt_num(s.p_md),
                      fmt_num(s.p_catch_given_s)});
    }
  }
  if (trials > 0) {
    for (int l = 1; l <= l_max; ++l) {
      if (!on_stride(l, ctx.opt.mc_stride)) continue;
      const auto e = sim::estimate_catch(ctx.cfg, l, ctx.cfg.m_bits, r_bar, trials, ctx.opt.seed, ctx.sim_options());
      t.add_row({std::to_string(l), fmt_num(e.p_hat), fmt_num(e.ci_halfwidth), "mc"});
    }
  }
  ctx.stamp(t, ctx.cfg, trials);
  t.add_meta("r_bar", fmt_num(r_bar));
  Tables out{t};
  if (ctx.opt.verbose) {
    ctx.stamp(strata, ctx.cfg, trials);
    strata.add_meta("r_bar", fmt_num(r_bar));
    out.push_back(std::move(strata));
  }
  return out;
}

Tables cmd_optimize_window(Context& ctx) {
  const double r_bar = ctx.rate_for(ctx.cfg);
  const int l_max = default_l_max(ctx, ctx.cfg);
  const auto best = catching::optimal_window(ctx.cfg, r_bar, l_max, ctx.mode, ctx.opt.threads);
  CsvTable opt("optimize_window", {"l_star", "p_ca_star", "l_max"});
  opt.add_row({std::to_string(best.l_star), fmt_num(best.p_ca_star), std::to_string(l_max)});
  CsvTable scan("optimize_window_scan", {"L", "p_ca"});
  for (const auto& p : best.scan) scan.add_row({std::to_string(p.l), fmt_num(p.p_ca)});
  for (auto* t : {&opt, &scan}) {
    ctx.stamp(*t, ctx.cfg, 0);
    t->add_meta("r_bar", fmt_num(r_bar));
  }
  return {opt, scan};
}

int default_n_max(const Context& ctx, int fallback, int m_bits) {
  return std::min(ctx.opt.n_max > 0 ? ctx.opt.n_max : fallback, m_bits);
}

Tables cmd_sweep_chunks(Context& ctx) {
  const std::uint64_t trials = ctx.trials_or(0);
  const double r_bar = ctx.rate_for(ctx.cfg);
  const int n_max = default_n_max(ctx, 30, ctx.cfg.m_bits);
  CsvTable t("sweep_chunks", {"n", "chunk_symbols", "p_ca_chunk", "p_as", "p_ov", "ci", "source"});
  double discrepancy = 0.0;
  for (int n = 1; n <= n_max; ++n) {
    const auto plan = splitting::overall_catch_probability(n, ctx.opt.window, ctx.cfg, r_bar, ctx.mode);
    discrepancy = std::max(discrepancy, plan.chunk_length - plan.chunk_symbols);
    t.add_row({std::to_string(n), fmt_num(plan.chunk_length), fmt_num(plan.p_ca_chunk),
               fmt_num(plan.p_as), fmt_num(plan.p_ov), "0", "analytic"});
  }
  if (trials > 0) {
    const geometry::DistanceLaw law(ctx.cfg.u);
    const double p_as = splitting::postponement_probability(ctx.cfg.r_a_proj, law);
    for (int n = 1; n <= n_max; ++n) {
      if (!on_stride(n, ctx.opt.mc_stride)) continue;
      const auto e = sim::estimate_overall_catch(ctx.cfg, n, ctx.opt.window, r_bar, trials, ctx.opt.seed, ctx.sim_options());
      const auto c = sim::estimate_catch(ctx.cfg, ctx.opt.window, ctx.cfg.m_bits / n, r_bar, trials, ctx.opt.seed, ctx.sim_options());
      t.add_row({std::to_string(n), std::to_string(ctx.cfg.m_bits / n), fmt_num(c.p_hat), fmt_num(p_as),
                 fmt_num(e.p_hat), fmt_num(e.ci_halfwidth), "mc"});
    }
  }
  ctx.stamp(t, ctx.cfg, trials);
  t.add_meta("r_bar", fmt_num(r_bar));
  t.add_meta("window", std::to_string(ctx.opt.window));
  t.add_meta("max_chunk_rounding_symbols", fmt_num(discrepancy));
  return {t};
}

Tables cmd_optimize_chunks(Context& ctx) {
  const double r_bar = ctx.rate_for(ctx.cfg);
  const int n_max = default_n_max(ctx, 30, ctx.cfg.m_bits);
  const auto best = splitting::optimal_chunks(ctx.cfg, ctx.opt.window, r_bar, n_max, ctx.mode, ctx.opt.threads);
  const auto bounds = splitting::stability_bound(ctx.cfg.lambda_per_min, ctx.cfg.t_c_minutes);
  CsvTable opt("optimize_chunks", {"n_star", "p_ov_star", "n_max", "stability_paper_literal", "stability_utilization"});
  opt.add_row({std::to_string(best.n_star), fmt_num(best.p_ov_star), std::to_string(n_max),
               std::to_string(bounds.paper_literal), std::to_string(bounds.utilization)});
  CsvTable scan("optimize_chunks_scan", {"n", "p_ca_chunk", "p_ov"});
  for (const auto& p : best.scan) scan.add_row({std::to_string(p.n), fmt_num(p.p_ca_chunk), fmt_num(p.p_ov)});
  for (auto* t : {&opt, &scan}) {
    ctx.stamp(*t, ctx.cfg, 0);
    t->add_meta("r_bar", fmt_num(r_bar));
    t->add_meta("window", std::to_string(ctx.opt.window));
  }
  return {opt, scan};
}

void add_case_rows(Context& ctx, CsvTable& t, sim::CaseKind kind, const ScenarioConfig& c,
                   const std::string& parameter, const std::string& value, int n_max,
                   std::uint64_t trials) {
  const double r_bar = ctx.rate_for(c);
  for (int n = 1; n <= std::min(n_max, c.m_bits); ++n) {
    const auto st = sim::run_case(kind, c, n, ctx.opt.window, r_bar, trials, ctx.opt.seed, ctx.sim_options());
    std::vector<std::string> row;
    if (!parameter.empty()) {
      row.push_back(parameter);
      row.push_back(value);
    }
    for (auto cell : {std::to_string(n), fmt_num(st.mean_covert), fmt_num(st.ci_halfwidth),
                      fmt_num(st.mean_caught), fmt_num(st.mean_slots_used), std::string("mc")}) {
      row.push_back(std::move(cell));
    }
    t.add_row(std::move(row));
  }
}

std::uint64_t case_trials(const Context& ctx) {
  const std::uint64_t trials = ctx.trials_or(10000);
  if (trials < 1) throw std::invalid_argument("case studies need --trials >= 1");
  return trials;
}

Tables cmd_case(Context& ctx, sim::CaseKind kind) {
  const std::uint64_t trials = case_trials(ctx);
  const std::string name = kind == sim::CaseKind::kStopOnCatch ? "case1" : "case2";
  CsvTable t(name, {"n", "covert_messages", "ci", "mean_caught", "mean_slots_used", "source"});
  add_case_rows(ctx, t, kind, ctx.cfg, "", "", default_n_max(ctx, 20, ctx.cfg.m_bits), trials);
  ctx.stamp(t, ctx.cfg, trials);
  t.add_meta("window", std::to_string(ctx.opt.window));
  t.add_meta("r_bar", fmt_num(ctx.rate_for(ctx.cfg)));
  return {t};
}

Tables cmd_verify(Context& ctx) {
  verify::Options vo;
  vo.trials = ctx.trials_or(100000);
  if (vo.trials < 100) throw std::invalid_argument("verify needs --trials >= 100");
  vo.seed = ctx.opt.seed;
  vo.threads = ctx.opt.threads;
  vo.rate_trials = ctx.opt.rate_trials;
  vo.r_bar = ctx.rate_for(ctx.cfg);
  vo.chunk_window = ctx.opt.window;
  CsvTable t = verify::to_table(verify::run(ctx.cfg, vo));
  ctx.stamp(t, ctx.cfg, vo.trials);
  t.add_meta("r_bar", fmt_num(vo.r_bar));
  return {t};
}

// ---------------------------------------------------------------------------
// Figure panels: one table per swept parameter.

struct Panel {
  std::string name;       // table suffix
  std::string parameter;  // column value
  std::vector<double> grid;
  std::function<ScenarioConfig(ScenarioConfig, double)> apply;
};

std::vector<Panel> window_panels() {
  return {
      {"pa", "p_a_w", kPowerGridW, [](ScenarioConfig c, double v) { return with_power_w(c, v); }},
      {"m", "m_bits", kMessageGrid, [](ScenarioConfig c, double v) { c.m_bits = static_cast<int>(v); return c; }},
      {"u", "u", kSideGrid, [](ScenarioConfig c, double v) { c.u = v; return c; }},
  };
}

ScenarioConfig checked(ScenarioConfig c) {
  validate(c);
  return c;
}

Tables cmd_fig3(Context& ctx) {
  const std::uint64_t trials = ctx.trials_or(0);
  Tables out;
  for (const auto& panel : window_panels()) {
    CsvTable t("fig3_" + panel.name, {"parameter", "value", "L", "p_ca", "ci", "source"});
    for (double v : panel.grid) {
      const ScenarioConfig c = checked(panel.apply(ctx.cfg, v));
      const double r_bar = ctx.rate_for(c);
      const int l_max = default_l_max(ctx, c);
      for (int l = 1; l <= l_max; ++l) {
        const double p = catching::catch_probability(l, c, r_bar, ctx.mode).p_ca;
        t.add_row({panel.parameter, fmt_num(v), std::to_string(l), fmt_num(p), "0", "analytic"});
      }
      if (trials == 0) continue;
      for (int l = 1; l <= l_max; ++l) {
        if (!on_stride(l, ctx.opt.mc_stride)) continue;
        const auto e = sim::estimate_catch(c, l, c.m_bits, r_bar, trials, ctx.opt.seed, ctx.sim_options());
        t.add_row({panel.parameter, fmt_num(v), std::to_string(l), fmt_num(e.p_hat), fmt_num(e.ci_halfwidth), "mc"});
      }
    }
    ctx.stamp(t, ctx.cfg, trials);
    out.push_back(std::move(t));
  }
  return out;
}

Tables cmd_fig4(Context& ctx) {
  const std::uint64_t trials = ctx.trials_or(0);
  Tables out;
  for (const auto& panel : window_panels()) {
    CsvTable t("fig4_" + panel.name, {"parameter", "value", "l_star", "p_ca_star", "ci", "source"});
    for (double v : panel.grid) {
      const ScenarioConfig c = checked(panel.apply(ctx.cfg, v));
      const double r_bar = ctx.rate_for(c);
      const auto best = catching::optimal_window(c, r_bar, default_l_max(ctx, c), ctx.mode, ctx.opt.threads);
      t.add_row({panel.parameter, fmt_num(v), std::to_string(best.l_star), fmt_num(best.p_ca_star), "0", "analytic"});
      if (trials == 0) continue;
      int l_best = 1;
      sim::ProportionEstimate e_best;
      for (int l = 1; l <= std::min(ctx.opt.mc_l_max, c.m_bits); ++l) {
        const auto e = sim::estimate_catch(c, l, c.m_bits, r_bar, trials, ctx.opt.seed, ctx.sim_options());
        if (l == 1 || e.p_hat > e_best.p_hat) {
          l_best = l;
          e_best = e;
        }
      }
      t.add_row({panel.parameter, fmt_num(v), std::to_string(l_best), fmt_num(e_best.p_hat),
                 fmt_num(e_best.ci_halfwidth), "mc"});
    }
    ctx.stamp(t, ctx.cfg, trials);
    t.add_meta("mc_l_max", std::to_string(ctx.opt.mc_l_max));
    out.push_back(std::move(t));
  }
  return out;
}

Tables cmd_fig5(Context& ctx) {
  const std::uint64_t trials = ctx.trials_or(0);
  Tables out;
  for (const auto& panel : window_panels()) {
    CsvTable t("fig5_" + panel.name, {"parameter", "value", "n", "p_ov", "ci", "source"});
    for (double v : panel.grid) {
      const ScenarioConfig c = checked(panel.apply(ctx.cfg, v));
      const double r_bar = ctx.rate_for(c);
      const int n_max = default_n_max(ctx, 30, c.m_bits);
      for (int n = 1; n <= n_max; ++n) {
        const auto plan = splitting::overall_catch_probability(n, ctx.opt.window, c, r_bar, ctx.mode);
        t.add_row({panel.parameter, fmt_num(v), std::to_string(n), fmt_num(plan.p_ov), "0", "analytic"});
      }
      if (trials == 0) continue;
      for (int n = 1; n <= n_max; ++n) {
        if (!on_stride(n, ctx.opt.mc_stride)) continue;
        const auto e = sim::estimate_overall_catch(c, n, ctx.opt.window, r_bar, trials, ctx.opt.seed, ctx.sim_options());
        t.add_row({panel.parameter, fmt_num(v), std::to_string(n), fmt_num(e.p_hat), fmt_num(e.ci_halfwidth), "mc"});
      }
    }
    ctx.stamp(t, ctx.cfg, trials);
    t.add_meta("window", std::to_string(ctx.opt.window));
    out.push_back(std::move(t));
  }
  return out;
}

Tables case_figure(Context& ctx, sim::CaseKind kind, const std::string& prefix, ScenarioConfig base,
                   const std::vector<double>& message_grid) {
  const std::uint64_t trials = case_trials(ctx);
  const int n_max = ctx.opt.n_max > 0 ? ctx.opt.n_max : 20;
  const std::vector<std::string> cols = {"parameter", "value", "n", "covert_messages", "ci",
                                         "mean_caught", "mean_slots_used", "source"};
  CsvTable by_m(prefix + "_m", cols);
  for (double m : message_grid) {
    ScenarioConfig c = base;
    c.m_bits = static_cast<int>(m);
    add_case_rows(ctx, by_m, kind, checked(c), "m_bits", fmt_num(m), n_max, trials);
  }
  CsvTable by_lambda(prefix + "_lambda", cols);
  for (double lambda : kLambdaGrid) {
    ScenarioConfig c = base;
    c.lambda_per_min = lambda;
    add_case_rows(ctx, by_lambda, kind, checked(c), "lambda_per_min", fmt_num(lambda), n_max, trials);
  }
  for (auto* t : {&by_m, &by_lambda}) {
    ctx.stamp(*t, base, trials);
    t->add_meta("window", std::to_string(ctx.opt.window));
  }
  return {by_m, by_lambda};
}

Tables cmd_fig6(Context& ctx) {
  ScenarioConfig base = ctx.cfg;
  base.r_w_proj = 120.0;
  return case_figure(ctx, sim::CaseKind::kStopOnCatch, "fig6", checked(base), kCase1MessageGrid);
}

Tables cmd_fig7(Context& ctx) {
  ScenarioConfig base = ctx.cfg;
  base.m_bits = 900;
  return case_figure(ctx, sim::CaseKind::kVoidMessage, "fig7", checked(base), kCase2MessageGrid);
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--config", o.config_path, "Scenario config file (YAML key/value)");
  sub->add_option("--set", o.sets, "Override a config field, key=value (repeatable)")->take_all();
  sub->add_option("--seed", o.seed, "Random seed");
  sub->add_option("--trials", o.trials, "Monte-Carlo trials (0: analytic only where allowed)");
  sub->add_option("--out", o.out_dir, "Directory for <table>.csv outputs (default: stdout)");
  sub->add_option("--mode", o.mode, "Representative distance: paper-literal | conditional-mean")
      ->check(CLI::IsMember({"paper-literal", "conditional-mean"}));
  sub->add_flag("--random-phase", o.random_phase, "Randomize the phase of Willie's first attempt");
  sub->add_flag("--per-symbol", o.per_symbol, "Simulate window energies symbol by symbol");
  sub->add_option("--threads", o.threads, "Worker threads (0: all cores)");
  sub->add_option("--rate", o.rate, "Use this average rate (symbols/s) instead of estimating it");
  sub->add_option("--rate-trials", o.rate_trials, "Monte-Carlo trials for the average rate");
  sub->add_option("--window", o.window, "Detection window L for chunk and case-study commands")
      ->check(CLI::PositiveNumber);
  sub->add_option("--l-max", o.l_max, "Largest detection window in window scans");
  sub->add_option("--n-max", o.n_max, "Largest chunk count in chunk scans");
  sub->add_option("--mc-stride", o.mc_stride, "Simulate every k-th grid point for MC overlays");
  sub->add_option("--mc-l-max", o.mc_l_max, "Largest L in the fig4 Monte-Carlo search");
  sub->add_option("--points", o.points, "Grid points for distlaw");
  sub->add_flag("--verbose", o.verbose, "Also emit per-stratum breakdowns");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Covert LEO-uplink / UAV-warden scenario simulator", "covertsim"};
  app.require_subcommand(1);
  Options opt;

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"rate", "Monte-Carlo average Alice->satellite rate"},
      {"distlaw", "Projected-distance law table (d, pdf, cdf, partial moment)"},
      {"sweep-window", "Catch probability versus detection window L"},
      {"optimize-window", "Optimal detection window by exhaustive scan"},
      {"sweep-chunks", "Overall catch probability versus chunk count n"},
      {"optimize-chunks", "Optimal chunk count by exhaustive scan"},
      {"case1", "Case study 1: a catch ends covert operation"},
      {"case2", "Case study 2: a catch voids only the current message"},
      {"verify", "Analytic versus Monte-Carlo verification report"},
      {"fig3", "P_ca vs L panels over P_a, M, u"},
      {"fig4", "L* and P_ca* over P_a, M, u"},
      {"fig5", "P_ov vs n panels over P_a, M, u"},
      {"fig6", "Case 1 covert messages vs n (r_w' = 120 m)"},
      {"fig7", "Case 2 covert messages vs n (M = 900)"},
  };
  for (const auto& [name, desc] : commands) add_common(app.add_subcommand(name, desc), opt);

  std::vector<const char*> argv{"covertsim"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  Context ctx;
  ctx.opt = opt;
  try {
    ctx.cfg = opt.config_path.empty() ? table1_defaults() : load_config_file(opt.config_path);
    for (const auto& s : opt.sets) apply_override(ctx.cfg, s);
    validate(ctx.cfg);
    ctx.mode = geometry::parse_mode(opt.mode);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  }

  try {
    Tables tables;
    if (command == "rate") tables = cmd_rate(ctx);
    else if (command == "distlaw") tables = cmd_distlaw(ctx);
    else if (command == "sweep-window") tables = cmd_sweep_window(ctx);
    else if (command == "optimize-window") tables = cmd_optimize_window(ctx);
    else if (command == "sweep-chunks") tables = cmd_sweep_chunks(ctx);
    else if (command == "optimize-chunks") tables = cmd_optimize_chunks(ctx);
    else if (command == "case1") tables = cmd_case(ctx, sim::CaseKind::kStopOnCatch);
    else if (command == "case2") tables = cmd_case(ctx, sim::CaseKind::kVoidMessage);
    else if (command == "verify") tables = cmd_verify(ctx);
    else if (command == "fig3") tables = cmd_fig3(ctx);
    else if (command == "fig4") tables = cmd_fig4(ctx);
    else if (command == "fig5") tables = cmd_fig5(ctx);
    else if (command == "fig6") tables = cmd_fig6(ctx);
    else if (command == "fig7") tables = cmd_fig7(ctx);
    emit(tables, ctx.opt, out, err);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kModelError;
  }
  return kOk;
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace covert::cli
