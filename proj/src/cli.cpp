#include "colombeau/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <utility>

#include "CLI11.hpp"

#include "colombeau/config.hpp"
#include "colombeau/errors.hpp"
#include "colombeau/parser.hpp"
#include "colombeau/report.hpp"
#include "colombeau/seminorm.hpp"
#include "colombeau/version.hpp"

namespace colombeau {
namespace cli {

namespace {

using report::DocParts;
using report::Json;

struct CommonArgs {
  std::string config_path;
  std::vector<std::pair<std::string, std::string>> overrides;
};

void add_common(CLI::App* cmd, CommonArgs& c) {
  cmd->add_option("--config", c.config_path,
                  "config file (default: $COLOMBEAU_CONFIG if set)");
  static const struct {
    const char* flag;
    const char* key;
    const char* help;
  } kFlags[] = {
      {"--kernel", "kernel", "model | logdamped | scaled-aq"},
      {"--mollifier", "mollifier", "base | skew"},
      {"--q", "q", "moment-killing order for A_q kernels (0..8)"},
      {"--eps0", "eps0", "ladder start epsilon"},
      {"--ratio", "ratio", "ladder ratio in (0,1)"},
      {"--rungs", "rungs", "ladder length (>= 6)"},
      {"--quad-tol", "quad_tol", "pairing noise-floor tolerance"},
      {"--moment-tol", "moment_tol", "moment residual tolerance"},
      {"--assoc-tol", "assoc_tol", "limit mismatch tolerance"},
      {"--fit-tol", "fit_tol", "log-log RMS residual tolerance"},
      {"--rate-margin", "rate_margin", "minimum acceptable decay rate"},
      {"--pair-tol", "pair_tol", "pairing integrator absolute tolerance"},
      {"--max-depth", "max_depth", "adaptive quadrature depth limit"},
      {"--ppu", "ppu", "grid points per unit length"},
      {"--window-lo", "window_lo", "Ck comparison window lower end"},
      {"--window-hi", "window_hi", "Ck comparison window upper end"},
      {"--k-lo", "k_lo", "seminorm base region lower end"},
      {"--k-hi", "k_hi", "seminorm base region upper end"},
      {"--l-lo", "l_lo", "seminorm translation region lower end"},
      {"--l-hi", "l_hi", "seminorm translation region upper end"},
      {"--probes", "probes", "semicolon-separated probe expressions"},
      {"--memoize", "memoize", "true|false: reuse one realization per rung"},
      {"--json", "json", "also write the JSON document to this file"},
      {"--csv", "csv", "write the primary ladder as CSV to this file"},
  };
  for (const auto& f : kFlags) {
    const char* key = f.key;
    cmd->add_option_function<std::string>(
        f.flag,
        [&c, key](const std::string& v) { c.overrides.emplace_back(key, v); },
        f.help);
  }
}

RunConfig build_config(const CommonArgs& c) {
  RunConfig cfg;
  std::string path = c.config_path;
  if (path.empty()) {
    if (const char* env = std::getenv(kConfigEnvVar)) path = env;
  }
  if (!path.empty()) load_config_file(cfg, path);
  for (const auto& [key, value] : c.overrides) apply_kv(cfg, key, value);
  validate(cfg);
  return cfg;
}

Mode parse_mode(const std::string& s) {
  const std::size_t colon = s.find(':');
  const std::string head = s.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : s.substr(colon + 1);
  auto need_num = [&](const char* what) {
    if (arg.empty()) throw ConfigError("mode " + head + " needs :" + what);
    try {
      std::size_t used = 0;
      const double v = std::stod(arg, &used);
      if (used != arg.size()) throw std::invalid_argument(arg);
      return v;
    } catch (const std::exception&) {
      throw ConfigError("mode " + head + ": bad numeric argument '" + arg + "'");
    }
  };
  if (head == "plain") {
    if (!arg.empty()) throw ConfigError("mode plain takes no argument");
    return Mode::plain();
  }
  if (head == "strong") return Mode::strong(need_num("beta0"));
  if (head == "s") return Mode::s_assoc(need_num("s"));
  if (head == "ck") {
    const double v = need_num("k");
    const int k = static_cast<int>(v);
    if (k < 0 || k != v) throw ConfigError("mode ck: k must be a nonnegative integer");
    return Mode::ck(k);
  }
  throw ConfigError("unknown mode '" + s + "' (expected plain, strong:b, s:v, or ck:k)");
}

Json probe_result_json(const ProbeResult& pr, bool with_samples) {
  Json j;
  j["probe"] = pr.probe;
  j["target"] = report::jnum(pr.target);
  j["last_dev"] = report::jnum(pr.last_dev);
  if (with_samples) j["samples"] = report::samples_json(pr.report.samples);
  j["fit"] = report::fit_json(pr.report.fit);
  j["verdict"] = verdict_name(pr.report.verdict);
  return j;
}

struct CmdResult {
  DocParts parts;
  std::vector<Rung> csv_rungs;
};

CmdResult run_assoc(const RunConfig& cfg, const std::string& rep_text,
                    const std::string& cand_text, const std::string& mode_text) {
  const Representative r = lower(parse(rep_text));
  const DistSum cand = parse_candidate(cand_text);
  const Mode mode = parse_mode(mode_text);
  const AssocReport rep = assoc_test(r, make_kernel(cfg), cand, make_probes(cfg),
                                     make_ladder(cfg), mode, make_options(cfg));
  CmdResult out;
  out.parts.command = "assoc";
  out.parts.config_echo = report::config_echo_json(cfg);
  out.parts.config_echo["rep"] = rep_text;
  out.parts.config_echo["candidate"] = cand_text;
  out.parts.config_echo["mode"] = mode.describe();
  out.parts.samples = report::samples_json(rep.probes.front().report.samples);
  out.parts.fit = report::fit_json(rep.probes.front().report.fit);
  out.parts.verdict = verdict_name(rep.aggregate);
  Json details = Json::array();
  for (const ProbeResult& pr : rep.probes) details.push_back(probe_result_json(pr, true));
  out.parts.details = std::move(details);
  out.parts.thresholds = make_options(cfg).thresholds;
  out.csv_rungs = rep.probes.front().report.samples;
  return out;
}

CmdResult run_theta_e(const RunConfig& cfg, const std::string& rep_text,
                      const std::string& cand_text, const std::string& mode_text,
                      int family) {
  const Representative r = lower(parse(rep_text));
  const DistSum cand = parse_candidate(cand_text);
  const Mode mode = parse_mode(mode_text);
  const ThetaEReport rep = theta_e_test(r, cfg.q, family, cand, make_probes(cfg),
                                        make_ladder(cfg), mode, make_options(cfg));
  CmdResult out;
  out.parts.command = "theta-e";
  out.parts.config_echo = report::config_echo_json(cfg);
  out.parts.config_echo["rep"] = rep_text;
  out.parts.config_echo["candidate"] = cand_text;
  out.parts.config_echo["mode"] = mode.describe();
  out.parts.config_echo["family"] = std::to_string(family);
  const AssocReport& first = rep.rows.front().report;
  out.parts.samples = report::samples_json(first.probes.front().report.samples);
  out.parts.fit = report::fit_json(first.probes.front().report.fit);
  out.parts.verdict = verdict_name(rep.aggregate);
  out.parts.extras["evidence"] = rep.evidence;
  Json rows = Json::array();
  for (const ThetaERow& row : rep.rows) {
    Json jr;
    jr["mollifier"] = row.mollifier;
    jr["dilation"] = report::jnum(row.dilation);
    jr["verdict"] = verdict_name(row.report.aggregate);
    Json probes = Json::array();
    for (const ProbeResult& pr : row.report.probes)
      probes.push_back(probe_result_json(pr, false));
    jr["probes"] = std::move(probes);
    rows.push_back(std::move(jr));
  }
  out.parts.details = std::move(rows);
  out.parts.thresholds = make_options(cfg).thresholds;
  out.csv_rungs = first.probes.front().report.samples;
  return out;
}

CmdResult run_rate(const RunConfig& cfg, const std::string& rep_text,
                   const std::string& probe_text) {
  const Representative r = lower(parse(rep_text));
  const SmoothExpr probe = lower_smooth(parse(probe_text));
  const AssocOptions opts = make_options(cfg);
  const std::vector<Rung> rungs =
      ladder_eval(r, make_kernel(cfg), probe, make_ladder(cfg), opts.quad);
  const FitResult fit =
      fit_rate(rungs, std::nullopt, opts.thresholds, 10.0 * opts.thresholds.quad_tol);
  CmdResult out;
  out.parts.command = "rate";
  out.parts.config_echo = report::config_echo_json(cfg);
  out.parts.config_echo["rep"] = rep_text;
  out.parts.config_echo["probe"] = probe_text;
  out.parts.samples = report::samples_json(rungs);
  out.parts.fit = report::fit_json(fit);
  out.parts.verdict = "ok";
  out.parts.thresholds = opts.thresholds;
  out.csv_rungs = rungs;
  return out;
}

CmdResult run_norm_scan(const RunConfig& cfg, const std::string& which, int m, int l, int c,
                        const std::string& members_text) {
  const KernelSpec spec = make_kernel(cfg);
  const Ladder lad = make_ladder(cfg);
  lad.validate(spec);
  const AssocOptions opts = make_options(cfg);
  FunctionFamily B;
  if (which == "gap") {
    std::string item;
    std::stringstream ss(members_text);
    while (std::getline(ss, item, ';')) {
      if (item.find_first_not_of(" \t") == std::string::npos) continue;
      B.members.push_back({lower_smooth(parse(item)), item});
    }
    if (B.members.empty()) throw ConfigError("norm-scan --norm gap needs --members");
    B.validate();
  } else if (which != "kernel") {
    throw ConfigError("norm-scan --norm must be kernel or gap");
  }
  std::vector<Rung> rungs;
  for (const double eps : lad.epsilons()) {
    const double v = which == "kernel"
                         ? norm_kernel(spec, eps, opts.K, m, opts.L, l, opts.grid)
                         : norm_gap(spec, eps, opts.K, c, B, opts.grid, opts.quad);
    rungs.push_back({eps, v, true});
  }
  const FitResult fit = fit_rate(rungs, 0.0, opts.thresholds, 0.0);
  CmdResult out;
  out.parts.command = "norm-scan";
  out.parts.config_echo = report::config_echo_json(cfg);
  out.parts.config_echo["norm"] = which;
  if (which == "kernel") {
    out.parts.config_echo["m"] = std::to_string(m);
    out.parts.config_echo["l"] = std::to_string(l);
  } else {
    out.parts.config_echo["c"] = std::to_string(c);
    out.parts.config_echo["members"] = members_text;
  }
  out.parts.samples = report::samples_json(rungs);
  out.parts.fit = report::fit_json(fit);
  out.parts.verdict = "ok";
  out.parts.thresholds = opts.thresholds;
  out.csv_rungs = rungs;
  return out;
}

CmdResult run_moments(const RunConfig& cfg) {
  const Mollifier m = make_mollifier_choice(cfg);
  const std::vector<double> mu = moments(m, cfg.q);
  std::vector<Rung> rows;
  for (std::size_t j = 0; j < mu.size(); ++j)
    rows.push_back({static_cast<double>(j), mu[j], true});
  CmdResult out;
  out.parts.command = "moments";
  out.parts.config_echo = report::config_echo_json(cfg);
  out.parts.config_echo["moments_of"] = m.name;
  out.parts.samples = report::samples_json(rows);
  out.parts.verdict = "ok";
  out.parts.extras["note"] = "samples eps column holds the moment index";
  out.parts.thresholds = make_options(cfg).thresholds;
  out.csv_rungs = rows;
  return out;
}

CmdResult run_synth_aq(const RunConfig& cfg) {
  const Mollifier base = cfg.mollifier == "skew" ? skew_bump() : base_bump();
  const Mollifier aq = synth_Aq(base, cfg.q);
  const std::vector<double> mu = moments(aq, cfg.q + 1);
  std::vector<Rung> rows;
  for (std::size_t j = 0; j < mu.size(); ++j)
    rows.push_back({static_cast<double>(j), mu[j], true});
  CmdResult out;
  out.parts.command = "synth-aq";
  out.parts.config_echo = report::config_echo_json(cfg);
  out.parts.samples = report::samples_json(rows);
  out.parts.verdict = "ok";
  out.parts.extras["note"] = "samples eps column holds the moment index";
  Json d;
  d["name"] = aq.name;
  d["support_lo"] = report::jnum(aq.support.lo);
  d["support_hi"] = report::jnum(aq.support.hi);
  d["symmetric"] = aq.symmetric;
  out.parts.details = std::move(d);
  out.parts.thresholds = make_options(cfg).thresholds;
  out.csv_rungs = rows;
  return out;
}

CmdResult run_gap(const RunConfig& cfg, int a, int b, int c, int l, bool empirical,
                  double lambda_c) {
  GapParams p{a, b, c, l, cfg.q};
  p.validate();
  const GapAnalysis an = gap_analysis(p);
  CmdResult out;
  out.parts.command = "gap";
  out.parts.config_echo = report::config_echo_json(cfg);
  out.parts.config_echo["a"] = std::to_string(a);
  out.parts.config_echo["b"] = std::to_string(b);
  out.parts.config_echo["c"] = std::to_string(c);
  out.parts.config_echo["l"] = std::to_string(l);
  out.parts.verdict = gap_conclusion_name(an.conclusion);
  out.parts.extras["score"] = an.score;
  out.parts.extras["conclusion"] = gap_conclusion_name(an.conclusion);
  if (empirical) {
    const GapReport rep = gap_empirical(p, lambda_c, make_ladder(cfg), make_options(cfg));
    out.parts.samples = report::samples_json(rep.bound.samples);
    out.parts.fit = report::fit_json(rep.bound.fit);
    Json d;
    d["lambda_c"] = report::jnum(rep.lambda_c);
    d["bound_verdict"] = verdict_name(rep.bound.verdict);
    d["empirical_decays"] = rep.empirical_decays;
    d["slope_ok"] = rep.slope_ok;
    out.parts.details = std::move(d);
    out.csv_rungs = rep.bound.samples;
  }
  out.parts.thresholds = make_options(cfg).thresholds;
  return out;
}

CmdResult run_pair(const RunConfig& cfg, const std::string& rep_text,
                   const std::string& probe_text, double eps) {
  const Representative r = lower(parse(rep_text));
  const SmoothExpr probe = lower_smooth(parse(probe_text));
  const AssocOptions opts = make_options(cfg);
  const double value = theta_pairing(r, make_kernel(cfg), eps, probe, opts.quad);
  CmdResult out;
  out.parts.command = "pair";
  out.parts.config_echo = report::config_echo_json(cfg);
  out.parts.config_echo["rep"] = rep_text;
  out.parts.config_echo["probe"] = probe_text;
  out.parts.samples = report::samples_json({Rung{eps, value, true}});
  out.parts.verdict = "ok";
  out.parts.thresholds = opts.thresholds;
  out.csv_rungs = {Rung{eps, value, true}};
  return out;
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"association toolkit for mollified generalized functions"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  CommonArgs common;

  std::string rep_text, cand_text = "0", mode_text = "plain", probe_text = "bump(x)";
  int family = 3;
  std::string norm_which = "kernel", members_text = "x";
  int nm = 0, nl = 0, nc = 0;
  int ga = 1, gb = 1, gc = 0, gl = 0;
  bool empirical = false;
  double lambda_c = 1.0, pair_eps = 0.0625;

  CLI::App* c_assoc = app.add_subcommand("assoc", "association test against a candidate");
  c_assoc->add_option("--rep", rep_text, "representative expression")->required();
  c_assoc->add_option("--candidate", cand_text, "candidate distribution (default 0)");
  c_assoc->add_option("--mode", mode_text, "plain | strong:b | s:v | ck:k");
  add_common(c_assoc, common);

  CLI::App* c_theta = app.add_subcommand("theta-e", "association across an A_q mollifier family");
  c_theta->add_option("--rep", rep_text, "representative expression")->required();
  c_theta->add_option("--candidate", cand_text, "candidate distribution (default 0)");
  c_theta->add_option("--mode", mode_text, "plain | strong:b | s:v | ck:k");
  c_theta->add_option("--family", family, "number of mollifiers in the family");
  add_common(c_theta, common);

  CLI::App* c_rate = app.add_subcommand("rate", "candidate-free convergence rate fit");
  c_rate->add_option("--rep", rep_text, "representative expression")->required();
  c_rate->add_option("--probe", probe_text, "probe expression (default bump(x))");
  add_common(c_rate, common);

  CLI::App* c_norm = app.add_subcommand("norm-scan", "seminorm ladder scan");
  c_norm->add_option("--norm", norm_which, "kernel | gap");
  c_norm->add_option("--m", nm, "x-derivative order (kernel norm)");
  c_norm->add_option("--l", nl, "y-derivative order (kernel norm)");
  c_norm->add_option("--c", nc, "derivative order (gap norm)");
  c_norm->add_option("--members", members_text, "semicolon-separated gap-norm members");
  add_common(c_norm, common);

  CLI::App* c_mom = app.add_subcommand("moments", "moments of the selected mollifier");
  add_common(c_mom, common);

  CLI::App* c_synth = app.add_subcommand("synth-aq", "synthesize an A_q mollifier");
  add_common(c_synth, common);

  CLI::App* c_gap = app.add_subcommand("gap", "seminorm-gap score analysis");
  c_gap->add_option("--a", ga, "kernel-norm exponent (>= 1)");
  c_gap->add_option("--b", gb, "gap-norm exponent (>= 1)");
  c_gap->add_option("--c", gc, "gap derivative order");
  c_gap->add_option("--l", gl, "kernel translation order");
  c_gap->add_flag("--empirical", empirical, "also evaluate the bound down the ladder");
  c_gap->add_option("--lambda-c", lambda_c, "bound constant (default 1)");
  add_common(c_gap, common);

  CLI::App* c_pair = app.add_subcommand("pair", "single pairing at one epsilon");
  c_pair->add_option("--rep", rep_text, "representative expression")->required();
  c_pair->add_option("--probe", probe_text, "probe expression (default bump(x))");
  c_pair->add_option("--eps", pair_eps, "scale parameter");
  add_common(c_pair, common);

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    const RunConfig cfg = build_config(common);
    CmdResult res;
    if (c_assoc->parsed())
      res = run_assoc(cfg, rep_text, cand_text, mode_text);
    else if (c_theta->parsed())
      res = run_theta_e(cfg, rep_text, cand_text, mode_text, family);
    else if (c_rate->parsed())
      res = run_rate(cfg, rep_text, probe_text);
    else if (c_norm->parsed())
      res = run_norm_scan(cfg, norm_which, nm, nl, nc, members_text);
    else if (c_mom->parsed())
      res = run_moments(cfg);
    else if (c_synth->parsed())
      res = run_synth_aq(cfg);
    else if (c_gap->parsed())
      res = run_gap(cfg, ga, gb, gc, gl, empirical, lambda_c);
    else
      res = run_pair(cfg, rep_text, probe_text, pair_eps);

    const Json doc = report::assemble(res.parts);
    const std::string text = report::to_text(doc);
    out << text;
    if (!cfg.json_path.empty()) {
      std::ofstream f(cfg.json_path);
      if (!f) throw ConfigError("cannot write JSON file '" + cfg.json_path + "'");
      f << text;
    }
    if (!cfg.csv_path.empty()) {
      std::ofstream f(cfg.csv_path);
      if (!f) throw ConfigError("cannot write CSV file '" + cfg.csv_path + "'");
      f << report::csv_text(res.csv_rungs);
    }
    return report::exit_code_for(res.parts.verdict);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace cli
}  // namespace colombeau
