#include "colombeau/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "colombeau/errors.hpp"
#include "colombeau/parser.hpp"

namespace colombeau {

const char* kConfigEnvVar = "COLOMBEAU_CONFIG";

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size())
    throw ConfigError(key + ": expected a number, got '" + v + "'");
  return out;
}

int to_int(const std::string& key, const std::string& v) {
  int out = 0;
  auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size())
    throw ConfigError(key + ": expected an integer, got '" + v + "'");
  return out;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "on" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "off" || v == "no") return false;
  throw ConfigError(key + ": expected a boolean, got '" + v + "'");
}

}  // namespace

void apply_kv(RunConfig& cfg, const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  if (key == "kernel") {
    if (v != "model" && v != "logdamped" && v != "scaled-aq")
      throw ConfigError("kernel: expected model, logdamped, or scaled-aq, got '" + v + "'");
    cfg.kernel = v;
  } else if (key == "mollifier") {
    if (v != "base" && v != "skew")
      throw ConfigError("mollifier: expected base or skew, got '" + v + "'");
    cfg.mollifier = v;
  } else if (key == "q") {
    cfg.q = to_int(key, v);
  } else if (key == "eps0") {
    cfg.eps0 = to_double(key, v);
  } else if (key == "ratio") {
    cfg.ratio = to_double(key, v);
  } else if (key == "rungs") {
    cfg.rungs = to_int(key, v);
  } else if (key == "quad_tol") {
    cfg.quad_tol = to_double(key, v);
  } else if (key == "moment_tol") {
    cfg.moment_tol = to_double(key, v);
  } else if (key == "assoc_tol") {
    cfg.assoc_tol = to_double(key, v);
  } else if (key == "fit_tol") {
    cfg.fit_tol = to_double(key, v);
  } else if (key == "rate_margin") {
    cfg.rate_margin = to_double(key, v);
  } else if (key == "pair_tol") {
    cfg.pair_tol = to_double(key, v);
  } else if (key == "max_depth") {
    cfg.max_depth = to_int(key, v);
  } else if (key == "ppu") {
    cfg.ppu = to_int(key, v);
  } else if (key == "window_lo") {
    cfg.window_lo = to_double(key, v);
  } else if (key == "window_hi") {
    cfg.window_hi = to_double(key, v);
  } else if (key == "k_lo") {
    cfg.k_lo = to_double(key, v);
  } else if (key == "k_hi") {
    cfg.k_hi = to_double(key, v);
  } else if (key == "l_lo") {
    cfg.l_lo = to_double(key, v);
  } else if (key == "l_hi") {
    cfg.l_hi = to_double(key, v);
  } else if (key == "probes") {
    cfg.probes = v;
  } else if (key == "memoize") {
    cfg.memoize = to_bool(key, v);
  } else if (key == "json") {
    cfg.json_path = v;
  } else if (key == "csv") {
    cfg.csv_path = v;
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

void load_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const std::size_t eq = body.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (key.empty())
      throw ConfigError(path + ":" + std::to_string(lineno) + ": empty key");
    try {
      apply_kv(cfg, key, value);
    } catch (const ConfigError& e) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

void validate(const RunConfig& cfg) {
  auto positive = [](const char* name, double v) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw ConfigError(std::string(name) + " must be positive and finite");
  };
  positive("quad_tol", cfg.quad_tol);
  positive("moment_tol", cfg.moment_tol);
  positive("assoc_tol", cfg.assoc_tol);
  positive("fit_tol", cfg.fit_tol);
  positive("rate_margin", cfg.rate_margin);
  positive("pair_tol", cfg.pair_tol);
  positive("eps0", cfg.eps0);
  if (!(cfg.ratio > 0.0 && cfg.ratio < 1.0))
    throw ConfigError("ratio must lie in (0, 1)");
  if (cfg.rungs < 6) throw ConfigError("rungs must be at least 6");
  if (cfg.max_depth < 8) throw ConfigError("max_depth must be at least 8");
  if (cfg.ppu < 16) throw ConfigError("ppu must be at least 16");
  if (cfg.q < 0 || cfg.q > 8) throw ConfigError("q must lie in 0..8");
  auto interval = [](const char* name, double lo, double hi) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
      throw ConfigError(std::string(name) + " must be a finite interval with lo < hi");
  };
  interval("window", cfg.window_lo, cfg.window_hi);
  interval("K", cfg.k_lo, cfg.k_hi);
  interval("L", cfg.l_lo, cfg.l_hi);
}

Mollifier make_mollifier_choice(const RunConfig& cfg) {
  const Mollifier m = cfg.mollifier == "skew" ? skew_bump() : base_bump();
  if (cfg.kernel == "scaled-aq" && cfg.q > 0) return synth_Aq(m, cfg.q);
  return m;
}

KernelSpec make_kernel(const RunConfig& cfg) {
  KernelSpec spec;
  spec.base = make_mollifier_choice(cfg);
  if (cfg.kernel == "model")
    spec.kind = KernelKind::Model;
  else if (cfg.kernel == "logdamped")
    spec.kind = KernelKind::LogDamped;
  else
    spec.kind = KernelKind::ScaledAq;
  return spec;
}

Ladder make_ladder(const RunConfig& cfg) {
  return Ladder{cfg.eps0, cfg.ratio, cfg.rungs};
}

AssocOptions make_options(const RunConfig& cfg) {
  AssocOptions o;
  o.thresholds = Thresholds{cfg.quad_tol, cfg.moment_tol, cfg.assoc_tol, cfg.fit_tol,
                            cfg.rate_margin};
  o.quad = QuadConfig{cfg.pair_tol, cfg.max_depth};
  o.grid = GridSpec{cfg.ppu};
  o.window = Interval(cfg.window_lo, cfg.window_hi);
  o.K = Interval(cfg.k_lo, cfg.k_hi);
  o.L = Interval(cfg.l_lo, cfg.l_hi);
  o.memoize = cfg.memoize;
  return o;
}

ProbeFamily make_probes(const RunConfig& cfg) {
  if (trim(cfg.probes).empty()) return ProbeFamily::default_family();
  ProbeFamily fam;
  std::stringstream ss(cfg.probes);
  std::string item;
  while (std::getline(ss, item, ';')) {
    const std::string text = trim(item);
    if (text.empty()) continue;
    fam.probes.push_back(lower_smooth(parse(text)));
    fam.names.push_back(text);
  }
  if (fam.probes.empty()) throw ConfigError("probes: no probe expressions given");
  fam.validate();
  return fam;
}

std::vector<std::pair<std::string, std::string>> echo_pairs(const RunConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> kv;
  kv.emplace_back("kernel", cfg.kernel);
  kv.emplace_back("mollifier", cfg.mollifier);
  kv.emplace_back("q", std::to_string(cfg.q));
  kv.emplace_back("eps0", format_double(cfg.eps0));
  kv.emplace_back("ratio", format_double(cfg.ratio));
  kv.emplace_back("rungs", std::to_string(cfg.rungs));
  kv.emplace_back("quad_tol", format_double(cfg.quad_tol));
  kv.emplace_back("moment_tol", format_double(cfg.moment_tol));
  kv.emplace_back("assoc_tol", format_double(cfg.assoc_tol));
  kv.emplace_back("fit_tol", format_double(cfg.fit_tol));
  kv.emplace_back("rate_margin", format_double(cfg.rate_margin));
  kv.emplace_back("pair_tol", format_double(cfg.pair_tol));
  kv.emplace_back("max_depth", std::to_string(cfg.max_depth));
  kv.emplace_back("ppu", std::to_string(cfg.ppu));
  kv.emplace_back("window", format_double(cfg.window_lo) + ".." + format_double(cfg.window_hi));
  kv.emplace_back("K", format_double(cfg.k_lo) + ".." + format_double(cfg.k_hi));
  kv.emplace_back("L", format_double(cfg.l_lo) + ".." + format_double(cfg.l_hi));
  kv.emplace_back("probes", cfg.probes.empty() ? std::string("default") : cfg.probes);
  kv.emplace_back("memoize", cfg.memoize ? "true" : "false");
  return kv;
}

}  // namespace colombeau
