#include "colombeau/assoc.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>

#include "colombeau/errors.hpp"

namespace colombeau {

namespace {

constexpr double kDivergenceSlope = -0.1;

std::string probe_label(const ProbeFamily& probes, std::size_t i) {
  if (i < probes.names.size()) return probes.names[i];
  return "probe" + std::to_string(i);
}

double candidate_deriv(const DistSum& candidate, double x, int j) {
  double v = 0.0;
  for (const WeightedDist& t : candidate.terms) {
    v += t.weight * t.dist.eval_derivative(x, j);
  }
  return v;
}

struct UsableView {
  std::vector<double> eps;
  std::vector<double> value;
};

UsableView usable_rungs(const std::vector<Rung>& samples) {
  UsableView u;
  for (const Rung& r : samples) {
    if (r.ok && std::isfinite(r.value)) {
      u.eps.push_back(r.eps);
      u.value.push_back(r.value);
    }
  }
  return u;
}

bool diverging(const UsableView& u, const FitResult& fit) {
  const std::size_t n = u.value.size();
  if (n < 5) return false;
  for (std::size_t i = n - 4; i < n; ++i) {
    if (!(std::abs(u.value[i]) > std::abs(u.value[i - 1]))) return false;
  }
  return fit.rate <= kDivergenceSlope;
}

// Deviations that decay faster than any power (tail probes see e^{-c/eps})
// defeat a log-log fit, but once the last three usable rungs sit below the
// noise floor the limit is settled at floor precision.
bool tail_converged(const UsableView& u, double limit, double floor) {
  const std::size_t n = u.value.size();
  if (n < 3) return false;
  for (std::size_t i = n - 3; i < n; ++i) {
    if (std::abs(u.value[i] - limit) > floor) return false;
  }
  return true;
}

Verdict decide(const UsableView& u, const FitResult& fit, double last_dev, const Thresholds& th,
               double extra_rate_req, double floor) {
  if (diverging(u, fit)) return Verdict::NotAssociated;
  const bool settled = fit.all_below_floor || tail_converged(u, fit.limit_est, floor);
  bool pass = settled ||
              (last_dev <= th.assoc_tol && fit.residual <= th.fit_tol && fit.rate >= th.rate_margin);
  if (pass && !settled && !(fit.rate >= extra_rate_req)) pass = false;
  return pass ? Verdict::Associated : Verdict::Inconclusive;
}

double mode_rate_requirement(const Mode& mode, const Thresholds& th) {
  switch (mode.kind) {
    case Mode::Kind::Strong:
      return mode.beta0;
    case Mode::Kind::SAssoc:
      return mode.s + th.rate_margin;
    default:
      return -std::numeric_limits<double>::infinity();
  }
}

Verdict combine(Verdict acc, Verdict v) {
  if (acc == Verdict::Inconclusive || v == Verdict::Inconclusive) return Verdict::Inconclusive;
  if (acc == Verdict::NotAssociated || v == Verdict::NotAssociated) return Verdict::NotAssociated;
  return Verdict::Associated;
}

Verdict aggregate_of(const std::vector<ProbeResult>& probes) {
  Verdict acc = Verdict::Associated;
  for (const ProbeResult& p : probes) acc = combine(acc, p.report.verdict);
  return acc;
}

}  // namespace

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Associated:
      return "associated";
    case Verdict::NotAssociated:
      return "not_associated";
    case Verdict::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

const char* gap_conclusion_name(GapConclusion c) {
  return c == GapConclusion::Decays ? "decays" : "cannot_conclude";
}

Mode Mode::plain() { return Mode{}; }

Mode Mode::strong(double beta0) {
  Mode m;
  m.kind = Kind::Strong;
  m.beta0 = beta0;
  return m;
}

Mode Mode::s_assoc(double s) {
  Mode m;
  m.kind = Kind::SAssoc;
  m.s = s;
  return m;
}

Mode Mode::ck(int k) {
  if (k < 0) throw std::invalid_argument("Mode::ck: k must be >= 0");
  Mode m;
  m.kind = Kind::Ck;
  m.k = k;
  return m;
}

std::string Mode::describe() const {
  switch (kind) {
    case Kind::Plain:
      return "plain";
    case Kind::Strong:
      return "strong:" + format_double(beta0);
    case Kind::SAssoc:
      return "s:" + format_double(s);
    case Kind::Ck:
      return "ck:" + std::to_string(k);
  }
  return "?";
}

std::vector<double> Ladder::epsilons() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(std::max(0, count)));
  double e = eps0;
  for (int k = 0; k < count; ++k) {
    out.push_back(e);
    e *= ratio;
  }
  return out;
}

void Ladder::validate(const KernelSpec& spec) const {
  if (count < 6) throw std::invalid_argument("Ladder: count must be >= 6");
  if (!std::isfinite(eps0) || !std::isfinite(ratio)) {
    throw std::invalid_argument("Ladder: eps0 and ratio must be finite");
  }
  if (!(ratio > 0.0) || !(ratio < 1.0)) {
    throw std::invalid_argument("Ladder: ratio must lie in (0, 1)");
  }
  const double top = spec.max_eps();
  for (double e : epsilons()) {
    if (!(e > 0.0) || e > top) {
      throw BadEpsilon("Ladder: eps " + format_double(e) + " outside (0, " + format_double(top) +
                       "] for kernel " + kernel_kind_name(spec.kind));
    }
  }
}

std::vector<Rung> ladder_eval(const Representative& r, const KernelSpec& spec,
                              const SmoothExpr& psi, const Ladder& lad, const QuadConfig& cfg) {
  lad.validate(spec);
  std::vector<Rung> out;
  for (double eps : lad.epsilons()) {
    Rung rung{eps, 0.0, true};
    try {
      rung.value = theta_pairing(r, spec, eps, psi, cfg);
    } catch (const DepthExceeded&) {
      rung.ok = false;
      rung.value = std::numeric_limits<double>::quiet_NaN();
    } catch (const BadEpsilon&) {
      rung.ok = false;
      rung.value = std::numeric_limits<double>::quiet_NaN();
    }
    out.push_back(rung);
  }
  return out;
}

FitResult fit_rate(const std::vector<Rung>& samples, std::optional<double> limit_hint,
                   const Thresholds& th, std::optional<double> noise_floor) {
  const UsableView u = usable_rungs(samples);
  const std::size_t n = u.value.size();
  if (n < 4) throw TooFewPoints("fit_rate: need at least 4 usable rungs, got " + std::to_string(n));

  FitResult fit;
  if (limit_hint) {
    fit.limit_est = *limit_hint;
  } else {
    const double v0 = u.value[n - 3], v1 = u.value[n - 2], v2 = u.value[n - 1];
    const double denom = v2 - 2.0 * v1 + v0;
    if (std::abs(denom) <= 1e-14 * (std::abs(v0) + std::abs(v1) + std::abs(v2))) {
      fit.limit_est = v2;
    } else {
      fit.limit_est = v2 - (v2 - v1) * (v2 - v1) / denom;
    }
  }

  const double floor = noise_floor ? *noise_floor : 10.0 * th.quad_tol;
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = std::abs(u.value[i] - fit.limit_est);
    if (d > floor) {
      lx.push_back(std::log(u.eps[i]));
      ly.push_back(std::log(d));
    }
  }
  fit.used = static_cast<int>(lx.size());
  if (lx.size() <= 1) {
    fit.all_below_floor = true;
    fit.rate = std::numeric_limits<double>::infinity();
    fit.residual = 0.0;
    return fit;
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  const double m = static_cast<double>(lx.size());
  const double det = m * sxx - sx * sx;
  fit.rate = (m * sxy - sx * sy) / det;
  const double intercept = (sy - fit.rate * sx) / m;
  double rss = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const double e = ly[i] - (fit.rate * lx[i] + intercept);
    rss += e * e;
  }
  fit.residual = std::sqrt(rss / m);
  return fit;
}

namespace {

LadderReport report_from(std::vector<Rung> rungs, const FitResult& fit, const Thresholds& th,
                         double extra_rate_req, double* last_dev_out, double floor) {
  LadderReport rep;
  rep.samples = std::move(rungs);
  rep.fit = fit;
  const UsableView u = usable_rungs(rep.samples);
  const double last_dev = u.value.empty() ? 0.0 : std::abs(u.value.back() - fit.limit_est);
  if (last_dev_out) *last_dev_out = last_dev;
  rep.verdict = decide(u, fit, last_dev, th, extra_rate_req, floor);
  return rep;
}

AssocReport assoc_test_ck(const Representative& r, const KernelSpec& spec,
                          const DistSum& candidate, const Ladder& lad, const Mode& mode,
                          const AssocOptions& opts) {
  for (const WeightedDist& t : candidate.terms) {
    if (t.dist.kind() != DistKind::PiecewisePoly) {
      throw CandidateNotCk("ck mode: candidate term " + t.dist.describe() +
                           " is not a piecewise polynomial");
    }
    if (!t.dist.is_ck_on(opts.window, mode.k)) {
      throw CandidateNotCk("ck mode: candidate term " + t.dist.describe() + " is not C^" +
                           std::to_string(mode.k) + " on the window");
    }
  }
  const std::vector<double> xs = grid_nodes(opts.window, opts.grid);
  QuadConfig inner = opts.quad;
  inner.abs_tol *= 1e-3;

  std::vector<Rung> rungs;
  for (double eps : lad.epsilons()) {
    Rung rung{eps, 0.0, true};
    try {
      const SmoothExpr realized = realize(r, spec, eps, inner);
      double sup = 0.0;
      for (int j = 0; j <= mode.k; ++j) {
        const SmoothExpr dj = realized.derive_n(j);
        for (double x : xs) {
          sup = std::max(sup, std::abs(dj.eval(x) - candidate_deriv(candidate, x, j)));
        }
      }
      rung.value = sup;
    } catch (const DepthExceeded&) {
      rung.ok = false;
      rung.value = std::numeric_limits<double>::quiet_NaN();
    }
    rungs.push_back(rung);
  }

  AssocReport rep;
  rep.mode = mode;
  const FitResult fit = fit_rate(rungs, 0.0, opts.thresholds);
  ProbeResult pr;
  pr.probe = "ck-window";
  pr.target = 0.0;
  pr.report = report_from(std::move(rungs), fit, opts.thresholds,
                          -std::numeric_limits<double>::infinity(), &pr.last_dev,
                          10.0 * opts.thresholds.quad_tol);
  rep.probes.push_back(std::move(pr));
  rep.aggregate = rep.probes.front().report.verdict;
  return rep;
}

}  // namespace

AssocReport assoc_test(const Representative& r, const KernelSpec& spec, const DistSum& candidate,
                       const ProbeFamily& probes, const Ladder& lad, const Mode& mode,
                       const AssocOptions& opts) {
  lad.validate(spec);
  if (mode.kind == Mode::Kind::Ck) return assoc_test_ck(r, spec, candidate, lad, mode, opts);
  probes.validate();

  const std::size_t np = probes.probes.size();
  std::vector<std::vector<Rung>> rungs(np);
  if (opts.memoize) {
    for (std::size_t i = 0; i < np; ++i) {
      for (double eps : lad.epsilons()) rungs[i].push_back(Rung{eps, 0.0, true});
    }
    QuadConfig inner = opts.quad;
    inner.abs_tol *= 1e-3;
    const std::vector<double> eps = lad.epsilons();
    for (std::size_t k = 0; k < eps.size(); ++k) {
      try {
        const SmoothExpr realized = realize(r, spec, eps[k], inner);
        for (std::size_t i = 0; i < np; ++i) {
          rungs[i][k].value = pair_realized(realized, probes.probes[i], opts.quad);
        }
      } catch (const DepthExceeded&) {
        for (std::size_t i = 0; i < np; ++i) {
          rungs[i][k].ok = false;
          rungs[i][k].value = std::numeric_limits<double>::quiet_NaN();
        }
      }
    }
  } else {
    for (std::size_t i = 0; i < np; ++i) {
      rungs[i] = ladder_eval(r, spec, probes.probes[i], lad, opts.quad);
    }
  }

  AssocReport rep;
  rep.mode = mode;
  const double extra = mode_rate_requirement(mode, opts.thresholds);
  for (std::size_t i = 0; i < np; ++i) {
    ProbeResult pr;
    pr.probe = probe_label(probes, i);
    pr.target = pair(candidate, probes.probes[i], opts.quad);
    const FitResult fit = fit_rate(rungs[i], pr.target, opts.thresholds);
    pr.report = report_from(std::move(rungs[i]), fit, opts.thresholds, extra, &pr.last_dev,
                            10.0 * opts.thresholds.quad_tol);
    rep.probes.push_back(std::move(pr));
  }
  rep.aggregate = aggregate_of(rep.probes);
  return rep;
}

ThetaEReport theta_e_test(const Representative& r, int q, int family_size, const DistSum& candidate,
                          const ProbeFamily& probes, const Ladder& lad, const Mode& mode,
                          const AssocOptions& opts) {
  if (q < 0 || q > 8) throw std::invalid_argument("theta_e_test: q must lie in 0..8");
  if (family_size < 1) throw std::invalid_argument("theta_e_test: family_size must be >= 1");

  const Mollifier base = base_bump();
  ThetaEReport rep;
  Verdict acc = Verdict::Associated;
  for (int i = 0; i < family_size; ++i) {
    const double d = static_cast<double>(7 + 3 * i) / 10.0;
    const SmoothExpr dilated_expr = prod({constant(1.0 / d), affine(1.0 / d, 0.0, base.expr)});
    const Interval supp{base.support.lo * d, base.support.hi * d};
    const Mollifier dilated =
        make_mollifier(base.name + "~d" + format_double(d), dilated_expr, supp);
    const Mollifier aq = synth_Aq(dilated, q);
    const KernelSpec spec{KernelKind::ScaledAq, aq};

    ThetaERow row;
    row.mollifier = aq.name;
    row.dilation = d;
    row.report = assoc_test(r, spec, candidate, probes, lad, mode, opts);
    acc = combine(acc, row.report.aggregate);
    rep.rows.push_back(std::move(row));
  }
  rep.aggregate = acc;
  return rep;
}

void GapParams::validate() const {
  if (a < 1 || b < 1) throw std::invalid_argument("GapParams: a and b must be >= 1");
  if (c < 0 || l < 0 || q < 0) throw std::invalid_argument("GapParams: c, l, q must be >= 0");
  if (q > 8) throw std::invalid_argument("GapParams: q must be <= 8 (stored moment range)");
}

GapAnalysis gap_analysis(const GapParams& p) {
  p.validate();
  GapAnalysis out;
  out.score = p.a * (p.c + p.l + 1) - p.b * (p.q + 1);
  out.conclusion = out.score < 0 ? GapConclusion::Decays : GapConclusion::CannotConclude;
  return out;
}

GapReport gap_empirical(const GapParams& p, double lambda_c, const Ladder& lad,
                        const AssocOptions& opts) {
  p.validate();
  if (!std::isfinite(lambda_c) || !(lambda_c > 0.0)) {
    throw std::invalid_argument("gap_empirical: lambda_c must be positive");
  }
  const Mollifier aq = synth_Aq(skew_bump(), p.q);
  if (std::abs(aq.moment(p.q + 1)) <= opts.thresholds.moment_tol) {
    throw std::runtime_error("gap_empirical: synthesized kernel has vanishing (q+1)th moment");
  }
  const KernelSpec spec{KernelKind::ScaledAq, aq};
  lad.validate(spec);
  const FunctionFamily B{{{intpow(variable(), p.q + 1), "x^" + std::to_string(p.q + 1)}}};

  GapReport rep;
  rep.params = p;
  rep.analysis = gap_analysis(p);
  rep.lambda_c = lambda_c;

  std::vector<Rung> rungs;
  for (double eps : lad.epsilons()) {
    Rung rung{eps, 0.0, true};
    try {
      const double nk = norm_kernel(spec, eps, opts.K, p.c, opts.L, p.l, opts.grid);
      const double ng = norm_gap(spec, eps, opts.K, p.c, B, opts.grid, opts.quad);
      rung.value = lambda_c * std::pow(nk, p.a) * std::pow(ng, p.b);
    } catch (const DepthExceeded&) {
      rung.ok = false;
      rung.value = std::numeric_limits<double>::quiet_NaN();
    }
    rungs.push_back(rung);
  }

  const FitResult fit = fit_rate(rungs, 0.0, opts.thresholds, 0.0);
  double last_dev = 0.0;
  rep.bound = report_from(std::move(rungs), fit, opts.thresholds,
                          -std::numeric_limits<double>::infinity(), &last_dev, 0.0);
  rep.empirical_decays = rep.bound.verdict == Verdict::Associated;
  rep.slope_ok = std::isfinite(fit.rate) &&
                 std::abs(fit.rate - static_cast<double>(-rep.analysis.score)) <= 0.1;
  return rep;
}

}  // namespace colombeau
