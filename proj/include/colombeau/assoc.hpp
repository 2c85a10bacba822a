#pragma once

#include <optional>
#include <string>
#include <vector>

#include "colombeau/algebra.hpp"
#include "colombeau/seminorm.hpp"

namespace colombeau {

// Decision thresholds, reported verbatim in every output so runs are
// auditable.  The divergence rule is a heuristic: the underlying theory
// offers no finite certificate of non-association.
struct Thresholds {
  double quad_tol = 1e-10;
  double moment_tol = 1e-9;
  double assoc_tol = 1e-4;
  double fit_tol = 0.15;
  double rate_margin = 0.05;
};

// Geometric epsilon ladder eps_k = eps0 * ratio^k, k = 0..count-1.
struct Ladder {
  double eps0 = 0.0625;
  double ratio = 0.5;
  int count = 11;

  std::vector<double> epsilons() const;
  void validate(const KernelSpec& spec) const;  // throws BadEpsilon / invalid_argument
};

struct Rung {
  double eps = 0.0;
  double value = 0.0;
  bool ok = true;
};

enum class Verdict { Associated, NotAssociated, Inconclusive };
const char* verdict_name(Verdict v);

// +inf rate with all_below_floor set means: converged so fast that every
// deviation sits inside the quadrature noise floor, so no rate is resolvable.
struct FitResult {
  double limit_est = 0.0;
  double rate = 0.0;
  double residual = 0.0;
  bool all_below_floor = false;
  int used = 0;
};

std::vector<Rung> ladder_eval(const Representative& r, const KernelSpec& spec,
                              const SmoothExpr& psi, const Ladder& lad,
                              const QuadConfig& cfg = {});

// limit_est = limit_hint when given (exact pairing target), else Aitken
// delta-squared on the last three usable rungs.  The rate is the
// least-squares slope of log deviation vs log eps over rungs whose deviation
// exceeds the noise floor (default 10 * quad_tol).
FitResult fit_rate(const std::vector<Rung>& samples, std::optional<double> limit_hint,
                   const Thresholds& th = {}, std::optional<double> noise_floor = {});

struct LadderReport {
  std::vector<Rung> samples;
  FitResult fit;
  Verdict verdict = Verdict::Inconclusive;
};

struct Mode {
  enum class Kind { Plain, Strong, SAssoc, Ck };
  Kind kind = Kind::Plain;
  double beta0 = 0.0;  // Strong
  double s = 0.0;      // SAssoc
  int k = 0;           // Ck

  static Mode plain();
  static Mode strong(double beta0);
  static Mode s_assoc(double s);
  static Mode ck(int k);
  std::string describe() const;
};

struct AssocOptions {
  Thresholds thresholds;
  // Pairings integrate one decade below thresholds.quad_tol so the fit floor
  // of 10 * quad_tol keeps two decades of headroom over quadrature noise.
  QuadConfig quad{1e-11, 40};
  GridSpec grid;
  Interval window{-0.5, 0.5};  // Ck-mode comparison window
  Interval K{-1.0, 1.0};       // seminorm base region
  Interval L{-2.0, 2.0};       // seminorm translation region
  bool memoize = false;        // reuse one realization per rung across probes
};

struct ProbeResult {
  std::string probe;
  double target = 0.0;   // <candidate, probe>
  double last_dev = 0.0; // |a_last - limit_est| on the last usable rung
  LadderReport report;
};

struct AssocReport {
  Mode mode;
  std::vector<ProbeResult> probes;
  Verdict aggregate = Verdict::Inconclusive;
};

// Association test of R against the candidate across the probe family.
// Plain: the ladder must settle on the candidate pairing (deviation within
// assoc_tol, regression residual within fit_tol, decay rate at least
// rate_margin, or everything already below the noise floor).  Strong(beta0)
// additionally needs rate >= beta0 on every probe; s_assoc(s) needs
// rate >= s + rate_margin.  Ck(k) replaces pairings by the windowed sup of
// |d^j(realize(R) - candidate)| for j <= k and ladder-fits that sup.
// Divergence heuristic: strictly growing |a_k| over the last five usable
// rungs with fitted slope <= -0.1 reads as not_associated.
AssocReport assoc_test(const Representative& r, const KernelSpec& spec, const DistSum& candidate,
                       const ProbeFamily& probes, const Ladder& lad, const Mode& mode = Mode::plain(),
                       const AssocOptions& opts = {});

struct ThetaERow {
  std::string mollifier;
  double dilation = 1.0;
  AssocReport report;
};

struct ThetaEReport {
  std::vector<ThetaERow> rows;
  Verdict aggregate = Verdict::Inconclusive;
  std::string evidence = "finite-sample evidence";
};

// Quantifier surrogate over the mollifier class: synthesizes family_size
// distinct A_q mollifiers by support dilation of the base bump (factors
// 0.7 + 0.3*i) followed by moment projection, and runs assoc_test on the
// scaled kernel of each.  The aggregate is the conjunction over rows.
ThetaEReport theta_e_test(const Representative& r, int q, int family_size, const DistSum& candidate,
                          const ProbeFamily& probes, const Ladder& lad,
                          const Mode& mode = Mode::plain(), const AssocOptions& opts = {});

struct GapParams {
  int a = 1;
  int b = 1;
  int c = 0;
  int l = 0;
  int q = 0;

  void validate() const;  // throws std::invalid_argument
};

enum class GapConclusion { Decays, CannotConclude };
const char* gap_conclusion_name(GapConclusion c);

struct GapAnalysis {
  int score = 0;
  GapConclusion conclusion = GapConclusion::CannotConclude;
};

// score = a(c+l+1) - b(q+1); the bound lambda(norms) scales like
// eps^{-score}, so it certifies decay only for score < 0.  score = 0 keeps
// the bound O(1), which is not enough to conclude.
GapAnalysis gap_analysis(const GapParams& p);

struct GapReport {
  GapParams params;
  GapAnalysis analysis;
  double lambda_c = 1.0;
  LadderReport bound;
  bool empirical_decays = false;
  bool slope_ok = false;  // fitted slope within 0.1 of -score
};

// Evaluates lambda_c * norm_kernel^a * norm_gap^b down the ladder on a
// scaled A_q kernel synthesized from the skew base (nonvanishing (q+1)th
// moment), fits its rate against limit 0, and cross-checks the fitted slope
// against -score.  The bound samples are products of sup evaluations, not
// noisy pairings, so the fit runs without the quadrature noise floor.
GapReport gap_empirical(const GapParams& p, double lambda_c, const Ladder& lad,
                        const AssocOptions& opts = {});

}  // namespace colombeau
