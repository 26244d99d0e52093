#pragma once

#include <string>
#include <vector>

#include "anderson/drinfeld.hpp"
#include "anderson/tate.hpp"

namespace anderson {

// ---------------------------------------------------------------------------
// The rational functions B_n(t)

enum class BRoute { Definition, TwistRecurrence, UntwistedRecurrence };
const char* broute_name(BRoute r);

/// B_0, ..., B_N, each an exact sum of simple-pole terms.
struct BSeq {
  BRoute route = BRoute::Definition;
  std::vector<PoleSum> entries;
};

/// X_phi(S; t) as a single pole term.
PoleSum partition_term(const DrinfeldModule& phi, const ShadowedPartition& S);
BSeq b_seq(const DrinfeldModule& phi, int N, BRoute route);

/// Every pole exponent of B_n lies in [1, n]; in particular t = theta is regular.
bool poles_in_range(const DrinfeldModule& phi, const BSeq& b);

/// B_n(theta) = beta_n for 1 <= n <= N as an identity of rational functions in theta.
Certificate certify_b_at_theta(const DrinfeldModule& phi, const BSeq& b);

struct BRouteReport {
  bool passed = false;
  std::vector<int> mismatched;  // n where some route differs from the definition
  bool poles_ok = false;
  Certificate at_theta;
};

/// Three-route agreement (as rational functions) plus B_n(theta) = beta_n.
BRouteReport compare_b_routes(const DrinfeldModule& phi, int N);

// ---------------------------------------------------------------------------
// Norms

/// ((q^n-1)/(q^i-1))(deg A_i - q^i) + sum_k (q^k-1) w(S_k) mu_ik
Rational lemma_norm(const DrinfeldModule& phi, const ConvergenceData& cd, const ShadowedPartition& S, int i);
/// ((q^n-1)/(q^s-1))(deg A_s - q^s)
Rational b_norm_bound(const DrinfeldModule& phi, const ConvergenceData& cd, int n);

struct NormRow {
  int n = 0;
  std::string partition;
  Rational from_series;   // log_q of the Gauss norm of the expansion
  Rational closed_form;   // the same for every i in N(phi)
  Rational at_theta;      // deg X(S; theta)
  bool match = false;
};

struct BoundRow {
  int n = 0;
  Degree norm;  // nullopt if B_n = 0
  Rational bound;
  bool holds = false;
};

struct NormReport {
  bool passed = false;
  std::vector<NormRow> partitions;
  std::vector<BoundRow> bounds;
};

NormReport norm_analysis(const DrinfeldModule& phi, int N, const ContextPtr& ctx, int t_prec);

// ---------------------------------------------------------------------------
// Series with certified tails

/// The deformed logarithm L(xi; t) = sum_n B_n(t) xi^(q^n), truncated at N with
/// every coefficient capped by the bound on the dropped terms.
struct DeformedLog {
  LaurentElem xi;
  int N = 0;
  TateSeries series;
  /// L(xi; theta), summed from the values B_n(theta).
  LaurentElem at_theta;
  /// log_q bound on the dropped part of the t^0 coefficient.
  Rational tail_logq_bound;
};

/// Fixed truncation order.
DeformedLog deformed_log(const DrinfeldModule& phi, const LaurentElem& xi, int N, int t_prec);
/// Smallest N giving `depth` verified u-digits in every coefficient and in L(xi; theta).
DeformedLog deformed_log_auto(const DrinfeldModule& phi, const LaurentElem& xi, int t_prec, int64_t depth);

/// exp_phi(z) and log_phi(xi) as scalars, with at least `depth` verified digits.
LaurentElem exp_phi(const DrinfeldModule& phi, const LaurentElem& z, int64_t depth);
LaurentElem log_phi(const DrinfeldModule& phi, const LaurentElem& xi, int64_t depth);

/// f_phi(u; t) = sum_n alpha_n u^(q^n) / (theta^(q^n) - t).
struct AGFValue {
  LaurentElem u;
  int N = 0;
  /// -u/(t - theta) plus the part regular at theta.
  ThetaPoleSeries parts;
  TateSeries series;
  std::vector<LaurentElem> alpha;  // alpha_0 .. alpha_N
  /// Res_{t = theta^(q^n)} f = -alpha_n u^(q^n), n <= N.
  LaurentElem residue(int n) const;
};

AGFValue agf(const DrinfeldModule& phi, const LaurentElem& u, int t_prec, int64_t depth);

/// (theta - t, A_1, ..., A_r): the coefficients of Delta_phi in powers of tau.
std::vector<TateSeries> delta_coefficients(const DrinfeldModule& phi, const ContextPtr& ctx, int t_prec);
/// Delta_phi(g) = sum_k A_k g^(k) - (t - theta) g
TateSeries delta_phi(const DrinfeldModule& phi, const TateSeries& g);

struct MainTheoremReport {
  bool passed = false;
  LaurentElem xi;
  LaurentElem u;
  int log_order = 0;
  int exp_order = 0;
  std::vector<IdentityReport> identities;
};

/// Specialization, difference relation, link with f_phi and compatibility with
/// phi_t, each to `u_cap` u-digits on t^0 .. t^(t_prec-1). Throws OutsideRadius
/// if |xi| >= R_phi and CompatPreconditionFailed if some |A_i xi^(q^i)| >= R_phi.
MainTheoremReport check_main_theorem(const DrinfeldModule& phi, const LaurentElem& xi, int t_prec, int64_t u_cap);

// ---------------------------------------------------------------------------
// Carlitz

/// omega_C(t) = (-theta)^(1/(q-1)) prod_{i >= 0} (1 - t/theta^(q^i))^(-1)
TateSeries omega_carlitz(const ContextPtr& ctx, int t_prec);
/// The factor regular at theta: (t - theta) omega_C(t) as a series with decay rate q.
TateSeries omega_carlitz_regular(const ContextPtr& ctx, int t_prec);
/// omega^(1) - (t - theta) omega = 0
IdentityReport omega_difference_check(const TateSeries& omega, int64_t u_cap);

/// Carlitz specialization of compatibility: L_C(C_t(xi); t) = t L_C(xi; t) - (t - theta) xi,
/// with L_C built from the product formula for B_n.
IdentityReport carlitz_compat_check(const ContextPtr& ctx, const LaurentElem& xi, int t_prec, int64_t u_cap);

}  // namespace anderson
