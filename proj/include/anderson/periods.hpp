#pragma once

#include <string>
#include <utility>
#include <vector>

#include "anderson/agf.hpp"

namespace anderson {

// ---------------------------------------------------------------------------
// Torsion

struct NewtonSlope {
  Rational slope;       // valuation slope; the roots have valuation -slope (theta-units)
  int64_t length = 0;   // number of roots of that valuation
  int from = 0, to = 0; // tau indices of the segment end points
};

/// Lower convex hull of (q^i, -deg A_i), A_0 = theta, for phi_t(x)/x.
struct NewtonPolygon {
  std::vector<std::pair<int64_t, Rational>> points;
  std::vector<NewtonSlope> slopes;
};

NewtonPolygon newton_polygon(const DrinfeldModule& phi);

/// Smallest m and s in which the leading digit of every torsion root is
/// representable. s is only predicted for coefficients in F_q; later digits
/// may still ask for a degree-p extension.
struct TowerRequirement {
  int m = 1;
  int s = 1;
  bool s_known = true;
};

TowerRequirement required_tower(const DrinfeldModule& phi);

struct TorsionBasis {
  std::vector<LaurentElem> zetas;
  std::vector<bool> in_radius;           // |zeta| < R_phi
  std::vector<GaloisField::Code> leading; // leading digit picked for each basis element
  NewtonPolygon polygon;
  /// Every F_q-combination is a root to the full cap, the q^r of them are
  /// distinct and their valuations reproduce the slope lengths.
  bool combinations_ok = false;
  int64_t residual_depth = 0;  // worst verified digits of phi_t over all combinations
  size_t distinct_roots = 0;
};

/// F_q-basis of the t-torsion; phi must be defined over the session field. Throws RamificationError / ResidueSplittingError
/// naming the m or s to use.
TorsionBasis torsion_roots(const DrinfeldModule& phi, const ContextPtr& ctx, int64_t u_cap);

// ---------------------------------------------------------------------------
// Periods and quasi-periods

/// A period recovered from zeta = exp(omega/theta^l) inside the radius.
struct PeriodValue {
  LaurentElem zeta;
  int ell = 1;
  LaurentElem omega;        // theta^l L(zeta; theta)
  IdentityReport exp_check; // exp(omega/theta^l) = zeta
};

PeriodValue period_from_torsion(const DrinfeldModule& phi, const LaurentElem& zeta, int ell, int64_t u_cap);

/// L(zeta; t)^(j) at t = theta.
LaurentElem twisted_log_at_theta(const DrinfeldModule& phi, const LaurentElem& zeta, int j, int64_t depth);

struct QuasiPeriod {
  int j = 0;
  LaurentElem value;          // from the deformed logarithm
  LaurentElem direct;         // M-term partial sum of sum_m exp(omega/theta^(m+1))^(q^j) theta^m
  Rational direct_tail;       // log_q bound on the dropped terms
  bool direct_ok = false;
  LaurentElem entire;         // sum_n b_(j,n) omega^(q^n)
  bool entire_ok = false;
};

std::vector<QuasiPeriod> quasi_periods(const DrinfeldModule& phi, const PeriodValue& w, int64_t u_cap, int M = 20);

/// b_(j,n) = alpha_(n-j)^(q^j) / (theta^(q^n) - theta) for j <= n <= N, zero below j.
std::vector<LaurentElem> quasi_periodic_coeffs(const DrinfeldModule& phi, int j, int N, const ContextPtr& ctx);

// ---------------------------------------------------------------------------
// Carlitz period

/// theta (-theta)^(1/(q-1)) prod_{i >= 1} (1 - theta^(1 - q^i))^(-1)
LaurentElem carlitz_period(const ContextPtr& ctx);

struct CarlitzPeriodReport {
  bool passed = false;
  LaurentElem product;
  LaurentElem residue;        // -Res_{t = theta} omega_C
  LaurentElem torsion;        // theta log_C(zeta)
  GaloisField::Code unit = 0; // torsion = unit * product
  bool valuation_ok = false;
  std::vector<IdentityReport> checks;
};

CarlitzPeriodReport carlitz_period_routes(const ContextPtr& ctx, int64_t u_cap);

// ---------------------------------------------------------------------------
// Legendre relation in rank 2

struct LegendreReport {
  bool passed = false;
  Rational deg_j;             // meaningful when A != 0
  bool j_zero = false;
  LaurentElem omega1, omega2, eta1, eta2;
  LaurentElem value;          // omega1 eta2 - omega2 eta1
  LaurentElem expected;       // pi / (-B)^(1/(q-1)), canonical roots
  GaloisField::Code c = 0;    // value = c * expected
  GaloisField::Code c_det = 0;
  IdentityReport twist_equation;  // B det P^(1) + (t - theta) det P = 0
  IdentityReport det_vs_omega;    // det P = c omega_C / (-B)^(1/(q-1))
  IdentityReport relation;
  std::vector<IdentityReport> periods;
};

/// Throws GateFailed unless deg j(phi) < q^2.
LegendreReport legendre_check(const DrinfeldModule& phi, const ContextPtr& ctx, int t_prec, int64_t u_cap);
/// Same with the two torsion points given (in this order).
LegendreReport legendre_from_torsion(const DrinfeldModule& phi, const LaurentElem& zeta1, const LaurentElem& zeta2, int t_prec,
                                     int64_t u_cap);

}  // namespace anderson
