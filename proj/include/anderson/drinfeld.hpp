#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "anderson/partitions.hpp"
#include "anderson/tate.hpp"
#include "anderson/theta_poly.hpp"

namespace anderson {

/// phi_t = theta + A_1 tau + ... + A_r tau^r with A_r != 0.
class DrinfeldModule {
 public:
  DrinfeldModule(FieldPtr field, std::vector<ThetaPoly> A);
  static DrinfeldModule carlitz(FieldPtr field);

  int rank() const { return static_cast<int>(A_.size()); }
  const FieldPtr& field() const { return field_; }
  int q() const { return field_->q(); }
  /// A_i for 0 <= i <= r, with A_0 = theta.
  ThetaPoly A(int i) const;
  Degree deg_A(int i) const { return A(i).degree(); }
  /// N(phi): indices i >= 1 with A_i != 0.
  std::vector<int> support() const;
  /// True when every A_i is a polynomial in theta over F_q.
  bool is_polynomial_over_fq() const;

 private:
  FieldPtr field_;
  std::vector<ThetaPoly> A_;
};

struct ConvergenceData {
  std::vector<int> support;
  std::map<int, Rational> ratios;  // i -> (deg A_i - q^i)/(q^i - 1), i in N(phi)
  int s = 0;
  bool strict = true;
  Rational logq_R;

  /// mu_ik = ratio_k - ratio_i
  Rational mu(int i, int k) const { return ratios.at(k) - ratios.at(i); }
};

ConvergenceData convergence_data(const DrinfeldModule& phi);

/// phi_t(x) = theta x + sum A_i x^(q^i)
LaurentElem phi_t(const DrinfeldModule& phi, const LaurentElem& x);
/// phi_a(x) for a = sum a_k t^k with a_k in F_q.
LaurentElem phi_action(const DrinfeldModule& phi, const std::vector<GaloisField::Code>& a, const LaurentElem& x);

/// A^S = prod_i A_i^w(S_i), as an exact polynomial.
ThetaPoly partition_monomial(const DrinfeldModule& phi, const ShadowedPartition& p);
/// P_r(n; phi)
std::vector<ShadowedPartition> supported_partitions(const DrinfeldModule& phi, int n);

/// Closed forms: alpha_n = sum A^S / D_n(S), beta_n = sum A^S / L(S).
std::vector<LaurentElem> exp_coeffs_partitions(const DrinfeldModule& phi, int N, const ContextPtr& ctx);
std::vector<LaurentElem> log_coeffs_partitions(const DrinfeldModule& phi, int N, const ContextPtr& ctx);
/// [n] alpha_n = sum_{i >= 1} A_i alpha_{n-i}^(q^i)
std::vector<LaurentElem> exp_coeffs_recurrence(const DrinfeldModule& phi, int N, const ContextPtr& ctx);
/// Triangular inversion of exp: beta_n = -sum_{k<n} beta_k alpha_{n-k}^(q^k)
std::vector<LaurentElem> log_coeffs_inversion(const std::vector<LaurentElem>& alpha);

/// Exact fraction num/den of theta-polynomials.
struct ThetaFraction {
  ThetaPoly num;
  ThetaPoly den;
  bool equals(const ThetaFraction& o) const { return num * o.den == o.num * den; }
};
ThetaFraction exp_coeff_fraction(const DrinfeldModule& phi, int n);
ThetaFraction log_coeff_fraction(const DrinfeldModule& phi, int n);
/// D_n = [n] D_{n-1}^q and L_n = (-1)^n [1]...[n]
ThetaPoly carlitz_D(const FieldPtr& field, int n);
ThetaPoly carlitz_L(const FieldPtr& field, int n);

/// Proof that an identity of rational functions in theta holds exactly: both
/// sides are evaluated at more points of F_{q^K} \ F_q than the degree of the
/// cleared numerator of their difference.
struct Certificate {
  std::string statement;
  bool passed = false;
  int extension_degree = 0;
  int64_t degree_bound = 0;
  int64_t points = 0;
  std::string detail;
};

/// `holds_at(K, a)` must return whether the identity holds at theta = a. The
/// caller guarantees that, after clearing a denominator which has no zero in
/// F_{q^K} \ F_q whenever K >= min_ext is prime, the difference is a
/// polynomial of degree at most `bound`.
Certificate certify_identity(const std::string& statement, const FieldPtr& base, int64_t bound, int min_ext,
                             const std::function<bool(const GaloisField&, GaloisField::Code)>& holds_at);

/// Route-1 alpha_n satisfy the recurrence for 1 <= n <= N.
Certificate certify_exp_coeffs(const DrinfeldModule& phi, int N);
/// Route-1 beta_n invert the recurrence exponential for 1 <= n <= N.
Certificate certify_log_coeffs(const DrinfeldModule& phi, int N);

/// Values of route-1 alpha_k, beta_k (k <= N) at theta = a in K.
std::vector<GaloisField::Code> exp_coeffs_at(const DrinfeldModule& phi, int N, const GaloisField& K, GaloisField::Code a);
std::vector<GaloisField::Code> log_coeffs_at(const DrinfeldModule& phi, int N, const GaloisField& K, GaloisField::Code a);
/// Upper bounds for deg alpha_k and deg beta_k from the closed forms (nullopt if zero).
std::vector<Degree> exp_degree_bounds(const DrinfeldModule& phi, int N);
std::vector<Degree> log_degree_bounds(const DrinfeldModule& phi, int N);

struct CoefficientSet {
  std::vector<LaurentElem> alpha;  // closed forms
  std::vector<LaurentElem> beta;
  Certificate alpha_check;
  Certificate beta_check;
  /// Laurent values of both routes agree below their caps.
  bool numeric_agree = false;
};

/// Closed-form coefficients, checked exactly against the recurrence/inversion route.
CoefficientSet coefficients(const DrinfeldModule& phi, int N, const ContextPtr& ctx);

struct ComposeReport {
  bool passed = false;
  std::vector<int> failing_orders;
  std::vector<IdentityReport> orders;
};

/// log(exp(z)) = z through z^(q^N): sum_{k+j=n} beta_k alpha_j^(q^k) = 0 for 1 <= n <= N.
ComposeReport compose_check(const std::vector<LaurentElem>& alpha, const std::vector<LaurentElem>& beta, int64_t u_cap);

}  // namespace anderson
