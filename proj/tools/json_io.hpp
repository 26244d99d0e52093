#pragma once

#include <string>
#include <vector>

#include "anderson/agf.hpp"
#include "anderson/periods.hpp"
#include "json.hpp"

namespace anderson::json_io {

using nlohmann::json;

/// Coordinate vector over F_p, independent of the log table layout.
json element(const GaloisField& F, GaloisField::Code c);
/// x cut to `rel` digits past its valuation:
/// {"val", "m", "coeffs": [coordinates...], "cap", "exact"}. Zero has val null;
/// cap is null exactly when nothing was cut off.
json laurent(const LaurentElem& x, int64_t rel);
/// Coefficients t^0 .. t^(t_prec-1), each cut as above.
json series(const TateSeries& f, int64_t rel, int t_prec = -1);
json rational(const Rational& x);
json degree(const Degree& d);
/// [[exponent, coordinates], ...] in increasing exponent.
json theta_poly(const ThetaPoly& p);
json pole_sum(const PoleSum& s);
json partition(const ShadowedPartition& p);
json identity(const IdentityReport& r);
json certificate(const Certificate& c);
json newton(const NewtonPolygon& np);

/// Parse an element such as "theta^-2", "1 + theta^-1/3" or "2*theta^2 - 1".
/// Coefficients are indices into F_q.
LaurentElem parse_element(const ContextPtr& ctx, const std::string& text);
/// "1,0,1" -> A = 1 + theta^2 with coefficients indexing F_q.
ThetaPoly parse_theta_poly(const FieldPtr& F, const std::string& text);
/// F_q element with index c.
GaloisField::Code fq_element(const GaloisField& F, int64_t c);

}  // namespace anderson::json_io
