#include "json_io.hpp"

#include <cctype>

#include "anderson/error.hpp"

namespace anderson::json_io {

json element(const GaloisField& F, GaloisField::Code c) { return F.coords(c); }

json laurent(const LaurentElem& x, int64_t rel) {
  const auto& F = x.ctx()->F();
  json out{{"m", x.ctx()->m()}, {"coeffs", json::array()}};
  if (x.is_zero()) {
    out["val"] = nullptr;
    out["exact"] = x.exact();
    out["cap"] = x.exact() ? json(nullptr) : json(x.cap());
    return out;
  }
  const int64_t cap = std::min(x.cap(), x.val() + rel);
  const int64_t n = std::min<int64_t>(cap - x.val(), static_cast<int64_t>(x.coeffs().size()));
  int64_t last = -1;  // trailing zeros are dropped
  for (int64_t i = 0; i < n; ++i)
    if (x.coeffs()[static_cast<size_t>(i)] != 0) last = i;
  for (int64_t i = 0; i <= last; ++i) out["coeffs"].push_back(element(F, x.coeffs()[static_cast<size_t>(i)]));
  // exact when nothing was cut off
  const bool whole = x.exact() && n == static_cast<int64_t>(x.coeffs().size());
  out["val"] = x.val();
  out["exact"] = whole;
  out["cap"] = whole ? json(nullptr) : json(cap);
  return out;
}

json series(const TateSeries& f, int64_t rel, int t_prec) {
  const int n = t_prec < 0 ? f.t_prec() : std::min(t_prec, f.t_prec());
  json out = json::array();
  for (int k = 0; k < n; ++k) out.push_back(laurent(f[k], rel));
  return out;
}

json rational(const Rational& x) { return to_string(x); }

json degree(const Degree& d) { return d ? rational(*d) : json(nullptr); }

json theta_poly(const ThetaPoly& p) {
  json out = json::array();
  if (p.is_zero()) return out;
  for (const auto& [e, c] : p.terms()) out.push_back({e, element(*p.field(), c)});
  return out;
}

json pole_sum(const PoleSum& s) {
  json out = json::array();
  for (const auto& [mask, c] : s.terms()) {
    json poles = json::array();
    for (int e = 0; e < 64; ++e)
      if ((mask >> e) & 1) poles.push_back(e);
    out.push_back({{"poles", poles}, {"coeff", theta_poly(c)}});
  }
  return out;
}

json partition(const ShadowedPartition& p) {
  json sets = json::array();
  for (int i = 1; i <= p.r(); ++i) sets.push_back(p.elements(i));
  return json{{"n", p.n}, {"sets", sets}};
}

json identity(const IdentityReport& r) {
  return json{{"identity", r.identity}, {"passed", r.passed},         {"t_prec", r.t_prec},
              {"u_cap", r.u_cap},       {"residual", r.residual_valuation}, {"detail", r.detail}};
}

json certificate(const Certificate& c) {
  return json{{"statement", c.statement}, {"passed", c.passed},   {"extension_degree", c.extension_degree},
              {"degree_bound", c.degree_bound}, {"points", c.points}, {"detail", c.detail}};
}

json newton(const NewtonPolygon& np) {
  json pts = json::array(), slopes = json::array();
  for (const auto& [x, y] : np.points) pts.push_back({x, rational(y)});
  for (const auto& s : np.slopes)
    slopes.push_back({{"slope", rational(s.slope)}, {"length", s.length}, {"from", s.from}, {"to", s.to}});
  return json{{"points", pts}, {"slopes", slopes}};
}

GaloisField::Code fq_element(const GaloisField& F, int64_t c) {
  if (c < 0 || c >= F.q())
    throw Error(ErrorKind::ConfigError, "coefficient " + std::to_string(c) + " is not an index into F_" + std::to_string(F.q()));
  return F.base_field()[static_cast<size_t>(c)];
}

namespace {

struct Cursor {
  const std::string& s;
  size_t i = 0;
  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(char c) {
    skip();
    if (i < s.size() && s[i] == c) return ++i, true;
    return false;
  }
  bool eat(const std::string& w) {
    skip();
    if (s.compare(i, w.size(), w) == 0) return i += w.size(), true;
    return false;
  }
  bool at_digit() {
    skip();
    return i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]));
  }
  int64_t integer() {
    if (!at_digit()) fail("expected a number");
    int64_t v = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      v = v * 10 + (s[i++] - '0');
      if (v > (int64_t{1} << 40)) fail("number too large");
    }
    return v;
  }
  Rational exponent() {
    const bool paren = eat('(');
    const bool neg = eat('-');
    Rational e(integer());
    if (eat('/')) {
      const int64_t d = integer();
      if (d == 0) fail("zero denominator");
      e /= d;
    }
    if (paren && !eat(')')) fail("expected ')'");
    return neg ? Rational(-e) : e;
  }
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorKind::ConfigError, "cannot parse element '" + s + "' at " + std::to_string(i) + ": " + why);
  }
};

}  // namespace

LaurentElem parse_element(const ContextPtr& ctx, const std::string& text) {
  const auto& F = ctx->F();
  Cursor c{text};
  LaurentElem acc = LaurentElem::zero(ctx);
  bool first = true;
  while (true) {
    c.skip();
    if (c.i == text.size()) break;
    bool neg = false;
    if (c.eat('-')) neg = true;
    else if (!c.eat('+') && !first) c.fail("expected '+' or '-'");
    first = false;
    GaloisField::Code coeff = 1;
    bool have_coeff = false;
    if (c.at_digit()) {
      coeff = fq_element(F, c.integer());
      have_coeff = true;
      c.eat('*');
    }
    Rational e(0);
    if (c.eat("theta")) {
      e = c.eat('^') ? c.exponent() : Rational(1);
    } else if (!have_coeff) {
      c.fail("expected a coefficient or theta");
    }
    if (neg) coeff = F.neg(coeff);
    if (coeff != 0) acc += LaurentElem::theta_pow(ctx, e, coeff);
  }
  if (first) c.fail("empty element");
  return acc;
}

ThetaPoly parse_theta_poly(const FieldPtr& F, const std::string& text) {
  std::vector<GaloisField::Code> coeffs;
  Cursor c{text};
  while (true) {
    coeffs.push_back(fq_element(*F, c.integer()));
    if (!c.eat(',')) break;
  }
  c.skip();
  if (c.i != text.size()) c.fail("expected ',' between coefficients");
  return ThetaPoly::from_coeffs(F, coeffs);
}

}  // namespace anderson::json_io
