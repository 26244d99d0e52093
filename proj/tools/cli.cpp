#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "anderson/agf.hpp"
#include "anderson/error.hpp"
#include "anderson/periods.hpp"
#include "json_io.hpp"

namespace anderson::cli {

using json_io::json;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int64_t to_int(const std::string& key, const std::string& v) {
  try {
    size_t used = 0;
    const long long x = std::stoll(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw Error(ErrorKind::ConfigError, "'" + key + "' expects an integer, got '" + v + "'");
  }
}

int small_int(const std::string& key, const std::string& v) {
  const int64_t x = to_int(key, v);
  if (x < -(1 << 30) || x > (1 << 30)) throw Error(ErrorKind::ConfigError, "'" + key + "' is out of range");
  return static_cast<int>(x);
}

}  // namespace

// ---------------------------------------------------------------------------
// configuration

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"carlitz-q2", "carlitz-q3", "rank2-q2", "rank3-q2"};
  return names;
}

SessionConfig preset(const std::string& name) {
  SessionConfig c;
  c.preset = name;
  // the smallest towers holding every torsion digit (required_tower)
  if (name == "carlitz-q2") {
    c.q = 2, c.s = 1, c.m = 1, c.A = {"1"};
    c.xi = {"1", "theta^-1", "1 + theta^-2"};
  } else if (name == "carlitz-q3") {
    c.q = 3, c.s = 2, c.m = 2, c.A = {"1"};
    c.xi = {"1", "2*theta^-1", "1 + theta^-1 + theta^-3"};
  } else if (name == "rank2-q2") {
    c.q = 2, c.s = 2, c.m = 3, c.A = {"1", "1"};
    c.xi = {"theta^-1", "theta^-2", "1 + theta^-1/3"};
  } else if (name == "rank3-q2") {
    c.q = 2, c.s = 3, c.m = 7, c.A = {"1", "1", "1"};
    c.xi = {"theta^-1", "1 + theta^-3", "theta^-2/7"};
  } else {
    throw Error(ErrorKind::ConfigError, "unknown preset '" + name + "'");
  }
  return c;
}

void apply_key(SessionConfig& c, const std::string& key, const std::string& value) {
  if (key == "preset") {
    // a preset resets everything it defines
    c = preset(value);
  } else if (key == "q") {
    c.q = small_int(key, value);
  } else if (key == "s") {
    c.s = small_int(key, value);
  } else if (key == "m") {
    c.m = small_int(key, value);
  } else if (key == "u_cap") {
    c.u_cap = to_int(key, value);
  } else if (key == "guard") {
    c.guard = small_int(key, value);
  } else if (key == "t_prec") {
    c.t_prec = small_int(key, value);
  } else if (key == "A") {
    c.A = split(value, ';');
  } else if (key.size() >= 2 && key[0] == 'A' && std::all_of(key.begin() + 1, key.end(), ::isdigit)) {
    const int i = small_int(key, key.substr(1));
    if (i < 1 || i > 16) throw Error(ErrorKind::ConfigError, "coefficient index out of range: " + key);
    if (c.A.size() < static_cast<size_t>(i)) c.A.resize(static_cast<size_t>(i), "0");
    c.A[static_cast<size_t>(i - 1)] = value;
  } else if (key == "xi") {
    c.xi = split(value, ';');
  } else if (key == "seed") {
    const int64_t s = to_int(key, value);
    if (s < 0) throw Error(ErrorKind::ConfigError, "seed must be non-negative");
    c.seed = static_cast<uint64_t>(s);
  } else if (key == "N") {
    c.N = small_int(key, value);
  } else if (key == "M") {
    c.M = small_int(key, value);
  } else if (key == "rank") {
    c.rank = small_int(key, value);
  } else {
    throw Error(ErrorKind::ConfigError, "unknown key '" + key + "'");
  }
}

std::vector<std::pair<std::string, std::string>> parse_config_text(const std::string& text, const std::string& origin) {
  std::vector<std::pair<std::string, std::string>> kv;
  std::istringstream in(text);
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorKind::ConfigError, origin + ":" + std::to_string(lineno) + ": expected key = value");
    kv.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return kv;
}

void apply_config_text(SessionConfig& c, const std::string& text, const std::string& origin) {
  const auto kv = parse_config_text(text, origin);
  // the preset goes first wherever it appears
  for (const auto& [k, v] : kv)
    if (k == "preset") apply_key(c, k, v);
  for (const auto& [k, v] : kv)
    if (k != "preset") apply_key(c, k, v);
}

Session open_session(const SessionConfig& cfg) {
  auto bad = [](const std::string& why) { throw Error(ErrorKind::ConfigError, why); };
  if (cfg.m < 1) bad("m must be at least 1");
  if (cfg.u_cap < 8 || cfg.u_cap > 4096) bad("u_cap must lie in [8, 4096]");
  if (cfg.guard < 16 || cfg.guard > 1024) bad("guard must lie in [16, 1024]");
  if (cfg.t_prec < 1 || cfg.t_prec > 256) bad("t_prec must lie in [1, 256]");
  if (cfg.N < 0 || cfg.N > 14) bad("N must lie in [0, 14]");
  if (cfg.M < 1 || cfg.M > 64) bad("M must lie in [1, 64]");
  if (cfg.A.empty()) bad("the module needs at least one coefficient");
  if (cfg.rank != 0 && cfg.rank != static_cast<int>(cfg.A.size()))
    bad("rank " + std::to_string(cfg.rank) + " does not match " + std::to_string(cfg.A.size()) + " coefficients A_i");
  auto field = make_field(FieldParams::defaults(cfg.q, cfg.s));
  auto ctx = make_context(field, {cfg.m, static_cast<int>(cfg.u_cap + cfg.guard)});
  std::vector<ThetaPoly> A;
  for (const auto& a : cfg.A) A.push_back(json_io::parse_theta_poly(field, a));
  if (A.back().is_zero()) bad("the top coefficient A_r must be nonzero");
  Session s{cfg, field, ctx, DrinfeldModule(field, std::move(A))};
  for (const auto& x : cfg.xi) (void)json_io::parse_element(ctx, x);
  return s;
}

// ---------------------------------------------------------------------------
// subcommands

namespace {

struct Emitter {
  std::ostream& out;
  bool ok = true;
  void line(const json& j) { out << j.dump() << '\n'; }
  void check(bool passed) { ok = ok && passed; }
};

json module_json(const Session& s) {
  json A = json::array();
  for (int i = 1; i <= s.phi.rank(); ++i) A.push_back(json_io::theta_poly(s.phi.A(i)));
  return json{{"q", s.cfg.q}, {"s", s.cfg.s}, {"m", s.cfg.m}, {"rank", s.phi.rank()}, {"A", A}};
}

std::vector<LaurentElem> xis(const Session& s) {
  std::vector<LaurentElem> out;
  for (const auto& x : s.cfg.xi) out.push_back(json_io::parse_element(s.ctx, x));
  if (out.empty()) out.push_back(LaurentElem::theta_pow(s.ctx, Rational(-1)));
  return out;
}

void cmd_partitions(const Session& s, Emitter& em, int r, int n, const std::vector<int>& support) {
  if (r < 1 || r > 8 || n < 0 || n > 24) throw Error(ErrorKind::ConfigError, "partitions needs 1 <= r <= 8, 0 <= n <= 24");
  for (int i : support)
    if (i < 1 || i > r) throw Error(ErrorKind::ConfigError, "support index " + std::to_string(i) + " outside 1.." + std::to_string(r));
  auto ps = enumerate_partitions(r, n);
  if (!support.empty()) ps = restrict_to_support(ps, support);
  bool valid = true;
  for (const auto& p : ps) {
    const bool ok = is_shadowed_partition(p) && weight_identity_holds(p, s.cfg.q);
    valid = valid && ok;
    auto j = json_io::partition(p);
    j["valid"] = ok;
    em.line(j);
  }
  json summary{{"r", r}, {"n", n}, {"count", ps.size()}};
  bool passed = valid;
  if (support.empty()) {
    const auto expected = count_partitions(r, n);
    summary["recurrence"] = expected.str();
    passed = passed && BigInt(ps.size()) == expected;
  } else {
    summary["support"] = support;
  }
  summary["passed"] = passed;
  em.line(summary);
  em.check(passed);
}

void cmd_coeffs(const Session& s, Emitter& em) {
  const auto cs = coefficients(s.phi, s.cfg.N, s.ctx);
  json a = json::array(), b = json::array();
  for (const auto& x : cs.alpha) a.push_back(json_io::laurent(x, s.cfg.u_cap));
  for (const auto& x : cs.beta) b.push_back(json_io::laurent(x, s.cfg.u_cap));
  const auto comp = compose_check(cs.alpha, cs.beta, s.cfg.u_cap);
  const bool passed = cs.alpha_check.passed && cs.beta_check.passed && cs.numeric_agree && comp.passed;
  em.line({{"command", "coeffs"},
           {"module", module_json(s)},
           {"N", s.cfg.N},
           {"alpha", a},
           {"beta", b},
           {"alpha_certificate", json_io::certificate(cs.alpha_check)},
           {"beta_certificate", json_io::certificate(cs.beta_check)},
           {"numeric_agree", cs.numeric_agree},
           {"log_exp_identity", comp.passed},
           {"passed", passed}});
  em.check(passed);
}

void cmd_convergence(const Session& s, Emitter& em) {
  const auto cd = convergence_data(s.phi);
  json ratios = json::object();
  for (const auto& [i, r] : cd.ratios) ratios[std::to_string(i)] = json_io::rational(r);
  const auto tower = required_tower(s.phi);
  em.line({{"command", "convergence"},
           {"module", module_json(s)},
           {"support", cd.support},
           {"ratios", ratios},
           {"s", cd.s},
           {"strict", cd.strict},
           {"logq_R", json_io::rational(cd.logq_R)},
           {"newton_polygon", json_io::newton(newton_polygon(s.phi))},
           {"tower", {{"m", tower.m}, {"s", tower.s}, {"s_known", tower.s_known}}}});
}

void cmd_bseq(const Session& s, Emitter& em) {
  const auto routes = compare_b_routes(s.phi, s.cfg.N);
  const auto b = b_seq(s.phi, s.cfg.N, BRoute::Definition);
  json entries = json::array();
  for (size_t n = 0; n < b.entries.size(); ++n) entries.push_back({{"n", n}, {"terms", json_io::pole_sum(b.entries[n])}});
  const auto norms = norm_analysis(s.phi, s.cfg.N, s.ctx, s.cfg.t_prec);
  json rows = json::array();
  for (const auto& r : norms.partitions)
    rows.push_back({{"n", r.n},
                    {"partition", r.partition},
                    {"from_series", json_io::rational(r.from_series)},
                    {"closed_form", json_io::rational(r.closed_form)},
                    {"match", r.match}});
  json bounds = json::array();
  for (const auto& r : norms.bounds)
    bounds.push_back({{"n", r.n}, {"norm", json_io::degree(r.norm)}, {"bound", json_io::rational(r.bound)}, {"holds", r.holds}});
  json mism = routes.mismatched;
  const bool passed = routes.passed && norms.passed;
  em.line({{"command", "bseq"},
           {"module", module_json(s)},
           {"entries", entries},
           {"routes_agree", routes.mismatched.empty()},
           {"mismatched", mism},
           {"poles_in_range", routes.poles_ok},
           {"at_theta", json_io::certificate(routes.at_theta)},
           {"norms", rows},
           {"norm_bounds", bounds},
           {"passed", passed}});
  em.check(passed);
}

void cmd_deform(const Session& s, Emitter& em) {
  for (const auto& xi : xis(s)) {
    const auto L = deformed_log_auto(s.phi, xi, s.cfg.t_prec, s.cfg.u_cap);
    em.line({{"command", "deform"},
             {"xi", json_io::laurent(xi, s.cfg.u_cap)},
             {"N", L.N},
             {"series", json_io::series(L.series, s.cfg.u_cap)},
             {"at_theta", json_io::laurent(L.at_theta, s.cfg.u_cap)},
             {"tail_logq_bound", json_io::rational(L.tail_logq_bound)}});
  }
}

void cmd_agf(const Session& s, Emitter& em) {
  for (const auto& u : xis(s)) {
    const auto f = agf(s.phi, u, s.cfg.t_prec, s.cfg.u_cap);
    const auto lhs = delta_phi(s.phi, f.series);
    const auto e = exp_phi(s.phi, u, s.cfg.u_cap);
    const auto rep = check_series_identity("Delta f = exp(u)", {lhs.truncated(s.cfg.t_prec - 1), -TateSeries::constant(e, s.cfg.t_prec - 1)},
                                           s.cfg.u_cap - 8);
    const bool residue_ok = f.residue(0) == -u;
    em.line({{"command", "agf"},
             {"u", json_io::laurent(u, s.cfg.u_cap)},
             {"N", f.N},
             {"series", json_io::series(f.series, s.cfg.u_cap)},
             {"residue_at_theta", json_io::laurent(f.parts.residue_at_theta(), s.cfg.u_cap)},
             {"residue_ok", residue_ok},
             {"difference", json_io::identity(rep)},
             {"passed", rep.passed && residue_ok}});
    em.check(rep.passed && residue_ok);
  }
}

json mainthm_json(const Session& s, const LaurentElem& xi, bool& passed) {
  const auto rep = check_main_theorem(s.phi, xi, s.cfg.t_prec, s.cfg.u_cap);
  json ids = json::array();
  for (const auto& id : rep.identities) ids.push_back(json_io::identity(id));
  const auto L = deformed_log_auto(s.phi, xi, s.cfg.t_prec, s.cfg.u_cap);
  passed = rep.passed;
  return {{"command", "verify-mainthm"},
          {"xi", json_io::laurent(xi, s.cfg.u_cap)},
          {"u", json_io::laurent(rep.u, s.cfg.u_cap)},
          {"log_order", rep.log_order},
          {"exp_order", rep.exp_order},
          {"deformed_log", json_io::series(L.series, s.cfg.u_cap)},
          {"identities", ids},
          {"passed", rep.passed}};
}

void cmd_mainthm(const Session& s, Emitter& em) {
  for (const auto& xi : xis(s)) {
    bool passed = false;
    em.line(mainthm_json(s, xi, passed));
    em.check(passed);
  }
}

void cmd_period(const Session& s, Emitter& em) {
  const auto tb = torsion_roots(s.phi, s.ctx, s.cfg.u_cap);
  json zetas = json::array();
  for (size_t k = 0; k < tb.zetas.size(); ++k) {
    const auto pv = period_from_torsion(s.phi, tb.zetas[k], 1, s.cfg.u_cap);
    zetas.push_back({{"zeta", json_io::laurent(tb.zetas[k], s.cfg.u_cap)},
                     {"in_radius", static_cast<bool>(tb.in_radius[k])},
                     {"omega", json_io::laurent(pv.omega, s.cfg.u_cap)},
                     {"exp_check", json_io::identity(pv.exp_check)}});
    em.check(pv.exp_check.passed);
  }
  json out{{"command", "period"},
           {"module", module_json(s)},
           {"newton_polygon", json_io::newton(tb.polygon)},
           {"combinations_ok", tb.combinations_ok},
           {"distinct_roots", tb.distinct_roots},
           {"residual_depth", tb.residual_depth},
           {"basis", zetas}};
  em.check(tb.combinations_ok);
  if (s.phi.rank() == 1 && s.phi.A(1) == ThetaPoly::constant(s.field, 1)) {
    const auto cr = carlitz_period_routes(s.ctx, s.cfg.u_cap);
    json checks = json::array();
    for (const auto& c : cr.checks) checks.push_back(json_io::identity(c));
    out["carlitz"] = {{"product", json_io::laurent(cr.product, s.cfg.u_cap)},
                      {"residue", json_io::laurent(cr.residue, s.cfg.u_cap)},
                      {"torsion", json_io::laurent(cr.torsion, s.cfg.u_cap)},
                      {"unit", json_io::element(*s.field, cr.unit)},
                      {"valuation_ok", cr.valuation_ok},
                      {"checks", checks},
                      {"passed", cr.passed}};
    em.check(cr.passed);
  }
  out["passed"] = em.ok;
  em.line(out);
}

void cmd_quasiperiod(const Session& s, Emitter& em) {
  const auto tb = torsion_roots(s.phi, s.ctx, s.cfg.u_cap);
  em.check(tb.combinations_ok);
  for (const auto& z : tb.zetas) {
    const auto pv = period_from_torsion(s.phi, z, 1, s.cfg.u_cap);
    json rows = json::array();
    bool ok = pv.exp_check.passed;
    for (const auto& qp : quasi_periods(s.phi, pv, s.cfg.u_cap, s.cfg.M)) {
      rows.push_back({{"j", qp.j},
                      {"value", json_io::laurent(qp.value, s.cfg.u_cap)},
                      {"direct", json_io::laurent(qp.direct, s.cfg.u_cap)},
                      {"direct_tail", json_io::rational(qp.direct_tail)},
                      {"direct_ok", qp.direct_ok},
                      {"entire", json_io::laurent(qp.entire, s.cfg.u_cap)},
                      {"entire_ok", qp.entire_ok}});
      ok = ok && qp.direct_ok && qp.entire_ok;
    }
    em.line({{"command", "quasiperiod"},
             {"zeta", json_io::laurent(z, s.cfg.u_cap)},
             {"omega", json_io::laurent(pv.omega, s.cfg.u_cap)},
             {"M", s.cfg.M},
             {"quasi_periods", rows},
             {"passed", ok}});
    em.check(ok);
  }
}

json legendre_json(const Session& s, const LegendreReport& r) {
  const auto U = s.cfg.u_cap;
  json periods = json::array();
  for (const auto& p : r.periods) periods.push_back(json_io::identity(p));
  return {{"command", "legendre"},
          {"module", module_json(s)},
          {"deg_j", r.j_zero ? json(nullptr) : json_io::rational(r.deg_j)},
          {"j_zero", r.j_zero},
          {"omega1", json_io::laurent(r.omega1, U)},
          {"omega2", json_io::laurent(r.omega2, U)},
          {"eta1", json_io::laurent(r.eta1, U)},
          {"eta2", json_io::laurent(r.eta2, U)},
          {"value", json_io::laurent(r.value, U)},
          {"expected", json_io::laurent(r.expected, U)},
          {"c", json_io::element(*s.field, r.c)},
          {"c_det", json_io::element(*s.field, r.c_det)},
          {"twist_equation", json_io::identity(r.twist_equation)},
          {"det_vs_omega", json_io::identity(r.det_vs_omega)},
          {"relation", json_io::identity(r.relation)},
          {"periods", periods},
          {"passed", r.passed}};
}

void cmd_legendre(const Session& s, Emitter& em) {
  const auto r = legendre_check(s.phi, s.ctx, s.cfg.t_prec, s.cfg.u_cap);
  em.line(legendre_json(s, r));
  em.check(r.passed);
}

// ---------------------------------------------------------------------------
// suite runner

/// A random xi of degree low enough for every precondition of the main theorem.
LaurentElem random_xi(const Session& s, uint64_t seed) {
  const auto cd = convergence_data(s.phi);
  int64_t d = -1;
  auto fits = [&](int64_t deg) {
    if (Rational(deg) >= cd.logq_R) return false;
    for (int i : s.phi.support())
      if (*s.phi.deg_A(i) + Rational(big_pow(s.cfg.q, i) * deg) >= cd.logq_R) return false;
    return true;
  };
  while (!fits(d)) --d;
  std::mt19937_64 rng(seed);
  const auto& base = s.field->base_field();
  std::uniform_int_distribution<size_t> pick(1, base.size() - 1), any(0, base.size() - 1);
  LaurentElem x = LaurentElem::theta_pow(s.ctx, Rational(d), base[pick(rng)]);
  for (int k = 1; k <= 6; ++k)
    if (auto c = base[any(rng)]; c != 0) x += LaurentElem::theta_pow(s.ctx, Rational(d - k), c);
  return x;
}

struct Scorecard {
  Emitter& em;
  std::vector<std::string> failed;
  int count = 0;
  void add(const std::string& name, const std::function<json()>& body) {
    ++count;
    json row{{"check", name}};
    try {
      json r = body();
      row["passed"] = r.value("passed", false);
      r.erase("passed");
      if (!r.empty()) row["detail"] = r;
    } catch (const Error& e) {
      row["passed"] = false;
      row["error"] = e.what();
    }
    if (!row["passed"].get<bool>()) failed.push_back(name);
    em.line(row);
  }
};

void cmd_verify(const Session& s, Emitter& em) {
  Scorecard sc{em, {}, 0};
  const int r = s.phi.rank();
  const int n_max = std::min(s.cfg.N, 6);

  sc.add("partitions", [&] {
    bool ok = true;
    for (int n = 0; n <= 10; ++n) {
      const auto ps = enumerate_partitions(r, n);
      ok = ok && BigInt(ps.size()) == count_partitions(r, n);
      for (const auto& p : ps) ok = ok && is_shadowed_partition(p) && weight_identity_holds(p, s.cfg.q);
    }
    return json{{"passed", ok}};
  });
  sc.add("coefficients", [&] {
    const auto cs = coefficients(s.phi, n_max, s.ctx);
    const auto comp = compose_check(cs.alpha, cs.beta, s.cfg.u_cap);
    return json{{"passed", cs.alpha_check.passed && cs.beta_check.passed && cs.numeric_agree && comp.passed}};
  });
  sc.add("b-routes", [&] {
    const auto rep = compare_b_routes(s.phi, n_max);
    return json{{"passed", rep.passed}, {"mismatched", rep.mismatched}};
  });
  sc.add("norms", [&] { return json{{"passed", norm_analysis(s.phi, n_max, s.ctx, 8).passed}}; });

  auto points = xis(s);
  points.push_back(random_xi(s, s.cfg.seed));
  for (size_t k = 0; k < points.size(); ++k)
    sc.add("main-theorem/" + std::to_string(k), [&, k] {
      const auto rep = check_main_theorem(s.phi, points[k], s.cfg.t_prec, s.cfg.u_cap);
      json failed = json::array();
      for (const auto& id : rep.identities)
        if (!id.passed) failed.push_back(id.identity);
      return json{{"passed", rep.passed}, {"xi", json_io::laurent(points[k], 16)}, {"failed", failed}};
    });
  sc.add("radius-rejected", [&] {
    const auto cd = convergence_data(s.phi);
    const auto big = LaurentElem::theta_pow(s.ctx, Rational(ceil_to_int(cd.logq_R) + 1));
    try {
      check_main_theorem(s.phi, big, s.cfg.t_prec, s.cfg.u_cap);
    } catch (const Error& e) {
      return json{{"passed", is_precondition_error(e.kind())}, {"kind", error_kind_name(e.kind())}};
    }
    return json{{"passed", false}};
  });

  const bool carlitz = r == 1 && s.phi.A(1) == ThetaPoly::constant(s.field, 1);
  if (carlitz) {
    sc.add("omega-difference", [&] {
      const auto rep = omega_difference_check(omega_carlitz(s.ctx, s.cfg.t_prec), s.cfg.u_cap);
      return json{{"passed", rep.passed}, {"residual", rep.residual_valuation}};
    });
    sc.add("carlitz-period", [&] { return json{{"passed", carlitz_period_routes(s.ctx, s.cfg.u_cap).passed}}; });
    sc.add("carlitz-compat", [&] {
      bool ok = true;
      for (const auto& xi : points) ok = ok && carlitz_compat_check(s.ctx, xi, s.cfg.t_prec, s.cfg.u_cap).passed;
      return json{{"passed", ok}};
    });
  }
  sc.add("torsion", [&] {
    const auto tb = torsion_roots(s.phi, s.ctx, s.cfg.u_cap);
    bool ok = tb.combinations_ok;
    for (const auto& z : tb.zetas) ok = ok && period_from_torsion(s.phi, z, 1, s.cfg.u_cap).exp_check.passed;
    return json{{"passed", ok}, {"distinct_roots", tb.distinct_roots}};
  });
  if (r >= 2)
    sc.add("quasi-periods", [&] {
      const auto tb = torsion_roots(s.phi, s.ctx, s.cfg.u_cap);
      bool ok = true;
      for (const auto& z : tb.zetas)
        for (const auto& qp : quasi_periods(s.phi, period_from_torsion(s.phi, z, 1, s.cfg.u_cap), s.cfg.u_cap, s.cfg.M))
          ok = ok && qp.direct_ok && qp.entire_ok;
      return json{{"passed", ok}};
    });
  if (r == 2)
    sc.add("legendre", [&] {
      const auto rep = legendre_check(s.phi, s.ctx, s.cfg.t_prec, s.cfg.u_cap);
      return json{{"passed", rep.passed}, {"c", json_io::element(*s.field, rep.c)}};
    });

  em.line({{"suite", "verify"},
           {"preset", s.cfg.preset},
           {"module", module_json(s)},
           {"checks", sc.count},
           {"failed", sc.failed},
           {"passed", sc.failed.empty()}});
  em.check(sc.failed.empty());
}

}  // namespace

// ---------------------------------------------------------------------------
// entry point

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Drinfeld module periods, deformations and identity checks"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, preset_name;
  SessionConfig flags;
  app.add_option("--config", config_path, "key = value configuration file");
  auto* o_preset = app.add_option("--preset", preset_name, "carlitz-q2, carlitz-q3, rank2-q2 or rank3-q2");
  auto* o_q = app.add_option("--q", flags.q, "base field size");
  auto* o_s = app.add_option("--s", flags.s, "residue field degree over F_q");
  auto* o_m = app.add_option("--m", flags.m, "ramification index, u^m = 1/theta");
  auto* o_u = app.add_option("--u-cap,--ucap", flags.u_cap, "verified u-digits");
  auto* o_g = app.add_option("--guard", flags.guard, "extra working digits");
  auto* o_t = app.add_option("--t-prec,--tprec", flags.t_prec, "t-adic truncation order");
  auto* o_A = app.add_option("--A", flags.A, "A_1, A_2, ... as ascending coefficient lists, e.g. 1,0,1");
  auto* o_xi = app.add_option("--xi", flags.xi, "evaluation points, e.g. 'theta^-1 + 1'");
  auto* o_seed = app.add_option("--seed", flags.seed, "seed for randomized checks");
  auto* o_N = app.add_option("--N", flags.N, "coefficient order");
  auto* o_M = app.add_option("--M", flags.M, "terms of the direct quasi-period series");
  auto* o_rank = app.add_option("--rank", flags.rank, "expected number of A_i");

  int part_r = 0, part_n = 0;
  auto* c_part = app.add_subcommand("partitions", "enumerate shadowed partitions P_r(n)");
  c_part->add_option("r", part_r)->required();
  c_part->add_option("n", part_n)->required();
  std::vector<int> part_support;
  c_part->add_option("--support", part_support, "keep S_i empty outside these indices")->delimiter(',');
  const std::vector<std::pair<std::string, std::string>> simple{
      {"coeffs", "exp/log coefficients by closed form, certified against the recurrence"},
      {"convergence", "radius, support and Newton polygon"},
      {"bseq", "B_n(t) by three routes, with norms"},
      {"deform", "deformed logarithm at each xi"},
      {"agf", "Anderson generating function at each xi"},
      {"verify-mainthm", "identities of the deformed logarithm at each xi"},
      {"period", "torsion basis and periods"},
      {"quasiperiod", "quasi-periods by three routes"},
      {"legendre", "rank-2 Legendre relation"},
      {"verify", "run every check for the session and print a scorecard"}};
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, help] : simple) subs[name] = app.add_subcommand(name, help);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  Emitter em{out};
  try {
    SessionConfig cfg;
    std::vector<std::pair<std::string, std::string>> kv;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw Error(ErrorKind::ConfigError, "cannot read " + config_path);
      std::stringstream buf;
      buf << in.rdbuf();
      kv = parse_config_text(buf.str(), config_path);
    }
    // preset < file < flags; a --preset flag outranks one named in the file
    if (o_preset->count() > 0) cfg = preset(preset_name);
    else
      for (const auto& [k, v] : kv)
        if (k == "preset") cfg = preset(v);
    for (const auto& [k, v] : kv)
      if (k != "preset") apply_key(cfg, k, v);
    if (o_q->count()) cfg.q = flags.q;
    if (o_s->count()) cfg.s = flags.s;
    if (o_m->count()) cfg.m = flags.m;
    if (o_u->count()) cfg.u_cap = flags.u_cap;
    if (o_g->count()) cfg.guard = flags.guard;
    if (o_t->count()) cfg.t_prec = flags.t_prec;
    if (o_A->count()) cfg.A = flags.A;
    if (o_xi->count()) cfg.xi = flags.xi;
    if (o_seed->count()) cfg.seed = flags.seed;
    if (o_N->count()) cfg.N = flags.N;
    if (o_M->count()) cfg.M = flags.M;
    if (o_rank->count()) cfg.rank = flags.rank;

    const Session s = open_session(cfg);
    if (c_part->parsed()) cmd_partitions(s, em, part_r, part_n, part_support);
    else if (subs["coeffs"]->parsed()) cmd_coeffs(s, em);
    else if (subs["convergence"]->parsed()) cmd_convergence(s, em);
    else if (subs["bseq"]->parsed()) cmd_bseq(s, em);
    else if (subs["deform"]->parsed()) cmd_deform(s, em);
    else if (subs["agf"]->parsed()) cmd_agf(s, em);
    else if (subs["verify-mainthm"]->parsed()) cmd_mainthm(s, em);
    else if (subs["period"]->parsed()) cmd_period(s, em);
    else if (subs["quasiperiod"]->parsed()) cmd_quasiperiod(s, em);
    else if (subs["legendre"]->parsed()) cmd_legendre(s, em);
    else if (subs["verify"]->parsed()) cmd_verify(s, em);
  } catch (const Error& e) {
    out.flush();
    if (is_precondition_error(e.kind())) {
      err << "precondition failed: " << e.what() << '\n';
      return kPrecondition;
    }
    err << "configuration error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kCheckFailed;
  }
  if (!em.ok) err << "one or more checks failed\n";
  return em.ok ? kOk : kCheckFailed;
}

}  // namespace anderson::cli
