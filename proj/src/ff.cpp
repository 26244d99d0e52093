#include "anderson/ff.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "anderson/error.hpp"

namespace anderson {

namespace {

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// Arithmetic in F_q = F_p[a]/(modulus) on indices (base-p digit packing).
struct SmallField {
  int p = 2;
  int e = 1;
  int q = 2;
  std::vector<int> addt, mult, negt, invt;

  SmallField(int p_, int e_, const std::vector<int>& modulus) : p(p_), e(e_) {
    q = 1;
    for (int i = 0; i < e; ++i) q *= p;
    addt.assign(q * q, 0);
    mult.assign(q * q, 0);
    negt.assign(q, 0);
    invt.assign(q, 0);
    for (int a = 0; a < q; ++a) {
      auto da = digits(a);
      std::vector<int> dn(e);
      for (int i = 0; i < e; ++i) dn[i] = (p - da[i]) % p;
      negt[a] = pack(dn);
      for (int b = 0; b < q; ++b) {
        auto db = digits(b);
        std::vector<int> ds(e);
        for (int i = 0; i < e; ++i) ds[i] = (da[i] + db[i]) % p;
        addt[a * q + b] = pack(ds);
        std::vector<int> prod(2 * e, 0);
        for (int i = 0; i < e; ++i)
          for (int j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
        for (int k = 2 * e - 1; k >= e; --k) {
          int c = prod[k];
          if (c == 0) continue;
          for (int i = 0; i <= e; ++i) prod[k - e + i] = ((prod[k - e + i] - c * modulus[i]) % p + p) % p;
        }
        prod.resize(e);
        mult[a * q + b] = pack(prod);
      }
    }
    for (int a = 1; a < q; ++a)
      for (int b = 1; b < q; ++b)
        if (mult[a * q + b] == 1) invt[a] = b;
  }

  std::vector<int> digits(int a) const {
    std::vector<int> d(e);
    for (int i = 0; i < e; ++i) {
      d[i] = a % p;
      a /= p;
    }
    return d;
  }
  int pack(const std::vector<int>& d) const {
    int r = 0;
    for (int i = e - 1; i >= 0; --i) r = r * p + d[i];
    return r;
  }
  int add(int a, int b) const { return addt[a * q + b]; }
  int sub(int a, int b) const { return addt[a * q + negt[b]]; }
  int mul(int a, int b) const { return mult[a * q + b]; }
};

// Polynomials over a SmallField as index vectors, low degree first.
using Poly = std::vector<int>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mod(Poly a, const Poly& m, const SmallField& f) {
  trim(a);
  int dm = static_cast<int>(m.size()) - 1;
  int lead_inv = f.invt[m.back()];
  while (static_cast<int>(a.size()) - 1 >= dm) {
    int c = f.mul(a.back(), lead_inv);
    int shift = static_cast<int>(a.size()) - 1 - dm;
    for (int i = 0; i <= dm; ++i) a[shift + i] = f.sub(a[shift + i], f.mul(c, m[i]));
    trim(a);
  }
  return a;
}

// Trial division by every monic polynomial of degree 1..deg/2.
bool is_irreducible(const Poly& m, const SmallField& f) {
  int d = static_cast<int>(m.size()) - 1;
  if (d < 1) return false;
  for (int dd = 1; 2 * dd <= d; ++dd) {
    int64_t count = 1;
    for (int i = 0; i < dd; ++i) count *= f.q;
    for (int64_t idx = 0; idx < count; ++idx) {
      Poly div(dd + 1);
      int64_t v = idx;
      for (int i = 0; i < dd; ++i) {
        div[i] = static_cast<int>(v % f.q);
        v /= f.q;
      }
      div[dd] = 1;
      if (poly_mod(m, div, f).empty()) return false;
    }
  }
  return true;
}

Poly smallest_irreducible(int deg, const SmallField& f) {
  int64_t count = 1;
  for (int i = 0; i < deg; ++i) count *= f.q;
  for (int64_t idx = 0; idx < count; ++idx) {
    Poly m(deg + 1);
    int64_t v = idx;
    for (int i = 0; i < deg; ++i) {
      m[i] = static_cast<int>(v % f.q);
      v /= f.q;
    }
    m[deg] = 1;
    if (is_irreducible(m, f)) return m;
  }
  throw Error(ErrorKind::InvalidInput, "no irreducible polynomial found");
}

std::pair<int, int> prime_power(int q) {
  for (int p = 2; p <= q; ++p) {
    if (q % p != 0) continue;
    int e = 0;
    int v = q;
    while (v % p == 0) {
      v /= p;
      ++e;
    }
    if (v != 1 || !is_prime(p)) break;
    return {p, e};
  }
  throw Error(ErrorKind::InvalidInput, "q = " + std::to_string(q) + " is not a prime power");
}

}  // namespace

int FieldParams::q() const {
  int r = 1;
  for (int i = 0; i < e; ++i) r *= p;
  return r;
}

FieldParams FieldParams::defaults(int q, int s) {
  static const int supported[] = {2, 3, 4, 5, 7, 8, 9};
  if (std::find(std::begin(supported), std::end(supported), q) == std::end(supported))
    throw Error(ErrorKind::ConfigError, "no built-in modulus for q = " + std::to_string(q));
  if (s < 1) throw Error(ErrorKind::ConfigError, "extension degree s must be positive");
  auto [p, e] = prime_power(q);
  FieldParams fp;
  fp.p = p;
  fp.e = e;
  SmallField prime(p, 1, {0, 1});
  fp.modulus = smallest_irreducible(e, prime);
  SmallField base(p, e, fp.modulus);
  Poly ms = smallest_irreducible(s, base);
  fp.s = s;
  for (int c : ms) fp.modulus_s.push_back(base.digits(c));
  return fp;
}

FieldParams FieldParams::with_degree(int s_new) const {
  if (s_new < 1) throw Error(ErrorKind::ConfigError, "extension degree s must be positive");
  FieldParams fp;
  fp.p = p;
  fp.e = e;
  fp.modulus = modulus;
  fp.s = s_new;
  SmallField base(p, e, modulus);
  for (int c : smallest_irreducible(s_new, base)) fp.modulus_s.push_back(base.digits(c));
  return fp;
}

GaloisField::GaloisField(FieldParams params) : params_(std::move(params)) {
  const int p = params_.p;
  const int e = params_.e;
  const int s = params_.s;
  if (!is_prime(p)) throw Error(ErrorKind::InvalidInput, "p = " + std::to_string(p) + " is not prime");
  if (e < 1 || s < 1) throw Error(ErrorKind::InvalidInput, "field degrees must be positive");
  if (static_cast<int>(params_.modulus.size()) != e + 1 || params_.modulus.back() != 1)
    throw Error(ErrorKind::InvalidInput, "modulus must be monic of degree e");
  for (int c : params_.modulus)
    if (c < 0 || c >= p) throw Error(ErrorKind::InvalidInput, "modulus coefficient out of range");
  double bits = (e * s) * std::log2(static_cast<double>(p));
  if (bits > 20.0 + 1e-9) throw Error(ErrorKind::InvalidInput, "field size q^s exceeds 2^20");

  SmallField prime(p, 1, {0, 1});
  if (!is_irreducible(params_.modulus, prime))
    throw Error(ErrorKind::InvalidInput, "modulus is not irreducible over F_p");
  SmallField base(p, e, params_.modulus);
  q_ = base.q;

  if (static_cast<int>(params_.modulus_s.size()) != s + 1)
    throw Error(ErrorKind::InvalidInput, "modulus_s must have degree s");
  Poly ms;
  for (const auto& c : params_.modulus_s) {
    if (static_cast<int>(c.size()) != e) throw Error(ErrorKind::InvalidInput, "modulus_s coefficient has wrong length");
    for (int d : c)
      if (d < 0 || d >= p) throw Error(ErrorKind::InvalidInput, "modulus_s coefficient out of range");
    ms.push_back(base.pack(c));
  }
  if (ms.back() != 1) throw Error(ErrorKind::InvalidInput, "modulus_s must be monic");
  if (!is_irreducible(ms, base)) throw Error(ErrorKind::InvalidInput, "modulus_s is not irreducible over F_q");

  size_ = 1;
  for (int i = 0; i < s; ++i) size_ *= static_cast<uint32_t>(q_);
  order_ = size_ - 1;

  // Element index: Σ_j base_index(c_j) q^j, which equals the base-p packing of
  // the flattened coordinate vector.
  auto unpack = [&](uint32_t idx) {
    Poly v(s);
    for (int j = 0; j < s; ++j) {
      v[j] = static_cast<int>(idx % q_);
      idx /= q_;
    }
    return v;
  };
  auto pack = [&](const Poly& v) {
    uint32_t r = 0;
    for (int j = s - 1; j >= 0; --j) r = r * q_ + static_cast<uint32_t>(j < static_cast<int>(v.size()) ? v[j] : 0);
    return r;
  };
  auto mulpoly = [&](const Poly& a, const Poly& b) {
    Poly prod(2 * s, 0);
    for (int i = 0; i < s; ++i) {
      if (a[i] == 0) continue;
      for (int j = 0; j < s; ++j) prod[i + j] = base.add(prod[i + j], base.mul(a[i], b[j]));
    }
    Poly r = poly_mod(prod, ms, base);
    r.resize(s, 0);
    return r;
  };

  exp_.assign(order_, 0);
  log_.assign(size_, 0);
  std::vector<int64_t> seen(size_, -1);
  bool found = false;
  for (uint32_t cand = size_ == 2 ? 1 : 2; cand < size_; ++cand) {
    Poly g = unpack(cand);
    Poly cur = unpack(1);
    bool ok = true;
    for (uint32_t k = 0; k < order_; ++k) {
      uint32_t idx = pack(cur);
      if (idx == 0 || (k > 0 && idx == 1)) {
        ok = false;
        break;
      }
      exp_[k] = idx;
      cur = mulpoly(cur, g);
    }
    if (ok && pack(cur) == 1) {
      found = true;
      break;
    }
  }
  if (!found) throw Error(ErrorKind::InvalidInput, "no primitive element found");
  for (uint32_t k = 0; k < order_; ++k) log_[exp_[k]] = k;

  // Zech table: log(1 + g^d).
  zech_.assign(order_, -1);
  for (uint32_t d = 0; d < order_; ++d) {
    Poly a = unpack(exp_[d]);
    a[0] = base.add(a[0], 1);
    uint32_t idx = pack(a);
    zech_[d] = idx == 0 ? -1 : static_cast<int64_t>(log_[idx]);
  }
  half_ = (p == 2) ? 0 : order_ / 2;

  frob_mult_.assign(s, 1);
  for (int k = 1; k < s; ++k) frob_mult_[k] = (frob_mult_[k - 1] * q_) % (order_ == 0 ? 1 : order_);

  base_field_.push_back(0);
  uint32_t step = order_ / static_cast<uint32_t>(q_ - 1);
  for (uint32_t k = 0; k < order_; k += step) base_field_.push_back(k + 1);
  std::sort(base_field_.begin(), base_field_.end(), [&](Code a, Code b) { return coords_less(a, b); });
}

GaloisField::Code GaloisField::inv(Code a) const {
  if (a == 0) throw Error(ErrorKind::DivideByZero, "inverse of zero in the residue field");
  uint32_t l = a - 1;
  return (l == 0 ? 0 : order_ - l) + 1;
}

GaloisField::Code GaloisField::pow(Code a, int64_t k) const {
  if (a == 0) {
    if (k > 0) return 0;
    if (k == 0) return 1;
    throw Error(ErrorKind::DivideByZero, "negative power of zero in the residue field");
  }
  int64_t ord = order_;
  int64_t kk = ((k % ord) + ord) % ord;
  uint64_t r = (static_cast<uint64_t>(a - 1) * static_cast<uint64_t>(kk)) % order_;
  return static_cast<Code>(r) + 1;
}

GaloisField::Code GaloisField::frob(Code a, int64_t k) const {
  if (a == 0) return 0;
  int64_t s = params_.s;
  int64_t kk = ((k % s) + s) % s;
  uint64_t r = (static_cast<uint64_t>(a - 1) * frob_mult_[kk]) % order_;
  return static_cast<Code>(r) + 1;
}

GaloisField::Code GaloisField::from_index(uint32_t index) const {
  if (index >= size_) throw Error(ErrorKind::InvalidElement, "element index out of range");
  return index == 0 ? 0 : log_[index] + 1;
}

uint32_t GaloisField::index(Code a) const {
  return a == 0 ? 0 : exp_[a - 1];
}

GaloisField::Code GaloisField::from_coords(std::span<const int> coords) const {
  if (static_cast<int>(coords.size()) != coord_length())
    throw Error(ErrorKind::InvalidElement, "coordinate vector has length " + std::to_string(coords.size()) +
                                               ", expected " + std::to_string(coord_length()));
  uint32_t idx = 0;
  for (int i = coord_length() - 1; i >= 0; --i) {
    int c = coords[i];
    if (c < 0 || c >= p()) throw Error(ErrorKind::InvalidElement, "coordinate out of range 0..p-1");
    idx = idx * p() + static_cast<uint32_t>(c);
  }
  return from_index(idx);
}

std::vector<int> GaloisField::coords(Code a) const {
  uint32_t idx = index(a);
  std::vector<int> c(coord_length());
  for (int i = 0; i < coord_length(); ++i) {
    c[i] = static_cast<int>(idx % p());
    idx /= p();
  }
  return c;
}

GaloisField::Code GaloisField::from_int(int64_t n) const {
  int64_t r = ((n % p()) + p()) % p();
  return from_index(static_cast<uint32_t>(r));
}

bool GaloisField::coords_less(Code a, Code b) const {
  return coords(a) < coords(b);
}

std::vector<GaloisField::Code> GaloisField::roots_q_minus_1(Code c) const {
  if (c == 0) return {0};
  uint32_t l = c - 1;
  uint32_t qm1 = static_cast<uint32_t>(q_ - 1);
  if (l % qm1 != 0) return {};
  uint32_t b0 = l / qm1;
  uint32_t step = order_ / qm1;
  std::vector<Code> out;
  for (uint32_t k = 0; k < qm1; ++k) out.push_back(static_cast<Code>((b0 + k * step) % order_) + 1);
  std::sort(out.begin(), out.end(), [&](Code a, Code b) { return coords_less(a, b); });
  return out;
}

FieldPtr make_field(FieldParams params) {
  return std::make_shared<const GaloisField>(std::move(params));
}

ResidueElem ResidueElem::operator/(const ResidueElem& o) const {
  return {field_, field_->div(code_, o.code_)};
}

ResidueElem ResidueElem::inverse() const {
  return {field_, field_->inv(code_)};
}

ResidueElem ff_make(const FieldPtr& field, std::span<const int> coords) {
  return {field, field->from_coords(coords)};
}

ResidueElem ff_pow_q(const ResidueElem& x, int64_t k) {
  return {x.field(), x.field()->frob(x.code(), k)};
}

ResidueElem ff_root_q_minus_1(const ResidueElem& c) {
  if (c.is_zero()) throw Error(ErrorKind::InvalidElement, "(q-1)-st root of zero requested");
  auto roots = c.field()->roots_q_minus_1(c.code());
  if (roots.empty()) {
    std::ostringstream os;
    os << "y^(q-1) = c has no solution in F_{q^" << c.field()->s() << "}; enlarge s";
    throw Error(ErrorKind::NoRootInField, os.str());
  }
  return {c.field(), roots.front()};
}

}  // namespace anderson
