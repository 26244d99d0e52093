#include "anderson/rational.hpp"

#include <sstream>

#include "anderson/error.hpp"

namespace anderson {

int64_t floor_to_int(const Rational& x) {
  BigInt num = boost::multiprecision::numerator(x);
  BigInt den = boost::multiprecision::denominator(x);
  BigInt quot = num / den;
  if (num % den != 0 && num < 0) quot -= 1;
  return quot.convert_to<int64_t>();
}

int64_t ceil_to_int(const Rational& x) {
  return -floor_to_int(-x);
}

std::string to_string(const Rational& x) {
  std::ostringstream os;
  os << boost::multiprecision::numerator(x);
  if (boost::multiprecision::denominator(x) != 1) os << "/" << boost::multiprecision::denominator(x);
  return os.str();
}

BigInt big_pow(int64_t q, int64_t k) {
  BigInt r = 1;
  for (int64_t i = 0; i < k; ++i) r *= q;
  return r;
}

int64_t checked_pow(int64_t q, int64_t k) {
  constexpr int64_t limit = int64_t{1} << 62;
  int64_t r = 1;
  for (int64_t i = 0; i < k; ++i) {
    if (r > limit / q) throw Error(ErrorKind::PrecisionExhausted, "q^k overflows the exponent range");
    r *= q;
  }
  return r;
}

bool degree_less(const Degree& a, const Degree& b) {
  if (!b) return false;
  if (!a) return true;
  return *a < *b;
}

Degree degree_max(const Degree& a, const Degree& b) {
  return degree_less(a, b) ? b : a;
}

}  // namespace anderson
