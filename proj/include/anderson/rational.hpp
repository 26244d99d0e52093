#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace anderson {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// log_q of an absolute value; std::nullopt stands for -infinity (the zero element).
using Degree = std::optional<Rational>;

int64_t floor_to_int(const Rational& x);
int64_t ceil_to_int(const Rational& x);
std::string to_string(const Rational& x);

/// q^k as an exact integer.
BigInt big_pow(int64_t q, int64_t k);

/// q^k as int64_t; throws PrecisionExhausted when it does not fit below 2^62.
int64_t checked_pow(int64_t q, int64_t k);

/// Degree comparison treating nullopt as -infinity.
bool degree_less(const Degree& a, const Degree& b);
Degree degree_max(const Degree& a, const Degree& b);

}  // namespace anderson
