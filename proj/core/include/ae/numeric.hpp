#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace ae {

// Exact arithmetic everywhere the alarm classification can see; floats are for
// display and bulk simulation only.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using BigFloat = boost::multiprecision::number<boost::multiprecision::cpp_dec_float<100>>;

inline BigFloat to_bigfloat(const Rational& r) {
    return BigFloat(boost::multiprecision::numerator(r)) /
           BigFloat(boost::multiprecision::denominator(r));
}

// Exact square root of a non-negative rational; nullopt unless numerator and
// denominator (in lowest terms) are both perfect squares.
std::optional<Rational> exact_sqrt(const Rational& value);

// "num/den" in lowest terms ("num" alone when den == 1).
std::string rational_string(const Rational& value);

// Decimal approximation with the given significant digits.
std::string decimal_string(const Rational& value, int digits);
std::string decimal_string(const BigFloat& value, int digits);

// Accepts "num/den", integers, and plain decimals ("0.35", "-1.5e-2").
Rational parse_rational(std::string_view text);

}  // namespace ae
