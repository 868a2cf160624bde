#include "ae/numeric.hpp"

#include <cctype>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace ae {

std::optional<Rational> exact_sqrt(const Rational& value) {
    if (value < 0) return std::nullopt;
    const BigInt num = boost::multiprecision::numerator(value);
    const BigInt den = boost::multiprecision::denominator(value);
    const BigInt rn = boost::multiprecision::sqrt(num);
    const BigInt rd = boost::multiprecision::sqrt(den);
    if (rn * rn != num || rd * rd != den) return std::nullopt;
    return Rational(rn, rd);
}

std::string rational_string(const Rational& value) {
    const BigInt den = boost::multiprecision::denominator(value);
    std::string out = boost::multiprecision::numerator(value).str();
    if (den != 1) {
        out += '/';
        out += den.str();
    }
    return out;
}

std::string decimal_string(const BigFloat& value, int digits) {
    if (digits < 1) digits = 1;
    std::ostringstream os;
    os << std::setprecision(digits) << value;
    return os.str();
}

std::string decimal_string(const Rational& value, int digits) {
    return decimal_string(to_bigfloat(value), digits);
}

Rational parse_rational(std::string_view text) {
    const std::string s(text);
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    if (const auto slash = s.find('/'); slash != std::string::npos) {
        return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
    }
    if (s.find_first_of(".eE") == std::string::npos) {
        return Rational(BigInt(s));
    }
    // Decimal literal: parse mantissa digits exactly, then scale by 10^exponent.
    std::size_t pos = 0;
    bool negative = false;
    if (s[pos] == '+' || s[pos] == '-') negative = s[pos++] == '-';
    BigInt mantissa = 0;
    long frac_digits = 0;
    bool seen_dot = false, seen_digit = false;
    for (; pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '.'); ++pos) {
        if (s[pos] == '.') {
            if (seen_dot) throw std::invalid_argument("bad rational literal: " + s);
            seen_dot = true;
            continue;
        }
        mantissa = mantissa * 10 + (s[pos] - '0');
        seen_digit = true;
        if (seen_dot) ++frac_digits;
    }
    long exponent = 0;
    if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
        exponent = std::stol(s.substr(pos + 1));
        pos = s.size();
    }
    if (!seen_digit || pos != s.size()) throw std::invalid_argument("bad rational literal: " + s);
    Rational out(mantissa);
    const long net = exponent - frac_digits;
    const BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(net < 0 ? -net : net));
    if (net < 0) out /= Rational(scale);
    else out *= Rational(scale);
    return negative ? -out : out;
}

}  // namespace ae
