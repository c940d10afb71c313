#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "cdzero/errors.hpp"

namespace cdzero {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.template convert_to<double>(); }
inline double to_double(double x) { return x; }

/// "p/q" with the denominator omitted when it is 1.
inline std::string format_rational(const Rational& r) { return r.str(); }

inline std::string format_scalar(const Rational& r) { return format_rational(r); }
inline std::string format_scalar(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

/// Parses "p", "-p" or "p/q" (q > 0 after normalisation). Throws ParseError.
inline Rational parse_rational(const std::string& text) {
    if (text.empty()) throw ParseError("empty rational literal");
    std::size_t i = 0;
    bool neg = false;
    if (text[i] == '+' || text[i] == '-') {
        neg = text[i] == '-';
        ++i;
    }
    auto read_digits = [&](const char* part) {
        std::size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (i == start) throw ParseError(std::string("expected digits in rational ") + part + ": '" + text + "'");
        return text.substr(start, i - start);
    };
    BigInt num(read_digits("numerator"));
    BigInt den = 1;
    if (i < text.size() && text[i] == '/') {
        ++i;
        den = BigInt(read_digits("denominator"));
        if (den == 0) throw ParseError("zero denominator in '" + text + "'");
    }
    if (i != text.size()) throw ParseError("trailing characters in rational '" + text + "'");
    Rational r(num, den);
    return neg ? Rational(-r) : r;
}

/// Exact square root when `r` is the square of a rational; returns false otherwise.
inline bool exact_sqrt(const Rational& r, Rational& out) {
    if (r < 0) return false;
    if (r == 0) {
        out = 0;
        return true;
    }
    const BigInt num = boost::multiprecision::numerator(r);
    const BigInt den = boost::multiprecision::denominator(r);
    const BigInt sn = boost::multiprecision::sqrt(num);
    const BigInt sd = boost::multiprecision::sqrt(den);
    if (sn * sn != num || sd * sd != den) return false;
    out = Rational(sn, sd);
    return true;
}

/// Best rational approximation with denominator <= max_denominator, by
/// continued-fraction convergents.
inline Rational nearest_rational(double value, std::int64_t max_denominator = 4096) {
    if (!std::isfinite(value)) throw PreconditionError("nearest_rational needs a finite value");
    const bool neg = value < 0;
    double x = neg ? -value : value;
    BigInt p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    for (int iter = 0; iter < 64; ++iter) {
        const double floor_x = std::floor(x);
        BigInt a(static_cast<long long>(floor_x));
        BigInt p2 = a * p1 + p0;
        BigInt q2 = a * q1 + q0;
        if (q2 > max_denominator) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        const double frac = x - floor_x;
        if (frac < 1e-12) break;
        x = 1.0 / frac;
    }
    if (q1 == 0) return Rational(0);
    Rational r(p1, q1);
    return neg ? Rational(-r) : r;
}

/// log|r| without overflowing double, via bit lengths; -inf for r = 0.
inline double log_abs(const Rational& r) {
    if (r == 0) return -std::numeric_limits<double>::infinity();
    auto log_int = [](BigInt v) {
        v = boost::multiprecision::abs(v);
        const unsigned bits = boost::multiprecision::msb(v);
        if (bits <= 52) return std::log(v.template convert_to<double>());
        const BigInt top = v >> (bits - 52);
        return std::log(top.template convert_to<double>()) + (bits - 52) * std::log(2.0);
    };
    return log_int(boost::multiprecision::numerator(r)) -
           log_int(boost::multiprecision::denominator(r));
}

inline double log_abs(double x) {
    return x == 0.0 ? -std::numeric_limits<double>::infinity() : std::log(std::fabs(x));
}

}  // namespace cdzero
