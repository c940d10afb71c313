#pragma once

#include <cctype>
#include <string>

#include "cdzero/element.hpp"
#include "cdzero/errors.hpp"
#include "cdzero/rational.hpp"

namespace cdzero {

/// Parses "e1 + 2e10 - 1/2 e16" style text into an element of A_level.
/// Whitespace is insignificant; coefficients are signed rationals; a bare
/// coefficient (no basis name) is a multiple of e0; repeated basis names sum.
inline Element<Rational> parse_element(const std::string& text, int level, bool allow_large = false) {
    check_level_cap(level, allow_large);
    Element<Rational> out(level);
    std::size_t i = 0;
    const auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    const auto read_int = [&](const char* what) -> std::string {
        const std::size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (i == start)
            throw ParseError(std::string("expected ") + what + " at position " + std::to_string(start) +
                             " in '" + text + "'");
        return text.substr(start, i - start);
    };

    skip_ws();
    if (i == text.size()) throw ParseError("empty element expression");
    bool first_term = true;
    while (true) {
        skip_ws();
        if (i == text.size()) {
            if (first_term) throw ParseError("empty element expression");
            break;
        }
        Rational sign = 1;
        if (text[i] == '+' || text[i] == '-') {
            if (text[i] == '-') sign = -1;
            ++i;
            skip_ws();
        } else if (!first_term) {
            throw ParseError("expected '+' or '-' at position " + std::to_string(i) + " in '" + text + "'");
        }
        first_term = false;

        Rational coef = 1;
        bool saw_coef = false;
        if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            saw_coef = true;
            const std::string num = read_int("numerator");
            std::string den;
            std::size_t save = i;
            skip_ws();
            if (i < text.size() && text[i] == '/') {
                ++i;
                skip_ws();
                den = read_int("denominator");
                if (Rational(den) == 0) throw ParseError("zero denominator in '" + text + "'");
            } else {
                i = save;
            }
            coef = den.empty() ? Rational(num) : Rational(BigInt(num), BigInt(den));
        }
        skip_ws();
        if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
            ++i;
            skip_ws();
            const std::string idx_digits = read_int("basis index");
            const long idx = std::stol(idx_digits);
            if (idx >= (long(1) << level))
                throw ParseError("basis index e" + idx_digits + " out of range for level " +
                                 std::to_string(level));
            out[int(idx)] += sign * coef;
        } else if (saw_coef) {
            out[0] += sign * coef;  // bare scalar term
        } else {
            throw ParseError("expected coefficient or basis name at position " + std::to_string(i) +
                             " in '" + text + "'");
        }
    }
    return out;
}

/// Canonical flat text form, e.g. "e1 + 2e10 - 1/2 e16"; "0" for zero.
template <class S>
std::string format_element(const Element<S>& a) {
    std::string out;
    for (int k = 0; k < a.dim(); ++k) {
        if (a[k] == S(0)) continue;
        const bool negative = a[k] < S(0);
        S mag = negative ? S(-a[k]) : a[k];
        if (out.empty()) {
            if (negative) out += "-";
        } else {
            out += negative ? " - " : " + ";
        }
        std::string coef = format_scalar(mag);
        if (k == 0) {
            out += coef;
        } else if (mag == S(1)) {
            out += "e" + std::to_string(k);
        } else if (coef.find('/') == std::string::npos && coef.find('.') == std::string::npos &&
                   coef.find('e') == std::string::npos) {
            out += coef + "e" + std::to_string(k);
        } else {
            out += coef + " e" + std::to_string(k);
        }
    }
    return out.empty() ? "0" : out;
}

}  // namespace cdzero
