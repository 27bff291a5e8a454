#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

#include "isbell/errors.hpp"

namespace isbell {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

namespace detail {

inline bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

} // namespace detail

/// Parse a rational from decimal ("1.6", "-0.25e2"), integer ("42") or
/// fraction ("8/5") notation. Decimal input is exact base-10: "0.7" is 7/10.
inline Rational parse_rational(std::string_view text) {
    const std::string original(text);
    auto fail = [&]() -> Rational {
        throw InputError("not a rational number: '" + original + "'");
    };

    bool negative = false;
    if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    if (text.empty()) return fail();

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        std::string_view num = text.substr(0, slash);
        std::string_view den = text.substr(slash + 1);
        if (!detail::all_digits(num) || !detail::all_digits(den)) return fail();
        Integer n{std::string(num)};
        Integer d{std::string(den)};
        if (d == 0) return fail();
        Rational q(n, d);
        return negative ? -q : q;
    }

    std::string_view mantissa = text;
    long exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
        mantissa = text.substr(0, e);
        std::string_view exp = text.substr(e + 1);
        bool exp_neg = false;
        if (!exp.empty() && (exp.front() == '+' || exp.front() == '-')) {
            exp_neg = exp.front() == '-';
            exp.remove_prefix(1);
        }
        if (!detail::all_digits(exp) || exp.size() > 6) return fail();
        exponent = std::stol(std::string(exp));
        if (exp_neg) exponent = -exponent;
    }

    std::string_view int_part = mantissa;
    std::string_view frac_part;
    if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
        int_part = mantissa.substr(0, dot);
        frac_part = mantissa.substr(dot + 1);
    }
    if (int_part.empty() && frac_part.empty()) return fail();
    if (!int_part.empty() && !detail::all_digits(int_part)) return fail();
    if (!frac_part.empty() && !detail::all_digits(frac_part)) return fail();

    Integer digits = int_part.empty() ? Integer(0) : Integer{std::string(int_part)};
    Integer ten(10);
    for (char c : frac_part) digits = digits * ten + (c - '0');

    long scale = exponent - static_cast<long>(frac_part.size());
    Rational q(digits);
    if (scale > 0) {
        q *= Rational(boost::multiprecision::pow(ten, static_cast<unsigned>(scale)));
    } else if (scale < 0) {
        q /= Rational(boost::multiprecision::pow(ten, static_cast<unsigned>(-scale)));
    }
    return negative ? -q : q;
}

/// Canonical text form: finite decimal expansion when the denominator is of
/// the form 2^a 5^b ("1.6", "-0.125"), otherwise "p/q". Round-trips exactly
/// through parse_rational.
inline std::string render_rational(const Rational& q) {
    Integer num = numerator(q);
    Integer den = denominator(q);
    if (den == 1) return num.str();

    Integer d = den;
    unsigned twos = 0, fives = 0;
    while (d % 2 == 0) { d /= 2; ++twos; }
    while (d % 5 == 0) { d /= 5; ++fives; }
    if (d != 1) return num.str() + "/" + den.str();

    unsigned digits = std::max(twos, fives);
    Integer scaled = num * boost::multiprecision::pow(Integer(10), digits) / den;
    bool negative = scaled < 0;
    Integer magnitude = negative ? Integer(-scaled) : scaled;
    std::string body = magnitude.str();
    if (body.size() <= digits) body.insert(0, digits - body.size() + 1, '0');
    body.insert(body.size() - digits, ".");
    while (body.back() == '0') body.pop_back();
    if (body.back() == '.') body.pop_back();
    return negative ? "-" + body : body;
}

} // namespace isbell
