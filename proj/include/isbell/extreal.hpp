#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <utility>

#include "isbell/rational.hpp"

namespace isbell {

/// An extended real in [-inf, +inf] with exact rational finite values.
///
/// Addition makes -inf absorbing (so (-inf) + (+inf) = -inf) and subtraction
/// is the residuation z - y = sup{ x | x + y <= z }, which differs from naive
/// arithmetic at the infinities: z - (-inf) = +inf for every z, and
/// (+inf) - (+inf) = +inf.
class ExtReal {
public:
    ExtReal() : kind_(Kind::finite), value_(0) {}
    ExtReal(Rational v) : kind_(Kind::finite), value_(std::move(v)) {}
    ExtReal(int v) : kind_(Kind::finite), value_(v) {}

    static ExtReal neg_inf() { return ExtReal(Kind::neg_inf); }
    static ExtReal pos_inf() { return ExtReal(Kind::pos_inf); }

    bool is_neg_inf() const { return kind_ == Kind::neg_inf; }
    bool is_pos_inf() const { return kind_ == Kind::pos_inf; }
    bool is_finite() const { return kind_ == Kind::finite; }

    /// Finite value; undefined unless is_finite().
    const Rational& finite_value() const { return value_; }

    bool operator==(const ExtReal& o) const {
        return kind_ == o.kind_ && (kind_ != Kind::finite || value_ == o.value_);
    }

    std::strong_ordering operator<=>(const ExtReal& o) const {
        if (kind_ != o.kind_) return rank() <=> o.rank();
        if (kind_ != Kind::finite) return std::strong_ordering::equal;
        if (value_ < o.value_) return std::strong_ordering::less;
        if (value_ > o.value_) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    bool is_zero() const { return kind_ == Kind::finite && value_ == 0; }

    /// Monoidal addition with -inf absorbing.
    friend ExtReal add(const ExtReal& x, const ExtReal& y) {
        if (x.is_neg_inf() || y.is_neg_inf()) return neg_inf();
        if (x.is_pos_inf() || y.is_pos_inf()) return pos_inf();
        return ExtReal(x.value_ + y.value_);
    }

    /// Residuated subtraction: sup{ x | add(x, y) <= z }.
    friend ExtReal residuate(const ExtReal& z, const ExtReal& y) {
        if (y.is_neg_inf()) return pos_inf();
        if (z.is_pos_inf()) return pos_inf();
        if (y.is_pos_inf()) return neg_inf();
        if (z.is_neg_inf()) return neg_inf();
        return ExtReal(z.value_ - y.value_);
    }

    friend ExtReal operator+(const ExtReal& x, const ExtReal& y) { return add(x, y); }
    friend ExtReal operator-(const ExtReal& z, const ExtReal& y) { return residuate(z, y); }

    friend const ExtReal& min(const ExtReal& a, const ExtReal& b) { return b < a ? b : a; }
    friend const ExtReal& max(const ExtReal& a, const ExtReal& b) { return a < b ? b : a; }

    /// Accepts "inf", "+inf", "-inf" or any parse_rational form.
    static ExtReal parse(std::string_view text) {
        if (text == "inf" || text == "+inf") return pos_inf();
        if (text == "-inf") return neg_inf();
        return ExtReal(parse_rational(text));
    }

    std::string str() const {
        switch (kind_) {
            case Kind::neg_inf: return "-inf";
            case Kind::pos_inf: return "inf";
            default: return render_rational(value_);
        }
    }

private:
    enum class Kind { neg_inf, finite, pos_inf };

    explicit ExtReal(Kind k) : kind_(k), value_(0) {}
    int rank() const { return kind_ == Kind::neg_inf ? -1 : (kind_ == Kind::pos_inf ? 1 : 0); }

    Kind kind_;
    Rational value_;
};

} // namespace isbell
