#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "isbell/errors.hpp"
#include "isbell/rational.hpp"

namespace isbell {

/// constant + sum_i coeffs[i] * x_i.
struct AffineForm {
    std::vector<Rational> coeffs;
    Rational constant;

    explicit AffineForm(std::size_t n_vars) : coeffs(n_vars, Rational(0)), constant(0) {}
    AffineForm(std::vector<Rational> c, Rational k) : coeffs(std::move(c)), constant(std::move(k)) {}

    static AffineForm constant_form(std::size_t n_vars, Rational k) {
        return AffineForm(std::vector<Rational>(n_vars, Rational(0)), std::move(k));
    }
    static AffineForm variable(std::size_t n_vars, std::size_t i) {
        AffineForm f(n_vars);
        f.coeffs[i] = 1;
        return f;
    }

    std::size_t n_vars() const { return coeffs.size(); }

    bool is_constant() const {
        for (const auto& c : coeffs)
            if (c != 0) return false;
        return true;
    }

    Rational eval(const std::vector<Rational>& x) const {
        Rational v = constant;
        for (std::size_t i = 0; i < coeffs.size(); ++i)
            if (coeffs[i] != 0) v += coeffs[i] * x[i];
        return v;
    }

    AffineForm& operator+=(const AffineForm& o) {
        for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += o.coeffs[i];
        constant += o.constant;
        return *this;
    }
    AffineForm& operator-=(const AffineForm& o) {
        for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] -= o.coeffs[i];
        constant -= o.constant;
        return *this;
    }
    AffineForm& operator*=(const Rational& s) {
        for (auto& c : coeffs) c *= s;
        constant *= s;
        return *this;
    }
    friend AffineForm operator+(AffineForm a, const AffineForm& b) { return a += b; }
    friend AffineForm operator-(AffineForm a, const AffineForm& b) { return a -= b; }
    friend AffineForm operator*(AffineForm a, const Rational& s) { return a *= s; }

    bool operator==(const AffineForm& o) const {
        return coeffs == o.coeffs && constant == o.constant;
    }
};

/// Relation of an affine form against zero.
enum class Rel { eq, le, lt };

struct AffineConstraint {
    AffineForm form;
    Rel rel;
};

inline AffineConstraint eq_zero(AffineForm f) { return {std::move(f), Rel::eq}; }
inline AffineConstraint le_zero(AffineForm f) { return {std::move(f), Rel::le}; }
inline AffineConstraint lt_zero(AffineForm f) { return {std::move(f), Rel::lt}; }

struct LinearFeasibility {
    bool feasible = false;
    std::vector<Rational> point; // a satisfying assignment when feasible
};

/// Projects a constraint system onto its first `keep` variables: equalities
/// touching an eliminated variable are substituted away, the rest are
/// eliminated by Fourier-Motzkin. The result describes exactly the shadow of
/// the solution set.
inline std::vector<AffineConstraint> project_onto_prefix(std::size_t n_vars, std::size_t keep,
                                                         std::vector<AffineConstraint> constraints) {
    // substitute equalities that involve an eliminated variable
    while (true) {
        std::optional<std::size_t> pick;
        std::size_t pivot_var = 0;
        for (std::size_t i = 0; i < constraints.size() && !pick; ++i) {
            if (constraints[i].rel != Rel::eq) continue;
            for (std::size_t v = keep; v < n_vars; ++v)
                if (constraints[i].form.coeffs[v] != 0) {
                    pick = i;
                    pivot_var = v;
                    break;
                }
        }
        if (!pick) break;
        AffineConstraint eq = std::move(constraints[*pick]);
        constraints.erase(constraints.begin() + static_cast<std::ptrdiff_t>(*pick));
        Rational a = eq.form.coeffs[pivot_var];
        AffineForm expr = eq.form;
        expr.coeffs[pivot_var] = 0;
        expr *= Rational(-1) / a;
        for (auto& c : constraints) {
            Rational coeff = c.form.coeffs[pivot_var];
            if (coeff == 0) continue;
            c.form.coeffs[pivot_var] = 0;
            AffineForm scaled = expr;
            scaled *= coeff;
            c.form += scaled;
        }
    }
    // Fourier-Motzkin on the remaining eliminated variables
    for (std::size_t v = keep; v < n_vars; ++v) {
        std::vector<AffineConstraint> lowers, uppers, rest;
        for (auto& c : constraints) {
            const Rational& a = c.form.coeffs[v];
            if (a > 0)
                uppers.push_back(c);
            else if (a < 0)
                lowers.push_back(c);
            else
                rest.push_back(c);
        }
        for (const auto& lo : lowers)
            for (const auto& up : uppers) {
                AffineForm combined = lo.form * (Rational(1) / -lo.form.coeffs[v]) +
                                      up.form * (Rational(1) / up.form.coeffs[v]);
                combined.coeffs[v] = 0;
                Rel rel = (lo.rel == Rel::lt || up.rel == Rel::lt) ? Rel::lt : Rel::le;
                rest.push_back({std::move(combined), rel});
            }
        constraints = std::move(rest);
    }
    for (auto& c : constraints) c.form.coeffs.resize(keep);
    return constraints;
}

/// Exact feasibility of a system of affine equalities and (possibly strict)
/// inequalities by variable elimination: equalities are substituted away,
/// then Fourier-Motzkin handles the inequalities, tracking open/closed
/// bounds. Returns a rational feasible point when the system is consistent.
inline LinearFeasibility linear_feasible(std::size_t n_vars,
                                         std::vector<AffineConstraint> constraints) {
    struct Substitution {
        std::size_t var;
        AffineForm expr; // var = expr, referencing only still-free variables
    };
    std::vector<Substitution> subs;
    std::vector<AffineConstraint> ineqs;

    // substitute equalities away
    std::vector<AffineConstraint> pending = std::move(constraints);
    while (true) {
        std::optional<std::size_t> eq_index;
        for (std::size_t i = 0; i < pending.size(); ++i)
            if (pending[i].rel == Rel::eq && !pending[i].form.is_constant()) {
                eq_index = i;
                break;
            }
        if (!eq_index) break;
        AffineConstraint eq = std::move(pending[*eq_index]);
        pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(*eq_index));
        std::size_t var = 0;
        while (eq.form.coeffs[var] == 0) ++var;
        Rational a = eq.form.coeffs[var];
        AffineForm expr = eq.form;
        expr.coeffs[var] = 0;
        expr *= Rational(-1) / a; // var = expr
        auto apply = [&](AffineForm& f) {
            Rational c = f.coeffs[var];
            if (c == 0) return;
            f.coeffs[var] = 0;
            AffineForm scaled = expr;
            scaled *= c;
            f += scaled;
        };
        for (auto& p : pending) apply(p.form);
        for (auto& s : subs) apply(s.expr);
        subs.push_back({var, std::move(expr)});
    }
    for (auto& p : pending) {
        if (p.rel == Rel::eq) {
            if (p.form.constant != 0) return {};
        } else {
            ineqs.push_back(std::move(p));
        }
    }

    // Fourier-Motzkin over the remaining variables; stages[v] holds the
    // system before variable v is eliminated
    std::vector<std::vector<AffineConstraint>> stages(n_vars + 1);
    stages[0] = std::move(ineqs);
    for (std::size_t v = 0; v < n_vars; ++v) {
        std::vector<AffineConstraint> lowers, uppers, rest;
        for (auto& c : stages[v]) {
            const Rational& a = c.form.coeffs[v];
            if (a > 0)
                uppers.push_back(c);
            else if (a < 0)
                lowers.push_back(c);
            else
                rest.push_back(c);
        }
        for (const auto& lo : lowers)
            for (const auto& up : uppers) {
                // lo: a<0 gives x >= bound; up: a>0 gives x <= bound;
                // combine to bound_lo (rel) bound_up
                AffineForm combined = lo.form * (Rational(1) / -lo.form.coeffs[v]) +
                                      up.form * (Rational(1) / up.form.coeffs[v]);
                combined.coeffs[v] = 0;
                Rel rel = (lo.rel == Rel::lt || up.rel == Rel::lt) ? Rel::lt : Rel::le;
                rest.push_back({std::move(combined), rel});
            }
        stages[v + 1] = std::move(rest);
    }
    for (const auto& c : stages[n_vars]) {
        const Rational& k = c.form.constant;
        if (c.rel == Rel::le ? k > 0 : k >= 0) return {};
    }

    // back-substitute a feasible point
    std::vector<Rational> x(n_vars, Rational(0));
    for (std::size_t vi = n_vars; vi-- > 0;) {
        std::optional<Rational> lo, hi;
        bool lo_strict = false, hi_strict = false;
        for (const auto& c : stages[vi]) {
            const Rational& a = c.form.coeffs[vi];
            if (a == 0) continue;
            Rational rest = c.form.constant;
            for (std::size_t j = vi + 1; j < n_vars; ++j)
                if (c.form.coeffs[j] != 0) rest += c.form.coeffs[j] * x[j];
            Rational bound = -rest / a;
            bool strict = c.rel == Rel::lt;
            if (a > 0) { // x <= bound
                if (!hi || bound < *hi) {
                    hi = bound;
                    hi_strict = strict;
                } else if (bound == *hi && strict) {
                    hi_strict = true;
                }
            } else { // x >= bound
                if (!lo || bound > *lo) {
                    lo = bound;
                    lo_strict = strict;
                } else if (bound == *lo && strict) {
                    lo_strict = true;
                }
            }
        }
        if (lo && hi) {
            if (*lo > *hi || (*lo == *hi && (lo_strict || hi_strict)))
                throw InternalError("empty interval after Fourier-Motzkin elimination");
            x[vi] = *lo == *hi ? *lo : (*lo + *hi) / 2;
        } else if (lo) {
            x[vi] = lo_strict ? *lo + 1 : *lo;
        } else if (hi) {
            x[vi] = hi_strict ? *hi - 1 : *hi;
        } else {
            x[vi] = 0;
        }
    }
    for (auto it = subs.rbegin(); it != subs.rend(); ++it) x[it->var] = it->expr.eval(x);
    return {true, std::move(x)};
}

} // namespace isbell
