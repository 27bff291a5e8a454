#include <catch2/catch_amalgamated.hpp>

#include "isbell/linfeas.hpp"
#include "support.hpp"

using namespace isbell;
using testsupport::Rng;

namespace {

AffineForm form(std::vector<int> coeffs, Rational constant) {
    std::vector<Rational> c(coeffs.begin(), coeffs.end());
    return AffineForm(std::move(c), std::move(constant));
}

bool satisfies(const AffineConstraint& c, const std::vector<Rational>& x) {
    Rational v = c.form.eval(x);
    switch (c.rel) {
        case Rel::eq: return v == 0;
        case Rel::le: return v <= 0;
        case Rel::lt: return v < 0;
    }
    return false;
}

} // namespace

TEST_CASE("simple intervals") {
    // x >= 0, x <= 1
    auto r = linear_feasible(1, {le_zero(form({-1}, 0)), le_zero(form({1}, -1))});
    REQUIRE(r.feasible);
    CHECK(r.point[0] >= 0);
    CHECK(r.point[0] <= 1);

    // x < 0, x > 0
    auto bad = linear_feasible(1, {lt_zero(form({1}, 0)), lt_zero(form({-1}, 0))});
    CHECK_FALSE(bad.feasible);

    // strict against weak at the same bound: x <= 0, x > 0
    CHECK_FALSE(linear_feasible(1, {le_zero(form({1}, 0)), lt_zero(form({-1}, 0))}).feasible);

    // pinned point: x >= 2, x <= 2
    auto pinned = linear_feasible(1, {le_zero(form({-1}, 2)), le_zero(form({1}, -2))});
    REQUIRE(pinned.feasible);
    CHECK(pinned.point[0] == 2);
}

TEST_CASE("equalities substitute exactly") {
    // x + y = 1, x - y = 0  =>  x = y = 1/2
    auto r = linear_feasible(2, {eq_zero(form({1, 1}, -1)), eq_zero(form({1, -1}, 0))});
    REQUIRE(r.feasible);
    CHECK(r.point[0] == Rational(1, 2));
    CHECK(r.point[1] == Rational(1, 2));

    // inconsistent equalities
    CHECK_FALSE(
        linear_feasible(2, {eq_zero(form({1, 1}, -1)), eq_zero(form({1, 1}, -2))}).feasible);
}

TEST_CASE("strict chains across eliminations") {
    // x < y, y < z, z < x is infeasible
    auto r = linear_feasible(3, {lt_zero(form({1, -1, 0}, 0)), lt_zero(form({0, 1, -1}, 0)),
                                 lt_zero(form({-1, 0, 1}, 0))});
    CHECK_FALSE(r.feasible);

    // x < y, y < z is feasible with a strict separation
    auto ok = linear_feasible(3, {lt_zero(form({1, -1, 0}, 0)), lt_zero(form({0, 1, -1}, 0))});
    REQUIRE(ok.feasible);
    CHECK(ok.point[0] < ok.point[1]);
    CHECK(ok.point[1] < ok.point[2]);
}

TEST_CASE("returned points satisfy every constraint (randomized)") {
    Rng rng(8080);
    int feasible_seen = 0;
    for (int trial = 0; trial < 1500; ++trial) {
        std::size_t n = 1 + rng.index(4);
        std::size_t m = 1 + rng.index(8);
        std::vector<AffineConstraint> cs;
        for (std::size_t i = 0; i < m; ++i) {
            std::vector<Rational> coeffs;
            for (std::size_t j = 0; j < n; ++j)
                coeffs.push_back(Rational(static_cast<int>(rng.index(7)) - 3));
            AffineForm f(std::move(coeffs), rng.rational(6));
            switch (rng.index(4)) {
                case 0: cs.push_back(eq_zero(std::move(f))); break;
                case 1: cs.push_back(lt_zero(std::move(f))); break;
                default: cs.push_back(le_zero(std::move(f))); break;
            }
        }
        auto r = linear_feasible(n, cs);
        if (r.feasible) {
            ++feasible_seen;
            for (const auto& c : cs) CHECK(satisfies(c, r.point));
        } else {
            // cross-check with a coarse random search: no sampled point may satisfy all
            for (int probe = 0; probe < 20; ++probe) {
                std::vector<Rational> x;
                for (std::size_t j = 0; j < n; ++j) x.push_back(rng.rational(8));
                bool all = true;
                for (const auto& c : cs) all = all && satisfies(c, x);
                CHECK_FALSE(all);
            }
        }
    }
    CHECK(feasible_seen > 100); // the generator must exercise the feasible path
}
