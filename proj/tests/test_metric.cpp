#include <catch2/catch_amalgamated.hpp>

#include "isbell/metric.hpp"
#include "support.hpp"

using namespace isbell;
using namespace testsupport;

TEST_CASE("projective distance on the worked example") {
    auto M = running_example();
    auto d = [&](std::initializer_list<const char*> a, std::initializer_list<const char*> b) {
        return proj_dist(ProjectiveClass(Potential::presheaf(M->row_labels(), xs(a))),
                         ProjectiveClass(Potential::presheaf(M->row_labels(), xs(b))));
    };
    CHECK(d({"0", "0", "0"}, {"0.6", "0", "1.9"}) == X("1.9"));
    CHECK(d({"0", "0", "0"}, {"5", "5", "5"}) == X("0"));

    Potential g1 = Potential::copresheaf(M->col_labels(), xs({"0.7", "-1.6", "0.1", "-2.9"}));
    Potential g2 = Potential::copresheaf(M->col_labels(), xs({"0.1", "-3.5", "0.1", "-4.8"}));
    CHECK(oscillation_distance(g1, g2) == X("1.9"));
}

TEST_CASE("coordinates where both values are the same infinity are excluded") {
    // without the exclusion the middle coordinate would contribute
    // inf - inf = inf and the distance would be infinite; with it the
    // differences are (-2, 0) and the oscillation is 2
    Potential a = Potential::presheaf({"x", "y", "z"}, {ExtReal(0), ExtReal::pos_inf(), ExtReal(1)});
    Potential b = Potential::presheaf({"x", "y", "z"}, {ExtReal(2), ExtReal::pos_inf(), ExtReal(1)});
    CHECK(oscillation_distance(a, b) == X("2"));

    // mixed infinities are not excluded and force distance +inf
    Potential c = Potential::presheaf({"x", "y", "z"}, {ExtReal(0), ExtReal::neg_inf(), ExtReal(1)});
    CHECK(oscillation_distance(a, c).is_pos_inf());
}

TEST_CASE("index-set mismatch is rejected") {
    Potential a = Potential::presheaf({"x"}, {ExtReal(0)});
    Potential b = Potential::presheaf({"y"}, {ExtReal(0)});
    CHECK_THROWS_AS(oscillation_distance(a, b), InputError);
}

TEST_CASE("metric axioms on sampled finite classes") {
    Rng rng(1111);
    std::vector<std::string> labels = {"a", "b", "c", "d"};
    for (int i = 0; i < 1000; ++i) {
        Potential f = rng.finite_potential(Side::presheaf, labels);
        Potential g = rng.finite_potential(Side::presheaf, labels);
        Potential h = rng.finite_potential(Side::presheaf, labels);
        ExtReal dfg = oscillation_distance(f, g);
        CHECK(dfg == oscillation_distance(g, f));
        CHECK(dfg >= ExtReal(0));
        // identity of indiscernibles: zero iff constant difference
        if (dfg.is_zero()) {
            Rational shift = g[0].finite_value() - f[0].finite_value();
            CHECK(f.translated(shift) == g);
        }
        // triangle
        ExtReal dfh = oscillation_distance(f, h);
        ExtReal dgh = oscillation_distance(g, h);
        CHECK(dfh <= add(dfg, dgh));
        // representative invariance
        CHECK(oscillation_distance(f.translated(rng.rational()), g) == dfg);
        // enriched-hom identity: d = -[f,g] - [g,f] when finite
        ExtReal viaHom = residuate(residuate(ExtReal(0), hom(f, g)), hom(g, f));
        CHECK(dfg == viaHom);
    }
}

TEST_CASE("transforms are 1-Lipschitz") {
    auto M = running_example();
    Rng rng(2222);
    for (int i = 0; i < 1000; ++i) {
        Potential f = rng.ext_potential(Side::presheaf, M->row_labels());
        Potential g = rng.ext_potential(Side::presheaf, M->row_labels());
        ExtReal before = oscillation_distance(f, g);
        ExtReal after = oscillation_distance(isbell_upper(*M, f), isbell_upper(*M, g));
        CHECK(after <= before);

        Potential u = rng.ext_potential(Side::copresheaf, M->col_labels());
        Potential v = rng.ext_potential(Side::copresheaf, M->col_labels());
        CHECK(oscillation_distance(isbell_lower(*M, u), isbell_lower(*M, v)) <=
              oscillation_distance(u, v));
    }
}

TEST_CASE("nucleus distance: both sides agree and max is returned") {
    auto M = running_example();
    NucleusPoint base = make_nucleus_point(M, zero_presheaf(*M));
    NucleusPoint ev =
        make_nucleus_point(M, Potential::presheaf(M->row_labels(), xs({"0", "0", "1.9"})));
    CHECK(proj_dist_nucleus(base, ev) == X("1.9"));
    CHECK(proj_dist_nucleus(base, base) == X("0"));

    Rng rng(3333);
    for (int i = 0; i < 500; ++i) {
        NucleusPoint p = make_nucleus_point(M, rng.finite_potential(Side::presheaf, M->row_labels()));
        NucleusPoint q = make_nucleus_point(M, rng.finite_potential(Side::presheaf, M->row_labels()));
        // isometry theorem: presheaf side alone determines the distance
        CHECK(proj_dist_nucleus(p, q) ==
              oscillation_distance(p.presheaf(), q.presheaf()));
        CHECK(oscillation_distance(p.presheaf(), q.presheaf()) ==
              oscillation_distance(p.copresheaf(), q.copresheaf()));
    }
}

TEST_CASE("mismatched profunctors are rejected") {
    auto M = running_example();
    auto N = make_profunctor({"c0", "c1", "c2"}, {"d1", "d2", "d3", "d4"},
                             {xs({"1", "1", "1", "1"}), xs({"1", "1", "1", "1"}),
                              xs({"1", "1", "1", "1"})});
    NucleusPoint p = make_nucleus_point(M, zero_presheaf(*M));
    NucleusPoint q = make_nucleus_point(N, zero_presheaf(*N));
    CHECK_THROWS_AS(proj_dist_nucleus(p, q), InputError);
}

TEST_CASE("gauge acts by isometries") {
    auto M = running_example();
    Rng rng(4444);
    for (int i = 0; i < 500; ++i) {
        Potential f = rng.finite_potential(Side::presheaf, M->row_labels());
        Potential g = rng.finite_potential(Side::presheaf, M->row_labels());
        std::vector<Rational> u;
        for (std::size_t c = 0; c < M->n_rows(); ++c) u.push_back(rng.rational());
        auto gauge = [&](const Potential& p) {
            std::vector<ExtReal> values;
            for (std::size_t c = 0; c < p.size(); ++c) values.push_back(add(p[c], ExtReal(-u[c])));
            return Potential::presheaf(M->row_labels(), values);
        };
        CHECK(oscillation_distance(gauge(f), gauge(g)) == oscillation_distance(f, g));
    }
}

TEST_CASE("profunctor norm") {
    auto M = running_example();
    CHECK(profunctor_norm(*M) == X("5.1"));

    auto constant = make_profunctor({"a", "b"}, {"u", "v"},
                                    {xs({"3", "3"}), xs({"3", "3"})});
    CHECK(profunctor_norm(*constant) == X("0"));

    auto single = make_profunctor({"a"}, {"u"}, {xs({"-7.25"})});
    CHECK(profunctor_norm(*single) == X("0"));
}

TEST_CASE("every closed presheaf lies within the norm ball around zero") {
    auto M = running_example();
    ExtReal bound = profunctor_norm(*M);
    Potential origin = Potential::zero(Side::presheaf, M->row_labels());
    Rng rng(5555);
    for (int i = 0; i < 1000; ++i) {
        Potential f = closure_presheaf(*M, rng.finite_potential(Side::presheaf, M->row_labels()));
        CHECK(oscillation_distance(f, origin) <= bound);
    }
}
