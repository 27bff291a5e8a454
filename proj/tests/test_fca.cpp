#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "isbell/fca.hpp"
#include "support.hpp"

using namespace isbell;
using namespace testsupport;

namespace {

const std::vector<std::string> kRows = {"c0", "c1", "c2"};
const std::vector<std::string> kCols = {"d1", "d2", "d3", "d4"};

// the relation chain of the worked example (section numbers refer to labels
// used in the tests only)
const PairSet kR0 = {{0, 0}, {1, 2}, {2, 1}, {2, 3}};

PairSet with(PairSet base, std::initializer_list<Pair> extra) {
    base.insert(extra.begin(), extra.end());
    return base;
}

const PairSet kR1 = with(kR0, {{1, 0}});
const PairSet kR2 = with(kR1, {{2, 0}});
const PairSet kR3a = with(kR2, {{0, 2}});
const PairSet kR3b = with(kR2, {{0, 3}});
const PairSet kR4 = with(kR2, {{0, 2}, {0, 3}});
const PairSet kR5 = with(kR4, {{2, 2}});
const PairSet kR6 = with(kR5, {{0, 1}});
const PairSet kR7 = with(kR6, {{1, 1}});
const PairSet kR8 = with(kR7, {{1, 3}});

BoolRelation rel(const PairSet& pairs) { return BoolRelation(kRows, kCols, pairs); }

std::uint64_t rows_mask(std::initializer_list<int> is) {
    std::uint64_t m = 0;
    for (int i : is) m |= std::uint64_t{1} << i;
    return m;
}

/// extent/intent pairs as {row indices}, {col indices} for readable specs
std::set<std::pair<std::vector<int>, std::vector<int>>> concept_set(const ConceptLattice& L) {
    std::set<std::pair<std::vector<int>, std::vector<int>>> out;
    for (const auto& c : L.concepts()) {
        std::vector<int> e, i;
        for (int b = 0; b < 8; ++b) {
            if (c.extent & (1u << b)) e.push_back(b);
            if (c.intent & (1u << b)) i.push_back(b);
        }
        out.insert({e, i});
    }
    return out;
}

/// Brute-force lattice oracle: close every subset of the rows.
std::set<std::pair<std::uint64_t, std::uint64_t>> brute_force_concepts(const BoolRelation& R) {
    std::set<std::pair<std::uint64_t, std::uint64_t>> out;
    for (std::uint64_t F = 0; F <= R.full_extent(); ++F) {
        std::uint64_t closed = R.close_extent(F);
        out.insert({closed, R.derive_up(closed)});
    }
    return out;
}

BoolRelation random_relation(Rng& rng, std::size_t nr, std::size_t nc) {
    std::vector<std::string> rows, cols;
    for (std::size_t i = 0; i < nr; ++i) rows.push_back("r" + std::to_string(i));
    for (std::size_t j = 0; j < nc; ++j) cols.push_back("s" + std::to_string(j));
    PairSet inc;
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j)
            if (rng.flip()) inc.insert({i, j});
    return BoolRelation(rows, cols, inc);
}

} // namespace

TEST_CASE("derivations on R2") {
    BoolRelation R2 = rel(kR2);
    CHECK(R2.derive_up(rows_mask({1})) == rows_mask({0, 2}));   // {c1} -> {d1,d3}
    CHECK(R2.derive_down(rows_mask({0, 2})) == rows_mask({1})); // {d1,d3} -> {c1}
    CHECK(R2.derive_up(0) == R2.full_intent());                 // empty set -> everything
    CHECK(R2.derive_down(0) == R2.full_extent());
}

TEST_CASE("the displayed concept lattices of the worked example") {
    CHECK(concept_set(ConceptLattice::enumerate(rel(kR2))) ==
          std::set<std::pair<std::vector<int>, std::vector<int>>>{
              {{}, {0, 1, 2, 3}}, {{1}, {0, 2}}, {{2}, {0, 1, 3}}, {{0, 1, 2}, {0}}});

    CHECK(concept_set(ConceptLattice::enumerate(rel(kR3a))) ==
          std::set<std::pair<std::vector<int>, std::vector<int>>>{
              {{}, {0, 1, 2, 3}}, {{2}, {0, 1, 3}}, {{0, 1}, {0, 2}}, {{0, 1, 2}, {0}}});

    CHECK(concept_set(ConceptLattice::enumerate(rel(kR3b))) ==
          std::set<std::pair<std::vector<int>, std::vector<int>>>{{{}, {0, 1, 2, 3}},
                                                                  {{1}, {0, 2}},
                                                                  {{2}, {0, 1, 3}},
                                                                  {{0, 2}, {0, 3}},
                                                                  {{0, 1, 2}, {0}}});

    CHECK(concept_set(ConceptLattice::enumerate(rel(kR4))) ==
          std::set<std::pair<std::vector<int>, std::vector<int>>>{{{}, {0, 1, 2, 3}},
                                                                  {{0}, {0, 2, 3}},
                                                                  {{2}, {0, 1, 3}},
                                                                  {{0, 1}, {0, 2}},
                                                                  {{0, 2}, {0, 3}},
                                                                  {{0, 1, 2}, {0}}});

    ConceptLattice L5 = ConceptLattice::enumerate(rel(kR5));
    CHECK(L5.size() == 3);
    CHECK(L5.is_chain());
    CHECK(concept_set(L5) == std::set<std::pair<std::vector<int>, std::vector<int>>>{
                                 {{2}, {0, 1, 2, 3}}, {{0, 2}, {0, 2, 3}}, {{0, 1, 2}, {0, 2}}});

    ConceptLattice L6 = ConceptLattice::enumerate(rel(kR6));
    CHECK(L6.size() == 2);
    CHECK(L6.is_chain());
    ConceptLattice L7 = ConceptLattice::enumerate(rel(kR7));
    CHECK(L7.size() == 2);
    CHECK(L7.is_chain());

    ConceptLattice L8 = ConceptLattice::enumerate(rel(kR8));
    CHECK(L8.size() == 1);
    CHECK(L8.concepts()[0].extent == rel(kR8).full_extent());
    CHECK(L8.concepts()[0].intent == rel(kR8).full_intent());
}

TEST_CASE("NextClosure agrees with the brute-force closure oracle") {
    Rng rng(4000);
    for (int i = 0; i < 1000; ++i) {
        BoolRelation R = random_relation(rng, 1 + rng.index(5), 1 + rng.index(5));
        ConceptLattice L = ConceptLattice::enumerate(R);
        std::set<std::pair<std::uint64_t, std::uint64_t>> enumerated;
        for (const auto& c : L.concepts()) enumerated.insert({c.extent, c.intent});
        CHECK(enumerated.size() == L.size()); // no duplicates
        CHECK(enumerated == brute_force_concepts(R));
    }
}

TEST_CASE("Galois connection and closure laws") {
    Rng rng(4001);
    for (int i = 0; i < 1000; ++i) {
        BoolRelation R = random_relation(rng, 1 + rng.index(4), 1 + rng.index(4));
        for (std::uint64_t F = 0; F <= R.full_extent(); ++F)
            for (std::uint64_t G = 0; G <= R.full_intent(); ++G) {
                bool lhs = (R.derive_down(G) & F) == F; // F subset of R_*(G)
                bool rhs = (R.derive_up(F) & G) == G;   // G subset of R^*(F)
                CHECK(lhs == rhs);
            }
        std::uint64_t F = rng.index(R.full_extent() + 1);
        std::uint64_t closed = R.close_extent(F);
        CHECK((closed & F) == F);                  // extensive
        CHECK(R.close_extent(closed) == closed);   // idempotent
        std::uint64_t F2 = F | rng.index(R.full_extent() + 1);
        CHECK((R.close_extent(F2) & closed) == closed); // monotone
    }
}

TEST_CASE("meets and joins stay in the lattice") {
    Rng rng(4002);
    for (int trial = 0; trial < 300; ++trial) {
        BoolRelation R = random_relation(rng, 1 + rng.index(4), 1 + rng.index(4));
        ConceptLattice L = ConceptLattice::enumerate(R);
        for (std::size_t i = 0; i < L.size(); ++i)
            for (std::size_t j = 0; j < L.size(); ++j) {
                std::size_t m = L.index_of_extent(L.meet(i, j).extent);
                std::size_t v = L.index_of_extent(L.join(i, j).extent);
                CHECK(L.leq(m, i));
                CHECK(L.leq(m, j));
                CHECK(L.leq(i, v));
                CHECK(L.leq(j, v));
            }
        // top and bottom exist
        CHECK_NOTHROW(L.index_of_extent(R.close_extent(0)));
        CHECK_NOTHROW(L.index_of_extent(R.full_extent()));
    }
}

TEST_CASE("transport examples and characterizations") {
    BoolRelation R2 = rel(kR2), R4 = rel(kR4);
    Concept c1_concept{rows_mask({1}), rows_mask({0, 2})};
    Concept moved = transport_ext(R2, R4, c1_concept);
    CHECK(moved.extent == rows_mask({0, 1}));
    CHECK(moved.intent == rows_mask({0, 2}));

    // transport along the identity inclusion is the identity
    ConceptLattice L2 = ConceptLattice::enumerate(R2);
    for (const auto& c : L2.concepts()) {
        CHECK(transport_ext(R2, R2, c) == c);
        CHECK(transport_int(R2, R2, c) == c);
    }

    CHECK_THROWS_AS(transport_ext(R4, R2, c1_concept), InputError);

    // least/greatest characterizations, checked exhaustively
    Rng rng(4003);
    for (int trial = 0; trial < 300; ++trial) {
        BoolRelation R = random_relation(rng, 1 + rng.index(4), 1 + rng.index(4));
        PairSet bigger = R.incidences();
        for (std::size_t c = 0; c < R.n_rows(); ++c)
            for (std::size_t d = 0; d < R.n_cols(); ++d)
                if (rng.flip() && rng.flip()) bigger.insert({c, d});
        BoolRelation Rp(R.row_labels(), R.col_labels(), bigger);
        ConceptLattice L = ConceptLattice::enumerate(R);
        ConceptLattice Lp = ConceptLattice::enumerate(Rp);
        for (const auto& x : L.concepts()) {
            Concept ext = transport_ext(R, Rp, x);
            Concept intr = transport_int(R, Rp, x);
            std::size_t ei = Lp.index_of_extent(ext.extent);
            std::size_t ii = Lp.index_of_extent(intr.extent);
            CHECK(Lp.leq(ei, ii)); // T_ext <= T_int
            for (std::size_t k = 0; k < Lp.size(); ++k) {
                const Concept& y = Lp.concepts()[k];
                if ((y.extent & x.extent) == x.extent) CHECK(Lp.leq(ei, k));
                if ((y.intent & x.intent) == x.intent) CHECK(Lp.leq(k, ii));
            }
        }
        // monotone on comparable pairs
        for (std::size_t i = 0; i < L.size(); ++i)
            for (std::size_t j = 0; j < L.size(); ++j) {
                if (!L.leq(i, j)) continue;
                Concept a = transport_ext(R, Rp, L.concepts()[i]);
                Concept b = transport_ext(R, Rp, L.concepts()[j]);
                CHECK((a.extent & b.extent) == a.extent);
                a = transport_int(R, Rp, L.concepts()[i]);
                b = transport_int(R, Rp, L.concepts()[j]);
                CHECK((a.extent & b.extent) == a.extent);
            }
    }
}

TEST_CASE("threshold relations of the basepoint") {
    auto M = running_example();
    GapMatrix gap = GapMatrix::at(make_nucleus_point(M, zero_presheaf(*M)));

    CHECK(threshold_relation(gap, ExtReal(0)).incidences() == kR0);
    CHECK(threshold_relation(gap, X("1.6")).incidences() == kR4); // the tie admits both pairs
    CHECK(threshold_relation(gap, ExtReal::pos_inf()).incidences() == kR8);
    CHECK(threshold_relation(gap, X("5.1")).incidences() == kR8);
    CHECK_THROWS_AS(threshold_relation(gap, X("-1")), InputError);
}

TEST_CASE("point towers of the three marked points") {
    auto M = running_example();
    auto chain = [&](const NucleusPoint& p) {
        std::vector<PairSet> out;
        for (const auto& R : point_tower(p).relations) out.push_back(R.incidences());
        return out;
    };

    NucleusPoint f1 = make_nucleus_point(M, zero_presheaf(*M));
    CHECK(chain(f1) == std::vector<PairSet>{kR0, kR1, kR2, kR4, kR5, kR6, kR7, kR8});

    NucleusPoint f2 =
        make_nucleus_point(M, Potential::presheaf(M->row_labels(), xs({"0", "-0.1", "0"})));
    CHECK(chain(f2) == std::vector<PairSet>{kR0, kR1, kR2, kR3a, kR4, kR5, kR6, kR7, kR8});

    NucleusPoint f3 =
        make_nucleus_point(M, Potential::presheaf(M->row_labels(), xs({"0", "0.1", "0"})));
    CHECK(chain(f3) == std::vector<PairSet>{kR0, kR1, kR2, kR3b, kR4, kR5, kR6, kR7, kR8});

    // thresholds are the sorted distinct gap values
    Tower t1 = point_tower(f1);
    CHECK(t1.thresholds ==
          xs({"0", "0.5", "1.3", "1.6", "1.9", "3.1", "4.2", "5.1"}));
}

TEST_CASE("chamber towers agree with point towers on relation chains") {
    auto M = running_example();
    Rng rng(4004);
    for (int i = 0; i < 100; ++i) {
        NucleusPoint p =
            make_nucleus_point(M, rng.finite_potential(Side::presheaf, M->row_labels()));
        Tower from_point = point_tower(p);
        Tower from_chamber =
            chamber_tower(M->row_labels(), M->col_labels(), signature_at(p));
        REQUIRE(from_point.relations.size() == from_chamber.relations.size());
        for (std::size_t k = 0; k < from_point.relations.size(); ++k)
            CHECK(from_point.relations[k] == from_chamber.relations[k]);
    }
}

TEST_CASE("a strict total order gives one level per remaining pair") {
    auto M = running_example();
    Rng rng(4005);
    for (int i = 0; i < 50; ++i) {
        NucleusPoint p =
            make_nucleus_point(M, rng.finite_potential(Side::presheaf, M->row_labels()));
        OrderSignature sig = signature_at(p);
        bool strict = true;
        for (std::size_t b = 1; b < sig.blocks.size(); ++b)
            strict = strict && sig.blocks[b].size() == 1;
        if (!strict) continue;
        Tower t = chamber_tower(M->row_labels(), M->col_labels(), sig);
        CHECK(t.relations.size() == 12 - sig.blocks[0].size() + 1);
    }
}

TEST_CASE("wall specialization composes the skipped maps") {
    auto M = running_example();
    NucleusPoint f1 = make_nucleus_point(M, zero_presheaf(*M));
    NucleusPoint f2 =
        make_nucleus_point(M, Potential::presheaf(M->row_labels(), xs({"0", "-0.1", "0"})));
    NucleusPoint f3 =
        make_nucleus_point(M, Potential::presheaf(M->row_labels(), xs({"0", "0.1", "0"})));

    Tower wall = chamber_tower(M->row_labels(), M->col_labels(), signature_at(f1));
    Tower q2 = chamber_tower(M->row_labels(), M->col_labels(), signature_at(f2));
    Tower q3 = chamber_tower(M->row_labels(), M->col_labels(), signature_at(f3));

    SpecializationReport r2 = specialize_to_face(q2, wall);
    REQUIRE(r2.precondition_ok);
    CHECK(r2.all_ok);
    SpecializationReport r3 = specialize_to_face(q3, wall);
    REQUIRE(r3.precondition_ok);
    CHECK(r3.all_ok);

    // no merge: a tower specializes to itself
    SpecializationReport self = specialize_to_face(q2, q2);
    REQUIRE(self.precondition_ok);
    CHECK(self.all_ok);

    // towers of unrelated chambers violate the precondition
    CHECK_FALSE(specialize_to_face(q2, q3).precondition_ok);
}

TEST_CASE("the diamond at the 1.6 tie") {
    BoolRelation R2 = rel(kR2), R3a = rel(kR3a), R3b = rel(kR3b), R4 = rel(kR4);
    for (const auto& x : ConceptLattice::enumerate(R2).concepts()) {
        Concept direct_ext = transport_ext(R2, R4, x);
        CHECK(transport_ext(R3a, R4, transport_ext(R2, R3a, x)) == direct_ext);
        CHECK(transport_ext(R3b, R4, transport_ext(R2, R3b, x)) == direct_ext);
        Concept direct_int = transport_int(R2, R4, x);
        CHECK(transport_int(R3a, R4, transport_int(R2, R3a, x)) == direct_int);
        CHECK(transport_int(R3b, R4, transport_int(R2, R3b, x)) == direct_int);
    }
}
