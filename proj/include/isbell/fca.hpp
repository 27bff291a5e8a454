#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "isbell/chambers.hpp"
#include "isbell/gap.hpp"

namespace isbell {

/// A Boolean profunctor: a relation R between two labeled finite sets.
/// Subsets are handled as bit masks (row bit c, column bit d).
class BoolRelation {
public:
    BoolRelation(std::vector<std::string> rows, std::vector<std::string> cols, PairSet incidences)
        : rows_(std::move(rows)), cols_(std::move(cols)), incidences_(std::move(incidences)) {
        if (rows_.size() > 63 || cols_.size() > 63)
            throw CapExceededError("relations are limited to 63 objects per side");
        row_bits_.assign(rows_.size(), 0);
        for (const auto& [c, d] : incidences_) {
            if (c >= rows_.size() || d >= cols_.size())
                throw InputError("incidence pair out of range");
            row_bits_[c] |= std::uint64_t{1} << d;
        }
    }

    std::size_t n_rows() const { return rows_.size(); }
    std::size_t n_cols() const { return cols_.size(); }
    const std::vector<std::string>& row_labels() const { return rows_; }
    const std::vector<std::string>& col_labels() const { return cols_; }
    const PairSet& incidences() const { return incidences_; }
    bool contains(std::size_t c, std::size_t d) const {
        return row_bits_[c] & (std::uint64_t{1} << d);
    }

    std::uint64_t full_extent() const { return (std::uint64_t{1} << rows_.size()) - 1; }
    std::uint64_t full_intent() const { return (std::uint64_t{1} << cols_.size()) - 1; }

    /// R^*(F): the columns related to every row of F.
    std::uint64_t derive_up(std::uint64_t extent) const {
        std::uint64_t intent = full_intent();
        for (std::size_t c = 0; c < rows_.size(); ++c)
            if (extent & (std::uint64_t{1} << c)) intent &= row_bits_[c];
        return intent;
    }

    /// R_*(G): the rows related to every column of G.
    std::uint64_t derive_down(std::uint64_t intent) const {
        std::uint64_t extent = 0;
        for (std::size_t c = 0; c < rows_.size(); ++c)
            if ((row_bits_[c] & intent) == intent) extent |= std::uint64_t{1} << c;
        return extent;
    }

    std::uint64_t close_extent(std::uint64_t extent) const { return derive_down(derive_up(extent)); }

    bool same_labels(const BoolRelation& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_;
    }
    bool subset_of(const BoolRelation& o) const {
        if (!same_labels(o)) return false;
        return std::includes(o.incidences_.begin(), o.incidences_.end(), incidences_.begin(),
                             incidences_.end());
    }
    bool operator==(const BoolRelation& o) const {
        return same_labels(o) && incidences_ == o.incidences_;
    }
    bool operator!=(const BoolRelation& o) const { return !(*this == o); }

private:
    std::vector<std::string> rows_;
    std::vector<std::string> cols_;
    PairSet incidences_;
    std::vector<std::uint64_t> row_bits_;
};

struct Concept {
    std::uint64_t extent = 0;
    std::uint64_t intent = 0;
    bool operator==(const Concept& o) const = default;
};

namespace detail {

/// Canonical concept order: extents as sorted label-index lists, compared
/// lexicographically.
inline std::vector<std::size_t> mask_indices(std::uint64_t mask) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; mask; ++i, mask >>= 1)
        if (mask & 1) out.push_back(i);
    return out;
}

} // namespace detail

/// The complete lattice of formal concepts of a relation, enumerated by
/// lexicographic closure (NextClosure) and canonically sorted.
class ConceptLattice {
public:
    static ConceptLattice enumerate(BoolRelation relation, std::size_t cap = 20) {
        if (relation.n_rows() > cap)
            throw CapExceededError("concept enumeration caps at " + std::to_string(cap) +
                                   " objects");
        ConceptLattice lattice(std::move(relation));
        const BoolRelation& R = lattice.relation_;
        std::uint64_t extent = R.close_extent(0);
        while (true) {
            lattice.concepts_.push_back({extent, R.derive_up(extent)});
            if (extent == R.full_extent()) break;
            // lectic successor
            bool advanced = false;
            for (std::size_t i = R.n_rows(); i-- > 0 && !advanced;) {
                std::uint64_t bit = std::uint64_t{1} << i;
                if (extent & bit) continue;
                std::uint64_t below = bit - 1;
                std::uint64_t candidate = R.close_extent((extent & below) | bit);
                if ((candidate & below) == (extent & below)) {
                    extent = candidate;
                    advanced = true;
                }
            }
            if (!advanced)
                throw InternalError("NextClosure failed to reach the full extent");
        }
        std::sort(lattice.concepts_.begin(), lattice.concepts_.end(),
                  [](const Concept& a, const Concept& b) {
                      return detail::mask_indices(a.extent) < detail::mask_indices(b.extent);
                  });
        return lattice;
    }

    const BoolRelation& relation() const { return relation_; }
    const std::vector<Concept>& concepts() const { return concepts_; }
    std::size_t size() const { return concepts_.size(); }

    std::size_t index_of_extent(std::uint64_t extent) const {
        for (std::size_t i = 0; i < concepts_.size(); ++i)
            if (concepts_[i].extent == extent) return i;
        throw InternalError("extent is not a concept of this lattice");
    }

    /// Order by extent inclusion.
    bool leq(std::size_t i, std::size_t j) const {
        return (concepts_[i].extent & concepts_[j].extent) == concepts_[i].extent;
    }

    Concept meet(std::size_t i, std::size_t j) const {
        std::uint64_t extent = concepts_[i].extent & concepts_[j].extent;
        return {extent, relation_.derive_up(extent)};
    }
    Concept join(std::size_t i, std::size_t j) const {
        std::uint64_t intent = concepts_[i].intent & concepts_[j].intent;
        return {relation_.derive_down(intent), intent};
    }

    /// Hasse cover relation: j covers i.
    bool covers(std::size_t i, std::size_t j) const {
        if (i == j || !leq(i, j)) return false;
        for (std::size_t k = 0; k < concepts_.size(); ++k)
            if (k != i && k != j && leq(i, k) && leq(k, j)) return false;
        return true;
    }

    bool is_chain() const {
        for (std::size_t i = 0; i < concepts_.size(); ++i)
            for (std::size_t j = i + 1; j < concepts_.size(); ++j)
                if (!leq(i, j) && !leq(j, i)) return false;
        return true;
    }

    bool operator==(const ConceptLattice& o) const {
        return relation_ == o.relation_ && concepts_ == o.concepts_;
    }

private:
    explicit ConceptLattice(BoolRelation relation) : relation_(std::move(relation)) {}

    BoolRelation relation_;
    std::vector<Concept> concepts_;
};

namespace detail {

inline void require_inclusion(const BoolRelation& R, const BoolRelation& Rp) {
    if (!R.subset_of(Rp))
        throw InputError("transport requires an inclusion of relations R ⊆ R'");
}

} // namespace detail

/// T^ext: re-close the extent in the larger relation; the least concept of
/// L(R') whose extent contains the given extent.
inline Concept transport_ext(const BoolRelation& R, const BoolRelation& Rp, const Concept& x) {
    detail::require_inclusion(R, Rp);
    std::uint64_t intent = Rp.derive_up(x.extent);
    return {Rp.derive_down(intent), intent};
}

/// T^int: re-close the intent; the greatest concept of L(R') whose intent
/// contains the given intent.
inline Concept transport_int(const BoolRelation& R, const BoolRelation& Rp, const Concept& x) {
    detail::require_inclusion(R, Rp);
    std::uint64_t extent = Rp.derive_down(x.intent);
    return {extent, Rp.derive_up(extent)};
}

/// The threshold relation of a gap matrix: (c,d) related iff delta(c,d) <= eps.
inline BoolRelation threshold_relation(const GapMatrix& gap, const ExtReal& eps) {
    if (eps < ExtReal(0)) throw InputError("threshold must be nonnegative");
    PairSet incidences;
    for (std::size_t c = 0; c < gap.n_rows(); ++c)
        for (std::size_t d = 0; d < gap.n_cols(); ++d)
            if (gap.at(c, d) <= eps) incidences.insert({c, d});
    return BoolRelation(gap.matrix().row_labels(), gap.matrix().col_labels(),
                        std::move(incidences));
}

/// An increasing chain of relations with concept lattices and both transport
/// families between adjacent levels. maps_ext[k][i] is the index in level
/// k+1 of the ext-transport of concept i of level k.
struct Tower {
    std::vector<ExtReal> thresholds; // one per level when threshold-indexed
    std::vector<BoolRelation> relations;
    std::vector<ConceptLattice> lattices;
    std::vector<std::vector<std::size_t>> maps_ext;
    std::vector<std::vector<std::size_t>> maps_int;
};

namespace detail {

inline Tower assemble_tower(std::vector<ExtReal> thresholds, std::vector<BoolRelation> relations,
                            std::size_t cap) {
    Tower tower;
    tower.thresholds = std::move(thresholds);
    tower.relations = std::move(relations);
    for (std::size_t k = 0; k + 1 < tower.relations.size(); ++k)
        if (!(tower.relations[k].subset_of(tower.relations[k + 1]) &&
              tower.relations[k] != tower.relations[k + 1]))
            throw InternalError("tower relations must increase strictly");
    for (const auto& R : tower.relations)
        tower.lattices.push_back(ConceptLattice::enumerate(R, cap));
    for (std::size_t k = 0; k + 1 < tower.relations.size(); ++k) {
        const auto& level = tower.lattices[k];
        const auto& next = tower.lattices[k + 1];
        std::vector<std::size_t> ext, internal;
        for (const auto& concept_ : level.concepts()) {
            ext.push_back(next.index_of_extent(
                transport_ext(tower.relations[k], tower.relations[k + 1], concept_).extent));
            internal.push_back(next.index_of_extent(
                transport_int(tower.relations[k], tower.relations[k + 1], concept_).extent));
        }
        tower.maps_ext.push_back(std::move(ext));
        tower.maps_int.push_back(std::move(internal));
    }
    return tower;
}

} // namespace detail

/// Threshold tower of a finite-valued nucleus point: one level per distinct
/// gap value, relations R_eps = {delta <= eps}.
inline Tower point_tower(const NucleusPoint& p, std::size_t cap = 20) {
    if (!p.finite_valued())
        throw UnsupportedError("towers require a finite-valued nucleus point");
    GapMatrix gap = GapMatrix::at(p);
    std::vector<ExtReal> thresholds{ExtReal(0)};
    for (const auto& [value, count] : gap.event_radii()) thresholds.push_back(value);
    std::vector<BoolRelation> relations;
    for (const auto& eps : thresholds) relations.push_back(threshold_relation(gap, eps));
    return detail::assemble_tower(std::move(thresholds), std::move(relations), cap);
}

/// Chamber tower: cumulative unions of the signature's preorder blocks.
/// For any point of the chamber the point tower has the same relations,
/// reparameterized by threshold.
inline Tower chamber_tower(const std::vector<std::string>& row_labels,
                           const std::vector<std::string>& col_labels, const OrderSignature& sig,
                           std::size_t cap = 20) {
    std::vector<BoolRelation> relations;
    PairSet cumulative;
    for (const auto& block : sig.blocks) {
        cumulative.insert(block.begin(), block.end());
        relations.push_back(BoolRelation(row_labels, col_labels, cumulative));
    }
    return detail::assemble_tower({}, std::move(relations), cap);
}

/// Per-level verdicts for specializing a chamber tower to a face tower whose
/// blocks merge consecutive blocks of the chamber.
struct SpecializationReport {
    bool precondition_ok = false;
    std::vector<std::size_t> level_in_chamber; // chamber index of each face level
    struct LevelCheck {
        bool ext_ok = false;
        bool int_ok = false;
    };
    std::vector<LevelCheck> levels; // one per adjacent face-level pair
    bool all_ok = false;
};

/// Verifies that each structure map of the face tower is the composite of
/// the chamber tower's maps over the merged floors, for both transport
/// families, on every concept.
inline SpecializationReport specialize_to_face(const Tower& chamber, const Tower& face) {
    SpecializationReport report;
    report.level_in_chamber.reserve(face.relations.size());
    std::size_t cursor = 0;
    for (const auto& R : face.relations) {
        while (cursor < chamber.relations.size() && chamber.relations[cursor] != R) ++cursor;
        if (cursor == chamber.relations.size()) return report; // precondition violated
        report.level_in_chamber.push_back(cursor);
    }
    if (face.relations.empty() || chamber.relations.empty()) return report;
    if (face.relations.back() != chamber.relations.back()) return report;
    report.precondition_ok = true;

    report.all_ok = true;
    for (std::size_t j = 0; j + 1 < face.relations.size(); ++j) {
        std::size_t from = report.level_in_chamber[j];
        std::size_t to = report.level_in_chamber[j + 1];
        SpecializationReport::LevelCheck check{true, true};
        for (std::size_t i = 0; i < face.lattices[j].size(); ++i) {
            std::size_t ext = i, internal = i;
            for (std::size_t k = from; k < to; ++k) {
                ext = chamber.maps_ext[k][ext];
                internal = chamber.maps_int[k][internal];
            }
            check.ext_ok = check.ext_ok && ext == face.maps_ext[j][i];
            check.int_ok = check.int_ok && internal == face.maps_int[j][i];
        }
        report.all_ok = report.all_ok && check.ext_ok && check.int_ok;
        report.levels.push_back(check);
    }
    return report;
}

} // namespace isbell
