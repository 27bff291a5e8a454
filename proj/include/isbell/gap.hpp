#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "isbell/profunctor.hpp"

namespace isbell {

/// Index pair (row, column) into a profunctor.
using Pair = std::pair<std::size_t, std::size_t>;
using PairSet = std::set<Pair>;

/// The gap matrix delta(c,d) = M(c,d) - f(c) - g(d) of a point with g = M*f,
/// together with its zero set. Entries are always >= 0; zeros mark witness
/// pairs and positive entries are exact distances to event loci.
class GapMatrix {
public:
    /// Gap of an arbitrary presheaf f, with g := M*f derived.
    static GapMatrix of_presheaf(ProfunctorPtr M, const Potential& f) {
        Potential g = isbell_upper(*M, f);
        return GapMatrix(std::move(M), f, std::move(g));
    }

    /// Gap of a free (f, g) pair; requires g = M*f exactly.
    static GapMatrix checked(ProfunctorPtr M, const Potential& f, const Potential& g) {
        Potential upper = isbell_upper(*M, f);
        for (std::size_t d = 0; d < M->n_cols(); ++d)
            if (upper[d] != g[d])
                throw InputError("g is not M*f: column '" + M->col_labels()[d] +
                                 "' has " + g[d].str() + ", expected " + upper[d].str());
        return GapMatrix(std::move(M), f, g);
    }

    static GapMatrix at(const NucleusPoint& p) {
        return GapMatrix(p.matrix_ptr(), p.presheaf(), p.copresheaf());
    }

    const Profunctor& matrix() const { return *matrix_; }
    const ProfunctorPtr& matrix_ptr() const { return matrix_; }
    const Potential& presheaf() const { return f_; }
    const Potential& copresheaf() const { return g_; }
    std::size_t n_rows() const { return entries_.size(); }
    std::size_t n_cols() const { return entries_.front().size(); }
    const ExtReal& at(std::size_t c, std::size_t d) const { return entries_[c][d]; }
    const std::vector<std::vector<ExtReal>>& entries() const { return entries_; }
    const PairSet& zeros() const { return zeros_; }

    bool every_row_has_zero() const {
        std::vector<bool> hit(n_rows(), false);
        for (const auto& [c, d] : zeros_) hit[c] = true;
        return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
    }

    bool every_col_has_zero() const {
        std::vector<bool> hit(n_cols(), false);
        for (const auto& [c, d] : zeros_) hit[d] = true;
        return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
    }

    /// Distinct positive gap values in ascending order with multiplicities.
    std::vector<std::pair<ExtReal, std::size_t>> event_radii() const {
        std::map<ExtReal, std::size_t> counts;
        for (const auto& row : entries_)
            for (const auto& v : row)
                if (!v.is_zero()) ++counts[v];
        return {counts.begin(), counts.end()};
    }

    /// The display list "0, r1, r2, ..." : zero once (when present), then the
    /// positive values each repeated by multiplicity, ascending.
    std::vector<ExtReal> sorted_radii() const {
        std::vector<ExtReal> out;
        if (!zeros_.empty()) out.push_back(ExtReal(0));
        for (const auto& [value, count] : event_radii())
            out.insert(out.end(), count, value);
        return out;
    }

private:
    GapMatrix(ProfunctorPtr M, Potential f, Potential g)
        : matrix_(std::move(M)), f_(std::move(f)), g_(std::move(g)) {
        entries_.resize(matrix_->n_rows());
        for (std::size_t c = 0; c < matrix_->n_rows(); ++c) {
            entries_[c].reserve(matrix_->n_cols());
            for (std::size_t d = 0; d < matrix_->n_cols(); ++d) {
                ExtReal gap = residuate(matrix_->at(c, d), add(f_[c], g_[d]));
                if (gap < ExtReal(0))
                    throw InternalError("negative gap entry; g is not below M*f");
                if (gap.is_zero()) zeros_.insert({c, d});
                entries_[c].push_back(std::move(gap));
            }
        }
    }

    ProfunctorPtr matrix_;
    Potential f_;
    Potential g_;
    std::vector<std::vector<ExtReal>> entries_;
    PairSet zeros_;
};

/// Zero set of the gap matrix at a finite-valued nucleus point. Covers every
/// row and every column.
inline PairSet witness_relation(const NucleusPoint& p) {
    if (!p.finite_valued())
        throw UnsupportedError("witness relation requires a finite-valued nucleus point");
    return GapMatrix::at(p).zeros();
}

/// True iff every row of the gap matrix of f (with g = M*f) contains a zero;
/// equivalently f = M_*M*f.
inline bool is_fixed_by_rows(ProfunctorPtr M, const Potential& f) {
    if (!f.finite_everywhere())
        throw UnsupportedError("row-fixedness test requires a finite-valued presheaf");
    return GapMatrix::of_presheaf(std::move(M), f).every_row_has_zero();
}

} // namespace isbell
