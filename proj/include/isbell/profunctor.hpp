#pragma once

#include <memory>
#include <set>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "isbell/errors.hpp"
#include "isbell/extreal.hpp"

namespace isbell {

enum class Side { presheaf, copresheaf };

inline const char* side_name(Side s) {
    return s == Side::presheaf ? "presheaf" : "copresheaf";
}

/// A function C -> ExtReal (presheaf) or D -> ExtReal (copresheaf), indexed
/// by an ordered label list.
class Potential {
public:
    Potential(Side side, std::vector<std::string> labels, std::vector<ExtReal> values)
        : side_(side), labels_(std::move(labels)), values_(std::move(values)) {
        if (labels_.empty()) throw InputError("potential must have at least one coordinate");
        if (labels_.size() != values_.size())
            throw InputError("potential labels/values length mismatch");
    }

    static Potential presheaf(std::vector<std::string> labels, std::vector<ExtReal> values) {
        return Potential(Side::presheaf, std::move(labels), std::move(values));
    }
    static Potential copresheaf(std::vector<std::string> labels, std::vector<ExtReal> values) {
        return Potential(Side::copresheaf, std::move(labels), std::move(values));
    }

    /// The zero potential on the given labels.
    static Potential zero(Side side, std::vector<std::string> labels) {
        std::vector<ExtReal> values(labels.size(), ExtReal(0));
        return Potential(side, std::move(labels), std::move(values));
    }

    Side side() const { return side_; }
    std::size_t size() const { return values_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<ExtReal>& values() const { return values_; }
    const ExtReal& operator[](std::size_t i) const { return values_[i]; }

    bool finite_somewhere() const {
        for (const auto& v : values_)
            if (v.is_finite()) return true;
        return false;
    }

    bool finite_everywhere() const {
        for (const auto& v : values_)
            if (!v.is_finite()) return false;
        return true;
    }

    /// Pointwise translation by a finite constant. Infinite coordinates are
    /// unchanged (the shift acts trivially there).
    Potential translated(const Rational& lambda) const {
        std::vector<ExtReal> shifted;
        shifted.reserve(values_.size());
        for (const auto& v : values_) shifted.push_back(add(v, ExtReal(lambda)));
        return Potential(side_, labels_, std::move(shifted));
    }

    bool operator==(const Potential& o) const {
        return side_ == o.side_ && labels_ == o.labels_ && values_ == o.values_;
    }
    bool operator!=(const Potential& o) const { return !(*this == o); }

    /// f <= g pointwise; requires same side and labels.
    bool leq(const Potential& o) const {
        for (std::size_t i = 0; i < values_.size(); ++i)
            if (values_[i] > o.values_[i]) return false;
        return true;
    }

private:
    Side side_;
    std::vector<std::string> labels_;
    std::vector<ExtReal> values_;
};

/// A matrix M : C x D -> ExtReal with named rows (objects of C) and columns
/// (objects of D), viewed as an enriched profunctor.
class Profunctor {
public:
    Profunctor(std::vector<std::string> rows, std::vector<std::string> cols,
               std::vector<std::vector<ExtReal>> entries)
        : rows_(std::move(rows)), cols_(std::move(cols)), entries_(std::move(entries)) {
        if (rows_.empty() || cols_.empty())
            throw InputError("profunctor needs at least one row and one column");
        check_unique(rows_, "row");
        check_unique(cols_, "column");
        if (entries_.size() != rows_.size())
            throw InputError("entry matrix has wrong number of rows");
        for (const auto& row : entries_)
            if (row.size() != cols_.size())
                throw InputError("entry matrix has a row of the wrong length");
    }

    std::size_t n_rows() const { return rows_.size(); }
    std::size_t n_cols() const { return cols_.size(); }
    const std::vector<std::string>& row_labels() const { return rows_; }
    const std::vector<std::string>& col_labels() const { return cols_; }
    const ExtReal& at(std::size_t c, std::size_t d) const { return entries_[c][d]; }
    const std::vector<std::vector<ExtReal>>& entries() const { return entries_; }

    std::size_t row_index(const std::string& label) const {
        for (std::size_t i = 0; i < rows_.size(); ++i)
            if (rows_[i] == label) return i;
        throw InputError("unknown row label '" + label + "'");
    }
    std::size_t col_index(const std::string& label) const {
        for (std::size_t i = 0; i < cols_.size(); ++i)
            if (cols_[i] == label) return i;
        throw InputError("unknown column label '" + label + "'");
    }

    bool all_finite() const {
        for (const auto& row : entries_)
            for (const auto& v : row)
                if (!v.is_finite()) return false;
        return true;
    }

    bool operator==(const Profunctor& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && entries_ == o.entries_;
    }
    bool operator!=(const Profunctor& o) const { return !(*this == o); }

private:
    static void check_unique(const std::vector<std::string>& labels, const char* what) {
        std::unordered_set<std::string> seen;
        for (const auto& l : labels)
            if (!seen.insert(l).second)
                throw InputError(std::string("duplicate ") + what + " label '" + l + "'");
    }

    std::vector<std::string> rows_;
    std::vector<std::string> cols_;
    std::vector<std::vector<ExtReal>> entries_;
};

using ProfunctorPtr = std::shared_ptr<const Profunctor>;

inline ProfunctorPtr make_profunctor(std::vector<std::string> rows, std::vector<std::string> cols,
                                     std::vector<std::vector<ExtReal>> entries) {
    return std::make_shared<const Profunctor>(std::move(rows), std::move(cols), std::move(entries));
}

namespace detail {

inline void require_side(const Potential& p, Side side, const Profunctor& M) {
    if (p.side() != side)
        throw InputError(std::string("expected a ") + side_name(side) + ", got a " +
                         side_name(p.side()));
    const auto& expect = side == Side::presheaf ? M.row_labels() : M.col_labels();
    if (p.labels() != expect)
        throw InputError(std::string("potential labels do not match the matrix ") +
                         (side == Side::presheaf ? "rows" : "columns"));
}

} // namespace detail

/// (M*f)(d) = min_c ( M(c,d) - f(c) ), with residuated subtraction.
inline Potential isbell_upper(const Profunctor& M, const Potential& f) {
    detail::require_side(f, Side::presheaf, M);
    std::vector<ExtReal> g;
    g.reserve(M.n_cols());
    for (std::size_t d = 0; d < M.n_cols(); ++d) {
        ExtReal best = residuate(M.at(0, d), f[0]);
        for (std::size_t c = 1; c < M.n_rows(); ++c)
            best = min(best, residuate(M.at(c, d), f[c]));
        g.push_back(best);
    }
    return Potential::copresheaf(M.col_labels(), std::move(g));
}

/// (M_*g)(c) = min_d ( M(c,d) - g(d) ).
inline Potential isbell_lower(const Profunctor& M, const Potential& g) {
    detail::require_side(g, Side::copresheaf, M);
    std::vector<ExtReal> f;
    f.reserve(M.n_rows());
    for (std::size_t c = 0; c < M.n_rows(); ++c) {
        ExtReal best = residuate(M.at(c, 0), g[0]);
        for (std::size_t d = 1; d < M.n_cols(); ++d)
            best = min(best, residuate(M.at(c, d), g[d]));
        f.push_back(best);
    }
    return Potential::presheaf(M.row_labels(), std::move(f));
}

inline Potential closure_presheaf(const Profunctor& M, const Potential& f) {
    return isbell_lower(M, isbell_upper(M, f));
}

inline Potential closure_copresheaf(const Profunctor& M, const Potential& g) {
    return isbell_upper(M, isbell_lower(M, g));
}

/// One violated coordinate in a nucleus-point check.
struct NucleusViolation {
    Side side;
    std::string label;
    ExtReal expected;
    ExtReal actual;
};

struct NucleusCheck {
    bool ok = true;
    std::vector<NucleusViolation> violations;
};

/// True iff g = M*f and f = M_*g, with a certificate of any violations.
inline NucleusCheck is_nucleus_point(const Profunctor& M, const Potential& f, const Potential& g) {
    detail::require_side(f, Side::presheaf, M);
    detail::require_side(g, Side::copresheaf, M);
    NucleusCheck result;
    Potential upper = isbell_upper(M, f);
    for (std::size_t d = 0; d < M.n_cols(); ++d)
        if (upper[d] != g[d]) {
            result.ok = false;
            result.violations.push_back({Side::copresheaf, M.col_labels()[d], upper[d], g[d]});
        }
    Potential lower = isbell_lower(M, g);
    for (std::size_t c = 0; c < M.n_rows(); ++c)
        if (lower[c] != f[c]) {
            result.ok = false;
            result.violations.push_back({Side::presheaf, M.row_labels()[c], lower[c], f[c]});
        }
    return result;
}

/// A validated pair (f, g) with g = M*f and f = M_*g.
class NucleusPoint {
public:
    static NucleusPoint make(ProfunctorPtr M, Potential f, Potential g) {
        NucleusCheck check = is_nucleus_point(*M, f, g);
        if (!check.ok) {
            const auto& v = check.violations.front();
            throw InputError(std::string("not a nucleus point: ") + side_name(v.side) +
                             " value at '" + v.label + "' is " + v.actual.str() +
                             ", fixed point requires " + v.expected.str());
        }
        return NucleusPoint(std::move(M), std::move(f), std::move(g));
    }

    const Profunctor& matrix() const { return *matrix_; }
    const ProfunctorPtr& matrix_ptr() const { return matrix_; }
    const Potential& presheaf() const { return f_; }
    const Potential& copresheaf() const { return g_; }

    bool finite_valued() const { return f_.finite_everywhere() && g_.finite_everywhere(); }

    /// The representative with f(base_row) = 0; requires that coordinate finite.
    NucleusPoint gauged(std::size_t base_row) const {
        const ExtReal& pin = f_[base_row];
        if (!pin.is_finite())
            throw UnsupportedError("cannot gauge: presheaf is not finite at the base row");
        Rational lambda = -pin.finite_value();
        return NucleusPoint(matrix_, f_.translated(lambda), g_.translated(-lambda));
    }

    bool operator==(const NucleusPoint& o) const { return f_ == o.f_ && g_ == o.g_; }

private:
    NucleusPoint(ProfunctorPtr M, Potential f, Potential g)
        : matrix_(std::move(M)), f_(std::move(f)), g_(std::move(g)) {}

    friend NucleusPoint make_nucleus_point(ProfunctorPtr, const Potential&);
    friend class GapMatrix;

    ProfunctorPtr matrix_;
    Potential f_;
    Potential g_;
};

/// Closes a finite-somewhere seed into a nucleus point: a presheaf seed f
/// yields (cl(f), M*f); a copresheaf seed g yields (M_*g, cl(g)). Throws
/// NondegeneracyError if either output side has no finite value.
inline NucleusPoint make_nucleus_point(ProfunctorPtr M, const Potential& seed) {
    if (!seed.finite_somewhere())
        throw InputError("seed potential must be finite somewhere");
    Potential f = seed.side() == Side::presheaf ? closure_presheaf(*M, seed)
                                                : isbell_lower(*M, seed);
    Potential g = seed.side() == Side::presheaf ? isbell_upper(*M, seed)
                                                : closure_copresheaf(*M, seed);
    if (!f.finite_somewhere() || !g.finite_somewhere())
        throw NondegeneracyError(
            "degenerate transform: the matrix does not preserve the finite-somewhere "
            "condition on this seed");
    return NucleusPoint(std::move(M), std::move(f), std::move(g));
}

/// Gauge transform M(c,d) - u(c) - v(d) for finite row/column potentials.
inline Profunctor gauge_transform(const Profunctor& M, const std::vector<Rational>& u,
                                  const std::vector<Rational>& v) {
    if (u.size() != M.n_rows() || v.size() != M.n_cols())
        throw InputError("gauge potentials must match the matrix shape");
    std::vector<std::vector<ExtReal>> out(M.n_rows());
    for (std::size_t c = 0; c < M.n_rows(); ++c) {
        out[c].reserve(M.n_cols());
        for (std::size_t d = 0; d < M.n_cols(); ++d)
            out[c].push_back(add(M.at(c, d), ExtReal(-u[c] - v[d])));
    }
    return Profunctor(M.row_labels(), M.col_labels(), std::move(out));
}

/// The d-th anchor presheaf A_d = M(-, d); always closed.
inline Potential anchor(const Profunctor& M, std::size_t d) {
    if (d >= M.n_cols()) throw InputError("anchor column index out of range");
    std::vector<ExtReal> column;
    column.reserve(M.n_rows());
    for (std::size_t c = 0; c < M.n_rows(); ++c) column.push_back(M.at(c, d));
    return Potential::presheaf(M.row_labels(), std::move(column));
}

inline Potential anchor(const Profunctor& M, const std::string& col_label) {
    return anchor(M, M.col_index(col_label));
}

/// Enriched hom [f, f'] = min_i (f'(i) - f(i)) between same-side potentials.
inline ExtReal hom(const Potential& a, const Potential& b) {
    if (a.side() != b.side() || a.labels() != b.labels())
        throw InputError("hom requires potentials on the same index set");
    ExtReal best = residuate(b[0], a[0]);
    for (std::size_t i = 1; i < a.size(); ++i) best = min(best, residuate(b[i], a[i]));
    return best;
}

} // namespace isbell
