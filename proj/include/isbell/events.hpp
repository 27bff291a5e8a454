#pragma once

#include <utility>

#include "isbell/gap.hpp"
#include "isbell/metric.hpp"

namespace isbell {

/// The target of an event: a pair (c,d) together with the gap value at the
/// basepoint, which is the exact distance to the locus where (c,d) becomes a
/// witness.
struct EventTarget {
    Pair pair;
    ExtReal radius;
};

inline ExtReal event_distance(const NucleusPoint& p, Pair target) {
    if (!p.finite_valued())
        throw UnsupportedError("event distances require a finite-valued nucleus point");
    return GapMatrix::at(p).at(target.first, target.second);
}

/// The constructive half of the events theorem: a nucleus point on the event
/// locus of `target` at distance exactly lambda = delta(target) from p.
/// Closed forms (with delta the gap matrix of p):
///   f'(c) = f(c) + min_d ( delta(c,d) + max(lambda - delta(c_i,d), 0) )
///   g'(d) = g(d) - max(lambda - delta(c_i,d), 0)
/// A zero gap returns p itself; an infinite gap is unsupported.
inline NucleusPoint event_construct(const NucleusPoint& p, Pair target) {
    if (!p.finite_valued())
        throw UnsupportedError("event construction requires a finite-valued nucleus point");
    GapMatrix gap = GapMatrix::at(p);
    const std::size_t ci = target.first;
    ExtReal radius = gap.at(ci, target.second);
    if (radius.is_zero()) return p;
    if (!radius.is_finite())
        throw UnsupportedError("event construction is undefined for infinite gap entries");
    const Rational& lambda = radius.finite_value();

    const Profunctor& M = p.matrix();
    std::vector<Rational> bump(M.n_cols()); // max(lambda - delta(c_i, d), 0)
    for (std::size_t d = 0; d < M.n_cols(); ++d) {
        Rational slack = lambda - gap.at(ci, d).finite_value();
        bump[d] = slack > 0 ? slack : Rational(0);
    }

    std::vector<ExtReal> f, g;
    f.reserve(M.n_rows());
    g.reserve(M.n_cols());
    for (std::size_t c = 0; c < M.n_rows(); ++c) {
        Rational best = gap.at(c, 0).finite_value() + bump[0];
        for (std::size_t d = 1; d < M.n_cols(); ++d) {
            Rational candidate = gap.at(c, d).finite_value() + bump[d];
            if (candidate < best) best = candidate;
        }
        f.push_back(ExtReal(p.presheaf()[c].finite_value() + best));
    }
    for (std::size_t d = 0; d < M.n_cols(); ++d)
        g.push_back(ExtReal(p.copresheaf()[d].finite_value() - bump[d]));

    return NucleusPoint::make(p.matrix_ptr(), Potential::presheaf(M.row_labels(), f),
                              Potential::copresheaf(M.col_labels(), g));
}

/// All event targets of a point: one per pair, radius = gap entry.
inline std::vector<EventTarget> event_targets(const NucleusPoint& p) {
    GapMatrix gap = GapMatrix::at(p);
    std::vector<EventTarget> out;
    for (std::size_t c = 0; c < gap.n_rows(); ++c)
        for (std::size_t d = 0; d < gap.n_cols(); ++d)
            out.push_back({{c, d}, gap.at(c, d)});
    return out;
}

} // namespace isbell
