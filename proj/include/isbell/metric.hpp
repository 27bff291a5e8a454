#pragma once

#include <utility>

#include "isbell/profunctor.hpp"

namespace isbell {

/// Max-spread (Hilbert oscillation) distance between two same-side
/// potentials. Coordinates where both values are +inf or both are -inf are
/// excluded; over the rest the distance is sup(f - f') - inf(f - f') when
/// both extrema are finite, else +inf.
inline ExtReal oscillation_distance(const Potential& f, const Potential& fp) {
    if (f.side() != fp.side() || f.labels() != fp.labels())
        throw InputError("projective distance requires potentials on the same index set");
    bool any = false;
    ExtReal lo, hi;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const ExtReal& a = f[i];
        const ExtReal& b = fp[i];
        bool both_pos = a.is_pos_inf() && b.is_pos_inf();
        bool both_neg = a.is_neg_inf() && b.is_neg_inf();
        if (both_pos || both_neg) continue;
        ExtReal diff = residuate(a, b);
        if (!any) {
            lo = hi = diff;
            any = true;
        } else {
            lo = min(lo, diff);
            hi = max(hi, diff);
        }
    }
    if (!any) return ExtReal(0);
    if (!lo.is_finite() || !hi.is_finite()) return ExtReal::pos_inf();
    return ExtReal(hi.finite_value() - lo.finite_value());
}

/// A potential up to translation by a finite constant.
class ProjectiveClass {
public:
    explicit ProjectiveClass(Potential representative) : rep_(std::move(representative)) {
        if (!rep_.finite_somewhere())
            throw InputError("projective class needs a finite-somewhere representative");
    }

    const Potential& representative() const { return rep_; }
    Side side() const { return rep_.side(); }

    bool operator==(const ProjectiveClass& o) const {
        return proj_dist(*this, o).is_zero();
    }

    friend ExtReal proj_dist(const ProjectiveClass& a, const ProjectiveClass& b) {
        return oscillation_distance(a.rep_, b.rep_);
    }

private:
    Potential rep_;
};

/// Distance on the projective nucleus: max of the presheaf-side and
/// copresheaf-side distances. The isometry theorem makes the two sides equal
/// for genuine nucleus points, so disagreement is an internal error.
inline ExtReal proj_dist_nucleus(const NucleusPoint& p, const NucleusPoint& q) {
    if (p.matrix() != q.matrix())
        throw InputError("nucleus points belong to different profunctors");
    ExtReal dc = oscillation_distance(p.presheaf(), q.presheaf());
    ExtReal dd = oscillation_distance(p.copresheaf(), q.copresheaf());
    if (dc != dd)
        throw InternalError("presheaf and copresheaf distances disagree on nucleus points: " +
                            dc.str() + " vs " + dd.str());
    return max(dc, dd);
}

/// ||M|| = max_d of the distance from the anchor A_d to the zero class; the
/// diameter bound for the projective nucleus.
inline ExtReal profunctor_norm(const Profunctor& M) {
    Potential origin = Potential::zero(Side::presheaf, M.row_labels());
    ExtReal best = oscillation_distance(anchor(M, std::size_t{0}), origin);
    for (std::size_t d = 1; d < M.n_cols(); ++d)
        best = max(best, oscillation_distance(anchor(M, d), origin));
    return best;
}

} // namespace isbell
