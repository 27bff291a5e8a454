#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "isbell/gap.hpp"
#include "isbell/profunctor.hpp"

namespace isbell {

namespace detail {

/// Difference-constraint graph for Cell(Y) in the variables x_c = f(c),
/// y_d = -g(d). Every pair (c,d) contributes the arc d -> c of weight M(c,d)
/// (encoding x_c - y_d <= M(c,d)); pairs in Y also get the reverse arc
/// c -> d of weight -M(c,d), forcing equality. Nodes 0..|C|-1 are rows,
/// |C|.. are columns.
struct CellGraph {
    std::size_t n_rows = 0;
    std::size_t n_cols = 0;
    struct Arc {
        std::size_t from;
        std::size_t to;
        Rational weight;
    };
    std::vector<Arc> arcs;

    std::size_t n_nodes() const { return n_rows + n_cols; }
    std::size_t row_node(std::size_t c) const { return c; }
    std::size_t col_node(std::size_t d) const { return n_rows + d; }

    static CellGraph build(const Profunctor& M, const PairSet& tight) {
        if (!M.all_finite())
            throw UnsupportedError("polyhedral operations require finite matrix entries");
        CellGraph g;
        g.n_rows = M.n_rows();
        g.n_cols = M.n_cols();
        g.arcs.reserve(M.n_rows() * M.n_cols() + tight.size());
        for (std::size_t c = 0; c < M.n_rows(); ++c)
            for (std::size_t d = 0; d < M.n_cols(); ++d)
                g.arcs.push_back({g.col_node(d), g.row_node(c), M.at(c, d).finite_value()});
        for (const auto& [c, d] : tight)
            g.arcs.push_back({g.row_node(c), g.col_node(d), -M.at(c, d).finite_value()});
        return g;
    }

    /// Shortest-path potentials from a virtual zero source, or nothing if a
    /// negative cycle exists.
    std::optional<std::vector<Rational>> potentials() const {
        std::vector<Rational> dist(n_nodes(), Rational(0));
        for (std::size_t pass = 0; pass < n_nodes(); ++pass) {
            bool changed = false;
            for (const auto& a : arcs) {
                Rational candidate = dist[a.from] + a.weight;
                if (candidate < dist[a.to]) {
                    dist[a.to] = std::move(candidate);
                    changed = true;
                }
            }
            if (!changed) return dist;
        }
        for (const auto& a : arcs)
            if (dist[a.from] + a.weight < dist[a.to]) return std::nullopt;
        return dist;
    }

    /// All-pairs shortest paths; entry absent when unreachable. Requires no
    /// negative cycles.
    std::vector<std::vector<std::optional<Rational>>> all_pairs() const {
        std::size_t n = n_nodes();
        std::vector<std::vector<std::optional<Rational>>> dist(
            n, std::vector<std::optional<Rational>>(n));
        for (std::size_t i = 0; i < n; ++i) dist[i][i] = Rational(0);
        for (const auto& a : arcs) {
            if (!dist[a.from][a.to] || a.weight < *dist[a.from][a.to])
                dist[a.from][a.to] = a.weight;
        }
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i) {
                if (!dist[i][k]) continue;
                for (std::size_t j = 0; j < n; ++j) {
                    if (!dist[k][j]) continue;
                    Rational through = *dist[i][k] + *dist[k][j];
                    if (!dist[i][j] || through < *dist[i][j]) dist[i][j] = std::move(through);
                }
            }
        return dist;
    }
};

/// Converts potentials (x_c, y_d) into a gauged pair (f, g) with f(c0) = 0.
inline std::pair<std::vector<Rational>, std::vector<Rational>> potentials_to_point(
    const CellGraph& g, const std::vector<Rational>& x, std::size_t base_row) {
    std::vector<Rational> f(g.n_rows), gg(g.n_cols);
    const Rational& pin = x[g.row_node(base_row)];
    for (std::size_t c = 0; c < g.n_rows; ++c) f[c] = x[g.row_node(c)] - pin;
    for (std::size_t d = 0; d < g.n_cols; ++d) gg[d] = pin - x[g.col_node(d)];
    return {std::move(f), std::move(gg)};
}

} // namespace detail

inline bool covers_rows(const PairSet& Y, std::size_t n_rows) {
    std::vector<bool> hit(n_rows, false);
    for (const auto& [c, d] : Y) hit[c] = true;
    return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

inline bool covers_cols(const PairSet& Y, std::size_t n_cols) {
    std::vector<bool> hit(n_cols, false);
    for (const auto& [c, d] : Y) hit[d] = true;
    return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

/// Ground-truth membership predicate for Cell(Y): all Isbell inequalities
/// hold and the Y-pairs hold with equality.
inline bool in_cell(const Profunctor& M, const PairSet& Y, const std::vector<Rational>& f,
                    const std::vector<Rational>& g) {
    for (std::size_t c = 0; c < M.n_rows(); ++c)
        for (std::size_t d = 0; d < M.n_cols(); ++d)
            if (f[c] + g[d] > M.at(c, d).finite_value()) return false;
    for (const auto& [c, d] : Y)
        if (f[c] + g[d] != M.at(c, d).finite_value()) return false;
    return true;
}

/// Is Cell(Y) nonempty? Exact negative-cycle test on the difference-
/// constraint graph.
inline bool cell_feasible(const Profunctor& M, const PairSet& Y) {
    return detail::CellGraph::build(M, Y).potentials().has_value();
}

/// The forced-equality closure: Y plus every pair whose inequality holds
/// with equality on all of Cell(Y). A pair (c,d) is forced exactly when the
/// constraint graph proves x_c - y_d >= M(c,d), i.e. dist(c -> d) = -M(c,d).
inline PairSet tight_closure(const Profunctor& M, const PairSet& Y) {
    detail::CellGraph g = detail::CellGraph::build(M, Y);
    if (!g.potentials())
        throw InputError("tight_closure requires a feasible constraint set");
    auto dist = g.all_pairs();
    PairSet closed = Y;
    for (std::size_t c = 0; c < M.n_rows(); ++c)
        for (std::size_t d = 0; d < M.n_cols(); ++d) {
            if (closed.count({c, d})) continue;
            const auto& reach = dist[g.row_node(c)][g.col_node(d)];
            if (reach && *reach == -M.at(c, d).finite_value()) closed.insert({c, d});
        }
    return closed;
}

/// Number of connected components of the bipartite graph on C ⊔ D with edge
/// set Y, minus one: the dimension of Cell(Y) when Y is closed admissible.
inline std::size_t cell_dimension(std::size_t n_rows, std::size_t n_cols, const PairSet& Y) {
    std::vector<std::size_t> parent(n_rows + n_cols);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    std::size_t components = n_rows + n_cols;
    for (const auto& [c, d] : Y) {
        std::size_t a = find(c), b = find(n_rows + d);
        if (a != b) {
            parent[a] = b;
            --components;
        }
    }
    return components - 1;
}

/// A point of the relative interior of Cell(closed_set), in the gauge
/// f(base_row) = 0: the uniform average of per-pair witnesses with strict
/// slack at each non-forced pair.
inline NucleusPoint interior_point(ProfunctorPtr M, const PairSet& closed_set,
                                   std::size_t base_row = 0) {
    if (!covers_rows(closed_set, M->n_rows()) || !covers_cols(closed_set, M->n_cols()))
        throw InputError("interior_point requires a set covering both sides");
    if (tight_closure(*M, closed_set) != closed_set)
        throw InputError("interior_point requires a closed set; call tight_closure first");

    detail::CellGraph g = detail::CellGraph::build(*M, closed_set);
    auto dist = g.all_pairs();

    std::vector<Pair> slack_pairs;
    for (std::size_t c = 0; c < M->n_rows(); ++c)
        for (std::size_t d = 0; d < M->n_cols(); ++d)
            if (!closed_set.count({c, d})) slack_pairs.push_back({c, d});

    std::vector<Rational> fsum(M->n_rows(), Rational(0)), gsum(M->n_cols(), Rational(0));
    if (slack_pairs.empty()) {
        auto x = g.potentials();
        auto [f, gg] = detail::potentials_to_point(g, *x, base_row);
        fsum = std::move(f);
        gsum = std::move(gg);
    } else {
        for (const auto& [c, d] : slack_pairs) {
            const auto& reach = dist[g.row_node(c)][g.col_node(d)];
            Rational m = M->at(c, d).finite_value();
            Rational slack = reach ? (*reach + m) / 2 : Rational(1);
            detail::CellGraph reduced = g;
            for (auto& a : reduced.arcs)
                if (a.from == g.col_node(d) && a.to == g.row_node(c)) {
                    a.weight = m - slack;
                    break;
                }
            auto x = reduced.potentials();
            if (!x)
                throw InternalError("slack-reduced system became infeasible for a non-forced pair");
            auto [f, gg] = detail::potentials_to_point(reduced, *x, base_row);
            for (std::size_t c2 = 0; c2 < M->n_rows(); ++c2) fsum[c2] += f[c2];
            for (std::size_t d2 = 0; d2 < M->n_cols(); ++d2) gsum[d2] += gg[d2];
        }
        Rational k(static_cast<unsigned>(slack_pairs.size()));
        for (auto& v : fsum) v /= k;
        for (auto& v : gsum) v /= k;
    }

    std::vector<ExtReal> fe, ge;
    for (const auto& v : fsum) fe.push_back(ExtReal(v));
    for (const auto& v : gsum) ge.push_back(ExtReal(v));
    NucleusPoint point = NucleusPoint::make(M, Potential::presheaf(M->row_labels(), fe),
                                            Potential::copresheaf(M->col_labels(), ge));
    if (witness_relation(point) != closed_set)
        throw InternalError("interior point does not realize the requested witness relation");
    return point;
}

/// A closed admissible tight set together with its dimension and an interior
/// witness point.
struct CellDescriptor {
    PairSet tight_set;
    std::size_t dimension;
    NucleusPoint interior;
};

/// Brute-force enumeration of all closed admissible sets: every covering
/// feasible subset of C x D, mapped through tight_closure and deduplicated.
/// Refuses when |C|*|D| exceeds the cap (the loop is exponential).
inline std::vector<CellDescriptor> enumerate_cells(ProfunctorPtr M, std::size_t base_row = 0,
                                                   std::size_t cap = 20) {
    std::size_t n_pairs = M->n_rows() * M->n_cols();
    if (n_pairs > cap)
        throw CapExceededError("cell enumeration over " + std::to_string(n_pairs) +
                               " pairs exceeds the cap of " + std::to_string(cap) +
                               "; raise the cap only for small instances");
    if (!M->all_finite())
        throw UnsupportedError("polyhedral operations require finite matrix entries");

    std::vector<std::uint64_t> row_mask(M->n_rows(), 0), col_mask(M->n_cols(), 0);
    for (std::size_t c = 0; c < M->n_rows(); ++c)
        for (std::size_t d = 0; d < M->n_cols(); ++d) {
            std::size_t bit = c * M->n_cols() + d;
            row_mask[c] |= std::uint64_t{1} << bit;
            col_mask[d] |= std::uint64_t{1} << bit;
        }

    std::map<PairSet, bool> seen;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n_pairs); ++mask) {
        bool covers = true;
        for (const auto& m : row_mask) covers = covers && (mask & m);
        for (const auto& m : col_mask) covers = covers && (mask & m);
        if (!covers) continue;
        PairSet Y;
        for (std::size_t bit = 0; bit < n_pairs; ++bit)
            if (mask & (std::uint64_t{1} << bit)) Y.insert({bit / M->n_cols(), bit % M->n_cols()});
        if (!cell_feasible(*M, Y)) continue;
        seen.emplace(tight_closure(*M, Y), true);
    }

    std::vector<CellDescriptor> cells;
    cells.reserve(seen.size());
    for (const auto& [tight, unused] : seen)
        cells.push_back({tight, cell_dimension(M->n_rows(), M->n_cols(), tight),
                         interior_point(M, tight, base_row)});
    return cells;
}

using Permutation = std::vector<std::size_t>; // row c is matched to column sigma[c]

inline PairSet permutation_graph(const Permutation& sigma) {
    PairSet Y;
    for (std::size_t c = 0; c < sigma.size(); ++c) Y.insert({c, sigma[c]});
    return Y;
}

struct TropicalValue {
    ExtReal value;
    std::vector<Permutation> optimal; // all argmin permutations, lex order
};

/// val(M) = min over permutations of sum_c M(c, sigma(c)), with the full
/// argmin set. Brute force; n <= 8.
inline TropicalValue tropical_value(const Profunctor& M) {
    if (M.n_rows() != M.n_cols())
        throw InputError("tropical value requires a square matrix");
    if (M.n_rows() > 8)
        throw CapExceededError("tropical value brute-forces n! permutations; n <= 8 required");
    if (!M.all_finite())
        throw UnsupportedError("tropical value requires finite matrix entries");

    Permutation sigma(M.n_rows());
    std::iota(sigma.begin(), sigma.end(), 0);
    TropicalValue out{ExtReal::pos_inf(), {}};
    do {
        Rational cost(0);
        for (std::size_t c = 0; c < sigma.size(); ++c) cost += M.at(c, sigma[c]).finite_value();
        ExtReal value{cost};
        if (value < out.value) {
            out.value = value;
            out.optimal.clear();
        }
        if (value == out.value) out.optimal.push_back(sigma);
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return out;
}

/// Exactly the permutations whose graph is admissible; by the optimality
/// criterion these are the argmins of val(M). Each side of the equivalence
/// is computed independently (cost minimization vs. negative-cycle test) and
/// a shortest-path witness point is built and verified for each admissible
/// graph.
inline std::vector<Permutation> admissible_permutations(const Profunctor& M,
                                                        std::size_t base_row = 0) {
    TropicalValue val = tropical_value(M);
    std::vector<Permutation> admissible;

    Permutation sigma(M.n_rows());
    std::iota(sigma.begin(), sigma.end(), 0);
    do {
        bool feasible = cell_feasible(M, permutation_graph(sigma));
        bool optimal = std::find(val.optimal.begin(), val.optimal.end(), sigma) != val.optimal.end();
        if (feasible != optimal)
            throw InternalError("admissibility disagrees with tropical optimality");
        if (!feasible) continue;

        // witness via shortest-path potentials on the auxiliary row graph
        std::size_t n = M.n_rows();
        std::vector<std::vector<Rational>> w(n, std::vector<Rational>(n));
        for (std::size_t c = 0; c < n; ++c)
            for (std::size_t c2 = 0; c2 < n; ++c2)
                w[c][c2] = M.at(c2, sigma[c]).finite_value() - M.at(c, sigma[c]).finite_value();
        std::vector<std::optional<Rational>> f(n);
        f[base_row] = Rational(0);
        for (std::size_t pass = 0; pass < n; ++pass)
            for (std::size_t c = 0; c < n; ++c) {
                if (!f[c]) continue;
                for (std::size_t c2 = 0; c2 < n; ++c2) {
                    Rational cand = *f[c] + w[c][c2];
                    if (!f[c2] || cand < *f[c2]) f[c2] = std::move(cand);
                }
            }
        std::vector<Rational> fv(n), gv(n);
        for (std::size_t c = 0; c < n; ++c) fv[c] = *f[c];
        for (std::size_t c = 0; c < n; ++c) gv[sigma[c]] = M.at(c, sigma[c]).finite_value() - fv[c];
        if (!in_cell(M, permutation_graph(sigma), fv, gv))
            throw InternalError("shortest-path witness failed Cell membership");
        admissible.push_back(sigma);
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return admissible;
}

} // namespace isbell
