#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "isbell/linfeas.hpp"
#include "isbell/polyhedra.hpp"

namespace isbell {

/// The total preorder of the gap entries at a point: an ordered partition of
/// C x D into blocks of equal gap value, ascending. Identity is by blocks
/// alone; block_values are diagnostic.
struct OrderSignature {
    std::vector<std::vector<Pair>> blocks;
    std::vector<ExtReal> block_values;

    bool operator==(const OrderSignature& o) const { return blocks == o.blocks; }
    bool operator!=(const OrderSignature& o) const { return !(*this == o); }
    bool operator<(const OrderSignature& o) const { return blocks < o.blocks; }

    /// True when `coarser` is obtained from this signature by merging
    /// consecutive blocks.
    bool refines(const OrderSignature& coarser) const {
        std::size_t i = 0;
        for (const auto& merged : coarser.blocks) {
            std::vector<Pair> gathered;
            while (i < blocks.size() && gathered.size() < merged.size()) {
                gathered.insert(gathered.end(), blocks[i].begin(), blocks[i].end());
                ++i;
            }
            std::sort(gathered.begin(), gathered.end());
            if (gathered != merged) return false;
        }
        return i == blocks.size();
    }
};

/// Sorts the gap entries of a finite-valued nucleus point with exact tie
/// detection.
inline OrderSignature signature_at(const NucleusPoint& p) {
    if (!p.finite_valued())
        throw UnsupportedError("order signatures require a finite-valued nucleus point");
    GapMatrix gap = GapMatrix::at(p);
    std::map<ExtReal, std::vector<Pair>> by_value;
    for (std::size_t c = 0; c < gap.n_rows(); ++c)
        for (std::size_t d = 0; d < gap.n_cols(); ++d) by_value[gap.at(c, d)].push_back({c, d});
    OrderSignature sig;
    for (auto& [value, pairs] : by_value) {
        std::sort(pairs.begin(), pairs.end());
        sig.blocks.push_back(pairs);
        sig.block_values.push_back(value);
    }
    return sig;
}

namespace detail {

/// Exact affine parameterization of Cell(tight): every coordinate of (f, g)
/// in the gauge f(base_row) = 0 as an affine form in the cell's free
/// parameters, obtained by Gauss-Jordan elimination of the tightness
/// equalities.
struct CellModel {
    ProfunctorPtr M;
    PairSet tight;
    std::size_t base_row;
    std::size_t n_free = 0;
    std::vector<AffineForm> f_coord;
    std::vector<AffineForm> g_coord;
    std::vector<std::vector<AffineForm>> gap_form; // per pair, >= 0 on the cell

    static CellModel build(ProfunctorPtr M, const PairSet& tight, std::size_t base_row) {
        CellModel model;
        model.M = M;
        model.tight = tight;
        model.base_row = base_row;

        const std::size_t nr = M->n_rows(), nc = M->n_cols();
        // variables: f(c) for c != base_row, then g(d)
        std::vector<std::optional<std::size_t>> fvar(nr);
        std::size_t n_vars = 0;
        for (std::size_t c = 0; c < nr; ++c)
            if (c != base_row) fvar[c] = n_vars++;
        std::vector<std::size_t> gvar(nc);
        for (std::size_t d = 0; d < nc; ++d) gvar[d] = n_vars++;

        // rows of [A | b] for f(c) + g(d) = M(c,d)
        std::vector<std::vector<Rational>> rows;
        for (const auto& [c, d] : tight) {
            std::vector<Rational> row(n_vars + 1, Rational(0));
            if (fvar[c]) row[*fvar[c]] = 1;
            row[gvar[d]] = 1;
            row[n_vars] = M->at(c, d).finite_value();
            rows.push_back(std::move(row));
        }

        // Gauss-Jordan to reduced row echelon form
        std::vector<std::size_t> pivot_col;
        std::size_t r = 0;
        for (std::size_t col = 0; col < n_vars && r < rows.size(); ++col) {
            std::size_t p = r;
            while (p < rows.size() && rows[p][col] == 0) ++p;
            if (p == rows.size()) continue;
            std::swap(rows[r], rows[p]);
            Rational inv = Rational(1) / rows[r][col];
            for (auto& v : rows[r]) v *= inv;
            for (std::size_t r2 = 0; r2 < rows.size(); ++r2) {
                if (r2 == r || rows[r2][col] == 0) continue;
                Rational factor = rows[r2][col];
                for (std::size_t j = col; j <= n_vars; ++j) rows[r2][j] -= factor * rows[r][j];
            }
            pivot_col.push_back(col);
            ++r;
        }
        for (std::size_t r2 = r; r2 < rows.size(); ++r2)
            if (rows[r2][n_vars] != 0)
                throw InputError("inconsistent tightness equalities; set is not admissible");

        // free parameters are the non-pivot columns
        std::vector<std::optional<std::size_t>> free_index(n_vars);
        for (std::size_t col = 0; col < n_vars; ++col) {
            bool is_pivot =
                std::find(pivot_col.begin(), pivot_col.end(), col) != pivot_col.end();
            if (!is_pivot) free_index[col] = model.n_free++;
        }
        std::vector<AffineForm> var_form(n_vars, AffineForm(model.n_free));
        for (std::size_t col = 0; col < n_vars; ++col)
            if (free_index[col]) var_form[col] = AffineForm::variable(model.n_free, *free_index[col]);
        for (std::size_t i = 0; i < pivot_col.size(); ++i) {
            AffineForm expr(model.n_free);
            expr.constant = rows[i][n_vars];
            for (std::size_t col = pivot_col[i] + 1; col < n_vars; ++col)
                if (rows[i][col] != 0 && free_index[col])
                    expr.coeffs[*free_index[col]] -= rows[i][col];
            var_form[pivot_col[i]] = std::move(expr);
        }

        model.f_coord.assign(nr, AffineForm(model.n_free));
        for (std::size_t c = 0; c < nr; ++c)
            if (fvar[c]) model.f_coord[c] = var_form[*fvar[c]];
        model.g_coord.resize(nc, AffineForm(model.n_free));
        for (std::size_t d = 0; d < nc; ++d) model.g_coord[d] = var_form[gvar[d]];

        model.gap_form.assign(nr, std::vector<AffineForm>(nc, AffineForm(model.n_free)));
        for (std::size_t c = 0; c < nr; ++c)
            for (std::size_t d = 0; d < nc; ++d) {
                AffineForm form = AffineForm::constant_form(model.n_free, M->at(c, d).finite_value());
                form -= model.f_coord[c];
                form -= model.g_coord[d];
                model.gap_form[c][d] = std::move(form);
            }
        return model;
    }

    NucleusPoint lift(const std::vector<Rational>& t) const {
        std::vector<ExtReal> f, g;
        for (std::size_t c = 0; c < M->n_rows(); ++c) f.push_back(ExtReal(f_coord[c].eval(t)));
        for (std::size_t d = 0; d < M->n_cols(); ++d) g.push_back(ExtReal(g_coord[d].eval(t)));
        return NucleusPoint::make(M, Potential::presheaf(M->row_labels(), f),
                                  Potential::copresheaf(M->col_labels(), g));
    }
};

} // namespace detail

struct Chamber {
    OrderSignature signature;
    NucleusPoint sample;
};

/// Chambers of one witness cell plus the walls discovered between them
/// (edges as index pairs into `chambers`).
struct CellChambers {
    PairSet tight_set;
    std::vector<Chamber> chambers;
    std::vector<std::pair<std::size_t, std::size_t>> walls;
};

/// Enumerates the order chambers meeting the relative interior of a cell by
/// wall-crossing search. Within the cell the gap entries are affine in the
/// free coordinates; pairs with identical affine forms are grouped into
/// classes, chambers are the realizable strict total orders of the classes,
/// and neighboring chambers differ by one adjacent transposition across a
/// tie wall.
inline CellChambers enumerate_chambers(ProfunctorPtr M, const CellDescriptor& cell,
                                       std::size_t base_row = 0) {
    detail::CellModel model = detail::CellModel::build(M, cell.tight_set, base_row);

    // group the slack pairs into classes of identically-equal gap forms
    std::vector<std::vector<Pair>> classes;
    std::vector<AffineForm> class_form;
    for (std::size_t c = 0; c < M->n_rows(); ++c)
        for (std::size_t d = 0; d < M->n_cols(); ++d) {
            if (cell.tight_set.count({c, d})) continue;
            const AffineForm& form = model.gap_form[c][d];
            bool merged = false;
            for (std::size_t k = 0; k < classes.size(); ++k)
                if (class_form[k] == form) {
                    classes[k].push_back({c, d});
                    merged = true;
                    break;
                }
            if (!merged) {
                classes.push_back({{c, d}});
                class_form.push_back(form);
            }
        }
    for (auto& cls : classes) std::sort(cls.begin(), cls.end());

    std::vector<Pair> zero_block(cell.tight_set.begin(), cell.tight_set.end());
    auto open_cell_constraints = [&]() {
        std::vector<AffineConstraint> cs;
        for (const auto& form : class_form) cs.push_back(lt_zero(form * Rational(-1)));
        return cs;
    };
    auto order_system = [&](const std::vector<std::size_t>& order,
                            std::optional<std::size_t> tie_at) {
        std::vector<AffineConstraint> cs = open_cell_constraints();
        for (std::size_t i = 0; i + 1 < order.size(); ++i) {
            AffineForm diff = class_form[order[i]] - class_form[order[i + 1]];
            if (tie_at && *tie_at == i)
                cs.push_back(eq_zero(std::move(diff)));
            else
                cs.push_back(lt_zero(std::move(diff)));
        }
        return cs;
    };
    auto signature_of = [&](const std::vector<std::size_t>& order,
                            const std::vector<Rational>& t) {
        OrderSignature sig;
        sig.blocks.push_back(zero_block);
        sig.block_values.push_back(ExtReal(0));
        for (std::size_t k : order) {
            sig.blocks.push_back(classes[k]);
            sig.block_values.push_back(ExtReal(class_form[k].eval(t)));
        }
        return sig;
    };

    CellChambers out;
    out.tight_set = cell.tight_set;
    if (classes.empty()) {
        // every pair tight: single chamber, single signature
        auto feas = linear_feasible(model.n_free, {});
        out.chambers.push_back({signature_of({}, feas.point), model.lift(feas.point)});
        return out;
    }

    // initial strict order by greedy insertion: some position is always
    // feasible because distinct classes differ off a hyperplane
    std::vector<std::size_t> order;
    for (std::size_t k = 0; k < classes.size(); ++k) {
        bool placed = false;
        for (std::size_t pos = 0; pos <= order.size() && !placed; ++pos) {
            std::vector<std::size_t> candidate = order;
            candidate.insert(candidate.begin() + static_cast<std::ptrdiff_t>(pos), k);
            if (linear_feasible(model.n_free, order_system(candidate, std::nullopt)).feasible) {
                order = std::move(candidate);
                placed = true;
            }
        }
        if (!placed) throw InternalError("no feasible insertion position for a gap class");
    }

    std::map<std::vector<std::size_t>, std::size_t> index_of;
    std::deque<std::vector<std::size_t>> queue;
    auto visit = [&](const std::vector<std::size_t>& ord) {
        auto feas = linear_feasible(model.n_free, order_system(ord, std::nullopt));
        out.chambers.push_back({signature_of(ord, feas.point), model.lift(feas.point)});
        index_of.emplace(ord, out.chambers.size() - 1);
        queue.push_back(ord);
    };
    visit(order);
    while (!queue.empty()) {
        std::vector<std::size_t> current = queue.front();
        queue.pop_front();
        std::size_t current_index = index_of.at(current);
        for (std::size_t i = 0; i + 1 < current.size(); ++i) {
            // does the tie hyperplane between adjacent classes support a facet?
            if (!linear_feasible(model.n_free, order_system(current, i)).feasible) continue;
            std::vector<std::size_t> neighbor = current;
            std::swap(neighbor[i], neighbor[i + 1]);
            auto found = index_of.find(neighbor);
            if (found == index_of.end()) {
                if (!linear_feasible(model.n_free, order_system(neighbor, std::nullopt)).feasible)
                    continue;
                visit(neighbor);
                found = index_of.find(neighbor);
            }
            if (current_index < found->second)
                out.walls.push_back({current_index, found->second});
        }
    }
    std::sort(out.walls.begin(), out.walls.end());
    out.walls.erase(std::unique(out.walls.begin(), out.walls.end()), out.walls.end());
    return out;
}

/// Two-coloring certificate for the chamber adjacency graph, or an odd cycle
/// when none exists.
struct ColoringReport {
    bool bipartite = true;
    std::vector<int> colors;
    std::vector<std::size_t> odd_cycle;
};

inline ColoringReport two_color(std::size_t n,
                                const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    std::vector<std::vector<std::size_t>> adj(n);
    for (const auto& [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    ColoringReport report;
    report.colors.assign(n, -1);
    std::vector<std::size_t> parent(n, n);
    for (std::size_t start = 0; start < n; ++start) {
        if (report.colors[start] != -1) continue;
        report.colors[start] = 0;
        std::deque<std::size_t> queue{start};
        while (!queue.empty()) {
            std::size_t v = queue.front();
            queue.pop_front();
            for (std::size_t w : adj[v]) {
                if (report.colors[w] == -1) {
                    report.colors[w] = 1 - report.colors[v];
                    parent[w] = v;
                    queue.push_back(w);
                } else if (report.colors[w] == report.colors[v]) {
                    // reconstruct the odd cycle through the BFS tree
                    std::vector<std::size_t> pv{v}, pw{w};
                    while (pv.back() != start) pv.push_back(parent[pv.back()]);
                    while (pw.back() != start) pw.push_back(parent[pw.back()]);
                    while (pv.size() > 1 && pw.size() > 1 &&
                           pv[pv.size() - 2] == pw[pw.size() - 2]) {
                        pv.pop_back();
                        pw.pop_back();
                    }
                    report.odd_cycle = pv;
                    report.odd_cycle.insert(report.odd_cycle.end(), pw.rbegin(), pw.rend());
                    report.odd_cycle.pop_back();
                    report.bipartite = false;
                    return report;
                }
            }
        }
    }
    return report;
}

/// Chamber graph over a family of cells (chambers of different cells are
/// never adjacent) with its 2-coloring.
struct ChamberAtlas {
    std::vector<CellChambers> per_cell;
    std::vector<ColoringReport> colorings;
    bool bipartite = true;
};

inline ChamberAtlas chamber_adjacency(ProfunctorPtr M, const std::vector<CellDescriptor>& cells,
                                      std::size_t base_row = 0) {
    ChamberAtlas atlas;
    for (const auto& cell : cells) {
        atlas.per_cell.push_back(enumerate_chambers(M, cell, base_row));
        atlas.colorings.push_back(
            two_color(atlas.per_cell.back().chambers.size(), atlas.per_cell.back().walls));
        atlas.bipartite = atlas.bipartite && atlas.colorings.back().bipartite;
    }
    return atlas;
}

} // namespace isbell
