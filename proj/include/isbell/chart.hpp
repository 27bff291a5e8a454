#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "isbell/linfeas.hpp"
#include "isbell/polyhedra.hpp"

namespace isbell {

struct ChartPoint {
    Rational x;
    Rational y;
    bool operator==(const ChartPoint& o) const { return x == o.x && y == o.y; }
    bool operator<(const ChartPoint& o) const { return x < o.x || (x == o.x && y < o.y); }
};

/// The 2D affine chart for a 3-row matrix: coordinates are the presheaf
/// values of the two non-base rows relative to the base row.
class ChartProjection {
public:
    ChartProjection(ProfunctorPtr M, std::size_t base_row = 0)
        : matrix_(std::move(M)), base_row_(base_row) {
        if (matrix_->n_rows() != 3)
            throw UnsupportedError("the chart is defined only for |C| = 3");
        if (base_row_ >= 3) throw InputError("base row out of range");
        for (std::size_t c = 0; c < 3; ++c)
            if (c != base_row_) axes_.push_back(c);
    }

    const Profunctor& matrix() const { return *matrix_; }
    std::size_t base_row() const { return base_row_; }
    const std::vector<std::size_t>& axis_rows() const { return axes_; }

    ChartPoint project(const Potential& f) const {
        if (!f.finite_everywhere())
            throw UnsupportedError("chart projection needs a finite-valued presheaf");
        Rational base = f[base_row_].finite_value();
        return {f[axes_[0]].finite_value() - base, f[axes_[1]].finite_value() - base};
    }

    /// Lifts a chart point to the presheaf with value 0 at the base row.
    Potential lift(const ChartPoint& p) const {
        std::vector<ExtReal> values(3, ExtReal(0));
        values[axes_[0]] = ExtReal(p.x);
        values[axes_[1]] = ExtReal(p.y);
        return Potential::presheaf(matrix_->row_labels(), values);
    }

private:
    ProfunctorPtr matrix_;
    std::size_t base_row_;
    std::vector<std::size_t> axes_;
};

/// The metric ball of the max-spread distance in the chart: the hexagon
/// |u| <= r, |v| <= r, |u - v| <= r around the center (u, v are chart
/// offsets). Radius zero degenerates to the center point.
inline std::vector<ChartPoint> metric_ball_polygon(const ChartPoint& center, const Rational& radius) {
    if (radius < 0) throw InputError("ball radius must be nonnegative");
    if (radius == 0) return {center};
    const Rational& r = radius;
    return {{center.x + r, center.y},     {center.x + r, center.y + r},
            {center.x, center.y + r},     {center.x - r, center.y},
            {center.x - r, center.y - r}, {center.x, center.y - r}};
}

namespace detail {

/// Exact counterclockwise comparator around an interior reference point.
inline bool ccw_less(const ChartPoint& ref, const ChartPoint& a, const ChartPoint& b) {
    auto half = [&](const ChartPoint& p) {
        Rational dx = p.x - ref.x, dy = p.y - ref.y;
        return (dy < 0 || (dy == 0 && dx < 0)) ? 1 : 0;
    };
    int ha = half(a), hb = half(b);
    if (ha != hb) return ha < hb;
    Rational cross = (a.x - ref.x) * (b.y - ref.y) - (a.y - ref.y) * (b.x - ref.x);
    if (cross != 0) return cross > 0;
    return a < b;
}

} // namespace detail

/// The chart image of a witness cell, as the counterclockwise-ordered vertex
/// list of its polygon (a pair for a segment, a single point for a vertex).
/// The cell constraints are projected onto the chart by exact
/// Fourier-Motzkin elimination of the copresheaf variables, vertices are
/// enumerated by pairwise intersection of tight constraint lines, and every
/// returned vertex is re-verified against the exact Cell membership
/// predicate before any float conversion.
inline std::vector<ChartPoint> cell_polygon(const ChartProjection& chart,
                                            const CellDescriptor& cell) {
    const Profunctor& M = chart.matrix();
    const std::size_t nd = M.n_cols();
    const std::size_t n_vars = 2 + nd; // x, y, then g(d)
    std::vector<AffineConstraint> system;
    for (std::size_t c = 0; c < 3; ++c)
        for (std::size_t d = 0; d < nd; ++d) {
            AffineForm form(n_vars); // f(c) + g(d) - M(c,d)  (<= 0, or == 0 on the tight set)
            if (c == chart.axis_rows()[0])
                form.coeffs[0] = 1;
            else if (c == chart.axis_rows()[1])
                form.coeffs[1] = 1;
            form.coeffs[2 + d] = 1;
            form.constant = -M.at(c, d).finite_value();
            system.push_back(cell.tight_set.count({c, d}) ? eq_zero(std::move(form))
                                                          : le_zero(std::move(form)));
        }
    std::vector<AffineConstraint> shadow = project_onto_prefix(n_vars, 2, std::move(system));

    // candidate vertices: pairwise intersections of tight constraint lines,
    // plus single-constraint solutions for degenerate (point/segment) images
    std::vector<ChartPoint> candidates;
    auto add_solution = [&](const AffineForm& a, const AffineForm& b) {
        Rational det = a.coeffs[0] * b.coeffs[1] - a.coeffs[1] * b.coeffs[0];
        if (det == 0) return;
        Rational x = (-a.constant * b.coeffs[1] + b.constant * a.coeffs[1]) / det;
        Rational y = (-a.coeffs[0] * b.constant + b.coeffs[0] * a.constant) / det;
        candidates.push_back({x, y});
    };
    for (std::size_t i = 0; i < shadow.size(); ++i)
        for (std::size_t j = i + 1; j < shadow.size(); ++j)
            add_solution(shadow[i].form, shadow[j].form);

    auto satisfies_all = [&](const ChartPoint& p) {
        for (const auto& c : shadow) {
            Rational v = c.form.constant + c.form.coeffs[0] * p.x + c.form.coeffs[1] * p.y;
            if (c.rel == Rel::eq ? v != 0 : v > 0) return false;
        }
        return true;
    };
    std::vector<ChartPoint> vertices;
    for (const auto& p : candidates) {
        if (!satisfies_all(p)) continue;
        if (std::find(vertices.begin(), vertices.end(), p) == vertices.end()) vertices.push_back(p);
    }
    if (vertices.empty()) {
        // no two independent tight lines: the image is a single point
        vertices.push_back(chart.project(cell.interior.gauged(chart.base_row()).presheaf()));
    }

    // exact membership check before any float conversion
    for (const auto& p : vertices) {
        Potential f = chart.lift(p);
        Potential g = isbell_upper(M, f);
        std::vector<Rational> fv, gv;
        for (std::size_t c = 0; c < 3; ++c) fv.push_back(f[c].finite_value());
        for (std::size_t d = 0; d < nd; ++d) gv.push_back(g[d].finite_value());
        if (!in_cell(M, cell.tight_set, fv, gv))
            throw InternalError("projected cell vertex fails exact membership");
    }

    if (vertices.size() > 2) {
        Rational cx(0), cy(0);
        for (const auto& p : vertices) {
            cx += p.x;
            cy += p.y;
        }
        ChartPoint centroid{cx / Rational(static_cast<unsigned>(vertices.size())),
                            cy / Rational(static_cast<unsigned>(vertices.size()))};
        std::sort(vertices.begin(), vertices.end(),
                  [&](const ChartPoint& a, const ChartPoint& b) {
                      return detail::ccw_less(centroid, a, b);
                  });
    } else {
        std::sort(vertices.begin(), vertices.end());
    }
    return vertices;
}

namespace detail {

/// Fixed 6-decimal rendering; the only place rationals become floats.
inline std::string svg_coord(const Rational& q) {
    double v = static_cast<double>(numerator(q)) / static_cast<double>(denominator(q));
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.6f", v);
    return buffer;
}

} // namespace detail

/// Renders the polyhedral complex in the chart as SVG 1.1: filled polygons
/// for 2-cells, segments for 1-cells, dots for 0-cells, plus an optional
/// marked point with metric balls at the given radii.
inline std::string render_chart_svg(const ChartProjection& chart,
                                    const std::vector<CellDescriptor>& cells,
                                    const std::optional<NucleusPoint>& mark = std::nullopt,
                                    const std::vector<Rational>& ball_radii = {}) {
    std::vector<std::pair<const CellDescriptor*, std::vector<ChartPoint>>> polygons;
    Rational x_min(0), x_max(0), y_min(0), y_max(0);
    bool any = false;
    auto stretch = [&](const ChartPoint& p) {
        if (!any) {
            x_min = x_max = p.x;
            y_min = y_max = p.y;
            any = true;
        } else {
            x_min = std::min(x_min, p.x);
            x_max = std::max(x_max, p.x);
            y_min = std::min(y_min, p.y);
            y_max = std::max(y_max, p.y);
        }
    };
    for (const auto& cell : cells) {
        polygons.push_back({&cell, cell_polygon(chart, cell)});
        for (const auto& p : polygons.back().second) stretch(p);
    }
    std::optional<ChartPoint> center;
    std::vector<std::vector<ChartPoint>> balls;
    if (mark) {
        center = chart.project(mark->gauged(chart.base_row()).presheaf());
        stretch(*center);
        for (const auto& r : ball_radii) {
            balls.push_back(metric_ball_polygon(*center, r));
            for (const auto& p : balls.back()) stretch(p);
        }
    }
    if (!any) {
        x_min = y_min = Rational(-1);
        x_max = y_max = Rational(1);
    }
    Rational width = x_max - x_min, height = y_max - y_min;
    if (width == 0) width = 1;
    if (height == 0) height = 1;
    Rational pad_x = width / 10, pad_y = height / 10;
    x_min -= pad_x;
    x_max += pad_x;
    y_min -= pad_y;
    y_max += pad_y;

    // map the chart onto a 640-wide viewport, y pointing up
    const Rational view_w(640);
    Rational scale = view_w / (x_max - x_min);
    Rational view_h = (y_max - y_min) * scale;
    auto X = [&](const Rational& x) { return detail::svg_coord((x - x_min) * scale); };
    auto Y = [&](const Rational& y) { return detail::svg_coord((y_max - y) * scale); };

    static const char* kFills[] = {"#bfd7ea", "#c9e4c5", "#f6d6ad", "#e8c6d9", "#d9d2e9"};
    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"640\" height=\"" +
           detail::svg_coord(view_h) + "\" viewBox=\"0 0 640 " + detail::svg_coord(view_h) +
           "\">\n";
    int fill_index = 0;
    for (const auto& [cell, poly] : polygons) {
        if (cell->dimension < 2 || poly.size() < 3) continue;
        svg += "  <polygon points=\"";
        for (std::size_t i = 0; i < poly.size(); ++i) {
            if (i) svg += " ";
            svg += X(poly[i].x) + "," + Y(poly[i].y);
        }
        svg += "\" fill=\"" + std::string(kFills[fill_index++ % 5]) +
               "\" stroke=\"none\" opacity=\"0.85\"/>\n";
    }
    for (const auto& ball : balls) {
        if (ball.size() < 3) continue;
        svg += "  <polygon points=\"";
        for (std::size_t i = 0; i < ball.size(); ++i) {
            if (i) svg += " ";
            svg += X(ball[i].x) + "," + Y(ball[i].y);
        }
        svg += "\" fill=\"#fff3b0\" stroke=\"#b8a100\" stroke-width=\"1\" opacity=\"0.45\"/>\n";
    }
    for (const auto& [cell, poly] : polygons) {
        if (cell->dimension != 1 || poly.size() != 2) continue;
        svg += "  <line x1=\"" + X(poly[0].x) + "\" y1=\"" + Y(poly[0].y) + "\" x2=\"" +
               X(poly[1].x) + "\" y2=\"" + Y(poly[1].y) +
               "\" stroke=\"#1b2a41\" stroke-width=\"2\"/>\n";
    }
    for (const auto& [cell, poly] : polygons) {
        if (cell->dimension != 0) continue;
        svg += "  <circle cx=\"" + X(poly[0].x) + "\" cy=\"" + Y(poly[0].y) +
               "\" r=\"4\" fill=\"#1b2a41\"/>\n";
    }
    if (center)
        svg += "  <circle cx=\"" + X(center->x) + "\" cy=\"" + Y(center->y) +
               "\" r=\"5\" fill=\"#2a9d3a\" stroke=\"#0c5716\" stroke-width=\"1.5\"/>\n";
    svg += "</svg>\n";
    return svg;
}

} // namespace isbell
