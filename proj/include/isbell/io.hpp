#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "isbell/chambers.hpp"
#include "isbell/chart.hpp"
#include "isbell/events.hpp"
#include "isbell/fca.hpp"
#include "isbell/gap.hpp"
#include "isbell/metric.hpp"
#include "isbell/polyhedra.hpp"
#include "isbell/profunctor.hpp"

namespace isbell::io {

using nlohmann::json;

// ---------------------------------------------------------------------------
// core formats
//
// matrix:     {"rows": [...], "cols": [...], "entries": [["0.7", ...], ...]}
// potential:  {"side": "presheaf"|"copresheaf", "values": {label: value}}
// point:      {"f": {label: value}, "g": {label: value}}
// ---------------------------------------------------------------------------

inline json load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError(path + ": " + e.what());
    }
}

inline void save_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << text;
}

inline ProfunctorPtr read_profunctor(const json& j) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
        throw InputError("matrix file needs 'rows', 'cols' and 'entries'");
    std::vector<std::string> rows = j.at("rows").get<std::vector<std::string>>();
    std::vector<std::string> cols = j.at("cols").get<std::vector<std::string>>();
    std::vector<std::vector<ExtReal>> entries;
    for (const auto& row : j.at("entries")) {
        entries.emplace_back();
        for (const auto& cell : row) entries.back().push_back(ExtReal::parse(cell.get<std::string>()));
    }
    return make_profunctor(std::move(rows), std::move(cols), std::move(entries));
}

inline json write_profunctor(const Profunctor& M) {
    json entries = json::array();
    for (const auto& row : M.entries()) {
        json r = json::array();
        for (const auto& v : row) r.push_back(v.str());
        entries.push_back(std::move(r));
    }
    return {{"rows", M.row_labels()}, {"cols", M.col_labels()}, {"entries", std::move(entries)}};
}

inline std::vector<ExtReal> read_values(const json& values, const std::vector<std::string>& labels,
                                        const std::string& what) {
    if (!values.is_object()) throw InputError(what + " 'values' must be an object");
    if (values.size() != labels.size())
        throw InputError(what + " must assign exactly the matrix labels");
    std::vector<ExtReal> out;
    out.reserve(labels.size());
    for (const auto& label : labels) {
        if (!values.contains(label)) throw InputError(what + " is missing label '" + label + "'");
        out.push_back(ExtReal::parse(values.at(label).get<std::string>()));
    }
    return out;
}

inline Potential read_potential(const json& j, const Profunctor& M) {
    if (!j.is_object() || !j.contains("side") || !j.contains("values"))
        throw InputError("potential file needs 'side' and 'values'");
    std::string side = j.at("side").get<std::string>();
    if (side == "presheaf")
        return Potential::presheaf(M.row_labels(),
                                   read_values(j.at("values"), M.row_labels(), "presheaf"));
    if (side == "copresheaf")
        return Potential::copresheaf(M.col_labels(),
                                     read_values(j.at("values"), M.col_labels(), "copresheaf"));
    throw InputError("side must be 'presheaf' or 'copresheaf', got '" + side + "'");
}

inline json write_values(const Potential& p) {
    json values = json::object();
    for (std::size_t i = 0; i < p.size(); ++i) values[p.labels()[i]] = p[i].str();
    return values;
}

inline json write_potential(const Potential& p) {
    return {{"side", side_name(p.side())}, {"values", write_values(p)}};
}

inline NucleusPoint read_point(const json& j, ProfunctorPtr M) {
    if (!j.is_object() || !j.contains("f") || !j.contains("g"))
        throw InputError("point file needs 'f' and 'g'");
    Potential f =
        Potential::presheaf(M->row_labels(), read_values(j.at("f"), M->row_labels(), "point f"));
    Potential g = Potential::copresheaf(M->col_labels(),
                                        read_values(j.at("g"), M->col_labels(), "point g"));
    return NucleusPoint::make(std::move(M), std::move(f), std::move(g));
}

inline json write_point(const NucleusPoint& p) {
    return {{"f", write_values(p.presheaf())}, {"g", write_values(p.copresheaf())}};
}

// ---------------------------------------------------------------------------
// report builders (one json object per CLI command)
// ---------------------------------------------------------------------------

inline json pair_label(const Profunctor& M, const Pair& p) {
    return json::array({M.row_labels()[p.first], M.col_labels()[p.second]});
}

inline json pairs_labels(const Profunctor& M, const PairSet& pairs) {
    json out = json::array();
    for (const auto& p : pairs) out.push_back(pair_label(M, p));
    return out;
}

inline json transform_report(const Profunctor& M, const Potential& p) {
    json report;
    report["input"] = write_potential(p);
    if (p.side() == Side::presheaf) {
        Potential upper = isbell_upper(M, p);
        Potential closed = isbell_lower(M, upper);
        report["upper"] = write_potential(upper);
        report["closure"] = write_potential(closed);
        report["closed"] = closed == p;
    } else {
        Potential lower = isbell_lower(M, p);
        Potential closed = isbell_upper(M, lower);
        report["lower"] = write_potential(lower);
        report["closure"] = write_potential(closed);
        report["closed"] = closed == p;
    }
    return report;
}

inline json nucleus_report(const NucleusPoint& p) {
    json report;
    report["point"] = write_point(p);
    report["finite_valued"] = p.finite_valued();
    if (p.finite_valued()) report["witnesses"] = pairs_labels(p.matrix(), witness_relation(p));
    return report;
}

inline json gap_report(const GapMatrix& gap) {
    json entries = json::array();
    for (const auto& row : gap.entries()) {
        json r = json::array();
        for (const auto& v : row) r.push_back(v.str());
        entries.push_back(std::move(r));
    }
    json radii = json::array();
    for (const auto& v : gap.sorted_radii()) radii.push_back(v.str());
    json events = json::array();
    for (const auto& [value, count] : gap.event_radii())
        events.push_back({{"value", value.str()}, {"multiplicity", count}});
    return {{"f", write_values(gap.presheaf())},
            {"g", write_values(gap.copresheaf())},
            {"entries", std::move(entries)},
            {"zero_set", pairs_labels(gap.matrix(), gap.zeros())},
            {"closed", gap.every_row_has_zero()},
            {"radii_sorted", std::move(radii)},
            {"event_radii", std::move(events)}};
}

inline json cells_report(const Profunctor& M, const std::vector<CellDescriptor>& cells,
                         std::size_t base_row) {
    json list = json::array();
    for (std::size_t i = 0; i < cells.size(); ++i) {
        json entry;
        entry["tight_set"] = pairs_labels(M, cells[i].tight_set);
        entry["dimension"] = cells[i].dimension;
        entry["interior_point"] = write_point(cells[i].interior.gauged(base_row));
        json faces = json::array();
        for (std::size_t j = 0; j < cells.size(); ++j)
            if (i != j && std::includes(cells[j].tight_set.begin(), cells[j].tight_set.end(),
                                        cells[i].tight_set.begin(), cells[i].tight_set.end()))
                faces.push_back(j);
        entry["faces"] = std::move(faces); // indices of proper faces of this cell
        list.push_back(std::move(entry));
    }
    return {{"base_row", M.row_labels()[base_row]}, {"cells", std::move(list)}};
}

inline json events_report(const NucleusPoint& p, std::size_t base_row) {
    const Profunctor& M = p.matrix();
    json list = json::array();
    for (const auto& target : event_targets(p)) {
        json entry;
        entry["pair"] = pair_label(M, target.pair);
        entry["radius"] = target.radius.str();
        if (target.radius.is_finite() && !target.radius.is_zero()) {
            NucleusPoint moved = event_construct(p, target.pair).gauged(base_row);
            entry["boundary_point"] = write_point(moved);
            entry["new_witnesses"] = pairs_labels(M, witness_relation(moved));
        }
        list.push_back(std::move(entry));
    }
    return {{"point", write_point(p.gauged(base_row))}, {"events", std::move(list)}};
}

inline json signature_json(const Profunctor& M, const OrderSignature& sig) {
    json blocks = json::array();
    for (std::size_t b = 0; b < sig.blocks.size(); ++b) {
        json pairs = json::array();
        for (const auto& p : sig.blocks[b]) pairs.push_back(pair_label(M, p));
        blocks.push_back(std::move(pairs));
    }
    json values = json::array();
    for (const auto& v : sig.block_values) values.push_back(v.str());
    return {{"blocks", std::move(blocks)}, {"block_values", std::move(values)}};
}

inline json chambers_report(const Profunctor& M, const ChamberAtlas& atlas,
                            std::size_t base_row) {
    json cells = json::array();
    for (std::size_t i = 0; i < atlas.per_cell.size(); ++i) {
        const CellChambers& cc = atlas.per_cell[i];
        json chambers = json::array();
        for (const auto& ch : cc.chambers)
            chambers.push_back({{"signature", signature_json(M, ch.signature)},
                                {"sample", write_point(ch.sample.gauged(base_row))}});
        json walls = json::array();
        for (const auto& [a, b] : cc.walls) walls.push_back(json::array({a, b}));
        cells.push_back({{"tight_set", pairs_labels(M, cc.tight_set)},
                         {"chambers", std::move(chambers)},
                         {"walls", std::move(walls)},
                         {"bipartite", atlas.colorings[i].bipartite},
                         {"coloring", atlas.colorings[i].colors}});
    }
    return {{"bipartite", atlas.bipartite}, {"cells", std::move(cells)}};
}

inline json lattice_json(const ConceptLattice& L) {
    const auto& rows = L.relation().row_labels();
    const auto& cols = L.relation().col_labels();
    json concepts = json::array();
    for (const auto& c : L.concepts()) {
        json extent = json::array(), intent = json::array();
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (c.extent & (std::uint64_t{1} << i)) extent.push_back(rows[i]);
        for (std::size_t j = 0; j < cols.size(); ++j)
            if (c.intent & (std::uint64_t{1} << j)) intent.push_back(cols[j]);
        concepts.push_back({{"extent", std::move(extent)}, {"intent", std::move(intent)}});
    }
    json covers = json::array();
    for (std::size_t i = 0; i < L.size(); ++i)
        for (std::size_t j = 0; j < L.size(); ++j)
            if (L.covers(i, j)) covers.push_back(json::array({i, j}));
    return {{"concepts", std::move(concepts)}, {"hasse", std::move(covers)}};
}

inline json tower_report(const Profunctor& M, const Tower& tower) {
    json levels = json::array();
    for (std::size_t k = 0; k < tower.relations.size(); ++k) {
        json level;
        if (k < tower.thresholds.size()) level["threshold"] = tower.thresholds[k].str();
        json incidences = json::array();
        for (const auto& p : tower.relations[k].incidences()) incidences.push_back(pair_label(M, p));
        level["relation"] = std::move(incidences);
        level["lattice"] = lattice_json(tower.lattices[k]);
        if (k + 1 < tower.relations.size()) {
            level["transport_ext"] = tower.maps_ext[k];
            level["transport_int"] = tower.maps_int[k];
        }
        levels.push_back(std::move(level));
    }
    // two-step composites vs direct transports; at a freshly split tie this
    // is exactly the wall diamond
    json diamonds = json::array();
    for (std::size_t k = 0; k + 2 < tower.relations.size(); ++k) {
        bool ext_ok = true, int_ok = true;
        const auto& L0 = tower.lattices[k];
        const auto& L2 = tower.lattices[k + 2];
        for (std::size_t i = 0; i < L0.size(); ++i) {
            Concept via_ext = transport_ext(tower.relations[k], tower.relations[k + 2],
                                            L0.concepts()[i]);
            Concept via_int = transport_int(tower.relations[k], tower.relations[k + 2],
                                            L0.concepts()[i]);
            ext_ok = ext_ok &&
                     L2.index_of_extent(via_ext.extent) == tower.maps_ext[k + 1][tower.maps_ext[k][i]];
            int_ok = int_ok &&
                     L2.index_of_extent(via_int.extent) == tower.maps_int[k + 1][tower.maps_int[k][i]];
        }
        diamonds.push_back({{"from", k}, {"to", k + 2}, {"ext_ok", ext_ok}, {"int_ok", int_ok}});
    }
    return {{"levels", std::move(levels)}, {"skip_level_composites", std::move(diamonds)}};
}

inline json plot_report(const ChartProjection& chart, const std::vector<CellDescriptor>& cells,
                        const std::optional<NucleusPoint>& mark,
                        const std::vector<Rational>& ball_radii) {
    json polys = json::array();
    for (const auto& cell : cells) {
        json vertices = json::array();
        for (const auto& v : cell_polygon(chart, cell))
            vertices.push_back(json::array({render_rational(v.x), render_rational(v.y)}));
        polys.push_back({{"tight_set", pairs_labels(chart.matrix(), cell.tight_set)},
                         {"dimension", cell.dimension},
                         {"vertices", std::move(vertices)}});
    }
    json report{{"cells", std::move(polys)}};
    if (mark) {
        ChartPoint c = chart.project(mark->gauged(chart.base_row()).presheaf());
        report["mark"] = json::array({render_rational(c.x), render_rational(c.y)});
        json balls = json::array();
        for (const auto& r : ball_radii) balls.push_back(render_rational(r));
        report["ball_radii"] = std::move(balls);
    }
    return report;
}

/// Canonical text rendering of any report: 2-space indent, sorted keys
/// (nlohmann objects iterate alphabetically), trailing newline.
inline std::string render(const json& j) { return j.dump(2) + "\n"; }

} // namespace isbell::io
