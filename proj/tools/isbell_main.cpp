// isbell: explore the nucleus of a matrix profunctor from the command line.
//
//   isbell <command> --matrix <file> [--potential <file>] [--point <file>]
//          [--base-row <label>] [--out <dir>] [--svg] [--cap <n>]
//
// Commands: transform, nucleus, gap, cells, events, chambers, tower, plot.
// Every command prints a deterministic JSON report to stdout and, with
// --out, writes it to <dir>/<command>.json. plot (and --svg elsewhere)
// additionally emits an SVG chart; charts need a 3-row matrix.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "isbell/isbell.hpp"

using namespace isbell;
using nlohmann::json;

namespace {

struct Options {
    std::string command;
    std::string matrix_path;
    std::string potential_path;
    std::string point_path;
    std::string base_row;
    std::string out_dir;
    bool svg = false;
    std::size_t cap = 20;
};

std::size_t resolve_base_row(const Profunctor& M, const std::string& label) {
    return label.empty() ? 0 : M.row_index(label);
}

/// The point under discussion: --point wins, otherwise --potential is closed
/// into a nucleus point (an error names the side that failed).
std::optional<NucleusPoint> load_point(const Options& opt, const ProfunctorPtr& M) {
    if (!opt.point_path.empty()) return io::read_point(io::load_file(opt.point_path), M);
    if (!opt.potential_path.empty())
        return make_nucleus_point(M, io::read_potential(io::load_file(opt.potential_path), *M));
    return std::nullopt;
}

NucleusPoint require_point(const Options& opt, const ProfunctorPtr& M) {
    auto p = load_point(opt, M);
    if (!p) throw InputError("this command needs --potential or --point");
    return *p;
}

void emit(const Options& opt, const json& report) {
    std::string text = io::render(report);
    std::cout << text;
    if (!opt.out_dir.empty()) {
        std::filesystem::create_directories(opt.out_dir);
        io::save_file(opt.out_dir + "/" + opt.command + ".json", text);
    }
}

void emit_svg(const Options& opt, const ProfunctorPtr& M, std::size_t base_row,
              const std::vector<CellDescriptor>& cells, const std::optional<NucleusPoint>& mark) {
    ChartProjection chart(M, base_row);
    std::vector<Rational> radii;
    if (mark)
        for (const auto& [value, count] : GapMatrix::at(*mark).event_radii())
            if (value.is_finite()) radii.push_back(value.finite_value());
    std::string svg = render_chart_svg(chart, cells, mark, radii);
    std::string path = (opt.out_dir.empty() ? std::string(".") : opt.out_dir) + "/plot.svg";
    if (!opt.out_dir.empty()) std::filesystem::create_directories(opt.out_dir);
    io::save_file(path, svg);
    std::cerr << "wrote " << path << "\n";
}

int run(const Options& opt) {
    ProfunctorPtr M = io::read_profunctor(io::load_file(opt.matrix_path));
    std::size_t base_row = resolve_base_row(*M, opt.base_row);

    if (opt.command == "transform") {
        if (opt.potential_path.empty()) throw InputError("transform needs --potential");
        Potential p = io::read_potential(io::load_file(opt.potential_path), *M);
        emit(opt, io::transform_report(*M, p));
        return 0;
    }
    if (opt.command == "nucleus") {
        if (!opt.point_path.empty()) {
            // validate a claimed point, reporting any violated coordinates
            json j = io::load_file(opt.point_path);
            Potential f = Potential::presheaf(
                M->row_labels(), io::read_values(j.at("f"), M->row_labels(), "point f"));
            Potential g = Potential::copresheaf(
                M->col_labels(), io::read_values(j.at("g"), M->col_labels(), "point g"));
            NucleusCheck check = is_nucleus_point(*M, f, g);
            json violations = json::array();
            for (const auto& v : check.violations)
                violations.push_back({{"side", side_name(v.side)},
                                      {"label", v.label},
                                      {"expected", v.expected.str()},
                                      {"actual", v.actual.str()}});
            json report{{"valid", check.ok}, {"violations", std::move(violations)}};
            if (check.ok) report["point"] = io::write_point(NucleusPoint::make(M, f, g));
            emit(opt, report);
            return check.ok ? 0 : 1;
        }
        if (opt.potential_path.empty()) throw InputError("nucleus needs --potential or --point");
        NucleusPoint p =
            make_nucleus_point(M, io::read_potential(io::load_file(opt.potential_path), *M));
        emit(opt, io::nucleus_report(p));
        return 0;
    }
    if (opt.command == "gap") {
        NucleusPoint p = require_point(opt, M);
        emit(opt, io::gap_report(GapMatrix::at(p)));
        if (opt.svg) emit_svg(opt, M, base_row, enumerate_cells(M, base_row, opt.cap), p);
        return 0;
    }
    if (opt.command == "cells") {
        auto cells = enumerate_cells(M, base_row, opt.cap);
        emit(opt, io::cells_report(*M, cells, base_row));
        if (opt.svg) emit_svg(opt, M, base_row, cells, load_point(opt, M));
        return 0;
    }
    if (opt.command == "events") {
        NucleusPoint p = require_point(opt, M);
        emit(opt, io::events_report(p, base_row));
        if (opt.svg) emit_svg(opt, M, base_row, enumerate_cells(M, base_row, opt.cap), p);
        return 0;
    }
    if (opt.command == "chambers") {
        auto cells = enumerate_cells(M, base_row, opt.cap);
        ChamberAtlas atlas = chamber_adjacency(M, cells, base_row);
        emit(opt, io::chambers_report(*M, atlas, base_row));
        if (opt.svg) emit_svg(opt, M, base_row, cells, load_point(opt, M));
        return 0;
    }
    if (opt.command == "tower") {
        NucleusPoint p = require_point(opt, M);
        Tower tower = point_tower(p, opt.cap);
        json report = io::tower_report(*M, tower);
        report["signature"] = io::signature_json(*M, signature_at(p));
        emit(opt, report);
        return 0;
    }
    if (opt.command == "plot") {
        auto cells = enumerate_cells(M, base_row, opt.cap);
        std::optional<NucleusPoint> mark = load_point(opt, M);
        ChartProjection chart(M, base_row);
        std::vector<Rational> radii;
        if (mark)
            for (const auto& [value, count] : GapMatrix::at(*mark).event_radii())
                if (value.is_finite()) radii.push_back(value.finite_value());
        emit(opt, io::plot_report(chart, cells, mark, radii));
        emit_svg(opt, M, base_row, cells, mark);
        return 0;
    }
    throw InputError("unknown command '" + opt.command + "'");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Isbell nucleus toolkit: transforms, gap matrices, witness cells, "
                 "events, order chambers, concept-lattice towers, charts"};
    app.require_subcommand(1);

    Options opt;
    for (const char* name :
         {"transform", "nucleus", "gap", "cells", "events", "chambers", "tower", "plot"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--matrix", opt.matrix_path, "matrix file (JSON)")->required();
        sub->add_option("--potential", opt.potential_path, "potential file (JSON)");
        sub->add_option("--point", opt.point_path, "nucleus point file (JSON)");
        sub->add_option("--base-row", opt.base_row, "gauge row label (default: first row)");
        sub->add_option("--out", opt.out_dir, "directory for report and SVG output");
        sub->add_flag("--svg", opt.svg, "also render the chart SVG (3-row matrices)");
        sub->add_option("--cap", opt.cap, "enumeration size cap (default 20)");
        sub->callback([&opt, name]() { opt.command = name; });
    }

    CLI11_PARSE(app, argc, argv);
    try {
        return run(opt);
    } catch (const CapExceededError& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return 2;
    } catch (const NondegeneracyError& e) {
        std::cerr << "nondegeneracy error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
