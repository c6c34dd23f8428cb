#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cutcell/cutcell_c.h"

// Exit codes: 0 success; 1 invalid argument; 2 domain error; 3 degenerate
// input; 4 rootfinder nonconvergence; 5 interface not a graph; 6 tiling
// failure; 7 singular system; 8 spec parse error; 9 internal error; 64 bad
// command line.

namespace {

[[noreturn]] void die(int status) {
    std::fprintf(stderr, "error: %s\n", cc_last_error());
    std::exit(status);
}

void check(int status) {
    if (status != CC_OK) die(status);
}

struct IfacePair {
    cc_interface* implicit = nullptr;
    cc_interface* parametric = nullptr;
};

// Resolve --case/--spec/--backend into one or two interface handles.
IfacePair open_interfaces(const std::string& case_name, const std::string& spec_path,
                          const std::string& backend) {
    IfacePair out;
    if (!spec_path.empty()) {
        cc_interface* iface = nullptr;
        check(cc_interface_from_file(spec_path.c_str(), &iface));
        int tag = 0;
        cc_interface_backend(iface, &tag);
        const std::string actual = tag == CC_BACKEND_IMPLICIT ? "implicit" : "parametric";
        if (backend != "both" && backend != actual) {
            std::fprintf(stderr, "error: spec file is %s but --backend %s was requested\n",
                         actual.c_str(), backend.c_str());
            std::exit(CC_INVALID_ARGUMENT);
        }
        (tag == CC_BACKEND_IMPLICIT ? out.implicit : out.parametric) = iface;
        return out;
    }
    if (backend == "implicit" || backend == "both")
        check(cc_interface_builtin(case_name.c_str(), CC_BACKEND_IMPLICIT, &out.implicit));
    if (backend == "parametric" || backend == "both")
        check(cc_interface_builtin(case_name.c_str(), CC_BACKEND_PARAMETRIC, &out.parametric));
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Cut-cell quadrature and immersed elasticity studies.\n"
        "Exit codes: 0 ok, 1 invalid argument, 2 domain error, 3 degenerate input,\n"
        "4 nonconvergence, 5 not-a-graph, 6 tiling failure, 7 singular system,\n"
        "8 spec parse error, 9 internal error, 64 bad command line."};
    app.require_subcommand(1);

    std::string case_name = "circle", spec_path, backend = "both", output;
    std::vector<double> h_list;
    int q = 3, p = 2, steps = -1, n_cells = 4;
    double ref_area = -1.0;

    auto add_common = [&](CLI::App* cmd, bool with_spec) {
        cmd->set_help_flag("--help", "print this help message and exit");
        cmd->add_option("--backend", backend, "implicit | parametric | both")
            ->check(CLI::IsMember({"implicit", "parametric", "both"}))
            ->capture_default_str();
        cmd->add_option("-q,--q", q, "Gauss order per direction")->capture_default_str();
        if (with_spec) {
            cmd->add_option("--case", case_name,
                            "built-in case: circle, semicircle, line, triangle, plate-hole, "
                            "square-plate")
                ->capture_default_str();
            cmd->add_option("--spec", spec_path, "JSON interface-spec file (overrides --case)");
        }
    };

    CLI::App* area = app.add_subcommand("area", "area convergence study");
    add_common(area, true);
    area->add_option("--h", h_list, "mesh sizes (repeatable)")->expected(-1);
    area->add_option("--ref", ref_area,
                     "reference area (defaults to the built-in case's closed form)");
    area->add_option("-o,--output", output, "CSV output path")->capture_default_str();

    CLI::App* sweep = app.add_subcommand("sweep", "moving-interface robustness sweep, h = 0.25");
    sweep->add_option("--case", case_name, "line | triangle")
        ->check(CLI::IsMember({"line", "triangle"}))
        ->required();
    add_common(sweep, false);
    sweep->add_option("--steps", steps, "number of sweep steps (default 101 line, 46 triangle)");
    sweep->add_option("-o,--output", output, "CSV output path")->capture_default_str();

    CLI::App* ela = app.add_subcommand("elasticity", "immersed elasticity benchmark");
    ela->add_option("--case", case_name, "plate-hole | square-plate")
        ->check(CLI::IsMember({"plate-hole", "square-plate"}))
        ->required();
    add_common(ela, false);
    ela->add_option("-p,--p", p, "B-spline degree")->capture_default_str();
    ela->add_option("--h", h_list, "mesh sizes (repeatable)")->expected(-1);
    ela->add_option("-o,--output", output, "CSV output path")->capture_default_str();

    CLI::App* points = app.add_subcommand("points", "dump quadrature nodes (x,y,w,cell_i,cell_j)");
    add_common(points, true);
    points->add_option("--n", n_cells, "cells per axis")->capture_default_str();
    points->add_option("-o,--output", output, "CSV output path")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 64; // 0 is --help; anything else is a usage error
    }

    if (area->parsed()) {
        if (h_list.empty()) h_list = {0.25, 0.125, 0.0625, 0.03125, 0.015625};
        if (output.empty()) output = "area.csv";
        IfacePair pair = open_interfaces(case_name, spec_path, backend);
        double ref = ref_area;
        if (ref < 0.0) {
            if (spec_path.empty())
                check(cc_builtin_reference_area(case_name.c_str(), &ref));
            else
                ref = 0.0; // unknown reference: records report absolute error
        }
        cc_study* study = nullptr;
        check(cc_study_new(&study));
        if (pair.implicit)
            check(cc_study_area(study, pair.implicit, ref, h_list.data(),
                                static_cast<int>(h_list.size()), q));
        if (pair.parametric)
            check(cc_study_area(study, pair.parametric, ref, h_list.data(),
                                static_cast<int>(h_list.size()), q));
        cc_study_sort_by_step(study);
        check(cc_study_write_csv(study, output.c_str()));
        std::printf("wrote %zu rows to %s\n", cc_study_size(study), output.c_str());
        cc_study_free(study);
    } else if (sweep->parsed()) {
        const int sweep_case = case_name == "line" ? CC_SWEEP_LINE : CC_SWEEP_TRIANGLE;
        if (steps < 0) steps = sweep_case == CC_SWEEP_LINE ? 101 : 46;
        if (output.empty()) output = "sweep.csv";
        cc_study* study = nullptr;
        check(cc_study_new(&study));
        if (backend == "implicit" || backend == "both")
            check(cc_study_sweep(study, sweep_case, steps, q, CC_BACKEND_IMPLICIT));
        if (backend == "parametric" || backend == "both")
            check(cc_study_sweep(study, sweep_case, steps, q, CC_BACKEND_PARAMETRIC));
        cc_study_sort_by_step(study);
        check(cc_study_write_csv(study, output.c_str()));
        std::printf("wrote %zu rows to %s\n", cc_study_size(study), output.c_str());
        cc_study_free(study);
    } else if (ela->parsed()) {
        const int bench_case =
            case_name == "plate-hole" ? CC_BENCH_PLATE_HOLE : CC_BENCH_SQUARE_PLATE;
        if (h_list.empty()) h_list = {0.125};
        if (output.empty()) output = "elasticity.csv";
        cc_bench* bench = nullptr;
        check(cc_bench_new(&bench));
        for (double h : h_list) {
            const int n = static_cast<int>(0.5 + 1.0 / h);
            if (backend == "implicit" || backend == "both")
                check(cc_bench_run(bench, bench_case, CC_BACKEND_IMPLICIT, p, n));
            if (backend == "parametric" || backend == "both")
                check(cc_bench_run(bench, bench_case, CC_BACKEND_PARAMETRIC, p, n));
        }
        check(cc_bench_write_csv(bench, output.c_str()));
        std::printf("wrote %zu rows to %s\n", cc_bench_size(bench), output.c_str());
        cc_bench_free(bench);
    } else if (points->parsed()) {
        if (backend == "both") {
            std::fprintf(stderr, "error: points needs a single backend\n");
            return CC_INVALID_ARGUMENT;
        }
        if (output.empty()) output = "points.csv";
        IfacePair pair = open_interfaces(case_name, spec_path, backend);
        cc_interface* iface = pair.implicit ? pair.implicit : pair.parametric;
        cc_quadrature* rule = nullptr;
        check(cc_domain_quadrature(iface, n_cells, q, &rule));
        check(cc_quadrature_write_csv(rule, output.c_str()));
        std::printf("wrote %zu nodes to %s (total weight %.17g)\n", cc_quadrature_size(rule),
                    output.c_str(), cc_quadrature_total_weight(rule));
        cc_quadrature_free(rule);
    }
    return 0;
}
