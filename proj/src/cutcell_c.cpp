#include "cutcell/cutcell_c.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "cutcell/elasticity.hpp"
#include "cutcell/integration.hpp"
#include "cutcell/specfile.hpp"

namespace {

thread_local std::string g_last_error;

int set_error(cutcell::ErrorCode code, const char* what) {
    g_last_error = what;
    return static_cast<int>(code);
}

template <typename F>
int guarded(F&& f) {
    try {
        f();
        return CC_OK;
    } catch (const cutcell::Error& e) {
        return set_error(e.code(), e.what());
    } catch (const std::exception& e) {
        return set_error(cutcell::ErrorCode::Internal, e.what());
    }
}

std::ofstream open_csv(const char* path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        cutcell::fail(cutcell::ErrorCode::InvalidArgument,
                      std::string("cannot open output file: ") + path);
    return out;
}

} // namespace

struct cc_interface {
    cutcell::InterfaceSpec spec;
};

struct cc_quadrature {
    cutcell::DomainQuadrature dq;
};

struct cc_study {
    std::vector<cutcell::StudyRecord> records;
};

struct cc_bench {
    std::vector<cutcell::BenchRecord> records;
};

extern "C" {

const char* cc_last_error(void) { return g_last_error.c_str(); }

int cc_interface_from_file(const char* path, cc_interface** out) {
    if (!path || !out) return set_error(cutcell::ErrorCode::InvalidArgument, "null argument");
    return guarded([&] { *out = new cc_interface{cutcell::load_interface_spec(path)}; });
}

int cc_interface_builtin(const char* name, int backend, cc_interface** out) {
    if (!name || !out) return set_error(cutcell::ErrorCode::InvalidArgument, "null argument");
    return guarded([&] {
        cutcell::BuiltinCase bc = cutcell::builtin_case(name);
        if (backend == CC_BACKEND_IMPLICIT)
            *out = new cc_interface{cutcell::InterfaceSpec{std::move(bc.implicit)}};
        else if (backend == CC_BACKEND_PARAMETRIC)
            *out = new cc_interface{cutcell::InterfaceSpec{std::move(bc.parametric)}};
        else
            cutcell::fail(cutcell::ErrorCode::InvalidArgument, "invalid backend id");
    });
}

int cc_builtin_reference_area(const char* name, double* out) {
    if (!name || !out) return set_error(cutcell::ErrorCode::InvalidArgument, "null argument");
    return guarded([&] { *out = cutcell::builtin_case(name).reference_area; });
}

int cc_interface_backend(const cc_interface* iface, int* out) {
    if (!iface || !out) return set_error(cutcell::ErrorCode::InvalidArgument, "null argument");
    *out = iface->spec.is_implicit() ? CC_BACKEND_IMPLICIT : CC_BACKEND_PARAMETRIC;
    return CC_OK;
}

void cc_interface_free(cc_interface* iface) { delete iface; }

int cc_domain_quadrature(const cc_interface* iface, int n_cells, int q, cc_quadrature** out) {
    if (!iface || !out) return set_error(cutcell::ErrorCode::InvalidArgument, "null argument");
    return guarded([&] {
        cutcell::BackgroundMesh mesh({0.0, 0.0}, 1.0, 1.0, n_cells, n_cells);
        *out = new cc_quadrature{cutcell::domain_quadrature(mesh, iface->spec, q)};
    });
}

size_t cc_quadrature_size(const cc_quadrature* rule) { return rule ? rule->dq.rule.size() : 0; }

double cc_quadrature_total_weight(const cc_quadrature* rule) {
    return rule ? rule->dq.rule.total_weight() : 0.0;
}

int cc_quadrature_node(const cc_quadrature* rule, size_t idx, double* x, double* y, double* w,
                       int* cell_i, int* cell_j) {
    if (!rule || idx >= rule->dq.rule.size())
        return set_error(cutcell::ErrorCode::InvalidArgument, "node index out of range");
    const cutcell::QuadNode& n = rule->dq.rule.nodes[idx];
    if (x) *x = n.p.x;
    if (y) *y = n.p.y;
    if (w) *w = n.w;
    if (cell_i || cell_j) {
        const auto& off = rule->dq.cell_offset;
        const auto it = std::upper_bound(off.begin(), off.end(), idx);
        const std::size_t cell = static_cast<std::size_t>(it - off.begin()) - 1;
        const int nx = rule->dq.cls.mesh.nx;
        if (cell_i) *cell_i = static_cast<int>(cell % nx);
        if (cell_j) *cell_j = static_cast<int>(cell / nx);
    }
    return CC_OK;
}

int cc_quadrature_write_csv(const cc_quadrature* rule, const char* path) {
    if (!rule || !path) return set_error(cutcell::ErrorCode::InvalidArgument, "null argument");
    return guarded([&] {
        std::ofstream out = open_csv(path);
        out << "x,y,w,cell_i,cell_j\n";
        char buf[160];
        for (std::size_t idx = 0; idx < rule->dq.rule.size(); ++idx) {
            double x, y, w;
            int ci, cj;
            cc_quadrature_node(rule, idx, &x, &y, &w, &ci, &cj);
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%d,%d\n", x, y, w, ci, cj);
            out << buf;
        }
    });
}

void cc_quadrature_free(cc_quadrature* rule) { delete rule; }

int cc_study_new(cc_study** out) {
    if (!out) return set_error(cutcell::ErrorCode::InvalidArgument, "null argument");
    *out = new cc_study{};
    return CC_OK;
}

int cc_study_area(cc_study* study, const cc_interface* iface, double reference_area,
                  const double* h_list, int n_h, int q) {
    if (!study || !iface || !h_list || n_h < 1)
        return set_error(cutcell::ErrorCode::InvalidArgument, "invalid study arguments");
    return guarded([&] {
        auto recs = cutcell::area_convergence_study(
            iface->spec, reference_area, std::vector<double>(h_list, h_list + n_h), q);
        study->records.insert(study->records.end(), recs.begin(), recs.end());
    });
}

int cc_study_sweep(cc_study* study, int sweep_case, int steps, int q, int backend) {
    if (!study) return set_error(cutcell::ErrorCode::InvalidArgument, "null argument");
    return guarded([&] {
        auto recs = cutcell::robustness_sweep(
            sweep_case == CC_SWEEP_LINE ? cutcell::SweepCase::Line : cutcell::SweepCase::Triangle,
            steps, q,
            backend == CC_BACKEND_IMPLICIT ? cutcell::Backend::Implicit
                                           : cutcell::Backend::Parametric);
        study->records.insert(study->records.end(), recs.begin(), recs.end());
    });
}

int cc_study_sort_by_step(cc_study* study) {
    if (!study) return set_error(cutcell::ErrorCode::InvalidArgument, "null argument");
    std::stable_sort(study->records.begin(), study->records.end(),
                     [](const auto& a, const auto& b) { return a.step < b.step; });
    return CC_OK;
}

size_t cc_study_size(const cc_study* study) { return study ? study->records.size() : 0; }

int cc_study_record(const cc_study* study, size_t idx, double* value, double* rel_error,
                    size_t* n_points) {
    if (!study || idx >= study->records.size())
        return set_error(cutcell::ErrorCode::InvalidArgument, "record index out of range");
    const auto& r = study->records[idx];
    if (value) *value = r.value;
    if (rel_error) *rel_error = r.rel_error;
    if (n_points) *n_points = r.n_points;
    return CC_OK;
}

int cc_study_write_csv(const cc_study* study, const char* path) {
    if (!study || !path) return set_error(cutcell::ErrorCode::InvalidArgument, "null argument");
    return guarded([&] {
        std::ofstream out = open_csv(path);
        cutcell::write_study_csv(out, study->records);
    });
}

void cc_study_free(cc_study* study) { delete study; }

int cc_bench_new(cc_bench** out) {
    if (!out) return set_error(cutcell::ErrorCode::InvalidArgument, "null argument");
    *out = new cc_bench{};
    return CC_OK;
}

int cc_bench_run(cc_bench* bench, int bench_case, int backend, int p, int n_cells) {
    if (!bench) return set_error(cutcell::ErrorCode::InvalidArgument, "null argument");
    return guarded([&] {
        bench->records.push_back(cutcell::run_benchmark(
            bench_case == CC_BENCH_PLATE_HOLE ? cutcell::BenchCase::PlateHole
                                              : cutcell::BenchCase::SquarePlate,
            backend == CC_BACKEND_IMPLICIT ? cutcell::Backend::Implicit
                                           : cutcell::Backend::Parametric,
            p, n_cells, cutcell::Material(1.0, 0.3), cutcell::PlateHoleCase{}));
    });
}

size_t cc_bench_size(const cc_bench* bench) { return bench ? bench->records.size() : 0; }

int cc_bench_record(const cc_bench* bench, size_t idx, double* rel_l2_error,
                    double* cond_estimate) {
    if (!bench || idx >= bench->records.size())
        return set_error(cutcell::ErrorCode::InvalidArgument, "record index out of range");
    if (rel_l2_error) *rel_l2_error = bench->records[idx].rel_l2_error;
    if (cond_estimate) *cond_estimate = bench->records[idx].cond_estimate;
    return CC_OK;
}

int cc_bench_write_csv(const cc_bench* bench, const char* path) {
    if (!bench || !path) return set_error(cutcell::ErrorCode::InvalidArgument, "null argument");
    return guarded([&] {
        std::ofstream out = open_csv(path);
        cutcell::write_benchmark_csv(out, bench->records);
    });
}

void cc_bench_free(cc_bench* bench) { delete bench; }

} // extern "C"
