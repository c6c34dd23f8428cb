#include "cutcell/integration.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "cutcell/quad_implicit.hpp"
#include "cutcell/quad_parametric.hpp"

namespace cutcell {

int CellClassification::count(CellStatus s) const {
    return static_cast<int>(std::count(status.begin(), status.end(), s));
}

namespace {

CellStatus classify_implicit(const ImplicitRegion& region, const Cell& cell) {
    bool any_straddles = false;
    for (const auto& c : region.constraints) {
        switch (constraint_status(c, cell)) {
        case ConstraintStatus::Negative: return CellStatus::Outside;
        case ConstraintStatus::Straddles: any_straddles = true; break;
        case ConstraintStatus::Positive: break;
        }
    }
    return any_straddles ? CellStatus::Cut : CellStatus::Inside;
}

} // namespace

CellClassification classify_cells(const BackgroundMesh& mesh, const InterfaceSpec& iface) {
    CellClassification out;
    out.mesh = mesh;
    out.status.resize(static_cast<std::size_t>(mesh.nx) * mesh.ny);
    if (iface.is_implicit()) {
        const ImplicitRegion& region = iface.implicit();
        for (int j = 0; j < mesh.ny; ++j)
            for (int i = 0; i < mesh.nx; ++i)
                out.status[static_cast<std::size_t>(j) * mesh.nx + i] =
                    classify_implicit(region, mesh.cell(i, j));
    } else {
        PreparedLoop loop(iface.parametric());
        for (int j = 0; j < mesh.ny; ++j) {
            for (int i = 0; i < mesh.nx; ++i) {
                const Cell cell = mesh.cell(i, j);
                CellStatus s;
                if (loop.cuts_cell(cell))
                    s = CellStatus::Cut;
                else
                    s = loop.contains(cell.center()) ? CellStatus::Inside : CellStatus::Outside;
                out.status[static_cast<std::size_t>(j) * mesh.nx + i] = s;
            }
        }
    }
    return out;
}

DomainQuadrature domain_quadrature(const BackgroundMesh& mesh, const InterfaceSpec& iface,
                                   int q) {
    if (q < 1) fail(ErrorCode::DomainError, "domain_quadrature: q must be >= 1");
    DomainQuadrature out;
    out.cls = classify_cells(mesh, iface);
    out.cell_offset.assign(static_cast<std::size_t>(mesh.nx) * mesh.ny + 1, 0);

    const ImplicitRegion* impl = iface.is_implicit() ? &iface.implicit() : nullptr;
    std::optional<PreparedLoop> loop;
    if (!impl) loop.emplace(iface.parametric());

    std::size_t k = 0;
    for (int j = 0; j < mesh.ny; ++j) {
        for (int i = 0; i < mesh.nx; ++i, ++k) {
            out.cell_offset[k] = out.rule.size();
            const Cell cell = mesh.cell(i, j);
            switch (out.cls.status[k]) {
            case CellStatus::Outside: break;
            case CellStatus::Inside: out.rule.append(tensor_rule(cell, q)); break;
            case CellStatus::Cut:
                if (impl)
                    out.rule.append(cell_quadrature_implicit(*impl, cell, q));
                else
                    out.rule.append(cell_quadrature_parametric(*loop, cell, q));
                break;
            }
        }
    }
    out.cell_offset.back() = out.rule.size();
    return out;
}

double integrate(const QuadratureRule& rule, const std::function<double(Point2)>& g) {
    double s = 0.0;
    for (const auto& n : rule.nodes) s += n.w * g(n.p);
    return s;
}

std::string backend_tag(const InterfaceSpec& iface) {
    return iface.is_implicit() ? "implicit" : "parametric";
}

namespace {

StudyRecord make_record(int step, double h, const InterfaceSpec& iface, int q, double value,
                        double reference, std::size_t n_points) {
    StudyRecord r;
    r.step = step;
    r.h = h;
    r.backend = backend_tag(iface);
    r.q = q;
    r.value = value;
    r.reference = reference;
    r.n_points = n_points;
    if (reference != 0.0) {
        r.rel_error = std::abs(value - reference) / std::abs(reference);
    } else {
        r.rel_error = std::abs(value);
        r.abs_fallback = true;
    }
    return r;
}

} // namespace

std::vector<StudyRecord> area_convergence_study(const InterfaceSpec& iface, double reference_area,
                                                const std::vector<double>& h_list, int q) {
    std::vector<StudyRecord> records;
    int step = 0;
    for (double h : h_list) {
        const int n = static_cast<int>(std::lround(1.0 / h));
        if (n < 1 || std::abs(n * h - 1.0) > 1e-12)
            fail(ErrorCode::InvalidArgument, "area_convergence_study: h must divide the domain");
        BackgroundMesh mesh({0.0, 0.0}, 1.0, 1.0, n, n);
        DomainQuadrature dq = domain_quadrature(mesh, iface, q);
        records.push_back(
            make_record(step++, h, iface, q, dq.rule.total_weight(), reference_area,
                        dq.rule.size()));
    }
    return records;
}

double sweep_parameter(SweepCase c, int step, int steps) {
    if (steps < 2) fail(ErrorCode::InvalidArgument, "sweep: steps must be >= 2");
    if (step < 0 || step >= steps) fail(ErrorCode::InvalidArgument, "sweep: step out of range");
    const double t = static_cast<double>(step) / (steps - 1);
    return c == SweepCase::Line ? 0.5 * t : (M_PI / 4.0) * t;
}

InterfaceSpec sweep_interface(SweepCase c, int step, int steps, Backend backend) {
    const double a = sweep_parameter(c, step, steps);
    if (c == SweepCase::Line) {
        const double xl = 0.5 + a;
        if (backend == Backend::Implicit) {
            // Retained region left of the line: f = xl - x.
            HalfPlaneConstraint hp{1.0, 0.0, xl, 1.0};
            return InterfaceSpec{ImplicitRegion({ImplicitConstraint(hp)})};
        }
        std::vector<NurbsCurve> loop;
        loop.push_back(make_line_curve({0.0, 0.0}, {xl, 0.0}));
        loop.push_back(make_line_curve({xl, 0.0}, {xl, 1.0}));
        loop.push_back(make_line_curve({xl, 1.0}, {0.0, 1.0}));
        loop.push_back(make_line_curve({0.0, 1.0}, {0.0, 0.0}));
        return InterfaceSpec{ParametricRegion(std::move(loop))};
    }
    const Point2 v0{0.0, 0.0}, v1{0.5, 0.0};
    const Point2 v2{0.5 * std::sin(a), 0.5 * std::cos(a)};
    if (backend == Backend::Implicit) {
        return InterfaceSpec{ImplicitRegion(
            {halfplane_left_of(v0, v1), halfplane_left_of(v1, v2), halfplane_left_of(v2, v0)})};
    }
    std::vector<NurbsCurve> loop;
    loop.push_back(make_line_curve(v0, v1));
    loop.push_back(make_line_curve(v1, v2));
    loop.push_back(make_line_curve(v2, v0));
    return InterfaceSpec{ParametricRegion(std::move(loop))};
}

double sweep_reference_area(SweepCase c, int step, int steps) {
    const double a = sweep_parameter(c, step, steps);
    return c == SweepCase::Line ? 0.5 + a : 0.125 * std::cos(a);
}

std::vector<StudyRecord> robustness_sweep(SweepCase c, int steps, int q, Backend backend) {
    BackgroundMesh mesh({0.0, 0.0}, 1.0, 1.0, 4, 4);
    std::vector<StudyRecord> records;
    for (int step = 0; step < steps; ++step) {
        try {
            InterfaceSpec iface = sweep_interface(c, step, steps, backend);
            DomainQuadrature dq = domain_quadrature(mesh, iface, q);
            records.push_back(make_record(step, sweep_parameter(c, step, steps), iface, q,
                                          dq.rule.total_weight(),
                                          sweep_reference_area(c, step, steps), dq.rule.size()));
        } catch (const Error& e) {
            fail(e.code(), "robustness_sweep: step " + std::to_string(step) +
                               " failed: " + e.what());
        }
    }
    return records;
}

void write_study_csv(std::ostream& os, const std::vector<StudyRecord>& records) {
    os << "step,h,backend,q,value,reference,rel_error,n_points\n";
    char buf[256];
    for (const auto& r : records) {
        std::snprintf(buf, sizeof(buf), "%d,%.17g,%s,%d,%.17g,%.17g,%.17g,%zu\n", r.step, r.h,
                      r.backend.c_str(), r.q, r.value, r.reference, r.rel_error, r.n_points);
        os << buf;
    }
}

} // namespace cutcell
