#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "cutcell/geometry.hpp"
#include "cutcell/quadrature.hpp"

namespace cutcell {

enum class CellStatus { Inside, Outside, Cut };

struct CellClassification {
    BackgroundMesh mesh;
    std::vector<CellStatus> status; // index j * nx + i (row-major over rows j)

    CellStatus at(int i, int j) const { return status[static_cast<std::size_t>(j) * mesh.nx + i]; }
    int count(CellStatus s) const;
};

// Certified classification: no cell touched by the interface is marked
// Inside or Outside. A constraint grazing a cell face (identically zero on
// the face, positive inside) still certifies the cell.
CellClassification classify_cells(const BackgroundMesh& mesh, const InterfaceSpec& iface);

struct DomainQuadrature {
    QuadratureRule rule;
    CellClassification cls;
    // Prefix offsets into rule.nodes per cell (same indexing as status),
    // size nx*ny + 1; cell k owns nodes [cell_offset[k], cell_offset[k+1]).
    std::vector<std::size_t> cell_offset;
};

// Inside cells carry mapped tensor rules, Cut cells dispatch to the matching
// backend, Outside cells contribute nothing. Node order is cell-major and
// deterministic.
DomainQuadrature domain_quadrature(const BackgroundMesh& mesh, const InterfaceSpec& iface, int q);

double integrate(const QuadratureRule& rule, const std::function<double(Point2)>& g);

struct StudyRecord {
    int step = 0;
    double h = 0.0; // cell size, or the sweep parameter for robustness runs
    std::string backend;
    int q = 0;
    double value = 0.0;
    double reference = 0.0;
    double rel_error = 0.0;
    bool abs_fallback = false; // rel_error is absolute (reference was zero)
    std::size_t n_points = 0;
};

// Backend tag of an interface spec: "implicit" or "parametric".
std::string backend_tag(const InterfaceSpec& iface);

// One record per h (unit-square domain, nx = ny = round(1/h)).
std::vector<StudyRecord> area_convergence_study(const InterfaceSpec& iface, double reference_area,
                                                const std::vector<double>& h_list, int q);

enum class SweepCase { Line, Triangle };
enum class Backend { Implicit, Parametric };

// Sweep geometries on the fixed h=0.25 mesh. Line: vertical interface at
// x = 0.5 + d, retained region to its left, d uniform over [0, 0.5] (the
// endpoints land on mesh lines on purpose). Triangle: (0,0), (0.5,0) fixed,
// third vertex (0.5 sin a, 0.5 cos a), a uniform over [0, 45 degrees].
InterfaceSpec sweep_interface(SweepCase c, int step, int steps, Backend backend);
double sweep_reference_area(SweepCase c, int step, int steps);
double sweep_parameter(SweepCase c, int step, int steps);

std::vector<StudyRecord> robustness_sweep(SweepCase c, int steps, int q, Backend backend);

// Header `step,h,backend,q,value,reference,rel_error,n_points`; numbers with
// 17 significant digits.
void write_study_csv(std::ostream& os, const std::vector<StudyRecord>& records);

} // namespace cutcell
