#ifndef CUTCELL_C_H
#define CUTCELL_C_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes returned by every function. */
enum {
    CC_OK = 0,
    CC_INVALID_ARGUMENT = 1,
    CC_DOMAIN_ERROR = 2,
    CC_DEGENERATE_INPUT = 3,
    CC_NONCONVERGENCE = 4,
    CC_NOT_A_GRAPH = 5,
    CC_TILING_FAILURE = 6,
    CC_SINGULAR_SYSTEM = 7,
    CC_PARSE_ERROR = 8,
    CC_INTERNAL_ERROR = 9
};

enum { CC_BACKEND_IMPLICIT = 0, CC_BACKEND_PARAMETRIC = 1 };
enum { CC_SWEEP_LINE = 0, CC_SWEEP_TRIANGLE = 1 };
enum { CC_BENCH_PLATE_HOLE = 0, CC_BENCH_SQUARE_PLATE = 1 };

/* Message describing the last failure on the calling thread. */
const char* cc_last_error(void);

/* ---- interface specifications ---- */

typedef struct cc_interface cc_interface;

/* Load a JSON interface-spec file (the spec fixes its own backend). */
int cc_interface_from_file(const char* path, cc_interface** out);
/* Built-in case ("circle", "semicircle", "line", "triangle", "plate-hole",
 * "square-plate") in the requested backend. */
int cc_interface_builtin(const char* name, int backend, cc_interface** out);
int cc_builtin_reference_area(const char* name, double* out);
/* CC_BACKEND_* tag of a loaded spec. */
int cc_interface_backend(const cc_interface* iface, int* out);
void cc_interface_free(cc_interface* iface);

/* ---- quadrature over the unit square with an n x n background mesh ---- */

typedef struct cc_quadrature cc_quadrature;

int cc_domain_quadrature(const cc_interface* iface, int n_cells, int q, cc_quadrature** out);
size_t cc_quadrature_size(const cc_quadrature* rule);
double cc_quadrature_total_weight(const cc_quadrature* rule);
int cc_quadrature_node(const cc_quadrature* rule, size_t idx, double* x, double* y, double* w,
                       int* cell_i, int* cell_j);
/* CSV `x,y,w,cell_i,cell_j`, 17 significant digits. */
int cc_quadrature_write_csv(const cc_quadrature* rule, const char* path);
void cc_quadrature_free(cc_quadrature* rule);

/* ---- area / robustness studies ---- */

typedef struct cc_study cc_study;

int cc_study_new(cc_study** out);
/* Append one record per h (unit-square mesh with round(1/h) cells per axis). */
int cc_study_area(cc_study* study, const cc_interface* iface, double reference_area,
                  const double* h_list, int n_h, int q);
/* Append one record per sweep step on the fixed h = 0.25 mesh. */
int cc_study_sweep(cc_study* study, int sweep_case, int steps, int q, int backend);
/* Stable sort by step index (interleaves backends per step). */
int cc_study_sort_by_step(cc_study* study);
size_t cc_study_size(const cc_study* study);
int cc_study_record(const cc_study* study, size_t idx, double* value, double* rel_error,
                    size_t* n_points);
/* CSV `step,h,backend,q,value,reference,rel_error,n_points`. */
int cc_study_write_csv(const cc_study* study, const char* path);
void cc_study_free(cc_study* study);

/* ---- elasticity benchmarks ---- */

typedef struct cc_bench cc_bench;

int cc_bench_new(cc_bench** out);
/* E = 1, nu = 0.3, Tx = 10, Ri = 0.25; one CSV row per call. */
int cc_bench_run(cc_bench* bench, int bench_case, int backend, int p, int n_cells);
size_t cc_bench_size(const cc_bench* bench);
int cc_bench_record(const cc_bench* bench, size_t idx, double* rel_l2_error,
                    double* cond_estimate);
/* CSV `case,backend,p,h,n_dofs,n_quad_points,rel_l2_error,cond_estimate`. */
int cc_bench_write_csv(const cc_bench* bench, const char* path);
void cc_bench_free(cc_bench* bench);

#ifdef __cplusplus
}
#endif

#endif /* CUTCELL_C_H */
