#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "cutcell/cutcell_c.h"

namespace {

std::string slurp(const char* path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("builtin interface handles and backend tags") {
    cc_interface* impl = nullptr;
    cc_interface* para = nullptr;
    REQUIRE(cc_interface_builtin("circle", CC_BACKEND_IMPLICIT, &impl) == CC_OK);
    REQUIRE(cc_interface_builtin("circle", CC_BACKEND_PARAMETRIC, &para) == CC_OK);
    int tag = -1;
    CHECK(cc_interface_backend(impl, &tag) == CC_OK);
    CHECK(tag == CC_BACKEND_IMPLICIT);
    CHECK(cc_interface_backend(para, &tag) == CC_OK);
    CHECK(tag == CC_BACKEND_PARAMETRIC);
    double area = 0.0;
    CHECK(cc_builtin_reference_area("circle", &area) == CC_OK);
    CHECK(area == doctest::Approx(M_PI * 0.04).epsilon(1e-14));
    cc_interface_free(impl);
    cc_interface_free(para);
}

TEST_CASE("bad builtin name fails with a message") {
    cc_interface* iface = nullptr;
    CHECK(cc_interface_builtin("banana", CC_BACKEND_IMPLICIT, &iface) != CC_OK);
    CHECK(iface == nullptr);
    CHECK(std::string(cc_last_error()).find("banana") != std::string::npos);
}

TEST_CASE("spec file loading") {
    const char* path = "capi_spec_tmp.json";
    {
        std::ofstream out(path);
        out << R"({"type": "implicit", "constraints": [
                {"kind": "circle", "cx": 0.5, "cy": 0.5, "r": 0.2, "sign": 1}]})";
    }
    cc_interface* iface = nullptr;
    REQUIRE(cc_interface_from_file(path, &iface) == CC_OK);
    int tag = -1;
    CHECK(cc_interface_backend(iface, &tag) == CC_OK);
    CHECK(tag == CC_BACKEND_IMPLICIT);
    cc_interface_free(iface);
    std::remove(path);

    CHECK(cc_interface_from_file("/nonexistent/spec.json", &iface) == CC_PARSE_ERROR);
}

TEST_CASE("domain quadrature through the C API") {
    cc_interface* iface = nullptr;
    REQUIRE(cc_interface_builtin("circle", CC_BACKEND_IMPLICIT, &iface) == CC_OK);
    cc_quadrature* rule = nullptr;
    REQUIRE(cc_domain_quadrature(iface, 4, 3, &rule) == CC_OK);
    CHECK(cc_quadrature_size(rule) == 36);
    CHECK(std::abs(cc_quadrature_total_weight(rule) - M_PI * 0.04) <= 2e-3);

    double x = 0, y = 0, w = 0;
    int ci = -1, cj = -1;
    REQUIRE(cc_quadrature_node(rule, 0, &x, &y, &w, &ci, &cj) == CC_OK);
    CHECK(w > 0.0);
    CHECK(x >= 0.25 * ci);
    CHECK(x <= 0.25 * (ci + 1));
    CHECK(y >= 0.25 * cj);
    CHECK(y <= 0.25 * (cj + 1));
    CHECK(cc_quadrature_node(rule, 99999, &x, &y, &w, &ci, &cj) != CC_OK);

    const char* csv = "capi_points_tmp.csv";
    REQUIRE(cc_quadrature_write_csv(rule, csv) == CC_OK);
    const std::string text = slurp(csv);
    CHECK(text.rfind("x,y,w,cell_i,cell_j\n", 0) == 0);
    std::remove(csv);

    cc_quadrature_free(rule);
    cc_interface_free(iface);
}

TEST_CASE("area study through the C API") {
    cc_interface* iface = nullptr;
    REQUIRE(cc_interface_builtin("line", CC_BACKEND_PARAMETRIC, &iface) == CC_OK);
    cc_study* study = nullptr;
    REQUIRE(cc_study_new(&study) == CC_OK);
    const double hs[2] = {0.25, 0.125};
    REQUIRE(cc_study_area(study, iface, 0.5, hs, 2, 3) == CC_OK);
    CHECK(cc_study_size(study) == 2);
    double value = 0, rel = 0;
    size_t npts = 0;
    REQUIRE(cc_study_record(study, 0, &value, &rel, &npts) == CC_OK);
    CHECK(value == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(rel <= 1e-12);
    CHECK(npts > 0);

    const char* csv = "capi_study_tmp.csv";
    REQUIRE(cc_study_write_csv(study, csv) == CC_OK);
    const std::string text = slurp(csv);
    CHECK(text.rfind("step,h,backend,q,value,reference,rel_error,n_points\n", 0) == 0);
    std::remove(csv);
    cc_study_free(study);
    cc_interface_free(iface);
}

TEST_CASE("sweep study sorts records by step") {
    cc_study* study = nullptr;
    REQUIRE(cc_study_new(&study) == CC_OK);
    REQUIRE(cc_study_sweep(study, CC_SWEEP_LINE, 5, 3, CC_BACKEND_IMPLICIT) == CC_OK);
    REQUIRE(cc_study_sweep(study, CC_SWEEP_LINE, 5, 3, CC_BACKEND_PARAMETRIC) == CC_OK);
    REQUIRE(cc_study_sort_by_step(study) == CC_OK);
    CHECK(cc_study_size(study) == 10);
    for (size_t k = 0; k < 10; ++k) {
        double value = 0, rel = 0;
        size_t npts = 0;
        REQUIRE(cc_study_record(study, k, &value, &rel, &npts) == CC_OK);
        CHECK(rel <= 1e-10);
    }
    cc_study_free(study);
}

TEST_CASE("elasticity benchmark through the C API") {
    cc_bench* bench = nullptr;
    REQUIRE(cc_bench_new(&bench) == CC_OK);
    REQUIRE(cc_bench_run(bench, CC_BENCH_SQUARE_PLATE, CC_BACKEND_IMPLICIT, 2, 4) == CC_OK);
    CHECK(cc_bench_size(bench) == 1);
    double err = 0, cond = 0;
    REQUIRE(cc_bench_record(bench, 0, &err, &cond) == CC_OK);
    CHECK(std::isfinite(err));
    CHECK(cond >= 1.0);

    const char* csv = "capi_bench_tmp.csv";
    REQUIRE(cc_bench_write_csv(bench, csv) == CC_OK);
    const std::string text = slurp(csv);
    CHECK(text.rfind("case,backend,p,h,n_dofs,n_quad_points,rel_l2_error,cond_estimate\n", 0) == 0);
    std::remove(csv);
    cc_bench_free(bench);
}

TEST_CASE("null arguments are rejected") {
    CHECK(cc_interface_builtin("circle", CC_BACKEND_IMPLICIT, nullptr) == CC_INVALID_ARGUMENT);
    cc_quadrature* rule = nullptr;
    CHECK(cc_domain_quadrature(nullptr, 4, 3, &rule) == CC_INVALID_ARGUMENT);
    CHECK(cc_study_area(nullptr, nullptr, 0.0, nullptr, 0, 3) == CC_INVALID_ARGUMENT);
}
