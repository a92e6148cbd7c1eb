#include <doctest.h>

#include <random>

#include <Eigen/SVD>

#include "cws/cross_ratio.hpp"
#include "cws/metric.hpp"
#include "cws/shapes.hpp"

using namespace cws;

namespace {

std::mt19937 rng(99);

Shape jittered(Shape m, double amp) {
    std::uniform_real_distribution<double> uni(-amp, amp);
    for (int v = 0; v < m.surface.nv(); ++v)
        for (int d = 0; d < 3; ++d) m.f(d, v) += uni(rng);
    return m;
}

int numerical_kernel_dim(const Eigen::SparseMatrix<double>& C) {
    const Eigen::MatrixXd dense(C);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(dense);
    const double cutoff = 1e-9 * svd.singularValues()(0);
    int rank = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > cutoff) ++rank;
    return static_cast<int>(dense.cols()) - rank;
}

} // namespace

TEST_CASE("extended operator kernel dimension is interior vertices plus components") {
    for (int trial = 0; trial < 5; ++trial) {
        const Shape disk = jittered(disk_mesh(8 + trial, 3), 0.02);
        const Shape ann = jittered(annulus_mesh(9 + trial, 2, 0.4, 1.0), 0.02);
        for (const Shape* m : {&disk, &ann}) {
            const SimplicialSurface& s = m->surface;
            REQUIRE(s.ne() <= 300);
            const int dim = numerical_kernel_dim(extended_cross_ratio_matrix(s));
            CHECK(dim == s.interior_vertex_count() + s.boundary_components);
        }
    }
}

TEST_CASE("closed surface kernel dimension equals the vertex count") {
    const Shape m = icosphere(1);
    CHECK(numerical_kernel_dim(extended_cross_ratio_matrix(m.surface)) == m.surface.nv());
}

TEST_CASE("rescaling preserves the class iff u is locally constant on the boundary") {
    const Shape m = jittered(annulus_mesh(10, 3, 0.5, 1.2), 0.01);
    const SimplicialSurface& s = m.surface;
    const DiscreteMetric lambda = induced_metric(m.f, s);
    const Eigen::SparseMatrix<double> C = extended_cross_ratio_matrix(s);

    std::normal_distribution<double> nd;
    PrimalForm0 u(s.nv());
    for (int v = 0; v < s.nv(); ++v) u(v) = nd(rng);
    // constant per boundary component, free in the interior
    PrimalForm0 u_lc = u;
    for (int v = 0; v < s.nv(); ++v)
        if (s.vertex_on_boundary[v]) u_lc(v) = 0.3 * s.boundary_component[v];

    const Eigen::VectorXd preserved = C * conformal_rescale(s, lambda, 0.05 * u_lc) - C * lambda;
    CHECK(preserved.lpNorm<Eigen::Infinity>() < 1e-12);

    // a generic boundary scale factor moves some half cross ratio row
    const Eigen::VectorXd broken = C * conformal_rescale(s, lambda, 0.05 * u) - C * lambda;
    CHECK(broken.lpNorm<Eigen::Infinity>() > 1e-6);

    const PrimalForm0 recovered =
        scale_factors(s, conformal_rescale(s, lambda, 0.05 * u), lambda);
    CHECK((recovered - 0.05 * u).lpNorm<Eigen::Infinity>() < 1e-12);
}

TEST_CASE("interior row application matches the assembled matrix") {
    const Shape m = jittered(uv_sphere(8, 5), 0.02);
    const SimplicialSurface& s = m.surface;
    std::normal_distribution<double> nd;
    Eigen::VectorXd h(s.ne());
    for (int e = 0; e < s.ne(); ++e) h(e) = nd(rng);
    const Eigen::VectorXd lhs = interior_cross_ratio_apply(s, h);
    const Eigen::VectorXd rhs = extended_cross_ratio_matrix(s) * h;
    CHECK((lhs - rhs).lpNorm<Eigen::Infinity>() < 1e-12);
}

TEST_CASE("multiplier image satisfies the quadratic differential vertex sums") {
    std::normal_distribution<double> nd;
    for (const Shape& m : {icosphere(1), jittered(disk_mesh(10, 3), 0.02),
                           jittered(annulus_mesh(8, 2, 0.5, 1.0), 0.02)}) {
        const SimplicialSurface& s = m.surface;
        Eigen::VectorXd y(s.ne());
        for (int e = 0; e < s.ne(); ++e) y(e) = nd(rng);
        const Eigen::VectorXd q = extended_cross_ratio_matrix(s).transpose() * y;

        for (int v = 0; v < s.nv(); ++v) {
            if (!s.vertex_interior(v)) continue;
            double sum = 0;
            for (int e : s.vertex_edges[v]) sum += q(e);
            CHECK(std::abs(sum) < 1e-12);
        }
        std::vector<double> comp_sum(s.boundary_components + 1, 0.0);
        for (int v = 0; v < s.nv(); ++v) {
            if (s.vertex_interior(v)) continue;
            for (int e : s.vertex_edges[v]) comp_sum[s.boundary_component[v]] += q(e);
        }
        for (int b = 1; b <= s.boundary_components; ++b) CHECK(std::abs(comp_sum[b]) < 1e-12);
    }
}

TEST_CASE("scale rows recover the prescribed factor") {
    const Shape m = jittered(icosphere(1), 0.02);
    const SimplicialSurface& s = m.surface;
    const DiscreteMetric lambda = induced_metric(m.f, s);
    std::normal_distribution<double> nd;
    PrimalForm0 u(s.nv());
    for (int v = 0; v < s.nv(); ++v) u(v) = 0.1 * nd(rng);
    const DiscreteMetric rescaled = conformal_rescale(s, lambda, u);

    for (const ScaleMode mode : {ScaleMode::Vertex, ScaleMode::Link}) {
        const ScaleConstraintRows rows = scale_rows({3, 7}, mode, s);
        const Eigen::VectorXd got = rows.U * (rescaled - lambda);
        REQUIRE(static_cast<int>(rows.row_vertex.size()) == got.size());
        for (int r = 0; r < got.size(); ++r)
            CHECK(got(r) == doctest::Approx(u(rows.row_vertex[r])).epsilon(1e-12));
    }
}
