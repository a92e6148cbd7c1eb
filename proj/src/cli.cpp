#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "cws/diagnostics.hpp"
#include "cws/io.hpp"
#include "cws/measures.hpp"
#include "cws/qc_error.hpp"
#include "cws/willmore.hpp"

namespace cws {

namespace {

int error_exit_code(const Error& e) {
    if (dynamic_cast<const MaxIterations*>(&e) || dynamic_cast<const LineSearchFailure*>(&e) ||
        dynamic_cast<const SingularKKT*>(&e) || dynamic_cast<const SingularConfiguration*>(&e))
        return 1;
    return 2;
}

std::string or_none(const std::string& s) { return s.empty() ? "none" : s; }

void emit(const std::string& report, const std::string& file_path) {
    std::cout << report;
    if (!file_path.empty()) {
        std::ofstream out(file_path);
        if (!out) throw ParseError(file_path + ": cannot open file for writing");
        out << report;
    }
}

int cmd_solve(const std::string& scene_path) {
    const LoadedScene scene = read_scene(scene_path);
    const SimplicialSurface& s = scene.shape.surface;
    const SceneConfig& cfg = scene.config;

    SolverState st;
    std::string failure;
    try {
        st = newton_solve(scene.shape.f, s, scene.constraints, cfg.options);
    } catch (const MaxIterationsReached& e) {
        st = e.best;
        failure = e.what();
    }
    const ConstrainedProblem prob(s, scene.constraints);

    std::ostringstream rep;
    rep << "cws-report solve 1\n";
    rep << "scene " << cfg.path << "\n";
    rep << "mesh " << cfg.mesh_path << "\n";
    rep << "reference-metric " << or_none(cfg.reference_metric_path) << "\n";
    rep << "conformal-target "
        << (cfg.conformal_source == ConformalSource::FromMesh        ? "from-mesh"
            : cfg.conformal_source == ConformalSource::FromReference ? "from-reference"
                                                                     : cfg.conformal_path)
        << "\n";
    rep << "objective " << (cfg.objective == Objective::Willmore ? "willmore" : "area") << "\n";
    rep << "tol " << format_double(cfg.options.tol) << "\n";
    rep << "ctol " << format_double(cfg.options.ctol) << "\n";
    rep << "max-iters " << cfg.options.max_iters << "\n";
    for (const auto& p : cfg.points)
        rep << "point " << p.vertex << ' ' << format_double(p.target.x()) << ' '
            << format_double(p.target.y()) << ' ' << format_double(p.target.z()) << "\n";
    for (const auto& id : cfg.identifications)
        rep << "identify " << id[0] << ' ' << id[1] << "\n";
    for (const auto& sc : cfg.scales)
        rep << "scale " << sc.vertex << ' ' << format_double(sc.target) << ' '
            << (sc.mode == ScaleMode::Vertex ? "vertex" : "link") << "\n";
    for (const auto& fc : cfg.fluxes)
        rep << "flux-target " << fc.vertex << ' ' << format_double(fc.nu.x()) << ' '
            << format_double(fc.nu.y()) << ' ' << format_double(fc.nu.z()) << "\n";
    rep << "area-target " << (cfg.area_target ? format_double(*cfg.area_target) : "none") << "\n";
    rep << "volume-target " << (cfg.volume_target ? format_double(*cfg.volume_target) : "none")
        << "\n";

    rep << "converged " << (st.converged ? "yes" : "no") << "\n";
    rep << "iterations " << st.iterations << "\n";
    rep << "stationarity " << format_double(st.stationarity_norm) << "\n";
    rep << "feasibility " << format_double(st.feasibility_norm) << "\n";
    rep << "damping " << format_double(st.damping) << "\n";
    const WillmoreReport wr = willmore_energy(st.f, s);
    rep << "energy " << format_double(wr.total) << "\n";
    rep << "area " << format_double(total_area(st.f, s)) << "\n";
    rep << "volume " << (s.closed() ? format_double(enclosed_volume(st.f, s)) : "none") << "\n";
    const Eigen::Matrix3Xd nu = prob.point_multipliers(st.multipliers);
    Eigen::Vector3d nu_sum = Eigen::Vector3d::Zero();
    for (int p = 0; p < nu.cols(); ++p) {
        rep << "recovered-flux " << scene.constraints.points[p].vertex << ' '
            << format_double(nu(0, p)) << ' ' << format_double(nu(1, p)) << ' '
            << format_double(nu(2, p)) << "\n";
        nu_sum += nu.col(p);
    }
    if (nu.cols() > 0)
        rep << "recovered-flux-sum " << format_double(nu_sum.x()) << ' '
            << format_double(nu_sum.y()) << ' ' << format_double(nu_sum.z()) << "\n";
    rep << "output-mesh " << or_none(cfg.output_mesh) << "\n";
    rep << "output-qd " << or_none(cfg.output_qd) << "\n";

    if (!cfg.output_mesh.empty()) write_obj(cfg.output_mesh, st.f, s);
    if (!cfg.output_qd.empty())
        write_edge_table(cfg.output_qd, prob.multiplier_to_qd(st.multipliers), s);
    emit(rep.str(), cfg.output_report);
    if (!failure.empty()) throw MaxIterations(failure);
    return 0;
}

int cmd_energy(const std::string& mesh_path) {
    const Shape shape = read_obj(mesh_path);
    const WillmoreReport wr = willmore_energy(shape.f, shape.surface);
    int vmin = -1, vmax = -1;
    for (int i = 0; i < shape.surface.nv(); ++i) {
        if (!shape.surface.vertex_interior(i)) continue;
        if (vmin < 0 || wr.integrand(i) < wr.integrand(vmin)) vmin = i;
        if (vmax < 0 || wr.integrand(i) > wr.integrand(vmax)) vmax = i;
    }
    std::ostringstream rep;
    rep << "cws-report energy 1\n";
    rep << "mesh " << mesh_path << "\n";
    rep << "total " << format_double(wr.total) << "\n";
    if (vmin >= 0) {
        rep << "min-vertex " << vmin << ' ' << format_double(wr.integrand(vmin)) << "\n";
        rep << "max-vertex " << vmax << ' ' << format_double(wr.integrand(vmax)) << "\n";
    }
    rep << "degenerate-edges " << wr.degenerate_edges << "\n";
    emit(rep.str(), "");
    return 0;
}

int cmd_check(const std::string& mesh_path) {
    const Shape shape = read_obj(mesh_path);
    const SimplicialSurface& s = shape.surface;
    const ConservationReport cons = conservation_report(shape.f, s);

    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    PrimalForm0 phi(s.nv());
    DualForm1 alpha(s.ne());
    for (int i = 0; i < s.nv(); ++i) phi(i) = uni(rng);
    for (int e = 0; e < s.ne(); ++e) alpha(e) = uni(rng);
    const DualForm2 lhs = d_dual1(s, DualForm1(average(s, phi).cwiseProduct(alpha)));
    const DualForm2 rhs = phi.cwiseProduct(d_dual1(s, alpha)) +
                          average_adjoint(s, EdgeForm2(wedge(d_primal0(s, phi), alpha)));
    const double leibniz =
        (lhs - rhs).cwiseAbs().maxCoeff() / (lhs.cwiseAbs().maxCoeff() + 1.0);

    int kernel_dim = -1, kernel_expected = -1;
    if (s.ne() <= 600) {
        const Eigen::MatrixXd C(extended_cross_ratio_matrix(s));
        const Eigen::JacobiSVD<Eigen::MatrixXd> svd(C);
        const double cutoff = 1e-9 * svd.singularValues()(0);
        kernel_dim = static_cast<int>((svd.singularValues().array() < cutoff).count());
        kernel_expected = s.interior_vertex_count() + s.boundary_components;
    }

    const bool ok = cons.dtau <= 1e-9 && cons.dsigma <= 1e-9 && cons.drho <= 1e-9 &&
                    cons.dzeta <= 1e-9 && leibniz <= 1e-12 &&
                    (kernel_dim < 0 || kernel_dim == kernel_expected);

    std::ostringstream rep;
    rep << "cws-report check 1\n";
    rep << "mesh " << mesh_path << "\n";
    rep << "vertices-checked " << cons.vertices_checked << "\n";
    rep << "dtau-residual " << format_double(cons.dtau) << "\n";
    rep << "dsigma-residual " << format_double(cons.dsigma) << "\n";
    rep << "drho-residual " << format_double(cons.drho) << "\n";
    rep << "dzeta-residual " << format_double(cons.dzeta) << "\n";
    rep << "leibniz-residual " << format_double(leibniz) << "\n";
    if (kernel_dim >= 0)
        rep << "kernel-dimension " << kernel_dim << " expected " << kernel_expected << "\n";
    else
        rep << "kernel-dimension skipped\n";
    rep << "status " << (ok ? "ok" : "fail") << "\n";
    emit(rep.str(), "");
    return ok ? 0 : 1;
}

int cmd_qc_error(const std::string& mesh_path, const std::string& metric_path) {
    const Shape shape = read_obj(mesh_path);
    const DiscreteMetric lambda = read_edge_table(metric_path, shape.surface);
    validate_metric(shape.surface, lambda);
    const QcErrorReport qc = quasi_conformal_error(shape.f, lambda, shape.surface);
    std::ostringstream rep;
    rep << "cws-report qc-error 1\n";
    rep << "mesh " << mesh_path << "\n";
    rep << "metric " << metric_path << "\n";
    rep << "min " << format_double(qc.min) << "\n";
    rep << "mean " << format_double(qc.mean) << "\n";
    rep << "max " << format_double(qc.max) << "\n";
    rep << "hist-range " << format_double(qc.hist_lo) << ' ' << format_double(qc.hist_hi) << "\n";
    rep << "hist";
    for (const int b : qc.histogram) rep << ' ' << b;
    rep << "\n";
    emit(rep.str(), "");
    return 0;
}

int cmd_tube(const std::string& spec_path) {
    const TubeScene ts = read_tube_scene(spec_path);
    const TubeInvariants inv = tube_invariants(ts.spec);
    const TubeMesh mesh = generate_tube(ts.spec);
    std::ostringstream rep;
    rep << "cws-report tube 1\n";
    rep << "spec " << spec_path << "\n";
    rep << "samples " << ts.spec.centerline.cols() << "\n";
    rep << "resolution " << ts.spec.circumferential << ' ' << ts.spec.longitudinal << "\n";
    rep << "area " << format_double(inv.area) << "\n";
    rep << "volume " << format_double(inv.volume) << "\n";
    rep << "willmore " << format_double(inv.willmore) << "\n";
    rep << "re-tau " << format_double(inv.re_tau) << "\n";
    rep << "im-tau " << format_double(inv.im_tau) << "\n";
    rep << "monodromy " << format_double(inv.monodromy) << "\n";
    rep << "winding " << inv.winding << "\n";
    rep << "mesh-area " << format_double(total_area(mesh.f, mesh.surface)) << "\n";
    rep << "mesh-volume " << format_double(enclosed_volume(mesh.f, mesh.surface)) << "\n";
    rep << "output-mesh " << or_none(ts.output_mesh) << "\n";
    if (!ts.output_mesh.empty()) write_obj(ts.output_mesh, mesh.f, mesh.surface);
    emit(rep.str(), "");
    return 0;
}

int cmd_flux_report(const std::string& mesh_path, const std::string& qd_path,
                    const std::string& cycles_path) {
    const Shape shape = read_obj(mesh_path);
    const Eigen::VectorXd q = read_edge_table(qd_path, shape.surface);
    const auto cycles = read_cycles(cycles_path, shape.surface);
    const auto integrals = flux_class(shape.f, q, shape.surface, cycles);
    std::ostringstream rep;
    rep << "cws-report flux 1\n";
    rep << "mesh " << mesh_path << "\n";
    rep << "qd " << qd_path << "\n";
    rep << "cycles " << cycles_path << "\n";
    for (std::size_t k = 0; k < integrals.size(); ++k)
        rep << "cycle " << k << ' ' << format_double(integrals[k].x()) << ' '
            << format_double(integrals[k].y()) << ' ' << format_double(integrals[k].z()) << "\n";
    emit(rep.str(), "");
    return 0;
}

} // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"constrained Willmore surface toolkit"};
    app.require_subcommand(1);

    std::string scene_path, mesh_path, metric_path, qd_path, cycles_path, spec_path;
    auto* solve = app.add_subcommand("solve", "run a constrained solve from a scene file");
    solve->add_option("scene", scene_path, "scene file")->required();
    auto* energy = app.add_subcommand("energy", "evaluate the bending energy of a mesh");
    energy->add_option("mesh", mesh_path, "OBJ mesh")->required();
    auto* check = app.add_subcommand("check", "conservation and structure self-tests");
    check->add_option("mesh", mesh_path, "OBJ mesh")->required();
    auto* qc = app.add_subcommand("qc-error", "quasi-conformal error against a reference metric");
    qc->add_option("mesh", mesh_path, "OBJ mesh")->required();
    qc->add_option("metric", metric_path, "reference metric edge table")->required();
    auto* tube = app.add_subcommand("tube", "generate a tube mesh and report its invariants");
    tube->add_option("spec", spec_path, "tube spec file")->required();
    auto* flux = app.add_subcommand("flux-report", "integrate the flux class over dual cycles");
    flux->add_option("mesh", mesh_path, "OBJ mesh")->required();
    flux->add_option("qd", qd_path, "quadratic differential edge table")->required();
    flux->add_option("cycles", cycles_path, "dual cycle file")->required();

    try {
        app.parse(argc, argv);
        if (solve->parsed()) return cmd_solve(scene_path);
        if (energy->parsed()) return cmd_energy(mesh_path);
        if (check->parsed()) return cmd_check(mesh_path);
        if (qc->parsed()) return cmd_qc_error(mesh_path, metric_path);
        if (tube->parsed()) return cmd_tube(spec_path);
        if (flux->parsed()) return cmd_flux_report(mesh_path, qd_path, cycles_path);
        return 2;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return error_exit_code(e);
    }
}

} // namespace cws
