#include "cws/constraints.hpp"

#include <set>
#include <string>

#include "cws/errors.hpp"

namespace cws {

BalancingReport balancing_check(const ConstraintSet& c, const SimplicialSurface& s) {
    BalancingReport rep;
    if (c.fluxes.empty()) return rep;
    if (!s.closed() || s.genus > 0) {
        rep.deferred = true;
        return rep;
    }
    double abs_sum = 0;
    for (const auto& fc : c.fluxes) {
        rep.flux_sum += fc.nu;
        abs_sum += fc.nu.norm();
    }
    rep.checked = true;
    rep.tolerance = 1e-10 * abs_sum;
    if (rep.flux_sum.norm() > rep.tolerance)
        throw UnbalancedFlux("flux constraints do not sum to zero on a genus-0 closed surface");
    return rep;
}

void validate_constraints(const ConstraintSet& c, const SimplicialSurface& s) {
    auto check_vertex = [&](int v, const char* what) {
        if (v < 0 || v >= s.nv())
            throw ValidationError(std::string(what) + " constraint references unknown vertex " +
                                  std::to_string(v));
    };
    std::set<int> point_vertices, flux_vertices;
    for (const auto& p : c.points) {
        check_vertex(p.vertex, "point");
        point_vertices.insert(p.vertex);
    }
    for (const auto& fc : c.fluxes) {
        check_vertex(fc.vertex, "flux");
        flux_vertices.insert(fc.vertex);
    }
    for (const auto& sc : c.scales) check_vertex(sc.vertex, "scale");
    for (const auto& id : c.identifications) {
        check_vertex(id[0], "identification");
        check_vertex(id[1], "identification");
        if (id[0] == id[1])
            throw ValidationError("identification glues vertex " + std::to_string(id[0]) +
                                  " to itself");
    }
    for (int v : point_vertices)
        if (flux_vertices.count(v))
            throw ValidationError("vertex " + std::to_string(v) +
                                  " is both point- and flux-constrained");
    if (!c.scales.empty() && c.reference_metric.size() != s.ne())
        throw ValidationError("scale constraints require a reference metric over all edges");
    if (c.volume_target && !s.closed())
        throw ValidationError("volume target requires a closed surface");
    if (c.conformal_active && c.conformal_target.xi.size() != s.ne())
        throw ValidationError("conformal target must provide one value per edge");
    balancing_check(c, s);
}

} // namespace cws
