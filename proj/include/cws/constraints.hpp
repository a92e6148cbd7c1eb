#pragma once

#include <array>
#include <optional>
#include <vector>

#include "cws/cross_ratio.hpp"
#include "cws/metric.hpp"

namespace cws {

enum class Objective { Willmore, Area };

struct PointConstraint {
    int vertex;
    Eigen::Vector3d target;
};

struct ScaleConstraint {
    int vertex;
    double target; // prescribed logarithmic conformal scale factor
    ScaleMode mode = ScaleMode::Vertex;
};

struct FluxConstraint {
    int vertex;
    Eigen::Vector3d nu;
};

struct ConstraintSet {
    Objective objective = Objective::Willmore;

    bool conformal_active = true;
    ConformalClass conformal_target; // xi per edge
    // Per-boundary-component switch for the half-cross-ratio rows, indexed by
    // component label 1..b. Empty means all components on.
    std::vector<char> boundary_rows_on;

    std::vector<PointConstraint> points;
    // Pairs of vertices glued together (f_v = f_w), used to close strips into
    // nonorientable experiments while keeping the mesh itself oriented.
    std::vector<std::array<int, 2>> identifications;
    std::vector<ScaleConstraint> scales;
    DiscreteMetric reference_metric; // reference for scale constraints
    std::vector<FluxConstraint> fluxes;
    std::optional<double> area_target;
    std::optional<double> volume_target;
};

struct BalancingReport {
    bool checked = false;  // genus-0 closed pre-validation was performed
    bool deferred = false; // higher genus: homology term only measurable post-solve
    Eigen::Vector3d flux_sum = Eigen::Vector3d::Zero();
    double tolerance = 0;
};

// Genus-0 closed surfaces admit no unbalanced flux configuration; throws
// UnbalancedFlux when |sum nu| > 1e-10 * sum |nu|. Higher genus defers to the
// post-solve flux-class diagnostics.
BalancingReport balancing_check(const ConstraintSet& c, const SimplicialSurface& s);

// Structural validation (vertex ranges, point/flux exclusivity, reference
// metric presence, balancing pre-check).
void validate_constraints(const ConstraintSet& c, const SimplicialSurface& s);

} // namespace cws
