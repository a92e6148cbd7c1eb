#pragma once

#include "cws/forms.hpp"
#include "cws/surface.hpp"

namespace cws {

// A closed centerline with per-sample thickness. An explicitly repeated last
// sample (equal to the first) is accepted and dropped; a single thickness
// value broadcasts to all samples.
struct TubeSpec {
    Eigen::Matrix3Xd centerline;
    Eigen::VectorXd thickness;
    int circumferential = 16; // vertices per ring
    int longitudinal = 64;    // rings along the curve
};

struct TubeInvariants {
    double area = 0;     // 2 pi int a ds
    double volume = 0;   // pi int a^2 ds
    double willmore = 0; // (pi/2) int (1/a + a kappa^2 / 2) ds
    double re_tau = 0;   // total torsion Theta, winding included
    double im_tau = 0;   // int ds / a
    double monodromy = 0; // frame closing angle in (-pi, pi]
    int winding = 0;
};

struct TubeMesh {
    PrimalForm0V f;
    SimplicialSurface surface;
};

// Torus mesh of the thickened centerline on a rotation-minimizing frame; the
// closing twist is distributed evenly over the rings.
TubeMesh generate_tube(const TubeSpec& spec);

TubeInvariants tube_invariants(const TubeSpec& spec);

} // namespace cws
