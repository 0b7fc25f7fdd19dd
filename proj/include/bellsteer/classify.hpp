#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "bellsteer/bloch.hpp"
#include "bellsteer/critical_radius.hpp"
#include "bellsteer/sphere_quad.hpp"

namespace bellsteer {

// Certificate flags for a Bell-diagonal state diag(-s1,-s2,-s3).  The
// certificates are independent: separability implies unsteerability
// physically, but the flags record which test fired, so `separable` does
// not force the R_T-based flags.  No "steerable with POVMs" verdict exists
// here; the POVM response construction is known not to be optimal.
struct Classification {
    bool separable = false;
    bool pvm_unsteerable = false;        // R_T >= 1
    bool povm_unsteerable_new = false;   // R_T >= 6/5
    bool povm_unsteerable_prior = false; // hull of octahedron and Barrett points
    double r_t = 0.0;
    double margin = 0.0;  // distance of R_T from the nearest threshold
    RadiusMethod method = RadiusMethod::quadrature;
};

// Separability octahedron |s1| + |s2| + |s3| <= 1.
bool is_separable(double s1, double s2, double s3);

// Membership in conv(octahedron U {(+-5/12, +-5/12, +-5/12)}).  In the
// positive octant the binding facets are 5a+5b+2c <= 5 and its coordinate
// permutations (cross-checked against an LP membership oracle in the test
// suite); sign symmetry reduces the general case to absolute values.
bool in_prior_hull(double s1, double s2, double s3);

// Full classification of a physical diagonal correlation matrix.  R_T comes
// from the closed forms when the symmetry allows, else from quadrature at
// the grid's orders.
Classification classify_state(const CorrelationMatrix& t, const SphereGrid& grid);

enum class SurfaceMethod {
    scaling,    // one quadrature per ray plus the exact scaling law R_{kT} = R_T / k
    bisection,  // independent root bracketing in the radial scale (cross-check)
};

struct SurfacePoint {
    double dir_theta = 0.0;  // polar angle of the ray direction
    double dir_phi = 0.0;
    Eigen::Vector3d s = Eigen::Vector3d::Zero();  // point on the level surface
    double level = 0.0;
    bool absent = false;  // ray misses the level set inside the physical region
};

struct SurfaceResult {
    std::vector<SurfacePoint> points;
    // Triangles bounding the previously known unsteerable polytope in the
    // positive octant, for plotting next to the level surface.
    std::vector<std::array<Eigen::Vector3d, 3>> prior_hull_faces;
    std::array<Eigen::Vector3d, 3> separability_triangle;
};

// Points where R_T equals `level` along rays through the positive octant:
// a resolution x resolution polar-angle grid plus the main-diagonal ray
// (appended last, so the Werner boundary is always emitted).  Rays whose
// correlation matrix would be singular, or whose crossing lies outside the
// physical region, are marked absent.  Requires resolution >= 8 and a level
// in {1, 6/5}.
SurfaceResult surface_grid(int resolution, double level, const SphereGrid& grid,
                           SurfaceMethod method = SurfaceMethod::scaling);

}  // namespace bellsteer
