#pragma once

#include <Eigen/Dense>
#include <string>

#include "bellsteer/bloch.hpp"
#include "bellsteer/sphere_quad.hpp"

namespace bellsteer {

enum class RadiusMethod { quadrature, axial_closed_form, werner_closed_form };

std::string to_string(RadiusMethod method);

// Critical radius R_T = 2*pi*N_T*|det T| together with the ensemble
// normalization N_T that produced it.
struct RadiusResult {
    double n_t = 0.0;
    double r_t = 0.0;
    RadiusMethod method = RadiusMethod::quadrature;
    double est_error = 0.0;  // grid-refinement delta; no rigorous bound claimed
};

// Density of the optimal local-hidden-state ensemble on Bob's Bloch sphere:
// N_T / [n^T T^-2 n]^2.  Even in n, so opposite points carry equal weight.
double ensemble_density(const CorrelationMatrix& t, double n_t, const Eigen::Vector3d& n);

// Normalization N_T = 1 / integral dS [n^T T^-2 n]^-2.  The integrand is
// smooth, so no pole rotation is needed.
double compute_NT(const CorrelationMatrix& t, const SphereGrid& grid);

// R_T by quadrature at the grid's orders; est_error is the delta against a
// half-order grid.
RadiusResult compute_RT(const CorrelationMatrix& t, const SphereGrid& grid);

// Dispatches to the Werner or axial closed form when the matrix is diagonal
// with the matching symmetry (entries compared by absolute value, tolerance
// 1e-12), otherwise falls back to quadrature.
RadiusResult compute_RT_auto(const CorrelationMatrix& t, const SphereGrid& grid);

// Closed form 1/(2p) for the Werner state T = diag(-p,-p,-p), 0 < p <= 1.
double rt_werner(double p);

// Closed form for the axially symmetric state T = diag(-s,-s,-t):
//   R_T = (1/|t|) / (1 + x^2 * q(x)),  x = s/t,
// where q = arctan(sqrt(x^2-1))/sqrt(x^2-1) for |x| > 1 and its real
// analytic continuation artanh(sqrt(1-x^2))/sqrt(1-x^2) for |x| < 1 (both
// share the series 1 - y/3 + y^2/5 - ... in y = x^2-1, used near |x| = 1).
double rt_axial(double s, double t);

}  // namespace bellsteer
