#pragma once

#include <cmath>
#include <vector>

#include <Eigen/Dense>

// Convex-hull membership by phase-1 simplex, independent of the half-space
// test in the library.  Feasibility of {lambda >= 0 : V lambda = p,
// sum lambda = 1} is decided by minimizing the sum of artificial variables
// with Bland's rule (no cycling).
namespace bellsteer::testing {

inline bool lp_feasible(Eigen::MatrixXd a, Eigen::VectorXd b, double tol = 1e-9) {
    const int m = static_cast<int>(a.rows());
    const int n = static_cast<int>(a.cols());
    for (int i = 0; i < m; ++i) {
        if (b[i] < 0.0) {
            a.row(i) *= -1.0;
            b[i] *= -1.0;
        }
    }

    Eigen::MatrixXd tab(m, n + m + 1);
    tab.leftCols(n) = a;
    tab.middleCols(n, m) = Eigen::MatrixXd::Identity(m, m);
    tab.col(n + m) = b;
    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i) basis[i] = n + i;

    Eigen::VectorXd cost = Eigen::VectorXd::Zero(n + m);
    cost.tail(m).setOnes();

    for (int iter = 0; iter < 10000; ++iter) {
        int enter = -1;
        for (int j = 0; j < n + m; ++j) {
            double z = 0.0;
            for (int i = 0; i < m; ++i) z += cost[basis[i]] * tab(i, j);
            if (cost[j] - z < -1e-12) {
                enter = j;  // Bland: smallest improving index
                break;
            }
        }
        if (enter < 0) break;

        int leave = -1;
        double best = 0.0;
        for (int i = 0; i < m; ++i) {
            if (tab(i, enter) <= 1e-12) continue;
            const double ratio = tab(i, n + m) / tab(i, enter);
            if (leave < 0 || ratio < best - 1e-15 ||
                (std::abs(ratio - best) <= 1e-15 && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave < 0) break;

        tab.row(leave) /= tab(leave, enter);
        for (int i = 0; i < m; ++i) {
            if (i != leave && tab(i, enter) != 0.0) tab.row(i) -= tab(i, enter) * tab.row(leave);
        }
        basis[leave] = enter;
    }

    double artificial_mass = 0.0;
    for (int i = 0; i < m; ++i) {
        if (basis[i] >= n) artificial_mass += tab(i, n + m);
    }
    return artificial_mass <= tol;
}

// Vertices: the six octahedron corners and the eight sign variants of the
// Barrett point (5/12, 5/12, 5/12).
inline bool lp_in_prior_hull(const Eigen::Vector3d& p) {
    std::vector<Eigen::Vector3d> v;
    for (int k = 0; k < 3; ++k) {
        Eigen::Vector3d e = Eigen::Vector3d::Zero();
        e[k] = 1.0;
        v.push_back(e);
        v.push_back(-e);
    }
    const double q = 5.0 / 12.0;
    for (int sx : {-1, 1})
        for (int sy : {-1, 1})
            for (int sz : {-1, 1}) v.push_back(Eigen::Vector3d(sx * q, sy * q, sz * q));

    Eigen::MatrixXd a(4, static_cast<int>(v.size()));
    for (int j = 0; j < static_cast<int>(v.size()); ++j) {
        a.block<3, 1>(0, j) = v[j];
        a(3, j) = 1.0;
    }
    Eigen::VectorXd b(4);
    b << p, 1.0;
    return lp_feasible(a, b);
}

}  // namespace bellsteer::testing
