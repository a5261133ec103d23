#pragma once

#include <optional>
#include <vector>

#include "holodyn/core.hpp"
#include "holodyn/torus.hpp"

namespace holodyn {

// Dynamical degrees d_0..d_k of a map on a k-dimensional space, with
// d_k the topological degree.
struct DegreeProfile {
    std::vector<double> degrees;
    double topological = 1.0;
    bool dominant = false;                 // d_t > d_p for every p < k
    std::optional<double> lyapunov_floor;  // (1/2) log(d_t / d_{k-1}), only when dominant

    // d_p^2 >= d_{p-1} d_{p+1} for all interior p (relative slack 1e-12).
    bool log_concave() const;
};

DegreeProfile profile_sphere(const SphereMap& f);
DegreeProfile profile_torus(const TorusMap& f);

// n-th roots ||A^n||^(1/n) (p = 1, spectral norm) or |det A^n|^(1/n) (p = 2)
// for n = 1..n_max.
std::vector<double> verify_degree_growth(const TorusMap& f, int p, int n_max);

}  // namespace holodyn
