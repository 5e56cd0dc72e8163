#pragma once

#include <functional>

#include "sdcurv/hyperbolic3.hpp"

// Finite-difference covariant calculus on upper-half-space H^3, used to
// cross-check closed-form differentials (custom-gauge validation, tests).
// Central differences with one Richardson level.

namespace sdcurv {

using ScalarField3 = std::function<double(const HPoint&)>;

// Frame components {z df/dx, z df/dy, z df/dz} of the differential.
Covector3 fd_frame_gradient(const ScalarField3& f, const HPoint& p, double h = 1e-4);

// Covariant Hessian in frame components: z^2 (d_i d_j f - Gamma^k_ij d_k f)
// with the exact upper-half-space Christoffel symbols.
SymForm3 fd_frame_hessian(const ScalarField3& f, const HPoint& p, double h = 1e-3);

}  // namespace sdcurv
