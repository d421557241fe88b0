#pragma once

#include <cstdint>
#include <vector>

#include "ccnb/config.hpp"

namespace ccnb {

struct SpectralOptions {
    double tol_eig = 1e-10;       // relative threshold for calling an eigenvalue negative
    double tol_degenerate = 1e-8; // relative threshold for the degeneracy flag
    double residual_gate = 1e-10; // required residual max-norm of the input
    std::uint64_t basis_seed = 0; // seed for the reduced-basis draw (0: standard basis)
};

/// Spectrum of the reduced Hessian (translations, rotation and scale
/// removed) in the mass metric. A local minimum has index 0.
struct IndexReport {
    int index = 0;
    std::vector<double> eigenvalues; // ascending, 2n-4 entries
    bool degenerate = false;
    double gap = 0.0; // min|eig| / max|eig|
};

/// Mass-orthonormal basis of the reduced tangent space: 2n-4 ambient
/// directions orthogonal (in the mass inner product) to both translations,
/// the rotation generator and the dilation. Requires a normalized c.
std::vector<std::vector<Vec2>> reduced_basis(const Configuration& c, std::uint64_t seed = 0);

struct ReducedHessian {
    int dim = 0;
    std::vector<double> h; // row-major dim x dim
    double at(int i, int j) const { return h[static_cast<std::size_t>(i * dim + j)]; }
};

/// Projection of H = hess(U) - lambda hess(I), lambda = -U/(2I), onto the
/// reduced tangent space. Throws not_critical_error when the residual of c
/// exceeds opts.residual_gate.
ReducedHessian reduced_hessian(const Configuration& c, const SpectralOptions& opts = {});

IndexReport morse_index(const Configuration& c, const SpectralOptions& opts = {});

/// Compares the analytic reduced quadratic form against second-order central
/// finite differences of U along renormalized curves in `directions` random
/// reduced directions; returns the max deviation relative to max(1, |q|).
double fd_validate(const Configuration& c, int directions, double step = 1e-4,
                   std::uint64_t seed = 1, const SpectralOptions& opts = {});

/// Same finite-difference sweep against a caller-supplied matrix; a wrong
/// Hessian (one corrupted entry) shows up as a large deviation.
double fd_validate_against(const ReducedHessian& hr, const Configuration& c, int directions,
                           double step = 1e-4, std::uint64_t seed = 1,
                           const SpectralOptions& opts = {});

} // namespace ccnb
