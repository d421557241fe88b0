#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ccnb/config.hpp"

namespace ccnb {

/// First-order central-configuration condition with the multiplier
/// eliminated: F_i = sum_{j != i} m_j (x_j - x_i)/r_ij^3 + (U/I)(x_i - ctr).
/// Zero exactly at a central configuration.
struct Residual {
    std::vector<Vec2> F;
    double lambda = 0.0; // U/I of the evaluated configuration, > 0
    double norm = 0.0;   // max over bodies of |F_i|; rotation invariant
};

Residual cc_residual(const Configuration& c);

struct NewtonOptions {
    double tol_residual = 1e-12;
    int max_iter = 80;
    double min_sep = 0.05;     // reject starts with bodies closer than this
    double collapse_tol = 1e-6; // abort when an iterate approaches collision
    int max_backtracks = 20;   // halvings in the damped line search
};

enum class SolveStatus {
    converged,
    start_too_close,
    collision,
    stalled,
    max_iterations,
};

std::string to_string(SolveStatus s);

struct SolveReport {
    bool converged = false;
    SolveStatus status = SolveStatus::max_iterations;
    int iterations = 0;
    double final_norm = 0.0;
    std::optional<Configuration> configuration; // normalized, present when converged
};

/// Damped Newton on the residual augmented with the gauge constraints
/// (center of mass, I = 1, no-rotation step condition). The start must be
/// normalized.
SolveReport newton_polish(const Configuration& c0, const NewtonOptions& opts = {});

namespace detail {
// Reusable scratch buffers so census workers avoid per-call allocation.
class PolishWorkspace {
public:
    PolishWorkspace();
    ~PolishWorkspace();
    PolishWorkspace(PolishWorkspace&&) noexcept;
    PolishWorkspace& operator=(PolishWorkspace&&) noexcept;

    struct Impl;
    Impl& impl() { return *impl_; }

private:
    std::unique_ptr<Impl> impl_;
};

SolveReport newton_polish(const Configuration& c0, const NewtonOptions& opts, PolishWorkspace& ws);
} // namespace detail

/// The unique collinear central configuration with the bodies in the given
/// left-to-right order, embedded on the horizontal axis and normalized.
/// Orderings that are full reversals of each other give the same
/// configuration; callers deduplicate (n!/2 classes).
Configuration moulton_solve(const MassVector& masses, const std::vector<int>& ordering);

/// All orderings with ordering.front() < ordering.back(): one representative
/// per reversal class, lexicographic. Size n!/2.
std::vector<std::vector<int>> moulton_orderings(int n);

/// n i.i.d. points in the unit disk, redrawn until the raw minimum pairwise
/// distance is >= 0.05, then normalized. Deterministic in the seed.
Configuration random_start(const MassVector& masses, std::uint64_t seed);

/// Deterministic structured starts: regular n-gon, (n-1)-gon plus center
/// (every choice of central body), and every Moulton line with an
/// alternating transverse perturbation.
std::vector<Configuration> structured_starts(const MassVector& masses, double transverse = 1e-2);

/// Stream mixer for seed-indexed deterministic start generation.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

} // namespace ccnb
