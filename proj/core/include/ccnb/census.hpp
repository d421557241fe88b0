#pragma once

#include <cstdint>
#include <vector>

#include "ccnb/classification.hpp"
#include "ccnb/config.hpp"
#include "ccnb/config_key.hpp"
#include "ccnb/morse_bounds.hpp"
#include "ccnb/solver.hpp"
#include "ccnb/spectral.hpp"

namespace ccnb {

struct CensusOptions {
    std::uint64_t seed = 0;
    long long starts_budget = 1'000'000; // random polish attempts
    int batch_size = 1024;               // merge granularity; affects results, keep fixed
    int window_per_record = 500;         // saturation window scaling
    long long window_min = 2000;
    int threads = 0; // 0: hardware concurrency; does not affect results
    NewtonOptions newton{};
    SpectralOptions spectral{};
    double key_tol = kKeyTol;
    double collinear_tol = kCollinearTol;
    double structured_transverse = 1e-2;
};

/// One found central configuration.
struct CensusRecord {
    Configuration configuration;
    ConfigKey key;
    IndexReport index_report;
    Classification classification;
    double residual_norm = 0.0;
    double lambda = 0.0;
};

struct ComparisonReport {
    bool binding = false;             // saturated and non-degenerate
    DivisionCheck morse_vs_bouquet;   // Morse polynomial vs bouquet row
    bool parity_ok = false;           // all non-collinear counts even
    DivisionCheck equivariant;        // R - Q = (1+t) S
    bool per_index_ge_mccord = false;
    std::vector<BigInt> mccord_margin;
    bool total_ge_first_palmore = false;
    BigInt first_palmore_margin;
    // Reported, never asserted: the ignored Palmore row is an open estimate.
    bool ignored_consistent = false;
    std::vector<BigInt> ignored_margin;
};

struct McMillanBartkyReport {
    bool applicable = false; // n == 4 only
    struct Entry {
        std::vector<int> order; // oriented cyclic ordering, starts at label 0
        bool satisfied = false;
    };
    std::vector<Entry> entries;
    bool all_satisfied = false;
};

struct CensusResult {
    MassVector masses;
    CensusOptions options; // effective values (thread count excluded from serialization)
    std::vector<CensusRecord> records;
    IndexPolynomial morse_poly;
    int collinear_count = 0;
    bool saturated = false;
    long long starts_used = 0; // every solver invocation, Moulton seeds included
    bool degenerate_found = false;
    ComparisonReport comparisons;
    McMillanBartkyReport mcmillan_bartky;

    int n() const { return masses.size(); }
};

/// Exhaustive-by-saturation search: Moulton seeding, structured starts,
/// seed-indexed random polishes, and explicit closure under reflection and
/// mass-preserving relabelings. The result is identical for any thread count.
CensusResult run_census(const MassVector& masses, const CensusOptions& opts = {});

/// Morse-theoretic consistency of a census against the four bound families.
ComparisonReport compare_with_bounds(const CensusResult& result);

/// Convex local minimum present for each of the six oriented cyclic orderings
/// (n = 4 only).
McMillanBartkyReport mcmillan_bartky_check(const CensusResult& result);

/// Per-index counts of the non-collinear records.
IndexPolynomial noncollinear_counts(const CensusResult& result);

/// Every non-collinear record has its mirror partner in the record set.
bool reflection_pairs_complete(const CensusResult& result);

/// Moulton count, reflection parity and both Morse-inequality checks.
bool hard_checks_pass(const CensusResult& result);

} // namespace ccnb
