#include "ccnb/census.hpp"

#include <algorithm>
#include <deque>
#include <thread>

namespace ccnb {

namespace {

int effective_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(i) for i in [0, count) on `threads` workers, contiguous chunks.
// Work per index must be independent; results land in index-addressed slots,
// so scheduling cannot influence the outcome.
template <typename Fn>
void parallel_for(int count, int threads, Fn&& fn) {
    if (count <= 0) return;
    threads = std::min(threads, count);
    if (threads <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
        const int lo = static_cast<int>(static_cast<long long>(count) * t / threads);
        const int hi = static_cast<int>(static_cast<long long>(count) * (t + 1) / threads);
        pool.emplace_back([lo, hi, &fn] {
            for (int i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

struct Attempt {
    bool converged = false;
    std::optional<Configuration> configuration;
    double final_norm = 0.0;
    double lambda = 0.0;
};

class Builder {
public:
    Builder(const MassVector& masses, const CensusOptions& opts)
        : masses_(masses), opts_(opts), threads_(effective_threads(opts.threads)) {
        relabelings_ = mass_preserving_permutations(masses);
        trusted_newton_ = opts_.newton;
        trusted_newton_.min_sep = 0.0; // mirror/relabel/structured starts are already valid shapes
    }

    CensusResult run() {
        seed_moulton();
        polish_and_merge(structured_starts(masses_, opts_.structured_transverse), trusted_newton_);
        drain_closure();
        random_phase();
        return finalize();
    }

private:
    struct Internal {
        Configuration configuration;
        ConfigKey key;
        IndexReport index_report;
        Classification classification;
        double residual_norm = 0.0;
        double lambda = 0.0;
    };

    void seed_moulton() {
        const auto orderings = moulton_orderings(masses_.size());
        std::vector<Attempt> results(orderings.size());
        parallel_for(static_cast<int>(orderings.size()), threads_, [&](int i) {
            Attempt& a = results[static_cast<std::size_t>(i)];
            try {
                Configuration c = moulton_solve(masses_, orderings[static_cast<std::size_t>(i)]);
                const Residual r = cc_residual(c);
                a.converged = r.norm < opts_.newton.tol_residual * 10.0;
                a.final_norm = r.norm;
                a.lambda = r.lambda;
                a.configuration = std::move(c);
            } catch (const error&) {
                a.converged = false;
            }
        });
        for (auto& a : results) {
            ++starts_used_;
            if (!a.converged) continue; // non-convergence here is a solver bug; surfaces as a bad Moulton count
            insert(*a.configuration, a.final_norm, a.lambda);
        }
    }

    // Polishes a deterministic list of starts and merges in list order.
    void polish_and_merge(const std::vector<Configuration>& starts, const NewtonOptions& newton) {
        if (starts.empty()) return;
        std::vector<Attempt> results(starts.size());
        parallel_for(static_cast<int>(starts.size()), threads_, [&](int i) {
            thread_local detail::PolishWorkspace workspace;
            Attempt& a = results[static_cast<std::size_t>(i)];
            const SolveReport rep = detail::newton_polish(starts[static_cast<std::size_t>(i)], newton, workspace);
            a.converged = rep.converged;
            if (rep.converged) {
                a.configuration = rep.configuration;
                a.final_norm = rep.final_norm;
                a.lambda = cc_residual(*rep.configuration).lambda;
            }
        });
        for (auto& a : results) {
            ++starts_used_;
            if (a.converged) insert(*a.configuration, a.final_norm, a.lambda);
        }
    }

    // Inserts a polished configuration if its key is new; enqueues the
    // reflection/relabeling closure for new non-collinear records.
    bool insert(const Configuration& c, double residual_norm, double lambda) {
        const ConfigKey key = config_key(c, opts_.collinear_tol);
        for (const auto& r : records_) {
            if (keys_equal(r.key, key, opts_.key_tol)) return false;
        }
        Internal rec{c, key, morse_index(c, opts_.spectral), classify(c, opts_.collinear_tol),
                     residual_norm, lambda};
        const bool noncollinear = !rec.classification.collinear;
        records_.push_back(std::move(rec));
        no_new_counter_ = 0;
        if (noncollinear) {
            closure_queue_.push_back(reflect(c));
            for (std::size_t p = 1; p < relabelings_.size(); ++p) {
                closure_queue_.push_back(relabel(c, relabelings_[p]));
            }
        }
        return true;
    }

    void drain_closure() {
        while (!closure_queue_.empty()) {
            std::vector<Configuration> batch(closure_queue_.begin(), closure_queue_.end());
            closure_queue_.clear();
            polish_and_merge(batch, trusted_newton_);
        }
    }

    void random_phase() {
        long long used_random = 0;
        while (used_random < opts_.starts_budget) {
            const int batch = static_cast<int>(
                std::min<long long>(opts_.batch_size, opts_.starts_budget - used_random));
            std::vector<Attempt> results(static_cast<std::size_t>(batch));
            parallel_for(batch, threads_, [&](int i) {
                thread_local detail::PolishWorkspace workspace;
                Attempt& a = results[static_cast<std::size_t>(i)];
                try {
                    const Configuration start =
                        random_start(masses_, derive_seed(opts_.seed, static_cast<std::uint64_t>(used_random + i)));
                    const SolveReport rep = detail::newton_polish(start, opts_.newton, workspace);
                    a.converged = rep.converged;
                    if (rep.converged) {
                        a.configuration = rep.configuration;
                        a.final_norm = rep.final_norm;
                        a.lambda = cc_residual(*rep.configuration).lambda;
                    }
                } catch (const error&) {
                    a.converged = false;
                }
            });
            for (auto& a : results) {
                ++starts_used_;
                if (a.converged) {
                    const bool fresh = insert(*a.configuration, a.final_norm, a.lambda);
                    if (!fresh) ++no_new_counter_;
                }
            }
            used_random += batch;
            // Closure inserts reset the counter, so saturation is decided only
            // with the queue drained.
            drain_closure();
            const long long window = std::max<long long>(
                opts_.window_min,
                static_cast<long long>(opts_.window_per_record) * static_cast<long long>(records_.size()));
            if (no_new_counter_ >= window) {
                saturated_ = true;
                break;
            }
        }
    }

    CensusResult finalize() {
        // Canonical record order: index, then orientation, then distances.
        std::vector<int> order(records_.size());
        for (std::size_t i = 0; i < records_.size(); ++i) order[i] = static_cast<int>(i);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            const Internal& ra = records_[static_cast<std::size_t>(a)];
            const Internal& rb = records_[static_cast<std::size_t>(b)];
            if (ra.index_report.index != rb.index_report.index) {
                return ra.index_report.index < rb.index_report.index;
            }
            return key_less(ra.key, rb.key);
        });

        CensusResult out{masses_, opts_, {}, IndexPolynomial::zero(), 0, saturated_,
                         starts_used_, false, {}, {}};
        out.records.reserve(records_.size());
        int max_index = masses_.size() - 2;
        for (int idx : order) {
            Internal& r = records_[static_cast<std::size_t>(idx)];
            max_index = std::max(max_index, r.index_report.index);
            out.degenerate_found = out.degenerate_found || r.index_report.degenerate;
            if (r.classification.collinear) ++out.collinear_count;
            out.records.push_back(CensusRecord{std::move(r.configuration), std::move(r.key),
                                               std::move(r.index_report), std::move(r.classification),
                                               r.residual_norm, r.lambda});
        }
        std::vector<BigInt> counts(static_cast<std::size_t>(max_index + 1), BigInt(0));
        for (const auto& r : out.records) {
            counts[static_cast<std::size_t>(r.index_report.index)] += 1;
        }
        out.morse_poly = IndexPolynomial(std::move(counts));
        out.comparisons = compare_with_bounds(out);
        out.mcmillan_bartky = mcmillan_bartky_check(out);
        return out;
    }

    const MassVector masses_;
    const CensusOptions opts_;
    const int threads_;
    NewtonOptions trusted_newton_;
    std::vector<std::vector<int>> relabelings_;
    std::vector<Internal> records_;
    std::deque<Configuration> closure_queue_;
    long long starts_used_ = 0;
    long long no_new_counter_ = 0;
    bool saturated_ = false;
};

} // namespace

CensusResult run_census(const MassVector& masses, const CensusOptions& opts) {
    if (masses.size() < 3 || masses.size() > 6) {
        throw domain_error("run_census: n must be in 3..6 (desk scale)");
    }
    Builder b(masses, opts);
    return b.run();
}

IndexPolynomial noncollinear_counts(const CensusResult& result) {
    const int n = result.n();
    int max_index = n - 2;
    for (const auto& r : result.records) max_index = std::max(max_index, r.index_report.index);
    std::vector<BigInt> counts(static_cast<std::size_t>(max_index + 1), BigInt(0));
    for (const auto& r : result.records) {
        if (!r.classification.collinear) counts[static_cast<std::size_t>(r.index_report.index)] += 1;
    }
    return IndexPolynomial(std::move(counts));
}

ComparisonReport compare_with_bounds(const CensusResult& result) {
    const int n = result.n();
    ComparisonReport rep;
    rep.binding = result.saturated && !result.degenerate_found;
    rep.morse_vs_bouquet = morse_inequality_check(result.morse_poly, bouquet_poly(n));
    try {
        rep.equivariant = equivariant_morse_check(noncollinear_counts(result), n);
        rep.parity_ok = true;
    } catch (const parity_error&) {
        rep.parity_ok = false;
        rep.equivariant = DivisionCheck{false, std::nullopt};
    }

    const IndexPolynomial mc = mccord_poly(n);
    rep.per_index_ge_mccord = true;
    for (int k = 0; k <= n - 2; ++k) {
        const BigInt margin = result.morse_poly.at(k) - mc.at(k);
        rep.mccord_margin.push_back(margin);
        if (margin < 0) rep.per_index_ge_mccord = false;
    }
    rep.first_palmore_margin = result.morse_poly.total() - first_palmore_poly(n).total();
    rep.total_ge_first_palmore = rep.first_palmore_margin >= 0;

    const IndexPolynomial ig = ignored_palmore_poly(n);
    rep.ignored_consistent = true;
    for (int k = 0; k <= n - 2; ++k) {
        const BigInt margin = result.morse_poly.at(k) - ig.at(k);
        rep.ignored_margin.push_back(margin);
        if (margin < 0) rep.ignored_consistent = false;
    }
    return rep;
}

McMillanBartkyReport mcmillan_bartky_check(const CensusResult& result) {
    McMillanBartkyReport rep;
    rep.applicable = result.n() == 4;
    if (!rep.applicable) return rep;
    rep.all_satisfied = true;
    for (const auto& order : oriented_cyclic_orderings4()) {
        McMillanBartkyReport::Entry e;
        e.order = order;
        for (const auto& r : result.records) {
            if (r.index_report.index != 0) continue;
            if (!r.classification.convex.value_or(false)) continue;
            if (r.classification.cyclic_order && *r.classification.cyclic_order == order) {
                e.satisfied = true;
                break;
            }
        }
        rep.all_satisfied = rep.all_satisfied && e.satisfied;
        rep.entries.push_back(std::move(e));
    }
    return rep;
}

bool reflection_pairs_complete(const CensusResult& result) {
    for (const auto& r : result.records) {
        if (r.classification.collinear) continue;
        const ConfigKey mk = mirror_key(r.key);
        bool found = false;
        for (const auto& other : result.records) {
            if (keys_equal(other.key, mk, result.options.key_tol)) {
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

bool hard_checks_pass(const CensusResult& result) {
    const int n = result.n();
    BigInt moulton = big_factorial(n) / 2;
    const bool moulton_ok = BigInt(result.collinear_count) == moulton;
    return moulton_ok && reflection_pairs_complete(result) && result.comparisons.morse_vs_bouquet.pass &&
           result.comparisons.parity_ok && result.comparisons.equivariant.pass;
}

} // namespace ccnb
