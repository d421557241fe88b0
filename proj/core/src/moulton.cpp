#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ccnb/solver.hpp"

namespace ccnb {

namespace {

// Embeds gap ratios on the horizontal axis in the prescribed body order and
// normalizes. gaps[k] is the distance between slots k and k+1; the overall
// scale drops out in normalization.
Configuration embed_line(const MassVector& masses, const std::vector<int>& ordering,
                         const std::vector<double>& gaps) {
    const int n = masses.size();
    std::vector<Vec2> x(static_cast<std::size_t>(n));
    double t = 0.0;
    for (int slot = 0; slot < n; ++slot) {
        x[static_cast<std::size_t>(ordering[static_cast<std::size_t>(slot)])] = Vec2(t, 0.0);
        if (slot + 1 < n) t += gaps[static_cast<std::size_t>(slot)];
    }
    return normalize(Configuration(masses, std::move(x)));
}

void check_ordering(int n, const std::vector<int>& ordering) {
    if (static_cast<int>(ordering.size()) != n) throw domain_error("moulton_solve: wrong ordering size");
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int v : ordering) {
        if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) {
            throw domain_error("moulton_solve: ordering is not a permutation");
        }
        seen[static_cast<std::size_t>(v)] = true;
    }
}

} // namespace

Configuration moulton_solve(const MassVector& masses, const std::vector<int>& ordering) {
    const int n = masses.size();
    check_ordering(n, ordering);
    if (n == 2) {
        return embed_line(masses, ordering, {1.0});
    }

    // Unknowns: log gap ratios u_k = log(g_{k+1}/g_1), k = 1..n-2. The first
    // gap is the unit; translation and scale are fixed by normalization.
    const int m = n - 2;
    Eigen::VectorXd u = Eigen::VectorXd::Zero(m); // uniform spacing start

    auto gaps_from = [&](const Eigen::VectorXd& uu) {
        std::vector<double> g(static_cast<std::size_t>(n - 1), 1.0);
        for (int k = 0; k < m; ++k) g[static_cast<std::size_t>(k + 1)] = std::exp(uu(k));
        return g;
    };
    auto line_residual = [&](const Eigen::VectorXd& uu) {
        const Configuration c = embed_line(masses, ordering, gaps_from(uu));
        const Residual r = cc_residual(c);
        Eigen::VectorXd f(n);
        for (int i = 0; i < n; ++i) f(i) = r.F[static_cast<std::size_t>(i)].x;
        return f;
    };

    Eigen::VectorXd f = line_residual(u);
    const int max_iter = 200;
    const double tol = 1e-13;
    Eigen::MatrixXd Jfd(n, m);
    for (int iter = 0; iter < max_iter; ++iter) {
        if (f.lpNorm<Eigen::Infinity>() < tol) break;
        const double h = 1e-6;
        for (int k = 0; k < m; ++k) {
            Eigen::VectorXd up = u, um = u;
            up(k) += h;
            um(k) -= h;
            Jfd.col(k) = (line_residual(up) - line_residual(um)) / (2.0 * h);
        }
        Eigen::VectorXd delta = Jfd.completeOrthogonalDecomposition().solve(-f);
        double step = 1.0;
        bool accepted = false;
        const double f0 = f.norm();
        for (int bt = 0; bt < 40; ++bt) {
            const Eigen::VectorXd ut = u + step * delta;
            if (ut.lpNorm<Eigen::Infinity>() > 50.0) { // absurd gap ratio, damp harder
                step *= 0.5;
                continue;
            }
            const Eigen::VectorXd ft = line_residual(ut);
            if (ft.norm() < f0 * (1.0 - 1e-4 * step) || ft.norm() < tol) {
                u = ut;
                f = ft;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;
    }
    if (!(f.lpNorm<Eigen::Infinity>() < 1e-11)) {
        throw error("moulton_solve: Newton failed to converge (solver bug: Moulton's "
                    "configuration exists and is unique for positive masses)");
    }
    return embed_line(masses, ordering, gaps_from(u));
}

std::vector<std::vector<int>> moulton_orderings(int n) {
    if (n < 2) throw domain_error("moulton_orderings: n must be >= 2");
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<int>> out;
    do {
        if (perm.front() < perm.back()) out.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

} // namespace ccnb
