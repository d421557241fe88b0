#include "ccnb/spectral.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <random>

#include "ccnb/solver.hpp"

namespace ccnb {

namespace {

// Ambient Lagrange Hessian H = hess(U) - lambda hess(I) with lambda = -U/(2I).
Eigen::MatrixXd ambient_hessian(const Configuration& c) {
    const int n = c.size();
    const PotentialMoment ui = compute_U_I(c);
    const double lambda = -ui.U / (2.0 * ui.I);
    const double M = c.masses.total();

    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    // hess(U): off-diagonal block (i,j) is m_i m_j K(x_i - x_j) with
    // K(d) = I/r^3 - 3 d d^T/r^5; diagonal blocks make the rows sum to zero.
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const Vec2 d = c.x[static_cast<std::size_t>(i)] - c.x[static_cast<std::size_t>(j)];
            const double r2 = d.norm2();
            const double r = std::sqrt(r2);
            const double inv_r3 = 1.0 / (r2 * r);
            const double inv_r5 = inv_r3 / r2;
            const double mm = c.masses[i] * c.masses[j];
            const double kxx = mm * (inv_r3 - 3.0 * d.x * d.x * inv_r5);
            const double kxy = mm * (-3.0 * d.x * d.y * inv_r5);
            const double kyy = mm * (inv_r3 - 3.0 * d.y * d.y * inv_r5);
            H(2 * i, 2 * j) += kxx;
            H(2 * i, 2 * j + 1) += kxy;
            H(2 * i + 1, 2 * j) += kxy;
            H(2 * i + 1, 2 * j + 1) += kyy;
            H(2 * j, 2 * i) += kxx;
            H(2 * j, 2 * i + 1) += kxy;
            H(2 * j + 1, 2 * i) += kxy;
            H(2 * j + 1, 2 * i + 1) += kyy;
            H(2 * i, 2 * i) -= kxx;
            H(2 * i, 2 * i + 1) -= kxy;
            H(2 * i + 1, 2 * i) -= kxy;
            H(2 * i + 1, 2 * i + 1) -= kyy;
            H(2 * j, 2 * j) -= kxx;
            H(2 * j, 2 * j + 1) -= kxy;
            H(2 * j + 1, 2 * j) -= kxy;
            H(2 * j + 1, 2 * j + 1) -= kyy;
        }
    }
    // hess(I) = 2 m_i delta_ij Id - 2 m_i m_j / M Id, times -lambda.
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double v = -lambda * (2.0 * (i == j ? c.masses[i] : 0.0) - 2.0 * c.masses[i] * c.masses[j] / M);
            H(2 * i, 2 * j) += v;
            H(2 * i + 1, 2 * j + 1) += v;
        }
    }
    return H;
}

double mass_dot(const MassVector& m, const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
    double s = 0.0;
    for (int i = 0; i < m.size(); ++i) s += m[i] * a[static_cast<std::size_t>(i)].dot(b[static_cast<std::size_t>(i)]);
    return s;
}

} // namespace

std::vector<std::vector<Vec2>> reduced_basis(const Configuration& c, std::uint64_t seed) {
    const int n = c.size();
    if (n < 3) throw domain_error("reduced_basis: n must be >= 3");
    const MassVector& m = c.masses;

    // The four gauge directions; mutually mass-orthogonal at a normalized
    // configuration.
    std::vector<std::vector<Vec2>> gauge;
    std::vector<Vec2> tx(static_cast<std::size_t>(n), Vec2(1.0, 0.0));
    std::vector<Vec2> ty(static_cast<std::size_t>(n), Vec2(0.0, 1.0));
    std::vector<Vec2> rot(static_cast<std::size_t>(n));
    std::vector<Vec2> dil(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        rot[static_cast<std::size_t>(i)] = c.x[static_cast<std::size_t>(i)].perp();
        dil[static_cast<std::size_t>(i)] = c.x[static_cast<std::size_t>(i)];
    }
    for (auto* g : {&tx, &ty, &rot, &dil}) {
        const double nn = std::sqrt(mass_dot(m, *g, *g));
        for (auto& v : *g) v *= 1.0 / nn;
        gauge.push_back(*g);
    }

    // Candidate directions: the ambient standard basis by default, or a
    // seeded Gaussian draw (the spectrum must not depend on the choice).
    std::vector<std::vector<Vec2>> candidates;
    if (seed == 0) {
        for (int k = 0; k < 2 * n; ++k) {
            std::vector<Vec2> e(static_cast<std::size_t>(n), Vec2{});
            if (k % 2 == 0) e[static_cast<std::size_t>(k / 2)].x = 1.0;
            else e[static_cast<std::size_t>(k / 2)].y = 1.0;
            candidates.push_back(std::move(e));
        }
    } else {
        std::mt19937_64 rng(seed);
        auto gauss = [&rng]() {
            // Box-Muller on explicit 53-bit uniforms, reproducible across
            // standard libraries.
            const double u1 = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
            const double u2 = static_cast<double>(rng() >> 11) * 0x1.0p-53;
            return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
        };
        for (int k = 0; k < 2 * n + 8; ++k) {
            std::vector<Vec2> e(static_cast<std::size_t>(n));
            for (auto& v : e) v = Vec2(gauss(), gauss());
            candidates.push_back(std::move(e));
        }
    }

    std::vector<std::vector<Vec2>> basis;
    for (auto& cand : candidates) {
        if (static_cast<int>(basis.size()) == 2 * n - 4) break;
        std::vector<Vec2> v = cand;
        for (int pass = 0; pass < 2; ++pass) { // twice for numerical orthogonality
            for (const auto& g : gauge) {
                const double p = mass_dot(m, v, g);
                for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] -= p * g[static_cast<std::size_t>(i)];
            }
            for (const auto& b : basis) {
                const double p = mass_dot(m, v, b);
                for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] -= p * b[static_cast<std::size_t>(i)];
            }
        }
        const double nn = std::sqrt(mass_dot(m, v, v));
        if (nn < 1e-8) continue; // dependent candidate
        for (auto& w : v) w *= 1.0 / nn;
        basis.push_back(std::move(v));
    }
    if (static_cast<int>(basis.size()) != 2 * n - 4) {
        throw error("reduced_basis: failed to span the reduced tangent space");
    }
    return basis;
}

ReducedHessian reduced_hessian(const Configuration& c, const SpectralOptions& opts) {
    const Residual res = cc_residual(c);
    if (!(res.norm <= opts.residual_gate)) {
        throw not_critical_error("reduced_hessian: residual " + std::to_string(res.norm) +
                                 " exceeds gate; polish the configuration first");
    }
    const int n = c.size();
    const Eigen::MatrixXd H = ambient_hessian(c);
    const auto basis = reduced_basis(c, opts.basis_seed);
    const int dim = 2 * n - 4;

    Eigen::MatrixXd B(2 * n, dim);
    for (int a = 0; a < dim; ++a) {
        for (int i = 0; i < n; ++i) {
            B(2 * i, a) = basis[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)].x;
            B(2 * i + 1, a) = basis[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)].y;
        }
    }
    Eigen::MatrixXd Hr = B.transpose() * H * B;
    Hr = 0.5 * (Hr + Hr.transpose()).eval();

    ReducedHessian out;
    out.dim = dim;
    out.h.resize(static_cast<std::size_t>(dim * dim));
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) out.h[static_cast<std::size_t>(i * dim + j)] = Hr(i, j);
    }
    return out;
}

IndexReport morse_index(const Configuration& c, const SpectralOptions& opts) {
    const ReducedHessian hr = reduced_hessian(c, opts);
    const int dim = hr.dim;
    Eigen::MatrixXd Hr(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) Hr(i, j) = hr.at(i, j);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Hr);
    IndexReport rep;
    rep.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + dim);
    const double emax = std::max(std::abs(rep.eigenvalues.front()), std::abs(rep.eigenvalues.back()));
    if (!(emax > 0.0)) {
        rep.index = 0;
        rep.degenerate = true;
        rep.gap = 0.0;
        return rep;
    }
    double emin = emax;
    for (double e : rep.eigenvalues) {
        if (e < -opts.tol_eig * emax) ++rep.index;
        emin = std::min(emin, std::abs(e));
    }
    rep.gap = emin / emax;
    rep.degenerate = rep.gap < opts.tol_degenerate;
    return rep;
}

double fd_validate(const Configuration& c, int directions, double step, std::uint64_t seed,
                   const SpectralOptions& opts) {
    return fd_validate_against(reduced_hessian(c, opts), c, directions, step, seed, opts);
}

double fd_validate_against(const ReducedHessian& hr, const Configuration& c, int directions,
                           double step, std::uint64_t seed, const SpectralOptions& opts) {
    const auto basis = reduced_basis(c, opts.basis_seed);
    const int dim = hr.dim;
    const int n = c.size();
    const double U0 = compute_U_I(c).U;

    std::mt19937_64 rng(seed);
    auto gauss = [&rng]() {
        const double u1 = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
        const double u2 = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    };

    double worst = 0.0;
    for (int d = 0; d < directions; ++d) {
        std::vector<double> a(static_cast<std::size_t>(dim));
        double nn = 0.0;
        for (auto& v : a) {
            v = gauss();
            nn += v * v;
        }
        nn = std::sqrt(nn);
        for (auto& v : a) v /= nn;

        double q = 0.0;
        for (int i = 0; i < dim; ++i) {
            for (int j = 0; j < dim; ++j) q += a[static_cast<std::size_t>(i)] * hr.at(i, j) * a[static_cast<std::size_t>(j)];
        }
        std::vector<Vec2> dir(static_cast<std::size_t>(n), Vec2{});
        for (int k = 0; k < dim; ++k) {
            for (int i = 0; i < n; ++i) {
                dir[static_cast<std::size_t>(i)] += a[static_cast<std::size_t>(k)] * basis[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
            }
        }
        auto u_at = [&](double h) {
            Configuration moved = c;
            for (int i = 0; i < n; ++i) moved.x[static_cast<std::size_t>(i)] += h * dir[static_cast<std::size_t>(i)];
            return compute_U_I(normalize(moved)).U;
        };
        const double fd = (u_at(step) - 2.0 * U0 + u_at(-step)) / (step * step);
        const double dev = std::abs(fd - q) / std::max(1.0, std::abs(q));
        worst = std::max(worst, dev);
    }
    return worst;
}

} // namespace ccnb
