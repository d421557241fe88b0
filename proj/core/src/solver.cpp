#include "ccnb/solver.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace ccnb {

Residual cc_residual(const Configuration& c) {
    const int n = c.size();
    const PotentialMoment ui = compute_U_I(c);
    const Vec2 ctr = center_of_mass(c);
    Residual out;
    out.lambda = ui.U / ui.I;
    out.F.assign(static_cast<std::size_t>(n), Vec2{});
    for (int i = 0; i < n; ++i) {
        Vec2 g;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const Vec2 d = c.x[static_cast<std::size_t>(j)] - c.x[static_cast<std::size_t>(i)];
            const double r2 = d.norm2();
            const double inv_r3 = 1.0 / (r2 * std::sqrt(r2));
            g += c.masses[j] * inv_r3 * d;
        }
        const Vec2 rel = c.x[static_cast<std::size_t>(i)] - ctr;
        out.F[static_cast<std::size_t>(i)] = g + out.lambda * rel;
    }
    double nrm = 0.0;
    for (const auto& f : out.F) nrm = std::max(nrm, f.norm());
    out.norm = nrm;
    return out;
}

std::string to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::converged: return "converged";
        case SolveStatus::start_too_close: return "start_too_close";
        case SolveStatus::collision: return "collision";
        case SolveStatus::stalled: return "stalled";
        case SolveStatus::max_iterations: return "max_iterations";
    }
    return "unknown";
}

namespace detail {

struct PolishWorkspace::Impl {
    int n = 0;
    Eigen::MatrixXd J;
    Eigen::VectorXd rhs;
    Eigen::VectorXd delta;
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod;
    std::vector<Vec2> trial;
    std::vector<Vec2> grav; // attraction sums g_i, reused between value and Jacobian

    void resize(int n_) {
        if (n == n_) return;
        n = n_;
        J.resize(2 * n + 4, 2 * n);
        rhs.resize(2 * n + 4);
        delta.resize(2 * n);
        trial.assign(static_cast<std::size_t>(n), Vec2{});
        grav.assign(static_cast<std::size_t>(n), Vec2{});
    }
};

PolishWorkspace::PolishWorkspace() : impl_(std::make_unique<Impl>()) {}
PolishWorkspace::~PolishWorkspace() = default;
PolishWorkspace::PolishWorkspace(PolishWorkspace&&) noexcept = default;
PolishWorkspace& PolishWorkspace::operator=(PolishWorkspace&&) noexcept = default;

namespace {

struct EvalPoint {
    double U = 0.0;
    double I = 0.0;
    double lambda = 0.0; // U/I
    double merit = 0.0;  // 2-norm of (F, com, (I-1)/2)
    double res_max = 0.0;
    double min_dist = 0.0;
    Vec2 com;
    bool valid = false;
};

// Evaluates the augmented residual without touching the Jacobian. grav
// receives the attraction sums so the Jacobian pass can reuse them.
EvalPoint evaluate(const MassVector& masses, const std::vector<Vec2>& x, double collapse_tol,
                   std::vector<Vec2>& grav, std::vector<Vec2>& F_out) {
    const int n = static_cast<int>(x.size());
    EvalPoint ev;
    double U = 0.0, Iq = 0.0;
    double dmin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) grav[static_cast<std::size_t>(i)] = Vec2{};
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const Vec2 d = x[static_cast<std::size_t>(j)] - x[static_cast<std::size_t>(i)];
            const double r2 = d.norm2();
            const double r = std::sqrt(r2);
            dmin = std::min(dmin, r);
            if (r < collapse_tol) {
                ev.min_dist = dmin;
                return ev; // invalid
            }
            const double mm = masses[i] * masses[j];
            U += mm / r;
            Iq += mm * r2;
            const double inv_r3 = 1.0 / (r2 * r);
            grav[static_cast<std::size_t>(i)] += (masses[j] * inv_r3) * d;
            grav[static_cast<std::size_t>(j)] -= (masses[i] * inv_r3) * d;
        }
    }
    const double M = masses.total();
    ev.U = U;
    ev.I = Iq / M;
    ev.lambda = U > 0.0 && ev.I > 0.0 ? U / ev.I : 0.0;
    Vec2 com;
    for (int i = 0; i < n; ++i) com += masses[i] * x[static_cast<std::size_t>(i)];
    com *= 1.0 / M;
    ev.com = com;
    double sq = 0.0, rmax = 0.0;
    for (int i = 0; i < n; ++i) {
        const Vec2 f = grav[static_cast<std::size_t>(i)] + ev.lambda * (x[static_cast<std::size_t>(i)] - com);
        F_out[static_cast<std::size_t>(i)] = f;
        sq += f.norm2();
        rmax = std::max(rmax, f.norm());
    }
    const double ci = 0.5 * (ev.I - 1.0);
    sq += com.norm2() + ci * ci;
    ev.merit = std::sqrt(sq);
    ev.res_max = rmax;
    ev.min_dist = dmin;
    ev.valid = true;
    return ev;
}

void renormalize_in_place(const MassVector& masses, std::vector<Vec2>& x) {
    const int n = static_cast<int>(x.size());
    Vec2 com;
    for (int i = 0; i < n; ++i) com += masses[i] * x[static_cast<std::size_t>(i)];
    com *= 1.0 / masses.total();
    for (auto& p : x) p -= com;
    double Iq = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            Iq += masses[i] * masses[j] * (x[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(j)]).norm2();
        }
    }
    const double s = 1.0 / std::sqrt(Iq / masses.total());
    for (auto& p : x) p *= s;
}

} // namespace

SolveReport newton_polish(const Configuration& c0, const NewtonOptions& opts, PolishWorkspace& ws) {
    const int n = c0.size();
    const MassVector& masses = c0.masses;
    auto& w = ws.impl();
    w.resize(n);

    SolveReport rep;
    const double d0 = min_pair_distance(c0);
    if (!(d0 >= opts.min_sep) || !(d0 > 0.0)) {
        rep.status = SolveStatus::start_too_close;
        return rep;
    }

    std::vector<Vec2> x = c0.x;
    renormalize_in_place(masses, x);
    std::vector<Vec2> F(static_cast<std::size_t>(n));
    std::vector<Vec2> F_trial(static_cast<std::size_t>(n));

    const double M = masses.total();
    EvalPoint ev = evaluate(masses, x, opts.collapse_tol, w.grav, F);
    if (!ev.valid) {
        rep.status = SolveStatus::collision;
        return rep;
    }

    for (int iter = 0; iter <= opts.max_iter; ++iter) {
        rep.iterations = iter;
        rep.final_norm = ev.res_max;
        if (ev.res_max < opts.tol_residual) {
            rep.converged = true;
            rep.status = SolveStatus::converged;
            renormalize_in_place(masses, x);
            rep.configuration = Configuration(masses, x);
            rep.final_norm = cc_residual(*rep.configuration).norm;
            return rep;
        }
        if (iter == opts.max_iter) break;

        // Jacobian of F plus grad(lambda) coupling; grav holds the attraction sums.
        Eigen::MatrixXd& J = w.J;
        J.setZero();
        const double lam = ev.lambda;
        for (int i = 0; i < n; ++i) {
            double bxx = 0.0, bxy = 0.0, byy = 0.0; // accumulates -sum_j m_j K_ij
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                const Vec2 d = x[static_cast<std::size_t>(j)] - x[static_cast<std::size_t>(i)];
                const double r2 = d.norm2();
                const double r = std::sqrt(r2);
                const double inv_r3 = 1.0 / (r2 * r);
                const double inv_r5 = inv_r3 / r2;
                // K(d) = I/r^3 - 3 d d^T / r^5
                const double kxx = inv_r3 - 3.0 * d.x * d.x * inv_r5;
                const double kxy = -3.0 * d.x * d.y * inv_r5;
                const double kyy = inv_r3 - 3.0 * d.y * d.y * inv_r5;
                const double mj = masses[j];
                J(2 * i, 2 * j) += mj * kxx;
                J(2 * i, 2 * j + 1) += mj * kxy;
                J(2 * i + 1, 2 * j) += mj * kxy;
                J(2 * i + 1, 2 * j + 1) += mj * kyy;
                bxx -= mj * kxx;
                bxy -= mj * kxy;
                byy -= mj * kyy;
            }
            J(2 * i, 2 * i) += bxx;
            J(2 * i, 2 * i + 1) += bxy;
            J(2 * i + 1, 2 * i) += bxy;
            J(2 * i + 1, 2 * i + 1) += byy;
        }
        // lambda(x_i - com) terms: lambda (delta_ik - m_k/M) Id + (x_i - com) grad_k(lambda)^T,
        // grad_k lambda = m_k (g_k - 2 lambda (x_k - com)) / I.
        for (int k = 0; k < n; ++k) {
            const Vec2 xk = x[static_cast<std::size_t>(k)] - ev.com;
            const Vec2 gl = (masses[k] / ev.I) * (w.grav[static_cast<std::size_t>(k)] - 2.0 * lam * xk);
            for (int i = 0; i < n; ++i) {
                const Vec2 xi = x[static_cast<std::size_t>(i)] - ev.com;
                const double diag = lam * ((i == k ? 1.0 : 0.0) - masses[k] / M);
                J(2 * i, 2 * k) += xi.x * gl.x + diag;
                J(2 * i, 2 * k + 1) += xi.x * gl.y;
                J(2 * i + 1, 2 * k) += xi.y * gl.x;
                J(2 * i + 1, 2 * k + 1) += xi.y * gl.y + diag;
            }
        }
        Eigen::VectorXd& rhs = w.rhs;
        for (int i = 0; i < n; ++i) {
            rhs(2 * i) = -F[static_cast<std::size_t>(i)].x;
            rhs(2 * i + 1) = -F[static_cast<std::size_t>(i)].y;
        }
        // Constraint rows: center of mass, I = 1, and a no-rotation condition
        // on the step. Each row is scaled to unit norm together with its rhs.
        {
            const int rc = 2 * n;
            double nrm = 0.0;
            for (int k = 0; k < n; ++k) nrm += (masses[k] / M) * (masses[k] / M);
            nrm = std::sqrt(nrm);
            for (int k = 0; k < n; ++k) {
                const double v = masses[k] / M / nrm;
                J(rc, 2 * k) = v;
                J(rc, 2 * k + 1) = 0.0;
                J(rc + 1, 2 * k) = 0.0;
                J(rc + 1, 2 * k + 1) = v;
            }
            rhs(rc) = -ev.com.x / nrm;
            rhs(rc + 1) = -ev.com.y / nrm;

            // The I row and the rotation row have the same norm.
            double nrmI = 0.0;
            for (int k = 0; k < n; ++k) {
                const Vec2 xk = x[static_cast<std::size_t>(k)] - ev.com;
                nrmI += masses[k] * masses[k] * xk.norm2();
            }
            nrmI = std::sqrt(nrmI);
            for (int k = 0; k < n; ++k) {
                const Vec2 xk = x[static_cast<std::size_t>(k)] - ev.com;
                J(rc + 2, 2 * k) = masses[k] * xk.x / nrmI;
                J(rc + 2, 2 * k + 1) = masses[k] * xk.y / nrmI;
                J(rc + 3, 2 * k) = -masses[k] * xk.y / nrmI;
                J(rc + 3, 2 * k + 1) = masses[k] * xk.x / nrmI;
            }
            rhs(rc + 2) = -0.5 * (ev.I - 1.0) / nrmI;
            rhs(rc + 3) = 0.0;
        }

        w.cod.compute(J);
        w.delta = w.cod.solve(rhs);

        // Backtracking line search on the augmented merit.
        double step = 1.0;
        bool accepted = false;
        bool saw_collision = false;
        for (int bt = 0; bt <= opts.max_backtracks; ++bt) {
            for (int i = 0; i < n; ++i) {
                w.trial[static_cast<std::size_t>(i)] =
                    x[static_cast<std::size_t>(i)] + Vec2(step * w.delta(2 * i), step * w.delta(2 * i + 1));
            }
            const EvalPoint trial_ev = evaluate(masses, w.trial, opts.collapse_tol, w.grav, F_trial);
            if (!trial_ev.valid) {
                saw_collision = true;
                step *= 0.5;
                continue;
            }
            if (trial_ev.merit <= (1.0 - 1e-4 * step) * ev.merit) {
                x = w.trial;
                F = F_trial;
                ev = trial_ev;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            rep.status = saw_collision ? SolveStatus::collision : SolveStatus::stalled;
            rep.final_norm = ev.res_max;
            return rep;
        }
        // Gauge restoration is exact and cheap; redo the evaluation on the
        // renormalized point so the next Jacobian is consistent.
        renormalize_in_place(masses, x);
        ev = evaluate(masses, x, opts.collapse_tol, w.grav, F);
        if (!ev.valid) {
            rep.status = SolveStatus::collision;
            return rep;
        }
    }
    rep.status = SolveStatus::max_iterations;
    return rep;
}

} // namespace detail

SolveReport newton_polish(const Configuration& c0, const NewtonOptions& opts) {
    detail::PolishWorkspace ws;
    return detail::newton_polish(c0, opts, ws);
}

} // namespace ccnb
