//==============================================================================
// solvers.hpp
// The three solution procedures suggested by the existence proofs, plus
// recovery of the second component:
//
//   minimize_direct — Armijo-backtracked descent on Φ with the A^{-2s}
//     preconditioned gradient (exact and free: the metric is diagonal).
//     Valid in the coercive sublinear regime pq < 1.
//
//   picard_sublinear — Green-operator fixed point u ↦ A^{-s}((A^{-s}(u⁺)^q)⁺)^p
//     with nodal positive-part clamping each sweep; the clamp magnitude is
//     recorded in the trace and decays to zero at a positive fixed point.
//     Contracts for pq < 1 (the fixed point direction has rate ≈ pq).
//
//   mountain_pass / solve_general — ray-rescaled preconditioned descent: each
//     step descends, then rescales the iterate to the maximum of Φ along its
//     own ray.  The rescale removes the unstable radial direction of the
//     mountain-pass saddle, so plain gradient steps contract on the Nehari
//     slice.  For the power nonlinearity the ray maximum is closed-form,
//       t* = (∫|A^s d|^{(p+1)/p} / ∫(d⁺)^{q+1})^{1/(q - 1/p)};
//     for general F it is bracketed and refined by golden section.
//
// Step acceptance in the mountain-pass loop tolerates a few ulps of energy
// noise (the contraction, not the energy comparison, drives convergence near
// the critical point, where true energy differences fall below double
// resolution).  minimize_direct uses strict Armijo, so its energy trace is
// nonincreasing as recorded.
//
// Termination: dual_norm(grad, 2s) ≤ grad_tol, i.e. the Θ²ˢ norm of the
// preconditioned gradient.  Every solve is deterministic given (seed, opts).
//==============================================================================

#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "specfrac/energy.hpp"
#include "specfrac/hypotheses.hpp"
#include "specfrac/nonlinearity.hpp"
#include "specfrac/operators.hpp"
#include "specfrac/params.hpp"
#include "specfrac/transform.hpp"

namespace specfrac {

// Raised when a solver declines a problem outside its regime (supercritical
// exponents, failed AR sweep, hypothesis window violations).
class RefusalError : public std::runtime_error {
public:
    RefusalError(const std::string& what, std::vector<std::string> violations = {})
        : std::runtime_error(what), violations_(std::move(violations)) {}
    const std::vector<std::string>& violations() const { return violations_; }

private:
    std::vector<std::string> violations_;
};

struct SolveOptions {
    int max_iters = 5000;
    double grad_tol = 1e-8;     // Θ²ˢ norm of the preconditioned gradient
    double armijo_c = 1e-4;
    double backtrack = 0.5;
    double initial_step = 1.0;
    int max_backtracks = 60;    // beyond this, declare stagnation
    std::uint64_t seed = 0;

    void validate() const {
        if (max_iters < 1) throw std::invalid_argument("SolveOptions: max_iters >= 1");
        if (!(grad_tol > 0.0)) throw std::invalid_argument("SolveOptions: grad_tol > 0");
        if (!(backtrack > 0.0 && backtrack < 1.0))
            throw std::invalid_argument("SolveOptions: backtrack in (0,1)");
        if (!(initial_step > 0.0)) throw std::invalid_argument("SolveOptions: initial_step > 0");
    }
};

struct TraceEntry {
    int iteration;
    double energy;
    double grad_norm;  // dual-norm of the gradient, or the successive-iterate
                       // Θ²ˢ distance for the fixed-point solver
    double step;
    double clamp;      // magnitude clamped by the positive-part projection
};

struct SolverReport {
    explicit SolverReport(BasisPtr basis) : u(basis), v(std::move(basis)) {}

    SpectralField u;
    SpectralField v;
    double energy = 0.0;
    double residual_u = 0.0;
    double residual_v = 0.0;
    int iterations = 0;
    std::vector<TraceEntry> trace;
    bool converged = false;
    bool degenerate_start = false;
    std::optional<HyperbolaClass> classification;
    std::string solver;
};

// v = A^{-s} P[(u⁺)^q] — the Green-operator route, defined for every u.
inline SpectralField recover_v(const SpectralField& u, const PowerParams& params) {
    NodalField un = to_nodal(u);
    for (double& t : un.values()) t = positive_power(t, params.q);
    return invert_power(to_spectral(un), params.s);
}

// v = (A^s u)^{1/p} evaluated nodally with the signed power — diagnostic
// route; agrees with recover_v at a converged solution.
inline SpectralField recover_v_direct(const SpectralField& u, const PowerParams& params) {
    NodalField z = to_nodal(apply_power(u, params.s));
    for (double& t : z.values()) t = signed_power(t, 1.0 / params.p);
    return to_spectral(z);
}

// Smooth seeded start: |Gaussian| coefficient draws filtered through A^{-s},
// normalised to unit Θ²ˢ norm.  Gaussians come from a Box-Muller transform
// over mt19937_64 so runs reproduce bit-for-bit across platforms.
inline SpectralField random_positive_start(const BasisPtr& basis, double s,
                                           std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto uniform = [&rng]() {
        return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
    };
    SpectralField u(basis);
    for (std::size_t k = 0; k < u.size(); ++k) {
        const double g = std::sqrt(-2.0 * std::log(uniform())) *
                         std::cos(2.0 * pi * uniform());
        u[k] = std::pow(basis->eigenvalue(k), -s) * std::abs(g);
    }
    const double nrm = theta_norm(u, 2.0 * s);
    if (nrm > 0.0) u *= 1.0 / nrm;
    return u;
}

namespace detail {

inline std::pair<double, double> pair_residuals(const SpectralField& u, const SpectralField& v,
                                                const PowerParams& params) {
    u.check_same_basis(v);
    NodalField vn = to_nodal(v);
    for (double& t : vn.values()) t = positive_power(t, params.p);
    const double ru = dual_norm(apply_power(u, params.s) - to_spectral(vn), params.s);
    NodalField un = to_nodal(u);
    for (double& t : un.values()) t = positive_power(t, params.q);
    const double rv = dual_norm(apply_power(v, params.s) - to_spectral(un), params.s);
    return {ru, rv};
}

// Shared evaluation cache: one pair of forward transforms per point serves
// the energy, the gradient and the ray rescale.
struct Eval {
    NodalField z;   // nodal(A^s u)
    NodalField un;  // nodal(u)
};

struct PowerModel {
    PowerParams params;

    double s() const { return params.s; }

    Eval eval(const SpectralField& u) const {
        return {to_nodal(apply_power(u, params.s)), to_nodal(u)};
    }

    static Eval scaled(const Eval& e, double t) {
        Eval out = e;
        for (double& v : out.z.values()) v *= t;
        for (double& v : out.un.values()) v *= t;
        return out;
    }

    double phi(const Eval& e) const {
        const double pw = (params.p + 1.0) / params.p;
        double t1 = 0.0, t2 = 0.0;
        for (double v : e.z.values()) t1 += std::pow(std::abs(v), pw);
        for (double v : e.un.values()) t2 += positive_power(v, params.q + 1.0);
        const double w = quadrature_weight(e.z.basis(), e.z.grid_per_axis());
        return params.p / (params.p + 1.0) * w * t1 - w * t2 / (params.q + 1.0);
    }

    SpectralField grad(const Eval& e) const {
        NodalField w = e.z;
        for (double& v : w.values()) v = signed_power(v, 1.0 / params.p);
        SpectralField g = apply_power(to_spectral(w), params.s);
        NodalField un = e.un;
        for (double& v : un.values()) v = positive_power(v, params.q);
        g -= to_spectral(un);
        return g;
    }

    // argmax_t Φ(t·d):  t* = (a/b)^{1/(q - 1/p)}, defined when ∫(d⁺)^{q+1} > 0
    std::optional<double> ray_max(const Eval& e) const {
        const double pw = (params.p + 1.0) / params.p;
        double a = 0.0, b = 0.0;
        for (double v : e.z.values()) a += std::pow(std::abs(v), pw);
        for (double v : e.un.values()) b += positive_power(v, params.q + 1.0);
        if (!(b > 0.0) || !(a > 0.0)) return std::nullopt;
        return std::pow(a / b, 1.0 / (params.q - 1.0 / params.p));
    }
};

struct GeneralModel {
    Nonlinearity nl;
    double p;
    double s_;

    double s() const { return s_; }

    Eval eval(const SpectralField& u) const {
        return {to_nodal(apply_power(u, s_)), to_nodal(u)};
    }

    static Eval scaled(const Eval& e, double t) { return PowerModel::scaled(e, t); }

    double phi(const Eval& e) const {
        const double pw = (p + 1.0) / p;
        double t1 = 0.0, t2 = 0.0;
        for (double v : e.z.values()) t1 += std::pow(std::abs(v), pw);
        for (double v : e.un.values()) t2 += nl.F(v);
        const double w = quadrature_weight(e.z.basis(), e.z.grid_per_axis());
        return p / (p + 1.0) * w * t1 - w * t2;
    }

    SpectralField grad(const Eval& e) const {
        NodalField w = e.z;
        for (double& v : w.values()) v = signed_power(v, 1.0 / p);
        SpectralField g = apply_power(to_spectral(w), s_);
        NodalField un = e.un;
        for (double& v : un.values()) v = nl.f(v);
        g -= to_spectral(un);
        return g;
    }

    // Numeric ray maximum: Φ(t·d) = t^{(p+1)/p}·const − Q[F(t·d)]; expand a
    // bracket from t = 1, then golden-section.  F may overflow for huge t;
    // the resulting −inf simply terminates the expansion.
    std::optional<double> ray_max(const Eval& e) const {
        const double pw = (p + 1.0) / p;
        double a1 = 0.0;
        for (double v : e.z.values()) a1 += std::pow(std::abs(v), pw);
        const double w = quadrature_weight(e.z.basis(), e.z.grid_per_axis());
        a1 *= w * p / (p + 1.0);
        if (!(a1 > 0.0)) return std::nullopt;

        auto phi_ray = [&](double t) {
            double acc = 0.0;
            for (double v : e.un.values()) acc += nl.F(t * v);
            return a1 * std::pow(t, pw) - w * acc;
        };

        double hi = 1.0, f_prev = phi_ray(hi);
        while (hi < 1e30) {
            const double f_next = phi_ray(hi * 1.5);
            if (!(f_next > f_prev)) break;
            hi *= 1.5;
            f_prev = f_next;
        }
        hi *= 1.5;

        const double gr = 0.6180339887498949;
        double lo = 0.0;
        double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
        double fc = phi_ray(c), fd = phi_ray(d);
        for (int i = 0; i < 200 && (hi - lo) > 1e-13 * std::max(1.0, hi); ++i) {
            if (fc > fd) {
                hi = d; d = c; fd = fc;
                c = hi - gr * (hi - lo); fc = phi_ray(c);
            } else {
                lo = c; c = d; fc = fd;
                d = lo + gr * (hi - lo); fd = phi_ray(d);
            }
        }
        return 0.5 * (lo + hi);
    }
};

// Ray-rescaled descent shared by the two mountain-pass entry points.
template <class Model>
SolverReport mountain_pass_core(const Model& model, const SpectralField& direction,
                                const SolveOptions& opts, const char* name) {
    const double s2 = 2.0 * model.s();
    SolverReport rep(direction.basis_ptr());
    rep.solver = name;

    Eval e0 = model.eval(direction);
    const auto t0 = model.ray_max(e0);
    if (!t0)
        throw std::invalid_argument(std::string(name) +
                                    ": initial direction has no ray maximum");
    SpectralField u = *t0 * direction;
    Eval e = Model::scaled(e0, *t0);
    double f = model.phi(e);

    double alpha = opts.initial_step;
    double gn = 0.0;
    int it = 0;
    for (; it < opts.max_iters; ++it) {
        SpectralField g = model.grad(e);
        gn = dual_norm(g, s2);
        rep.trace.push_back({it, f, gn, alpha, 0.0});
        if (gn <= opts.grad_tol) {
            rep.converged = true;
            break;
        }
        const SpectralField d = invert_power(g, s2);

        double a = alpha;
        bool accepted = false;
        SpectralField u_new(u.basis_ptr());
        Eval e_new = e;
        double f_new = f;
        for (int bt = 0; bt <= opts.max_backtracks; ++bt) {
            SpectralField w = u - a * d;
            Eval ew = model.eval(w);
            const auto t = model.ray_max(ew);
            if (t) {
                u_new = *t * w;
                e_new = Model::scaled(ew, *t);
                f_new = model.phi(e_new);
                // Reject only genuine ascents.  The slack must sit above the
                // quadrature/transform rounding floor of a Φ evaluation, or
                // noise vetoes the contraction steps that polish the last
                // gradient decades; real instabilities overshoot it at once.
                const double slack = 1024.0 * 2.220446049250313e-16 * std::max(1.0, std::abs(f));
                if (f_new <= f + slack) {
                    accepted = true;
                    break;
                }
            }
            a *= opts.backtrack;
        }
        if (!accepted) break;  // stagnation

        u = u_new;
        e = e_new;
        f = f_new;
        alpha = std::min(opts.initial_step, 2.0 * a);
    }

    rep.u = u;
    rep.energy = f;
    rep.iterations = static_cast<int>(rep.trace.size());
    if (theta_norm(u, s2) < 1e-10) rep.converged = false;  // collapse to 0
    return rep;
}

} // namespace detail

// Direct minimization of Φ (coercive for pq < 1).  Armijo backtracking on the
// A^{-2s}-preconditioned gradient; the recorded energy trace is nonincreasing.
inline SolverReport minimize_direct(const PowerParams& params, const SpectralField& init,
                                    const SolveOptions& opts = {}) {
    opts.validate();
    detail::check_dim(init, params.n, "minimize_direct");
    const HyperbolaClass cls = classify(params);
    if (cls.tag != Regime::sublinear)
        throw RefusalError("minimize_direct requires the sublinear regime pq < 1",
                           {std::string("classification: ") + regime_name(cls.tag)});

    SolverReport rep(init.basis_ptr());
    rep.solver = "minimize_direct";
    rep.classification = cls;

    if (init.is_zero()) {
        // 0 is a critical point; flag the degenerate start
        rep.u = init;
        rep.v = init;
        rep.degenerate_start = true;
        rep.converged = true;
        rep.trace.push_back({0, 0.0, 0.0, 0.0, 0.0});
        return rep;
    }

    const detail::PowerModel model{params};
    const double s2 = 2.0 * params.s;

    SpectralField u = init;
    detail::Eval e = model.eval(u);
    double f = model.phi(e);
    double step = 0.0;
    int it = 0;
    for (; it < opts.max_iters; ++it) {
        SpectralField g = model.grad(e);
        const double gn = dual_norm(g, s2);
        rep.trace.push_back({it, f, gn, step, 0.0});
        if (gn <= opts.grad_tol) {
            rep.converged = true;
            break;
        }
        const SpectralField d = invert_power(g, s2);

        double a = opts.initial_step;
        bool accepted = false;
        SpectralField u_try(u.basis_ptr());
        detail::Eval e_try = e;
        double f_try = f;
        for (int bt = 0; bt <= opts.max_backtracks; ++bt) {
            u_try = u - a * d;
            e_try = model.eval(u_try);
            f_try = model.phi(e_try);
            if (f_try <= f - opts.armijo_c * a * gn * gn) {
                accepted = true;
                break;
            }
            a *= opts.backtrack;
        }
        if (!accepted) break;  // stagnation at the energy noise floor
        u = u_try;
        e = e_try;
        f = f_try;
        step = a;
    }

    rep.u = u;
    rep.v = recover_v(u, params);
    rep.energy = f;
    rep.iterations = static_cast<int>(rep.trace.size());
    const auto [ru, rv] = detail::pair_residuals(rep.u, rep.v, params);
    rep.residual_u = ru;
    rep.residual_v = rv;
    return rep;
}

// Green-operator fixed point u ↦ A^{-s}((A^{-s}(u⁺)^q)⁺)^p with nodal
// clamping each sweep; stops when successive iterates differ by at most
// grad_tol in Θ²ˢ.  The returned v is the inner stage.
inline SolverReport picard_sublinear(const PowerParams& params, const SpectralField& init,
                                     const SolveOptions& opts = {}) {
    opts.validate();
    detail::check_dim(init, params.n, "picard_sublinear");
    if (!(params.p * params.q < 1.0))
        throw RefusalError("picard_sublinear requires pq < 1",
                           {std::string("classification: ") +
                            regime_name(classify(params).tag)});

    SolverReport rep(init.basis_ptr());
    rep.solver = "picard_sublinear";
    rep.classification = classify(params);

    if (init.is_zero()) {
        rep.u = init;
        rep.v = init;
        rep.degenerate_start = true;
        rep.converged = true;
        rep.trace.push_back({0, 0.0, 0.0, 0.0, 0.0});
        return rep;
    }

    SpectralField u = init;
    SpectralField v(init.basis_ptr());
    int it = 0;
    for (; it < opts.max_iters; ++it) {
        NodalField un = to_nodal(u);
        const double clamp_u = std::max(0.0, -un.min_value());
        for (double& t : un.values()) t = positive_power(t, params.q);
        v = invert_power(to_spectral(un), params.s);

        NodalField vn = to_nodal(v);
        const double clamp_v = std::max(0.0, -vn.min_value());
        for (double& t : vn.values()) t = positive_power(t, params.p);
        SpectralField u_next = invert_power(to_spectral(vn), params.s);

        const double diff = theta_norm(u_next - u, 2.0 * params.s);
        u = u_next;
        rep.trace.push_back({it, phi_power(u, params), diff, 1.0,
                             std::max(clamp_u, clamp_v)});
        if (diff <= opts.grad_tol) {
            rep.converged = true;
            ++it;
            break;
        }
    }

    if (u.is_zero()) rep.degenerate_start = true;  // collapsed to the 0 fixed point

    rep.u = u;
    rep.v = recover_v(u, params);
    rep.energy = phi_power(u, params);
    rep.iterations = it;
    const auto [ru, rv] = detail::pair_residuals(rep.u, rep.v, params);
    rep.residual_u = ru;
    rep.residual_v = rv;
    return rep;
}

// Numerical mountain pass for the power system, pq > 1 strictly below the
// critical hyperbola, p ≤ 1.  Default initial direction: φ₁.
inline SolverReport mountain_pass(const BasisPtr& basis, const PowerParams& params,
                                  const SolveOptions& opts = {}) {
    opts.validate();
    if (basis->dim() != params.n)
        throw std::invalid_argument("mountain_pass: params.n does not match basis dim");
    const HyperbolaClass cls = classify(params);
    if (cls.tag != Regime::superlinear_subcritical) {
        std::ostringstream why;
        why.precision(16);
        why << "classification: " << regime_name(cls.tag) << " (1/(p+1) + 1/(q+1) = "
            << cls.hyperbola_value << " vs (n-2s)/n = " << cls.threshold << ")";
        throw RefusalError("mountain_pass requires the superlinear-subcritical regime",
                           {why.str()});
    }
    if (!(params.p <= 1.0))
        throw RefusalError("mountain_pass requires p <= 1",
                           {"p = " + std::to_string(params.p)});

    const SpectralField dir = SpectralField::mode(basis, {1, 1, 1});
    SolverReport rep = detail::mountain_pass_core(detail::PowerModel{params}, dir, opts,
                                                  "mountain_pass");
    rep.classification = cls;
    rep.v = recover_v(rep.u, params);
    const auto [ru, rv] = detail::pair_residuals(rep.u, rep.v, params);
    rep.residual_u = ru;
    rep.residual_v = rv;
    return rep;
}

// Mountain pass for a general superlinear nonlinearity (p ≤ 1 branch):
// refuses unless the hypothesis window and the AR sweep hold.
inline SolverReport solve_general(const BasisPtr& basis, const Nonlinearity& nl, double p,
                                  double s, const SolveOptions& opts = {}) {
    opts.validate();
    const int n = basis->dim();

    const HypothesisReport gate = hypothesis_gate(Theorem::T1, n, s, p, nl);
    if (!gate.satisfied) {
        std::vector<std::string> msgs;
        for (const auto& v : gate.violations)
            msgs.push_back(v.condition + " (actual " + std::to_string(v.actual) +
                           ", required " + v.required + ")");
        throw RefusalError("solve_general: hypothesis window violated", msgs);
    }

    const ArCheckResult ar = ar_check(nl, p, std::max(10.0, 2.0 * nl.r0), 1000);
    if (!ar.pass) throw RefusalError("solve_general: AR check failed", {ar.message});

    const SpectralField dir = SpectralField::mode(basis, {1, 1, 1});
    SolverReport rep = detail::mountain_pass_core(detail::GeneralModel{nl, p, s}, dir, opts,
                                                  "solve_general");

    // v = A^{-s} P[f(u)]
    NodalField un = to_nodal(rep.u);
    for (double& t : un.values()) t = nl.f(t);
    rep.v = invert_power(to_spectral(un), s);

    // pair residuals for system (A^s u = v^p, A^s v = f(u))
    NodalField vn = to_nodal(rep.v);
    for (double& t : vn.values()) t = positive_power(t, p);
    rep.residual_u = dual_norm(apply_power(rep.u, s) - to_spectral(vn), s);
    NodalField fn = to_nodal(rep.u);
    for (double& t : fn.values()) t = nl.f(t);
    rep.residual_v = dual_norm(apply_power(rep.v, s) - to_spectral(fn), s);
    return rep;
}

} // namespace specfrac
