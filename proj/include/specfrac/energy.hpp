//==============================================================================
// energy.hpp
// The reduced functionals whose critical points solve the coupled system
// after v is recovered from u, plus the Hamiltonian/Lagrangian diagnostics.
//
// Power system  A^s u = v^p,  A^s v = (u⁺)^q:
//   Φ(u)  = p/(p+1) ∫ |A^s u|^{(p+1)/p} dx − 1/(q+1) ∫ (u⁺)^{q+1} dx
//   Φ'(u)φ = ∫ |A^s u|^{1/p−1} (A^s u)(A^s φ) dx − ∫ (u⁺)^q φ dx
//
// General nonlinearity (p ≤ 1 regime):
//   Φ(u)  = p/(p+1) ∫ |A^s u|^{(p+1)/p} dx − ∫ F(u) dx
//
// Diagnostics for the pair formulation:
//   ℋ(u,v) = ∫ ( 1/(p+1) |v|^{p+1} + F(u) ) dx
//   𝒥(u,v) = ∫ A^{s/2}u A^{s/2}v dx − ℋ(u,v)
//
// All integrals use the dealiased nodal grid (M = 2N); gradients returned
// here are the exact gradients of the discretised functionals, with the
// L²-representative convention: Φ'(u)φ = Σ_k g_k η_k.  The Θ²ˢ-natural
// (preconditioned) gradient is invert_power(g, 2s).
//==============================================================================

#pragma once

#include <cmath>
#include <stdexcept>

#include "specfrac/nonlinearity.hpp"
#include "specfrac/operators.hpp"
#include "specfrac/params.hpp"
#include "specfrac/transform.hpp"

namespace specfrac {

// |t|^{e-1} t, continuous at 0 for e > 0 (used with e = 1/p, p <= 1 keeps e >= 1)
inline double signed_power(double t, double e) {
    if (t == 0.0) return 0.0;
    return t < 0.0 ? -std::pow(-t, e) : std::pow(t, e);
}

inline double positive_power(double t, double e) {
    return t > 0.0 ? std::pow(t, e) : 0.0;
}

namespace detail {

inline void check_dim(const SpectralField& u, int n, const char* where) {
    if (u.basis().dim() != n)
        throw std::invalid_argument(std::string(where) + ": params.n does not match basis dim");
}

} // namespace detail

inline double phi_power(const SpectralField& u, const PowerParams& params) {
    detail::check_dim(u, params.n, "phi_power");
    const double pw = (params.p + 1.0) / params.p;
    const NodalField z = to_nodal(apply_power(u, params.s));
    double t1 = 0.0;
    for (double v : z.values()) t1 += std::pow(std::abs(v), pw);
    const NodalField un = to_nodal(u);
    double t2 = 0.0;
    for (double v : un.values()) t2 += positive_power(v, params.q + 1.0);
    const double w = quadrature_weight(u.basis(), z.grid_per_axis());
    return params.p / (params.p + 1.0) * w * t1 - w * t2 / (params.q + 1.0);
}

inline SpectralField grad_phi_power(const SpectralField& u, const PowerParams& params) {
    detail::check_dim(u, params.n, "grad_phi_power");
    const double e = 1.0 / params.p;
    NodalField z = to_nodal(apply_power(u, params.s));
    for (double& v : z.values()) v = signed_power(v, e);
    SpectralField g = apply_power(to_spectral(z), params.s);
    NodalField un = to_nodal(u);
    for (double& v : un.values()) v = positive_power(v, params.q);
    g -= to_spectral(un);
    return g;
}

inline double phi_general(const SpectralField& u, const Nonlinearity& nl, double p, double s) {
    if (!(p > 0.0 && p <= 1.0))
        throw std::invalid_argument("phi_general: reduced functional needs 0 < p <= 1");
    const double pw = (p + 1.0) / p;
    const NodalField z = to_nodal(apply_power(u, s));
    double t1 = 0.0;
    for (double v : z.values()) t1 += std::pow(std::abs(v), pw);
    const NodalField un = to_nodal(u);
    double t2 = 0.0;
    for (double v : un.values()) {
        const double Fv = nl.F(v);
        if (!std::isfinite(Fv))
            throw std::invalid_argument("phi_general: non-finite F(u) on the grid");
        t2 += Fv;
    }
    const double w = quadrature_weight(u.basis(), z.grid_per_axis());
    return p / (p + 1.0) * w * t1 - w * t2;
}

inline SpectralField grad_phi_general(const SpectralField& u, const Nonlinearity& nl,
                                      double p, double s) {
    if (!(p > 0.0 && p <= 1.0))
        throw std::invalid_argument("grad_phi_general: reduced functional needs 0 < p <= 1");
    const double e = 1.0 / p;
    NodalField z = to_nodal(apply_power(u, s));
    for (double& v : z.values()) v = signed_power(v, e);
    SpectralField g = apply_power(to_spectral(z), s);
    NodalField un = to_nodal(u);
    for (double& v : un.values()) v = nl.f(v);
    g -= to_spectral(un);
    return g;
}

// ℋ(u,v) = ∫ ( 1/(p+1)|v|^{p+1} + F(u) ) dx
inline double hamiltonian(const SpectralField& u, const SpectralField& v, double p,
                          const Nonlinearity& nl) {
    u.check_same_basis(v);
    const NodalField vn = to_nodal(v);
    const NodalField un = to_nodal(u);
    double acc = 0.0;
    for (std::size_t i = 0; i < vn.size(); ++i)
        acc += std::pow(std::abs(vn[i]), p + 1.0) / (p + 1.0) + nl.F(un[i]);
    return quadrature_weight(u.basis(), vn.grid_per_axis()) * acc;
}

// 𝒥(u,v) = ⟨u,v⟩_{Θˢ} − ℋ(u,v); diagnostic only (strongly indefinite)
inline double lagrangian(const SpectralField& u, const SpectralField& v, double s, double p,
                         const Nonlinearity& nl) {
    return inner_theta(u, v, s) - hamiltonian(u, v, p, nl);
}

} // namespace specfrac
