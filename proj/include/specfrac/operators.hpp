//==============================================================================
// operators.hpp
// Fractional powers of the Dirichlet Laplacian and the Θᵅ scale of norms.
//
//   A^s u      = Σ λ_k^s ξ_k φ_k          (diagonal, exact in the basis)
//   A^{-s} f   = Σ λ_k^{-s} c_k φ_k       (Green operator; λ_k > 0 always)
//   ‖u‖_{Θᵅ}   = (Σ λ_k^α ξ_k²)^{1/2}     (α = 0 recovers the L² norm)
//   ⟨u,v⟩_{Θˢ} = Σ λ_k^s ξ_k η_k = ∫ A^{s/2}u A^{s/2}v dx
//   ‖f‖_dual,s = (Σ λ_k^{-s} c_k²)^{1/2} = ‖A^{-s/2}f‖_{L²}
//
// A^s is an isometry from Θˢ onto its dual: ‖A^s u‖_dual,s = ‖u‖_{Θˢ}.
//==============================================================================

#pragma once

#include <cmath>
#include <stdexcept>

#include "specfrac/field.hpp"

namespace specfrac {

// A^s u; s may be negative (A^{-s} is then the Green operator).
inline SpectralField apply_power(const SpectralField& u, double s) {
    if (s == 0.0) return u;
    SpectralField out(u.basis_ptr());
    for (std::size_t k = 0; k < u.size(); ++k)
        out[k] = std::pow(u.basis().eigenvalue(k), s) * u[k];
    return out;
}

// Green operator A^{-s}, s > 0.  No singularity: every λ_k is positive.
inline SpectralField invert_power(const SpectralField& f, double s) {
    if (!(s > 0.0)) throw std::domain_error("invert_power: requires s > 0");
    return apply_power(f, -s);
}

// (Σ λ_k^α ξ_k²)^{1/2}
inline double theta_norm(const SpectralField& u, double alpha) {
    double acc = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) {
        const double w = alpha == 0.0 ? 1.0 : std::pow(u.basis().eigenvalue(k), alpha);
        acc += w * u[k] * u[k];
    }
    return std::sqrt(acc);
}

// Σ λ_k^s ξ_k η_k  (symmetric; equals ∫ A^{s/2}u A^{s/2}v dx)
inline double inner_theta(const SpectralField& u, const SpectralField& v, double s) {
    u.check_same_basis(v);
    double acc = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) {
        const double w = s == 0.0 ? 1.0 : std::pow(u.basis().eigenvalue(k), s);
        acc += w * u[k] * v[k];
    }
    return acc;
}

// Dual norm (Σ λ_k^{-s} c_k²)^{1/2}, s > 0.
inline double dual_norm(const SpectralField& f, double s) {
    if (!(s > 0.0)) throw std::domain_error("dual_norm: requires s > 0");
    return theta_norm(f, -s);
}

} // namespace specfrac
