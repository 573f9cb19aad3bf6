//==============================================================================
// transform.hpp
// Fast transforms between the sine eigenbasis and the interior tensor grid,
// built on FFTW's DST-I (RODFT00), plus the matching quadrature.
//
// Conventions (per axis, grid x_i = i·L/(M+1), i = 1..M):
//   RODFT00:  Y_k = 2 Σ_i X_i sin(π i k / (M+1))          (unnormalised)
//   forward:  ξ_m = ∫ u φ_m dx  ≈ h Σ_i u(x_i) φ_m(x_i) = sqrt(L/2)/(M+1) · Y_m
//   backward: u(x_i) = Σ_m ξ_m φ_m(x_i)                  = 1/sqrt(2L) · Y_i
// The h-weighted sum is the trapezoidal rule (boundary terms vanish); by the
// discrete orthogonality of sines it is exact for products of in-band modes,
// so to_spectral ∘ to_nodal = id on band-limited fields up to rounding.
//
// Nonlinear terms are evaluated on a grid with M = 2N points per axis before
// projecting back, which integrates quadratic and cubic products of in-band
// fields exactly (3/2-style dealiasing margin).
//
// Plans are created once per (dim, M) with FFTW_ESTIMATE | FFTW_UNALIGNED —
// deterministic plan selection, safe execution on any caller buffer — and
// cached read-only behind a mutex.  fftw_execute_r2r on distinct buffers is
// thread-safe, so transforms may run concurrently on distinct inputs.
//==============================================================================

#pragma once

#include <cstring>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

#include <fftw3.h>

#include "specfrac/field.hpp"

namespace specfrac {
namespace detail {

class DstPool {
public:
    static DstPool& instance() {
        static DstPool pool;
        return pool;
    }

    // DST-I over all axes of a dim-dimensional cube with M points per axis
    void execute(int dim, int M, double* in, double* out) {
        fftw_plan plan = nullptr;
        {
            std::lock_guard<std::mutex> lock(mutex_);
            const auto key = std::make_pair(dim, M);
            auto it = plans_.find(key);
            if (it == plans_.end()) {
                std::size_t n = 1;
                for (int j = 0; j < dim; ++j) n *= static_cast<std::size_t>(M);
                std::vector<double> scratch_in(n), scratch_out(n);
                int sizes[3] = {M, M, M};
                fftw_r2r_kind kinds[3] = {FFTW_RODFT00, FFTW_RODFT00, FFTW_RODFT00};
                fftw_plan p = fftw_plan_r2r(dim, sizes, scratch_in.data(), scratch_out.data(),
                                            kinds, FFTW_ESTIMATE | FFTW_UNALIGNED);
                if (!p) throw std::runtime_error("DstPool: fftw planning failed");
                it = plans_.emplace(key, p).first;
            }
            plan = it->second;
        }
        fftw_execute_r2r(plan, in, out);
    }

    DstPool(const DstPool&) = delete;
    DstPool& operator=(const DstPool&) = delete;

private:
    DstPool() = default;
    ~DstPool() {
        for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
    }
    std::mutex mutex_;
    std::map<std::pair<int, int>, fftw_plan> plans_;
};

} // namespace detail

// Default dealiasing grid: M = 2N points per axis.
inline int default_grid(const Basis& basis) { return 2 * basis.modes_per_axis(); }

// Quadrature weight of one grid node, Π_j L_j/(M+1).
inline double quadrature_weight(const Basis& basis, int grid_per_axis) {
    double w = 1.0;
    for (int j = 0; j < basis.dim(); ++j)
        w *= basis.domain().length(j) / static_cast<double>(grid_per_axis + 1);
    return w;
}

// ∫ f dx by the grid quadrature (exact for in-band trigonometric products).
inline double integrate(const NodalField& f) {
    double acc = 0.0;
    for (double v : f.values()) acc += v;
    return quadrature_weight(f.basis(), f.grid_per_axis()) * acc;
}

// Synthesis u(x_i) = Σ ξ_m φ_m(x_i) on an M-per-axis grid (default M = 2N).
inline NodalField to_nodal(const SpectralField& u, int grid_per_axis = 0) {
    const Basis& b = u.basis();
    const int N = b.modes_per_axis();
    const int M = grid_per_axis > 0 ? grid_per_axis : default_grid(b);
    if (M < N) throw std::invalid_argument("to_nodal: grid must satisfy M >= N");
    if (!u.finite()) throw std::invalid_argument("to_nodal: non-finite coefficients");

    const int d = b.dim();
    std::size_t n = 1;
    for (int j = 0; j < d; ++j) n *= static_cast<std::size_t>(M);
    std::vector<double> buf(n, 0.0);

    // zero-pad the N-band coefficients into the M-grid array
    const std::size_t Nz = static_cast<std::size_t>(N);
    const std::size_t Mz = static_cast<std::size_t>(M);
    if (d == 1) {
        std::memcpy(buf.data(), u.coeff().data(), Nz * sizeof(double));
    } else if (d == 2) {
        for (std::size_t i = 0; i < Nz; ++i)
            std::memcpy(buf.data() + i * Mz, u.coeff().data() + i * Nz, Nz * sizeof(double));
    } else {
        for (std::size_t i = 0; i < Nz; ++i)
            for (std::size_t j = 0; j < Nz; ++j)
                std::memcpy(buf.data() + (i * Mz + j) * Mz,
                            u.coeff().data() + (i * Nz + j) * Nz, Nz * sizeof(double));
    }

    std::vector<double> out(n);
    detail::DstPool::instance().execute(d, M, buf.data(), out.data());

    double scale = 1.0;
    for (int j = 0; j < d; ++j) scale *= 1.0 / std::sqrt(2.0 * b.domain().length(j));
    for (double& v : out) v *= scale;
    return NodalField(u.basis_ptr(), M, std::move(out));
}

// Analysis ξ_m = ∫ u φ_m dx by the grid quadrature, truncated to the N-band.
// Exact (up to rounding) whenever u is a sine sum with modes ≤ M per axis.
inline SpectralField to_spectral(const NodalField& f) {
    const Basis& b = f.basis();
    const int N = b.modes_per_axis();
    const int M = f.grid_per_axis();
    if (!f.finite()) throw std::invalid_argument("to_spectral: non-finite values");

    const int d = b.dim();
    std::vector<double> in(f.values());
    std::vector<double> out(in.size());
    detail::DstPool::instance().execute(d, M, in.data(), out.data());

    double scale = 1.0;
    for (int j = 0; j < d; ++j)
        scale *= std::sqrt(b.domain().length(j) / 2.0) / static_cast<double>(M + 1);

    const std::size_t Nz = static_cast<std::size_t>(N);
    const std::size_t Mz = static_cast<std::size_t>(M);
    std::vector<double> coeff(b.size());
    if (d == 1) {
        for (std::size_t i = 0; i < Nz; ++i) coeff[i] = scale * out[i];
    } else if (d == 2) {
        for (std::size_t i = 0; i < Nz; ++i)
            for (std::size_t j = 0; j < Nz; ++j)
                coeff[i * Nz + j] = scale * out[i * Mz + j];
    } else {
        for (std::size_t i = 0; i < Nz; ++i)
            for (std::size_t j = 0; j < Nz; ++j)
                for (std::size_t k = 0; k < Nz; ++k)
                    coeff[(i * Nz + j) * Nz + k] = scale * out[(i * Mz + j) * Mz + k];
    }
    return SpectralField(f.basis_ptr(), std::move(coeff));
}

} // namespace specfrac
