//==============================================================================
// domain.hpp
// Axis-aligned box domains and the Dirichlet sine eigenbasis of -Δ on them.
//
// On Ω = (0,L₁)×…×(0,L_d) the eigenpairs are analytic:
//   φ_m(x) = Π_j sqrt(2/L_j) sin(m_j π x_j / L_j),   m_j = 1..N
//   λ_m    = π² Σ_j (m_j / L_j)²
// with ∫φ_j φ_k = δ_jk exactly.  Every fractional power of the operator is
// diagonal in this basis, which keeps all downstream tests sharp.
//
// Multi-indices are stored flat in row-major order (last axis fastest), the
// same layout FFTW uses for its r2r transforms.
//==============================================================================

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace specfrac {

inline constexpr double pi = 3.14159265358979323846;

// Axis-aligned box (0,L₁)×…×(0,L_d), d ∈ {1,2,3}.
struct Domain {
    int dim;
    std::array<double, 3> lengths{1.0, 1.0, 1.0};

    Domain(int dim_, const std::array<double, 3>& lengths_)
        : dim(dim_), lengths(lengths_) {
        validate();
    }

    static Domain interval(double L) { return Domain(1, {L, 1.0, 1.0}); }
    static Domain box(double Lx, double Ly) { return Domain(2, {Lx, Ly, 1.0}); }
    static Domain box(double Lx, double Ly, double Lz) { return Domain(3, {Lx, Ly, Lz}); }
    static Domain unit_square() { return box(1.0, 1.0); }

    double length(int axis) const { return lengths[static_cast<std::size_t>(axis)]; }

    double volume() const {
        double v = 1.0;
        for (int j = 0; j < dim; ++j) v *= lengths[static_cast<std::size_t>(j)];
        return v;
    }

    bool operator==(const Domain& o) const {
        if (dim != o.dim) return false;
        for (int j = 0; j < dim; ++j)
            if (lengths[static_cast<std::size_t>(j)] != o.lengths[static_cast<std::size_t>(j)])
                return false;
        return true;
    }

private:
    void validate() const {
        if (dim < 1 || dim > 3)
            throw std::invalid_argument("Domain: dim must be 1, 2 or 3");
        for (int j = 0; j < dim; ++j)
            if (!(lengths[static_cast<std::size_t>(j)] > 0.0) ||
                !std::isfinite(lengths[static_cast<std::size_t>(j)]))
                throw std::invalid_argument("Domain: lengths must be positive and finite");
    }
};

// Truncated Dirichlet eigenbasis: N modes per axis, N^dim eigenpairs total.
// Eigenvalues are precomputed in flat (row-major) multi-index order; the
// smallest one, λ₁ = π² Σ_j 1/L_j², sits at flat index 0.
class Basis {
public:
    Basis(const Domain& domain, int modes_per_axis)
        : domain_(domain), modes_(modes_per_axis) {
        if (modes_ < 2)
            throw std::invalid_argument("Basis: modes_per_axis must be >= 2");
        size_ = 1;
        for (int j = 0; j < domain_.dim; ++j) size_ *= static_cast<std::size_t>(modes_);
        eigenvalues_.resize(size_);
        for (std::size_t k = 0; k < size_; ++k) {
            const auto m = multi_index(k);
            double lam = 0.0;
            for (int j = 0; j < domain_.dim; ++j) {
                const double r = static_cast<double>(m[static_cast<std::size_t>(j)]) /
                                 domain_.length(j);
                lam += r * r;
            }
            eigenvalues_[k] = pi * pi * lam;
        }
    }

    const Domain& domain() const { return domain_; }
    int dim() const { return domain_.dim; }
    int modes_per_axis() const { return modes_; }
    std::size_t size() const { return size_; }

    double eigenvalue(std::size_t k) const { return eigenvalues_[k]; }
    const std::vector<double>& eigenvalues() const { return eigenvalues_; }
    double lambda_min() const { return eigenvalues_[0]; }

    // sqrt(2/L_j), the L² normalisation of the per-axis sine factor
    double axis_norm_factor(int axis) const {
        return std::sqrt(2.0 / domain_.length(axis));
    }

    // flat index -> 1-based multi-index (m₁,…,m_d), row-major, last axis fastest
    std::array<int, 3> multi_index(std::size_t flat) const {
        std::array<int, 3> m{1, 1, 1};
        for (int j = domain_.dim - 1; j >= 0; --j) {
            m[static_cast<std::size_t>(j)] =
                static_cast<int>(flat % static_cast<std::size_t>(modes_)) + 1;
            flat /= static_cast<std::size_t>(modes_);
        }
        return m;
    }

    std::size_t flat_index(const std::array<int, 3>& m) const {
        std::size_t flat = 0;
        for (int j = 0; j < domain_.dim; ++j) {
            const int mj = m[static_cast<std::size_t>(j)];
            if (mj < 1 || mj > modes_)
                throw std::out_of_range("Basis::flat_index: mode index out of range");
            flat = flat * static_cast<std::size_t>(modes_) + static_cast<std::size_t>(mj - 1);
        }
        return flat;
    }

    // flat indices sorted by ascending eigenvalue
    std::vector<std::size_t> indices_by_eigenvalue() const {
        std::vector<std::size_t> idx(size_);
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        std::stable_sort(idx.begin(), idx.end(), [this](std::size_t a, std::size_t b) {
            return eigenvalues_[a] < eigenvalues_[b];
        });
        return idx;
    }

    bool operator==(const Basis& o) const {
        return domain_ == o.domain_ && modes_ == o.modes_;
    }

private:
    Domain domain_;
    int modes_;
    std::size_t size_;
    std::vector<double> eigenvalues_;
};

using BasisPtr = std::shared_ptr<const Basis>;

inline BasisPtr build_basis(const Domain& domain, int modes_per_axis) {
    return std::make_shared<const Basis>(domain, modes_per_axis);
}

} // namespace specfrac
