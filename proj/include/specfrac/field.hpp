//==============================================================================
// field.hpp
// The two representations a field lives in:
//   SpectralField — coefficients ξ_k of u = Σ ξ_k φ_k, one per basis mode.
//   NodalField    — point values on the interior tensor grid
//                   x_i = i·L/(M+1), i = 1..M per axis, M ≥ N.
// Both are immutable-by-convention value types; every operation on them is a
// pure function, so concurrent evaluation on distinct inputs is safe.
//==============================================================================

#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include "specfrac/domain.hpp"

namespace specfrac {

class SpectralField {
public:
    explicit SpectralField(BasisPtr basis)
        : basis_(require(std::move(basis))), coeff_(basis_->size(), 0.0) {}

    SpectralField(BasisPtr basis, std::vector<double> coeff)
        : basis_(require(std::move(basis))), coeff_(std::move(coeff)) {
        if (coeff_.size() != basis_->size())
            throw std::invalid_argument("SpectralField: coefficient count mismatch");
    }

    // single eigenmode, amplitude·φ_m
    static SpectralField mode(BasisPtr basis, const std::array<int, 3>& m,
                              double amplitude = 1.0) {
        SpectralField u(std::move(basis));
        u.coeff_[u.basis_->flat_index(m)] = amplitude;
        return u;
    }

    const Basis& basis() const { return *basis_; }
    const BasisPtr& basis_ptr() const { return basis_; }
    std::size_t size() const { return coeff_.size(); }

    double operator[](std::size_t k) const { return coeff_[k]; }
    double& operator[](std::size_t k) { return coeff_[k]; }
    const std::vector<double>& coeff() const { return coeff_; }
    std::vector<double>& coeff() { return coeff_; }

    bool finite() const {
        for (double c : coeff_)
            if (!std::isfinite(c)) return false;
        return true;
    }

    bool is_zero() const {
        for (double c : coeff_)
            if (c != 0.0) return false;
        return true;
    }

    SpectralField& operator+=(const SpectralField& o) {
        check_same_basis(o);
        for (std::size_t k = 0; k < coeff_.size(); ++k) coeff_[k] += o.coeff_[k];
        return *this;
    }
    SpectralField& operator-=(const SpectralField& o) {
        check_same_basis(o);
        for (std::size_t k = 0; k < coeff_.size(); ++k) coeff_[k] -= o.coeff_[k];
        return *this;
    }
    SpectralField& operator*=(double a) {
        for (double& c : coeff_) c *= a;
        return *this;
    }

    friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
    friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
    friend SpectralField operator*(double a, SpectralField u) { return u *= a; }
    friend SpectralField operator*(SpectralField u, double a) { return u *= a; }

    void check_same_basis(const SpectralField& o) const {
        if (basis_ != o.basis_ && !(*basis_ == *o.basis_))
            throw std::invalid_argument("SpectralField: basis mismatch");
    }

private:
    static BasisPtr require(BasisPtr b) {
        if (!b) throw std::invalid_argument("SpectralField: null basis");
        return b;
    }
    BasisPtr basis_;
    std::vector<double> coeff_;
};

class NodalField {
public:
    NodalField(BasisPtr basis, int grid_per_axis)
        : basis_(require(std::move(basis))), grid_(grid_per_axis) {
        if (grid_ < basis_->modes_per_axis())
            throw std::invalid_argument("NodalField: grid must satisfy M >= N");
        std::size_t n = 1;
        for (int j = 0; j < basis_->dim(); ++j) n *= static_cast<std::size_t>(grid_);
        values_.assign(n, 0.0);
    }

    NodalField(BasisPtr basis, int grid_per_axis, std::vector<double> values)
        : NodalField(std::move(basis), grid_per_axis) {
        if (values.size() != values_.size())
            throw std::invalid_argument("NodalField: value count mismatch");
        values_ = std::move(values);
    }

    const Basis& basis() const { return *basis_; }
    const BasisPtr& basis_ptr() const { return basis_; }
    int grid_per_axis() const { return grid_; }
    std::size_t size() const { return values_.size(); }

    double operator[](std::size_t i) const { return values_[i]; }
    double& operator[](std::size_t i) { return values_[i]; }
    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }

    // grid coordinate of flat node index, x_j = i_j·L_j/(M+1) with i_j = 1..M
    std::array<double, 3> point(std::size_t flat) const {
        std::array<double, 3> x{0.0, 0.0, 0.0};
        for (int j = basis_->dim() - 1; j >= 0; --j) {
            const auto i = flat % static_cast<std::size_t>(grid_);
            flat /= static_cast<std::size_t>(grid_);
            x[static_cast<std::size_t>(j)] = static_cast<double>(i + 1) *
                basis_->domain().length(j) / static_cast<double>(grid_ + 1);
        }
        return x;
    }

    double min_value() const {
        double m = values_.empty() ? 0.0 : values_[0];
        for (double v : values_) m = std::min(m, v);
        return m;
    }
    double max_value() const {
        double m = values_.empty() ? 0.0 : values_[0];
        for (double v : values_) m = std::max(m, v);
        return m;
    }
    double max_abs() const {
        double m = 0.0;
        for (double v : values_) m = std::max(m, std::abs(v));
        return m;
    }

    bool finite() const {
        for (double v : values_)
            if (!std::isfinite(v)) return false;
        return true;
    }

    NodalField map(const std::function<double(double)>& f) const {
        NodalField out(basis_, grid_);
        for (std::size_t i = 0; i < values_.size(); ++i) out.values_[i] = f(values_[i]);
        return out;
    }

private:
    static BasisPtr require(BasisPtr b) {
        if (!b) throw std::invalid_argument("NodalField: null basis");
        return b;
    }
    BasisPtr basis_;
    int grid_;
    std::vector<double> values_;
};

} // namespace specfrac
