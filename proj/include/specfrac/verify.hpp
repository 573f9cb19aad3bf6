//==============================================================================
// verify.hpp
// Numerical checks of the claims the theory makes about computed solutions:
// weak-solution residuals, positivity and reflection symmetry, regularity
// surrogates, the multi-start uniqueness harness, and near-critical sweeps.
//
// Regularity is probed by computable surrogates — sup-norm stability under
// grid refinement, the Θᵅ energy share of the upper half of the spectrum,
// and the fitted decay exponent of log|ξ_k| against log λ_k — since Hölder
// membership is not decidable from finitely many coefficients.
//==============================================================================

#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "specfrac/hypotheses.hpp"
#include "specfrac/solvers.hpp"

namespace specfrac {

// Dual-norm residuals of the weak formulation:
//   ( ‖A^s u − P[(v⁺)^p]‖_dual,s , ‖A^s v − P[(u⁺)^q]‖_dual,s )
inline std::pair<double, double> residual_pair(const SpectralField& u, const SpectralField& v,
                                               const PowerParams& params) {
    return detail::pair_residuals(u, v, params);
}

// min over the interior grid >= -tol
inline bool positivity_check(const NodalField& u, double tol) {
    return u.min_value() >= -tol;
}

// Reflection symmetry about every midplane: coefficients whose multi-index
// has any even entry must vanish (even sine indices are odd-symmetric).
inline bool symmetry_check(const SpectralField& u, double tol) {
    for (std::size_t k = 0; k < u.size(); ++k) {
        const auto m = u.basis().multi_index(k);
        bool has_even = false;
        for (int j = 0; j < u.basis().dim(); ++j)
            if (m[static_cast<std::size_t>(j)] % 2 == 0) has_even = true;
        if (has_even && std::abs(u[k]) > tol) return false;
    }
    return true;
}

struct RegularityProbe {
    double sup_norm = 0.0;          // max |u| on the M = 2N grid
    double sup_norm_refined = 0.0;  // max |u| on the 4N grid
    double tail_fraction_s = 0.0;   // Θˢ energy share of modes with max_j m_j > N/2
    double tail_fraction_2s = 0.0;  // same at Θ²ˢ
    double decay_exponent = 0.0;    // LS slope of the log|ξ| envelope vs log λ
    bool rough = false;             // decay_exponent > -0.5
};

inline RegularityProbe regularity_probe(const SpectralField& u, double s) {
    RegularityProbe probe;
    const Basis& b = u.basis();
    const int N = b.modes_per_axis();

    probe.sup_norm = to_nodal(u, 2 * N).max_abs();
    probe.sup_norm_refined = to_nodal(u, 4 * N).max_abs();

    auto tail_fraction = [&](double alpha) {
        double tail = 0.0, total = 0.0;
        for (std::size_t k = 0; k < u.size(); ++k) {
            const double e = std::pow(b.eigenvalue(k), alpha) * u[k] * u[k];
            total += e;
            const auto m = b.multi_index(k);
            int mmax = 0;
            for (int j = 0; j < b.dim(); ++j)
                mmax = std::max(mmax, m[static_cast<std::size_t>(j)]);
            if (2 * mmax > N) tail += e;
        }
        return total > 0.0 ? tail / total : 0.0;
    };
    probe.tail_fraction_s = tail_fraction(s);
    probe.tail_fraction_2s = tail_fraction(2.0 * s);

    // Decay exponent of the tail envelope sup_{λ_k >= λ} |ξ_k|, fitted on
    // logarithmic eigenvalue shells.  The tail sup is monotone by
    // construction, so shells that a symmetry pins at rounding level cannot
    // drag the fit; it measures how fast coefficient content beyond
    // frequency λ falls off.
    const double lam_lo = b.lambda_min();
    double lam_hi = lam_lo;
    for (std::size_t k = 0; k < u.size(); ++k) lam_hi = std::max(lam_hi, b.eigenvalue(k));
    const int bins = 12;
    const double step = std::log(lam_hi * 1.0000001 / lam_lo) / bins;
    std::vector<double> shell_max(bins, 0.0);
    for (std::size_t k = 0; k < u.size(); ++k) {
        const int bin = std::min(bins - 1, static_cast<int>(
                            std::log(b.eigenvalue(k) / lam_lo) / step));
        shell_max[static_cast<std::size_t>(bin)] =
            std::max(shell_max[static_cast<std::size_t>(bin)], std::abs(u[k]));
    }
    for (int bi = bins - 2; bi >= 0; --bi)  // running max from the high end
        shell_max[static_cast<std::size_t>(bi)] = std::max(
            shell_max[static_cast<std::size_t>(bi)], shell_max[static_cast<std::size_t>(bi + 1)]);
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int m = 0;
    for (int bi = 0; bi < bins; ++bi) {
        if (!(shell_max[static_cast<std::size_t>(bi)] > 0.0)) continue;
        const double x = std::log(lam_lo) + (bi + 0.5) * step;
        const double y = std::log(shell_max[static_cast<std::size_t>(bi)]);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
        ++m;
    }
    const double denom = static_cast<double>(m) * sxx - sx * sx;
    probe.decay_exponent =
        (m >= 2 && denom > 0.0) ? (static_cast<double>(m) * sxy - sx * sy) / denom : 0.0;
    probe.rough = probe.decay_exponent > -0.5;
    return probe;
}

struct UniquenessRun {
    std::string solver;
    std::uint64_t seed = 0;
    bool converged = false;
    bool degenerate = false;
    double energy = 0.0;
};

struct UniquenessReport {
    bool pass = false;         // max_spread <= tolerance, all runs conclusive
    bool conclusive = false;   // every run converged
    bool weak_evidence = false;  // k_starts == 1
    double tolerance = 1e-5;
    double max_spread = 0.0;         // max pairwise Θ²ˢ distance, all solutions
    double spread_minimize = 0.0;    // within the minimizer family
    double spread_picard = 0.0;      // within the fixed-point family
    double cross_solver_gap = 0.0;   // min distance between the two families
    std::vector<UniquenessRun> runs;
    std::vector<SpectralField> solutions;
};

// Runs both sublinear solvers from k seeded positive starts and reports the
// maximum pairwise Θ²ˢ distance among the converged solutions.  The two
// families are also compared separately: each solver targets its own
// band-limited proxy of the continuum solution, and the distance between the
// two proxies is a truncation-level quantity, reported as cross_solver_gap.
inline UniquenessReport uniqueness_harness(const PowerParams& params, const BasisPtr& basis,
                                           int k_starts, const SolveOptions& opts = {},
                                           double tolerance = 1e-5) {
    if (!(params.p * params.q < 1.0))
        throw RefusalError("uniqueness_harness requires pq < 1",
                           {std::string("classification: ") +
                            regime_name(classify(params).tag)});
    if (k_starts < 1) throw std::invalid_argument("uniqueness_harness: k_starts >= 1");

    UniquenessReport rep;
    rep.tolerance = tolerance;
    rep.weak_evidence = k_starts == 1;
    rep.conclusive = true;

    std::vector<int> family;  // 0 = minimize, 1 = picard
    for (int i = 0; i < k_starts; ++i) {
        const std::uint64_t seed = opts.seed + static_cast<std::uint64_t>(i);
        const SpectralField start = random_positive_start(basis, params.s, seed);
        SolveOptions o = opts;
        o.seed = seed;

        SolverReport rm = minimize_direct(params, start, o);
        rep.runs.push_back({"minimize_direct", seed, rm.converged, rm.degenerate_start,
                            rm.energy});
        if (rm.converged && !rm.degenerate_start) {
            rep.solutions.push_back(rm.u);
            family.push_back(0);
        } else {
            rep.conclusive = false;
        }

        SolverReport rp = picard_sublinear(params, start, o);
        rep.runs.push_back({"picard_sublinear", seed, rp.converged, rp.degenerate_start,
                            rp.energy});
        if (rp.converged && !rp.degenerate_start) {
            rep.solutions.push_back(rp.u);
            family.push_back(1);
        } else {
            rep.conclusive = false;
        }
    }

    const double s2 = 2.0 * params.s;
    double cross_min = 0.0;
    bool cross_seen = false;
    for (std::size_t i = 0; i < rep.solutions.size(); ++i) {
        for (std::size_t j = i + 1; j < rep.solutions.size(); ++j) {
            const double d = theta_norm(rep.solutions[i] - rep.solutions[j], s2);
            rep.max_spread = std::max(rep.max_spread, d);
            if (family[i] == family[j]) {
                auto& fam = family[i] == 0 ? rep.spread_minimize : rep.spread_picard;
                fam = std::max(fam, d);
            } else {
                cross_min = cross_seen ? std::min(cross_min, d) : d;
                cross_seen = true;
            }
        }
    }
    rep.cross_solver_gap = cross_min;
    rep.pass = rep.conclusive && rep.max_spread <= tolerance;
    return rep;
}

struct SweepRow {
    double q;
    double energy;
    double sup_norm;
    double theta2s_norm;
    int iterations;
    bool converged;
};

// Mountain-pass runs along a list of q exponents, all of which must be
// strictly subcritical; refused all-or-nothing before any run.
inline std::vector<SweepRow> critical_sweep(const BasisPtr& basis, const PowerParams& base,
                                            const std::vector<double>& q_values,
                                            const SolveOptions& opts = {}) {
    std::vector<std::string> bad;
    for (double q : q_values) {
        const PowerParams params(base.n, base.s, base.p, q);
        const HyperbolaClass cls = classify(params);
        if (cls.tag != Regime::superlinear_subcritical) {
            std::ostringstream why;
            why.precision(16);
            why << "q = " << q << ": " << regime_name(cls.tag)
                << " (1/(p+1) + 1/(q+1) = " << cls.hyperbola_value
                << " vs (n-2s)/n = " << cls.threshold << ")";
            bad.push_back(why.str());
        }
    }
    if (!bad.empty())
        throw RefusalError("critical_sweep: all q values must be superlinear-subcritical",
                           bad);

    std::vector<SweepRow> table;
    table.reserve(q_values.size());
    for (double q : q_values) {
        const PowerParams params(base.n, base.s, base.p, q);
        const SolverReport rep = mountain_pass(basis, params, opts);
        table.push_back({q, rep.energy, to_nodal(rep.u).max_abs(),
                         theta_norm(rep.u, 2.0 * base.s), rep.iterations, rep.converged});
    }
    return table;
}

} // namespace specfrac
