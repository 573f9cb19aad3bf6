//==============================================================================
// hypotheses.hpp
// Exact gates for the two existence windows and the admissible α range of the
// product-space embedding lemma.
//
//   T1:  2 ≤ n < 4s,  0 < p < 2s/(n−2s),  θ > 2 (p > 1) or θ > 1 + 1/p (p ≤ 1).
//        Since s < 1, the window is exactly {n=2, s>1/2} ∪ {n=3, s>3/4}.
//   T2:  n ≥ 4s,  0 < p ≤ 1,  and 0 < q < (n+4s)/(n−4s) when n > 4s,
//        q > 0 when n = 4s.
//
//   alpha_range(n,s,p) = (max(n/2, s), 2s), empty when the bounds cross;
//   nonempty exactly on the T1 window.
//
// Comparisons are cross-multiplied so exactly representable inputs are gated
// without tolerance artifacts (e.g. n = 4s at s = 1/2, n = 2).
//==============================================================================

#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "specfrac/nonlinearity.hpp"

namespace specfrac {

enum class Theorem { T1, T2 };

struct Violation {
    std::string condition;
    double actual;
    std::string required;
};

struct HypothesisReport {
    Theorem theorem;
    bool satisfied = false;
    std::vector<Violation> violations;
};

namespace detail {

inline HypothesisReport gate_t1(int n, double s, double p, const Nonlinearity* nl) {
    HypothesisReport rep{Theorem::T1, false, {}};
    if (n < 2) rep.violations.push_back({"2 <= n", static_cast<double>(n), ">= 2"});
    if (!(static_cast<double>(n) < 4.0 * s))
        rep.violations.push_back({"n < 4s", static_cast<double>(n),
                                  "< " + std::to_string(4.0 * s)});
    if (!(p > 0.0)) rep.violations.push_back({"p > 0", p, "> 0"});
    // p < 2s/(n-2s), cross-multiplied (n - 2s > 0 for n >= 2, s < 1)
    if (!(p * (static_cast<double>(n) - 2.0 * s) < 2.0 * s))
        rep.violations.push_back({"p < 2s/(n-2s)", p,
                                  "< " + std::to_string(2.0 * s / (n - 2.0 * s))});
    if (nl) {
        // accepted at the threshold itself: the benchmark f = r e^r runs with
        // theta = 2 exactly at p = 1, where the AR sweep still holds strictly
        const double thresh = p > 1.0 ? 2.0 : 1.0 + 1.0 / p;
        if (!(nl->theta >= thresh))
            rep.violations.push_back({"theta >= max(2, 1 + 1/p)", nl->theta,
                                      ">= " + std::to_string(thresh)});
    }
    rep.satisfied = rep.violations.empty();
    return rep;
}

inline HypothesisReport gate_t2(int n, double s, double p, double q) {
    HypothesisReport rep{Theorem::T2, false, {}};
    if (!(static_cast<double>(n) >= 4.0 * s))
        rep.violations.push_back({"n >= 4s", static_cast<double>(n),
                                  ">= " + std::to_string(4.0 * s)});
    if (!(p > 0.0 && p <= 1.0)) rep.violations.push_back({"0 < p <= 1", p, "(0, 1]"});
    if (!(q > 0.0)) {
        rep.violations.push_back({"q > 0", q, "> 0"});
    } else if (static_cast<double>(n) > 4.0 * s) {
        // q < (n+4s)/(n-4s), cross-multiplied
        if (!(q * (static_cast<double>(n) - 4.0 * s) < static_cast<double>(n) + 4.0 * s))
            rep.violations.push_back(
                {"q < (n+4s)/(n-4s)", q,
                 "< " + std::to_string((n + 4.0 * s) / (n - 4.0 * s))});
    }
    rep.satisfied = rep.violations.empty();
    return rep;
}

} // namespace detail

inline HypothesisReport hypothesis_gate(Theorem t, int n, double s, double p, double q) {
    return t == Theorem::T1 ? detail::gate_t1(n, s, p, nullptr)
                            : detail::gate_t2(n, s, p, q);
}

inline HypothesisReport hypothesis_gate(Theorem t, int n, double s, double p,
                                        const Nonlinearity& nl) {
    if (t != Theorem::T1)
        throw std::invalid_argument("hypothesis_gate: nonlinearity form applies to T1");
    return detail::gate_t1(n, s, p, &nl);
}

// Admissible α for the embeddings Θ^{2s−α} ⊂ L^{p+1} and Θ^α ⊂ C(Ω):
// (max(n/2, s), 2s), or empty when max(n/2, s) >= 2s.
inline std::optional<std::pair<double, double>> alpha_range(int n, double s, double /*p*/) {
    const double lo = std::max(static_cast<double>(n) / 2.0, s);
    const double hi = 2.0 * s;
    if (!(lo < hi)) return std::nullopt;
    return std::make_pair(lo, hi);
}

} // namespace specfrac
