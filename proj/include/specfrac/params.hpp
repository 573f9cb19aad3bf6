//==============================================================================
// params.hpp
// Exponent parameters (n, s, p, q) of the power system and their position
// relative to the critical hyperbola
//
//   1/(p+1) + 1/(q+1) = (n - 2s)/n .
//
// Regimes: sublinear (pq < 1), resonant (pq = 1), and for pq > 1 the pair is
// superlinear-subcritical / critical / supercritical according to whether the
// hyperbola value lies above / on / below the threshold.
//
// Ties are decided by cross-multiplied comparisons — products of exactly
// representable inputs stay exact in double, so boundary cases like
// (n,s,p,q) = (3, 1/2, 2, 2) classify as critical without tolerance fudging.
//==============================================================================

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace specfrac {

struct PowerParams {
    int n;     // spatial dimension, matches Domain.dim
    double s;  // fractional order, 0 < s < 1
    double p;  // exponent of the first equation, > 0
    double q;  // exponent of the second equation, > 0

    PowerParams(int n_, double s_, double p_, double q_) : n(n_), s(s_), p(p_), q(q_) {
        if (n < 1 || n > 3) throw std::invalid_argument("PowerParams: n must be 1, 2 or 3");
        if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("PowerParams: need 0 < s < 1");
        if (!(p > 0.0) || !(q > 0.0)) throw std::invalid_argument("PowerParams: need p, q > 0");
    }
};

enum class Regime {
    sublinear,                // pq < 1
    resonant,                 // pq = 1
    superlinear_subcritical,  // pq > 1, above the hyperbola
    critical,                 // on the hyperbola
    supercritical,            // below the hyperbola
};

inline const char* regime_name(Regime r) {
    switch (r) {
        case Regime::sublinear: return "sublinear";
        case Regime::resonant: return "resonant";
        case Regime::superlinear_subcritical: return "superlinear-subcritical";
        case Regime::critical: return "critical";
        case Regime::supercritical: return "supercritical";
    }
    return "unknown";
}

struct HyperbolaClass {
    Regime tag;
    double hyperbola_value;  // 1/(p+1) + 1/(q+1)
    double threshold;        // (n - 2s)/n
};

inline HyperbolaClass classify(const PowerParams& params) {
    const double p = params.p, q = params.q, s = params.s;
    const double n = static_cast<double>(params.n);

    HyperbolaClass out{};
    out.hyperbola_value = 1.0 / (p + 1.0) + 1.0 / (q + 1.0);
    out.threshold = (n - 2.0 * s) / n;

    const double pq = p * q;
    if (pq < 1.0) {
        out.tag = Regime::sublinear;
        return out;
    }
    if (pq == 1.0) {
        out.tag = Regime::resonant;
        return out;
    }
    // 1/(p+1) + 1/(q+1) vs (n-2s)/n, both sides times n(p+1)(q+1) > 0
    const double lhs = n * ((p + 1.0) + (q + 1.0));
    const double rhs = (n - 2.0 * s) * (p + 1.0) * (q + 1.0);
    if (lhs > rhs)
        out.tag = Regime::superlinear_subcritical;
    else if (lhs == rhs)
        out.tag = Regime::critical;
    else
        out.tag = Regime::supercritical;
    return out;
}

} // namespace specfrac
