//==============================================================================
// Acceptance suite: runs every verification criterion at its stated tolerance
// and prints one pass/fail line per criterion.  Exits nonzero if any fail.
//
// Criterion 5 exercises the sublinear multi-start agreement across the two
// solver routes.  The two routes solve two distinct band-limited problems
// (reduced-functional critical point vs Green-iteration pair fixed point)
// whose mutual distance is a truncation-level quantity, observed ≈ O(1/N);
// at the pinned resolution N = 32 that distance exceeds the stated spread
// tolerance, so the cross-route legs of that criterion report their measured
// values honestly rather than being tuned away.  Each route individually is
// start-independent far below the tolerance.
//==============================================================================

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "specfrac/specfrac.hpp"

using namespace specfrac;

namespace {

struct Checker {
    int id;
    std::string name;
    bool ok = true;
    std::vector<std::string> notes;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

    Checker(int id_, std::string name_) : id(id_), name(std::move(name_)) {}

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            notes.push_back(what);
        }
    }

    double elapsed() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }

    bool finish(double time_cap_s = 0.0) {
        const double dt = elapsed();
        if (time_cap_s > 0.0 && dt > time_cap_s) {
            ok = false;
            notes.push_back("runtime " + std::to_string(dt) + " s exceeds cap " +
                            std::to_string(time_cap_s) + " s");
        }
        std::printf("criterion %2d %s  %s (%.2f s)\n", id, ok ? "PASS" : "FAIL",
                    name.c_str(), dt);
        const std::size_t shown = std::min<std::size_t>(notes.size(), 8);
        for (std::size_t i = 0; i < shown; ++i)
            std::printf("              - %s\n", notes[i].c_str());
        if (notes.size() > shown)
            std::printf("              - ... and %zu more\n", notes.size() - shown);
        std::fflush(stdout);
        return ok;
    }
};

SpectralField gaussian_field(const BasisPtr& basis, std::uint64_t seed, double decay) {
    std::mt19937_64 rng(seed);
    auto uniform = [&rng]() {
        return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
    };
    SpectralField u(basis);
    for (std::size_t k = 0; k < u.size(); ++k) {
        const double g = std::sqrt(-2.0 * std::log(uniform())) * std::cos(2.0 * pi * uniform());
        u[k] = std::pow(basis->eigenvalue(k), -decay) * g;
    }
    return u;
}

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", x);
    return buf;
}

// exact rational arithmetic for the classification oracle
struct Frac {
    long long n, d;  // d > 0
    Frac(long long n_ = 0, long long d_ = 1) : n(n_), d(d_) {
        if (d < 0) { n = -n; d = -d; }
        const long long g = std::gcd(std::abs(n), d);
        if (g > 1) { n /= g; d /= g; }
    }
    Frac operator+(const Frac& o) const { return Frac(n * o.d + o.n * d, d * o.d); }
    Frac operator-(const Frac& o) const { return Frac(n * o.d - o.n * d, d * o.d); }
    Frac operator*(const Frac& o) const { return Frac(n * o.n, d * o.d); }
    int cmp(const Frac& o) const {
        const long long lhs = n * o.d, rhs = o.n * d;
        return lhs < rhs ? -1 : lhs > rhs ? 1 : 0;
    }
};

Regime rational_classify(int n, const Frac& s, const Frac& p, const Frac& q) {
    const Frac one(1);
    const int pq = (p * q).cmp(one);
    if (pq < 0) return Regime::sublinear;
    if (pq == 0) return Regime::resonant;
    // 1/(p+1) + 1/(q+1) vs (n-2s)/n  <=>  n(p+q+2) vs (n-2s)(p+1)(q+1)
    const Frac lhs = Frac(n) * (p + q + Frac(2));
    const Frac rhs = (Frac(n) - Frac(2) * s) * (p + one) * (q + one);
    const int c = lhs.cmp(rhs);
    return c > 0 ? Regime::superlinear_subcritical
                 : c == 0 ? Regime::critical : Regime::supercritical;
}

bool rational_t1(int n, const Frac& s, const Frac& p) {
    if (n < 2) return false;
    if (!(Frac(n).cmp(Frac(4) * s) < 0)) return false;
    if (!(p.cmp(Frac(0)) > 0)) return false;
    // p(n - 2s) < 2s
    return (p * (Frac(n) - Frac(2) * s)).cmp(Frac(2) * s) < 0;
}

} // namespace

int main() {
    int passed = 0, total = 0;
    auto tally = [&](bool ok) {
        ++total;
        if (ok) ++passed;
    };

    // ------------------------------------------------------------------ 1
    {
        Checker c(1, "operator exactness on eigenfunctions and semigroup");
        auto basis = build_basis(Domain::unit_square(), 64);
        std::mt19937_64 rng(101);
        for (int trial = 0; trial < 20; ++trial) {
            const int j = 1 + static_cast<int>(rng() % 64);
            const int k = 1 + static_cast<int>(rng() % 64);
            const double s = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
            const auto u = SpectralField::mode(basis, {j, k, 1});
            const auto w = apply_power(u, s);
            const double lam_s = std::pow(basis->eigenvalue(basis->flat_index({j, k, 1})), s);
            double err = 0.0;
            for (std::size_t i = 0; i < w.size(); ++i) {
                const double expect = i == basis->flat_index({j, k, 1}) ? lam_s : 0.0;
                err = std::max(err, std::abs(w[i] - expect) / lam_s);
            }
            c.require(err <= 1e-12, "eigenfunction error " + sci(err));
        }
        for (std::uint64_t seed : {11, 12, 13}) {
            const auto u = gaussian_field(basis, seed, 0.5);
            for (auto [s1, s2] : {std::pair{0.3, 0.45}, {0.9, -0.15}}) {
                const auto a = apply_power(apply_power(u, s1), s2);
                const auto b = apply_power(u, s1 + s2);
                const double rel = theta_norm(a - b, 0.0) / theta_norm(b, 0.0);
                c.require(rel <= 1e-13, "semigroup deviation " + sci(rel));
            }
        }
        tally(c.finish(1.0));
    }

    // ------------------------------------------------------------------ 2
    {
        Checker c(2, "Green inverse and dual-norm isometry");
        auto basis = build_basis(Domain::unit_square(), 64);
        for (std::uint64_t seed : {21, 22, 23, 24}) {
            const auto f = gaussian_field(basis, seed, 0.4);
            for (double s : {0.3, 0.5, 0.75, 1.0}) {
                const auto rt = apply_power(invert_power(f, s), s);
                const double rel = theta_norm(rt - f, 0.0) / theta_norm(f, 0.0);
                c.require(rel <= 1e-12, "inverse deviation " + sci(rel));
                const double iso =
                    std::abs(dual_norm(apply_power(f, s), s) - theta_norm(f, s)) /
                    theta_norm(f, s);
                c.require(iso <= 1e-12, "isometry deviation " + sci(iso));
            }
        }
        tally(c.finish());
    }

    // ------------------------------------------------------------------ 3
    {
        Checker c(3, "Gateaux derivatives vs central finite differences (50 pairs)");
        auto basis = build_basis(Domain::unit_square(), 24);
        const double h = 1e-5;
        int pair_count = 0;
        auto check_pair = [&](auto&& phi, auto&& grad, std::uint64_t seed) {
            const auto u = gaussian_field(basis, 1000 + seed, 1.0);
            const auto dir = gaussian_field(basis, 2000 + seed, 1.0);
            const double fd = (phi(u + h * dir) - phi(u - h * dir)) / (2.0 * h);
            const double exact = inner_theta(grad(u), dir, 0.0);
            const double rel = std::abs(fd - exact) / std::max(1e-10, std::abs(exact));
            c.require(rel <= 1e-5, "pair " + std::to_string(pair_count) + " rel err " +
                                       sci(rel));
            ++pair_count;
        };
        for (double p : {0.5, 1.0})
            for (double q : {0.5, 3.0}) {
                const PowerParams params(2, 0.6, p, q);
                for (int rep = 0; rep < 8; ++rep)
                    check_pair([&](const SpectralField& w) { return phi_power(w, params); },
                               [&](const SpectralField& w) { return grad_phi_power(w, params); },
                               static_cast<std::uint64_t>(pair_count));
            }
        for (const char* name : {"re^r", "r^3"}) {
            const auto nl = make_nonlinearity(name, 3.0);
            for (int rep = 0; rep < 9; ++rep)
                check_pair(
                    [&](const SpectralField& w) { return phi_general(w, nl, 1.0, 0.75); },
                    [&](const SpectralField& w) { return grad_phi_general(w, nl, 1.0, 0.75); },
                    static_cast<std::uint64_t>(pair_count));
        }
        c.require(pair_count == 50, "expected 50 pairs, ran " + std::to_string(pair_count));
        tally(c.finish(10.0));
    }

    // ------------------------------------------------------------------ 4
    {
        Checker c(4, "closed-form ray energy at n=2, s=1/2, p=1, q=3");
        auto basis = build_basis(Domain::unit_square(), 32);
        const PowerParams params(2, 0.5, 1.0, 3.0);
        for (double t : {0.5, 1.0, 2.0}) {
            const double val = phi_power(SpectralField::mode(basis, {1, 1, 1}, t), params);
            const double oracle = t * t * pi * pi - 9.0 / 16.0 * t * t * t * t;
            c.require(std::abs(val - oracle) <= 1e-8,
                      "t = " + std::to_string(t) + ": |" + sci(val) + " - " + sci(oracle) +
                          "| > 1e-8");
        }
        tally(c.finish());
    }

    // ------------------------------------------------------------------ 5
    SpectralField u5_min(build_basis(Domain::unit_square(), 2));  // placeholders
    SpectralField u5_pic = u5_min;
    bool have5 = false;
    {
        Checker c(5, "sublinear uniqueness, 6 starts across both solvers (N=32)");
        auto basis = build_basis(Domain::unit_square(), 32);
        const PowerParams params(2, 0.75, 0.5, 0.5);
        SolveOptions opts;
        opts.grad_tol = 1e-7;
        opts.seed = 500;

        const auto rep = uniqueness_harness(params, basis, 6, opts);
        c.require(rep.conclusive, "not every run converged");
        c.require(rep.max_spread <= 1e-5,
                  "pairwise theta^{2s} spread " + sci(rep.max_spread) +
                      " > 1e-5 (per-route spreads: minimize " + sci(rep.spread_minimize) +
                      ", picard " + sci(rep.spread_picard) + "; the cross-route gap " +
                      sci(rep.cross_solver_gap) + " is the N=32 truncation mismatch)");

        for (const auto& sol : rep.solutions) {
            const double mn = to_nodal(sol).min_value();
            c.require(mn >= -1e-8, "solution min " + sci(mn) + " < -1e-8");
        }
        double worst_min_ru = 0.0, worst_pic_ru = 0.0;
        bool have_min = false, have_pic = false;
        std::size_t cursor = 0;
        for (const auto& run : rep.runs) {
            if (!(run.converged && !run.degenerate)) continue;
            const auto& sol = rep.solutions[cursor++];
            const auto v = recover_v(sol, params);
            const auto [ru, rv] = residual_pair(sol, v, params);
            if (run.solver == "minimize_direct") {
                worst_min_ru = std::max(worst_min_ru, std::max(ru, rv));
                if (!have_min) { u5_min = sol; have_min = true; }
            } else {
                worst_pic_ru = std::max(worst_pic_ru, std::max(ru, rv));
                if (!have_pic) { u5_pic = sol; have_pic = true; }
            }
        }
        c.require(worst_pic_ru <= 1e-6, "picard residual_pair " + sci(worst_pic_ru));
        c.require(worst_min_ru <= 1e-6,
                  "minimize residual_pair " + sci(worst_min_ru) +
                      " > 1e-6 (band-limited reduced critical point vs pair system)");
        have5 = have_min && have_pic;
        tally(c.finish(60.0));
    }

    // ------------------------------------------------------------------ 6
    SolverReport rep6(build_basis(Domain::unit_square(), 2));
    {
        Checker c(6, "superlinear-subcritical mountain pass (N=64)");
        auto basis = build_basis(Domain::unit_square(), 64);
        const PowerParams params(2, 0.5, 1.0, 3.0);
        SolveOptions opts;
        opts.grad_tol = 1e-8;
        opts.seed = 600;

        rep6 = mountain_pass(basis, params, opts);
        c.require(rep6.converged, "did not converge");
        c.require(theta_norm(rep6.u, 1.0) > 1e-10, "returned the zero field");
        c.require(rep6.residual_u <= 1e-6, "residual_u " + sci(rep6.residual_u));
        c.require(rep6.residual_v <= 1e-6, "residual_v " + sci(rep6.residual_v));
        c.require(rep6.energy > 0.0, "energy not positive");
        const double ray_max = std::pow(2.0 * pi * pi, 2.0) / 9.0;
        c.require(rep6.energy <= ray_max + 1e-6,
                  "energy " + sci(rep6.energy) + " above ray bound " + sci(ray_max));
        const double mn = to_nodal(rep6.u).min_value();
        c.require(mn >= -1e-8, "min " + sci(mn) + " < -1e-8");
        tally(c.finish(120.0));
    }

    // ------------------------------------------------------------------ 7
    {
        Checker c(7, "general nonlinearity f = r e^r and cubic equivalence");
        auto basis = build_basis(Domain::unit_square(), 32);
        SolveOptions opts;
        opts.grad_tol = 1e-8;

        const auto nl = make_nonlinearity("re^r", 2.0);
        const auto rep = solve_general(basis, nl, 1.0, 0.75, opts);
        c.require(rep.converged, "re^r run did not converge");
        c.require(rep.residual_u <= 1e-6, "residual_u " + sci(rep.residual_u));
        c.require(rep.residual_v <= 1e-6, "residual_v " + sci(rep.residual_v));
        c.require(theta_norm(rep.u, 1.5) >= 1e-3,
                  "trivial solution, norm " + sci(theta_norm(rep.u, 1.5)));

        const auto cubic = make_nonlinearity("r^3", 3.0);
        const auto gen = solve_general(basis, cubic, 1.0, 0.75, opts);
        const auto pow = mountain_pass(basis, PowerParams(2, 0.75, 1.0, 3.0), opts);
        c.require(gen.converged && pow.converged, "cubic equivalence runs did not converge");
        c.require(std::abs(gen.energy - pow.energy) <= 1e-8,
                  "energy mismatch " + sci(std::abs(gen.energy - pow.energy)));
        tally(c.finish());
    }

    // ------------------------------------------------------------------ 8
    {
        Checker c(8, "classification boundaries vs exact rational re-evaluation");
        long points = 0;
        for (int n : {2, 3}) {
            for (int i = 1; i <= 22; ++i) {          // p = i/8 in (0, 2.75]
                for (int j = 1; j <= 22; ++j) {      // q = j/8
                    for (int k = 8; k <= 28; ++k) {  // s = k/32 in [0.25, 0.875]
                        const double p = i / 8.0, q = j / 8.0, s = k / 32.0;
                        const Regime got = classify(PowerParams(n, s, p, q)).tag;
                        const Regime want =
                            rational_classify(n, Frac(k, 32), Frac(i, 8), Frac(j, 8));
                        if (got != want) {
                            c.require(false, "classify mismatch at n=" + std::to_string(n) +
                                                 " p=" + std::to_string(p) + " q=" +
                                                 std::to_string(q) + " s=" + std::to_string(s));
                        }
                        const bool gate = hypothesis_gate(Theorem::T1, n, s, p, 0.0).satisfied;
                        const bool oracle = rational_t1(n, Frac(k, 32), Frac(i, 8));
                        if (gate != oracle) {
                            c.require(false, "T1 gate mismatch at n=" + std::to_string(n) +
                                                 " p=" + std::to_string(p) + " s=" +
                                                 std::to_string(s));
                        }
                        ++points;
                    }
                }
            }
        }
        c.require(points >= 10000, "lattice too small: " + std::to_string(points));
        // spot-check the stated boundaries on the doubles themselves
        c.require(classify(PowerParams(2, 0.6, 0.5, 2.0)).tag == Regime::resonant,
                  "pq = 1 not resonant");
        c.require(classify(PowerParams(3, 0.5, 2.0, 2.0)).tag == Regime::critical,
                  "hyperbola point not critical");
        c.require(hypothesis_gate(Theorem::T1, 2, 0.5, 0.5, 0.0).satisfied == false,
                  "s = 1/2 boundary must be excluded at n = 2");
        c.require(hypothesis_gate(Theorem::T1, 3, 0.75, 0.5, 0.0).satisfied == false,
                  "s = 3/4 boundary must be excluded at n = 3");
        tally(c.finish(5.0));
    }

    // ------------------------------------------------------------------ 9
    {
        Checker c(9, "regularity surrogates and symmetry preservation");
        // mountain-pass solution from criterion 6
        const auto probe6 = regularity_probe(rep6.u, 0.5);
        c.require(std::abs(probe6.sup_norm - probe6.sup_norm_refined) <=
                      0.01 * probe6.sup_norm,
                  "sup-norm drift " + sci(std::abs(probe6.sup_norm - probe6.sup_norm_refined)));
        c.require(probe6.decay_exponent < -1.0,
                  "decay exponent " + sci(probe6.decay_exponent));
        c.require(symmetry_check(rep6.u, 1e-10), "mountain-pass symmetry broken");

        // sublinear solutions from criterion 5
        if (have5) {
            for (const auto* u : {&u5_min, &u5_pic}) {
                const auto probe = regularity_probe(*u, 0.75);
                c.require(std::abs(probe.sup_norm - probe.sup_norm_refined) <=
                              0.01 * probe.sup_norm,
                          "sublinear sup-norm drift " +
                              sci(std::abs(probe.sup_norm - probe.sup_norm_refined)));
                c.require(probe.decay_exponent < -1.0,
                          "sublinear decay exponent " + sci(probe.decay_exponent));
            }
        } else {
            c.require(false, "criterion 5 produced no solutions to probe");
        }

        // symmetric starts stay symmetric through both sublinear solvers
        auto basis = build_basis(Domain::unit_square(), 32);
        const PowerParams params(2, 0.75, 0.5, 0.5);
        SolveOptions opts;
        opts.grad_tol = 1e-7;
        const auto sym_min =
            minimize_direct(params, SpectralField::mode(basis, {1, 1, 1}), opts);
        const auto sym_pic =
            picard_sublinear(params, SpectralField::mode(basis, {1, 1, 1}), opts);
        c.require(symmetry_check(sym_min.u, 1e-10), "minimize symmetry broken");
        c.require(symmetry_check(sym_pic.u, 1e-10), "picard symmetry broken");
        tally(c.finish());
    }

    // ------------------------------------------------------------------ 10
    {
        Checker c(10, "determinism: repeated mountain pass reproduces energies");
        auto basis = build_basis(Domain::unit_square(), 64);
        const PowerParams params(2, 0.5, 1.0, 3.0);
        SolveOptions opts;
        opts.grad_tol = 1e-8;
        opts.seed = 600;
        const auto again = mountain_pass(basis, params, opts);
        c.require(std::abs(again.energy - rep6.energy) <= 1e-12,
                  "energy differs by " + sci(std::abs(again.energy - rep6.energy)));
        c.require(again.iterations == rep6.iterations, "iteration counts differ");
        double trace_diff = 0.0;
        for (std::size_t i = 0; i < std::min(again.trace.size(), rep6.trace.size()); ++i)
            trace_diff =
                std::max(trace_diff, std::abs(again.trace[i].energy - rep6.trace[i].energy));
        c.require(trace_diff <= 1e-12, "trace energies differ by " + sci(trace_diff));
        tally(c.finish());
    }

    std::printf("summary: %d/%d criteria passed\n", passed, total);
    return passed == total ? 0 : 1;
}
