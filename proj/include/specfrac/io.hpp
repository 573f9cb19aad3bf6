//==============================================================================
// io.hpp
// On-disk formats consumed by every other module:
//
//   Field file (binary, little-endian):
//     char[8]  magic "SFLDv1\0\0"
//     u32      dim
//     f64[dim] lengths
//     u32      modes_per_axis N
//     f64[N^dim] coefficients, row-major multi-index order (last axis fastest)
//
//   report.json — solver report scalars plus file references for the fields.
//   trace.csv   — iteration,energy,grad_norm,step,clamp
//   sweep.csv   — q,energy,sup_norm,theta2s_norm,iterations,converged
//
// All writers go through a temp file and an atomic rename, so no artifact is
// ever observed partially written.
//==============================================================================

#pragma once

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "specfrac/solvers.hpp"
#include "specfrac/verify.hpp"

namespace specfrac {

namespace detail {

inline constexpr char field_magic[8] = {'S', 'F', 'L', 'D', 'v', '1', '\0', '\0'};

static_assert(sizeof(double) == 8, "field format requires 64-bit doubles");

inline void atomic_write(const std::filesystem::path& path, const std::string& bytes) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out) throw std::runtime_error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

// shortest representation that round-trips exactly
inline std::string format_double(double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

} // namespace detail

inline void write_field(const std::filesystem::path& path, const SpectralField& u) {
    const Basis& b = u.basis();
    std::string bytes;
    bytes.append(detail::field_magic, 8);
    auto put_u32 = [&bytes](std::uint32_t v) {
        bytes.append(reinterpret_cast<const char*>(&v), 4);
    };
    auto put_f64 = [&bytes](double v) {
        bytes.append(reinterpret_cast<const char*>(&v), 8);
    };
    put_u32(static_cast<std::uint32_t>(b.dim()));
    for (int j = 0; j < b.dim(); ++j) put_f64(b.domain().length(j));
    put_u32(static_cast<std::uint32_t>(b.modes_per_axis()));
    for (double c : u.coeff()) put_f64(c);
    detail::atomic_write(path, bytes);
}

inline SpectralField read_field(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open field file " + path.string());
    char magic[8];
    in.read(magic, 8);
    if (!in || std::memcmp(magic, detail::field_magic, 8) != 0)
        throw std::runtime_error("bad field file magic in " + path.string());
    auto get_u32 = [&in]() {
        std::uint32_t v = 0;
        in.read(reinterpret_cast<char*>(&v), 4);
        return v;
    };
    auto get_f64 = [&in]() {
        double v = 0;
        in.read(reinterpret_cast<char*>(&v), 8);
        return v;
    };
    const int dim = static_cast<int>(get_u32());
    if (dim < 1 || dim > 3) throw std::runtime_error("bad field file dim");
    std::array<double, 3> lengths{1.0, 1.0, 1.0};
    for (int j = 0; j < dim; ++j) lengths[static_cast<std::size_t>(j)] = get_f64();
    const int N = static_cast<int>(get_u32());
    BasisPtr basis = build_basis(Domain(dim, lengths), N);
    std::vector<double> coeff(basis->size());
    in.read(reinterpret_cast<char*>(coeff.data()),
            static_cast<std::streamsize>(coeff.size() * 8));
    if (!in) throw std::runtime_error("truncated field file " + path.string());
    return SpectralField(std::move(basis), std::move(coeff));
}

inline nlohmann::json classification_to_json(const std::optional<HyperbolaClass>& cls) {
    if (!cls) return nullptr;
    return {{"tag", regime_name(cls->tag)},
            {"hyperbola_value", cls->hyperbola_value},
            {"threshold", cls->threshold}};
}

inline nlohmann::json report_to_json(const SolverReport& rep) {
    const Basis& b = rep.u.basis();
    nlohmann::json j;
    j["solver"] = rep.solver;
    j["converged"] = rep.converged;
    j["degenerate_start"] = rep.degenerate_start;
    j["iterations"] = rep.iterations;
    j["energy"] = rep.energy;
    j["residual_u"] = rep.residual_u;
    j["residual_v"] = rep.residual_v;
    j["classification"] = classification_to_json(rep.classification);
    j["domain"] = {{"dim", b.dim()},
                   {"lengths", std::vector<double>(b.domain().lengths.begin(),
                                                   b.domain().lengths.begin() + b.dim())}};
    j["modes"] = b.modes_per_axis();
    j["theta2s_norm_u"] = 0.0;  // filled by callers that know s
    j["fields"] = {{"u", "u.field"}, {"v", "v.field"}};
    j["trace"] = "trace.csv";
    return j;
}

inline void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
    detail::atomic_write(path, j.dump(2) + "\n");
}

inline void write_trace_csv(const std::filesystem::path& path,
                            const std::vector<TraceEntry>& trace) {
    std::string out = "iteration,energy,grad_norm,step,clamp\n";
    for (const auto& t : trace) {
        out += std::to_string(t.iteration);
        out += ',';
        out += detail::format_double(t.energy);
        out += ',';
        out += detail::format_double(t.grad_norm);
        out += ',';
        out += detail::format_double(t.step);
        out += ',';
        out += detail::format_double(t.clamp);
        out += '\n';
    }
    detail::atomic_write(path, out);
}

inline void write_sweep_csv(const std::filesystem::path& path,
                            const std::vector<SweepRow>& table) {
    std::string out = "q,energy,sup_norm,theta2s_norm,iterations,converged\n";
    for (const auto& r : table) {
        out += detail::format_double(r.q);
        out += ',';
        out += detail::format_double(r.energy);
        out += ',';
        out += detail::format_double(r.sup_norm);
        out += ',';
        out += detail::format_double(r.theta2s_norm);
        out += ',';
        out += std::to_string(r.iterations);
        out += ',';
        out += r.converged ? "true" : "false";
        out += '\n';
    }
    detail::atomic_write(path, out);
}

} // namespace specfrac
