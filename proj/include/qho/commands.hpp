#pragma once

// Command implementations behind tools/qho. Each returns a RunReport; files
// are written only after every computation has finished.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "qho/functions.hpp"
#include "qho/oracle.hpp"
#include "qho/oscillator.hpp"
#include "qho/report.hpp"
#include "qho/suites.hpp"
#include "qho/transforms.hpp"

namespace qho::commands {

namespace fs = std::filesystem;

struct SolveOptions {
    double half_width = 10.0;
    double grid_spacing = 5e-3;
    QuadratureConfig quad;
};

struct TransformOptions {
    double grid_spacing = 0.01;
    bool boundary_check = true;
    QuadratureConfig quad;
    /// When false the function's own truncation radius may raise quad's.
    bool radius_given = false;
};

namespace detail {

inline std::string path_string(const fs::path& p) { return p.generic_string(); }

inline void add_quadrature(RunReport& r, const QuadratureConfig& q) {
    r.parameters["rel_tol"] = q.rel_tol;
    r.parameters["truncation_radius"] = q.truncation_radius;
    r.parameters["max_subdivisions"] = q.max_subdivisions;
}

inline std::string flag(bool b) { return b ? "1" : "0"; }

}  // namespace detail

inline RunReport cmd_solve(int n_max, const fs::path& out_dir, const SolveOptions& opt = {}) {
    if (n_max < 0) throw DomainError("n_max must be nonnegative");
    if (!(opt.grid_spacing > 0.0) || opt.grid_spacing > oscillator::kMaxResidualSpacing)
        throw DomainError("grid spacing must lie in (0, 1e-2]");
    RunReport r;
    r.command = "solve";
    r.parameters["n_max"] = n_max;
    r.parameters["out"] = detail::path_string(out_dir);
    r.parameters["half_width"] = opt.half_width;
    r.parameters["grid_spacing"] = opt.grid_spacing;
    detail::add_quadrature(r, opt.quad);

    const auto x = symmetric_grid(opt.half_width, opt.grid_spacing);
    std::vector<oscillator::Eigenpair> pairs;
    for (int n = 0; n <= n_max; ++n) pairs.push_back(oscillator::solve_by_transform(n, x, opt.quad));

    double residual = 0.0;
    for (const auto& p : pairs) residual = std::max(residual, oscillator::schrodinger_residual(p));
    r.add_check("oscillator.schrodinger_residual", residual, 1e-2);
    r.add_check("oscillator.orthonormality", oscillator::orthonormality_defect(pairs), 1e-6);

    CsvTable spectrum{{"n", "epsilon"}, {}};
    for (const auto& p : pairs) spectrum.add_numbers({static_cast<double>(p.n), p.epsilon});
    std::vector<CsvTable> psi;
    for (const auto& p : pairs) {
        CsvTable t{{"x", "psi"}, {}};
        for (std::size_t i = 0; i < p.psi.size(); ++i) t.add_numbers({p.psi.grid()[i], p.psi.values()[i]});
        psi.push_back(std::move(t));
    }

    ensure_directory(out_dir);
    spectrum.write(out_dir / "spectrum.csv");
    r.outputs.push_back(detail::path_string(out_dir / "spectrum.csv"));
    for (std::size_t n = 0; n < psi.size(); ++n) {
        const auto path = out_dir / ("psi_" + std::to_string(n) + ".csv");
        psi[n].write(path);
        r.outputs.push_back(detail::path_string(path));
    }
    return r;
}

/// Rows of the scan where admissibility and the growth diagnostic disagree.
struct ScanResult {
    std::vector<oscillator::ScanRow> rows;
    std::vector<double> disagreements;
};

inline ScanResult scan_with_crosscheck(double a_min, double a_max, double step, TransformKind kind,
                                       const QuadratureConfig& quad) {
    ScanResult s;
    s.rows = oscillator::scan(a_min, a_max, step, kind, quad);
    for (const auto& row : s.rows) {
        if (!(row.a > -0.5)) continue;
        // accepted rows carry no growth flag; compute it here for the cross-check only
        const bool growing = row.growth
                                 ? *row.growth
                                 : oscillator::growth_diagnostic({row.a, kind}, oscillator::kDefaultGrowthProbe, quad)
                                       .growing;
        if (growing == row.admissibility.accepted) s.disagreements.push_back(row.a);
    }
    return s;
}

inline RunReport cmd_scan(double a_min, double a_max, double step, TransformKind kind, const fs::path& out_dir,
                          const QuadratureConfig& quad = {}) {
    RunReport r;
    r.command = "scan";
    r.parameters["a_min"] = a_min;
    r.parameters["a_max"] = a_max;
    r.parameters["step"] = step;
    r.parameters["kind"] = std::string(to_string(kind));
    r.parameters["out"] = detail::path_string(out_dir);
    detail::add_quadrature(r, quad);

    const auto s = scan_with_crosscheck(a_min, a_max, step, kind, quad);
    r.add_check("oscillator.growth_diagnostic", static_cast<double>(s.disagreements.size()), 0.0);
    for (double a : s.disagreements)
        std::cerr << "admissibility and growth diagnostic disagree at a = " << format_number(a) << '\n';

    CsvTable t{{"a", "parseval_ok", "moment_ok", "derivative_ok", "parity_ok", "accepted", "growth_flag"}, {}};
    for (const auto& row : s.rows) {
        const auto& adm = row.admissibility;
        t.add_row({format_number(row.a), detail::flag(adm.parseval_ok), detail::flag(adm.moment_ok),
                   detail::flag(adm.derivative_conditions_ok), detail::flag(adm.parity_ok),
                   detail::flag(adm.accepted), row.growth ? detail::flag(*row.growth) : std::string()});
    }
    ensure_directory(out_dir);
    t.write(out_dir / "scan.csv");
    r.outputs.push_back(detail::path_string(out_dir / "scan.csv"));
    return r;
}

inline RunReport cmd_verify(std::string_view suite, const QuadratureConfig& quad = {}) {
    return suites::run_suite(suite, quad);
}

inline RunReport cmd_transform(TransformKind kind, std::string_view function, double k_max, const fs::path& out_dir,
                               const TransformOptions& opt = {}) {
    const auto tf = test_function(function);
    if (!(k_max >= 0.0)) throw DomainError("k_max must be nonnegative");
    if (!(opt.grid_spacing > 0.0)) throw DomainError("grid spacing must be positive");
    QuadratureConfig quad = opt.quad;
    if (!opt.radius_given) quad.truncation_radius = std::max(quad.truncation_radius, tf.radius);

    RunReport r;
    r.command = "transform";
    r.parameters["kind"] = std::string(to_string(kind));
    r.parameters["function"] = tf.name;
    r.parameters["k_max"] = k_max;
    r.parameters["out"] = detail::path_string(out_dir);
    r.parameters["grid_spacing"] = opt.grid_spacing;
    r.parameters["boundary_check"] = opt.boundary_check;
    detail::add_quadrature(r, quad);

    const auto k = arange(0.0, k_max, opt.grid_spacing);
    const auto big_f = transforms::forward_transform(
        tf.f, kind, k, quad, opt.boundary_check ? transforms::BoundaryCheck::enforce : transforms::BoundaryCheck::skip);
    if (const auto& exact = tf.closed_form(kind)) {
        double gap = 0.0;
        for (std::size_t i = 0; i < k.size(); ++i) gap = std::max(gap, std::abs(big_f.values()[i] - exact(k[i])));
        r.add_check("transforms.closed_form", gap, 1e-6);
    }

    CsvTable f_table{{"zeta", "f"}, {}};
    for (double z : arange(0.0, quad.truncation_radius, opt.grid_spacing)) f_table.add_numbers({z, tf.f(z)});
    CsvTable big_table{{"k", "F"}, {}};
    for (std::size_t i = 0; i < k.size(); ++i) big_table.add_numbers({k[i], big_f.values()[i]});

    ensure_directory(out_dir);
    const auto f_path = out_dir / ("f_" + tf.name + ".csv");
    const auto big_path = out_dir / ("F_" + std::string(to_string(kind)) + "_" + tf.name + ".csv");
    f_table.write(f_path);
    big_table.write(big_path);
    r.outputs.push_back(detail::path_string(f_path));
    r.outputs.push_back(detail::path_string(big_path));
    return r;
}

/// Numerical inversion of k^a e^{-k^2/4}, with the closed form alongside for
/// admissible a.
inline RunReport cmd_invert(double a, TransformKind kind, double zeta_max, const fs::path& out_dir,
                            double grid_spacing = 0.05, const QuadratureConfig& quad = {}) {
    if (!(grid_spacing > 0.0)) throw DomainError("grid spacing must be positive");
    if (!(zeta_max > 0.0)) throw DomainError("zeta_max must be positive");
    RunReport r;
    r.command = "invert";
    r.parameters["a"] = a;
    r.parameters["kind"] = std::string(to_string(kind));
    r.parameters["zeta_max"] = zeta_max;
    r.parameters["grid_spacing"] = grid_spacing;
    r.parameters["out"] = detail::path_string(out_dir);
    detail::add_quadrature(r, quad);

    const oscillator::CandidateExponent c{a, kind};
    const auto zeta = arange(0.0, zeta_max, grid_spacing);
    const auto inv = oscillator::invert_candidate(c, zeta, quad);
    if (inv.closed_form) r.add_check("oscillator.inversion_closed_form", inv.mismatch, oscillator::kClosedFormTol);

    CsvTable t{{"zeta", "numeric", "closed_form"}, {}};
    for (std::size_t i = 0; i < zeta.size(); ++i)
        t.add_row({format_number(zeta[i]), format_number(inv.numeric.values()[i]),
                   inv.closed_form ? format_number(inv.closed_form->values()[i]) : std::string()});
    ensure_directory(out_dir);
    const auto path = out_dir / "invert.csv";
    t.write(path);
    r.outputs.push_back(detail::path_string(path));
    return r;
}

inline RunReport cmd_oracle(const oracle::FdConfig& cfg, const std::optional<fs::path>& out_dir = std::nullopt) {
    RunReport r;
    r.command = "oracle";
    r.parameters["half_width"] = cfg.half_width;
    r.parameters["points"] = cfg.points;
    r.parameters["states"] = cfg.n_states;
    if (out_dir) r.parameters["out"] = detail::path_string(*out_dir);

    const auto states = oracle::fd_eigensolve(cfg);
    double worst = 0.0;
    double parity_errors = 0.0;
    CsvTable t{{"n", "epsilon", "exact", "error", "parity"}, {}};
    for (const auto& p : states) {
        const double exact = p.n + 0.5;
        worst = std::max(worst, std::abs(p.epsilon - exact));
        const Parity want = p.n % 2 == 0 ? Parity::even : Parity::odd;
        if (p.psi.parity() != want) parity_errors += 1.0;
        t.add_row({std::to_string(p.n), format_number(p.epsilon), format_number(exact),
                   format_number(p.epsilon - exact), std::string(to_string(p.psi.parity()))});
    }
    r.add_check("oracle.eigenvalue_agreement", worst, 1e-3);
    r.add_check("oracle.parity_alternation", parity_errors, 0.0);

    if (out_dir) {
        ensure_directory(*out_dir);
        const auto path = *out_dir / "oracle.csv";
        t.write(path);
        r.outputs.push_back(detail::path_string(path));
    } else {
        std::cerr << t.str();
    }
    return r;
}

}  // namespace qho::commands
