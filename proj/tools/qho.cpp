#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qho/commands.hpp"

namespace {

constexpr int kUsageError = 2;

void print(const qho::RunReport& r) {
    nlohmann::ordered_json j = r;
    std::cout << j.dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    using namespace qho;

    CLI::App app{"Quantum harmonic oscillator by unilateral Fourier transforms"};
    app.require_subcommand(1);
    app.fallthrough();

    QuadratureConfig quad;
    app.add_option("--tol", quad.rel_tol, "quadrature relative tolerance")->capture_default_str();
    auto* radius_opt = app.add_option("--radius", quad.truncation_radius, "quadrature truncation radius")
                           ->capture_default_str();
    app.add_option("--max-subdivisions", quad.max_subdivisions, "adaptive quadrature panel budget")
        ->capture_default_str();

    const std::vector<std::string> kinds = {"sine", "cosine"};

    auto* solve = app.add_subcommand("solve", "eigenpairs n <= n_max via the transform route");
    int n_max = 3;
    std::string solve_out;
    commands::SolveOptions solve_opt;
    solve->add_option("--n-max", n_max)->capture_default_str()->check(CLI::NonNegativeNumber);
    solve->add_option("--out", solve_out)->required();
    solve->add_option("--half-width", solve_opt.half_width)->capture_default_str()->check(CLI::PositiveNumber);
    solve->add_option("--grid-spacing", solve_opt.grid_spacing)->capture_default_str()->check(CLI::PositiveNumber);

    auto* scan = app.add_subcommand("scan", "admissibility scan over exponents a");
    double a_min = -0.45, a_max = 6.05, step = 0.05;
    std::string scan_kind = "cosine", scan_out;
    scan->add_option("--a-min", a_min)->capture_default_str();
    scan->add_option("--a-max", a_max)->capture_default_str();
    scan->add_option("--step", step)->capture_default_str()->check(CLI::PositiveNumber);
    scan->add_option("--kind", scan_kind)->capture_default_str()->check(CLI::IsMember(kinds));
    scan->add_option("--out", scan_out)->required();

    auto* verify = app.add_subcommand("verify", "run invariant suites, JSON report on stdout");
    std::string suite = "all";
    verify->add_option("suite", suite, "transforms | oscillator | oracle | all")
        ->capture_default_str()
        ->check(CLI::IsMember(std::vector<std::string>(suites::kSuiteNames.begin(), suites::kSuiteNames.end())));

    auto* transform = app.add_subcommand("transform", "transform a built-in test function");
    std::string tr_kind = "cosine", function = "gauss", tr_out;
    double k_max = 8.0;
    bool no_boundary = false;
    commands::TransformOptions tr_opt;
    transform->add_option("--kind", tr_kind)->capture_default_str()->check(CLI::IsMember(kinds));
    transform->add_option("--function", function)->capture_default_str()->check(CLI::IsMember(test_function_names()));
    transform->add_option("--k-max", k_max)->capture_default_str()->check(CLI::NonNegativeNumber);
    transform->add_option("--out", tr_out)->required();
    transform->add_option("--grid-spacing", tr_opt.grid_spacing)->capture_default_str()->check(CLI::PositiveNumber);
    transform->add_flag("--no-boundary-check", no_boundary, "skip the f(0) = 0 / f'(0) = 0 precondition");

    auto* invert = app.add_subcommand("invert", "invert k^a e^{-k^2/4}");
    double inv_a = 0.0, zeta_max = 6.0, inv_spacing = 0.05;
    std::string inv_kind = "cosine", inv_out;
    invert->add_option("--a", inv_a)->capture_default_str();
    invert->add_option("--kind", inv_kind)->capture_default_str()->check(CLI::IsMember(kinds));
    invert->add_option("--zeta-max", zeta_max)->capture_default_str()->check(CLI::PositiveNumber);
    invert->add_option("--grid-spacing", inv_spacing)->capture_default_str()->check(CLI::PositiveNumber);
    invert->add_option("--out", inv_out)->required();

    auto* oracle_cmd = app.add_subcommand("oracle", "finite-difference eigenvalues");
    oracle::FdConfig fd;
    std::optional<std::string> oracle_out;
    oracle_cmd->add_option("--half-width", fd.half_width)->capture_default_str();
    oracle_cmd->add_option("--points", fd.points)->capture_default_str();
    oracle_cmd->add_option("--states", fd.n_states)->capture_default_str();
    oracle_cmd->add_option("--out", oracle_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsageError;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    RunReport r;
    try {
        quad.validate();
        if (*solve) {
            solve_opt.quad = quad;
            r = commands::cmd_solve(n_max, solve_out, solve_opt);
        } else if (*scan) {
            r = commands::cmd_scan(a_min, a_max, step, parse_kind(scan_kind), scan_out, quad);
        } else if (*verify) {
            r = commands::cmd_verify(suite, quad);
        } else if (*transform) {
            tr_opt.quad = quad;
            tr_opt.boundary_check = !no_boundary;
            tr_opt.radius_given = radius_opt->count() > 0;
            r = commands::cmd_transform(parse_kind(tr_kind), function, k_max, tr_out, tr_opt);
        } else if (*invert) {
            r = commands::cmd_invert(inv_a, parse_kind(inv_kind), zeta_max, inv_out, inv_spacing, quad);
        } else {
            r = commands::cmd_oracle(fd, oracle_out ? std::optional<std::filesystem::path>(*oracle_out) : std::nullopt);
        }
    } catch (const DomainError& e) {
        std::cerr << e.what() << '\n';
        return kUsageError;
    } catch (const UnknownFunction& e) {
        std::cerr << e.what() << '\n';
        return kUsageError;
    } catch (const Error& e) {
        r.command = command;
        r.error = e.what();
        print(r);
        std::cerr << e.what() << '\n';
        return 1;
    }
    print(r);
    return exit_code(r);
}
