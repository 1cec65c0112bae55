// Command-line front end: one computation per run, CSV/PGM artifacts.

#include <cstdlib>
#include <exception>
#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "ptcs/cli.hpp"

namespace {

constexpr int kExitDomain = 2;
constexpr int kExitNumerical = 3;

unsigned worker_count()
{
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const char* env = std::getenv("PT_REVIVAL_THREADS");
    if (env == nullptr || *env == '\0')
        return hw;
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (*end != '\0' || cap < 1)
        throw ptcs::DomainError("PT_REVIVAL_THREADS must be a positive integer, got '" + std::string(env) + "'");
    return std::min(hw, static_cast<unsigned>(cap));
}

} // namespace

int main(int argc, char** argv)
{
    using namespace ptcs::cli;
    RunConfig cfg;
    std::string command;
    std::string family = "spt-docs";
    std::string format = "csv";
    double k = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double energy = 0.0;

    CLI::App app{"Coherent states of the trigonometric Poschl-Teller well: revivals and carpets", "ptcs"};
    app.set_config("--config", "", "Read key=value settings from a file; command-line flags take precedence");
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.add_option("command", command, "coeffs | snapshot | carpet | autocorr | fractional | xpect | classical")
        ->required()
        ->check(CLI::IsMember({"coeffs", "snapshot", "carpet", "autocorr", "fractional", "xpect", "classical"}));

    app.add_option("--family", family, "spt-docs | spt-aocs | pt-docs")
        ->check(CLI::IsMember({"spt-docs", "spt-aocs", "pt-docs"}))
        ->capture_default_str();
    app.add_option("--alpha", cfg.alpha, "Well parameter alpha > 0")->capture_default_str();
    app.add_option("--rho", cfg.rho, "Well parameter rho > 1")->capture_default_str();
    auto* k_opt = app.add_option("--k", k, "Second well parameter k > 1 (pt-docs, default 5)");
    app.add_option("--mass", cfg.mass, "Particle mass")->capture_default_str();
    auto* beta_opt = app.add_option("--beta", beta, "Displacement parameter, |beta| < 1 (default 0.8)");
    auto* gamma_opt = app.add_option("--gamma", gamma, "Annihilation-operator parameter (spt-aocs, default 30)");
    app.add_option("--tol", cfg.tol, "Coefficient truncation tolerance")->capture_default_str();
    app.add_option("--coeffs-in", cfg.coeffs_in, "Read coefficients from an n,d_n CSV instead of building them");

    app.add_option("--nx", cfg.nx, "Spatial resolution")->capture_default_str();
    app.add_option("--nt", cfg.nt, "Number of time samples")->capture_default_str();
    app.add_option("--t-min", cfg.t_min, "First time, units of T_rev")->capture_default_str();
    app.add_option("--t-max", cfg.t_max, "Last time, units of T_rev")->capture_default_str();
    app.add_option("--t", cfg.times, "Snapshot time(s), units of T_rev")->capture_default_str();
    app.add_option("--grid", cfg.grid, "auto | uniform | gauss")->capture_default_str();

    app.add_option("--r", cfg.r, "Fractional revival numerator")->capture_default_str();
    app.add_option("--s", cfg.s, "Fractional revival denominator")->capture_default_str();
    app.add_option("--quantity", cfg.quantity, "autocorr output: abs2 | complex")->capture_default_str();
    app.add_option("--method", cfg.method, "xpect: closed | quadrature | effective")->capture_default_str();
    auto* energy_opt = app.add_option("--energy", energy, "classical: orbit energy (default: mean energy of the state)");
    app.add_option("--a", cfg.a, "classical: length scale (default 1/(2 alpha))");

    app.add_option("--format", format, "csv | pgm (pgm for carpet only)")
        ->check(CLI::IsMember({"csv", "pgm"}))
        ->capture_default_str();
    app.add_option("-o,--output", cfg.output, "Output path (default <command>.<format>)");

    if (argc <= 1) {
        std::cerr << app.help();
        return kExitDomain;
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return kExitDomain;
    }

    try {
        cfg.command = parse_command(command);
        cfg.family = parse_family(family);
        cfg.format = format == "pgm" ? Format::Pgm : Format::Csv;
        if (*k_opt)
            cfg.k = k;
        if (*beta_opt)
            cfg.beta = beta;
        if (*gamma_opt)
            cfg.gamma = gamma;
        if (*energy_opt)
            cfg.energy = energy;
        cfg.threads = worker_count();
        run(cfg, std::cout);
    } catch (const ptcs::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDomain;
    }
    return 0;
}
