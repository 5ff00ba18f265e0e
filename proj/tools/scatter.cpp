// scatter: phase shifts of finite-range potentials by Dalgarno-Lewis
// perturbation theory about a constant well, checked against a power-series
// solution.

#include <iostream>

#include <CLI11.hpp>

#include "dlscatter/scatter_cli.hpp"

namespace cli = dlscatter::cli;

namespace {

void add_common(CLI::App* cmd, cli::CommonOptions& c, bool with_order = true) {
    if (with_order)
        cmd->add_option("--order", c.order, "Highest perturbation order (0-10)")
            ->capture_default_str();
    cmd->add_option("--grid-size", c.grid_size, "Odd number of quadrature points on [0,1]")
        ->capture_default_str();
    cmd->add_option("--tol", c.tol, "Relative tail tolerance of the power-series oracle")
        ->capture_default_str();
    cmd->add_flag("--csv", c.csv, "Print CSV instead of aligned columns");
    cmd->add_option("--output", c.output, "Also write the result to this path");
}

void add_grid(CLI::App* cmd, dlscatter::KGrid& g) {
    cmd->add_option("--kmin", g.kmin, "Smallest wavenumber")->capture_default_str();
    cmd->add_option("--kmax", g.kmax, "Largest wavenumber")->capture_default_str();
    cmd->add_option("--M", g.M, "Number of grid points, endpoints included")->capture_default_str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Phase shifts by Dalgarno-Lewis perturbation theory"};
    app.require_subcommand(1);

    cli::PhaseArgs phase;
    auto* phase_cmd = app.add_subcommand("phase", "Phase shift at one wavenumber, order by order");
    phase_cmd->add_option("potential", phase.potential, "parabolic:A=<real> | taylor:<w0>,<w1>,...")
        ->required();
    phase_cmd->add_option("--k", phase.k, "Wavenumber")->required();
    add_common(phase_cmd, phase.common);

    cli::CurveArgs curve;
    auto* curve_cmd = app.add_subcommand("curve", "Percentage error per order over a k grid (CSV)");
    curve_cmd->add_option("potential", curve.potential, "parabolic:A=<real> | taylor:<w0>,<w1>,...")
        ->required();
    add_grid(curve_cmd, curve.grid);
    add_common(curve_cmd, curve.common);

    cli::TableArgs table;
    auto* table_cmd =
        app.add_subcommand("table", "Average relative error per order for parabolic wells");
    table_cmd->add_option("--A", table.As, "Comma-separated well strengths")
        ->delimiter(',')
        ->capture_default_str();
    add_grid(table_cmd, table.grid);
    add_common(table_cmd, table.common);

    cli::BoundStatesArgs bound;
    auto* bound_cmd = app.add_subcommand(
        "bound-states", "Bound states of the potential and of its mean-depth reference well");
    bound_cmd->add_option("potential", bound.potential, "parabolic:A=<real> | taylor:<w0>,<w1>,...")
        ->required();
    bound_cmd->add_option("--kappa-max", bound.kappa_max, "Upper end of the decay-constant scan");
    bound_cmd->add_option("--tol", bound.tol, "Relative tail tolerance of the power-series oracle")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return cli::kUsageError;
    }

    if (*phase_cmd)
        return cli::cmd_phase(phase, std::cout, std::cerr);
    if (*curve_cmd)
        return cli::cmd_curve(curve, std::cout, std::cerr);
    if (*table_cmd)
        return cli::cmd_table(table, std::cout, std::cerr);
    return cli::cmd_bound_states(bound, std::cout, std::cerr);
}
