#pragma once

// Subcommands of the `scatter` tool. Each writes to the given stream and
// returns a process exit code; tools/scatter.cpp only wires up the flags.

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <locale>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "dlscatter/dalgarno_lewis.hpp"
#include "dlscatter/error_report.hpp"
#include "dlscatter/reference_solver.hpp"
#include "dlscatter/square_well.hpp"

namespace dlscatter::cli {

enum ExitCode : int {
    kSuccess = 0,
    kIoError = 1,
    kUsageError = 2,
    kNonConvergence = 3,
};

/// `parabolic:A=<real>` or `taylor:<w0>,<w1>,...`.
inline PolynomialPotential parse_potential(std::string_view literal) {
    constexpr std::string_view parabolic = "parabolic:A=";
    constexpr std::string_view taylor = "taylor:";
    if (literal.starts_with(parabolic))
        return parabolic_well(parse_double(literal.substr(parabolic.size())));
    if (literal.starts_with(taylor)) {
        std::vector<double> coeffs;
        auto rest = literal.substr(taylor.size());
        for (;;) {
            const auto comma = rest.find(',');
            coeffs.push_back(parse_double(rest.substr(0, comma)));
            if (comma == std::string_view::npos)
                break;
            rest = rest.substr(comma + 1);
        }
        return PolynomialPotential(std::move(coeffs));
    }
    throw std::invalid_argument("unrecognised potential '" + std::string(literal) +
                                "' (expected parabolic:A=<real> or taylor:<w0>,<w1>,...)");
}

struct CommonOptions {
    int order = 3;
    std::size_t grid_size = 2001;
    double tol = 1e-14;
    bool csv = false;
    std::string output;

    ReportOptions report() const {
        ReportOptions r;
        r.perturb.grid_size = grid_size;
        r.series.tol = tol;
        return r;
    }

    std::string describe() const {
        return "order=" + std::to_string(order) + " grid-size=" + std::to_string(grid_size) +
               " tol=" + format_double(tol);
    }
};

namespace detail {

template <class Body>
int guarded(std::ostream& err, Body&& body) {
    try {
        return body();
    } catch (const NonConvergence& e) {
        err << "error: " << e.what() << '\n';
        return kNonConvergence;
    } catch (const ResidualCheckFailure& e) {
        err << "error: " << e.what() << '\n';
        return kNonConvergence;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }
}

inline std::string fixed(double x, int width = 22, int precision = 15) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    if (x == 0.0)
        x = 0.0;
    os << std::setw(width) << std::setprecision(precision) << std::scientific << x;
    return os.str();
}

inline std::string csv_join(const std::vector<double>& xs) {
    std::string out;
    for (double x : xs)
        out += "," + format_double(x);
    return out;
}

inline bool write_file(const std::string& path, const std::string& content, std::ostream& err) {
    std::ofstream f(path, std::ios::binary);
    if (f)
        f << content;
    if (!f) {
        err << "error: cannot write '" << path << "'\n";
        return false;
    }
    return true;
}

} // namespace detail

struct PhaseArgs {
    std::string potential;
    double k = 0.0;
    CommonOptions common;
};

inline int cmd_phase(const PhaseArgs& a, std::ostream& out, std::ostream& err) {
    return detail::guarded(err, [&] {
        const auto p = parse_potential(a.potential);
        const int J = a.common.order;
        if (J < 0 || J > kMaxPerturbationOrder)
            throw std::invalid_argument("--order must be in [0, 10]");
        if (!(a.k > 0.0))
            throw std::invalid_argument("--k must be positive");
        const auto opts = a.common.report();
        const double ps = phase_shift_oracle(p, a.k, opts.series);
        const auto r = perturb(p, a.k, J, opts.perturb);
        const bool excluded = std::abs(ps) < kExclusionThreshold;
        std::vector<double> rel;
        for (double s : r.partial_sums)
            rel.push_back(std::abs((ps - s) / ps));
        auto rel_field = [&](int j) { return excluded ? std::string() : format_double(rel[j]); };

        std::ostringstream os;
        os << "# scatter phase potential=" << a.potential << " k=" << format_double(a.k) << ' '
           << a.common.describe() << '\n';
        if (a.common.csv) {
            os << "k,v0,delta_ps";
            for (int j = 0; j <= J; ++j)
                os << ",delta_" << j;
            for (int j = 0; j <= J; ++j)
                os << ",sum_" << j;
            for (int j = 1; j <= J; ++j)
                os << ",C_" << j;
            for (int j = 0; j <= J; ++j)
                os << ",rel_err_" << j;
            os << '\n'
               << format_double(a.k) << ',' << format_double(r.reference_depth.value) << ','
               << format_double(ps) << detail::csv_join(r.deltas) << detail::csv_join(r.partial_sums)
               << detail::csv_join(r.Cs);
            for (int j = 0; j <= J; ++j)
                os << ',' << rel_field(j);
            os << '\n';
        } else {
            os << "reference depth v0 = " << format_double(r.reference_depth.value) << '\n'
               << "delta_ps           = " << format_double(ps) << '\n'
               << std::setw(3) << "j" << std::setw(23) << "delta_j" << std::setw(23) << "partial_sum"
               << std::setw(23) << "C_j" << std::setw(23) << "rel_err" << '\n';
            for (int j = 0; j <= J; ++j) {
                os << std::setw(3) << j << ' ' << detail::fixed(r.deltas[j]) << ' '
                   << detail::fixed(r.partial_sums[j]) << ' '
                   << (j == 0 ? std::string(22 - 1, ' ') + "-" : detail::fixed(r.Cs[j - 1])) << ' '
                   << (excluded ? std::string(22 - 8, ' ') + "excluded" : detail::fixed(rel[j]))
                   << '\n';
            }
        }
        out << os.str();
        if (!a.common.output.empty() && !detail::write_file(a.common.output, os.str(), err))
            return int(kIoError);
        return int(kSuccess);
    });
}

struct CurveArgs {
    std::string potential;
    KGrid grid;
    CommonOptions common;
};

inline int cmd_curve(const CurveArgs& a, std::ostream& out, std::ostream& err) {
    return detail::guarded(err, [&] {
        const auto p = parse_potential(a.potential);
        if (a.common.order < 0 || a.common.order > kMaxPerturbationOrder)
            throw std::invalid_argument("--order must be in [0, 10]");
        const auto rep = build_error_report(p, a.grid.points(), a.common.order, a.common.report());
        std::ostringstream os;
        write_curve_csv(os, rep,
                        {"scatter curve potential=" + a.potential + " kmin=" +
                         format_double(a.grid.kmin) + " kmax=" + format_double(a.grid.kmax) +
                         " M=" + std::to_string(a.grid.M) + " " + a.common.describe()});
        if (a.common.output.empty()) {
            out << os.str();
        } else {
            if (!detail::write_file(a.common.output, os.str(), err))
                return int(kIoError);
            out << "wrote " << rep.rows.size() << " rows to " << a.common.output << '\n';
        }
        return int(kSuccess);
    });
}

struct TableArgs {
    std::vector<double> As{6.0, 12.0, 18.0, 24.0};
    KGrid grid;
    CommonOptions common;
};

inline int cmd_table(const TableArgs& a, std::ostream& out, std::ostream& err) {
    return detail::guarded(err, [&] {
        const int J = a.common.order;
        if (J < 0 || J > kMaxPerturbationOrder)
            throw std::invalid_argument("--order must be in [0, 10]");
        if (a.As.empty())
            throw std::invalid_argument("--A needs at least one value");
        const auto ks = a.grid.points();
        std::vector<std::vector<double>> table;
        for (double A : a.As)
            table.push_back(build_error_report(parabolic_well(A), ks, J, a.common.report()).eps_av);

        const std::string banner = "scatter table v(x)=Ax(x-1) kmin=" + format_double(a.grid.kmin) +
                                   " kmax=" + format_double(a.grid.kmax) +
                                   " M=" + std::to_string(a.grid.M) + " " + a.common.describe();
        std::ostringstream csv;
        csv << "# " << banner << '\n' << "A";
        for (int j = 0; j <= J; ++j)
            csv << ",eps_av_" << j;
        csv << '\n';
        for (std::size_t i = 0; i < a.As.size(); ++i)
            csv << format_double(a.As[i]) << detail::csv_join(table[i]) << '\n';

        if (a.common.csv) {
            out << csv.str();
        } else {
            std::ostringstream os;
            os << "# " << banner << '\n' << std::setw(8) << "A";
            for (int j = 0; j <= J; ++j)
                os << std::setw(14) << ("order " + std::to_string(j));
            os << '\n';
            for (std::size_t i = 0; i < a.As.size(); ++i) {
                os << std::setw(8) << format_double(a.As[i]);
                for (double e : table[i])
                    os << ' ' << detail::fixed(e, 13, 4);
                os << '\n';
            }
            out << os.str();
        }
        if (!a.common.output.empty() && !detail::write_file(a.common.output, csv.str(), err))
            return int(kIoError);
        return int(kSuccess);
    });
}

struct BoundStatesArgs {
    std::string potential;
    std::optional<double> kappa_max;
    double tol = 1e-14;
};

inline int cmd_bound_states(const BoundStatesArgs& a, std::ostream& out, std::ostream& err) {
    return detail::guarded(err, [&] {
        const auto p = parse_potential(a.potential);
        SeriesOptions so;
        so.tol = a.tol;
        const double kmax = a.kappa_max.value_or(default_kappa_max(p));
        const auto states = bound_states(p, kmax, so);

        std::ostringstream os;
        os << "# scatter bound-states potential=" << a.potential
           << " kappa-max=" << format_double(kmax) << " tol=" << format_double(a.tol) << '\n';
        os << std::setw(5) << "state" << std::setw(23) << "kappa" << std::setw(23) << "energy" << '\n';
        for (std::size_t i = 0; i < states.size(); ++i)
            os << std::setw(5) << i << ' ' << detail::fixed(states.kappas[i]) << ' '
               << detail::fixed(states.energies[i]) << '\n';
        os << "bound states: " << states.size() << '\n';

        std::optional<int> reference;
        try {
            const auto v0 = mean_depth(p);
            reference = well_bound_count(v0);
            os << "reference well v0 = " << format_double(v0.value) << ": " << *reference
               << " bound states\n";
        } catch (const NotAWell&) {
            os << "reference well: none (potential is repulsive on average)\n";
        }
        const bool match = reference && *reference == static_cast<int>(states.size());
        os << (match ? "MATCH" : "MISMATCH") << '\n';
        out << os.str();
        return int(kSuccess);
    });
}

} // namespace dlscatter::cli
