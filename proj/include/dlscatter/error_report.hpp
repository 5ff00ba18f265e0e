#pragma once

// Perturbative versus exact phase shifts over a k grid, and the CSV form of
// the per-k error curves.

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <exception>
#include <istream>
#include <limits>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "dlscatter/dalgarno_lewis.hpp"
#include "dlscatter/reference_solver.hpp"

namespace dlscatter {

/// Uniform grid kmin..kmax with both endpoints, M points.
struct KGrid {
    double kmin = 0.1;
    double kmax = 5.0;
    int M = 50;

    std::vector<double> points() const {
        if (!(kmin > 0.0) || !(kmax > kmin) || M < 2)
            throw std::invalid_argument("KGrid: need 0 < kmin < kmax and M >= 2");
        std::vector<double> ks(static_cast<std::size_t>(M));
        for (int i = 0; i < M; ++i)
            ks[i] = i + 1 == M ? kmax : kmin + (kmax - kmin) * i / (M - 1);
        return ks;
    }
};

/// Points where the exact phase shift is this small are left out of relative errors.
inline constexpr double kExclusionThreshold = 1e-8;

struct ErrorRow {
    double k = 0.0;
    double delta_ps = 0.0;
    std::vector<double> delta_pt; ///< partial sums through order 0..J
    std::vector<double> rel_err;  ///< |(delta_ps - delta_pt) / delta_ps|, empty when excluded
    bool excluded = false;
};

struct ErrorReport {
    int order = 0;
    std::vector<ErrorRow> rows;
    std::vector<double> eps_av; ///< mean relative error per order, NaN if every point is excluded

    std::vector<double> kgrid() const {
        std::vector<double> ks;
        for (const auto& r : rows)
            ks.push_back(r.k);
        return ks;
    }

    /// log10 of the relative error per row and order; NaN on excluded rows.
    std::vector<std::vector<double>> eps_log() const {
        std::vector<std::vector<double>> out;
        for (const auto& r : rows) {
            std::vector<double> l(order + 1, std::numeric_limits<double>::quiet_NaN());
            if (!r.excluded)
                for (int j = 0; j <= order; ++j)
                    l[j] = std::log10(r.rel_err[j]);
            out.push_back(std::move(l));
        }
        return out;
    }
};

struct ReportOptions {
    PerturbOptions perturb;
    SeriesOptions series;
    unsigned threads = 0; ///< 0: hardware concurrency
};

inline ErrorRow compare_at(const PolynomialPotential& p, double k, int J, const ReportOptions& opt) {
    ErrorRow row;
    row.k = k;
    row.delta_ps = phase_shift_oracle(p, k, opt.series);
    row.delta_pt = perturb(p, k, J, opt.perturb).partial_sums;
    row.excluded = std::abs(row.delta_ps) < kExclusionThreshold;
    if (!row.excluded)
        for (double pt : row.delta_pt)
            row.rel_err.push_back(std::abs((row.delta_ps - pt) / row.delta_ps));
    return row;
}

/// Runs every k independently on a small worker pool; rows stay in grid order.
inline ErrorReport build_error_report(const PolynomialPotential& p, const std::vector<double>& ks,
                                      int J, const ReportOptions& opt = {}) {
    ErrorReport rep;
    rep.order = J;
    rep.rows.resize(ks.size());

    unsigned workers = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(ks.size()));
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (std::size_t i = next++; i < ks.size(); i = next++) {
            try {
                rep.rows[i] = compare_at(p, ks[i], J, opt);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < workers; ++t)
            pool.emplace_back(work);
    }
    if (failure)
        std::rethrow_exception(failure);

    rep.eps_av.assign(J + 1, 0.0);
    std::size_t used = 0;
    for (const auto& r : rep.rows) {
        if (r.excluded)
            continue;
        ++used;
        for (int j = 0; j <= J; ++j)
            rep.eps_av[j] += r.rel_err[j];
    }
    for (auto& e : rep.eps_av)
        e = used ? e / static_cast<double>(used) : std::numeric_limits<double>::quiet_NaN();
    return rep;
}

/// Shortest decimal that reads back to the same double; "." separator, no locale.
inline std::string format_double(double x) {
    if (x == 0.0)
        x = 0.0; // drop the sign of -0
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, end);
}

inline double parse_double(std::string_view s) {
    double v = 0.0;
    const auto* first = s.data();
    if (!s.empty() && s.front() == '+')
        ++first;
    auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || first == s.data() + s.size())
        throw std::invalid_argument("not a number: '" + std::string(s) + "'");
    return v;
}

/// One line of a curve file: percentage errors as in the figure captions.
struct CurveRow {
    double k = 0.0;
    double delta_ps = 0.0;
    std::vector<double> delta_pt;
    std::vector<std::optional<double>> err_pct;
    bool excluded = false;

    friend bool operator==(const CurveRow&, const CurveRow&) = default;
};

inline std::vector<CurveRow> curve_rows(const ErrorReport& rep) {
    std::vector<CurveRow> out;
    for (const auto& r : rep.rows) {
        CurveRow c{r.k, r.delta_ps, r.delta_pt, {}, r.excluded};
        for (int j = 0; j <= rep.order; ++j)
            c.err_pct.push_back(r.excluded ? std::nullopt : std::optional(100.0 * r.rel_err[j]));
        out.push_back(std::move(c));
    }
    return out;
}

inline std::string curve_header(int J) {
    std::string h = "k,delta_ps";
    for (int j = 0; j <= J; ++j)
        h += ",delta_pt_" + std::to_string(j);
    for (int j = 0; j <= J; ++j)
        h += ",err_pct_" + std::to_string(j);
    return h + ",excluded";
}

/// Writes `# `-prefixed comment lines, the header, then one row per k.
inline void write_curve_csv(std::ostream& os, const ErrorReport& rep,
                            const std::vector<std::string>& comments = {}) {
    for (const auto& c : comments)
        os << "# " << c << '\n';
    os << curve_header(rep.order) << '\n';
    for (const auto& r : curve_rows(rep)) {
        os << format_double(r.k) << ',' << format_double(r.delta_ps);
        for (double d : r.delta_pt)
            os << ',' << format_double(d);
        for (const auto& e : r.err_pct)
            os << ',' << (e ? format_double(*e) : std::string());
        os << ',' << (r.excluded ? 1 : 0) << '\n';
    }
}

inline std::vector<CurveRow> read_curve_csv(std::istream& is) {
    std::string line;
    int J = -1;
    std::vector<CurveRow> rows;
    while (std::getline(is, line)) {
        if (line.empty() || line.front() == '#')
            continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        for (std::string cell; std::getline(ss, cell, ',');)
            f.push_back(cell);
        if (!line.empty() && line.back() == ',')
            f.emplace_back();
        if (J < 0) {
            if (f.size() < 5 || f.front() != "k" || (f.size() - 3) % 2 != 0)
                throw std::invalid_argument("read_curve_csv: bad header '" + line + "'");
            J = static_cast<int>((f.size() - 3) / 2) - 1;
            if (line != curve_header(J))
                throw std::invalid_argument("read_curve_csv: bad header '" + line + "'");
            continue;
        }
        if (f.size() != static_cast<std::size_t>(2 * (J + 1) + 3))
            throw std::invalid_argument("read_curve_csv: wrong field count in '" + line + "'");
        CurveRow r;
        r.k = parse_double(f[0]);
        r.delta_ps = parse_double(f[1]);
        for (int j = 0; j <= J; ++j)
            r.delta_pt.push_back(parse_double(f[2 + j]));
        for (int j = 0; j <= J; ++j) {
            const auto& cell = f[3 + J + j];
            r.err_pct.push_back(cell.empty() ? std::nullopt : std::optional(parse_double(cell)));
        }
        r.excluded = f.back() == "1";
        rows.push_back(std::move(r));
    }
    if (J < 0)
        throw std::invalid_argument("read_curve_csv: missing header row");
    return rows;
}

} // namespace dlscatter
