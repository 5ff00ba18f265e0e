#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace dlscatter {

/// The power-series oracle could not meet its truncation tolerance.
class NonConvergence : public std::runtime_error {
public:
    explicit NonConvergence(const std::string& what) : std::runtime_error(what) {}
};

/// A sampled correction failed its ODE residual check; usually the grid is too coarse.
class ResidualCheckFailure : public std::runtime_error {
public:
    explicit ResidualCheckFailure(const std::string& what) : std::runtime_error(what) {}
};

class GridMismatch : public std::invalid_argument {
public:
    explicit GridMismatch(const std::string& what) : std::invalid_argument(what) {}
};

/// The potential is repulsive on average, so no constant-well reference exists.
class NotAWell : public std::domain_error {
public:
    explicit NotAWell(const std::string& what) : std::domain_error(what) {}
};

namespace detail {

inline std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

} // namespace detail

} // namespace dlscatter
