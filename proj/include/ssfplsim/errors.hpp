#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ssfplsim {

// Precondition / contract breaches (grid mismatch, bad arguments).
class contract_violation : public std::logic_error {
public:
    explicit contract_violation(const std::string& what) : std::logic_error(what) {}
};

// All kernel values vanished at a query point: K(d_theta/h) == 0 for every
// training curve. Carries enough context for the caller to widen h or skip.
class empty_neighborhood : public std::runtime_error {
public:
    empty_neighborhood(std::string where, double h)
        : std::runtime_error("empty neighborhood at " + where +
                             " (h=" + std::to_string(h) + ")"),
          location(std::move(where)), bandwidth(h) {}
    std::string location;
    double bandwidth;
};

// All pairwise projected distances are zero for a candidate direction.
class degenerate_projection : public std::runtime_error {
public:
    degenerate_projection() : std::runtime_error("all pairwise projected distances are zero") {}
};

class degenerate_direction : public std::runtime_error {
public:
    degenerate_direction() : std::runtime_error("cannot calibrate the zero coefficient vector") {}
};

class singular_design : public std::runtime_error {
public:
    explicit singular_design(const std::string& what) : std::runtime_error(what) {}
};

class numerical_divergence : public std::runtime_error {
public:
    explicit numerical_divergence(const std::string& what) : std::runtime_error(what) {}
};

// Every (theta, h) combination failed; no fit could be produced.
class no_feasible_fit : public std::runtime_error {
public:
    explicit no_feasible_fit(const std::string& what) : std::runtime_error(what) {}
};

// CSV / schema / config reading problems, with location when known.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& what, std::string file = {}, std::size_t row = 0,
                std::size_t col = 0)
        : std::runtime_error(what + (file.empty() ? "" : " [" + file +
                             (row ? ":" + std::to_string(row) : "") +
                             (col ? ":" + std::to_string(col) : "") + "]")),
          path(std::move(file)), line(row), column(col) {}
    std::string path;
    std::size_t line = 0;
    std::size_t column = 0;
};

}  // namespace ssfplsim
