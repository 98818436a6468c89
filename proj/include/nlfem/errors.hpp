#pragma once

#include <stdexcept>
#include <string>

namespace nlfem {

struct InvalidDelta : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NonNormalizable : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct DegenerateTriangle : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DegenerateGeometry : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct UnsupportedOrder : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ParseError : std::runtime_error {
    int line = 0;
    ParseError(const std::string& what, int line_no)
        : std::runtime_error("line " + std::to_string(line_no) + ": " + what), line(line_no) {}
};

struct OrientationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonManifoldError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct HorizonTooSmall : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotConverged : std::runtime_error {
    int iterations = 0;
    double residual = 0.0;
    NotConverged(int iters, double res)
        : std::runtime_error("solver did not converge after " + std::to_string(iters) +
                             " iterations (relative residual " + std::to_string(res) + ")"),
          iterations(iters), residual(res) {}
};

struct NonSymmetric : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ZeroDiagonal : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RegimeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace nlfem
