#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "nlfem/assembly.hpp"

namespace nlfem {

/// Manufactured problem: forcing f, boundary flux g, exact local solution.
struct Problem {
    ScalarField f;
    ScalarField g;
    ScalarField exact;
};

/// f = 1, g = 0; u = 1 solves the nonlocal model exactly at every delta.
inline Problem constant_problem() {
    return {[](Vec2) { return 1.0; }, [](Vec2) { return 0.0; }, [](Vec2) { return 1.0; }};
}

/// u = cos(pi x) cos(pi y) on the unit square: -Laplace u + u = (2 pi^2 + 1) u
/// and the normal derivative vanishes on all four sides.
inline Problem cosine_problem() {
    constexpr double pi = std::numbers::pi;
    auto u = [](Vec2 p) { return std::cos(pi * p.x) * std::cos(pi * p.y); };
    return {[u](Vec2 p) { return (2.0 * pi * pi + 1.0) * u(p); },
            [](Vec2) { return 0.0; },
            u};
}

inline Problem named_problem(const std::string& name) {
    if (name == "constant") return constant_problem();
    if (name == "cosine") return cosine_problem();
    throw std::invalid_argument("unknown problem '" + name + "'");
}

} // namespace nlfem
