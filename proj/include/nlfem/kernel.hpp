#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "nlfem/errors.hpp"
#include "nlfem/geometry.hpp"
#include "nlfem/polynomial.hpp"

namespace nlfem {

enum class KernelTier { R = 0, Rbar = 1, Rbarbar = 2 };

/// Radial kernel profile R on [0,1] (zero beyond) together with its tail
/// antiderivatives Rbar, Rbarbar and the delta-scaled normalization.
///
/// The scaled kernels are R_delta(x,y) = c_delta * R(|x-y|^2 / (4 delta^2)),
/// so every tier vanishes identically for |x-y| >= 2 delta.  alpha2 satisfies
/// 2 pi alpha2 * int_0^1 Rbar(r^2) r dr = 1 and c_delta = alpha2 / delta^2.
struct KernelFamily {
    double delta = 0.0;
    Polynomial r_poly, rbar_poly, rbarbar_poly;
    double alpha2 = 0.0;
    double c_delta = 0.0;

    // c_delta * coeff_k / (4 delta^2)^k per tier, so that the integral of a
    // scaled tier over a clipped triangle is a plain dot with the monomial
    // integrals of |y - c|^{2k}.  Built once at construction.
    std::array<std::vector<double>, 3> scaled_coeffs;
    int max_power = 0;  // largest k with a nonzero scaled coefficient in any tier

    const Polynomial& tier(KernelTier t) const {
        switch (t) {
            case KernelTier::R: return r_poly;
            case KernelTier::Rbar: return rbar_poly;
            default: return rbarbar_poly;
        }
    }

    /// c_delta * tier(|x-y|^2/(4 delta^2)); exactly zero outside the support.
    double eval_scaled(KernelTier t, Vec2 x, Vec2 y) const {
        double s = squared_norm(x - y) / (4.0 * delta * delta);
        if (s >= 1.0) return 0.0;
        return c_delta * tier(t)(s);
    }
};

/// Builds the kernel family from the coefficients of R and the horizon delta.
inline KernelFamily make_kernel_family(const std::vector<double>& r_coeffs, double delta) {
    if (!(delta > 0.0)) throw InvalidDelta("delta must be positive");
    KernelFamily kf;
    kf.delta = delta;
    kf.r_poly = Polynomial(r_coeffs);
    kf.rbar_poly = antiderivative_tail(kf.r_poly);
    kf.rbarbar_poly = antiderivative_tail(kf.rbar_poly);
    // moment = int_0^1 Rbar(r^2) r dr = (1/2) int_0^1 Rbar(u) du, exact in coefficients
    double moment = 0.5 * kf.rbar_poly.integral_01();
    if (!(moment > 0.0)) throw NonNormalizable("kernel moment integral must be positive");
    kf.alpha2 = 1.0 / (2.0 * std::numbers::pi * moment);
    kf.c_delta = kf.alpha2 / (delta * delta);

    const Polynomial* tiers[3] = {&kf.r_poly, &kf.rbar_poly, &kf.rbarbar_poly};
    double inv4d2 = 1.0 / (4.0 * delta * delta);
    for (int t = 0; t < 3; ++t) {
        const auto& c = tiers[t]->coeffs();
        kf.scaled_coeffs[t].resize(c.size());
        double scale = kf.c_delta;
        for (std::size_t k = 0; k < c.size(); ++k) {
            kf.scaled_coeffs[t][k] = c[k] * scale;
            if (c[k] != 0.0) kf.max_power = std::max(kf.max_power, static_cast<int>(k));
            scale *= inv4d2;
        }
    }
    return kf;
}

/// Parses a CLI kernel preset: "const", "quadratic", or "poly:c0,c1,...".
inline std::vector<double> parse_kernel_preset(const std::string& spec) {
    if (spec == "const") return {1.0};
    if (spec == "quadratic") return {1.0, -1.0};
    if (spec.rfind("poly:", 0) == 0) {
        std::vector<double> coeffs;
        std::stringstream ss(spec.substr(5));
        std::string item;
        while (std::getline(ss, item, ',')) {
            std::size_t pos = 0;
            double v = std::stod(item, &pos);
            if (pos != item.size()) throw std::invalid_argument("bad coefficient '" + item + "'");
            coeffs.push_back(v);
        }
        if (coeffs.empty()) throw std::invalid_argument("poly: needs at least one coefficient");
        return coeffs;
    }
    throw std::invalid_argument("unknown kernel preset '" + spec + "'");
}

} // namespace nlfem
