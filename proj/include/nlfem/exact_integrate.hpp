#pragma once

#include <cmath>
#include <cstddef>

#include "nlfem/errors.hpp"
#include "nlfem/geometry.hpp"
#include "nlfem/kernel.hpp"
#include "nlfem/polynomial.hpp"

namespace nlfem {

/// Oriented circular wedge: triangle (c, p, q) intersected with the disk of
/// radius rho about c.  Orientation (and the sign of its measure) follows
/// the sign of cross(p - c, q - c).
struct Wedge {
    Vec2 c, p, q;
    double rho = 0.0;
};

/// Integral of sec^n over [theta0, theta1], computed by the upward recurrence
///   int sec^n = sec^{n-2} tan / (n-1) + (n-2)/(n-1) int sec^{n-2}
/// from the closed-form bases n=1 (log|sec+tan|) and n=2 (tan).
inline double secant_power_integral(int n, double theta0, double theta1) {
    if (n < 1) throw UnsupportedOrder("secant_power_integral: n must be >= 1");
    constexpr double half_pi = 1.5707963267948966;
    if (std::abs(theta0) > half_pi - 1e-9 || std::abs(theta1) > half_pi - 1e-9)
        throw DomainError("secant_power_integral: endpoint too close to +-pi/2");
    double t0 = std::tan(theta0), t1 = std::tan(theta1);
    double s0 = 1.0 / std::cos(theta0), s1 = 1.0 / std::cos(theta1);
    double value;
    int m;
    if (n % 2 == 1) {
        value = std::log(std::abs(s1 + t1)) - std::log(std::abs(s0 + t0));
        m = 1;
    } else {
        value = t1 - t0;
        m = 2;
    }
    double p0 = std::pow(s0, m) * t0 / (s0 * s0);  // sec^{m-2} tan at theta0
    double p1 = std::pow(s1, m) * t1 / (s1 * s1);
    while (m < n) {
        m += 2;
        p0 *= s0 * s0;
        p1 *= s1 * s1;
        value = (p1 - p0) / (m - 1) + static_cast<double>(m - 2) / (m - 1) * value;
    }
    return value;
}

/// Integral of r^{2k} over the triangle with apex at the origin, opposite edge
/// on the line at perpendicular distance a, spanning foot-frame polar angles
/// [theta0, theta1]:  a^{2k+2}/(2k+2) * int sec^{2k+2}.
inline double apex_triangle_monomial(int k, double a, double theta0, double theta1) {
    if (theta0 == theta1) return 0.0;
    double apow = a * a;
    for (int j = 0; j < k; ++j) apow *= a * a;
    return apow / (2.0 * k + 2.0) * secant_power_integral(2 * k + 2, theta0, theta1);
}

namespace detail {

constexpr int kMaxMonomialPower = 24;

// Accumulates acc[j] += signed integral of |x-c|^{2j} over the clipped wedge,
// j = 0..kmax.  The segment pq is clipped against the circle; chord pieces
// become apex triangles handled in the foot frame (tan theta = s/a, so the
// even secant recurrence needs no trig), arc pieces become sectors.
inline void accumulate_wedge_monomials(Vec2 c, Vec2 p, Vec2 q, double rho, int kmax,
                                       double* acc) {
    Vec2 u = p - c, v = q - c;
    if (cross(u, v) == 0.0) return;
    Vec2 d = q - p;
    double len2 = squared_norm(d);
    if (len2 == 0.0) return;

    // parameters where |p + t d - c| = rho
    double qa = len2, qb = 2.0 * dot(u, d), qc = squared_norm(u) - rho * rho;
    double disc = qb * qb - 4.0 * qa * qc;
    double breaks[4];
    int nb = 0;
    breaks[nb++] = 0.0;
    if (disc > 1e-12 * rho * rho * len2) {  // tangency counts as no crossing
        double sq = std::sqrt(disc);
        // r1 <= r2 since qa > 0
        for (double r : {(-qb - sq) / (2.0 * qa), (-qb + sq) / (2.0 * qa)}) {
            if (std::abs(r) < 1e-12 || std::abs(r - 1.0) < 1e-12) continue;  // snap
            if (r > 0.0 && r < 1.0) breaks[nb++] = r;
        }
    }
    breaks[nb++] = 1.0;

    double inv_len = 1.0 / std::sqrt(len2);
    Vec2 dd = inv_len * d;
    Vec2 nn = perp(dd);
    double h = dot(c - p, nn);   // signed offset of c from the edge line
    double a = std::abs(h);
    double proj_c = dot(c - p, dd);

    double rho2 = rho * rho;
    for (int i = 0; i + 1 < nb; ++i) {
        double ta = breaks[i], tb = breaks[i + 1];
        double tm = 0.5 * (ta + tb);
        Vec2 xm = p + tm * d - c;
        Vec2 A = p + ta * d, B = p + tb * d;
        if (squared_norm(xm) < rho2) {
            if (a < 1e-12 * rho) continue;  // c on the edge line: analytic limit 0
            // foot-frame tangents; sA, sB are arclengths from the foot
            double sA = ta / inv_len - proj_c;
            double sB = tb / inv_len - proj_c;
            double tana = sA / a, tanb = sB / a;
            double sign = (h > 0.0) ? 1.0 : -1.0;
            double sa2 = 1.0 + tana * tana, sb2 = 1.0 + tanb * tanb;  // sec^2
            double value = tanb - tana;
            double pa = tana, pb = tanb;
            double a2 = a * a, apow = a2;
            acc[0] += sign * 0.5 * apow * value;
            for (int j = 1; j <= kmax; ++j) {
                int m = 2 * j + 2;
                pa *= sa2;
                pb *= sb2;
                value = (pb - pa) / (m - 1) + static_cast<double>(m - 2) / (m - 1) * value;
                apow *= a2;
                acc[j] += sign * apow / m * value;
            }
        } else {
            Vec2 Ac = A - c, Bc = B - c;
            double dphi = std::atan2(cross(Ac, Bc), dot(Ac, Bc));
            double rpow = rho2;
            for (int j = 0; j <= kmax; ++j) {
                acc[j] += dphi * rpow / (2.0 * j + 2.0);
                rpow *= rho2;
            }
        }
    }
}

} // namespace detail

/// Signed integral of |x - c|^{2k} over (oriented triangle (c,p,q)) ∩ disk(c,rho).
inline double wedge_monomial(const Wedge& w, int k) {
    double acc[detail::kMaxMonomialPower + 1] = {};
    if (k > detail::kMaxMonomialPower) throw UnsupportedOrder("wedge_monomial: k too large");
    detail::accumulate_wedge_monomials(w.c, w.p, w.q, w.rho, k, acc);
    return acc[k];
}

/// Integral of p(|y-c|^2 / (4 delta^2)) over T ∩ B(c, 2 delta) for a ccw
/// triangle T, via the signed wedge decomposition over the edges of T.
inline double triangle_disk_poly(const Polynomial& p, double delta, Vec2 c,
                                 const Triangle& T) {
    double diam = T.diameter();
    if (std::abs(T.signed_area()) < 1e-14 * diam * diam)
        throw DegenerateTriangle("triangle_disk_poly: degenerate triangle");
    int kmax = p.degree();
    if (kmax > detail::kMaxMonomialPower)
        throw UnsupportedOrder("triangle_disk_poly: polynomial degree too large");
    double rho = 2.0 * delta;
    double acc[detail::kMaxMonomialPower + 1] = {};
    for (int e = 0; e < 3; ++e)
        detail::accumulate_wedge_monomials(c, T[e], T[(e + 1) % 3], rho, kmax, acc);
    const auto& coeffs = p.coeffs();
    double inv = 1.0 / (4.0 * delta * delta);
    double scale = 1.0, total = 0.0;
    for (int k = 0; k <= kmax; ++k) {
        total += coeffs[static_cast<std::size_t>(k)] * scale * acc[k];
        scale *= inv;
    }
    return total;
}

/// The three inner integrals the assembly needs: scaled R, Rbar, Rbarbar
/// integrated over T ∩ B(c, 2 delta).
struct KernelTriangleIntegrals {
    double u = 0.0;  // int R_delta(c, y) dy
    double p = 0.0;  // int Rbar_delta(c, y) dy
    double q = 0.0;  // int Rbarbar_delta(c, y) dy
};

inline KernelTriangleIntegrals kernel_triangle_integrals(const KernelFamily& kf, Vec2 c,
                                                         const Triangle& T) {
    KernelTriangleIntegrals out;
    double rho = 2.0 * kf.delta;
    // bounding-circle reject keeps the support exact and the common case cheap
    Vec2 g = T.centroid();
    double rb = T.bounding_radius();
    double far = rho + rb;
    if (squared_norm(c - g) >= far * far) return out;

    double acc[detail::kMaxMonomialPower + 1] = {};
    int kmax = kf.max_power;
    for (int e = 0; e < 3; ++e)
        detail::accumulate_wedge_monomials(c, T[e], T[(e + 1) % 3], rho, kmax, acc);
    const auto& cu = kf.scaled_coeffs[0];
    const auto& cp = kf.scaled_coeffs[1];
    const auto& cq = kf.scaled_coeffs[2];
    for (int k = 0; k <= kmax; ++k) {
        double ik = acc[k];
        if (k < static_cast<int>(cu.size())) out.u += cu[static_cast<std::size_t>(k)] * ik;
        if (k < static_cast<int>(cp.size())) out.p += cp[static_cast<std::size_t>(k)] * ik;
        out.q += cq[static_cast<std::size_t>(k)] * ik;
    }
    return out;
}

} // namespace nlfem
