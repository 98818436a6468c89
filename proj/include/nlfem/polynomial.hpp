#pragma once

#include <cstddef>
#include <vector>

namespace nlfem {

/// Dense polynomial in the monomial basis: p(s) = sum_k coeffs[k] * s^k.
class Polynomial {
public:
    Polynomial() : coeffs_{0.0} {}
    explicit Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) coeffs_.push_back(0.0);
    }

    const std::vector<double>& coeffs() const { return coeffs_; }

    /// Index of the last nonzero coefficient; 0 for the zero polynomial.
    int degree() const {
        for (std::size_t k = coeffs_.size(); k-- > 0;)
            if (coeffs_[k] != 0.0) return static_cast<int>(k);
        return 0;
    }

    double operator()(double s) const {
        double r = 0.0;
        for (std::size_t k = coeffs_.size(); k-- > 0;) r = r * s + coeffs_[k];
        return r;
    }

    Polynomial derivative() const {
        if (coeffs_.size() <= 1) return Polynomial{};
        std::vector<double> d(coeffs_.size() - 1);
        for (std::size_t k = 1; k < coeffs_.size(); ++k)
            d[k - 1] = static_cast<double>(k) * coeffs_[k];
        return Polynomial(std::move(d));
    }

    /// Exact value of the moment integral over [0,1]: sum_k c_k / (k+1).
    double integral_01() const {
        double s = 0.0;
        for (std::size_t k = coeffs_.size(); k-- > 0;)
            s += coeffs_[k] / static_cast<double>(k + 1);
        return s;
    }

private:
    std::vector<double> coeffs_;
};

/// Tail antiderivative q(r) = integral of p over [r, 1]; satisfies q(1) = 0, q' = -p.
inline Polynomial antiderivative_tail(const Polynomial& p) {
    const auto& c = p.coeffs();
    std::vector<double> q(c.size() + 1, 0.0);
    q[0] = p.integral_01();
    for (std::size_t k = 0; k < c.size(); ++k)
        q[k + 1] = -c[k] / static_cast<double>(k + 1);
    return Polynomial(std::move(q));
}

} // namespace nlfem
