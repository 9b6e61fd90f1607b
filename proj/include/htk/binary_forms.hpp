#pragma once

// The Cartan map between real harmonic tensors of order n and binary forms
// of degree 2n.

#include "harmonic.hpp"

#include <algorithm>
#include <complex>
#include <vector>

namespace htk {

using cplx = std::complex<double>;

// f(u,v) = sum_k a_k u^k v^(2n-k), coefficients stored for ascending k.
class binary_form {
public:
    binary_form() : a_(1, cplx(0)) {}

    explicit binary_form(std::vector<cplx> coeffs) : a_(std::move(coeffs)) {
        if (a_.empty() || a_.size() % 2 == 0)
            throw domain_error("binary_form: coefficient count must be odd (degree 2n)");
    }

    int half_degree() const { return static_cast<int>(a_.size() - 1) / 2; }
    int degree() const { return static_cast<int>(a_.size()) - 1; }
    const std::vector<cplx>& coeffs() const { return a_; }
    const cplx& operator[](int k) const { return a_[k]; }

    cplx evaluate(cplx u, cplx v) const {
        cplx s = 0;
        const int d = degree();
        for (int k = 0; k <= d; ++k) s += a_[k] * std::pow(u, k) * std::pow(v, d - k);
        return s;
    }

    double max_abs() const {
        double m = 0;
        for (const auto& c : a_) m = std::max(m, std::abs(c));
        return m;
    }

    // max_k |a_{2n-k} - (-1)^{n-k} conj(a_k)| relative to the largest coefficient.
    double reality_defect() const {
        const int n = half_degree();
        double d = 0;
        for (int k = 0; k <= n; ++k) {
            const double s = ((n - k) % 2 == 0) ? 1.0 : -1.0;
            d = std::max(d, std::abs(a_[2 * n - k] - s * std::conj(a_[k])));
        }
        const double m = max_abs();
        return m > 0 ? d / m : d;
    }

    bool is_real(double tol = 1e-12) const { return reality_defect() <= tol; }

private:
    std::vector<cplx> a_;
};

namespace detail {

inline std::vector<cplx> poly_mul(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    std::vector<cplx> out(a.size() + b.size() - 1, cplx(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

// Complex polynomial in x,y,z kept as real and imaginary sym_tensors.
struct complex_poly {
    sym_tensor re, im;
};

inline complex_poly cmul(const complex_poly& p, const complex_poly& q) {
    return {sym_product(p.re, q.re) - sym_product(p.im, q.im), sym_product(p.re, q.im) + sym_product(p.im, q.re)};
}

}  // namespace detail

// psi(h)(u,v) = h((u^2 - v^2)/2, (u^2 + v^2)/(2i), uv)
inline binary_form cartan_map(const harm_tensor& h) {
    const int n = h.order();
    const cplx I(0, 1);
    // quadratic forms in (u,v), ascending powers of u
    const std::vector<cplx> X{-0.5, 0.0, 0.5};
    const std::vector<cplx> Y{-0.5 * I, 0.0, -0.5 * I};
    const std::vector<cplx> Z{0.0, 1.0, 0.0};
    std::vector<std::vector<cplx>> px{{1.0}}, py{{1.0}}, pz{{1.0}};
    for (int k = 1; k <= n; ++k) {
        px.push_back(detail::poly_mul(px.back(), X));
        py.push_back(detail::poly_mul(py.back(), Y));
        pz.push_back(detail::poly_mul(pz.back(), Z));
    }
    std::vector<cplx> f(2 * n + 1, cplx(0));
    for (const auto& m : monomials(n)) {
        const double c = h.inner().coeff(m.a, m.b, m.c);
        if (c == 0) continue;
        const auto term = detail::poly_mul(detail::poly_mul(px[m.a], py[m.b]), pz[m.c]);
        for (int k = 0; k <= 2 * n; ++k) f[k] += c * term[k];
    }
    return binary_form(std::move(f));
}

// Substitutes u^k v^(2n-k) -> z^k (-x+iy)^(n-k) for k <= n and
// z^(2n-k) (x+iy)^(k-n) otherwise, then projects onto harmonic tensors.
inline harm_tensor cartan_inverse(const binary_form& f, double tol = 1e-12) {
    if (!f.is_real(tol)) throw domain_error("cartan_inverse: binary form violates the reality condition");
    const int n = f.half_degree();
    using detail::complex_poly;
    const complex_poly one{sym_tensor::scalar(1), sym_tensor::scalar(0)};
    const complex_poly z{sym_tensor::linear({0, 0, 1}), sym_tensor(1)};
    const complex_poly vm{sym_tensor::linear({-1, 0, 0}), sym_tensor::linear({0, 1, 0})};  // -x + iy
    const complex_poly vp{sym_tensor::linear({1, 0, 0}), sym_tensor::linear({0, 1, 0})};   // x + iy
    std::vector<complex_poly> pz{one}, pm{one}, pp{one};
    for (int k = 1; k <= n; ++k) {
        pz.push_back(detail::cmul(pz.back(), z));
        pm.push_back(detail::cmul(pm.back(), vm));
        pp.push_back(detail::cmul(pp.back(), vp));
    }
    sym_tensor re(n), im(n);
    for (int k = 0; k <= 2 * n; ++k) {
        const cplx a = f[k];
        if (a == cplx(0)) continue;
        const complex_poly t = k <= n ? detail::cmul(pz[k], pm[n - k]) : detail::cmul(pz[2 * n - k], pp[k - n]);
        re += a.real() * t.re - a.imag() * t.im;
        im += a.real() * t.im + a.imag() * t.re;
    }
    harm_tensor h = harmonic_projection(re);
    const harm_tensor hi = harmonic_projection(im);
    if (inner_norm(hi) > 1e-11 * std::max(inner_norm(h), f.max_abs()))
        throw domain_error("cartan_inverse: imaginary residue after projection");
    return h;
}

// Plain polynomial product; psi^-1(f1 f2) = psi^-1(f1) * psi^-1(f2).
inline binary_form form_multiply(const binary_form& f1, const binary_form& f2) {
    return binary_form(detail::poly_mul(f1.coeffs(), f2.coeffs()));
}

}  // namespace htk
