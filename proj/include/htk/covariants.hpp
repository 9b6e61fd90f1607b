#pragma once

// Second-order covariants d2..d10 of a fourth-order harmonic tensor, the
// invariants J2..J10 and the rational invariants derived from them.
//
// The rational invariants (sigma_k and everything built on them) lose many
// digits near the cubic stratum, and they are very sensitive to the small
// trace residue any double-precision harmonic tensor carries. Everything here
// is therefore evaluated in quad precision after re-projecting the input onto
// harmonic tensors, and rounded to double at the end.

#include "tensor_core.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <array>
#include <optional>

namespace htk {

// Class inequalities are tested against this constant times the matching
// power of the tensor norm.
inline constexpr double degeneracy_tol = 1e-8;

namespace detail {

using wide = boost::multiprecision::cpp_bin_float_quad;
using wmat = std::array<wide, 9>;
using wten = std::array<wide, 81>;

inline int f2(int i, int j) { return 3 * i + j; }

inline wten wide_components(const harm_tensor& h) {
    wten s;
    for (int flat = 0; flat < 81; ++flat) {
        int cnt[3] = {0, 0, 0};
        int r = flat;
        for (int i = 0; i < 4; ++i) {
            ++cnt[r % 3];
            r /= 3;
        }
        s[flat] = wide(h.inner().coeff(cnt[0], cnt[1], cnt[2])) / wide(multinomial(cnt[0], cnt[1], cnt[2]));
    }
    return s;
}

// S - (6/7) sym(Id (x) tr S) + (3/35) tr tr S sym(Id (x) Id), for totally symmetric S
inline wten wide_harmonic4(const wten& s) {
    wmat a;
    for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
            wide t = 0;
            for (int i = 0; i < 3; ++i) t += s[flat4(i, i, k, l)];
            a[f2(k, l)] = t;
        }
    const wide tt = a[0] + a[4] + a[8];
    auto dl = [](int i, int j) { return i == j ? 1 : 0; };
    wten p;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l) {
                    const wide sym_ia = (dl(i, j) * a[f2(k, l)] + dl(i, k) * a[f2(j, l)] + dl(i, l) * a[f2(j, k)] +
                                         dl(j, k) * a[f2(i, l)] + dl(j, l) * a[f2(i, k)] + dl(k, l) * a[f2(i, j)]) /
                                        6;
                    const int sym_ii = dl(i, j) * dl(k, l) + dl(i, k) * dl(j, l) + dl(i, l) * dl(j, k);
                    p[flat4(i, j, k, l)] = s[flat4(i, j, k, l)] - wide(6) / 7 * sym_ia + wide(3) / 35 * tt * sym_ii / 3;
                }
    return p;
}

inline wten wcompose(const wten& a, const wten& b) {
    wten c;
    for (int ij = 0; ij < 9; ++ij)
        for (int kl = 0; kl < 9; ++kl) {
            wide s = 0;
            for (int pq = 0; pq < 9; ++pq) s += a[ij * 9 + pq] * b[pq * 9 + kl];
            c[ij * 9 + kl] = s;
        }
    return c;
}

inline wmat wapply(const wten& a, const wmat& b) {
    wmat c;
    for (int ij = 0; ij < 9; ++ij) {
        wide s = 0;
        for (int kl = 0; kl < 9; ++kl) s += a[ij * 9 + kl] * b[kl];
        c[ij] = s;
    }
    return c;
}

inline wmat tr13(const wten& a) {
    wmat m;
    for (int j = 0; j < 3; ++j)
        for (int l = 0; l < 3; ++l) {
            wide s = 0;
            for (int i = 0; i < 3; ++i) s += a[flat4(i, j, i, l)];
            m[f2(j, l)] = s;
        }
    return m;
}

inline wmat mul(const wmat& a, const wmat& b) {
    wmat c;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            wide s = 0;
            for (int k = 0; k < 3; ++k) s += a[f2(i, k)] * b[f2(k, j)];
            c[f2(i, j)] = s;
        }
    return c;
}

inline wide tr(const wmat& a) { return a[0] + a[4] + a[8]; }

inline wmat dev(const wmat& a) {
    wmat c = a;
    const wide t = tr(a) / 3;
    c[0] -= t;
    c[4] -= t;
    c[8] -= t;
    return c;
}

inline wmat axpy(const wmat& x, const wide& s, const wmat& y) {
    wmat c;
    for (int i = 0; i < 9; ++i) c[i] = x[i] + s * y[i];
    return c;
}

inline mat3 to_mat3(const wmat& a) {
    mat3 m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = static_cast<double>(a[f2(i, j)]);
    return m;
}

inline wmat from_mat3(const mat3& m) {
    wmat a;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) a[f2(i, j)] = m(i, j);
    return a;
}

struct wide_covariants {
    wten H, H2;
    std::array<wmat, 11> d;
    std::array<wide, 11> J;
    double norm = 0;  // ||h||
};

inline wide_covariants evaluate_covariants(const harm_tensor& h) {
    if (h.order() != 4) throw domain_error("covariants: order must be 4");
    wide_covariants c;
    c.norm = inner_norm(h);
    c.H = wide_harmonic4(wide_components(h));
    c.H2 = wcompose(c.H, c.H);
    const wten H3 = wcompose(c.H2, c.H);
    auto& d = c.d;
    d[2] = tr13(c.H2);
    d[3] = tr13(H3);
    d[4] = mul(d[2], d[2]);
    const wmat hd2 = wapply(c.H, d[2]);
    d[5] = mul(d[2], hd2);
    d[6] = mul(d[4], d[2]);
    d[7] = mul(d[4], hd2);
    d[8] = mul(d[4], wapply(c.H2, d[2]));
    d[9] = mul(d[4], wapply(c.H, d[4]));
    d[10] = mul(d[4], wapply(c.H2, d[4]));
    d[0] = d[1] = wmat{};
    c.J[0] = c.J[1] = 0;
    for (int k = 2; k <= 10; ++k) c.J[k] = tr(d[k]);
    return c;
}

struct wide_invariants {
    std::array<wide, 11> J;
    wide K4, K6, K10, L10, M10, D3;
    bool has_sigma = false;
    wide s1, s2, s3;
    bool has_eq = false;
    wide seq, lode;
};

inline wide_invariants evaluate_invariants(const wide_covariants& c) {
    wide_invariants v;
    const auto& J = c.J;
    v.J = J;
    v.K4 = 3 * J[4] - J[2] * J[2];
    v.K6 = 6 * J[6] - 9 * J[2] * J[4] - 20 * J[3] * J[3] + 3 * J[2] * J[2] * J[2];
    v.K10 = 2 * J[2] * v.K4 * v.K4 - 35 * J[5] * J[5];
    v.L10 = v.K10 - 25 * J[5] * J[5];
    v.M10 = v.K10 - 100 * J[5] * J[5];
    v.D3 = v.K6 / 432;
    const double n = c.norm;
    if (abs(v.D3) > degeneracy_tol * std::pow(n, 6)) {
        v.has_sigma = true;
        v.s1 = 9 * (3 * J[7] - 3 * J[2] * J[5] + 3 * J[3] * J[4] - J[2] * J[2] * J[3]) / (2 * v.K6);
        v.s2 = wide(4) / 7 * v.s1 * v.s1 - J[2] / 14;
        v.s3 = -J[3] / 24 + v.s1 * v.s1 * v.s1 / 7 - v.s1 * J[2] / 56;
        const wide q = v.s1 * v.s1 - 3 * v.s2;
        if (q > degeneracy_tol * n * n) {
            v.has_eq = true;
            v.seq = sqrt(q);
            v.lode = (v.s1 * v.s1 * v.s1 - wide(9) / 2 * v.s1 * v.s2 + wide(27) / 2 * v.s3) / (v.seq * v.seq * v.seq);
        }
    }
    return v;
}

}  // namespace detail

// d[k] for k = 2..10; entries 0 and 1 are unused.
struct covariant_set {
    std::array<mat3, 11> d{};
    const mat3& operator[](int k) const { return d.at(k); }
};

struct invariant_set {
    std::array<double, 11> J{};  // J[2]..J[10]
    double K4 = 0, K6 = 0, K10 = 0, L10 = 0, M10 = 0, Delta3 = 0;
    // absent outside the orthotropic branch (K6 numerically zero)
    std::optional<double> sigma1, sigma2, sigma3;
    // absent unless sigma1^2 - 3 sigma2 > 0
    std::optional<double> sigma_eq, lode;
};

inline covariant_set covariants(const harm_tensor& h) {
    const auto w = detail::evaluate_covariants(h);
    covariant_set out;
    for (int k = 2; k <= 10; ++k) out.d[k] = detail::to_mat3(w.d[k]);
    return out;
}

inline invariant_set invariants(const harm_tensor& h) {
    const auto v = detail::evaluate_invariants(detail::evaluate_covariants(h));
    invariant_set out;
    for (int k = 2; k <= 10; ++k) out.J[k] = static_cast<double>(v.J[k]);
    out.K4 = static_cast<double>(v.K4);
    out.K6 = static_cast<double>(v.K6);
    out.K10 = static_cast<double>(v.K10);
    out.L10 = static_cast<double>(v.L10);
    out.M10 = static_cast<double>(v.M10);
    out.Delta3 = static_cast<double>(v.D3);
    if (v.has_sigma) {
        out.sigma1 = static_cast<double>(v.s1);
        out.sigma2 = static_cast<double>(v.s2);
        out.sigma3 = static_cast<double>(v.s3);
    }
    if (v.has_eq) {
        out.sigma_eq = static_cast<double>(v.seq);
        out.lode = static_cast<double>(v.lode);
    }
    return out;
}

}  // namespace htk
