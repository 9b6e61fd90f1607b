#pragma once

// Harmonic decomposition of symmetric tensors, the harmonic product and the
// harmonic decomposition of elasticity tensors.

#include "tensor_core.hpp"

#include <vector>

namespace htk {

// mu(k) = (2n-4k+1)! (n-k)! / ((2n-2k+1)! k! (n-2k)!), evaluated as a
// product of small factors in long double.
inline double harmonic_mu(int n, int k) {
    long double num = 1, den = 1;
    for (int i = 2; i <= 2 * n - 4 * k + 1; ++i) num *= i;
    for (int i = 2; i <= n - k; ++i) num *= i;
    for (int i = 2; i <= 2 * n - 2 * k + 1; ++i) den *= i;
    for (int i = 2; i <= k; ++i) den *= i;
    for (int i = 2; i <= n - 2 * k; ++i) den *= i;
    return static_cast<double>(num / den);
}

// p = sum_k q^k h_k, with parts[k] of order n - 2k.
struct harmonic_parts {
    int order = 0;
    std::vector<harm_tensor> parts;

    sym_tensor recompose() const {
        sym_tensor p(order);
        for (std::size_t k = 0; k < parts.size(); ++k)
            p += sym_product(sym_tensor::q_power(static_cast<int>(k)), parts[k].inner());
        return p;
    }
};

inline harmonic_parts harmonic_decompose(const sym_tensor& t) {
    const int n = t.order();
    harmonic_parts out;
    out.order = n;
    if (n < 2) {
        out.parts.push_back(harm_tensor::unchecked(t));
        return out;
    }
    const int r = n / 2;
    out.parts.resize(r + 1);
    for (int k = r; k >= 0; --k) {
        sym_tensor rest = t;
        for (int j = k + 1; j <= r; ++j) rest -= sym_product(sym_tensor::q_power(j), out.parts[j].inner());
        for (int i = 0; i < k; ++i) rest = laplacian(rest);
        out.parts[k] = harm_tensor::unchecked(rest * harmonic_mu(n, k));
    }
    return out;
}

// The leading part h_0, written (t)_0.
inline harm_tensor harmonic_projection(const sym_tensor& t) {
    return harmonic_decompose(t).parts.front();
}

// h1 * h2 := (h1 h2)_0
// Operands are put in a canonical order first so that h1 * h2 and h2 * h1 are
// bitwise equal; scalar factors skip the projection.
inline harm_tensor harmonic_product(const harm_tensor& h1, const harm_tensor& h2) {
    const auto key = [](const harm_tensor& h) { return std::pair(h.order(), h.inner().coeffs()); };
    const bool swap = key(h2) < key(h1);
    const harm_tensor& a = swap ? h2 : h1;
    const harm_tensor& b = swap ? h1 : h2;
    if (a.order() == 0) return a.inner().coeffs()[0] * b;
    return harmonic_projection(sym_product(a.inner(), b.inner()));
}

// ---------------------------------------------------------------------------
// elasticity tensors

class elasticity_tensor {
public:
    elasticity_tensor() : k_(kelvin6::Zero()) {}

    explicit elasticity_tensor(const kelvin6& k, double tol = 1e-12) : k_(k) {
        if (!k.allFinite()) throw domain_error("elasticity_tensor: non-finite entries");
        if ((k - k.transpose()).norm() > tol * std::max(k.norm(), 1e-300))
            throw domain_error("elasticity_tensor: Kelvin matrix is not symmetric");
        k_ = 0.5 * (k + k.transpose());
    }

    const kelvin6& kelvin() const { return k_; }
    array81 components() const { return components4_from_kelvin(k_); }

private:
    kelvin6 k_;
};

struct elasticity_quintuple {
    double alpha = 0;
    double beta = 0;
    mat3 a_prime = mat3::Zero();
    mat3 b_prime = mat3::Zero();
    harm_tensor h = harm_tensor::unchecked(sym_tensor(4));
};

// (a ox(4) b)_ijkl
inline array81 young4(const mat3& a, const mat3& b) {
    array81 t{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l)
                    t[flat4(i, j, k, l)] = (a(i, j) * b(k, l) + b(i, j) * a(k, l) + a(i, k) * b(j, l) +
                                            b(i, k) * a(j, l) + a(i, l) * b(j, k) + b(i, l) * a(j, k)) /
                                           6.0;
    return t;
}

// (a ox(2,2) b)_ijkl
inline array81 young22(const mat3& a, const mat3& b) {
    array81 t{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l)
                    t[flat4(i, j, k, l)] = (2 * a(i, j) * b(k, l) + 2 * b(i, j) * a(k, l) - a(i, k) * b(j, l) -
                                            a(i, l) * b(j, k) - b(i, k) * a(j, l) - b(i, l) * a(j, k)) /
                                           6.0;
    return t;
}

// Everything except H.
inline array81 elasticity_lower_parts(double alpha, double beta, const mat3& a, const mat3& b) {
    const mat3 id = mat3::Identity();
    const array81 t1 = young4(id, id), t2 = young22(id, id), t3 = young4(id, a), t4 = young22(id, b);
    array81 t{};
    for (int i = 0; i < 81; ++i) t[i] = alpha * t1[i] + beta * t2[i] + t3[i] + t4[i];
    return t;
}

// d = tr12 E
inline mat3 dilatation_tensor(const array81& e) {
    mat3 d = mat3::Zero();
    for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l)
            for (int i = 0; i < 3; ++i) d(k, l) += e[flat4(i, i, k, l)];
    return d;
}

// v = tr13 E
inline mat3 voigt_tensor(const array81& e) {
    mat3 v = mat3::Zero();
    for (int j = 0; j < 3; ++j)
        for (int l = 0; l < 3; ++l)
            for (int i = 0; i < 3; ++i) v(j, l) += e[flat4(i, j, i, l)];
    return v;
}

inline elasticity_tensor recompose_elasticity(const elasticity_quintuple& q) {
    array81 t = elasticity_lower_parts(q.alpha, q.beta, q.a_prime, q.b_prime);
    const std::vector<double> hc = q.h.components();
    for (int i = 0; i < 81; ++i) t[i] += hc[i];
    return elasticity_tensor(kelvin_from_components4(t));
}

inline elasticity_quintuple decompose_elasticity(const elasticity_tensor& e) {
    const array81 c = e.components();
    const mat3 d = dilatation_tensor(c), v = voigt_tensor(c);
    elasticity_quintuple q;
    q.alpha = (d.trace() + 2 * v.trace()) / 15.0;
    q.beta = (d.trace() - v.trace()) / 6.0;
    q.a_prime = (2.0 / 7.0) * (deviator(d) + 2 * deviator(v));
    q.b_prime = 2.0 * (deviator(d) - deviator(v));
    const array81 low = elasticity_lower_parts(q.alpha, q.beta, q.a_prime, q.b_prime);
    std::vector<double> rest(81);
    for (int i = 0; i < 81; ++i) rest[i] = c[i] - low[i];
    // rest is totally symmetric; summing its arrangements yields the coefficients
    const sym_tensor hs = sym_tensor::from_components(4, rest);
    q.h = harm_tensor::unchecked(hs);
    return q;
}

}  // namespace htk
