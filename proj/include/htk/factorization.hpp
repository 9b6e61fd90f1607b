#pragma once

// Maxwell multipoles of harmonic tensors through root finding on their
// binary forms, plus factorization into equal-order factors and the
// square-difference split.

#include "binary_forms.hpp"
#include "random.hpp"

#include <Eigen/Eigenvalues>

#include <cstdint>
#include <limits>
#include <sstream>
#include <utility>
#include <vector>

namespace htk {

// Roots of f(t, 1); `infinite` counts the roots at infinity (u-free factors v).
struct projective_roots {
    std::vector<cplx> finite;
    int infinite = 0;
};

// f = alpha u^r v^r prod (u - l_i v)(conj(l_i) u + v)
struct paired_roots {
    std::vector<cplx> lambdas;
    int r = 0;
    double alpha = 0;
};

struct multipole_set {
    std::vector<vec3> vectors;
    bool ill_conditioned = false;
};

namespace detail {

inline cplx horner(const std::vector<cplx>& c, cplx t) {
    cplx s = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * t + *it;
    return s;
}

// |p(t)| / sum |c_k| |t|^k
inline double backward_error(const std::vector<cplx>& c, cplx t) {
    double den = 0, at = 1;
    const double mt = std::abs(t);
    for (const auto& ck : c) {
        den += std::abs(ck) * at;
        at *= mt;
    }
    return den > 0 ? std::abs(horner(c, t)) / den : 0;
}

// Roots of sum_k c_k t^k with c_back != 0 and c_0 != 0.
inline std::vector<cplx> polynomial_roots(const std::vector<cplx>& c) {
    const int d = static_cast<int>(c.size()) - 1;
    if (d <= 0) return {};
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(d, d);
    for (int i = 1; i < d; ++i) comp(i, i - 1) = 1;
    for (int i = 0; i < d; ++i) comp(i, d - 1) = -c[i] / c[d];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
    if (es.info() != Eigen::Success) throw conditioning_error("find_roots: eigenvalue iteration did not converge");
    std::vector<cplx> roots(es.eigenvalues().data(), es.eigenvalues().data() + d);

    // Newton polish on the original coefficients, keeping only improvements.
    std::vector<cplx> dc(d);
    for (int k = 1; k <= d; ++k) dc[k - 1] = c[k] * static_cast<double>(k);
    for (auto& t : roots) {
        for (int it = 0; it < 8; ++it) {
            const cplx p = horner(c, t), dp = horner(dc, t);
            if (dp == cplx(0)) break;
            const cplx next = t - p / dp;
            if (!(std::abs(horner(c, next)) < std::abs(p))) break;
            t = next;
        }
    }
    return roots;
}

}  // namespace detail

// Coefficients below zero_tol * max|a_k| count as exact zeros.
inline projective_roots find_roots(const binary_form& f, double zero_tol = 1e-14) {
    const double m = f.max_abs();
    if (!(m > 0)) throw domain_error("find_roots: zero binary form");
    const auto& a = f.coeffs();
    const int d = f.degree();
    int lo = 0, hi = d;
    while (std::abs(a[lo]) <= zero_tol * m) ++lo;
    while (std::abs(a[hi]) <= zero_tol * m) --hi;
    projective_roots out;
    out.infinite = d - hi;
    out.finite.assign(lo, cplx(0));
    const std::vector<cplx> c(a.begin() + lo, a.begin() + hi + 1);
    for (const auto& t : detail::polynomial_roots(c)) {
        if (detail::backward_error(c, t) > 1e-10)
            throw conditioning_error("find_roots: root backward error above 1e-10");
        out.finite.push_back(t);
    }
    return out;
}

// Greedy matching of each finite nonzero root with its antipode -1/conj(l).
inline paired_roots pair_roots(const projective_roots& roots, const binary_form& f, double tol = 1e-6) {
    const int n = f.half_degree();
    std::vector<cplx> nz;
    int zeros = 0;
    for (const auto& t : roots.finite) {
        if (t == cplx(0))
            ++zeros;
        else
            nz.push_back(t);
    }
    if (zeros != roots.infinite) {
        std::ostringstream os;
        os << "pair_roots: " << zeros << " zero roots against " << roots.infinite << " roots at infinity";
        throw conditioning_error(os.str());
    }
    paired_roots out;
    out.r = zeros;
    std::vector<bool> used(nz.size(), false);
    for (std::size_t i = 0; i < nz.size(); ++i) {
        if (used[i]) continue;
        used[i] = true;
        const cplx target = -1.0 / std::conj(nz[i]);
        std::size_t best = nz.size();
        double best_dist = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < nz.size(); ++j) {
            if (used[j]) continue;
            const double dist = std::abs(nz[j] - target);
            if (dist < best_dist) {
                best_dist = dist;
                best = j;
            }
        }
        if (best == nz.size() || best_dist > tol * std::max(1.0, std::abs(target))) {
            std::ostringstream os;
            os << "pair_roots: root " << nz[i] << " has no antipode within tolerance (closest distance "
               << best_dist << ")";
            throw conditioning_error(os.str());
        }
        used[best] = true;
        // keep the smaller of the two as the representative
        out.lambdas.push_back(std::abs(nz[i]) <= std::abs(nz[best]) ? nz[i] : -1.0 / std::conj(nz[i]));
    }
    if (static_cast<int>(out.lambdas.size()) + out.r != n)
        throw conditioning_error("pair_roots: root count does not match the form degree");
    // alpha = b_{2(n-r)} / prod conj(l_i), with b the coefficients of f / (u^r v^r)
    cplx prod = 1;
    for (const auto& l : out.lambdas) prod *= std::conj(l);
    const cplx alpha = f[2 * n - out.r] / prod;
    if (std::abs(alpha.imag()) > 1e-9 * std::abs(alpha))
        throw conditioning_error("pair_roots: leading factor alpha is not real");
    out.alpha = alpha.real();
    return out;
}

// The binary form alpha u^r v^r prod (u - l_i v)(conj(l_i) u + v).
inline binary_form paired_form(const paired_roots& p) {
    std::vector<cplx> acc{cplx(p.alpha)};
    for (int i = 0; i < p.r; ++i) acc = detail::poly_mul(acc, {0.0, 1.0, 0.0});
    for (const auto& l : p.lambdas) acc = detail::poly_mul(acc, {-l, 1.0 - std::norm(l), std::conj(l)});
    return binary_form(std::move(acc));
}

// The vector w with psi(x . w) = (u - l v)(conj(l) u + v).
inline vec3 multipole_from_root(cplx l) { return vec3(2 * l.real(), 2 * l.imag(), 1 - std::norm(l)); }

// (x . w1) * ... * (x . wn)
inline harm_tensor rebuild_from_multipoles(const multipole_set& m) {
    if (m.vectors.empty()) return harm_tensor::unchecked(sym_tensor::scalar(1));
    harm_tensor acc = harm_tensor::linear(m.vectors.front());
    for (std::size_t i = 1; i < m.vectors.size(); ++i)
        acc = harmonic_product(acc, harm_tensor::linear(m.vectors[i]));
    return acc;
}

// The preconditioning rotation is drawn from `gen`; the returned vectors are
// in the original frame and share a common norm.
inline multipole_set maxwell_multipoles(const harm_tensor& h, rng& gen) {
    const int n = h.order();
    if (n < 1) throw domain_error("maxwell_multipoles: order must be at least 1");
    if (!(inner_norm(h) > 0)) throw domain_error("maxwell_multipoles: zero tensor");
    const rotation g = gen.random_rotation();
    const binary_form f = cartan_map(rotate(g, h));
    const projective_roots roots = find_roots(f);
    const paired_roots pr = pair_roots(roots, f);

    multipole_set out;
    for (const auto& l : pr.lambdas) out.vectors.push_back(multipole_from_root(l));
    for (int i = 0; i < pr.r; ++i) out.vectors.emplace_back(0, 0, 1);
    out.vectors.front() *= pr.alpha;

    // flag nearly repeated roots
    for (std::size_t i = 0; i < roots.finite.size(); ++i)
        for (std::size_t j = i + 1; j < roots.finite.size(); ++j)
            if (std::abs(roots.finite[i] - roots.finite[j]) <
                1e-4 * std::max(1.0, std::abs(roots.finite[i])))
                out.ill_conditioned = true;

    // back to the original frame, then spread the scale evenly
    double log_prod = 0;
    for (auto& w : out.vectors) {
        w = g.matrix().transpose() * w;
        log_prod += std::log(w.norm());
    }
    const double common = std::exp(log_prod / n);
    for (auto& w : out.vectors) w *= common / w.norm();
    return out;
}

inline multipole_set maxwell_multipoles(const harm_tensor& h, std::uint64_t seed = 0x5eed) {
    rng gen(seed);
    return maxwell_multipoles(h, gen);
}

// h = h_1 * ... * h_k with every h_j of order n.
inline std::vector<harm_tensor> factor_equal_orders(const harm_tensor& h, int k, int n, rng& gen) {
    if (k < 1 || n < 0 || h.order() != k * n)
        throw domain_error("factor_equal_orders: order must equal k * n");
    if (k == 1) return {h};
    if (n == 0) {
        std::vector<harm_tensor> out(k, harm_tensor::unchecked(sym_tensor::scalar(1)));
        out.front() = h;
        return out;
    }
    const multipole_set m = maxwell_multipoles(h, gen);
    std::vector<harm_tensor> out;
    for (int j = 0; j < k; ++j) {
        multipole_set part;
        part.vectors.assign(m.vectors.begin() + j * n, m.vectors.begin() + (j + 1) * n);
        out.push_back(rebuild_from_multipoles(part));
    }
    return out;
}

inline std::vector<harm_tensor> factor_equal_orders(const harm_tensor& h, int k, int n,
                                                    std::uint64_t seed = 0x5eed) {
    rng gen(seed);
    return factor_equal_orders(h, k, n, gen);
}

// h = h1 * h1 - h2 * h2 from h = p1 * p2, h1 = (p1 + p2)/2, h2 = (p1 - p2)/2.
inline std::pair<harm_tensor, harm_tensor> square_difference(const harm_tensor& h, rng& gen) {
    if (h.order() % 2 != 0) throw domain_error("square_difference: order must be even");
    const int n = h.order() / 2;
    if (!(inner_norm(h) > 0)) {
        const harm_tensor z = harm_tensor::unchecked(sym_tensor(n));
        return {z, z};
    }
    harm_tensor p1, p2;
    if (n == 0) {
        p1 = h;
        p2 = harm_tensor::unchecked(sym_tensor::scalar(1));
    } else {
        const auto f = factor_equal_orders(h, 2, n, gen);
        p1 = f[0];
        p2 = f[1];
    }
    return {0.5 * (p1 + p2), 0.5 * (p1 - p2)};
}

inline std::pair<harm_tensor, harm_tensor> square_difference(const harm_tensor& h, std::uint64_t seed = 0x5eed) {
    rng gen(seed);
    return square_difference(h, gen);
}

}  // namespace htk
