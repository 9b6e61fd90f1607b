#pragma once

// Normal forms of the symmetry classes of fourth-order harmonic tensors and
// their equivariant reconstruction from second-order covariants.

#include "covariants.hpp"
#include "harmonic.hpp"
#include "random.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace htk {

enum class class_tag { isotropic, transverse, orthotropic, tetragonal, trigonal, cubic, lower };

inline std::string to_string(class_tag t) {
    switch (t) {
        case class_tag::isotropic: return "isotropic";
        case class_tag::transverse: return "transverse";
        case class_tag::orthotropic: return "orthotropic";
        case class_tag::tetragonal: return "tetragonal";
        case class_tag::trigonal: return "trigonal";
        case class_tag::cubic: return "cubic";
        case class_tag::lower: return "lower";
    }
    return "lower";
}

inline class_tag parse_class_tag(const std::string& s) {
    for (auto t : {class_tag::isotropic, class_tag::transverse, class_tag::orthotropic, class_tag::tetragonal,
                   class_tag::trigonal, class_tag::cubic, class_tag::lower})
        if (to_string(t) == s) return t;
    throw domain_error("unknown class tag '" + s + "'");
}

// ---------------------------------------------------------------------------
// normal forms and fixtures (Kelvin matrices)

inline kelvin6 kelvin_transverse(double delta) {
    kelvin6 k;
    k << 3, 1, -4, 0, 0, 0,
         1, 3, -4, 0, 0, 0,
        -4, -4, 8, 0, 0, 0,
         0, 0, 0, -8, 0, 0,
         0, 0, 0, 0, -8, 0,
         0, 0, 0, 0, 0, 2;
    return delta * k;
}

inline kelvin6 kelvin_orthotropic(double l1, double l2, double l3) {
    kelvin6 k;
    k << l2 + l3, -l3, -l2, 0, 0, 0,
         -l3, l3 + l1, -l1, 0, 0, 0,
         -l2, -l1, l2 + l1, 0, 0, 0,
         0, 0, 0, -2 * l1, 0, 0,
         0, 0, 0, 0, -2 * l2, 0,
         0, 0, 0, 0, 0, -2 * l3;
    return k;
}

inline kelvin6 kelvin_tetragonal(double sigma, double delta) {
    const double s = sigma, d = delta;
    kelvin6 k;
    k << 3 * d - s, d + s, -4 * d, 0, 0, 0,
         d + s, 3 * d - s, -4 * d, 0, 0, 0,
         -4 * d, -4 * d, 8 * d, 0, 0, 0,
         0, 0, 0, -8 * d, 0, 0,
         0, 0, 0, 0, -8 * d, 0,
         0, 0, 0, 0, 0, 2 * d + 2 * s;
    return k;
}

inline kelvin6 kelvin_trigonal(double sigma, double delta) {
    const double s = sigma, d = delta, r = std::numbers::sqrt2;
    kelvin6 k;
    k << 3 * d, d, -4 * d, -r * s, 0, 0,
         d, 3 * d, -4 * d, r * s, 0, 0,
         -4 * d, -4 * d, 8 * d, 0, 0, 0,
         -r * s, r * s, 0, -8 * d, 0, 0,
         0, 0, 0, 0, -8 * d, -2 * s,
         0, 0, 0, 0, -2 * s, 2 * d;
    return k;
}

inline kelvin6 kelvin_C01() {
    kelvin6 k;
    k << 8, -4, -4, 0, 0, 0,
        -4, 8, -4, 0, 0, 0,
        -4, -4, 8, 0, 0, 0,
         0, 0, 0, -8, 0, 0,
         0, 0, 0, 0, -8, 0,
         0, 0, 0, 0, 0, -8;
    return k;
}

inline kelvin6 kelvin_C02() {
    kelvin6 k;
    k << -2, 6, -4, 0, 0, 0,
          6, -2, -4, 0, 0, 0,
         -4, -4, 8, 0, 0, 0,
          0, 0, 0, -8, 0, 0,
          0, 0, 0, 0, -8, 0,
          0, 0, 0, 0, 0, 12;
    return k;
}

inline kelvin6 kelvin_Ct1() {
    const double a = 10 * std::numbers::sqrt2;
    kelvin6 k;
    k << 3, 1, -4, -10, 0, 0,
         1, 3, -4, 10, 0, 0,
        -4, -4, 8, 0, 0, 0,
       -10, 10, 0, -8, 0, 0,
         0, 0, 0, 0, -8, -a,
         0, 0, 0, 0, -a, 2;
    return k;
}

inline kelvin6 kelvin_Ct2() {
    const double a = 10 * std::numbers::sqrt2;
    kelvin6 k;
    k << 3, 1, -4, 10, 0, 0,
         1, 3, -4, -10, 0, 0,
        -4, -4, 8, 0, 0, 0,
        10, -10, 0, -8, 0, 0,
         0, 0, 0, 0, -8, a,
         0, 0, 0, 0, a, 2;
    return k;
}

inline harm_tensor fixture_T0() { return harm4_from_kelvin(kelvin_transverse(1.0)); }
inline harm_tensor fixture_C01() { return harm4_from_kelvin(kelvin_C01()); }
inline harm_tensor fixture_C02() { return harm4_from_kelvin(kelvin_C02()); }
inline harm_tensor fixture_Ct1() { return harm4_from_kelvin(kelvin_Ct1()); }
inline harm_tensor fixture_Ct2() { return harm4_from_kelvin(kelvin_Ct2()); }

// r = R(e3, pi/4)
inline rotation rotation_r() { return rotation::about({0, 0, 1}, std::numbers::pi / 4); }
// r_t = R(e3, pi/3)
inline rotation rotation_rt() { return rotation::about({0, 0, 1}, std::numbers::pi / 3); }
// r3 = R(e3, pi/4) R(e1 - e2, arccos(1/sqrt 3))
inline rotation rotation_r3() {
    return rotation::about({0, 0, 1}, std::numbers::pi / 4) *
           rotation::about({1, -1, 0}, std::acos(1 / std::numbers::sqrt3));
}

// class_tag::cubic stands for the scaled fixture c * C01 (params = {c}).
struct normal_form {
    class_tag tag = class_tag::transverse;
    std::vector<double> params;
    kelvin6 kelvin = kelvin6::Zero();

    harm_tensor tensor() const { return harm4_from_kelvin(kelvin); }
};

inline normal_form make_normal_form(class_tag tag, const std::vector<double>& p) {
    auto need = [&](std::size_t n) {
        if (p.size() != n) throw domain_error("normal_form: wrong number of parameters for " + to_string(tag));
    };
    normal_form nf{tag, p, kelvin6::Zero()};
    switch (tag) {
        case class_tag::transverse:
            need(1);
            if (p[0] == 0) throw domain_error("normal_form: transverse requires delta != 0");
            nf.kelvin = kelvin_transverse(p[0]);
            break;
        case class_tag::orthotropic:
            need(3);
            if (p[0] == p[1] || p[0] == p[2] || p[1] == p[2])
                throw domain_error("normal_form: orthotropic requires distinct lambdas");
            nf.kelvin = kelvin_orthotropic(p[0], p[1], p[2]);
            break;
        case class_tag::tetragonal:
            need(2);
            if (p[0] == 0 || std::abs(p[0] * p[0] - 25 * p[1] * p[1]) <= 1e-12 * p[0] * p[0])
                throw domain_error("normal_form: tetragonal requires sigma != 0 and sigma^2 != 25 delta^2");
            nf.kelvin = kelvin_tetragonal(p[0], p[1]);
            break;
        case class_tag::trigonal:
            need(2);
            if (p[0] == 0 || std::abs(p[0] * p[0] - 50 * p[1] * p[1]) <= 1e-12 * p[0] * p[0])
                throw domain_error("normal_form: trigonal requires sigma != 0 and sigma^2 != 50 delta^2");
            nf.kelvin = kelvin_trigonal(p[0], p[1]);
            break;
        case class_tag::cubic:
            need(1);
            if (p[0] == 0) throw domain_error("normal_form: cubic fixture requires a nonzero scale");
            nf.kelvin = p[0] * kelvin_C01();
            break;
        default:
            throw domain_error("normal_form: no normal form for class " + to_string(tag));
    }
    return nf;
}

inline harm_tensor random_in_class(class_tag tag, const std::vector<double>& params, const rotation& g) {
    return rotate(g, make_normal_form(tag, params).tensor());
}

inline harm_tensor random_in_class(class_tag tag, const std::vector<double>& params, rng& gen) {
    return random_in_class(tag, params, gen.random_rotation());
}

// ---------------------------------------------------------------------------
// reconstruction

// (H^2)_0: compose, symmetrize, project.
inline harm_tensor h_squared_harmonic(const harm_tensor& h) {
    if (h.order() != 4) throw domain_error("h_squared_harmonic: order must be 4");
    const kelvin6 k = kelvin_from_harm4(h);
    const array81 c = components4_from_kelvin(compose4(k, k));
    return harmonic_projection(sym_tensor::from_components(4, std::vector<double>(c.begin(), c.end())));
}

inline harm_tensor harm2(const mat3& m) { return harm_tensor::unchecked(sym_tensor::from_matrix(m)); }

// H = (63/25) (1/J3) d2' * d2'
inline harm_tensor reconstruct_transverse(const harm_tensor& h) {
    const auto w = detail::evaluate_covariants(h);
    const double n = w.norm;
    const mat3 d2p = deviator(detail::to_mat3(w.d[2]));
    if (!(d2p.norm() > degeneracy_tol * n * n))
        throw degenerate_class_error("reconstruct_transverse: d2' vanishes (cubic or isotropic tensor)");
    const double j3 = static_cast<double>(w.J[3]);
    if (!(std::abs(j3) > degeneracy_tol * n * n * n))
        throw degenerate_class_error("reconstruct_transverse: J3 vanishes");
    return (63.0 / 25.0 / j3) * harmonic_product(harm2(d2p), harm2(d2p));
}

namespace detail {

inline void require_orthotropic(const wide_invariants& v, double n) {
    if (!(v.D3 > degeneracy_tol * std::pow(n, 6)))
        throw degenerate_class_error("orthotropic: Delta3 > 0 violated");
}

inline wmat wide_lambda_prime(const wide_covariants& c, const wide_invariants& v) {
    require_orthotropic(v, c.norm);
    const wide &s1 = v.s1, &s2 = v.s2, &s3 = v.s3;
    const wide a2 = 2 * (112 * s1 * s1 * s3 + 21 * s1 * s2 * s2 - 270 * s2 * s3);
    const wide a3 = 8 * (14 * s1 * s3 - 11 * s1 * s1 * s2 + 15 * s2 * s2);
    const wide den = 8 * v.D3;
    wmat m{};
    m = axpy(m, a2 / den, dev(c.d[2]));
    m = axpy(m, a3 / den, dev(c.d[3]));
    m = axpy(m, -54 * s3 / den, dev(c.d[4]));
    m = axpy(m, 11 * s2 / den, dev(c.d[5]));
    return m;
}

}  // namespace detail

// lambda'(H) = (1/(8 Delta3)) (a2 d2' + a3 d3' - 54 s3 d4' + 11 s2 d5'),
// returned symmetrized.
inline mat3 lambda_prime(const harm_tensor& h) {
    const auto c = detail::evaluate_covariants(h);
    const auto v = detail::evaluate_invariants(c);
    const mat3 m = detail::to_mat3(detail::wide_lambda_prime(c, v));
    return 0.5 * (m + m.transpose());
}

struct orthotropic_coefficients {
    double h1, h2, h3;        // rational sigma form
    double h1_l, h2_l, h3_l;  // Lode / sigma_eq form
};

inline orthotropic_coefficients orthotropic_h(const harm_tensor& h) {
    const auto c = detail::evaluate_covariants(h);
    const auto v = detail::evaluate_invariants(c);
    detail::require_orthotropic(v, c.norm);
    if (!v.has_eq) throw degenerate_class_error("orthotropic: sigma_eq > 0 violated");
    using detail::wide;
    const wide &s1 = v.s1, &s2 = v.s2, &s3 = v.s3, &D = v.D3, &L = v.lode, &q = v.seq;
    if (!(abs(L) < 1)) throw degenerate_class_error("orthotropic: |L| < 1 violated");
    orthotropic_coefficients o;
    const wide p = 8 * s1 * s1 * s1 - 31 * s1 * s2 + 63 * s3;
    o.h1 = static_cast<double>((s1 * s1 - 3 * s2) * p / (9 * D));
    o.h2 = static_cast<double>(-(16 * s1 * s1 * s1 * s1 - 86 * s1 * s1 * s2 + 90 * s1 * s3 + 84 * s2 * s2) / (6 * D));
    o.h3 = static_cast<double>(p / D);
    const wide den = 2 * (1 - L * L);
    o.h1_l = static_cast<double>((5 * s1 + 7 * L * q) / (den * q * q));
    o.h2_l = static_cast<double>(-3 * (5 * L * s1 + 7 * q) / (den * q * q * q));
    o.h3_l = static_cast<double>(9 * (5 * s1 + 7 * L * q) / (den * q * q * q * q));
    return o;
}

// H = h1 l'*l' + 2 h2 l'*(l'^2)' + h3 (l'^2)'*(l'^2)'
inline harm_tensor reconstruct_orthotropic(const harm_tensor& h) {
    const orthotropic_coefficients o = orthotropic_h(h);
    const mat3 l = lambda_prime(h);
    const harm_tensor a = harm2(l), b = harm2(deviator(l * l));
    return o.h1 * harmonic_product(a, a) + (2 * o.h2) * harmonic_product(a, b) + o.h3 * harmonic_product(b, b);
}

// Returns b with b * b = h when h is a perfect harmonic square, else nothing.
inline std::optional<mat3> perfect_square_test(const harm_tensor& h, double tol = 1e-8) {
    const auto c = detail::evaluate_covariants(h);
    const auto v = detail::evaluate_invariants(c);
    const double n = c.norm;
    if (!(n > 0)) return mat3::Zero().eval();
    using detail::wide;
    if (v.D3 > degeneracy_tol * std::pow(n, 6)) {
        if (!v.has_eq || !(v.s1 > 0)) return std::nullopt;
        const wide cond = 49 * v.s2 - 8 * v.s1 * v.s1;
        if (abs(cond) > tol * v.s1 * v.s1) return std::nullopt;
        const detail::wmat l = detail::wide_lambda_prime(c, v);
        const detail::wmat l2 = detail::dev(detail::mul(l, l));
        const wide scale = sqrt(wide(49) / (10 * (1 - v.lode) * v.s1));
        detail::wmat b = detail::axpy(l, -wide(21) / (5 * v.s1), l2);
        for (auto& x : b) x *= scale;
        const mat3 m = detail::to_mat3(b);
        return (0.5 * (m + m.transpose())).eval();
    }
    // transversely isotropic branch: H = b * b with b proportional to d2'
    const mat3 d2p = deviator(detail::to_mat3(c.d[2]));
    if (!(d2p.norm() > degeneracy_tol * n * n)) return std::nullopt;
    const double j3 = static_cast<double>(v.J[3]);
    if (!(j3 > degeneracy_tol * n * n * n)) return std::nullopt;
    // Delta3 also vanishes on other classes (b with a zero eigenvalue gives a
    // tetragonal square), so h must really be transversely isotropic.
    const harm_tensor b = harm2(std::sqrt(63.0 / (25.0 * j3)) * d2p);
    if (inner_norm(harmonic_product(b, b) - h) > tol * n) return std::nullopt;
    return b.inner().to_matrix();
}

// ---------------------------------------------------------------------------
// tetragonal and trigonal splits

struct split_result {
    harm_tensor transverse_part;
    harm_tensor cubic_part;
    int branch = 1;
};

struct class_params {
    double delta, sigma;
};

namespace detail {

struct split_inputs {
    wide_covariants c;
    wide_invariants v;
    harm_tensor dd;  // d2' * d2'
};

inline split_inputs split_prepare(const harm_tensor& h, bool trigonal) {
    split_inputs s{evaluate_covariants(h), {}, {}};
    s.v = evaluate_invariants(s.c);
    const double n = s.c.norm;
    if (!(s.v.K4 > degeneracy_tol * std::pow(n, 4)))
        throw degenerate_class_error("split: K4 > 0 violated");
    if (!(s.v.K10 > degeneracy_tol * std::pow(n, 10)))
        throw degenerate_class_error("split: K10 > 0 violated (transverse degeneracy)");
    const wide& cub = trigonal ? s.v.M10 : s.v.L10;
    if (!(abs(cub) > degeneracy_tol * std::pow(n, 10)))
        throw degenerate_class_error(trigonal ? "split: M10 != 0 violated (cubic degeneracy)"
                                              : "split: L10 != 0 violated (cubic degeneracy)");
    const mat3 d2p = deviator(to_mat3(s.c.d[2]));
    s.dd = harmonic_product(harm2(d2p), harm2(d2p));
    return s;
}

}  // namespace detail

// delta = J5 / (4 K4), sigma = sqrt(K10) / (4 K4), sigma > 0
inline class_params tetragonal_params(const harm_tensor& h) {
    const auto v = detail::evaluate_invariants(detail::evaluate_covariants(h));
    if (!(v.K4 > 0) || !(v.K10 > 0)) throw degenerate_class_error("tetragonal_params: K4, K10 must be positive");
    return {static_cast<double>(v.J[5] / (4 * v.K4)), static_cast<double>(sqrt(v.K10) / (4 * v.K4))};
}

// delta = J5 / (4 K4), sigma = sqrt(K10) / (4 sqrt2 K4), sigma > 0
inline class_params trigonal_params(const harm_tensor& h) {
    const auto v = detail::evaluate_invariants(detail::evaluate_covariants(h));
    if (!(v.K4 > 0) || !(v.K10 > 0)) throw degenerate_class_error("trigonal_params: K4, K10 must be positive");
    return {static_cast<double>(v.J[5] / (4 * v.K4)),
            static_cast<double>(sqrt(v.K10) / (4 * sqrt(detail::wide(2)) * v.K4))};
}

inline split_result tetragonal_split(const harm_tensor& h, int k) {
    if (k != 1 && k != 2) throw domain_error("tetragonal_split: branch must be 1 or 2");
    const auto s = detail::split_prepare(h, false);
    using detail::wide;
    const wide delta = s.v.J[5] / (4 * s.v.K4), sigma = sqrt(s.v.K10) / (4 * s.v.K4);
    const wide sg = k == 1 ? 1 : -1;
    const wide q = 25 * delta * delta - sigma * sigma;
    const double ct = static_cast<double>(wide(7) / 16 * (5 * delta + sg * sigma) / (q * q));
    const wide m = 5 * delta - sg * sigma;
    const double ch = static_cast<double>(1 - 14 * delta / m);
    const double c2 = static_cast<double>(wide(7) / (2 * m));
    split_result r;
    r.branch = k;
    r.transverse_part = ct * s.dd;
    r.cubic_part = ch * h + c2 * h_squared_harmonic(h);
    return r;
}

inline split_result trigonal_split(const harm_tensor& h, int k) {
    if (k != 1 && k != 2) throw domain_error("trigonal_split: branch must be 1 or 2");
    const auto s = detail::split_prepare(h, true);
    using detail::wide;
    const wide r2 = sqrt(wide(2));
    const wide delta = s.v.J[5] / (4 * s.v.K4), sigma = sqrt(s.v.K10) / (4 * r2 * s.v.K4);
    const wide sg = k == 1 ? 1 : -1;
    const wide q = 50 * delta * delta - sigma * sigma;
    const double ct = static_cast<double>(7 * (10 * delta - sg * sigma * r2) / (8 * q * q));
    const wide m = 10 * delta + sg * sigma * r2;
    const double ch = static_cast<double>(1 - 7 * delta / m);
    const double c2 = static_cast<double>(-wide(7) / (6 * m));
    split_result r;
    r.branch = k;
    r.transverse_part = ct * s.dd;
    r.cubic_part = ch * h + c2 * h_squared_harmonic(h);
    return r;
}

// Closed forms written with J5, K4, K10 and L10 only (branch 1).
inline split_result tetragonal_split_closed(const harm_tensor& h) {
    const auto s = detail::split_prepare(h, false);
    using detail::wide;
    const wide &J5 = s.v.J[5], &K4 = s.v.K4, &L10 = s.v.L10;
    const wide t = 5 * J5 + sqrt(s.v.K10);
    split_result r;
    r.branch = 1;
    r.transverse_part = static_cast<double>(28 * K4 * K4 * K4 * t / (L10 * L10)) * s.dd;
    r.cubic_part = static_cast<double>(1 + 14 * J5 * t / L10) * h +
                   static_cast<double>(-14 * K4 * t / L10) * h_squared_harmonic(h);
    return r;
}

// Closed forms written with J5, K4, K10 and M10 only (branch 2).
inline split_result trigonal_split_closed(const harm_tensor& h) {
    const auto s = detail::split_prepare(h, true);
    using detail::wide;
    const wide &J5 = s.v.J[5], &K4 = s.v.K4, &M10 = s.v.M10;
    const wide t = 10 * J5 + sqrt(s.v.K10);
    split_result r;
    r.branch = 2;
    r.transverse_part = static_cast<double>(224 * K4 * K4 * K4 * t / (M10 * M10)) * s.dd;
    r.cubic_part = static_cast<double>(1 + 7 * J5 * t / M10) * h +
                   static_cast<double>(14 * K4 * t / (3 * M10)) * h_squared_harmonic(h);
    return r;
}

// ---------------------------------------------------------------------------
// octahedral group generators

inline std::vector<rotation> conjugate(const std::vector<rotation>& gens, const rotation& g) {
    std::vector<rotation> out;
    for (const auto& s : gens) out.push_back(g * s * g.inverse());
    return out;
}

// Quarter turns about the coordinate axes.
inline std::vector<rotation> octahedral_O1() {
    const double q = std::numbers::pi / 2;
    return {rotation::about({1, 0, 0}, q), rotation::about({0, 1, 0}, q), rotation::about({0, 0, 1}, q)};
}

inline std::vector<rotation> octahedral_O2() { return conjugate(octahedral_O1(), rotation_r()); }
inline std::vector<rotation> octahedral_Ot1() { return conjugate(octahedral_O1(), rotation_r3()); }
inline std::vector<rotation> octahedral_Ot2() { return conjugate(octahedral_Ot1(), rotation_rt()); }

// Generators fixing the cubic part of branch k for a member rotate(g, H0).
inline std::vector<rotation> tetragonal_branch_group(int k, const rotation& g = rotation()) {
    return conjugate(k == 1 ? octahedral_O1() : octahedral_O2(), g);
}

inline std::vector<rotation> trigonal_branch_group(int k, const rotation& g = rotation()) {
    return conjugate(k == 1 ? octahedral_Ot1() : octahedral_Ot2(), g);
}

}  // namespace htk
