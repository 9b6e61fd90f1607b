#pragma once

// Symmetric tensors on R^3 stored as homogeneous polynomials, rotations,
// and the Kelvin 6x6 view of fourth-order tensors.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace htk {

using vec3 = Eigen::Vector3d;
using mat3 = Eigen::Matrix3d;
using vec6 = Eigen::Matrix<double, 6, 1>;
using mat6 = Eigen::Matrix<double, 6, 6>;

struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

// Raised when a class-defining inequality fails (e.g. J3 = 0 for a
// transverse reconstruction).
struct degenerate_class_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct conditioning_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// monomials

struct monomial {
    int a, b, c;  // x^a y^b z^c
};

inline int monomial_count(int n) { return (n + 1) * (n + 2) / 2; }

// Graded-lex position inside degree a+b+c: x^n, x^{n-1}y, x^{n-1}z, x^{n-2}y^2, ...
inline int monomial_index(int /*a*/, int b, int c) {
    const int m = b + c;
    return m * (m + 1) / 2 + c;
}

inline std::vector<monomial> monomials(int n) {
    std::vector<monomial> out;
    out.reserve(monomial_count(n));
    for (int a = n; a >= 0; --a)
        for (int b = n - a; b >= 0; --b) out.push_back({a, b, n - a - b});
    return out;
}

inline double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// Number of index tuples (i1..in) carrying the exponent pattern (a,b,c).
inline double multinomial(int a, int b, int c) {
    return factorial(a + b + c) / (factorial(a) * factorial(b) * factorial(c));
}

// ---------------------------------------------------------------------------
// rotation

class rotation {
public:
    rotation() : m_(mat3::Identity()) {}

    explicit rotation(const mat3& m, double tol = 1e-12) : m_(m) {
        if (!m.allFinite()) throw domain_error("rotation: non-finite entries");
        const double orth = (m.transpose() * m - mat3::Identity()).cwiseAbs().maxCoeff();
        if (orth > tol) throw domain_error("rotation: matrix is not orthogonal");
        if (std::abs(m.determinant() - 1.0) > tol)
            throw domain_error("rotation: determinant is not 1");
    }

    // Right-handed rotation by `angle` about `axis` (Rodrigues formula).
    static rotation about(const vec3& axis, double angle) {
        const double n = axis.norm();
        if (!(n > 0)) throw domain_error("rotation::about: zero axis");
        const vec3 u = axis / n;
        mat3 k;
        k << 0, -u.z(), u.y(), u.z(), 0, -u.x(), -u.y(), u.x(), 0;
        const mat3 m = mat3::Identity() + std::sin(angle) * k + (1 - std::cos(angle)) * k * k;
        return rotation(m, unchecked_tag{});
    }

    // Trusts the caller; used where orthogonality holds by construction.
    static rotation unchecked(const mat3& m) { return rotation(m, unchecked_tag{}); }

    const mat3& matrix() const { return m_; }
    rotation inverse() const { return rotation(m_.transpose(), unchecked_tag{}); }
    rotation operator*(const rotation& o) const { return rotation(m_ * o.m_, unchecked_tag{}); }
    vec3 operator*(const vec3& v) const { return m_ * v; }

private:
    struct unchecked_tag {};
    rotation(const mat3& m, unchecked_tag) : m_(m) {}
    mat3 m_;
};

// m' = m - (tr m / 3) Id; also used on non-symmetric matrices.
inline mat3 deviator(const mat3& m) { return m - (m.trace() / 3.0) * mat3::Identity(); }

// ---------------------------------------------------------------------------
// symmetric tensors as polynomials

class sym_tensor {
public:
    sym_tensor() : order_(0), c_(1, 0.0) {}

    explicit sym_tensor(int order) : order_(order) {
        if (order < 0) throw domain_error("sym_tensor: negative order");
        c_.assign(monomial_count(order), 0.0);
    }

    sym_tensor(int order, std::vector<double> coeffs) : order_(order), c_(std::move(coeffs)) {
        if (order < 0) throw domain_error("sym_tensor: negative order");
        if (static_cast<int>(c_.size()) != monomial_count(order))
            throw domain_error("sym_tensor: coefficient count does not match order");
    }

    static sym_tensor scalar(double v) { return sym_tensor(0, {v}); }

    // The linear form x -> w . x
    static sym_tensor linear(const vec3& w) { return sym_tensor(1, {w.x(), w.y(), w.z()}); }

    // Polynomial of x^T m x; only the symmetric part of m contributes.
    static sym_tensor from_matrix(const mat3& m) {
        sym_tensor t(2);
        t.coeff(2, 0, 0) = m(0, 0);
        t.coeff(0, 2, 0) = m(1, 1);
        t.coeff(0, 0, 2) = m(2, 2);
        t.coeff(1, 1, 0) = m(0, 1) + m(1, 0);
        t.coeff(1, 0, 1) = m(0, 2) + m(2, 0);
        t.coeff(0, 1, 1) = m(1, 2) + m(2, 1);
        return t;
    }

    // From a full row-major 3^n component array. Every component contributes
    // to its monomial, so a non-symmetric input is symmetrized.
    static sym_tensor from_components(int order, const std::vector<double>& comps) {
        std::size_t total = 1;
        for (int i = 0; i < order; ++i) total *= 3;
        if (comps.size() != total) throw domain_error("sym_tensor: component count must be 3^n");
        sym_tensor t(order);
        for (std::size_t flat = 0; flat < total; ++flat) {
            int cnt[3] = {0, 0, 0};
            std::size_t r = flat;
            for (int i = 0; i < order; ++i) {
                ++cnt[r % 3];
                r /= 3;
            }
            t.c_[monomial_index(cnt[0], cnt[1], cnt[2])] += comps[flat];
        }
        return t;
    }

    // (x^2 + y^2 + z^2)^k
    static sym_tensor q_power(int k);

    int order() const { return order_; }
    std::size_t size() const { return c_.size(); }
    const std::vector<double>& coeffs() const { return c_; }
    double coeff(int a, int b, int c) const { return c_[monomial_index(a, b, c)]; }
    double& coeff(int a, int b, int c) { return c_[monomial_index(a, b, c)]; }

    // T_{i1...in}; indices in {0,1,2}.
    double component(const std::vector<int>& idx) const {
        if (static_cast<int>(idx.size()) != order_) throw domain_error("component: wrong index count");
        int cnt[3] = {0, 0, 0};
        for (int i : idx) ++cnt[i];
        return coeff(cnt[0], cnt[1], cnt[2]) / multinomial(cnt[0], cnt[1], cnt[2]);
    }

    // Full row-major component array of length 3^n.
    std::vector<double> components() const {
        std::size_t total = 1;
        for (int i = 0; i < order_; ++i) total *= 3;
        std::vector<double> out(total);
        for (std::size_t flat = 0; flat < total; ++flat) {
            int cnt[3] = {0, 0, 0};
            std::size_t r = flat;
            for (int i = 0; i < order_; ++i) {
                ++cnt[r % 3];
                r /= 3;
            }
            out[flat] = coeff(cnt[0], cnt[1], cnt[2]) / multinomial(cnt[0], cnt[1], cnt[2]);
        }
        return out;
    }

    mat3 to_matrix() const {
        if (order_ != 2) throw domain_error("to_matrix: order must be 2");
        mat3 m;
        m(0, 0) = coeff(2, 0, 0);
        m(1, 1) = coeff(0, 2, 0);
        m(2, 2) = coeff(0, 0, 2);
        m(0, 1) = m(1, 0) = coeff(1, 1, 0) / 2;
        m(0, 2) = m(2, 0) = coeff(1, 0, 1) / 2;
        m(1, 2) = m(2, 1) = coeff(0, 1, 1) / 2;
        return m;
    }

    vec3 to_vector() const {
        if (order_ != 1) throw domain_error("to_vector: order must be 1");
        return vec3(c_[0], c_[1], c_[2]);
    }

    double evaluate(const vec3& x) const {
        double s = 0;
        int i = 0;
        for (const auto& m : monomials(order_))
            s += c_[i++] * std::pow(x.x(), m.a) * std::pow(x.y(), m.b) * std::pow(x.z(), m.c);
        return s;
    }

    sym_tensor& operator+=(const sym_tensor& o) {
        check_same(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        return *this;
    }
    sym_tensor& operator-=(const sym_tensor& o) {
        check_same(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
        return *this;
    }
    sym_tensor& operator*=(double s) {
        for (double& v : c_) v *= s;
        return *this;
    }

    friend sym_tensor operator+(sym_tensor a, const sym_tensor& b) { return a += b; }
    friend sym_tensor operator-(sym_tensor a, const sym_tensor& b) { return a -= b; }
    friend sym_tensor operator*(sym_tensor a, double s) { return a *= s; }
    friend sym_tensor operator*(double s, sym_tensor a) { return a *= s; }
    friend sym_tensor operator-(sym_tensor a) { return a *= -1.0; }

private:
    void check_same(const sym_tensor& o) const {
        if (o.order_ != order_) throw domain_error("sym_tensor: order mismatch");
    }

    int order_;
    std::vector<double> c_;
};

// Symmetric tensor product; on polynomials this is plain multiplication.
inline sym_tensor sym_product(const sym_tensor& a, const sym_tensor& b) {
    const int n1 = a.order(), n2 = b.order();
    sym_tensor out(n1 + n2);
    const auto ma = monomials(n1);
    const auto mb = monomials(n2);
    for (std::size_t i = 0; i < ma.size(); ++i) {
        const double ca = a.coeffs()[i];
        if (ca == 0) continue;
        for (std::size_t j = 0; j < mb.size(); ++j) {
            const double cb = b.coeffs()[j];
            if (cb == 0) continue;
            out.coeff(ma[i].a + mb[j].a, ma[i].b + mb[j].b, ma[i].c + mb[j].c) += ca * cb;
        }
    }
    return out;
}

inline sym_tensor sym_tensor::q_power(int k) {
    if (k < 0) throw domain_error("q_power: negative exponent");
    sym_tensor q(2);
    q.coeff(2, 0, 0) = q.coeff(0, 2, 0) = q.coeff(0, 0, 2) = 1;
    sym_tensor out = scalar(1);
    for (int i = 0; i < k; ++i) out = sym_product(out, q);
    return out;
}

inline sym_tensor laplacian(const sym_tensor& t) {
    const int n = t.order();
    if (n < 2) return sym_tensor(0);
    sym_tensor out(n - 2);
    for (const auto& m : monomials(n)) {
        const double c = t.coeff(m.a, m.b, m.c);
        if (c == 0) continue;
        if (m.a >= 2) out.coeff(m.a - 2, m.b, m.c) += c * m.a * (m.a - 1);
        if (m.b >= 2) out.coeff(m.a, m.b - 2, m.c) += c * m.b * (m.b - 1);
        if (m.c >= 2) out.coeff(m.a, m.b, m.c - 2) += c * m.c * (m.c - 1);
    }
    return out;
}

// Contraction of the first two indices.
inline sym_tensor trace(const sym_tensor& t) {
    const int n = t.order();
    if (n < 2) throw domain_error("trace: order must be at least 2");
    return laplacian(t) * (1.0 / (n * (n - 1)));
}

// (g * p)(x) = p(g^T x)
inline sym_tensor rotate(const rotation& g, const sym_tensor& t) {
    const int n = t.order();
    const mat3& m = g.matrix();
    // x_i is replaced by sum_j m(j,i) x_j
    std::array<std::vector<sym_tensor>, 3> pw;
    for (int i = 0; i < 3; ++i) {
        pw[i].push_back(sym_tensor::scalar(1));
        const sym_tensor l = sym_tensor::linear(vec3(m(0, i), m(1, i), m(2, i)));
        for (int k = 1; k <= n; ++k) pw[i].push_back(sym_product(pw[i].back(), l));
    }
    sym_tensor out(n);
    for (const auto& mo : monomials(n)) {
        const double c = t.coeff(mo.a, mo.b, mo.c);
        if (c == 0) continue;
        out += c * sym_product(sym_product(pw[0][mo.a], pw[1][mo.b]), pw[2][mo.c]);
    }
    return out;
}

// Full contraction T_{i1..in} S_{i1..in}, computed in coefficient space.
inline double inner(const sym_tensor& a, const sym_tensor& b) {
    if (a.order() != b.order()) throw domain_error("inner: order mismatch");
    double s = 0;
    int i = 0;
    for (const auto& m : monomials(a.order())) {
        s += a.coeffs()[i] * b.coeffs()[i] / multinomial(m.a, m.b, m.c);
        ++i;
    }
    return s;
}

inline double inner_norm(const sym_tensor& t) { return std::sqrt(std::max(0.0, inner(t, t))); }

// ---------------------------------------------------------------------------
// harmonic tensors

class harm_tensor {
public:
    harm_tensor() = default;

    explicit harm_tensor(sym_tensor t, double tol = 1e-12) : t_(std::move(t)) {
        if (t_.order() >= 2) {
            const double tr = inner_norm(trace(t_));
            if (tr > tol * inner_norm(t_)) throw domain_error("harm_tensor: input is not traceless");
        }
    }

    static harm_tensor unchecked(sym_tensor t) {
        harm_tensor h;
        h.t_ = std::move(t);
        return h;
    }

    static harm_tensor linear(const vec3& w) { return unchecked(sym_tensor::linear(w)); }

    // Traceless symmetric 3x3 matrix as an order-2 harmonic tensor.
    static harm_tensor from_matrix(const mat3& m, double tol = 1e-12) {
        return harm_tensor(sym_tensor::from_matrix(m), tol);
    }

    const sym_tensor& inner() const { return t_; }
    int order() const { return t_.order(); }
    const std::vector<double>& coeffs() const { return t_.coeffs(); }
    double component(const std::vector<int>& idx) const { return t_.component(idx); }
    std::vector<double> components() const { return t_.components(); }
    mat3 to_matrix() const { return t_.to_matrix(); }

    harm_tensor& operator+=(const harm_tensor& o) { t_ += o.t_; return *this; }
    harm_tensor& operator-=(const harm_tensor& o) { t_ -= o.t_; return *this; }
    harm_tensor& operator*=(double s) { t_ *= s; return *this; }

    friend harm_tensor operator+(harm_tensor a, const harm_tensor& b) { return a += b; }
    friend harm_tensor operator-(harm_tensor a, const harm_tensor& b) { return a -= b; }
    friend harm_tensor operator*(harm_tensor a, double s) { return a *= s; }
    friend harm_tensor operator*(double s, harm_tensor a) { return a *= s; }
    friend harm_tensor operator-(harm_tensor a) { return a *= -1.0; }

private:
    sym_tensor t_;
};

inline harm_tensor rotate(const rotation& g, const harm_tensor& h) {
    return harm_tensor::unchecked(rotate(g, h.inner()));
}

inline double inner_norm(const harm_tensor& h) { return inner_norm(h.inner()); }
inline double inner(const harm_tensor& a, const harm_tensor& b) { return inner(a.inner(), b.inner()); }

// ---------------------------------------------------------------------------
// Kelvin representation: index pairs 11,22,33,23,13,12 with weight sqrt(2)
// on the shear pairs, so that K_IJ = w_I w_J A_ijkl.

using kelvin6 = mat6;

inline constexpr std::array<std::array<int, 2>, 6> kelvin_pairs{{{0, 0}, {1, 1}, {2, 2}, {1, 2}, {0, 2}, {0, 1}}};

inline int kelvin_index(int i, int j) {
    return i == j ? i : 6 - i - j;
}

inline double kelvin_weight(int I) { return I < 3 ? 1.0 : std::sqrt(2.0); }

using array81 = std::array<double, 81>;

inline int flat4(int i, int j, int k, int l) { return ((i * 3 + j) * 3 + k) * 3 + l; }

inline double component4(const kelvin6& K, int i, int j, int k, int l) {
    const int I = kelvin_index(i, j), J = kelvin_index(k, l);
    return K(I, J) / (kelvin_weight(I) * kelvin_weight(J));
}

// Assumes minor symmetries; reads the representative (i,j) of each pair.
inline kelvin6 kelvin_from_components4(const array81& t) {
    kelvin6 K;
    for (int I = 0; I < 6; ++I)
        for (int J = 0; J < 6; ++J) {
            const auto [i, j] = kelvin_pairs[I];
            const auto [k, l] = kelvin_pairs[J];
            K(I, J) = kelvin_weight(I) * kelvin_weight(J) * t[flat4(i, j, k, l)];
        }
    return K;
}

inline array81 components4_from_kelvin(const kelvin6& K) {
    array81 t{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l) t[flat4(i, j, k, l)] = component4(K, i, j, k, l);
    return t;
}

inline vec6 kelvin_vector(const mat3& b) {
    const double r = std::sqrt(2.0);
    vec6 v;
    v << b(0, 0), b(1, 1), b(2, 2), r * 0.5 * (b(1, 2) + b(2, 1)), r * 0.5 * (b(0, 2) + b(2, 0)),
        r * 0.5 * (b(0, 1) + b(1, 0));
    return v;
}

inline mat3 matrix_from_kelvin_vector(const vec6& v) {
    const double r = 1.0 / std::sqrt(2.0);
    mat3 m;
    m << v(0), r * v(5), r * v(4), r * v(5), v(1), r * v(3), r * v(4), r * v(3), v(2);
    return m;
}

inline kelvin6 kelvin_identity() { return kelvin6::Identity(); }

// (AB)_ijkl = A_ijpq B_pqkl
inline kelvin6 compose4(const kelvin6& a, const kelvin6& b) { return a * b; }

// (Ab)_ij = A_ijkl b_kl
inline mat3 apply4(const kelvin6& a, const mat3& b) {
    return matrix_from_kelvin_vector(a * kelvin_vector(b));
}

// (tr13 A)_jl = A_ijil
inline mat3 tr13(const kelvin6& a) {
    mat3 m = mat3::Zero();
    for (int j = 0; j < 3; ++j)
        for (int l = 0; l < 3; ++l)
            for (int i = 0; i < 3; ++i) m(j, l) += component4(a, i, j, i, l);
    return m;
}

inline kelvin6 kelvin_from_harm4(const harm_tensor& h) {
    if (h.order() != 4) throw domain_error("kelvin_from_harm4: order must be 4");
    kelvin6 K;
    for (int I = 0; I < 6; ++I)
        for (int J = 0; J < 6; ++J) {
            const auto [i, j] = kelvin_pairs[I];
            const auto [k, l] = kelvin_pairs[J];
            K(I, J) = kelvin_weight(I) * kelvin_weight(J) * h.component({i, j, k, l});
        }
    return K;
}

// Rejects matrices that are not symmetric, not totally symmetric as
// fourth-order tensors, or not traceless, beyond tol relative to the norm.
inline harm_tensor harm4_from_kelvin(const kelvin6& K, double tol = 1e-12) {
    if (!K.allFinite()) throw domain_error("harm4_from_kelvin: non-finite entries");
    const double scale = std::max(K.norm(), 1e-300);
    if ((K - K.transpose()).norm() > tol * scale)
        throw domain_error("harm4_from_kelvin: matrix is not symmetric");
    const array81 t = components4_from_kelvin(K);
    // Summing every index arrangement gives multinomial * component, which is
    // the polynomial coefficient when the tensor is totally symmetric.
    sym_tensor s = sym_tensor::from_components(4, std::vector<double>(t.begin(), t.end()));
    const kelvin6 back = [&] {
        kelvin6 B;
        for (int I = 0; I < 6; ++I)
            for (int J = 0; J < 6; ++J) {
                const auto [i, j] = kelvin_pairs[I];
                const auto [k, l] = kelvin_pairs[J];
                B(I, J) = kelvin_weight(I) * kelvin_weight(J) * s.component({i, j, k, l});
            }
        return B;
    }();
    if ((back - K).norm() > tol * scale)
        throw domain_error("harm4_from_kelvin: matrix is not totally symmetric");
    if (inner_norm(trace(s)) > tol * inner_norm(s))
        throw domain_error("harm4_from_kelvin: trace relations violated");
    return harm_tensor::unchecked(std::move(s));
}

}  // namespace htk
