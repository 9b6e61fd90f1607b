#pragma once

// Symmetry class of a fourth-order harmonic tensor, decided by how well each
// class-specific reconstruction reproduces the input.

#include "reconstruction.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <limits>

namespace htk {

struct class_label {
    class_tag tag = class_tag::lower;
    double residual = 0;  // relative residual of the accepted model
};

// max_g ||g * h - h|| / ||h|| over the given generators.
inline double symmetry_residual(const harm_tensor& h, const std::vector<rotation>& gens) {
    const double n = inner_norm(h);
    if (!(n > 0)) return 0;
    double r = 0;
    for (const auto& g : gens) r = std::max(r, inner_norm(rotate(g, h) - h) / n);
    return r;
}

struct cubic_fit {
    rotation frame;    // columns are the cube axes
    double scale = 0;  // h ~ scale * rotate(frame, C01)
    double residual = std::numeric_limits<double>::infinity();
};

// For c * C01 the Kelvin eigenvalue 12c belongs to the traceless matrices
// diagonal in the cube frame, so the frame is read off a generic member of
// that eigenspace.
inline cubic_fit fit_cubic(const harm_tensor& h) {
    cubic_fit best;
    const double n = inner_norm(h);
    if (!(n > 0)) return best;
    const Eigen::SelfAdjointEigenSolver<kelvin6> es(kelvin_from_harm4(h));
    std::array<int, 6> idx{0, 1, 2, 3, 4, 5};
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        return std::abs(es.eigenvalues()(a)) > std::abs(es.eigenvalues()(b));
    });
    const harm_tensor c01 = fixture_C01();
    const double c01_sq = inner(c01, c01);
    for (double theta : {0.0, std::numbers::pi / 6}) {
        const vec6 v = std::cos(theta) * es.eigenvectors().col(idx[0]) + std::sin(theta) * es.eigenvectors().col(idx[1]);
        const Eigen::SelfAdjointEigenSolver<mat3> e3(matrix_from_kelvin_vector(v));
        mat3 q = e3.eigenvectors();
        if (q.determinant() < 0) q.col(2) = -q.col(2);
        const rotation g = rotation::unchecked(q);
        const harm_tensor local = rotate(g.inverse(), h);
        const double c = inner(local, c01) / c01_sq;
        const double res = inner_norm(local - c * c01) / n;
        if (res < best.residual) best = {g, c, res};
    }
    return best;
}

namespace detail {

inline double rel_residual(const harm_tensor& model, const harm_tensor& h) {
    return inner_norm(model - h) / inner_norm(h);
}

template <class F>
double try_residual(F&& f) {
    try {
        return f();
    } catch (const degenerate_class_error&) {
        return std::numeric_limits<double>::infinity();
    }
}

// The split must add back to h and leave a cubic part.
inline double split_residual(const split_result& s, const harm_tensor& h) {
    const double n = inner_norm(h);
    const double sum = rel_residual(s.transverse_part + s.cubic_part, h);
    const double cub = inner_norm(s.cubic_part) > 0 ? fit_cubic(s.cubic_part).residual * inner_norm(s.cubic_part) / n
                                                    : std::numeric_limits<double>::infinity();
    return std::max(sum, cub);
}

}  // namespace detail

// Tests run from the most to the least symmetric class; the first model whose
// relative residual is at most tol wins. A tensor of norm at most tol is
// isotropic.
inline class_label classify(const harm_tensor& h, double tol = 1e-7) {
    if (h.order() != 4) throw domain_error("classify: order must be 4");
    const double n = inner_norm(h);
    if (!(n > tol)) return {class_tag::isotropic, n};
    double closest = std::numeric_limits<double>::infinity();
    auto accept = [&](double r) {
        closest = std::min(closest, r);
        return r <= tol;
    };

    const double r_cub = fit_cubic(h).residual;
    if (accept(r_cub)) return {class_tag::cubic, r_cub};

    const double r_tr = detail::try_residual([&] { return detail::rel_residual(reconstruct_transverse(h), h); });
    if (accept(r_tr)) return {class_tag::transverse, r_tr};

    const double r_te = detail::try_residual([&] { return detail::split_residual(tetragonal_split(h, 1), h); });
    if (accept(r_te)) return {class_tag::tetragonal, r_te};

    const double r_tg = detail::try_residual([&] { return detail::split_residual(trigonal_split(h, 1), h); });
    if (accept(r_tg)) return {class_tag::trigonal, r_tg};

    const double r_or = detail::try_residual([&] { return detail::rel_residual(reconstruct_orthotropic(h), h); });
    if (accept(r_or)) return {class_tag::orthotropic, r_or};

    return {class_tag::lower, closest};
}

}  // namespace htk
