#include "test_util.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace htk;
using namespace htk::testing;

namespace {

const double sqrt2 = std::numbers::sqrt2;

// rotations about the given axis at 8 angles
std::vector<rotation> axial_sample(const vec3& axis) {
    std::vector<rotation> out;
    for (int k = 1; k <= 8; ++k) out.push_back(rotation::about(axis, 0.37 * k));
    return out;
}

}  // namespace

TEST(NormalForm, TransverseFirstRow) {
    const normal_form nf = make_normal_form(class_tag::transverse, {1.0});
    Eigen::Matrix<double, 1, 6> row;
    row << 3, 1, -4, 0, 0, 0;
    EXPECT_EQ(nf.kelvin.row(0), row);
}

TEST(NormalForm, TetragonalDecompositions) {
    const harm_tensor t0 = fixture_T0(), c1 = fixture_C01(), c2 = fixture_C02();
    for (auto [s, d] : {std::pair{1.0, 1.0}, {0.7, -0.4}, {2.5, 0.3}}) {
        const harm_tensor h = make_normal_form(class_tag::tetragonal, {s, d}).tensor();
        EXPECT_LT(rel(((5 * d + s) / 5) * t0 - (s / 5) * c1, h), 1e-15);
        EXPECT_LT(rel(((5 * d - s) / 5) * t0 + (s / 5) * c2, h), 1e-15);
    }
}

TEST(NormalForm, TrigonalDecompositions) {
    const harm_tensor t0 = fixture_T0(), c1 = fixture_Ct1(), c2 = fixture_Ct2();
    for (auto [s, d] : {std::pair{1.0, 1.0}, {0.7, -0.4}, {2.5, 0.3}}) {
        const harm_tensor h = make_normal_form(class_tag::trigonal, {s, d}).tensor();
        EXPECT_LT(rel(((10 * d - s * sqrt2) / 10) * t0 + (s * sqrt2 / 10) * c1, h), 1e-15);
        EXPECT_LT(rel(((10 * d + s * sqrt2) / 10) * t0 - (s * sqrt2 / 10) * c2, h), 1e-15);
    }
}

TEST(NormalForm, FixturesAndRotations) {
    EXPECT_LT(symmetry_residual(fixture_T0(), axial_sample({0, 0, 1})), 1e-12);
    EXPECT_LT(symmetry_residual(fixture_C01(), octahedral_O1()), 1e-12);
    EXPECT_LT(symmetry_residual(fixture_C02(), octahedral_O2()), 1e-12);
    EXPECT_LT(symmetry_residual(fixture_Ct1(), octahedral_Ot1()), 1e-12);
    EXPECT_LT(symmetry_residual(fixture_Ct2(), octahedral_Ot2()), 1e-12);
    EXPECT_LT(rel(rotate(rotation_r(), fixture_C01()), fixture_C02()), 1e-14);
    EXPECT_LT(rel(rotate(rotation_rt(), fixture_Ct1()), fixture_Ct2()), 1e-14);
    EXPECT_LT(rel(rotate(rotation_r3(), fixture_C01()), (-2.0 / 3.0) * fixture_Ct1()), 1e-14);
}

TEST(NormalForm, ClassInequalities) {
    EXPECT_THROW(make_normal_form(class_tag::transverse, {0.0}), domain_error);
    EXPECT_THROW(make_normal_form(class_tag::orthotropic, {1, 1, 2}), domain_error);
    EXPECT_THROW(make_normal_form(class_tag::tetragonal, {0.0, 1.0}), domain_error);
    EXPECT_THROW(make_normal_form(class_tag::tetragonal, {5.0, 1.0}), domain_error);
    EXPECT_THROW(make_normal_form(class_tag::trigonal, {std::sqrt(50.0) * 0.5, 0.5}), domain_error);
    EXPECT_THROW(make_normal_form(class_tag::orthotropic, {1, 2}), domain_error);
    EXPECT_THROW(make_normal_form(class_tag::lower, {}), domain_error);
}

TEST(Transverse, ReconstructsRotatedMembers) {
    rng g(61);
    for (int trial = 0; trial < 50; ++trial) {
        const double delta = signed_magnitude(g, 0.1, 3);
        const harm_tensor h = random_in_class(class_tag::transverse, {delta}, g);
        EXPECT_LT(rel(reconstruct_transverse(h), h), 1e-10);
    }
}

TEST(Transverse, PositiveDeltaIsPerfectSquare) {
    const harm_tensor h = make_normal_form(class_tag::transverse, {1.0}).tensor();
    EXPECT_GT(invariants(h).J[3], 0);
    const auto b = perfect_square_test(h);
    ASSERT_TRUE(b.has_value());
    const harm_tensor hb = harm_tensor::from_matrix(*b, 1e-10);
    EXPECT_LT(rel(harmonic_product(hb, hb), h), 1e-8);
    EXPECT_FALSE(perfect_square_test(make_normal_form(class_tag::transverse, {-1.0}).tensor()).has_value());
}

TEST(Transverse, CubicFixtureIsDegenerate) {
    EXPECT_THROW(reconstruct_transverse(fixture_C01()), degenerate_class_error);
}

TEST(LambdaPrime, NormalFormValue) {
    const mat3 l = lambda_prime(make_normal_form(class_tag::orthotropic, {1, 2, 4}).tensor());
    mat3 want = mat3::Zero();
    want.diagonal() << -4.0 / 3, -1.0 / 3, 5.0 / 3;
    EXPECT_LT((l - want).norm(), 1e-12);
}

TEST(LambdaPrime, PermutationAndEquivariance) {
    const mat3 l = lambda_prime(make_normal_form(class_tag::orthotropic, {4, 1, 2}).tensor());
    EXPECT_NEAR(l(0, 0), 5.0 / 3, 1e-12);
    EXPECT_NEAR(l(1, 1), -4.0 / 3, 1e-12);
    rng g(62);
    const harm_tensor h = make_normal_form(class_tag::orthotropic, {1, 2, 4}).tensor();
    const mat3 base = lambda_prime(h);
    for (int trial = 0; trial < 50; ++trial) {
        const rotation r = g.random_rotation();
        const mat3 want = r.matrix() * base * r.matrix().transpose();
        EXPECT_LT((lambda_prime(rotate(r, h)) - want).norm(), 1e-9);
    }
}

TEST(LambdaPrime, DegenerateOnTransverse) {
    EXPECT_THROW(lambda_prime(fixture_T0()), degenerate_class_error);
}

TEST(Orthotropic, ReconstructsAndRoutesAgree) {
    const harm_tensor h = make_normal_form(class_tag::orthotropic, {1, 2, 4}).tensor();
    rng g(63);
    const rotation r = g.random_rotation();
    EXPECT_LT(rel(reconstruct_orthotropic(rotate(r, h)), rotate(r, h)), 1e-9);
    const auto c = orthotropic_h(h);
    EXPECT_NEAR(c.h1, c.h1_l, 1e-9 * std::abs(c.h1));
    EXPECT_NEAR(c.h2, c.h2_l, 1e-9 * std::abs(c.h2));
    EXPECT_NEAR(c.h3, c.h3_l, 1e-9 * std::abs(c.h3));
}

TEST(Orthotropic, ZeroSigmaOne) {
    const harm_tensor h = make_normal_form(class_tag::orthotropic, {-1, 0, 1}).tensor();
    const auto v = invariants(h);
    EXPECT_NEAR(*v.sigma1, 0, 1e-12);
    EXPECT_NEAR(v.Delta3, 4, 1e-10);
    const auto c = orthotropic_h(h);
    EXPECT_TRUE(std::isfinite(c.h1) && std::isfinite(c.h2) && std::isfinite(c.h3));
    EXPECT_LT(rel(reconstruct_orthotropic(h), h), 1e-9);
}

TEST(Orthotropic, SymmetryGroupPreserved) {
    rng g(64);
    const rotation r = g.random_rotation();
    const harm_tensor h = random_in_class(class_tag::orthotropic, {0.5, -1.0, 2.0}, r);
    const harm_tensor out = reconstruct_orthotropic(h);
    std::vector<rotation> d2;
    for (int i = 0; i < 3; ++i) {
        vec3 axis = vec3::Zero();
        axis(i) = 1;
        d2.push_back(r * rotation::about(axis, std::numbers::pi) * r.inverse());
    }
    EXPECT_LT(symmetry_residual(out, d2), 1e-9);
    EXPECT_GT(symmetry_residual(out, {r * rotation::about({0, 0, 1}, std::numbers::pi / 2) * r.inverse()}), 1e-3);
}

TEST(PerfectSquare, ForwardSquaresPass) {
    rng g(65);
    for (int trial = 0; trial < 50; ++trial) {
        const mat3 b = deviator(random_sym_matrix(g));
        // a zero eigenvalue makes b * b tetragonal, outside the test's domain
        if (std::abs(b.determinant()) < 1e-3 * std::pow(b.norm(), 3)) continue;
        const harm_tensor hb = harm_tensor::from_matrix(b, 1e-10);
        const harm_tensor h = harmonic_product(hb, hb);
        const auto root = perfect_square_test(h);
        ASSERT_TRUE(root.has_value());
        const double err = std::min((*root - b).norm(), (*root + b).norm()) / b.norm();
        EXPECT_LT(err, 1e-8);
        // negated squares fail on sigma1 > 0
        EXPECT_FALSE(perfect_square_test(-1.0 * h).has_value());
        // perturbed squares fail
        const harm_tensor p = h + (1e-3 * inner_norm(h)) * random_harm(4, g);
        EXPECT_FALSE(perfect_square_test(p).has_value());
    }
}

TEST(PerfectSquare, TetragonalSquareIsNotMistakenForTransverse) {
    mat3 b = mat3::Zero();
    b.diagonal() << -1, 0, 1;
    const harm_tensor hb = harm_tensor::from_matrix(b);
    EXPECT_FALSE(perfect_square_test(harmonic_product(hb, hb)).has_value());
}

TEST(PerfectSquare, GenericOrthotropicFails) {
    EXPECT_FALSE(perfect_square_test(make_normal_form(class_tag::orthotropic, {1, 2, 4}).tensor()).has_value());
}

TEST(TetragonalSplit, NormalFormExample) {
    const harm_tensor h = make_normal_form(class_tag::tetragonal, {1.0, 1.0}).tensor();
    const split_result s = tetragonal_split(h, 1);
    EXPECT_LT(rel(s.transverse_part, 1.2 * fixture_T0()), 1e-12);
    EXPECT_LT(rel(s.cubic_part, -0.2 * fixture_C01()), 1e-12);
    const class_params p = tetragonal_params(h);
    EXPECT_NEAR(p.delta, 1.0, 1e-12);
    EXPECT_NEAR(p.sigma, 1.0, 1e-12);
}

TEST(TetragonalSplit, RotatedMembersBothBranches) {
    rng g(66);
    for (int trial = 0; trial < 20; ++trial) {
        const auto sd = draw_sigma_delta(g, 5);
        const rotation r = g.random_rotation();
        const harm_tensor h = random_in_class(class_tag::tetragonal, sd, r);
        for (int k = 1; k <= 2; ++k) {
            const split_result s = tetragonal_split(h, k);
            EXPECT_EQ(s.branch, k);
            EXPECT_LT(rel(s.transverse_part + s.cubic_part, h), 1e-10);
            EXPECT_LT(symmetry_residual(s.cubic_part, tetragonal_branch_group(k, r)), 1e-9);
            EXPECT_LT(symmetry_residual(s.transverse_part, axial_sample(r.matrix().col(2))), 1e-9);
        }
        const split_result c = tetragonal_split_closed(h), t = tetragonal_split(h, 1);
        EXPECT_LT(rel(c.transverse_part, t.transverse_part), 1e-9);
        EXPECT_LT(rel(c.cubic_part, t.cubic_part), 1e-9);
    }
}

TEST(TetragonalSplit, BranchesRelatedByEighthTurn) {
    // the eighth turn fixes the transverse part and maps C^1 to -C^2
    rng g(67);
    const rotation r = g.random_rotation();
    const harm_tensor h = random_in_class(class_tag::tetragonal, {1.3, 0.4}, r);
    const split_result s1 = tetragonal_split(h, 1), s2 = tetragonal_split(h, 2);
    const rotation c = r * rotation_r() * r.inverse();
    EXPECT_LT(rel(rotate(c, s1.transverse_part), s1.transverse_part), 1e-10);
    EXPECT_LT(rel(rotate(c, s1.cubic_part), -1.0 * s2.cubic_part), 1e-10);
}

TEST(TetragonalSplit, Degeneracies) {
    EXPECT_THROW(tetragonal_split(fixture_C01(), 1), degenerate_class_error);
    EXPECT_THROW(tetragonal_split(fixture_T0(), 1), degenerate_class_error);
    try {
        tetragonal_split(fixture_T0(), 1);
    } catch (const degenerate_class_error& e) {
        EXPECT_NE(std::string(e.what()).find("K10"), std::string::npos);
    }
    EXPECT_THROW(tetragonal_split(fixture_T0(), 3), domain_error);
}

TEST(TrigonalSplit, NormalFormExample) {
    const harm_tensor h = make_normal_form(class_tag::trigonal, {1.0, 1.0}).tensor();
    const split_result s = trigonal_split(h, 1);
    EXPECT_LT(rel(s.transverse_part, ((10 - sqrt2) / 10) * fixture_T0()), 1e-12);
    EXPECT_LT(rel(s.cubic_part, (sqrt2 / 10) * fixture_Ct1()), 1e-12);
    const class_params p = trigonal_params(h);
    EXPECT_NEAR(p.delta, 1.0, 1e-12);
    EXPECT_NEAR(p.sigma, 1.0, 1e-12);
}

TEST(TrigonalSplit, RotatedMembersBothBranches) {
    rng g(68);
    for (int trial = 0; trial < 20; ++trial) {
        const auto sd = draw_sigma_delta(g, std::sqrt(50.0));
        const rotation r = g.random_rotation();
        const harm_tensor h = random_in_class(class_tag::trigonal, sd, r);
        for (int k = 1; k <= 2; ++k) {
            const split_result s = trigonal_split(h, k);
            EXPECT_LT(rel(s.transverse_part + s.cubic_part, h), 1e-10);
            EXPECT_LT(symmetry_residual(s.cubic_part, trigonal_branch_group(k, r)), 1e-9);
            EXPECT_LT(symmetry_residual(s.transverse_part, axial_sample(r.matrix().col(2))), 1e-9);
        }
        const split_result c = trigonal_split_closed(h), t = trigonal_split(h, 2);
        EXPECT_LT(rel(c.transverse_part, t.transverse_part), 1e-9);
        EXPECT_LT(rel(c.cubic_part, t.cubic_part), 1e-9);
    }
}

TEST(TrigonalSplit, Degeneracies) {
    EXPECT_THROW(trigonal_split(fixture_Ct1(), 1), degenerate_class_error);
    EXPECT_THROW(trigonal_split(fixture_T0(), 2), degenerate_class_error);
}

TEST(HSquared, MatchesIdentityOnNormalForm) {
    // on H0(sigma, delta), C^1 is a multiple of C01, which pins down (H^2)_0
    const double s = 0.8, d = -0.3;
    const harm_tensor h = make_normal_form(class_tag::tetragonal, {s, d}).tensor();
    const harm_tensor h2 = h_squared_harmonic(h);
    // (H^2)_0 = (2 (5d - s)/7) (C^1 - (1 - 14 d/(5d - s)) H)
    const harm_tensor c1 = (-s / 5) * fixture_C01();
    const harm_tensor want = (2 * (5 * d - s) / 7) * (c1 - (1 - 14 * d / (5 * d - s)) * h);
    EXPECT_LT(rel(h2, want), 1e-12);
}

TEST(HSquared, EquivariantAndZero) {
    rng g(69);
    const harm_tensor h = random_harm(4, g);
    const rotation r = g.random_rotation();
    EXPECT_LT(rel(h_squared_harmonic(rotate(r, h)), rotate(r, h_squared_harmonic(h))), 1e-12);
    EXPECT_EQ(inner_norm(h_squared_harmonic(harm_tensor::unchecked(sym_tensor(4)))), 0.0);
}
