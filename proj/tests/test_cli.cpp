#include "htk/cli.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace htk;

namespace {

struct run_result {
    int code;
    std::string out, err;
};

run_result run(std::vector<std::string> args, const std::string& input = "") {
    args.insert(args.begin(), "htk");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::istringstream in(input);
    std::ostringstream out, err;
    const int code = cli_main(static_cast<int>(argv.size()), argv.data(), in, out, err);
    return {code, out.str(), err.str()};
}

json parse(const std::string& s) { return json::parse(s); }

std::string isotropic_elasticity() {
    return R"({"schema": "htk/1", "kind": "elasticity", "convention": "voigt", "matrix": [
        [3, 1, 1, 0, 0, 0], [1, 3, 1, 0, 0, 0], [1, 1, 3, 0, 0, 0],
        [0, 0, 0, 1, 0, 0], [0, 0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 1]]})";
}

}  // namespace

TEST(Cli, GenerateTransverseThenInvariants) {
    const auto gen = run({"generate", "--class", "transverse", "--delta", "1", "--seed", "7"});
    ASSERT_EQ(gen.code, 0) << gen.err;
    const auto inv = run({"invariants"}, gen.out);
    ASSERT_EQ(inv.code, 0) << inv.err;
    const json j = parse(inv.out);
    const double j2 = j["invariants"]["J2"], j3 = j["invariants"]["J3"];
    EXPECT_NEAR(7 * j3, 18 * j2, 1e-9 * std::abs(18 * j2));
    EXPECT_TRUE(j["invariants"]["sigma1"].is_null());
}

TEST(Cli, DecomposeIsotropicElasticity) {
    const auto r = run({"decompose"}, isotropic_elasticity());
    ASSERT_EQ(r.code, 0) << r.err;
    const json j = parse(r.out);
    EXPECT_EQ(j["schema"], "htk/1");
    for (const auto& row : j["a_prime"])
        for (const auto& v : row) EXPECT_EQ(v.get<double>(), 0.0);
    for (const auto& row : j["b_prime"])
        for (const auto& v : row) EXPECT_EQ(v.get<double>(), 0.0);
    EXPECT_LT(j["H_norm"].get<double>(), 1e-15);
}

TEST(Cli, GenerateOrthotropicThenReconstruct) {
    const auto gen = run({"generate", "--class", "orthotropic", "--lambdas", "1,2,4", "--seed", "3"});
    ASSERT_EQ(gen.code, 0) << gen.err;
    const auto r = run({"reconstruct"}, gen.out);
    ASSERT_EQ(r.code, 0) << r.err;
    const json j = parse(r.out);
    EXPECT_EQ(j["class"], "orthotropic");
    EXPECT_LE(j["residual"].get<double>(), 1e-9);
}

TEST(Cli, Deterministic) {
    const std::vector<std::string> args{"generate", "--class", "tetragonal", "--sigma", "1.5", "--delta", "0.2",
                                        "--seed", "11"};
    const auto a = run(args), b = run(args);
    EXPECT_EQ(a.out, b.out);
    const auto m1 = run({"multipoles", "--seed", "4"}, a.out), m2 = run({"multipoles", "--seed", "4"}, a.out);
    EXPECT_EQ(m1.code, 0);
    EXPECT_EQ(m1.out, m2.out);
}

TEST(Cli, SubcommandsOnGeneratedInput) {
    const auto gen = run({"generate", "--class", "trigonal", "--sigma", "1", "--delta", "0.5", "--seed", "2"});
    ASSERT_EQ(gen.code, 0);
    for (const std::string cmd : {"decompose", "invariants", "covariants", "multipoles", "factorize", "square-diff",
                                  "classify", "split", "verify"}) {
        const auto r = run({cmd}, gen.out);
        EXPECT_EQ(r.code, 0) << cmd << ": " << r.err;
        EXPECT_EQ(parse(r.out)["schema"], "htk/1");
    }
    const json c = parse(run({"classify"}, gen.out).out);
    EXPECT_EQ(c["class"], "trigonal");
    const json s = parse(run({"split", "--branch", "2"}, gen.out).out);
    EXPECT_EQ(s["branch"], 2);
    EXPECT_LE(s["residual"].get<double>(), 1e-10);
    EXPECT_NEAR(s["sigma"].get<double>(), 1.0, 1e-9);
}

TEST(Cli, VerifyRoundTrip) {
    const auto r = run({"verify"}, isotropic_elasticity());
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_LE(parse(r.out)["checks"][0]["residual"].get<double>(), 1e-12);
}

TEST(Cli, SeventeenDigits) {
    const auto gen = run({"generate", "--class", "transverse", "--delta", "0.1", "--seed", "1"});
    EXPECT_NE(gen.out.find("0.10000000000000001"), std::string::npos);
}

TEST(Cli, ErrorsAndExitCodes) {
    EXPECT_EQ(run({"invariants"}, "{not json").code, 1);
    EXPECT_EQ(run({"invariants"}, R"({"kind": "harmonic4", "matrix": [[1, 2], [3, 4]]})").code, 1);
    EXPECT_EQ(run({"invariants"}, R"({"kind": "tensor", "matrix": [[1]]})").code, 1);
    EXPECT_EQ(run({"generate", "--class", "orthotropic", "--lambdas", "1,1,2"}).code, 1);
    EXPECT_EQ(run({"bogus"}).code, 1);
    const auto cubic = run({"generate", "--class", "cubic", "--scale", "2"});
    ASSERT_EQ(cubic.code, 0);
    const auto r = run({"reconstruct", "--class", "transverse"}, cubic.out);
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("degenerate"), std::string::npos);
}

TEST(Cli, FileInputAndOutput) {
    const std::string in = ::testing::TempDir() + "htk_in.json", out = ::testing::TempDir() + "htk_out.json";
    ASSERT_EQ(run({"generate", "--class", "cubic", "--output", in}).code, 0);
    ASSERT_EQ(run({"classify", "--input", in, "--output", out}).code, 0);
    std::ifstream f(out);
    const json j = json::parse(f);
    EXPECT_EQ(j["class"], "cubic");
}
