#pragma once

// Command-line front end. Every subcommand reads one JSON tensor document
// (file or stdin) and writes one JSON object. Exit codes: 0 success, 1 input
// error, 2 degenerate class or numerical failure.

#include "classify.hpp"
#include "document.hpp"
#include "factorization.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

namespace htk {

namespace detail {

struct cli_options {
    std::string input, output;
    double tol = 1e-7;
    std::uint64_t seed = 0;
    std::string cls;
    double delta = 1, sigma = 1, scale = 1;
    std::vector<double> lambdas;
    int branch = 1;
};

inline json mat3_json(const mat3& m) { return matrix_json(m); }

inline json kelvin_json(const harm_tensor& h) { return matrix_json(kelvin_from_harm4(h)); }

inline json opt_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

inline json header(const std::string& command) {
    json j;
    j["schema"] = schema_id;
    j["command"] = command;
    return j;
}

inline double rel(const harm_tensor& a, const harm_tensor& b) {
    const double n = inner_norm(b);
    return n > 0 ? inner_norm(a - b) / n : inner_norm(a);
}

inline harm_tensor order2(const tensor_document& d) {
    return harm_tensor::unchecked(sym_tensor::from_matrix(deviator(d.matrix3())));
}

inline json run_decompose(const tensor_document& d) {
    json j = header("decompose");
    if (d.kind == "elasticity") {
        const elasticity_tensor e(d.kelvin());
        const auto q = decompose_elasticity(e);
        j["alpha"] = q.alpha;
        j["beta"] = q.beta;
        j["a_prime"] = mat3_json(q.a_prime);
        j["b_prime"] = mat3_json(q.b_prime);
        j["H"] = kelvin_json(q.h);
        j["H_norm"] = inner_norm(q.h);
    } else if (d.kind == "symmetric2") {
        const mat3 m = d.matrix3();
        j["trace"] = m.trace();
        j["deviator"] = mat3_json(deviator(m));
    } else {
        j["H"] = kelvin_json(d.harmonic4());
    }
    return j;
}

inline json run_invariants(const tensor_document& d) {
    const auto v = invariants(d.harmonic4());
    json j = header("invariants");
    json inv;
    for (int k = 2; k <= 10; ++k) inv["J" + std::to_string(k)] = v.J[k];
    inv["K4"] = v.K4;
    inv["K6"] = v.K6;
    inv["K10"] = v.K10;
    inv["L10"] = v.L10;
    inv["M10"] = v.M10;
    inv["Delta3"] = v.Delta3;
    inv["sigma1"] = opt_json(v.sigma1);
    inv["sigma2"] = opt_json(v.sigma2);
    inv["sigma3"] = opt_json(v.sigma3);
    inv["sigma_eq"] = opt_json(v.sigma_eq);
    inv["lode"] = opt_json(v.lode);
    j["invariants"] = inv;
    return j;
}

inline json run_covariants(const tensor_document& d) {
    const auto c = covariants(d.harmonic4());
    json j = header("covariants");
    json cov;
    for (int k = 2; k <= 10; ++k) cov["d" + std::to_string(k)] = mat3_json(c[k]);
    j["covariants"] = cov;
    return j;
}

inline json run_multipoles(const tensor_document& d, const cli_options& o) {
    const harm_tensor h = d.kind == "symmetric2" ? order2(d) : d.harmonic4();
    const auto m = maxwell_multipoles(h, o.seed);
    json j = header("multipoles");
    j["order"] = h.order();
    json vs = json::array();
    for (const auto& w : m.vectors) vs.push_back(vector_json(w));
    j["multipoles"] = vs;
    j["ill_conditioned"] = m.ill_conditioned;
    j["residual"] = rel(rebuild_from_multipoles(m), h);
    return j;
}

inline json run_factorize(const tensor_document& d, const cli_options& o) {
    const harm_tensor h = d.harmonic4();
    const auto f = factor_equal_orders(h, 2, 2, o.seed);
    json j = header("factorize");
    j["factors"] = json::array({mat3_json(f[0].inner().to_matrix()), mat3_json(f[1].inner().to_matrix())});
    j["residual"] = rel(harmonic_product(f[0], f[1]), h);
    return j;
}

inline json run_square_diff(const tensor_document& d, const cli_options& o) {
    const harm_tensor h = d.harmonic4();
    const auto [h1, h2] = square_difference(h, o.seed);
    json j = header("square-diff");
    j["h1"] = mat3_json(h1.inner().to_matrix());
    j["h2"] = mat3_json(h2.inner().to_matrix());
    j["residual"] = rel(harmonic_product(h1, h1) - harmonic_product(h2, h2), h);
    return j;
}

inline class_tag requested_class(const harm_tensor& h, const cli_options& o) {
    return o.cls.empty() ? classify(h, o.tol).tag : parse_class_tag(o.cls);
}

inline json run_reconstruct(const tensor_document& d, const cli_options& o) {
    const harm_tensor h = d.harmonic4();
    const class_tag t = requested_class(h, o);
    harm_tensor r;
    if (t == class_tag::transverse)
        r = reconstruct_transverse(h);
    else if (t == class_tag::orthotropic)
        r = reconstruct_orthotropic(h);
    else
        throw degenerate_class_error("reconstruct: no second-order reconstruction for class " + to_string(t));
    json j = header("reconstruct");
    j["class"] = to_string(t);
    j["reconstruction"] = kelvin_json(r);
    j["residual"] = rel(r, h);
    if (t == class_tag::orthotropic) {
        j["lambda_prime"] = mat3_json(lambda_prime(h));
        const auto c = orthotropic_h(h);
        j["h"] = json::array({c.h1, c.h2, c.h3});
    }
    const auto b = perfect_square_test(h);
    j["perfect_square_root"] = b ? mat3_json(*b) : json(nullptr);
    return j;
}

inline json run_split(const tensor_document& d, const cli_options& o) {
    const harm_tensor h = d.harmonic4();
    const class_tag t = requested_class(h, o);
    if (t != class_tag::tetragonal && t != class_tag::trigonal)
        throw degenerate_class_error("split: only tetragonal and trigonal tensors split, got " + to_string(t));
    const bool tet = t == class_tag::tetragonal;
    const split_result s = tet ? tetragonal_split(h, o.branch) : trigonal_split(h, o.branch);
    const class_params p = tet ? tetragonal_params(h) : trigonal_params(h);
    json j = header("split");
    j["class"] = to_string(t);
    j["branch"] = s.branch;
    j["delta"] = p.delta;
    j["sigma"] = p.sigma;
    j["transverse_part"] = kelvin_json(s.transverse_part);
    j["cubic_part"] = kelvin_json(s.cubic_part);
    j["residual"] = rel(s.transverse_part + s.cubic_part, h);
    return j;
}

inline json run_classify(const tensor_document& d, const cli_options& o) {
    const auto l = classify(d.harmonic4(), o.tol);
    json j = header("classify");
    j["class"] = to_string(l.tag);
    j["residual"] = l.residual;
    return j;
}

inline std::string number_list(const std::vector<double>& v) {
    std::ostringstream os;
    os.precision(17);
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    return os.str();
}

inline json run_generate(const cli_options& o) {
    if (o.cls.empty()) throw input_error("generate: --class is required");
    const class_tag t = parse_class_tag(o.cls);
    std::vector<double> p;
    switch (t) {
        case class_tag::transverse: p = {o.delta}; break;
        case class_tag::orthotropic: p = o.lambdas; break;
        case class_tag::tetragonal:
        case class_tag::trigonal: p = {o.sigma, o.delta}; break;
        case class_tag::cubic: p = {o.scale}; break;
        default: throw input_error("generate: no normal form for class " + o.cls);
    }
    rng gen(o.seed);
    const harm_tensor h = random_in_class(t, p, gen);
    return document_json(harmonic4_document(
        h, {{"class", to_string(t)}, {"params", number_list(p)}, {"seed", std::to_string(o.seed)}}));
}

inline json check(const std::string& name, double residual) {
    json c;
    c["name"] = name;
    c["residual"] = residual;
    return c;
}

inline json run_verify(const tensor_document& d, const cli_options& o) {
    json j = header("verify");
    json checks = json::array();
    if (d.kind == "elasticity") {
        const elasticity_tensor e(d.kelvin());
        const kelvin6 back = recompose_elasticity(decompose_elasticity(e)).kelvin();
        checks.push_back(check("elasticity_round_trip", (back - e.kelvin()).norm() / e.kelvin().norm()));
    } else if (d.kind == "symmetric2") {
        const mat3 m = d.matrix3();
        const auto parts = harmonic_decompose(sym_tensor::from_matrix(m));
        checks.push_back(
            check("harmonic_decomposition", inner_norm(parts.recompose() - sym_tensor::from_matrix(m)) /
                                                inner_norm(sym_tensor::from_matrix(m))));
    } else {
        const harm_tensor h = d.harmonic4();
        const class_tag t = requested_class(h, o);
        j["class"] = to_string(t);
        switch (t) {
            case class_tag::transverse: checks.push_back(check("transverse", rel(reconstruct_transverse(h), h))); break;
            case class_tag::orthotropic:
                checks.push_back(check("orthotropic", rel(reconstruct_orthotropic(h), h)));
                break;
            case class_tag::tetragonal:
            case class_tag::trigonal:
                for (int k = 1; k <= 2; ++k) {
                    const auto s = t == class_tag::tetragonal ? tetragonal_split(h, k) : trigonal_split(h, k);
                    checks.push_back(
                        check(to_string(t) + "_split_" + std::to_string(k), rel(s.transverse_part + s.cubic_part, h)));
                }
                break;
            case class_tag::cubic: checks.push_back(check("cubic_fit", fit_cubic(h).residual)); break;
            default: break;
        }
        const auto m = maxwell_multipoles(h, o.seed);
        checks.push_back(check("multipoles", rel(rebuild_from_multipoles(m), h)));
    }
    j["checks"] = checks;
    return j;
}

inline json read_input(const cli_options& o, std::istream& in) {
    std::string text;
    if (o.input.empty() || o.input == "-") {
        text.assign(std::istreambuf_iterator<char>(in), {});
    } else {
        std::ifstream f(o.input);
        if (!f) throw input_error("cannot open input file '" + o.input + "'");
        text.assign(std::istreambuf_iterator<char>(f), {});
    }
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw input_error(std::string("malformed JSON: ") + e.what());
    }
}

}  // namespace detail

inline int cli_main(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Harmonic tensor toolkit"};
    app.require_subcommand(1);
    detail::cli_options o;

    const std::vector<std::string> names{"decompose",   "invariants",  "covariants", "multipoles",
                                         "factorize",   "square-diff", "reconstruct", "split",
                                         "classify",    "generate",    "verify"};
    for (const auto& name : names) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--input", o.input, "input JSON document (default stdin)");
        sub->add_option("--output", o.output, "output file (default stdout)");
        sub->add_option("--tol", o.tol, "classifier tolerance");
        sub->add_option("--seed", o.seed, "random seed");
        sub->add_option("--class", o.cls, "symmetry class");
        sub->add_option("--delta", o.delta);
        sub->add_option("--sigma", o.sigma);
        sub->add_option("--scale", o.scale, "scale of the cubic normal form");
        sub->add_option("--lambdas", o.lambdas)->delimiter(',');
        sub->add_option("--branch", o.branch)->check(CLI::IsMember({1, 2}));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 1;
    }
    const std::string cmd = app.get_subcommands().front()->get_name();

    try {
        json result;
        if (cmd == "generate") {
            result = detail::run_generate(o);
        } else {
            const tensor_document d = document_from_json(detail::read_input(o, in));
            if (cmd == "decompose") result = detail::run_decompose(d);
            else if (cmd == "invariants") result = detail::run_invariants(d);
            else if (cmd == "covariants") result = detail::run_covariants(d);
            else if (cmd == "multipoles") result = detail::run_multipoles(d, o);
            else if (cmd == "factorize") result = detail::run_factorize(d, o);
            else if (cmd == "square-diff") result = detail::run_square_diff(d, o);
            else if (cmd == "reconstruct") result = detail::run_reconstruct(d, o);
            else if (cmd == "split") result = detail::run_split(d, o);
            else if (cmd == "classify") result = detail::run_classify(d, o);
            else result = detail::run_verify(d, o);
        }
        if (o.output.empty() || o.output == "-") {
            write_json(out, result);
        } else {
            std::ofstream f(o.output);
            if (!f) throw input_error("cannot open output file '" + o.output + "'");
            write_json(f, result);
        }
        return 0;
    } catch (const input_error& e) {
        err << "htk: input error: " << e.what() << "\n";
        return 1;
    } catch (const domain_error& e) {
        err << "htk: invalid input: " << e.what() << "\n";
        return 1;
    } catch (const degenerate_class_error& e) {
        err << "htk: degenerate class: " << e.what() << "\n";
        return 2;
    } catch (const conditioning_error& e) {
        err << "htk: numerical failure: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace htk
