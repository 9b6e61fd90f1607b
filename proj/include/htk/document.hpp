#pragma once

// JSON tensor documents ("schema": "htk/1") and a writer that prints every
// number with 17 significant digits.

#include "harmonic.hpp"

#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <string>

namespace htk {

using json = nlohmann::ordered_json;

inline constexpr const char* schema_id = "htk/1";

// Raised for malformed documents; the CLI maps it to exit code 1.
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct tensor_document {
    std::string kind = "harmonic4";     // elasticity | harmonic4 | symmetric2
    std::string convention = "kelvin";  // kelvin | voigt
    Eigen::MatrixXd matrix;             // as given, before any conversion
    std::map<std::string, std::string> metadata;

    // Kelvin form of a 6x6 document. Voigt stiffness entries get sqrt 2 per
    // shear index.
    kelvin6 kelvin() const {
        if (matrix.rows() != 6 || matrix.cols() != 6) throw input_error("document: expected a 6x6 matrix");
        kelvin6 k = matrix;
        if (convention == "voigt")
            for (int i = 0; i < 6; ++i)
                for (int j = 0; j < 6; ++j) k(i, j) *= kelvin_weight(i) * kelvin_weight(j);
        return k;
    }

    mat3 matrix3() const {
        if (matrix.rows() != 3 || matrix.cols() != 3) throw input_error("document: expected a 3x3 matrix");
        return matrix;
    }

    harm_tensor harmonic4(double tol = 1e-10) const {
        if (kind == "elasticity") return decompose_elasticity(elasticity_tensor(kelvin())).h;
        if (kind != "harmonic4") throw input_error("document: kind '" + kind + "' has no fourth-order harmonic part");
        try {
            return harm4_from_kelvin(kelvin(), tol);
        } catch (const domain_error& e) {
            throw input_error(std::string("document: ") + e.what());
        }
    }
};

inline json matrix_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (int j = 0; j < m.cols(); ++j) r.push_back(m(i, j));
        rows.push_back(r);
    }
    return rows;
}

inline json vector_json(const vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

inline Eigen::MatrixXd matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw input_error("document: matrix must be a non-empty array of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    if (!j[0].is_array()) throw input_error("document: matrix rows must be arrays");
    const auto cols = static_cast<Eigen::Index>(j[0].size());
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const json& r = j[i];
        if (!r.is_array() || static_cast<Eigen::Index>(r.size()) != cols)
            throw input_error("document: matrix rows have unequal lengths");
        for (Eigen::Index c = 0; c < cols; ++c) {
            if (!r[c].is_number()) throw input_error("document: matrix entries must be numbers");
            m(i, c) = r[c].get<double>();
        }
    }
    return m;
}

inline tensor_document document_from_json(const json& j) {
    if (!j.is_object()) throw input_error("document: top level must be an object");
    if (j.contains("schema") && j["schema"] != schema_id)
        throw input_error("document: unsupported schema " + j["schema"].dump());
    tensor_document d;
    if (!j.contains("kind") || !j["kind"].is_string()) throw input_error("document: missing string field 'kind'");
    d.kind = j["kind"].get<std::string>();
    if (d.kind != "elasticity" && d.kind != "harmonic4" && d.kind != "symmetric2")
        throw input_error("document: unknown kind '" + d.kind + "'");
    if (j.contains("convention")) {
        if (!j["convention"].is_string()) throw input_error("document: 'convention' must be a string");
        d.convention = j["convention"].get<std::string>();
    }
    if (d.convention != "kelvin" && d.convention != "voigt")
        throw input_error("document: unknown convention '" + d.convention + "'");
    if (!j.contains("matrix")) throw input_error("document: missing field 'matrix'");
    d.matrix = matrix_from_json(j["matrix"]);
    const int want = d.kind == "symmetric2" ? 3 : 6;
    if (d.matrix.rows() != want || d.matrix.cols() != want)
        throw input_error("document: kind '" + d.kind + "' needs a " + std::to_string(want) + "x" +
                          std::to_string(want) + " matrix");
    if (j.contains("metadata")) {
        if (!j["metadata"].is_object()) throw input_error("document: 'metadata' must be an object");
        for (const auto& [k, v] : j["metadata"].items())
            d.metadata[k] = v.is_string() ? v.get<std::string>() : v.dump();
    }
    return d;
}

inline json document_json(const tensor_document& d) {
    json j;
    j["schema"] = schema_id;
    j["kind"] = d.kind;
    j["convention"] = d.convention;
    j["matrix"] = matrix_json(d.matrix);
    json meta = json::object();
    for (const auto& [k, v] : d.metadata) meta[k] = v;
    j["metadata"] = meta;
    return j;
}

inline tensor_document harmonic4_document(const harm_tensor& h, std::map<std::string, std::string> meta = {}) {
    return {"harmonic4", "kelvin", kelvin_from_harm4(h), std::move(meta)};
}

namespace detail {

inline void write_number(std::ostream& os, double v) {
    if (!std::isfinite(v)) {
        os << "null";
        return;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os << buf;
}

inline void write_json(std::ostream& os, const json& j, int indent, int depth) {
    const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
    const std::string close(static_cast<std::size_t>(indent * depth), ' ');
    switch (j.type()) {
        case json::value_t::number_float: write_number(os, j.get<double>()); return;
        case json::value_t::object: {
            if (j.empty()) {
                os << "{}";
                return;
            }
            os << "{\n";
            bool first = true;
            for (const auto& [k, v] : j.items()) {
                if (!first) os << ",\n";
                first = false;
                os << pad << json(k).dump() << ": ";
                write_json(os, v, indent, depth + 1);
            }
            os << "\n" << close << "}";
            return;
        }
        case json::value_t::array: {
            if (j.empty()) {
                os << "[]";
                return;
            }
            // rows of numbers stay on one line
            bool flat = true;
            for (const auto& v : j) flat = flat && v.is_primitive();
            os << "[";
            if (!flat) os << "\n";
            bool first = true;
            for (const auto& v : j) {
                if (!first) os << (flat ? ", " : ",\n");
                first = false;
                if (!flat) os << pad;
                write_json(os, v, indent, depth + 1);
            }
            if (!flat) os << "\n" << close;
            os << "]";
            return;
        }
        default: os << j.dump(); return;
    }
}

}  // namespace detail

inline void write_json(std::ostream& os, const json& j) {
    detail::write_json(os, j, 2, 0);
    os << "\n";
}

}  // namespace htk
