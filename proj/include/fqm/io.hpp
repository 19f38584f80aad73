#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "fqm/born.hpp"
#include "fqm/cyclo.hpp"
#include "fqm/forms.hpp"
#include "fqm/relations.hpp"

namespace fqm::io {

using nlohmann::json;

inline json exact(const Rat& q) { return to_string(q); }

// Exact string plus an advisory float pair.
inline json exact(const Cyclotomic& z) {
    auto c = z.to_complex();
    json j{{"exact", z.to_string()}, {"re", c.real()}, {"im", c.imag()}};
    if (z.is_rational()) j["rational"] = to_string(z.rational_value());
    return j;
}

inline json matrix_rows(const IntMatrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        std::string s;
        for (int j = 0; j < m.cols(); ++j) s += std::to_string(m(i, j));
        rows.push_back(s);
    }
    return rows;
}

inline json factor_json(const LinearFactor& f) {
    json c = json::array();
    for (const auto& x : f.coeffs) c.push_back(exact(x));
    return {{"coefficients", c}, {"exponent", f.exponent}};
}

inline json factorization_json(const FactorizationResult& fr) {
    json fs = json::array();
    for (const auto& f : fr.factors) fs.push_back(factor_json(f));
    return {{"conductor", fr.conductor}, {"seed", fr.seed}, {"attempts", fr.attempts}, {"factors", fs}};
}

inline json form_json(const InvariantForm& f) {
    json c = json::array();
    for (const auto& x : f.coefficients()) c.push_back(exact(x));
    return {{"component", f.label + 1},
            {"dimension", f.dimension},
            {"normalization", exact(f.normalization)},
            {"coefficients", c}};
}

inline json relation_json(const Relation& r) {
    return {{"points", r.points()}, {"q", r.q()}, {"size", r.count()}, {"bits", r.bit_string()}};
}

inline json decomposition_json(const Decomposition& d) {
    json cons = json::array();
    for (const auto& c : d.consequences) cons.push_back({{"face", c.face}, {"relation", relation_json(c.relation)}});
    return {{"reducible", d.reducible},
            {"prime", d.prime},
            {"consequence_set", d.consequence_set},
            {"consequences", cons},
            {"principal_factor", relation_json(d.factor)}};
}

inline StateVector parse_state(const std::string& s) {
    StateVector v;
    for (int x : detail::parse_int_list(s)) v.push_back(x);
    return v;
}

} // namespace fqm::io
