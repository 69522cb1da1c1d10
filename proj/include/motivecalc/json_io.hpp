#pragma once

// JSON (de)serialization for every input and report schema: fields, scalars,
// algebra documents (with constructor shorthands), quadratic forms, K0 models,
// motive expressions, and the analysis reports the CLI emits.

#include <string>
#include <vector>

#include <json.hpp>

#include "motivecalc/k0ring.hpp"

namespace motivecalc {

using Json = nlohmann::ordered_json;

namespace jsondetail {

[[noreturn]] inline void bad(const std::string& path, const std::string& what) {
    throw Error(ErrorKind::InvalidInput, "schema violation at \"" + path + "\": " + what);
}

inline const Json& member(const Json& j, const std::string& path, const std::string& key) {
    if (!j.is_object()) bad(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) bad(path + "/" + key, "missing member");
    return *it;
}

inline size_t count_field(const Json& j, const std::string& path, const std::string& key, size_t max) {
    const Json& v = member(j, path, key);
    if (!v.is_number_unsigned() || v.get<size_t>() > max)
        bad(path + "/" + key, "expected an integer in [0, " + std::to_string(max) + "]");
    return v.get<size_t>();
}

inline mpq_class parse_rational(const Json& j, const std::string& path) {
    if (j.is_number_integer()) return mpq_class(static_cast<long>(j.get<std::int64_t>()));
    if (j.is_string()) {
        try {
            mpq_class q(j.get<std::string>());
            q.canonicalize();
            return q;
        } catch (...) {
            bad(path, "malformed rational string");
        }
    }
    bad(path, "expected an integer or a \"num/den\" string");
}

inline mpz_class parse_integer(const Json& j, const std::string& path) {
    mpq_class q = parse_rational(j, path);
    if (q.get_den() != 1) bad(path, "expected an integer");
    return q.get_num();
}

} // namespace jsondetail

// ---------------------------------------------------------------------------
// fields and scalars

inline Json field_to_json(const FieldPtr& k);
inline Json scalar_to_json(const Scalar& s);

inline Scalar scalar_from_json(const FieldPtr& k, const Json& j, const std::string& path) {
    using jsondetail::bad;
    if (k->kind() == FieldKind::Extension) {
        if (j.is_array()) {
            if (static_cast<int>(j.size()) > k->ext_degree()) bad(path, "too many extension coordinates");
            std::vector<Scalar> c;
            for (size_t i = 0; i < j.size(); ++i) c.push_back(scalar_from_json(k->base(), j[i], path + "/" + std::to_string(i)));
            return k->from_coeffs(std::move(c));
        }
        return k->from_rational(jsondetail::parse_rational(j, path));
    }
    mpq_class q = jsondetail::parse_rational(j, path);
    if (k->kind() == FieldKind::Prime && q.get_den() % k->characteristic() == 0)
        bad(path, "denominator divisible by the characteristic");
    return k->from_rational(q);
}

inline Json scalar_to_json(const Scalar& s) {
    switch (s.field()->kind()) {
        case FieldKind::Rationals: return s.rational().get_str();
        case FieldKind::Prime: return s.residue();
        default: {
            Json a = Json::array();
            for (const Scalar& c : s.coeffs()) a.push_back(scalar_to_json(c));
            return a;
        }
    }
}

inline FieldPtr field_from_json(const Json& j, const std::string& path = "/field") {
    using jsondetail::bad;
    const Json& kind = jsondetail::member(j, path, "kind");
    if (!kind.is_string()) bad(path + "/kind", "expected a string");
    std::string k = kind.get<std::string>();
    if (k == "Q") return Field::rationals();
    if (k == "Fp") {
        const Json& p = jsondetail::member(j, path, "p");
        if (!p.is_number_integer()) bad(path + "/p", "expected an integer");
        return Field::prime(p.get<std::int64_t>());
    }
    if (k == "ext") {
        FieldPtr base = field_from_json(jsondetail::member(j, path, "base"), path + "/base");
        const Json& mp = jsondetail::member(j, path, "minpoly");
        if (!mp.is_array() || mp.size() < 3) bad(path + "/minpoly", "expected a coefficient array of degree >= 2");
        std::vector<Scalar> coeffs;
        for (size_t i = 0; i < mp.size(); ++i)
            coeffs.push_back(scalar_from_json(base, mp[i], path + "/minpoly/" + std::to_string(i)));
        return make_extension(base, std::move(coeffs));
    }
    bad(path + "/kind", "unknown field kind '" + k + "'");
}

inline Json field_to_json(const FieldPtr& k) {
    Json j;
    switch (k->kind()) {
        case FieldKind::Rationals: j["kind"] = "Q"; break;
        case FieldKind::Prime:
            j["kind"] = "Fp";
            j["p"] = k->characteristic();
            break;
        default:
            j["kind"] = "ext";
            j["base"] = field_to_json(k->base());
            j["minpoly"] = Json::array();
            for (const Scalar& c : k->minpoly()) j["minpoly"].push_back(scalar_to_json(c));
    }
    return j;
}

inline Json poly_to_json(const PolyVec& p) {
    Json a = Json::array();
    for (const Scalar& c : p) a.push_back(scalar_to_json(c));
    return a;
}

inline Json vec_to_json(const Vec& v) {
    Json a = Json::array();
    for (const Scalar& c : v) a.push_back(scalar_to_json(c));
    return a;
}

inline Vec vec_from_json(const FieldPtr& k, const Json& j, size_t dim, const std::string& path) {
    if (!j.is_array() || j.size() != dim)
        jsondetail::bad(path, "expected an array of length " + std::to_string(dim));
    Vec v;
    for (size_t i = 0; i < dim; ++i) v.push_back(scalar_from_json(k, j[i], path + "/" + std::to_string(i)));
    return v;
}

// ---------------------------------------------------------------------------
// algebra documents

inline Algebra algebra_from_json(const Json& j, const std::string& path = "");

namespace jsondetail {

inline Algebra algebra_make(const Json& j, const std::string& path) {
    std::string make = member(j, path, "make").get<std::string>();
    auto field = [&] { return field_from_json(member(j, path, "field"), path + "/field"); };
    if (make == "matrix") return alg_matrix(field(), count_field(j, path, "n", 8));
    if (make == "quaternion") {
        FieldPtr k = field();
        return alg_quaternion(k, scalar_from_json(k, member(j, path, "a"), path + "/a"),
                              scalar_from_json(k, member(j, path, "b"), path + "/b"));
    }
    if (make == "path") {
        const Json& arrows = member(j, path, "arrows");
        if (!arrows.is_array()) bad(path + "/arrows", "expected an array of [from,to] pairs");
        std::vector<std::pair<size_t, size_t>> ar;
        for (size_t i = 0; i < arrows.size(); ++i) {
            const Json& a = arrows[i];
            if (!a.is_array() || a.size() != 2 || !a[0].is_number_unsigned() || !a[1].is_number_unsigned())
                bad(path + "/arrows/" + std::to_string(i), "expected [from,to]");
            ar.emplace_back(a[0].get<size_t>(), a[1].get<size_t>());
        }
        return alg_path(field(), count_field(j, path, "vertices", 8), ar);
    }
    if (make == "upper_triangular") return alg_upper_triangular(field(), count_field(j, path, "n", 8));
    if (make == "dual_numbers") return alg_dual_numbers(field());
    if (make == "cyclic_group") return alg_cyclic_group(field(), count_field(j, path, "n", 64));
    if (make == "weyl_fiber") {
        auto p = static_cast<std::int64_t>(count_field(j, path, "p", 7));
        std::int64_t a = 0, b = 0;
        if (j.contains("a")) a = parse_integer(j["a"], path + "/a").get_si();
        if (j.contains("b")) b = parse_integer(j["b"], path + "/b").get_si();
        return alg_weyl_fiber(p, a, b);
    }
    if (make == "triangular_T") return alg_triangular_T(algebra_from_json(member(j, path, "base"), path + "/base"));
    if (make == "opposite") return alg_opposite(algebra_from_json(member(j, path, "base"), path + "/base"));
    if (make == "tensor" || make == "product") {
        Algebra a = algebra_from_json(member(j, path, "left"), path + "/left");
        Algebra b = algebra_from_json(member(j, path, "right"), path + "/right");
        return make == "tensor" ? alg_tensor(a, b) : alg_product(a, b);
    }
    bad(path + "/make", "unknown constructor '" + make + "'");
}

} // namespace jsondetail

inline QuadraticForm form_from_json(const Json& j, const std::string& path = "") {
    FieldPtr k = field_from_json(jsondetail::member(j, path, "field"), path + "/field");
    if (j.contains("diag")) {
        const Json& d = j["diag"];
        if (!d.is_array() || d.empty()) jsondetail::bad(path + "/diag", "expected a nonempty array");
        std::vector<Scalar> diag;
        for (size_t i = 0; i < d.size(); ++i) diag.push_back(scalar_from_json(k, d[i], path + "/diag/" + std::to_string(i)));
        return qf_from_diag(k, diag);
    }
    const Json& g = jsondetail::member(j, path, "gram");
    if (!g.is_array() || g.empty()) jsondetail::bad(path + "/gram", "expected a nonempty matrix");
    size_t n = g.size();
    Mat gram(k, n, n);
    for (size_t i = 0; i < n; ++i) {
        const Json& row = g[i];
        if (!row.is_array() || row.size() != n) jsondetail::bad(path + "/gram/" + std::to_string(i), "ragged matrix");
        for (size_t c = 0; c < n; ++c)
            gram.at(i, c) = scalar_from_json(k, row[c], path + "/gram/" + std::to_string(i) + "/" + std::to_string(c));
    }
    return qf_from_gram(k, std::move(gram));
}

inline Algebra algebra_from_json(const Json& j, const std::string& path) {
    using jsondetail::bad;
    if (!j.is_object()) bad(path, "expected an object");
    if (j.contains("make")) {
        std::string make = j["make"].get<std::string>();
        if (make == "clifford" || make == "even_clifford") {
            QuadraticForm q = form_from_json(j, path);
            return make == "clifford" ? clifford(q) : even_clifford(q);
        }
        return jsondetail::algebra_make(j, path);
    }
    FieldPtr k = field_from_json(jsondetail::member(j, path, "field"), path + "/field");
    size_t dim = jsondetail::count_field(j, path, "dim", kDefaultDimCap);
    const Json& table = jsondetail::member(j, path, "table");
    if (!table.is_array() || table.size() != dim) bad(path + "/table", "expected dim rows");
    std::vector<std::vector<Vec>> t;
    for (size_t i = 0; i < dim; ++i) {
        const Json& row = table[i];
        if (!row.is_array() || row.size() != dim) bad(path + "/table/" + std::to_string(i), "expected dim entries");
        std::vector<Vec> r;
        for (size_t c = 0; c < dim; ++c)
            r.push_back(vec_from_json(k, row[c], dim, path + "/table/" + std::to_string(i) + "/" + std::to_string(c)));
        t.push_back(std::move(r));
    }
    Vec unit = vec_from_json(k, jsondetail::member(j, path, "unit"), dim, path + "/unit");
    GlDim fgd = GlDim::Unknown;
    if (j.contains("flags")) {
        const Json& f = jsondetail::member(j["flags"], path + "/flags", "finite_global_dimension");
        std::string s = f.get<std::string>();
        if (s == "yes") fgd = GlDim::Yes;
        else if (s == "no") fgd = GlDim::No;
        else if (s != "unknown") bad(path + "/flags/finite_global_dimension", "expected yes|no|unknown");
    }
    Algebra a = alg_custom(k, std::move(t), std::move(unit), fgd);
    if (j.contains("label") && j["label"].is_string()) a.label = j["label"].get<std::string>();
    return a;
}

inline Json algebra_to_json(const Algebra& a) {
    Json j;
    j["field"] = field_to_json(a.field);
    j["dim"] = a.dim;
    Json table = Json::array();
    for (size_t i = 0; i < a.dim; ++i) {
        Json row = Json::array();
        for (size_t c = 0; c < a.dim; ++c) row.push_back(vec_to_json(a.table[i][c]));
        table.push_back(std::move(row));
    }
    j["table"] = std::move(table);
    j["unit"] = vec_to_json(a.unit);
    j["flags"] = Json{{"finite_global_dimension", gldim_name(a.fgd)}};
    j["label"] = a.label;
    return j;
}

// ---------------------------------------------------------------------------
// K0 models

inline K0RingModel k0_model_from_json(const Json& j, const std::string& path = "") {
    using jsondetail::bad;
    if (j.contains("builtin")) return k0_builtin(j["builtin"].get<std::string>());
    K0RingModel m;
    m.free_rank = jsondetail::count_field(j, path, "free_rank", 16);
    if (j.contains("torsion")) {
        const Json& t = j["torsion"];
        if (!t.is_array()) bad(path + "/torsion", "expected an array of moduli");
        for (size_t i = 0; i < t.size(); ++i)
            m.torsion.push_back(jsondetail::parse_integer(t[i], path + "/torsion/" + std::to_string(i)));
    }
    size_t n = m.gens();
    const Json& mult = jsondetail::member(j, path, "mult");
    if (!mult.is_array() || mult.size() != n) bad(path + "/mult", "expected one row per generator");
    for (size_t i = 0; i < n; ++i) {
        if (!mult[i].is_array() || mult[i].size() != n) bad(path + "/mult/" + std::to_string(i), "ragged table");
        std::vector<std::vector<mpz_class>> row;
        for (size_t c = 0; c < n; ++c) {
            const Json& e = mult[i][c];
            std::string p = path + "/mult/" + std::to_string(i) + "/" + std::to_string(c);
            if (!e.is_array() || e.size() != n) bad(p, "expected " + std::to_string(n) + " coordinates");
            std::vector<mpz_class> v;
            for (size_t t = 0; t < n; ++t) v.push_back(jsondetail::parse_integer(e[t], p + "/" + std::to_string(t)));
            row.push_back(std::move(v));
        }
        m.mult.push_back(std::move(row));
    }
    const Json& unit = jsondetail::member(j, path, "unit");
    if (!unit.is_array() || unit.size() != n) bad(path + "/unit", "expected " + std::to_string(n) + " coordinates");
    for (size_t i = 0; i < n; ++i) m.unit.push_back(jsondetail::parse_integer(unit[i], path + "/unit/" + std::to_string(i)));
    const Json& rm = jsondetail::member(j, path, "rank_map");
    if (!rm.is_array() || rm.empty()) bad(path + "/rank_map", "expected at least one row");
    for (size_t i = 0; i < rm.size(); ++i) {
        const Json& row = rm[i];
        std::string p = path + "/rank_map/" + std::to_string(i);
        if (!row.is_array() || row.size() != n) bad(p, "expected " + std::to_string(n) + " entries");
        std::vector<mpz_class> v;
        for (size_t t = 0; t < n; ++t) v.push_back(jsondetail::parse_integer(row[t], p + "/" + std::to_string(t)));
        m.rank_map.push_back(std::move(v));
    }
    if (j.contains("label") && j["label"].is_string()) m.label = j["label"].get<std::string>();
    return k0_make(std::move(m));
}

inline Json k0_model_to_json(const K0RingModel& m) {
    Json j;
    j["free_rank"] = m.free_rank;
    j["torsion"] = Json::array();
    for (const auto& t : m.torsion) j["torsion"].push_back(t.get_str());
    Json mult = Json::array();
    for (const auto& row : m.mult) {
        Json r = Json::array();
        for (const auto& e : row) {
            Json v = Json::array();
            for (const auto& c : e) v.push_back(c.get_str());
            r.push_back(std::move(v));
        }
        mult.push_back(std::move(r));
    }
    j["mult"] = std::move(mult);
    j["unit"] = Json::array();
    for (const auto& c : m.unit) j["unit"].push_back(c.get_str());
    j["rank_map"] = Json::array();
    for (const auto& row : m.rank_map) {
        Json r = Json::array();
        for (const auto& c : row) r.push_back(c.get_str());
        j["rank_map"].push_back(std::move(r));
    }
    j["label"] = m.label;
    return j;
}

inline std::vector<mpq_class> k0_coords_from_json(const Json& j, size_t n, const std::string& path) {
    if (!j.is_array() || j.size() != n)
        jsondetail::bad(path, "expected " + std::to_string(n) + " coordinates");
    std::vector<mpq_class> c;
    for (size_t i = 0; i < n; ++i) c.push_back(jsondetail::parse_rational(j[i], path + "/" + std::to_string(i)));
    return c;
}

inline Json k0_element_to_json(const K0Element& e) {
    Json a = Json::array();
    for (const auto& c : e.coords) a.push_back(c.get_str());
    return a;
}

// ---------------------------------------------------------------------------
// motive expressions and reports

inline Json atom_to_json(const MotiveAtom& a) {
    Json j;
    switch (a.kind) {
        case MotiveAtom::Kind::Field:
            j["kind"] = "field";
            j["field"] = field_to_json(a.base);
            j["minpoly"] = poly_to_json(a.minpoly);
            break;
        case MotiveAtom::Kind::Algebra:
            j["kind"] = "algebra";
            j["algebra"] = algebra_to_json(*a.alg);
            break;
        default:
            j["kind"] = "tensor_power";
            j["base_algebra"] = algebra_to_json(*a.alg);
            j["power"] = a.power;
    }
    if (!a.note.empty()) j["note"] = a.note;
    j["display"] = a.str();
    return j;
}

inline Json expr_to_json(const MotiveExpr& e) {
    Json a = Json::array();
    for (const auto& t : e.terms) a.push_back(Json{{"atom", atom_to_json(t.atom)}, {"coeff", t.coeff.get_str()}});
    return a;
}

inline MotiveExpr expr_from_json(const Json& j, const std::string& path = "") {
    using jsondetail::bad;
    if (!j.is_array()) bad(path, "expected an array of terms");
    MotiveExpr e;
    for (size_t i = 0; i < j.size(); ++i) {
        std::string p = path + "/" + std::to_string(i);
        const Json& atom = jsondetail::member(j[i], p, "atom");
        std::string kind = jsondetail::member(atom, p + "/atom", "kind").get<std::string>();
        MotiveAtom a = [&] {
            if (kind == "field") {
                FieldPtr k = field_from_json(jsondetail::member(atom, p + "/atom", "field"), p + "/atom/field");
                const Json& mp = jsondetail::member(atom, p + "/atom", "minpoly");
                if (!mp.is_array() || mp.size() < 2) bad(p + "/atom/minpoly", "expected a nonconstant polynomial");
                PolyVec poly;
                for (size_t c = 0; c < mp.size(); ++c)
                    poly.push_back(scalar_from_json(k, mp[c], p + "/atom/minpoly/" + std::to_string(c)));
                return MotiveAtom::field(k, std::move(poly));
            }
            if (kind == "algebra")
                return MotiveAtom::algebra(std::make_shared<const Algebra>(
                    algebra_from_json(jsondetail::member(atom, p + "/atom", "algebra"), p + "/atom/algebra")));
            if (kind == "tensor_power")
                return MotiveAtom::tensor_power(
                    std::make_shared<const Algebra>(
                        algebra_from_json(jsondetail::member(atom, p + "/atom", "base_algebra"), p + "/atom/base_algebra")),
                    jsondetail::count_field(atom, p + "/atom", "power", 16));
            bad(p + "/atom/kind", "unknown atom kind '" + kind + "'");
        }();
        mpq_class coeff = jsondetail::parse_rational(jsondetail::member(j[i], p, "coeff"), p + "/coeff");
        e.terms.push_back({std::move(a), std::move(coeff)});
    }
    e.canonicalize();
    return e;
}

inline Json trace_to_json(const std::vector<RuleStep>& trace) {
    Json a = Json::array();
    for (const auto& s : trace)
        a.push_back(Json{{"rule", s.rule}, {"from", s.from}, {"to", s.to}, {"hypothesis", s.hypothesis}});
    return a;
}

inline Json wedderburn_to_json(const WedderburnReport& w) {
    Json j;
    j["radical_dim"] = w.radical_dim;
    j["all_resolved"] = w.all_resolved;
    Json comps = Json::array();
    for (const auto& c : w.components) {
        Json e;
        e["component_dim"] = c.component_dim;
        e["center_degree"] = c.center_degree;
        e["center_minpoly"] = poly_to_json(c.center_minpoly);
        e["dim_over_center"] = c.dim_over_center;
        e["matrix_size"] = c.n;
        e["division_degree"] = c.e;
        e["resolved"] = c.n != 0;
        comps.push_back(std::move(e));
    }
    j["components"] = std::move(comps);
    return j;
}

inline Json clifford_verification_to_json(const CliffordVerification& v) {
    Json j;
    j["n"] = v.prediction.n;
    j["n_odd"] = v.prediction.n_odd;
    j["delta"] = scalar_to_json(v.prediction.delta);
    j["delta_is_square"] = v.prediction.delta_is_square;
    j["full_shape"] = clifford_shape_name(v.prediction.full_shape);
    j["even_shape"] = clifford_shape_name(v.prediction.even_shape);
    if (!v.prediction.center_minpoly.empty())
        j["center_minpoly"] = poly_to_json(v.prediction.center_minpoly);
    j["full_ok"] = v.full_ok;
    j["even_ok"] = v.even_ok;
    j["match"] = v.match;
    if (!v.detail.empty()) j["detail"] = v.detail;
    return j;
}

inline Json hh_to_json(const HHDims& h) {
    Json j;
    j["dims"] = h.dims;
    j["max_degree"] = h.max_degree;
    j["chain_dims"] = h.chain_dims;
    return j;
}

} // namespace motivecalc
