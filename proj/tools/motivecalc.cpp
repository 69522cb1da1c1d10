// motivecalc: structure theory of finite-dimensional algebras and the motive
// rewrite calculus built on it. Subcommands: alg analyze, clifford,
// motive reduce, sb, quadric, k0 {nilpotence,invert}, hh, nil.

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "motivecalc/json_io.hpp"

using namespace motivecalc;

namespace {

struct Common {
    std::vector<std::int64_t> invert;
    std::string format = "text";
    std::uint64_t seed = 1;
    size_t max_dim = kDefaultDimCap;
    size_t max_degree = 2;
    std::string out;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--invert", c.invert, "primes to invert in the coefficient ring")->delimiter(',');
    cmd->add_option("--primes", c.invert, "alias for --invert")->delimiter(',');
    cmd->add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "text"}));
    cmd->add_option("--seed", c.seed, "seed for randomized searches");
    cmd->add_option("--max-dim", c.max_dim, "dimension cap for constructed algebras");
    cmd->add_option("--max-degree", c.max_degree, "top homological degree");
    cmd->add_option("--out", c.out, "write the report to a file instead of stdout");
}

CoefficientRing ring_of(const Common& c) { return CoefficientRing::inverting(c.invert); }

Json load_json(const std::string& file) {
    std::ifstream in(file);
    if (!in) throw Error(ErrorKind::InvalidInput, "cannot open '" + file + "'");
    try {
        return Json::parse(in);
    } catch (const std::exception& e) {
        throw Error(ErrorKind::InvalidInput, "parse error in '" + file + "': " + e.what());
    }
}

FieldPtr field_from_flag(const std::string& s) {
    if (s == "Q") return Field::rationals();
    if (s.size() > 1 && s[0] == 'F') {
        std::string num = s.substr(s[1] == 'p' && s.size() > 2 && s[2] == ':' ? 3 : 1);
        try {
            return Field::prime(std::stoll(num));
        } catch (const Error&) {
            throw;
        } catch (...) {
        }
    }
    throw Error(ErrorKind::InvalidInput, "bad field flag '" + s + "' (use Q or F<p>)");
}

std::vector<mpq_class> csv_rationals(const std::string& s) {
    std::vector<mpq_class> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            mpq_class q(item);
            q.canonicalize();
            out.push_back(std::move(q));
        } catch (...) {
            throw Error(ErrorKind::InvalidInput, "bad rational '" + item + "'");
        }
    }
    if (out.empty()) throw Error(ErrorKind::InvalidInput, "empty number list");
    return out;
}

// single rendering path: text output is a walk over the JSON report
void render_text(const Json& j, std::ostream& os, int indent = 0) {
    std::string pad(static_cast<size_t>(indent) * 2, ' ');
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (it.value().is_object() || (it.value().is_array() && !it.value().empty() &&
                                           (it.value()[0].is_object() || it.value()[0].is_array()))) {
                os << pad << it.key() << ":\n";
                render_text(it.value(), os, indent + 1);
            } else {
                os << pad << it.key() << ": " << (it.value().is_string() ? it.value().get<std::string>()
                                                                         : it.value().dump())
                   << "\n";
            }
        }
    } else if (j.is_array()) {
        for (const auto& v : j) {
            if (v.is_object() || v.is_array()) {
                os << pad << "-\n";
                render_text(v, os, indent + 1);
            } else {
                os << pad << "- " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
            }
        }
    } else {
        os << pad << j.dump() << "\n";
    }
}

void emit(const Json& report, const Common& c) {
    std::ostringstream os;
    if (c.format == "json")
        os << report.dump(2) << "\n";
    else
        render_text(report, os);
    if (c.out.empty()) {
        std::cout << os.str();
    } else {
        std::ofstream f(c.out);
        if (!f) throw Error(ErrorKind::InvalidInput, "cannot write '" + c.out + "'");
        f << os.str();
    }
}

Json base_report(const std::string& command, const Common& c) {
    Json j;
    j["command"] = command;
    j["seed"] = c.seed;
    j["coefficient_ring"] = ring_of(c).str();
    return j;
}

Algebra load_algebra(const std::string& file, const Common& c) {
    Algebra a = algebra_from_json(load_json(file));
    if (a.dim > c.max_dim)
        throw Error(ErrorKind::DimensionCap, "algebra dimension " + std::to_string(a.dim) +
                                                 " exceeds --max-dim " + std::to_string(c.max_dim));
    return a;
}

QuadraticForm form_from_inputs(const std::string& in, const std::string& field, const std::string& diag) {
    if (!in.empty()) return form_from_json(load_json(in));
    if (field.empty() || diag.empty())
        throw Error(ErrorKind::InvalidInput, "provide --in FILE or --field and --diag");
    FieldPtr k = field_from_flag(field);
    std::vector<Scalar> d;
    for (const auto& q : csv_rationals(diag)) d.push_back(k->from_rational(q));
    return qf_from_diag(k, d);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact structure theory of finite-dimensional algebras and motive reductions"};
    app.require_subcommand(1);
    std::function<void()> run;

    // --- alg analyze ------------------------------------------------------
    auto* alg = app.add_subcommand("alg", "algebra structure analysis");
    alg->require_subcommand(1);
    auto* analyze = alg->add_subcommand("analyze", "radical, center, Wedderburn components, separability");
    {
        static Common c;
        static std::string in;
        analyze->add_option("--in", in, "algebra JSON document")->required();
        add_common(analyze, c);
        analyze->callback([&] {
            run = [&] {
                Algebra a = load_algebra(in, c);
                Json rep = base_report("alg analyze", c);
                rep["label"] = a.label;
                rep["dim"] = a.dim;
                rep["field"] = field_to_json(a.field);
                IdealBasis rad = jacobson_radical(a);
                rep["radical_dim"] = rad.basis.size();
                rep["center_dim"] = center(a).alg.dim;
                rep["wedderburn"] = wedderburn_to_json(wedderburn(a, c.seed));
                if (a.dim <= 32) {
                    auto sep = is_separable(a);
                    rep["separable"] = sep.separable;
                    rep["central_simple"] = is_central_simple(a);
                }
                if (a.field->is_finite()) rep["unit_group_order"] = unit_group_order(a).get_str();
                emit(rep, c);
            };
        });
    }

    // --- clifford ---------------------------------------------------------
    auto* cliff = app.add_subcommand("clifford", "verify Clifford structure cases for a quadratic form");
    {
        static Common c;
        static std::string in, field, diag;
        cliff->add_option("--in", in, "form JSON document");
        cliff->add_option("--field", field, "inline field (Q or F<p>)");
        cliff->add_option("--diag", diag, "inline diagonal entries, comma separated");
        add_common(cliff, c);
        cliff->callback([&] {
            run = [&] {
                QuadraticForm q = form_from_inputs(in, field, diag);
                Json rep = base_report("clifford", c);
                rep["verification"] = clifford_verification_to_json(clifford_verify(q));
                emit(rep, c);
            };
        });
    }

    // --- motive reduce ----------------------------------------------------
    auto* motive = app.add_subcommand("motive", "motive expression calculus");
    motive->require_subcommand(1);
    auto* reduce = motive->add_subcommand("reduce", "rewrite an expression to normal form under the ring");
    {
        static Common c;
        static std::string in, algin;
        reduce->add_option("--in", in, "expression JSON document (array of terms)");
        reduce->add_option("--alg", algin, "algebra JSON document; reduces U(A)");
        add_common(reduce, c);
        reduce->callback([&] {
            run = [&] {
                MotiveExpr e;
                if (!algin.empty())
                    e = motive_atom(load_algebra(algin, c));
                else if (!in.empty())
                    e = expr_from_json(load_json(in));
                else
                    throw Error(ErrorKind::InvalidInput, "provide --in or --alg");
                auto red = motive_reduce(e, ring_of(c), c.seed);
                Json rep = base_report("motive reduce", c);
                rep["input"] = e.str();
                rep["normal_form"] = red.expr.str();
                rep["expression"] = expr_to_json(red.expr);
                rep["trace"] = trace_to_json(red.trace);
                emit(rep, c);
            };
        });
    }

    // --- sb ---------------------------------------------------------------
    auto* sb = app.add_subcommand("sb", "Severi-Brauer motive of a central simple algebra");
    {
        static Common c;
        static std::string in;
        sb->add_option("--in", in, "algebra JSON document")->required();
        add_common(sb, c);
        sb->callback([&] {
            run = [&] {
                Algebra a = load_algebra(in, c);
                auto red = severi_brauer_motive(a, ring_of(c), c.seed);
                Json rep = base_report("sb", c);
                rep["normal_form"] = red.expr.str();
                rep["expression"] = expr_to_json(red.expr);
                rep["trace"] = trace_to_json(red.trace);
                emit(rep, c);
            };
        });
    }

    // --- quadric ----------------------------------------------------------
    auto* quad = app.add_subcommand("quadric", "motive decomposition of a smooth quadric");
    {
        static Common c;
        static std::string in, field, diag;
        quad->add_option("--in", in, "form JSON document");
        quad->add_option("--field", field, "inline field (Q or F<p>)");
        quad->add_option("--diag", diag, "inline diagonal entries, comma separated");
        add_common(quad, c);
        quad->callback([&] {
            run = [&] {
                QuadraticForm q = form_from_inputs(in, field, diag);
                auto red = quadric_motive(q, ring_of(c), c.seed);
                Json rep = base_report("quadric", c);
                rep["normal_form"] = red.expr.str();
                rep["expression"] = expr_to_json(red.expr);
                rep["trace"] = trace_to_json(red.trace);
                emit(rep, c);
            };
        });
    }

    // --- k0 ---------------------------------------------------------------
    auto* k0 = app.add_subcommand("k0", "K0 ring models: nilpotence and localized inversion");
    k0->require_subcommand(1);
    {
        static Common c;
        static std::string in, builtin, elt;
        static size_t max_exp = 16;
        auto* nilp = k0->add_subcommand("nilpotence", "witness e^N = 0 for a rank-zero element");
        nilp->add_option("--in", in, "model JSON document");
        nilp->add_option("--builtin", builtin, "builtin model name (P1..P4, dedekind-c, point)");
        nilp->add_option("--elt", elt, "element coordinates, comma separated")->required();
        nilp->add_option("--max-exp", max_exp, "exponent bound");
        add_common(nilp, c);
        nilp->callback([&] {
            run = [&] {
                K0RingModel m = builtin.empty() ? k0_model_from_json(load_json(in)) : k0_builtin(builtin);
                K0Element e = k0_element(m, csv_rationals(elt));
                auto w = nilpotence_witness(m, e, max_exp);
                Json rep = base_report("k0 nilpotence", c);
                rep["model"] = m.label;
                rep["element"] = k0_element_to_json(e);
                if (w.exponent) rep["exponent"] = *w.exponent;
                else rep["exponent"] = nullptr;
                rep["bound"] = w.bound;
                if (!w.note.empty()) rep["note"] = w.note;
                emit(rep, c);
                if (!w.exponent)
                    throw Error(ErrorKind::NoNilpotenceWithinBound, "no vanishing power within the bound");
            };
        });
    }
    {
        static Common c;
        static std::string in, builtin, elt;
        static size_t max_exp = 16;
        auto* inv = k0->add_subcommand("invert", "invert an element of invertible rank over Z[1/r]");
        inv->add_option("--in", in, "model JSON document");
        inv->add_option("--builtin", builtin, "builtin model name");
        auto* e1 = inv->add_option("--elt", elt, "element coordinates, comma separated");
        inv->add_option("--invert-elt", elt, "alias for --elt")->excludes(e1);
        inv->add_option("--max-exp", max_exp, "bound for the geometric series");
        add_common(inv, c);
        inv->callback([&] {
            run = [&] {
                if (elt.empty()) throw Error(ErrorKind::InvalidInput, "provide --elt");
                K0RingModel m = builtin.empty() ? k0_model_from_json(load_json(in)) : k0_builtin(builtin);
                CoefficientRing ring = ring_of(c);
                K0Element e = k0_element(m, csv_rationals(elt), ring);
                auto r = localize_invert(m, e, ring, max_exp);
                Json rep = base_report("k0 invert", c);
                rep["model"] = m.label;
                rep["element"] = k0_element_to_json(e);
                rep["inverse"] = k0_element_to_json(r.result);
                rep["beta"] = k0_element_to_json(r.beta);
                rep["nu_vanishing_exponent"] = r.nu_vanishing;
                rep["verified"] = true;
                emit(rep, c);
            };
        });
    }

    // --- hh ---------------------------------------------------------------
    auto* hh = app.add_subcommand("hh", "Hochschild homology dimensions via the normalized bar complex");
    {
        static Common c;
        static std::string in;
        hh->add_option("--in", in, "algebra JSON document")->required();
        add_common(hh, c);
        hh->callback([&] {
            run = [&] {
                Algebra a = load_algebra(in, c);
                HHDims h = hh_dims(a, c.max_degree);
                Json rep = base_report("hh", c);
                rep["label"] = a.label;
                rep.update(hh_to_json(h));
                emit(rep, c);
            };
        });
    }

    // --- nil --------------------------------------------------------------
    auto* nil = app.add_subcommand("nil", "nilinvariance reduction U(S) -> reduce(U(S/I))");
    {
        static Common c;
        static std::string algin, ideal, qfgd;
        nil->add_option("--alg", algin, "algebra JSON document for S")->required();
        nil->add_option("--ideal", ideal, "'radical' or a JSON file {\"basis\":[[...],...]}")->required();
        nil->add_option("--quotient-fgd", qfgd, "assert finite global dimension of S/I (yes)")
            ->check(CLI::IsMember({"yes"}));
        add_common(nil, c);
        nil->callback([&] {
            run = [&] {
                Algebra s = load_algebra(algin, c);
                IdealBasis I;
                if (ideal == "radical") {
                    I = jacobson_radical(s);
                } else {
                    Json j = load_json(ideal);
                    const Json& basis = j.is_object() && j.contains("basis") ? j["basis"] : j;
                    if (!basis.is_array()) throw Error(ErrorKind::InvalidInput, "ideal document needs a basis array");
                    for (size_t i = 0; i < basis.size(); ++i)
                        I.basis.push_back(vec_from_json(s.field, basis[i], s.dim, "/basis/" + std::to_string(i)));
                }
                std::optional<GlDim> qf;
                if (qfgd == "yes") qf = GlDim::Yes;
                auto r = nil_reduce(s, I, ring_of(c), qf, c.seed);
                Json rep = base_report("nil", c);
                rep["label"] = s.label;
                rep["ideal_dim"] = I.basis.size();
                rep["licensed_by"] = r.licensed_by;
                rep["normal_form"] = r.expr.str();
                rep["expression"] = expr_to_json(r.expr);
                rep["trace"] = trace_to_json(r.trace);
                emit(rep, c);
            };
        });
    }

    CLI11_PARSE(app, argc, argv);
    try {
        run();
    } catch (const Error& e) {
        std::cerr << "error (" << error_kind_name(e.kind()) << "): " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
