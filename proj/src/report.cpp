#include "sectcat/bounds.hpp"
#include "sectcat/cli.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

namespace sectcat {

namespace {

using nlohmann::json;

class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class AssertionFailure : public std::runtime_error {
public:
    AssertionFailure(const std::string& what, std::string report) : std::runtime_error(what), report_(std::move(report))
    {
    }
    const std::string& report() const { return report_; }

private:
    std::string report_;
};

Presentation load_model(const std::string& name)
{
    std::error_code ec;
    if (std::filesystem::is_regular_file(name, ec)) {
        std::ifstream in(name, std::ios::binary);
        if (!in) throw InputError("cannot read model file '" + name + "'");
        std::ostringstream text;
        text << in.rdbuf();
        return parse_model(text.str());
    }
    if (auto g = golden_model(name)) return *g;
    throw InputError("no model file or built-in model named '" + name + "'");
}

json coords_json(const Vector& v)
{
    json arr = json::array();
    for (const auto& x : v) arr.push_back(to_string(x));
    return arr;
}

json model_json(const FreeModel& fm)
{
    const Presentation& p = fm.presentation();
    json m;
    m["name"] = p.name;
    m["field"] = "Q";
    m["truncation"] = p.truncation;
    m["space_dim"] = p.space_dim ? json(*p.space_dim) : json(nullptr);
    m["simply_connected"] = p.simply_connected;
    json gens = json::array();
    for (const auto& g : fm.ordered_generators()) gens.push_back({{"name", g.name}, {"degree", g.degree}});
    m["generators"] = gens;
    json diffs = json::object();
    for (const auto& g : fm.ordered_generators()) {
        Cochain dg = fm.dga().diff(fm.generator(g.name));
        diffs[g.name] = fm.dga().render(dg);
    }
    m["differentials"] = diffs;
    m["basis_size"] = fm.dga().size();
    m["top_degree_reduced"] = fm.top_reduced();
    return m;
}

struct Context {
    const FreeModel& fm;
    const CohomologyRing& ring;
};

CohClass resolve_class(const Context& ctx, const std::string& name)
{
    const Presentation& p = ctx.fm.presentation();
    try {
        for (const auto& [alias, poly] : p.aliases)
            if (alias == name) return ctx.ring.class_of(ctx.fm.evaluate(poly));
        if (ctx.fm.has_generator(name)) return ctx.ring.class_of(ctx.fm.generator(name));
    } catch (const NotACocycle& e) {
        throw InputError("'" + name + "' does not name a cohomology class: " + e.what());
    }
    static const std::regex named(R"(H\^(\d+)_(\d+))");
    std::smatch m;
    if (std::regex_match(name, m, named)) {
        int k = std::stoi(m[1]);
        std::size_t i = std::stoul(m[2]);
        if (i < ctx.ring.dim(k)) return ctx.ring.basis_class(k, i);
    }
    throw InputError("unknown class '" + name + "'");
}

std::map<std::string, std::string> alias_table(const Context& ctx)
{
    std::map<std::string, std::string> out;
    for (const auto& [alias, poly] : ctx.fm.presentation().aliases) {
        try {
            out[alias] = ctx.ring.render(ctx.ring.class_of(ctx.fm.evaluate(poly)));
        } catch (const NotACocycle&) {
            out[alias] = "not a cocycle";
        }
    }
    return out;
}

json cohomology_json(const Context& ctx)
{
    const CohomologyRing& r = ctx.ring;
    json c;
    c["dims"] = r.dims();
    json classes = json::array();
    for (int k = 0; k <= r.truncation(); ++k)
        for (std::size_t i = 0; i < r.dim(k); ++i)
            classes.push_back({{"name", r.class_name(k, i)},
                               {"degree", k},
                               {"representative", r.dga().render(r.representative(r.basis_class(k, i)))}});
    c["classes"] = classes;
    c["aliases"] = alias_table(ctx);
    json products = json::array();
    auto basis = r.positive_basis();
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t j = i; j < basis.size(); ++j) {
            CohClass prod = r.cup(basis[i], basis[j]);
            if (!prod.truncated && prod.is_zero()) continue;
            const auto& x = basis[i];
            const auto& y = basis[j];
            auto idx = [&](const CohClass& b) {
                for (std::size_t t = 0; t < b.coords.size(); ++t)
                    if (b.coords[t] != 0) return t;
                return std::size_t{0};
            };
            products.push_back({{"left", r.class_name(x.degree, idx(x))},
                                {"right", r.class_name(y.degree, idx(y))},
                                {"product", prod.truncated ? "0" : r.render(prod)},
                                {"truncated", prod.truncated}});
        }
    }
    c["products"] = products;
    c["connectivity"] = connectivity(r);
    c["cup_length"] = cup_length(r);
    return c;
}

json coset_json(const CohomologyRing& r, const MasseyCoset& m, bool witnesses)
{
    json j;
    j["degrees"] = {m.p, m.q, m.r};
    j["target_degree"] = m.target_degree();
    j["arguments"] = {r.render(m.alpha), r.render(m.beta), r.render(m.gamma)};
    j["defined"] = m.defined;
    if (!m.defined) {
        if (m.left_product) j["nonzero_left_product"] = r.render(*m.left_product);
        if (m.right_product) j["nonzero_right_product"] = r.render(*m.right_product);
        return j;
    }
    j["value"] = r.render(m.value);
    j["value_coords"] = coords_json(m.value.coords);
    j["contains_zero"] = contains_zero(m);
    json ind = json::array();
    for (std::size_t i = 0; i < m.indeterminacy.dim(); ++i)
        ind.push_back(r.render({m.target_degree(), m.indeterminacy.basis_vector(i), false}));
    j["indeterminacy"] = ind;
    if (witnesses) {
        const Dga& a = r.dga();
        j["witnesses"] = {{"a", a.render(m.a)},
                          {"b", a.render(m.b)},
                          {"c", a.render(m.c)},
                          {"mu", a.render(m.mu)},
                          {"lambda", a.render(m.lambda)}};
        j["raw_value"] = r.render(m.raw);
    }
    return j;
}

json ledger_json(const Analysis& an)
{
    const BoundLedger& L = an.ledger;
    const KunnethProduct& sq = *an.square;
    json j;
    j["space_dim"] = L.space_dim ? json(*L.space_dim) : json(nullptr);
    j["connectivity"] = L.connectivity;
    j["simply_connected"] = L.simply_connected;
    j["cup_length"] = L.cup_length;
    for (Kind k : {Kind::Cat, Kind::TC}) {
        const auto& q = L.of(k);
        json b;
        b["lower"] = q.lower ? json(*q.lower) : json(nullptr);
        b["upper"] = q.upper ? json(*q.upper) : json(nullptr);
        b["lower_certificate"] = q.lower_certificate ? json(*q.lower_certificate) : json(nullptr);
        b["upper_certificate"] = q.upper_certificate ? json(*q.upper_certificate) : json(nullptr);
        j[to_string(k)] = b;
    }
    json certs = json::array();
    for (std::size_t i = 0; i < L.bounds.size(); ++i) {
        const auto& b = L.bounds[i];
        json c;
        c["index"] = i;
        c["quantity"] = to_string(b.kind);
        c["side"] = b.lower ? "lower" : "upper";
        c["value"] = b.value;
        c["rule"] = b.rule;
        c["facts"] = b.facts;
        c["bounds"] = b.bounds;
        c["detail"] = b.detail;
        if (b.coset) {
            const CohomologyRing& r = b.kind == Kind::Cat ? *an.ring : sq.product_ring();
            json cj = coset_json(r, *b.coset, false);
            if (b.kind == Kind::TC && cj["defined"] == true) {
                cj["value"] = sq.render(sq.from_product(b.coset->value));
                cj.erase("arguments");
                cj.erase("value_coords");
            }
            c["coset"] = cj;
        }
        certs.push_back(c);
    }
    j["certificates"] = certs;
    return j;
}

json weights_json(const Analysis& an)
{
    json arr = json::array();
    for (std::size_t i = 0; i < an.ledger.facts.size(); ++i) {
        const auto& f = an.ledger.facts[i];
        json w;
        w["index"] = i;
        w["kind"] = to_string(f.kind);
        w["class"] = f.kind == Kind::Cat ? an.ring->render(f.cls) : an.square->render(f.cls);
        w["degree"] = f.cls.degree;
        w["weight"] = f.weight;
        w["rule"] = f.rule;
        w["premises"] = f.premises;
        w["label"] = f.label;
        if (f.massey_record) w["massey_record"] = *f.massey_record;
        arr.push_back(w);
    }
    return arr;
}

json scan_json(const Analysis& an)
{
    json arr = json::array();
    for (const auto& rec : an.ledger.massey) {
        json j = coset_json(*an.ring, rec.coset, false);
        arr.push_back(j);
    }
    return arr;
}

std::string text_dims(const CohomologyRing& r)
{
    std::string s;
    for (auto d : r.dims()) s += (s.empty() ? "" : " ") + std::to_string(d);
    return s;
}

std::string text_model(const FreeModel& fm)
{
    const Presentation& p = fm.presentation();
    std::ostringstream out;
    out << "model " << p.name << ": truncate " << p.truncation;
    if (p.space_dim) out << ", space-dim " << *p.space_dim;
    out << ", " << (p.simply_connected ? "simply connected" : "not flagged simply connected") << ", "
        << fm.dga().size() << " basis elements\n";
    return out.str();
}

std::string text_cohomology(const Context& ctx, bool quiet)
{
    const CohomologyRing& r = ctx.ring;
    std::ostringstream out;
    out << "H dims: " << text_dims(r) << "\n";
    if (quiet) return out.str();
    for (int k = 0; k <= r.truncation(); ++k)
        for (std::size_t i = 0; i < r.dim(k); ++i) out << "  " << r.class_name(k, i) << " = " << r.label(k, i) << "\n";
    for (const auto& [alias, cls] : alias_table(ctx)) out << "  " << alias << " = " << cls << "\n";
    out << "nonzero products:\n";
    auto basis = r.positive_basis();
    bool any = false;
    std::size_t truncated = 0;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t j = i; j < basis.size(); ++j) {
            CohClass prod = r.cup(basis[i], basis[j]);
            if (prod.truncated) {
                ++truncated;
                continue;
            }
            if (prod.is_zero()) continue;
            any = true;
            out << "  " << r.render(basis[i]) << " * " << r.render(basis[j]) << " = " << r.render(prod) << "\n";
        }
    }
    if (!any) out << "  none\n";
    if (truncated) out << "  (" << truncated << " products vanish only by truncation)\n";
    out << "connectivity " << connectivity(r) << ", cup-length " << cup_length(r) << "\n";
    return out.str();
}

std::string text_coset(const CohomologyRing& r, const MasseyCoset& m)
{
    std::ostringstream out;
    out << "<" << r.render(m.alpha) << ", " << r.render(m.beta) << ", " << r.render(m.gamma) << ">";
    if (!m.defined) {
        out << " undefined:";
        if (m.left_product) out << " first product " << r.render(*m.left_product) << " is nonzero;";
        if (m.right_product) out << " second product " << r.render(*m.right_product) << " is nonzero;";
        return out.str();
    }
    out << " = " << r.render(m.value) << " in degree " << m.target_degree() << ", indeterminacy dimension "
        << m.indeterminacy.dim() << (contains_zero(m) ? ", contains zero" : ", nonzero");
    return out.str();
}

std::string text_bounds(const Analysis& an, bool quiet)
{
    const BoundLedger& L = an.ledger;
    std::ostringstream out;
    auto line = [&](Kind k) {
        const auto& q = L.of(k);
        const std::string n = to_string(k);
        out << n << " lower " << (q.lower ? std::to_string(*q.lower) : "none") << ", " << n << " upper "
            << (q.upper ? std::to_string(*q.upper) : "none") << "\n";
    };
    if (!quiet) {
        out << "connectivity " << L.connectivity << ", cup-length " << L.cup_length << ", zcl " << L.zcl << "\n";
        std::size_t nonzero = 0;
        for (const auto& rec : L.massey)
            if (rec.coset.defined && !contains_zero(rec.coset)) ++nonzero;
        out << "Massey scan up to degree " << L.massey_degree_cap << ": " << L.massey.size() << " triples, " << nonzero
            << " nonzero\n";
        for (const auto& rec : L.massey)
            if (rec.coset.defined && !contains_zero(rec.coset)) out << "  " << text_coset(*an.ring, rec.coset) << "\n";
        out << "weight facts: " << L.facts.size() << "\n";
        out << "certificates:\n";
        for (std::size_t i = 0; i < L.bounds.size(); ++i) {
            const auto& b = L.bounds[i];
            out << "  [" << i << "] " << to_string(b.kind) << (b.lower ? " >= " : " <= ") << b.value << "  " << b.rule
                << ": " << b.detail;
            if (!b.facts.empty()) {
                out << " (";
                for (std::size_t t = 0; t < b.facts.size(); ++t)
                    out << (t ? " * " : "") << L.facts[b.facts[t]].label << " w" << L.facts[b.facts[t]].weight;
                out << ")";
            }
            out << "\n";
        }
    }
    line(Kind::Cat);
    line(Kind::TC);
    return out.str();
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

RunResult execute(const RunOptions& o, const Presentation& p)
{
    RunResult res;
    FreeModel fm = compile_free_cdga(p);
    json doc;
    std::ostringstream text;
    doc["model"] = model_json(fm);
    text << text_model(fm);

    if (o.command == "validate") {
        doc["model"]["valid"] = true;
        text << "valid: all axioms hold on every basis tuple\n";
        res.out = o.json ? dump(doc) : text.str();
        return res;
    }

    CohomologyRing ring(fm.dga_ptr());
    Context ctx{fm, ring};

    if (o.command == "cohomology") {
        doc["cohomology"] = cohomology_json(ctx);
        text << text_cohomology(ctx, o.quiet);
    } else if (o.command == "massey") {
        if (o.classes.size() != 3) throw InputError("massey needs exactly three classes");
        CohClass a = resolve_class(ctx, o.classes[0]);
        CohClass b = resolve_class(ctx, o.classes[1]);
        CohClass c = resolve_class(ctx, o.classes[2]);
        if (a.degree + b.degree + c.degree - 1 > ring.truncation())
            throw AssertionFailure("target degree " + std::to_string(a.degree + b.degree + c.degree - 1) +
                                       " exceeds truncation " + std::to_string(ring.truncation()),
                                   "");
        MasseyCoset m = massey_triple(ring, a, b, c);
        json mj = coset_json(ring, m, true);
        mj["names"] = o.classes;
        doc["massey"] = json::array({mj});
        text << "<" << o.classes[0] << ", " << o.classes[1] << ", " << o.classes[2] << "> ";
        text << text_coset(ring, m) << "\n";
        if (m.defined && !o.quiet) {
            text << "  mu = " << ring.dga().render(m.mu) << ", lambda = " << ring.dga().render(m.lambda) << "\n";
            text << "  representative " << ring.dga().render(ring.representative(m.value)) << "\n";
        }
        if (!m.defined) {
            res.exit_code = kExitAssertion;
            res.err = "Massey product is not defined\n";
        }
    } else if (o.command == "zcl") {
        auto rp = std::make_shared<const CohomologyRing>(fm.dga_ptr());
        KunnethProduct sq(rp, rp);
        if (!sq.ok()) throw AssertionFailure("Künneth check failed", "");
        int z = zcl(sq);
        doc["zcl"] = z;
        text << "zcl " << z << "\n";
    } else if (o.command == "bounds") {
        LedgerOptions lo;
        lo.max_massey_degree = o.max_massey_degree;
        lo.threads = o.threads;
        Analysis an = analyze(fm.dga_ptr(), lo);
        doc["cohomology"] = cohomology_json(ctx);
        doc["massey"] = scan_json(an);
        doc["zcl"] = an.ledger.zcl;
        doc["weights"] = weights_json(an);
        doc["ledger"] = ledger_json(an);
        text << "H dims: " << text_dims(ring) << "\n";
        text << text_bounds(an, o.quiet);
        ReplayReport rep = replay(an);
        if (!rep.ok()) {
            res.exit_code = kExitAssertion;
            res.err = "certificate replay failed: " + rep.failures.front() + "\n";
        }
    } else {
        throw InputError("unknown command '" + o.command + "'");
    }
    res.out = o.json ? dump(doc) : text.str();
    return res;
}

}  // namespace

RunResult run(const RunOptions& options, const Presentation& model)
{
    RunResult res;
    try {
        return execute(options, model);
    } catch (const ValidationError& e) {
        res.exit_code = kExitInput;
        res.err = std::string("invalid model: ") + e.what() + "\n";
        for (const auto& v : e.violations()) {
            res.err += "  " + v.axiom + " [";
            for (std::size_t i = 0; i < v.tuple.size(); ++i) res.err += (i ? ", " : "") + std::to_string(v.tuple[i]);
            res.err += "]: " + v.detail + "\n";
        }
    } catch (const CohomologyError& e) {
        res.exit_code = kExitInput;
        res.err = std::string("invalid model: ") + e.what() + "\n";
    } catch (const InputError& e) {
        res.exit_code = kExitInput;
        res.err = std::string("error: ") + e.what() + "\n";
    } catch (const AssertionFailure& e) {
        res.exit_code = kExitAssertion;
        res.err = std::string("assertion failed: ") + e.what() + "\n";
    } catch (const ContractViolation& e) {
        res.exit_code = kExitAssertion;
        res.err = std::string("assertion failed: ") + e.what() + "\n";
    } catch (const NotACocycle& e) {
        res.exit_code = kExitAssertion;
        res.err = std::string("assertion failed: ") + e.what() + "\n";
    }
    return res;
}

RunResult run(const RunOptions& options)
{
    RunResult res;
    Presentation p;
    try {
        p = load_model(options.model);
    } catch (const ParseError& e) {
        res.exit_code = kExitInput;
        res.err = std::string("parse error: ") + e.what() + "\n";
        return res;
    } catch (const ValidationError& e) {
        res.exit_code = kExitInput;
        res.err = std::string("invalid model: ") + e.what() + "\n";
        return res;
    } catch (const InputError& e) {
        res.exit_code = kExitInput;
        res.err = std::string("error: ") + e.what() + "\n";
        return res;
    }
    return run(options, p);
}

}  // namespace sectcat
