#include "sectcat/bounds.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <thread>
#include <tuple>

namespace sectcat {

std::string to_string(Kind k) { return k == Kind::Cat ? "cat" : "TC"; }

namespace {

bool vanishes(const CohClass& c) { return c.truncated || c.is_zero(); }

template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& body)
{
    if (threads <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    const unsigned count = std::min<unsigned>(threads, static_cast<unsigned>(n));
    for (unsigned t = 0; t < count; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

std::string class_key(Kind kind, const CohClass& c)
{
    std::string key = to_string(kind) + ":" + std::to_string(c.degree) + ":";
    for (const auto& x : c.coords) key += to_string(x) + ",";
    return key;
}

/// Product in the ring that matches the kind.
CohClass kind_mul(const KunnethProduct& sq, Kind kind, const CohClass& x, const CohClass& y)
{
    return kind == Kind::Cat ? sq.left().cup(x, y) : sq.multiply(x, y);
}

int kind_top(const KunnethProduct& sq, Kind kind)
{
    return kind == Kind::Cat ? sq.left().top_degree() : sq.top_degree();
}

int kind_truncation(const KunnethProduct& sq, Kind kind)
{
    return kind == Kind::Cat ? sq.left().truncation() : sq.truncation();
}

std::string render_class(const KunnethProduct& sq, Kind kind, const CohClass& c)
{
    return kind == Kind::Cat ? sq.left().render(c) : sq.render(c);
}

}  // namespace

CohClass multiplication_map(const KunnethProduct& square, const CohClass& x)
{
    square.check(x);
    const CohomologyRing& ring = square.left();
    if (x.degree > ring.truncation()) return {x.degree, {}, true};
    CohClass out = ring.zero(x.degree);
    const auto& pairs = square.pairs(x.degree);
    for (std::size_t s = 0; s < pairs.size(); ++s) {
        if (x.coords[s] == 0) continue;
        const auto& pr = pairs[s];
        CohClass prod = ring.cup(ring.basis_class(pr.p, pr.i), ring.basis_class(pr.q, pr.j));
        out = out + x.coords[s] * prod;
    }
    return out;
}

CohClass bar(const KunnethProduct& square, const CohClass& u)
{
    const CohomologyRing& ring = square.left();
    ring.check(u);
    return square.cross(ring.unit(), u) - square.cross(u, ring.unit());
}

bool is_ideal(const KunnethProduct& square, const std::vector<Subspace>& ideal)
{
    const int top = square.truncation();
    for (int n = 0; n <= top && n < static_cast<int>(ideal.size()); ++n) {
        for (const auto& zv : ideal[n].basis()) {
            CohClass z{n, zv.to_dense(ideal[n].ambient()), false};
            for (int m = 0; n + m <= top; ++m) {
                for (std::size_t e = 0; e < square.dim(m); ++e) {
                    CohClass h = square.zero(m);
                    h.coords[e] = 1;
                    CohClass prod = square.multiply(z, h);
                    if (!member(ideal[n + m], prod.coords)) return false;
                }
            }
        }
    }
    return true;
}

std::vector<Subspace> zero_divisor_ideal(const KunnethProduct& square)
{
    if (!square.ok()) throw CohomologyError("Künneth check failed; zero-divisors are not available");
    std::vector<Subspace> ideal;
    for (int n = 0; n <= square.truncation(); ++n) {
        std::vector<SparseVec> cols;
        for (std::size_t s = 0; s < square.dim(n); ++s) {
            CohClass e = square.zero(n);
            e.coords[s] = 1;
            CohClass img = multiplication_map(square, e);
            cols.push_back(img.truncated ? SparseVec() : SparseVec::from_dense(img.coords));
        }
        ideal.push_back(kernel(SparseMatrix::from_columns(square.left().dim(n), std::move(cols))));
    }
    if (!is_ideal(square, ideal)) throw std::logic_error("zero-divisors fail to form an ideal");
    return ideal;
}

int zcl(const KunnethProduct& square)
{
    auto powers = ideal_powers(zero_divisor_ideal(square),
                               [&](const CohClass& x, const CohClass& y) { return square.multiply(x, y); });
    return static_cast<int>(powers.size());
}

TransferOutcome transfer_weight(const KunnethProduct& square, const WeightFact& cat_fact, int k)
{
    const CohomologyRing& ring = square.left();
    if (cat_fact.kind != Kind::Cat) return {std::nullopt, "premise is not a cat-weight fact"};
    if (k < 1) return {std::nullopt, "k must be at least 1"};
    if (cat_fact.weight < k) return {std::nullopt, "cat-weight " + std::to_string(cat_fact.weight) + " is below k"};
    if (!ring.dga().flags().simply_connected) return {std::nullopt, "space not flagged simply connected"};
    const int r = connectivity(ring);
    if (r < 1) return {std::nullopt, "connectivity r = 0"};
    const int l = cat_fact.cls.degree;
    if (!(k * (r + 1) <= l && l < (k + 1) * (r + 1)))
        return {std::nullopt, "degree " + std::to_string(l) + " outside the window [" + std::to_string(k * (r + 1)) +
                                  ", " + std::to_string((k + 1) * (r + 1)) + ")"};
    for (int i = 1; i < l; ++i)
        for (std::size_t s = 0; s < ring.dim(i); ++s)
            for (std::size_t t = 0; t < ring.dim(l - i); ++t)
                if (!vanishes(ring.cup(ring.basis_class(i, s), ring.basis_class(l - i, t))))
                    return {std::nullopt, "cross product H^" + std::to_string(i) + " x H^" + std::to_string(l - i) +
                                              " -> H^" + std::to_string(l) + " is nonzero"};
    if (cat_fact.cls.is_zero()) return {std::nullopt, "class is zero"};
    WeightFact f;
    f.kind = Kind::TC;
    f.cls = bar(square, cat_fact.cls);
    f.weight = k;
    f.rule = "transfer";
    f.label = "bar(" + cat_fact.label + ")";
    return {f, ""};
}

std::vector<WeightFact> weight_closure(const KunnethProduct& square, const std::vector<MasseyRecord>& massey)
{
    const CohomologyRing& ring = square.left();
    std::vector<WeightFact> facts;
    std::map<std::string, std::size_t> best;  // class key -> fact with the largest weight so far

    // Keeps a candidate unless an equal class already has at least its weight.
    auto add_all = [&](std::vector<WeightFact> candidates) {
        std::map<std::string, std::size_t> pick;
        std::vector<std::string> order;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            auto key = class_key(candidates[i].kind, candidates[i].cls);
            auto it = pick.find(key);
            if (it == pick.end()) {
                pick[key] = i;
                order.push_back(key);
            } else if (candidates[i].weight > candidates[it->second].weight) {
                it->second = i;
            }
        }
        for (const auto& key : order) {
            WeightFact& f = candidates[pick[key]];
            auto it = best.find(key);
            if (it != best.end() && facts[it->second].weight >= f.weight) continue;
            best[key] = facts.size();
            facts.push_back(std::move(f));
        }
    };

    std::vector<WeightFact> cat;
    for (int k = 1; k <= ring.truncation(); ++k) {
        for (std::size_t i = 0; i < ring.dim(k); ++i) {
            WeightFact f;
            f.kind = Kind::Cat;
            f.cls = ring.basis_class(k, i);
            f.weight = 1;
            f.rule = "positive-class";
            f.label = ring.label(k, i);
            cat.push_back(std::move(f));
        }
    }
    auto positive = ring.positive_basis();
    for (std::size_t m = 0; m < massey.size(); ++m) {
        const auto& rec = massey[m];
        if (!rec.coset.defined || contains_zero(rec.coset)) continue;
        WeightFact f;
        f.kind = Kind::Cat;
        f.cls = rec.coset.value;
        f.weight = 2;
        f.rule = "massey";
        f.massey_record = m;
        f.label = "<" + ring.render(positive[rec.classes[0]]) + ", " + ring.render(positive[rec.classes[1]]) + ", " +
                  ring.render(positive[rec.classes[2]]) + ">";
        cat.push_back(std::move(f));
    }
    add_all(std::move(cat));
    const std::size_t cat_end = facts.size();

    const int r = connectivity(ring);
    std::vector<WeightFact> tc;
    for (std::size_t i = 0; i < cat_end; ++i) {
        WeightFact f;
        f.kind = Kind::TC;
        f.cls = bar(square, facts[i].cls);
        f.weight = 1;
        f.rule = "zero-divisor";
        f.premises = {i};
        f.label = "bar(" + facts[i].label + ")";
        if (!f.cls.is_zero() && multiplication_map(square, f.cls).is_zero()) tc.push_back(std::move(f));
        const int k = facts[i].cls.degree / (r + 1);
        if (k >= 1 && k <= facts[i].weight) {
            auto t = transfer_weight(square, facts[i], k);
            if (t.fact) {
                t.fact->premises = {i};
                tc.push_back(std::move(*t.fact));
            }
        }
    }
    add_all(std::move(tc));
    const std::size_t base_end = facts.size();

    for (Kind kind : {Kind::Cat, Kind::TC}) {
        std::vector<WeightFact> products;
        const int top = kind_top(square, kind);
        for (std::size_t i = 0; i < base_end; ++i) {
            if (facts[i].kind != kind) continue;
            for (std::size_t j = i; j < base_end; ++j) {
                if (facts[j].kind != kind) continue;
                if (facts[i].cls.degree + facts[j].cls.degree > top) continue;
                CohClass prod = kind_mul(square, kind, facts[i].cls, facts[j].cls);
                if (vanishes(prod)) continue;
                WeightFact f;
                f.kind = kind;
                f.cls = std::move(prod);
                f.weight = facts[i].weight + facts[j].weight;
                f.rule = "product";
                f.premises = {i, j};
                f.label = facts[i].label + " * " + facts[j].label;
                products.push_back(std::move(f));
            }
        }
        add_all(std::move(products));
    }
    return facts;
}

WeightSearch weighted_lower_bound(const KunnethProduct& square, const std::vector<WeightFact>& facts, Kind kind)
{
    std::vector<std::size_t> base;
    for (std::size_t i = 0; i < facts.size(); ++i)
        if (facts[i].kind == kind && facts[i].rule != "product" && facts[i].cls.degree > 0) base.push_back(i);
    const int top = kind_top(square, kind);

    WeightSearch best;
    best.bound = 1;
    std::vector<std::size_t> chosen;
    auto dfs = [&](auto&& self, std::size_t start, const CohClass& current, int weight) -> void {
        for (std::size_t idx = start; idx < base.size(); ++idx) {
            const WeightFact& f = facts[base[idx]];
            if (current.degree + f.cls.degree > top) continue;
            CohClass prod = chosen.empty() ? f.cls : kind_mul(square, kind, current, f.cls);
            if (vanishes(prod)) continue;
            chosen.push_back(base[idx]);
            const int w = weight + f.weight;
            if (w > best.weight) {
                best.weight = w;
                best.bound = w + 1;
                best.facts = chosen;
                best.product = prod;
            }
            self(self, idx, prod, w);
            chosen.pop_back();
        }
    };
    dfs(dfs, 0, CohClass{0, {}, false}, 0);
    return best;
}

std::optional<BoundCertificate> massey_lower_bound(const KunnethProduct& square, const std::vector<WeightFact>& facts,
                                                   std::size_t alpha, std::size_t beta, std::size_t gamma)
{
    const WeightFact& fa = facts.at(alpha);
    const WeightFact& fb = facts.at(beta);
    const WeightFact& fc = facts.at(gamma);
    const Kind kind = fa.kind;
    if (fb.kind != kind || fc.kind != kind) throw ContractViolation("Massey bound mixes fibration kinds");
    const int target = fa.cls.degree + fb.cls.degree + fc.cls.degree - 1;
    if (target > kind_truncation(square, kind)) return std::nullopt;
    if (!vanishes(kind_mul(square, kind, fa.cls, fb.cls)) || !vanishes(kind_mul(square, kind, fb.cls, fc.cls)))
        return std::nullopt;

    MasseyCoset m = kind == Kind::Cat
                        ? massey_triple(square.left(), fa.cls, fb.cls, fc.cls)
                        : massey_triple(square.product_ring(), square.to_product(fa.cls), square.to_product(fb.cls),
                                        square.to_product(fc.cls));
    if (!m.defined || contains_zero(m)) return std::nullopt;
    BoundCertificate cert;
    cert.kind = kind;
    cert.lower = true;
    cert.value = fb.weight + std::min(fa.weight, fc.weight) + 1;
    cert.rule = "massey";
    cert.facts = {alpha, beta, gamma};
    cert.detail = "<" + fa.label + ", " + fb.label + ", " + fc.label + "> does not contain zero";
    cert.coset = std::move(m);
    return cert;
}

int james_bound(int space_dim, int connectivity)
{
    // largest integer strictly below (dim+1)/(r+1) + 1
    Rational x = Rational(space_dim + 1, connectivity + 1) + 1;
    x.canonicalize();
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    long f = fl.get_si();
    return x == Rational(f) ? static_cast<int>(f - 1) : static_cast<int>(f);
}

std::vector<BoundCertificate> dimension_upper_bounds(std::optional<int> space_dim, int connectivity)
{
    std::vector<BoundCertificate> out;
    if (!space_dim) return out;
    BoundCertificate dim;
    dim.kind = Kind::Cat;
    dim.lower = false;
    dim.value = *space_dim + 1;
    dim.rule = "dimension";
    dim.detail = "cat <= dim + 1 = " + std::to_string(dim.value);
    out.push_back(dim);
    if (connectivity >= 1) {
        BoundCertificate james;
        james.kind = Kind::Cat;
        james.lower = false;
        james.value = james_bound(*space_dim, connectivity);
        james.rule = "james";
        james.detail = "cat < (" + std::to_string(*space_dim) + "+1)/(" + std::to_string(connectivity) + "+1) + 1";
        out.push_back(james);
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < out.size(); ++i)
        if (out[i].value < out[best].value) best = i;
    BoundCertificate tc;
    tc.kind = Kind::TC;
    tc.lower = false;
    tc.value = 2 * out[best].value - 1;
    tc.rule = "tc-doubling";
    tc.bounds = {best};
    tc.detail = "TC <= 2 cat - 1";
    out.push_back(tc);
    return out;
}

std::vector<MasseyRecord> massey_scan(const CohomologyRing& ring, int degree_cap, unsigned threads)
{
    auto basis = ring.positive_basis();
    std::vector<std::array<std::size_t, 3>> triples;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (basis[i].degree > degree_cap) continue;
        for (std::size_t j = 0; j < basis.size(); ++j) {
            if (basis[j].degree > degree_cap) continue;
            for (std::size_t k = i; k < basis.size(); ++k) {
                if (basis[k].degree > degree_cap) continue;
                if (basis[i].degree + basis[j].degree + basis[k].degree - 1 > ring.truncation()) continue;
                triples.push_back({i, j, k});
            }
        }
    }
    std::vector<MasseyRecord> out(triples.size());
    parallel_for(triples.size(), threads, [&](std::size_t t) {
        const auto& [i, j, k] = triples[t];
        out[t] = {triples[t], massey_triple(ring, basis[i], basis[j], basis[k])};
    });
    return out;
}

namespace {

/// Best Massey-rule bound of one kind strictly above `current`: α and γ range
/// over non-product facts, β over all facts of the kind; candidates are
/// tried by decreasing potential and the first nonzero coset wins.
std::optional<BoundCertificate> best_massey_bound(const KunnethProduct& square, const std::vector<WeightFact>& facts,
                                                  Kind kind, int current, unsigned threads)
{
    std::vector<std::size_t> base, all;
    for (std::size_t i = 0; i < facts.size(); ++i) {
        if (facts[i].kind != kind) continue;
        all.push_back(i);
        if (facts[i].rule != "product") base.push_back(i);
    }
    const int trunc = kind_truncation(square, kind);
    struct Candidate {
        int potential;
        std::size_t a, b, c;
    };
    std::vector<Candidate> cands;
    for (std::size_t ai = 0; ai < base.size(); ++ai) {
        for (std::size_t ci = ai; ci < base.size(); ++ci) {
            const WeightFact& fa = facts[base[ai]];
            const WeightFact& fc = facts[base[ci]];
            for (std::size_t b : all) {
                const WeightFact& fb = facts[b];
                int potential = fb.weight + std::min(fa.weight, fc.weight) + 1;
                if (potential <= current) continue;
                if (fa.cls.degree + fb.cls.degree + fc.cls.degree - 1 > trunc) continue;
                cands.push_back({potential, base[ai], b, base[ci]});
            }
        }
    }
    std::stable_sort(cands.begin(), cands.end(), [](const Candidate& x, const Candidate& y) {
        if (x.potential != y.potential) return x.potential > y.potential;
        return std::tie(x.a, x.b, x.c) < std::tie(y.a, y.b, y.c);
    });

    const std::size_t batch = std::max<std::size_t>(1, threads) * 8;
    for (std::size_t start = 0; start < cands.size(); start += batch) {
        const std::size_t end = std::min(cands.size(), start + batch);
        std::vector<std::optional<BoundCertificate>> results(end - start);
        parallel_for(end - start, threads, [&](std::size_t t) {
            const Candidate& cd = cands[start + t];
            results[t] = massey_lower_bound(square, facts, cd.a, cd.b, cd.c);
        });
        for (auto& r : results)
            if (r) return r;
    }
    return std::nullopt;
}

int best_lower(const std::vector<BoundCertificate>& bounds, Kind kind)
{
    int v = 0;
    for (const auto& b : bounds)
        if (b.kind == kind && b.lower) v = std::max(v, b.value);
    return v;
}

void settle(BoundLedger& ledger)
{
    for (Kind kind : {Kind::Cat, Kind::TC}) {
        QuantityBounds q;
        for (std::size_t i = 0; i < ledger.bounds.size(); ++i) {
            const auto& b = ledger.bounds[i];
            if (b.kind != kind) continue;
            if (b.lower && (!q.lower || b.value > *q.lower)) {
                q.lower = b.value;
                q.lower_certificate = i;
            }
            if (!b.lower && (!q.upper || b.value < *q.upper)) {
                q.upper = b.value;
                q.upper_certificate = i;
            }
        }
        (kind == Kind::Cat ? ledger.cat : ledger.tc) = q;
    }
}

}  // namespace

Analysis analyze(std::shared_ptr<const Dga> dga, const LedgerOptions& options)
{
    Analysis an;
    an.ring = std::make_shared<const CohomologyRing>(std::move(dga));
    an.square = std::make_shared<const KunnethProduct>(an.ring, an.ring);
    const CohomologyRing& ring = *an.ring;
    const KunnethProduct& sq = *an.square;
    BoundLedger& L = an.ledger;

    L.space_dim = ring.dga().flags().space_dim;
    L.simply_connected = ring.dga().flags().simply_connected;
    L.connectivity = connectivity(ring);
    L.cup_length = cup_length(ring);
    L.zcl = zcl(sq);
    L.massey_degree_cap = options.max_massey_degree.value_or(ring.truncation() / 2);
    L.massey = massey_scan(ring, L.massey_degree_cap, options.threads);
    L.facts = weight_closure(sq, L.massey);

    BoundCertificate cl;
    cl.kind = Kind::Cat;
    cl.value = L.cup_length + 1;
    cl.rule = "cup-length";
    cl.detail = "cup-length " + std::to_string(L.cup_length);
    L.bounds.push_back(cl);

    BoundCertificate z;
    z.kind = Kind::TC;
    z.value = L.zcl + 1;
    z.rule = "zcl";
    z.detail = "zero-divisor cup-length " + std::to_string(L.zcl);
    L.bounds.push_back(z);

    for (Kind kind : {Kind::Cat, Kind::TC}) {
        WeightSearch ws = weighted_lower_bound(sq, L.facts, kind);
        if (ws.weight == 0) continue;
        BoundCertificate w;
        w.kind = kind;
        w.value = ws.bound;
        w.rule = "weighted-product";
        w.facts = ws.facts;
        w.detail = "nonzero product " + render_class(sq, kind, ws.product) + " of total weight " +
                   std::to_string(ws.weight);
        L.bounds.push_back(w);
    }

    if (auto m = best_massey_bound(sq, L.facts, Kind::Cat, best_lower(L.bounds, Kind::Cat), options.threads))
        L.bounds.push_back(std::move(*m));

    {
        settle(L);
        BoundCertificate chain;
        chain.kind = Kind::TC;
        chain.value = *L.cat.lower;
        chain.rule = "cat-below-tc";
        chain.bounds = {*L.cat.lower_certificate};
        chain.detail = "TC >= cat";
        L.bounds.push_back(chain);
    }

    if (auto m = best_massey_bound(sq, L.facts, Kind::TC, best_lower(L.bounds, Kind::TC), options.threads))
        L.bounds.push_back(std::move(*m));

    const std::size_t offset = L.bounds.size();
    for (auto b : dimension_upper_bounds(L.space_dim, L.connectivity)) {
        for (auto& ref : b.bounds) ref += offset;
        L.bounds.push_back(std::move(b));
    }
    settle(L);
    return an;
}

BoundLedger build_ledger(std::shared_ptr<const Dga> dga, const LedgerOptions& options)
{
    return analyze(std::move(dga), options).ledger;
}

ReplayReport replay(const Analysis& an)
{
    ReplayReport rep;
    const CohomologyRing& ring = *an.ring;
    const KunnethProduct& sq = *an.square;
    const BoundLedger& L = an.ledger;
    auto fail = [&](const std::string& what) { rep.failures.push_back(what); };
    const auto positive = ring.positive_basis();

    for (std::size_t i = 0; i < L.massey.size(); ++i) {
        ++rep.checked;
        const auto& rec = L.massey[i];
        MasseyCoset again =
            massey_triple(ring, positive.at(rec.classes[0]), positive.at(rec.classes[1]), positive.at(rec.classes[2]));
        bool same = again.defined == rec.coset.defined && (!again.defined || same_coset(again, rec.coset));
        if (!same) fail("massey record " + std::to_string(i) + " does not reproduce");
    }

    for (std::size_t i = 0; i < L.facts.size(); ++i) {
        ++rep.checked;
        const WeightFact& f = L.facts[i];
        const std::string tag = "fact " + std::to_string(i) + " (" + f.rule + ")";
        for (auto p : f.premises)
            if (p >= i) fail(tag + " cites a later fact");
        if (f.rule == "positive-class") {
            if (f.kind != Kind::Cat || f.weight != 1 || f.cls.degree < 1 || f.cls.is_zero()) fail(tag);
            ring.check(f.cls);
        } else if (f.rule == "massey") {
            if (!f.massey_record || *f.massey_record >= L.massey.size()) {
                fail(tag + " has no Massey record");
                continue;
            }
            const auto& rec = L.massey[*f.massey_record];
            MasseyCoset m =
                massey_triple(ring, positive.at(rec.classes[0]), positive.at(rec.classes[1]), positive.at(rec.classes[2]));
            if (!m.defined || contains_zero(m) || !(m.value == f.cls) || f.weight != 2 || f.kind != Kind::Cat) fail(tag);
        } else if (f.rule == "zero-divisor") {
            if (f.premises.size() != 1 || f.kind != Kind::TC || f.weight != 1) {
                fail(tag);
                continue;
            }
            const WeightFact& u = L.facts[f.premises[0]];
            if (!(bar(sq, u.cls) == f.cls) || f.cls.is_zero() || !multiplication_map(sq, f.cls).is_zero()) fail(tag);
        } else if (f.rule == "transfer") {
            if (f.premises.size() != 1) {
                fail(tag);
                continue;
            }
            auto t = transfer_weight(sq, L.facts[f.premises[0]], f.weight);
            if (!t.fact || !(t.fact->cls == f.cls) || t.fact->weight != f.weight) fail(tag + ": " + t.reason);
        } else if (f.rule == "product") {
            if (f.premises.size() != 2) {
                fail(tag);
                continue;
            }
            const WeightFact& x = L.facts[f.premises[0]];
            const WeightFact& y = L.facts[f.premises[1]];
            CohClass prod = kind_mul(sq, f.kind, x.cls, y.cls);
            if (x.kind != f.kind || y.kind != f.kind || !(prod == f.cls) || vanishes(prod) ||
                f.weight != x.weight + y.weight)
                fail(tag);
        } else {
            fail(tag + " has an unknown rule");
        }
    }

    for (std::size_t i = 0; i < L.bounds.size(); ++i) {
        ++rep.checked;
        const BoundCertificate& b = L.bounds[i];
        const std::string tag = "bound " + std::to_string(i) + " (" + b.rule + ")";
        for (auto f : b.facts)
            if (f >= L.facts.size() || L.facts[f].kind != b.kind) fail(tag + " cites a foreign fact");
        for (auto r : b.bounds)
            if (r >= i) fail(tag + " cites a later bound");
        if (!rep.failures.empty() && rep.failures.back().rfind(tag, 0) == 0) continue;

        if (b.rule == "cup-length") {
            if (b.kind != Kind::Cat || !b.lower || b.value != cup_length(ring) + 1) fail(tag);
        } else if (b.rule == "zcl") {
            if (b.kind != Kind::TC || !b.lower || b.value != zcl(sq) + 1) fail(tag);
        } else if (b.rule == "weighted-product") {
            CohClass prod;
            int w = 0;
            bool ok = !b.facts.empty() && b.lower;
            for (std::size_t k = 0; ok && k < b.facts.size(); ++k) {
                const WeightFact& f = L.facts[b.facts[k]];
                prod = k == 0 ? f.cls : kind_mul(sq, b.kind, prod, f.cls);
                w += f.weight;
                if (vanishes(prod)) ok = false;
            }
            if (!ok || b.value != w + 1) fail(tag);
        } else if (b.rule == "massey") {
            if (b.facts.size() != 3) {
                fail(tag);
                continue;
            }
            auto again = massey_lower_bound(sq, L.facts, b.facts[0], b.facts[1], b.facts[2]);
            if (!again || again->value != b.value || !b.coset || !same_coset(*again->coset, *b.coset)) fail(tag);
        } else if (b.rule == "cat-below-tc") {
            if (b.bounds.size() != 1) {
                fail(tag);
                continue;
            }
            const auto& src = L.bounds[b.bounds[0]];
            if (b.kind != Kind::TC || !b.lower || src.kind != Kind::Cat || !src.lower || src.value != b.value) fail(tag);
        } else if (b.rule == "dimension") {
            if (!L.space_dim || b.lower || b.value != *L.space_dim + 1) fail(tag);
        } else if (b.rule == "james") {
            if (!L.space_dim || b.lower || L.connectivity < 1 || L.connectivity != connectivity(ring) ||
                b.value != james_bound(*L.space_dim, L.connectivity))
                fail(tag);
        } else if (b.rule == "tc-doubling") {
            if (b.bounds.size() != 1) {
                fail(tag);
                continue;
            }
            const auto& src = L.bounds[b.bounds[0]];
            if (b.kind != Kind::TC || b.lower || src.kind != Kind::Cat || src.lower || b.value != 2 * src.value - 1)
                fail(tag);
        } else {
            fail(tag + " has an unknown rule");
        }
    }

    ++rep.checked;
    BoundLedger copy = L;
    settle(copy);
    for (Kind kind : {Kind::Cat, Kind::TC}) {
        const auto& q = L.of(kind);
        const auto& r = copy.of(kind);
        if (q.lower != r.lower || q.upper != r.upper) fail(to_string(kind) + " best bounds do not match certificates");
        if (q.lower && q.upper && *q.lower > *q.upper) fail(to_string(kind) + " lower bound exceeds upper bound");
    }
    return rep;
}

}  // namespace sectcat
