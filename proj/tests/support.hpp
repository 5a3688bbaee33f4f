#pragma once

#include "sectcat/bounds.hpp"
#include "sectcat/cli.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace support {

using namespace sectcat;

inline Presentation golden(const std::string& name) { return *golden_model(name); }

inline FreeModel compiled(const std::string& name) { return compile_free_cdga(golden(name)); }

inline std::shared_ptr<const CohomologyRing> ring_of(const FreeModel& fm)
{
    return std::make_shared<const CohomologyRing>(fm.dga_ptr());
}

inline Term term(long c, std::vector<std::string> factors) { return Term{Rational(c), std::move(factors)}; }

// Plain dense Gaussian elimination, kept separate from the library's sparse
// echelon code.
inline std::size_t dense_rank(std::vector<Vector> rows)
{
    std::size_t rank = 0;
    std::size_t cols = rows.empty() ? 0 : rows[0].size();
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t piv = rank;
        while (piv < rows.size() && rows[piv][c] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[rank]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][c] == 0) continue;
            Rational f = rows[r][c] / rows[rank][c];
            for (std::size_t k = c; k < cols; ++k) rows[r][k] -= f * rows[rank][k];
        }
        ++rank;
    }
    return rank;
}

inline std::vector<Vector> dense_rows(const SparseMatrix& m)
{
    std::vector<Vector> rows(m.rows(), zero_vector(m.cols()));
    for (const auto& t : m.entries()) rows[t.row][t.col] = t.value;
    return rows;
}

// Free graded-commutative algebra on named generators, untruncated, with
// monomials stored as exponent vectors over the generator order given.
class FreeAlgebra {
public:
    using Monomial = std::vector<int>;
    using Poly = std::map<Monomial, Rational>;

    explicit FreeAlgebra(std::vector<Generator> gens) : gens_(std::move(gens)) {}

    const std::vector<Generator>& generators() const { return gens_; }

    Monomial gen(std::size_t i) const
    {
        Monomial m(gens_.size(), 0);
        m[i] = 1;
        return m;
    }

    int degree(const Monomial& m) const
    {
        int d = 0;
        for (std::size_t i = 0; i < m.size(); ++i) d += m[i] * gens_[i].degree;
        return d;
    }

    // x * y for monomials, as a signed monomial (coefficient 0 when an odd
    // generator repeats).
    std::pair<int, Monomial> mul(const Monomial& x, const Monomial& y) const
    {
        Monomial out(x.size());
        int sign = 1;
        for (std::size_t i = 0; i < x.size(); ++i) {
            out[i] = x[i] + y[i];
            if (gens_[i].degree % 2 == 1 && out[i] > 1) return {0, out};
        }
        // move each odd factor of y left past the odd factors of x with larger index
        for (std::size_t j = 0; j < y.size(); ++j) {
            if (gens_[j].degree % 2 == 0 || y[j] == 0) continue;
            for (std::size_t i = j + 1; i < x.size(); ++i)
                if (gens_[i].degree % 2 == 1 && x[i] == 1) sign = -sign;
        }
        return {sign, out};
    }

    Poly mul(const Poly& x, const Poly& y) const
    {
        Poly out;
        for (const auto& [mx, cx] : x)
            for (const auto& [my, cy] : y) {
                auto [s, m] = mul(mx, my);
                if (s == 0) continue;
                out[m] += Rational(s) * cx * cy;
            }
        prune(out);
        return out;
    }

    Poly d(const Monomial& m) const
    {
        std::size_t first = 0;
        while (first < m.size() && m[first] == 0) ++first;
        if (first == m.size()) return {};
        Monomial rest = m;
        rest[first] -= 1;
        Poly g{{gen(first), 1}};
        Poly r{{rest, 1}};
        Poly out = mul(dgen(first), r);
        Poly tail = mul(g, d(rest));
        int sign = gens_[first].degree % 2 == 0 ? 1 : -1;
        for (const auto& [mm, c] : tail) out[mm] += Rational(sign) * c;
        prune(out);
        return out;
    }

    Poly d(const Poly& x) const
    {
        Poly out;
        for (const auto& [m, c] : x)
            for (const auto& [mm, cc] : d(m)) out[mm] += c * cc;
        prune(out);
        return out;
    }

    void set_d(std::size_t i, Poly p) { diffs_[i] = std::move(p); }

    Poly dgen(std::size_t i) const
    {
        auto it = diffs_.find(i);
        return it == diffs_.end() ? Poly{} : it->second;
    }

    std::vector<Monomial> monomials(int degree) const
    {
        std::vector<Monomial> out;
        Monomial cur(gens_.size(), 0);
        enumerate(0, degree, cur, out);
        return out;
    }

    Polynomial to_polynomial(const Poly& p) const
    {
        Polynomial out;
        for (const auto& [m, c] : p) {
            Term t{c, {}};
            for (std::size_t i = 0; i < m.size(); ++i)
                for (int e = 0; e < m[i]; ++e) t.factors.push_back(gens_[i].name);
            out.push_back(std::move(t));
        }
        return out;
    }

    static void prune(Poly& p) { std::erase_if(p, [](const auto& kv) { return kv.second == 0; }); }

private:
    std::vector<Generator> gens_;
    std::map<std::size_t, Poly> diffs_;

    void enumerate(std::size_t i, int left, Monomial& cur, std::vector<Monomial>& out) const
    {
        if (i == gens_.size()) {
            if (left == 0) out.push_back(cur);
            return;
        }
        int maxe = gens_[i].degree % 2 == 1 ? 1 : left / gens_[i].degree;
        for (int e = 0; e <= maxe && e * gens_[i].degree <= left; ++e) {
            cur[i] = e;
            enumerate(i + 1, left - e * gens_[i].degree, cur, out);
        }
        cur[i] = 0;
    }
};

// Random valid presentation: up to three generators of degree 1..4, each
// differential a random homogeneous polynomial in the other generators,
// retried until d∘d vanishes on every generator in the free algebra.
inline Presentation random_presentation(std::mt19937& rng, int index)
{
    std::uniform_int_distribution<int> ngen(1, 3), deg(1, 4), coeff(-2, 2), trunc(4, 8);
    for (;;) {
        std::vector<Generator> gens;
        int n = ngen(rng);
        for (int i = 0; i < n; ++i) gens.push_back({std::string(1, static_cast<char>('p' + i)), deg(rng)});
        FreeAlgebra fa(gens);
        for (std::size_t i = 0; i < gens.size(); ++i) {
            FreeAlgebra::Poly p;
            for (const auto& m : fa.monomials(gens[i].degree + 1)) {
                if (m[i] != 0) continue;
                int c = coeff(rng);
                if (c != 0 && rng() % 2 == 0) p[m] = c;
            }
            fa.set_d(i, p);
        }
        bool closed = true;
        for (std::size_t i = 0; i < gens.size() && closed; ++i) closed = fa.d(fa.dgen(i)).empty();
        if (!closed) continue;
        Presentation pr;
        pr.name = "R" + std::to_string(index);
        pr.generators = gens;
        for (std::size_t i = 0; i < gens.size(); ++i)
            if (!fa.dgen(i).empty()) pr.differentials.emplace_back(gens[i].name, fa.to_polynomial(fa.dgen(i)));
        int maxdeg = 0;
        for (const auto& g : gens) maxdeg = std::max(maxdeg, g.degree);
        pr.truncation = std::max(trunc(rng), maxdeg + 1);
        pr.truncation = std::min(pr.truncation, 8);
        return pr;
    }
}

inline FreeAlgebra free_algebra_of(const Presentation& p)
{
    std::vector<Generator> gens = p.generators;
    FreeAlgebra fa(gens);
    for (const auto& [name, poly] : p.differentials) {
        std::size_t i = 0;
        while (gens[i].name != name) ++i;
        FreeAlgebra::Poly d;
        for (const auto& t : poly) {
            FreeAlgebra::Poly mono{{FreeAlgebra::Monomial(gens.size(), 0), t.coeff}};
            for (const auto& f : t.factors) {
                std::size_t j = 0;
                while (gens[j].name != f) ++j;
                mono = fa.mul(mono, FreeAlgebra::Poly{{fa.gen(j), 1}});
            }
            for (const auto& [m, c] : mono) d[m] += c;
        }
        FreeAlgebra::prune(d);
        fa.set_d(i, d);
    }
    return fa;
}

// Random element of a subspace.
inline Vector random_combination(std::mt19937& rng, const Subspace& s)
{
    std::uniform_int_distribution<int> c(-3, 3);
    Vector coords(s.dim());
    for (auto& x : coords) x = c(rng);
    return s.dim() ? s.combination(coords) : zero_vector(s.ambient());
}

inline CohClass random_class(std::mt19937& rng, const CohomologyRing& r, int k)
{
    std::uniform_int_distribution<int> c(-2, 2);
    CohClass out = r.zero(k);
    for (auto& x : out.coords) x = c(rng);
    return out;
}

// Defined Massey triples drawn by rejection from random classes, followed by
// the unit triple and partner triples with one random class of the lowest
// positive degree and units elsewhere, which feed the product identities.
inline std::vector<ClassTriple> identity_sample(std::mt19937& rng, const CohomologyRing& r, std::size_t defined,
                                                std::size_t partners)
{
    std::vector<ClassTriple> out;
    auto basis = r.positive_basis();
    if (basis.empty()) return out;
    auto pick = [&] { return random_class(rng, r, basis[rng() % basis.size()].degree); };
    for (int attempt = 0; attempt < 5000 && out.size() < defined; ++attempt) {
        ClassTriple t{pick(), pick(), pick()};
        if (t.alpha.degree + t.beta.degree + t.gamma.degree - 1 > r.truncation()) continue;
        if (t.alpha.is_zero() || t.beta.is_zero() || t.gamma.is_zero()) continue;
        if (massey_triple(r, t.alpha, t.beta, t.gamma).defined) out.push_back(t);
    }
    if (out.empty()) return out;
    out.push_back({r.unit(), r.unit(), r.unit()});
    for (std::size_t i = 0; i < partners; ++i) {
        ClassTriple t{r.unit(), r.unit(), r.unit()};
        CohClass x = random_class(rng, r, basis.front().degree);
        switch (i % 3) {
        case 0: t.beta = x; break;
        case 1: t.alpha = x; break;
        default: t.gamma = x; break;
        }
        out.push_back(t);
    }
    return out;
}

}  // namespace support

namespace support {

// dim H^k of the untruncated free algebra, from dense ranks of d.
inline std::size_t oracle_betti(const FreeAlgebra& fa, int k)
{
    auto rank_of_d = [&](int deg) -> std::size_t {
        if (deg < 0) return 0;
        auto src = fa.monomials(deg);
        auto dst = fa.monomials(deg + 1);
        if (src.empty() || dst.empty()) return 0;
        std::map<FreeAlgebra::Monomial, std::size_t> index;
        for (std::size_t i = 0; i < dst.size(); ++i) index[dst[i]] = i;
        std::vector<Vector> rows;
        for (const auto& m : src) {
            Vector row = zero_vector(dst.size());
            for (const auto& [mm, c] : fa.d(m)) row[index.at(mm)] = c;
            rows.push_back(row);
        }
        return dense_rank(rows);
    };
    return fa.monomials(k).size() - rank_of_d(k) - rank_of_d(k - 1);
}

}  // namespace support

namespace support {

inline Presentation odd_sphere_model()
{
    Presentation p;
    p.name = "S3";
    p.generators = {{"x", 3}};
    p.truncation = 3;
    p.space_dim = 3;
    p.simply_connected = true;
    return p;
}

inline Presentation even_sphere_model()
{
    Presentation p;
    p.name = "S2";
    p.generators = {{"a", 2}, {"x", 3}};
    p.differentials = {{"x", {Term{1, {"a", "a"}}}}};
    p.truncation = 4;
    p.space_dim = 2;
    p.simply_connected = true;
    return p;
}

inline std::optional<std::size_t> find_fact(const std::vector<WeightFact>& facts, Kind kind, const CohClass& cls)
{
    for (std::size_t i = 0; i < facts.size(); ++i)
        if (facts[i].kind == kind && facts[i].cls == cls) return i;
    return std::nullopt;
}

}  // namespace support
