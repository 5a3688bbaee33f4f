#include "sectcat/free_cdga.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>

namespace sectcat {

namespace {

using Exponents = std::vector<int>;
using FreePoly = std::map<Exponents, Rational>;

bool valid_identifier(const std::string& s)
{
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
        return false;
    return std::all_of(s.begin(), s.end(),
                       [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

/// Free graded-commutative algebra arithmetic on exponent vectors.
class FreeAlgebra {
public:
    explicit FreeAlgebra(std::vector<Generator> gens) : gens_(std::move(gens)) {}

    std::size_t size() const { return gens_.size(); }
    bool odd(std::size_t k) const { return gens_[k].degree % 2 != 0; }

    int degree(const Exponents& m) const
    {
        int d = 0;
        for (std::size_t k = 0; k < m.size(); ++k)
            d += m[k] * gens_[k].degree;
        return d;
    }

    /// m1 * m2 = sign * (merged monomial); nullopt when an odd generator repeats.
    std::optional<std::pair<Exponents, int>> multiply(const Exponents& m1, const Exponents& m2) const
    {
        Exponents r(m1.size());
        int sign = 1;
        int odd_after = 0;  // odd generators of m1 with index greater than the current one
        for (std::size_t k = m1.size(); k-- > 0;) {
            if (odd(k) && m1[k] + m2[k] > 1)
                return std::nullopt;
            r[k] = m1[k] + m2[k];
            if (odd(k) && m2[k] == 1 && odd_after % 2 == 1)
                sign = -sign;
            if (odd(k) && m1[k] == 1)
                ++odd_after;
        }
        return std::make_pair(r, sign);
    }

    FreePoly multiply(const FreePoly& p, const FreePoly& q) const
    {
        FreePoly r;
        for (const auto& [m1, c1] : p)
            for (const auto& [m2, c2] : q)
                if (auto prod = multiply(m1, m2))
                    accumulate(r, prod->first, prod->second * c1 * c2);
        return r;
    }

    static void accumulate(FreePoly& p, const Exponents& m, const Rational& c)
    {
        auto [it, inserted] = p.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (sgn(it->second) == 0)
                p.erase(it);
        }
        else if (sgn(c) == 0) {
            p.erase(it);
        }
    }

    Exponents unit() const { return Exponents(gens_.size(), 0); }
    Exponents single(std::size_t k) const
    {
        Exponents e = unit();
        e[k] = 1;
        return e;
    }

    void set_generator_differentials(std::vector<FreePoly> d) { gen_diff_ = std::move(d); }

    FreePoly diff(const Exponents& m) const
    {
        auto it = memo_.find(m);
        if (it != memo_.end())
            return it->second;
        FreePoly result;
        auto first = std::find_if(m.begin(), m.end(), [](int e) { return e > 0; });
        if (first != m.end()) {
            // m = g * rest with g the smallest generator present, so no reordering sign.
            const auto k = static_cast<std::size_t>(first - m.begin());
            Exponents rest = m;
            rest[k] -= 1;
            FreePoly rest_poly{{rest, Rational(1)}};
            FreePoly g_poly{{single(k), Rational(1)}};
            result = multiply(gen_diff_[k], rest_poly);
            FreePoly tail = multiply(g_poly, diff(rest));
            const int sign = odd(k) ? -1 : 1;
            for (const auto& [mono, c] : tail)
                accumulate(result, mono, sign * c);
        }
        memo_.emplace(m, result);
        return result;
    }

    FreePoly diff(const FreePoly& p) const
    {
        FreePoly r;
        for (const auto& [m, c] : p)
            for (const auto& [dm, dc] : diff(m))
                accumulate(r, dm, c * dc);
        return r;
    }

    std::string name(const Exponents& m) const
    {
        std::string s;
        for (std::size_t k = 0; k < m.size(); ++k) {
            if (m[k] == 0)
                continue;
            if (!s.empty())
                s += "*";
            s += gens_[k].name;
            if (m[k] > 1)
                s += "^" + std::to_string(m[k]);
        }
        return s.empty() ? "1" : s;
    }

private:
    std::vector<Generator> gens_;
    std::vector<FreePoly> gen_diff_;
    mutable std::map<Exponents, FreePoly> memo_;
};

void enumerate(const FreeAlgebra& alg, const std::vector<Generator>& gens, std::size_t k, int remaining,
               Exponents& current, std::vector<Exponents>& out)
{
    if (k == gens.size()) {
        out.push_back(current);
        return;
    }
    const int max_e = alg.odd(k) ? 1 : remaining / gens[k].degree;
    for (int e = 0; e <= max_e && e * gens[k].degree <= remaining; ++e) {
        current[k] = e;
        enumerate(alg, gens, k + 1, remaining - e * gens[k].degree, current, out);
    }
    current[k] = 0;
}

FreePoly term_to_free(const FreeAlgebra& alg, const std::map<std::string, std::size_t>& index, const Term& t)
{
    FreePoly acc{{alg.unit(), t.coeff}};
    if (sgn(t.coeff) == 0)
        return {};
    for (const auto& f : t.factors) {
        FreePoly g{{alg.single(index.at(f)), Rational(1)}};
        acc = alg.multiply(acc, g);
    }
    return acc;
}

}  // namespace

/****************************************************
 *                   checks
 ***************************************************/

int polynomial_degree(const Presentation& p, const Polynomial& poly)
{
    std::map<std::string, int> deg;
    for (const auto& g : p.generators)
        deg[g.name] = g.degree;
    std::optional<int> d;
    for (const auto& t : poly) {
        int td = 0;
        for (const auto& f : t.factors) {
            auto it = deg.find(f);
            if (it == deg.end())
                throw ValidationError("unknown generator '" + f + "'");
            td += it->second;
        }
        if (d && *d != td)
            throw ValidationError("inhomogeneous polynomial: terms of degree " + std::to_string(*d) + " and " +
                                  std::to_string(td));
        d = td;
    }
    return d.value_or(-1);
}

void check_presentation(const Presentation& p)
{
    if (p.truncation < 1)
        throw ValidationError("truncation degree must be a positive integer");
    if (p.space_dim && *p.space_dim < 1)
        throw ValidationError("space dimension must be a positive integer");
    std::set<std::string> names;
    for (const auto& g : p.generators) {
        if (!valid_identifier(g.name))
            throw ValidationError("invalid generator name '" + g.name + "'");
        if (g.degree < 1)
            throw ValidationError("generator '" + g.name + "' has degree " + std::to_string(g.degree) +
                                  "; degrees must be >= 1");
        if (!names.insert(g.name).second)
            throw ValidationError("duplicate generator '" + g.name + "'");
    }
    std::set<std::string> assigned;
    for (const auto& [target, poly] : p.differentials) {
        auto it = std::find_if(p.generators.begin(), p.generators.end(),
                               [&](const Generator& g) { return g.name == target; });
        if (it == p.generators.end())
            throw ValidationError("differential of unknown generator '" + target + "'");
        if (!assigned.insert(target).second)
            throw ValidationError("differential of '" + target + "' assigned twice");
        const int d = polynomial_degree(p, poly);
        if (d >= 0 && d != it->degree + 1)
            throw ValidationError("degree mismatch in d " + target + ": expected degree " +
                                  std::to_string(it->degree + 1) + ", got " + std::to_string(d));
    }
    std::set<std::string> alias_names;
    for (const auto& [alias, poly] : p.aliases) {
        if (!valid_identifier(alias))
            throw ValidationError("invalid alias name '" + alias + "'");
        if (names.count(alias) || !alias_names.insert(alias).second)
            throw ValidationError("alias '" + alias + "' clashes with another name");
        polynomial_degree(p, poly);
    }
}

/****************************************************
 *                   FreeModel
 ***************************************************/

Cochain FreeModel::from_free(int degree, const std::map<Exponents, Rational>& poly) const
{
    const int N = presentation_.truncation;
    Cochain c = dga_->zero(degree);
    if (degree < 0 || degree > N)
        return c;
    if (degree == N && top_reduced_) {
        Vector v = zero_vector(monomials_[static_cast<std::size_t>(N)].size());
        for (const auto& [m, coeff] : poly)
            v[monomial_index_.at(m)] = coeff;
        for (std::size_t j = 0; j < top_pivots_.size(); ++j)
            c.coords[j] = v[top_pivots_[j]];
        return c;
    }
    for (const auto& [m, coeff] : poly)
        c.coords[monomial_index_.at(m)] = coeff;
    return c;
}

Cochain FreeModel::evaluate(const Polynomial& poly) const
{
    FreeAlgebra alg(gens_);
    const int degree = polynomial_degree(presentation_, poly);
    if (degree < 0)
        return dga_->zero(0);
    FreePoly acc;
    for (const auto& t : poly)
        for (const auto& [m, c] : term_to_free(alg, gen_index_, t))
            FreeAlgebra::accumulate(acc, m, c);
    return from_free(degree, acc);
}

Cochain FreeModel::generator(const std::string& name) const
{
    return evaluate({Term{1, {name}}});
}

int FreeModel::generator_degree(const std::string& name) const
{
    auto it = gen_index_.find(name);
    if (it == gen_index_.end())
        throw ValidationError("unknown generator '" + name + "'");
    return gens_[it->second].degree;
}

bool FreeModel::has_generator(const std::string& name) const
{
    return gen_index_.count(name) != 0;
}

FreeModel compile_free_cdga(const Presentation& p)
{
    check_presentation(p);
    FreeModel model;
    model.presentation_ = p;
    model.gens_ = p.generators;
    std::sort(model.gens_.begin(), model.gens_.end(), [](const Generator& x, const Generator& y) {
        return x.degree != y.degree ? x.degree < y.degree : x.name < y.name;
    });
    for (std::size_t k = 0; k < model.gens_.size(); ++k)
        model.gen_index_[model.gens_[k].name] = k;

    FreeAlgebra alg(model.gens_);
    std::vector<FreePoly> gen_diff(model.gens_.size());
    for (const auto& [target, poly] : p.differentials)
        for (const auto& t : poly)
            for (const auto& [m, c] : term_to_free(alg, model.gen_index_, t))
                FreeAlgebra::accumulate(gen_diff[model.gen_index_[target]], m, c);
    alg.set_generator_differentials(gen_diff);

    const int N = p.truncation;
    std::vector<Exponents> all;
    Exponents current(model.gens_.size(), 0);
    enumerate(alg, model.gens_, 0, N + 1, current, all);
    model.monomials_.assign(static_cast<std::size_t>(N) + 2, {});
    for (auto& m : all)
        model.monomials_[static_cast<std::size_t>(alg.degree(m))].push_back(m);
    for (auto& bucket : model.monomials_) {
        std::sort(bucket.begin(), bucket.end(), std::greater<>());
        for (std::size_t i = 0; i < bucket.size(); ++i)
            model.monomial_index_[bucket[i]] = i;
    }

    // Differential of the top degree in the untruncated algebra.
    const auto& top = model.monomials_[static_cast<std::size_t>(N)];
    const auto& above = model.monomials_[static_cast<std::size_t>(N) + 1];
    std::vector<Triplet> dtop;
    for (std::size_t i = 0; i < top.size(); ++i)
        for (const auto& [m, c] : alg.diff(top[i]))
            dtop.push_back({model.monomial_index_.at(m), i, c});
    SparseMatrix top_matrix = SparseMatrix::from_triplets(above.size(), top.size(), dtop);

    std::vector<BasisElement> basis;
    std::vector<FreePoly> element;  // each basis element as a free polynomial
    for (int d = 0; d < N; ++d) {
        for (const auto& m : model.monomials_[static_cast<std::size_t>(d)]) {
            basis.push_back({alg.name(m), d});
            element.push_back({{m, Rational(1)}});
        }
    }
    if (top_matrix.is_zero()) {
        for (const auto& m : top) {
            basis.push_back({alg.name(m), N});
            element.push_back({{m, Rational(1)}});
        }
    }
    else {
        model.top_reduced_ = true;
        Subspace cocycles = kernel(top_matrix);
        model.top_pivots_ = cocycles.pivots();
        for (std::size_t j = 0; j < cocycles.dim(); ++j) {
            FreePoly poly;
            for (const auto& [i, c] : cocycles.basis()[j].entries())
                poly.emplace(top[i], c);
            std::string name;
            for (auto it = poly.rbegin(); it != poly.rend(); ++it) {
                const Rational& c = it->second;
                Rational mag = abs(c);
                std::string mono = alg.name(it->first);
                if (name.empty())
                    name += sgn(c) < 0 ? "-" : "";
                else
                    name += sgn(c) < 0 ? " - " : " + ";
                name += (mag == 1 ? mono : mag.get_str() + "*" + mono);
            }
            basis.push_back({"(" + name + ")", N});
            element.push_back(std::move(poly));
        }
    }

    // A provisional Dga gives offsets for from_free.
    model.dga_ = std::make_shared<Dga>(N, basis, std::vector<SparseVec>{}, std::vector<SparseVec>{}, DgaFlags{});
    const std::size_t n = basis.size();
    auto to_global = [&](int degree, const FreePoly& poly) {
        SparseVec v;
        if (degree > N || poly.empty())
            return v;
        Cochain c = model.from_free(degree, poly);
        const std::size_t o = model.dga_->offset(degree);
        for (std::size_t i = 0; i < c.coords.size(); ++i)
            v.push_back(o + i, c.coords[i]);
        return v;
    };

    std::vector<SparseVec> mult(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const int d = basis[i].degree + basis[j].degree;
            if (d <= N)
                mult[i * n + j] = to_global(d, alg.multiply(element[i], element[j]));
        }
    std::vector<SparseVec> diff(n);
    for (std::size_t i = 0; i < n; ++i)
        diff[i] = to_global(basis[i].degree + 1, alg.diff(element[i]));

    DgaFlags flags;
    flags.simply_connected = p.simply_connected;
    flags.space_dim = p.space_dim.value_or(N);
    model.dga_ = std::make_shared<Dga>(N, std::move(basis), std::move(mult), std::move(diff), flags);

    auto violations = validate(*model.dga_);
    if (!violations.empty()) {
        std::string what = "presentation '" + p.name + "' does not define a DGA (" +
                           std::to_string(violations.size()) + " axiom violations)";
        throw ValidationError(what, std::move(violations));
    }
    return model;
}

}  // namespace sectcat
