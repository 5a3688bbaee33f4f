#include "sectcat/cohomology.hpp"

#include <sstream>

namespace sectcat {

CohClass operator+(const CohClass& x, const CohClass& y)
{
    if (x.degree != y.degree) throw ContractViolation("adding classes of different degrees");
    return {x.degree, add(x.coords, y.coords), x.truncated && y.truncated};
}

CohClass operator-(const CohClass& x, const CohClass& y)
{
    if (x.degree != y.degree) throw ContractViolation("subtracting classes of different degrees");
    return {x.degree, sub(x.coords, y.coords), x.truncated && y.truncated};
}

CohClass operator-(const CohClass& x) { return {x.degree, scaled(-1, x.coords), x.truncated}; }

CohClass operator*(const Rational& c, const CohClass& x) { return {x.degree, scaled(c, x.coords), x.truncated}; }

namespace {

std::string render_terms(const Vector& coords, const std::function<std::string(std::size_t)>& name)
{
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = 0; i < coords.size(); ++i) {
        const Rational& c = coords[i];
        if (c == 0) continue;
        if (first) {
            if (c == -1)
                out << "-";
            else if (c != 1)
                out << to_string(c) << "*";
        } else {
            if (c < 0)
                out << " - ";
            else
                out << " + ";
            Rational a = abs(c);
            if (a != 1) out << to_string(a) << "*";
        }
        out << name(i);
        first = false;
    }
    if (first) return "0";
    return out.str();
}

}  // namespace

CohomologyRing::CohomologyRing(std::shared_ptr<const Dga> dga, CohomologyOptions options) : dga_(std::move(dga))
{
    if (!dga_) throw ContractViolation("null DGA");
    if (options.validate) {
        auto violations = validate(*dga_);
        if (!violations.empty()) {
            const auto& v = violations.front();
            throw CohomologyError("invalid DGA (" + std::to_string(violations.size()) + " violations, first: " +
                                  v.axiom + ": " + v.detail + ")");
        }
    }
    const int n = dga_->truncation();
    for (int k = 0; k <= n; ++k) {
        Subspace z = kernel(dga_->diff_matrix(k));
        Subspace b = k == 0 ? Subspace(dga_->dim(0)) : image(dga_->diff_matrix(k - 1));
        std::vector<Vector> reduced;
        for (std::size_t i = 0; i < z.dim(); ++i) reduced.push_back(reduce_mod(b, z.basis_vector(i)));
        classes_.push_back(Subspace::span(dga_->dim(k), reduced));
        cocycles_.push_back(std::move(z));
        coboundaries_.push_back(std::move(b));
    }
    if (dim(0) != 1)
        throw CohomologyError("H^0 has dimension " + std::to_string(dim(0)) + ", expected a connected algebra");
    if (dga_->flags().simply_connected && n >= 1 && dim(1) != 0)
        throw CohomologyError("algebra is flagged simply connected but H^1 has dimension " + std::to_string(dim(1)));

    cup_.assign(static_cast<std::size_t>(n + 1), {});
    for (int p = 0; p <= n; ++p) {
        cup_[p].assign(static_cast<std::size_t>(n - p + 1), {});
        for (int q = 0; p + q <= n; ++q) {
            auto& table = cup_[p][q];
            for (std::size_t i = 0; i < dim(p); ++i) {
                Cochain x{p, classes_[p].basis_vector(i)};
                for (std::size_t j = 0; j < dim(q); ++j) {
                    Cochain y{q, classes_[q].basis_vector(j)};
                    table.push_back(class_of(dga_->mul(x, y)).coords);
                }
            }
        }
    }
}

std::size_t CohomologyRing::dim(int k) const
{
    if (k < 0 || k > truncation()) return 0;
    return classes_[static_cast<std::size_t>(k)].dim();
}

std::vector<std::size_t> CohomologyRing::dims() const
{
    std::vector<std::size_t> out;
    for (int k = 0; k <= truncation(); ++k) out.push_back(dim(k));
    return out;
}

std::size_t CohomologyRing::rank_nullity_dim(int k) const
{
    if (k < 0 || k > truncation()) return 0;
    std::size_t rk_out = rank(dga_->diff_matrix(k));
    std::size_t rk_in = k == 0 ? 0 : rank(dga_->diff_matrix(k - 1));
    return dga_->dim(k) - rk_out - rk_in;
}

int CohomologyRing::top_degree() const
{
    for (int k = truncation(); k >= 0; --k)
        if (dim(k) != 0) return k;
    return 0;
}

CohClass CohomologyRing::zero(int k) const { return {k, zero_vector(dim(k)), k > truncation()}; }

CohClass CohomologyRing::basis_class(int k, std::size_t i) const
{
    if (i >= dim(k)) throw ContractViolation("no basis class " + class_name(k, i));
    CohClass c = zero(k);
    c.coords[i] = 1;
    return c;
}

std::vector<CohClass> CohomologyRing::positive_basis() const
{
    std::vector<CohClass> out;
    for (int k = 1; k <= truncation(); ++k)
        for (std::size_t i = 0; i < dim(k); ++i) out.push_back(basis_class(k, i));
    return out;
}

void CohomologyRing::check(const CohClass& c) const
{
    if (c.degree < 0) throw ContractViolation("class of negative degree");
    if (c.coords.size() != dim(c.degree))
        throw ContractViolation("class in degree " + std::to_string(c.degree) + " has " +
                                std::to_string(c.coords.size()) + " coordinates, expected " +
                                std::to_string(dim(c.degree)));
}

CohClass CohomologyRing::class_of(const Cochain& z) const
{
    dga_->check(z);
    if (z.degree < 0 || z.degree > truncation()) return zero(z.degree);
    Cochain dz = dga_->diff(z);
    if (!dz.is_zero()) throw NotACocycle("not a cocycle: d(" + dga_->render(z) + ") = " + dga_->render(dz));
    const auto k = static_cast<std::size_t>(z.degree);
    Vector r = reduce_mod(coboundaries_[k], z.coords);
    return {z.degree, classes_[k].coordinates(r), false};
}

Cochain CohomologyRing::representative(const CohClass& c) const
{
    check(c);
    if (c.degree > truncation()) return dga_->zero(c.degree);
    return {c.degree, classes_[static_cast<std::size_t>(c.degree)].combination(c.coords)};
}

CohClass CohomologyRing::cup(const CohClass& x, const CohClass& y) const
{
    check(x);
    check(y);
    const int deg = x.degree + y.degree;
    if (deg > truncation()) return {deg, {}, true};
    CohClass out = zero(deg);
    const auto& table = cup_[static_cast<std::size_t>(x.degree)][static_cast<std::size_t>(y.degree)];
    const std::size_t dq = dim(y.degree);
    for (std::size_t i = 0; i < x.coords.size(); ++i) {
        if (x.coords[i] == 0) continue;
        for (std::size_t j = 0; j < dq; ++j) {
            if (y.coords[j] == 0) continue;
            const Vector& prod = table[i * dq + j];
            const Rational c = x.coords[i] * y.coords[j];
            for (std::size_t t = 0; t < prod.size(); ++t)
                if (prod[t] != 0) out.coords[t] += c * prod[t];
        }
    }
    return out;
}

std::string CohomologyRing::class_name(int k, std::size_t i) const
{
    return "H^" + std::to_string(k) + "_" + std::to_string(i);
}

std::string CohomologyRing::render(const CohClass& c) const
{
    return render_terms(c.coords, [&](std::size_t i) { return class_name(c.degree, i); });
}

std::string CohomologyRing::label(int k, std::size_t i) const
{
    return "[" + dga_->render(representative(basis_class(k, i))) + "]";
}

CohomologyRing compute_cohomology(std::shared_ptr<const Dga> dga, CohomologyOptions options)
{
    return CohomologyRing(std::move(dga), options);
}

CohClass class_of(const CohomologyRing& r, const Cochain& z) { return r.class_of(z); }
Cochain representative(const CohomologyRing& r, const CohClass& c) { return r.representative(c); }
CohClass cup(const CohomologyRing& r, const CohClass& x, const CohClass& y) { return r.cup(x, y); }

int connectivity(const CohomologyRing& r)
{
    if (!r.dga().flags().simply_connected) return 0;
    int c = 0;
    for (int k = 1; k <= r.truncation() && r.dim(k) == 0; ++k) c = k;
    return c;
}

std::vector<std::vector<Subspace>> ideal_powers(const std::vector<Subspace>& ideal, const ClassProduct& product)
{
    if (!ideal.empty() && ideal[0].dim() != 0) throw ContractViolation("ideal meets degree 0");
    auto nonzero = [](const std::vector<Subspace>& level) {
        for (const auto& s : level)
            if (s.dim() != 0) return true;
        return false;
    };
    std::vector<std::vector<Subspace>> powers;
    if (!nonzero(ideal)) return powers;
    powers.push_back(ideal);
    const int top = static_cast<int>(ideal.size()) - 1;
    while (true) {
        const auto& prev = powers.back();
        std::vector<std::vector<Vector>> gens(ideal.size());
        for (int a = 0; a <= top; ++a) {
            for (const auto& xv : prev[a].basis()) {
                CohClass x{a, xv.to_dense(prev[a].ambient()), false};
                for (int b = 1; a + b <= top; ++b) {
                    for (const auto& yv : ideal[b].basis()) {
                        CohClass y{b, yv.to_dense(ideal[b].ambient()), false};
                        CohClass xy = product(x, y);
                        if (xy.truncated || xy.is_zero()) continue;
                        gens[a + b].push_back(xy.coords);
                    }
                }
            }
        }
        std::vector<Subspace> next;
        for (int n = 0; n <= top; ++n) next.push_back(Subspace::span(ideal[n].ambient(), gens[n]));
        if (!nonzero(next)) break;
        powers.push_back(std::move(next));
    }
    return powers;
}

int cup_length(const CohomologyRing& r)
{
    std::vector<Subspace> positive;
    for (int k = 0; k <= r.truncation(); ++k)
        positive.push_back(k == 0 ? Subspace(r.dim(0)) : Subspace::full(r.dim(k)));
    auto powers = ideal_powers(positive, [&](const CohClass& x, const CohClass& y) { return r.cup(x, y); });
    return static_cast<int>(powers.size());
}

KunnethProduct::KunnethProduct(std::shared_ptr<const CohomologyRing> left, std::shared_ptr<const CohomologyRing> right)
    : left_(std::move(left)), right_(std::move(right))
{
    if (!left_ || !right_) throw ContractViolation("null cohomology ring");
    const int na = left_->truncation();
    const int nb = right_->truncation();
    truncation_ = na + nb;
    pairs_.resize(static_cast<std::size_t>(truncation_ + 1));
    for (int n = 0; n <= truncation_; ++n)
        for (int p = std::max(0, n - nb); p <= std::min(n, na); ++p)
            for (std::size_t i = 0; i < left_->dim(p); ++i)
                for (std::size_t j = 0; j < right_->dim(n - p); ++j) pairs_[n].push_back({p, i, n - p, j});

    auto dga = std::make_shared<const Dga>(tensor(left_->dga(), right_->dga()));
    product_ = std::make_shared<const CohomologyRing>(dga, CohomologyOptions{false});

    dims_ok_ = true;
    for (int n = 0; n <= truncation_; ++n) {
        std::vector<SparseVec> cols;
        for (const auto& pr : pairs_[n]) {
            Cochain x = left_->representative(left_->basis_class(pr.p, pr.i));
            Cochain y = right_->representative(right_->basis_class(pr.q, pr.j));
            cols.push_back(SparseVec::from_dense(
                product_->class_of(tensor_cochain(left_->dga(), right_->dga(), x, y)).coords));
        }
        comparison_.push_back(SparseMatrix::from_columns(product_->dim(n), std::move(cols)));
        if (product_->dim(n) != dim(n) || rank(comparison_.back()) != dim(n)) dims_ok_ = false;
    }

    mult_ok_ = dims_ok_;
    for (int a = 0; mult_ok_ && a <= truncation_; ++a) {
        for (std::size_t s = 0; mult_ok_ && s < dim(a); ++s) {
            CohClass u = zero(a);
            u.coords[s] = 1;
            for (int b = 0; mult_ok_ && a + b <= truncation_; ++b) {
                for (std::size_t t = 0; t < dim(b); ++t) {
                    CohClass v = zero(b);
                    v.coords[t] = 1;
                    if (to_product(multiply(u, v)) != product_->cup(to_product(u), to_product(v))) {
                        mult_ok_ = false;
                        break;
                    }
                }
            }
        }
    }
}

int KunnethProduct::top_degree() const
{
    for (int n = truncation_; n >= 0; --n)
        if (dim(n) != 0) return n;
    return 0;
}

const std::vector<KunnethProduct::Pair>& KunnethProduct::pairs(int n) const
{
    static const std::vector<Pair> none;
    if (n < 0 || n > truncation_) return none;
    return pairs_[static_cast<std::size_t>(n)];
}

std::size_t KunnethProduct::index(int p, std::size_t i, int q, std::size_t j) const
{
    const int n = p + q;
    std::size_t off = 0;
    for (int pp = std::max(0, n - right_->truncation()); pp < p; ++pp) off += left_->dim(pp) * right_->dim(n - pp);
    return off + i * right_->dim(q) + j;
}

CohClass KunnethProduct::zero(int n) const { return {n, zero_vector(dim(n)), n > truncation_}; }

void KunnethProduct::check(const CohClass& c) const
{
    if (c.degree < 0 || c.coords.size() != dim(c.degree))
        throw ContractViolation("class of degree " + std::to_string(c.degree) + " does not belong to H(A) ⊗ H(B)");
}

CohClass KunnethProduct::cross(const CohClass& x, const CohClass& y) const
{
    left_->check(x);
    right_->check(y);
    CohClass out = zero(x.degree + y.degree);
    if (out.truncated) return out;
    for (std::size_t i = 0; i < x.coords.size(); ++i) {
        if (x.coords[i] == 0) continue;
        for (std::size_t j = 0; j < y.coords.size(); ++j)
            if (y.coords[j] != 0) out.coords[index(x.degree, i, y.degree, j)] += x.coords[i] * y.coords[j];
    }
    return out;
}

CohClass KunnethProduct::multiply(const CohClass& x, const CohClass& y) const
{
    check(x);
    check(y);
    const int deg = x.degree + y.degree;
    if (deg > truncation_) return {deg, {}, true};
    CohClass out = zero(deg);
    const auto& px = pairs(x.degree);
    const auto& py = pairs(y.degree);
    for (std::size_t s = 0; s < px.size(); ++s) {
        if (x.coords[s] == 0) continue;
        const Pair& a = px[s];
        for (std::size_t t = 0; t < py.size(); ++t) {
            if (y.coords[t] == 0) continue;
            const Pair& b = py[t];
            CohClass l = left_->cup(left_->basis_class(a.p, a.i), left_->basis_class(b.p, b.i));
            if (l.truncated || l.is_zero()) continue;
            CohClass r = right_->cup(right_->basis_class(a.q, a.j), right_->basis_class(b.q, b.j));
            if (r.truncated || r.is_zero()) continue;
            Rational c = x.coords[s] * y.coords[t];
            if ((a.q * b.p) % 2 != 0) c = -c;
            for (std::size_t li = 0; li < l.coords.size(); ++li) {
                if (l.coords[li] == 0) continue;
                for (std::size_t rj = 0; rj < r.coords.size(); ++rj)
                    if (r.coords[rj] != 0)
                        out.coords[index(l.degree, li, r.degree, rj)] += c * l.coords[li] * r.coords[rj];
            }
        }
    }
    return out;
}

CohClass KunnethProduct::to_product(const CohClass& x) const
{
    check(x);
    if (x.degree > truncation_) return product_->zero(x.degree);
    return {x.degree, comparison_[static_cast<std::size_t>(x.degree)].apply(x.coords), false};
}

CohClass KunnethProduct::from_product(const CohClass& c) const
{
    product_->check(c);
    if (c.degree > truncation_) return zero(c.degree);
    auto sol = solve(comparison_[static_cast<std::size_t>(c.degree)], c.coords);
    if (!sol) throw ContractViolation("class is not in the image of H(A) ⊗ H(B)");
    return {c.degree, *sol, false};
}

Cochain KunnethProduct::cochain(const CohClass& x) const
{
    check(x);
    const Dga& t = product_->dga();
    Cochain out = t.zero(x.degree);
    const auto& px = pairs(x.degree);
    for (std::size_t s = 0; s < px.size(); ++s) {
        if (x.coords[s] == 0) continue;
        const Pair& a = px[s];
        Cochain u = left_->representative(left_->basis_class(a.p, a.i));
        Cochain v = right_->representative(right_->basis_class(a.q, a.j));
        out = out + x.coords[s] * tensor_cochain(left_->dga(), right_->dga(), u, v);
    }
    return out;
}

std::string KunnethProduct::render(const CohClass& c) const
{
    const auto& px = pairs(c.degree);
    return render_terms(c.coords, [&](std::size_t s) {
        const Pair& a = px[s];
        return left_->class_name(a.p, a.i) + "⊗" + right_->class_name(a.q, a.j);
    });
}

bool kunneth_check(std::shared_ptr<const Dga> a, std::shared_ptr<const Dga> b)
{
    auto ra = std::make_shared<const CohomologyRing>(std::move(a));
    auto rb = std::make_shared<const CohomologyRing>(std::move(b));
    return KunnethProduct(ra, rb).ok();
}

}  // namespace sectcat
