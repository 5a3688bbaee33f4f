#include "sectcat/dga.hpp"

#include <algorithm>
#include <sstream>

namespace sectcat {

namespace {

int koszul(long long x)
{
    return (x % 2 == 0) ? 1 : -1;
}

void check_same_degree(const Cochain& x, const Cochain& y)
{
    if (x.degree != y.degree || x.coords.size() != y.coords.size())
        throw ContractViolation("cochain degree mismatch: " + std::to_string(x.degree) + " vs " +
                                std::to_string(y.degree));
}

}  // namespace

Cochain operator+(const Cochain& x, const Cochain& y)
{
    check_same_degree(x, y);
    return {x.degree, add(x.coords, y.coords)};
}

Cochain operator-(const Cochain& x, const Cochain& y)
{
    check_same_degree(x, y);
    return {x.degree, sub(x.coords, y.coords)};
}

Cochain operator-(const Cochain& x)
{
    return {x.degree, scaled(-1, x.coords)};
}

Cochain operator*(const Rational& c, const Cochain& x)
{
    return {x.degree, scaled(c, x.coords)};
}

/****************************************************
 *                   Dga
 ***************************************************/

Dga::Dga(int truncation, std::vector<BasisElement> basis, std::vector<SparseVec> mult, std::vector<SparseVec> diff,
         DgaFlags flags)
    : truncation_(truncation), basis_(std::move(basis)), mult_(std::move(mult)), diff_(std::move(diff)),
      flags_(flags)
{
    if (truncation_ < 0)
        throw ContractViolation("negative truncation degree");
    const std::size_t n = basis_.size();
    offsets_.assign(static_cast<std::size_t>(truncation_) + 2, 0);
    int last = 0;
    for (std::size_t g = 0; g < n; ++g) {
        int d = basis_[g].degree;
        if (d < 0 || d > truncation_)
            throw ContractViolation("basis element '" + basis_[g].name + "' has degree " + std::to_string(d) +
                                    " outside 0.." + std::to_string(truncation_));
        if (d < last)
            throw ContractViolation("basis must be sorted by degree");
        last = d;
        offsets_[static_cast<std::size_t>(d) + 1]++;
    }
    for (std::size_t k = 1; k < offsets_.size(); ++k)
        offsets_[k] += offsets_[k - 1];
    if (mult_.empty())
        mult_.resize(n * n);
    if (diff_.empty())
        diff_.resize(n);
    if (mult_.size() != n * n || diff_.size() != n)
        throw ContractViolation("structure-constant tables do not match the basis size");
    for (const auto& v : mult_)
        if (!v.empty() && v.entries().back().first >= n)
            throw ContractViolation("product refers to a basis index outside the algebra");
    for (const auto& v : diff_)
        if (!v.empty() && v.entries().back().first >= n)
            throw ContractViolation("differential refers to a basis index outside the algebra");
}

std::size_t Dga::dim(int degree) const
{
    if (degree < 0 || degree > truncation_)
        return 0;
    auto k = static_cast<std::size_t>(degree);
    return offsets_[k + 1] - offsets_[k];
}

std::size_t Dga::offset(int degree) const
{
    if (degree < 0)
        return 0;
    if (degree > truncation_)
        return basis_.size();
    return offsets_[static_cast<std::size_t>(degree)];
}

const SparseVec& Dga::product(std::size_t i, std::size_t j) const
{
    if (i >= basis_.size() || j >= basis_.size())
        throw ContractViolation("product of basis indices outside the algebra");
    return mult_[i * basis_.size() + j];
}

SparseMatrix Dga::diff_matrix(int degree) const
{
    const std::size_t src = dim(degree), dst = dim(degree + 1);
    const std::size_t so = offset(degree), dofs = offset(degree + 1);
    std::vector<SparseVec> cols(src);
    for (std::size_t i = 0; i < src; ++i)
        for (const auto& [g, c] : diff_[so + i].entries())
            if (g >= dofs && g < dofs + dst)
                cols[i].push_back(g - dofs, c);
    return SparseMatrix::from_columns(dst, std::move(cols));
}

Cochain Dga::zero(int degree) const
{
    return {degree, zero_vector(dim(degree))};
}

Cochain Dga::basis_cochain(std::size_t global) const
{
    int d = degree_of(global);
    Cochain c = zero(d);
    c.coords[global - offset(d)] = 1;
    return c;
}

Cochain Dga::unit() const
{
    if (dim(0) == 0)
        throw ContractViolation("algebra has no degree-0 element");
    return basis_cochain(offset(0));
}

void Dga::check(const Cochain& x) const
{
    if (x.coords.size() != dim(x.degree))
        throw ContractViolation("foreign cochain: degree " + std::to_string(x.degree) + " has " +
                                std::to_string(dim(x.degree)) + " basis elements, cochain has " +
                                std::to_string(x.coords.size()) + " coordinates");
}

Cochain Dga::mul(const Cochain& x, const Cochain& y) const
{
    check(x);
    check(y);
    const int deg = x.degree + y.degree;
    Cochain r = zero(deg);
    if (r.coords.empty())
        return r;
    const std::size_t xo = offset(x.degree), yo = offset(y.degree), ro = offset(deg), rd = dim(deg);
    for (std::size_t i = 0; i < x.coords.size(); ++i) {
        if (sgn(x.coords[i]) == 0)
            continue;
        for (std::size_t j = 0; j < y.coords.size(); ++j) {
            if (sgn(y.coords[j]) == 0)
                continue;
            Rational c = x.coords[i] * y.coords[j];
            for (const auto& [g, v] : product(xo + i, yo + j).entries())
                if (g >= ro && g < ro + rd)
                    r.coords[g - ro] += c * v;
        }
    }
    return r;
}

Cochain Dga::diff(const Cochain& x) const
{
    check(x);
    Cochain r = zero(x.degree + 1);
    if (r.coords.empty() || x.coords.empty())
        return r;
    r.coords = diff_matrix(x.degree).apply(x.coords);
    return r;
}

std::string Dga::render(const Cochain& x) const
{
    check(x);
    std::ostringstream out;
    bool first = true;
    const std::size_t o = offset(x.degree);
    for (std::size_t i = 0; i < x.coords.size(); ++i) {
        const Rational& c = x.coords[i];
        if (sgn(c) == 0)
            continue;
        const std::string& name = basis_[o + i].name;
        Rational mag = abs(c);
        if (first)
            out << (sgn(c) < 0 ? "-" : "");
        else
            out << (sgn(c) < 0 ? " - " : " + ");
        if (name == "1")
            out << mag.get_str();
        else if (mag == 1)
            out << name;
        else
            out << mag.get_str() << "*" << name;
        first = false;
    }
    return first ? "0" : out.str();
}

Cochain mul(const Dga& a, const Cochain& x, const Cochain& y)
{
    return a.mul(x, y);
}

Cochain diff(const Dga& a, const Cochain& x)
{
    return a.diff(x);
}

/****************************************************
 *                   validate
 ***************************************************/

namespace {

class Validator {
public:
    explicit Validator(const Dga& a) : a_(a), n_(a.size()), N_(a.truncation()) {}

    std::vector<Violation> run()
    {
        degrees();
        unit();
        square_zero();
        leibniz();
        associativity();
        if (a_.flags().graded_commutative)
            commutativity();
        return std::move(out_);
    }

private:
    int deg(std::size_t g) const { return a_.degree_of(g); }
    const std::string& name(std::size_t g) const { return a_.basis()[g].name; }

    SparseVec d(const SparseVec& v) const
    {
        SparseVec r;
        for (const auto& [g, c] : v.entries())
            r.axpy(c, a_.differential(g));
        return r;
    }
    SparseVec right_mul(const SparseVec& v, std::size_t k) const
    {
        SparseVec r;
        for (const auto& [g, c] : v.entries())
            r.axpy(c, a_.product(g, k));
        return r;
    }
    SparseVec left_mul(std::size_t i, const SparseVec& v) const
    {
        SparseVec r;
        for (const auto& [g, c] : v.entries())
            r.axpy(c, a_.product(i, g));
        return r;
    }

    void report(std::string axiom, std::vector<std::size_t> tuple, const std::string& what)
    {
        std::string names;
        for (auto g : tuple)
            names += (names.empty() ? "" : ", ") + name(g);
        out_.push_back({std::move(axiom), std::move(tuple), what + " on (" + names + ")"});
    }

    void degrees()
    {
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = 0; j < n_; ++j) {
                const auto& p = a_.product(i, j);
                const int target = deg(i) + deg(j);
                for (const auto& [g, c] : p.entries()) {
                    if (target > N_ || deg(g) != target) {
                        report("degree", {i, j}, "product lands outside degree " + std::to_string(target));
                        break;
                    }
                }
            }
            const int target = deg(i) + 1;
            for (const auto& [g, c] : a_.differential(i).entries()) {
                if (target > N_ || deg(g) != target) {
                    report("degree", {i}, "differential lands in degree " + std::to_string(deg(g)) +
                                              ", expected " + std::to_string(target));
                    break;
                }
            }
        }
    }

    void unit()
    {
        if (!a_.flags().unital)
            return;
        if (a_.dim(0) != 1) {
            out_.push_back({"unit", {}, "degree 0 must be spanned by a single unit"});
            return;
        }
        const std::size_t u = a_.offset(0);
        for (std::size_t j = 0; j < n_; ++j) {
            SparseVec e = SparseVec::unit(j);
            if (!(a_.product(u, j) == e) || !(a_.product(j, u) == e))
                report("unit", {u, j}, "unit does not act as identity");
        }
        if (!a_.differential(u).empty())
            report("unit", {u}, "unit is not a cocycle");
    }

    void square_zero()
    {
        for (std::size_t i = 0; i < n_; ++i)
            if (!d(a_.differential(i)).empty())
                report("d^2=0", {i}, "d(d(x)) is nonzero");
    }

    void leibniz()
    {
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = 0; j < n_; ++j) {
                if (deg(i) + deg(j) + 1 > N_)
                    continue;
                SparseVec lhs = d(a_.product(i, j));
                SparseVec rhs = right_mul(a_.differential(i), j);
                rhs.axpy(koszul(deg(i)), left_mul(i, a_.differential(j)));
                if (!(lhs == rhs))
                    report("leibniz", {i, j}, "d(xy) != d(x)y + (-1)^|x| x d(y)");
            }
        }
    }

    void associativity()
    {
        std::vector<std::vector<std::size_t>> partners(n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                if (!a_.product(i, j).empty())
                    partners[i].push_back(j);
        // Triples where both (ij) and (jk) vanish are trivially associative.
        auto upto = [&](int d) { return d < 0 ? std::size_t{0} : a_.offset(d + 1); };
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j : partners[i]) {
                const std::size_t kend = upto(N_ - deg(i) - deg(j));
                for (std::size_t k = 0; k < kend; ++k) {
                    SparseVec lhs = right_mul(a_.product(i, j), k);
                    SparseVec rhs = left_mul(i, a_.product(j, k));
                    if (!(lhs == rhs))
                        report("associativity", {i, j, k}, "(xy)z != x(yz)");
                }
            }
        }
        for (std::size_t j = 0; j < n_; ++j) {
            for (std::size_t k : partners[j]) {
                const std::size_t iend = upto(N_ - deg(j) - deg(k));
                for (std::size_t i = 0; i < iend; ++i) {
                    if (!a_.product(i, j).empty())
                        continue;
                    if (!left_mul(i, a_.product(j, k)).empty())
                        report("associativity", {i, j, k}, "(xy)z != x(yz)");
                }
            }
        }
    }

    void commutativity()
    {
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = i; j < n_; ++j) {
                SparseVec swapped = a_.product(j, i);
                swapped.scale(koszul(static_cast<long long>(deg(i)) * deg(j)));
                if (!(a_.product(i, j) == swapped))
                    report("graded-commutativity", {i, j}, "xy != (-1)^{|x||y|} yx");
            }
        }
    }

    const Dga& a_;
    std::size_t n_;
    int N_;
    std::vector<Violation> out_;
};

}  // namespace

std::vector<Violation> validate(const Dga& a)
{
    return Validator(a).run();
}

/****************************************************
 *                   tensor
 ***************************************************/

std::size_t tensor_local_index(const Dga& a, const Dga& b, int p, std::size_t i, int q, std::size_t j)
{
    const int n = p + q;
    std::size_t idx = 0;
    for (int pp = 0; pp < p; ++pp)
        idx += a.dim(pp) * b.dim(n - pp);
    return idx + i * b.dim(q) + j;
}

Dga tensor(const Dga& a, const Dga& b)
{
    const int N = a.truncation() + b.truncation();
    const std::size_t na = a.size(), nb = b.size();
    std::vector<BasisElement> basis;
    std::vector<std::size_t> index(na * nb);
    for (int n = 0; n <= N; ++n) {
        for (int p = 0; p <= n; ++p) {
            const int q = n - p;
            for (std::size_t i = 0; i < a.dim(p); ++i) {
                for (std::size_t j = 0; j < b.dim(q); ++j) {
                    const std::size_t ga = a.offset(p) + i, gb = b.offset(q) + j;
                    index[ga * nb + gb] = basis.size();
                    basis.push_back({a.basis()[ga].name + "⊗" + b.basis()[gb].name, n});
                }
            }
        }
    }
    const std::size_t n = basis.size();
    auto pair = [&](std::size_t ga, std::size_t gb) { return index[ga * nb + gb]; };

    std::vector<std::pair<std::size_t, std::size_t>> a_pairs, b_pairs;
    for (std::size_t x = 0; x < na; ++x)
        for (std::size_t y = 0; y < na; ++y)
            if (!a.product(x, y).empty())
                a_pairs.emplace_back(x, y);
    for (std::size_t x = 0; x < nb; ++x)
        for (std::size_t y = 0; y < nb; ++y)
            if (!b.product(x, y).empty())
                b_pairs.emplace_back(x, y);

    // (x ⊗ u)(y ⊗ v) = (-1)^{|u||y|} xy ⊗ uv
    std::vector<SparseVec> mult(n * n);
    std::vector<Triplet> scratch;
    for (const auto& [x, y] : a_pairs) {
        for (const auto& [u, v] : b_pairs) {
            scratch.clear();
            const int sign = koszul(static_cast<long long>(b.degree_of(u)) * a.degree_of(y));
            for (const auto& [s, cs] : a.product(x, y).entries())
                for (const auto& [t, ct] : b.product(u, v).entries())
                    scratch.push_back({pair(s, t), 0, sign * cs * ct});
            std::sort(scratch.begin(), scratch.end(), [](const Triplet& l, const Triplet& r) { return l.row < r.row; });
            SparseVec& out = mult[pair(x, u) * n + pair(y, v)];
            for (const auto& t : scratch)
                out.push_back(t.row, t.value);
        }
    }

    // d(x ⊗ u) = dx ⊗ u + (-1)^{|x|} x ⊗ du
    std::vector<SparseVec> diff(n);
    for (std::size_t x = 0; x < na; ++x) {
        for (std::size_t u = 0; u < nb; ++u) {
            scratch.clear();
            for (const auto& [s, c] : a.differential(x).entries())
                scratch.push_back({pair(s, u), 0, c});
            const int sign = koszul(a.degree_of(x));
            for (const auto& [t, c] : b.differential(u).entries())
                scratch.push_back({pair(x, t), 0, sign * c});
            std::sort(scratch.begin(), scratch.end(), [](const Triplet& l, const Triplet& r) { return l.row < r.row; });
            SparseVec& out = diff[pair(x, u)];
            for (std::size_t k = 0; k < scratch.size();) {
                Rational s = 0;
                std::size_t l = k;
                while (l < scratch.size() && scratch[l].row == scratch[k].row)
                    s += scratch[l++].value;
                out.push_back(scratch[k].row, s);
                k = l;
            }
        }
    }

    DgaFlags flags;
    flags.graded_commutative = a.flags().graded_commutative && b.flags().graded_commutative;
    flags.unital = a.flags().unital && b.flags().unital;
    flags.simply_connected = a.flags().simply_connected && b.flags().simply_connected;
    if (a.flags().space_dim && b.flags().space_dim)
        flags.space_dim = *a.flags().space_dim + *b.flags().space_dim;
    return Dga(N, std::move(basis), std::move(mult), std::move(diff), flags);
}

Cochain tensor_cochain(const Dga& a, const Dga& b, const Cochain& x, const Cochain& y)
{
    a.check(x);
    b.check(y);
    const int n = x.degree + y.degree;
    std::size_t dim = 0;
    for (int p = 0; p <= n; ++p)
        dim += a.dim(p) * b.dim(n - p);
    Cochain r{n, zero_vector(dim)};
    for (std::size_t i = 0; i < x.coords.size(); ++i) {
        if (sgn(x.coords[i]) == 0)
            continue;
        for (std::size_t j = 0; j < y.coords.size(); ++j)
            if (sgn(y.coords[j]) != 0)
                r.coords[tensor_local_index(a, b, x.degree, i, y.degree, j)] = x.coords[i] * y.coords[j];
    }
    return r;
}

}  // namespace sectcat
