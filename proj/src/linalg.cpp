#include "sectcat/linalg.hpp"

#include <algorithm>

namespace sectcat {

Rational make_rational(long num, long den)
{
    if (den == 0)
        throw ContractViolation("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q)
{
    return q.get_str();
}

Vector zero_vector(std::size_t n)
{
    return Vector(n, Rational(0));
}

bool is_zero(const Vector& v)
{
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) == 0; });
}

static void check_same_length(const Vector& x, const Vector& y)
{
    if (x.size() != y.size())
        throw ContractViolation("vector length mismatch: " + std::to_string(x.size()) + " vs " +
                                std::to_string(y.size()));
}

Vector add(const Vector& x, const Vector& y)
{
    check_same_length(x, y);
    Vector r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        r[i] = x[i] + y[i];
    return r;
}

Vector sub(const Vector& x, const Vector& y)
{
    check_same_length(x, y);
    Vector r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        r[i] = x[i] - y[i];
    return r;
}

Vector scaled(const Rational& c, const Vector& x)
{
    Vector r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        r[i] = c * x[i];
    return r;
}

/****************************************************
 *                   SparseVec
 ***************************************************/

SparseVec SparseVec::from_dense(const Vector& v)
{
    SparseVec s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s.push_back(i, v[i]);
    return s;
}

SparseVec SparseVec::unit(std::size_t i, const Rational& c)
{
    SparseVec s;
    s.push_back(i, c);
    return s;
}

Vector SparseVec::to_dense(std::size_t n) const
{
    Vector v = zero_vector(n);
    for (const auto& [i, c] : entries_) {
        if (i >= n)
            throw ContractViolation("sparse index " + std::to_string(i) + " outside dimension " + std::to_string(n));
        v[i] = c;
    }
    return v;
}

Rational SparseVec::at(std::size_t i) const
{
    auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                               [](const Entry& e, std::size_t k) { return e.first < k; });
    if (it != entries_.end() && it->first == i)
        return it->second;
    return 0;
}

std::optional<std::size_t> SparseVec::leading() const
{
    if (entries_.empty())
        return std::nullopt;
    return entries_.front().first;
}

void SparseVec::push_back(std::size_t i, const Rational& c)
{
    if (sgn(c) == 0)
        return;
    if (!entries_.empty() && entries_.back().first >= i)
        throw ContractViolation("SparseVec::push_back requires increasing indices");
    entries_.emplace_back(i, c);
}

void SparseVec::axpy(const Rational& c, const SparseVec& x)
{
    if (sgn(c) == 0 || x.entries_.empty())
        return;
    std::vector<Entry> out;
    out.reserve(entries_.size() + x.entries_.size());
    auto a = entries_.begin();
    auto b = x.entries_.begin();
    while (a != entries_.end() || b != x.entries_.end()) {
        if (b == x.entries_.end() || (a != entries_.end() && a->first < b->first)) {
            out.push_back(std::move(*a));
            ++a;
        }
        else if (a == entries_.end() || b->first < a->first) {
            out.emplace_back(b->first, c * b->second);
            ++b;
        }
        else {
            Rational s = a->second + c * b->second;
            if (sgn(s) != 0)
                out.emplace_back(a->first, std::move(s));
            ++a;
            ++b;
        }
    }
    entries_ = std::move(out);
}

void SparseVec::scale(const Rational& c)
{
    if (sgn(c) == 0) {
        entries_.clear();
        return;
    }
    for (auto& e : entries_)
        e.second *= c;
}

bool operator==(const SparseVec& a, const SparseVec& b)
{
    if (a.entries_.size() != b.entries_.size())
        return false;
    for (std::size_t k = 0; k < a.entries_.size(); ++k)
        if (a.entries_[k].first != b.entries_[k].first || a.entries_[k].second != b.entries_[k].second)
            return false;
    return true;
}

/****************************************************
 *                   SparseMatrix
 ***************************************************/

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols) {}

SparseMatrix SparseMatrix::from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> entries)
{
    std::sort(entries.begin(), entries.end(), [](const Triplet& x, const Triplet& y) {
        return x.col != y.col ? x.col < y.col : x.row < y.row;
    });
    SparseMatrix m(rows, cols);
    for (std::size_t k = 0; k < entries.size();) {
        const auto& t = entries[k];
        if (t.row >= rows || t.col >= cols)
            throw ContractViolation("triplet (" + std::to_string(t.row) + "," + std::to_string(t.col) +
                                    ") outside " + std::to_string(rows) + "x" + std::to_string(cols));
        Rational s = 0;
        std::size_t l = k;
        while (l < entries.size() && entries[l].row == t.row && entries[l].col == t.col)
            s += entries[l++].value;
        m.columns_[t.col].push_back(t.row, s);
        k = l;
    }
    return m;
}

SparseMatrix SparseMatrix::from_columns(std::size_t rows, std::vector<SparseVec> columns)
{
    for (const auto& c : columns)
        if (!c.empty() && c.entries().back().first >= rows)
            throw ContractViolation("column entry outside row range");
    SparseMatrix m;
    m.rows_ = rows;
    m.columns_ = std::move(columns);
    return m;
}

SparseMatrix SparseMatrix::from_dense_rows(const std::vector<Vector>& rows, std::size_t cols)
{
    std::vector<Triplet> t;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols)
            throw ContractViolation("dense row has wrong length");
        for (std::size_t c = 0; c < cols; ++c)
            if (sgn(rows[r][c]) != 0)
                t.push_back({r, c, rows[r][c]});
    }
    return from_triplets(rows.size(), cols, std::move(t));
}

SparseMatrix SparseMatrix::identity(std::size_t n)
{
    SparseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.columns_[i] = SparseVec::unit(i);
    return m;
}

std::vector<Triplet> SparseMatrix::entries() const
{
    std::vector<Triplet> t;
    for (std::size_t c = 0; c < columns_.size(); ++c)
        for (const auto& [r, v] : columns_[c].entries())
            t.push_back({r, c, v});
    std::sort(t.begin(), t.end(), [](const Triplet& x, const Triplet& y) {
        return x.row != y.row ? x.row < y.row : x.col < y.col;
    });
    return t;
}

std::vector<SparseVec> SparseMatrix::row_vectors() const
{
    std::vector<SparseVec> rows(rows_);
    for (const auto& t : entries())
        rows[t.row].push_back(t.col, t.value);
    return rows;
}

Vector SparseMatrix::apply(const Vector& x) const
{
    if (x.size() != cols())
        throw ContractViolation("matrix-vector dimension mismatch: " + std::to_string(cols()) + " columns, vector of " +
                                std::to_string(x.size()));
    Vector y = zero_vector(rows_);
    for (std::size_t c = 0; c < columns_.size(); ++c) {
        if (sgn(x[c]) == 0)
            continue;
        for (const auto& [r, v] : columns_[c].entries())
            y[r] += v * x[c];
    }
    return y;
}

Rational SparseMatrix::at(std::size_t r, std::size_t c) const
{
    return columns_.at(c).at(r);
}

bool SparseMatrix::is_zero() const
{
    return std::all_of(columns_.begin(), columns_.end(), [](const SparseVec& c) { return c.empty(); });
}

bool operator==(const SparseMatrix& a, const SparseMatrix& b)
{
    return a.rows_ == b.rows_ && a.columns_ == b.columns_;
}

/****************************************************
 *                   RowEchelon
 ***************************************************/

void RowEchelon::reduce(SparseVec& v) const
{
    // Stored rows vanish at each other's pivots, so one pass suffices.
    for (const auto& [pivot, row] : rows_) {
        Rational c = v.at(pivot);
        if (sgn(c) != 0)
            v.axpy(-c, row);
    }
}

bool RowEchelon::insert(SparseVec v)
{
    if (!v.empty() && v.entries().back().first >= width_)
        throw ContractViolation("row wider than echelon width");
    reduce(v);
    auto lead = v.leading();
    if (!lead)
        return false;
    Rational inv = 1 / v.at(*lead);
    v.scale(inv);
    for (auto& [pivot, row] : rows_) {
        Rational c = row.at(*lead);
        if (sgn(c) != 0)
            row.axpy(-c, v);
    }
    rows_.emplace(*lead, std::move(v));
    return true;
}

/****************************************************
 *                   Subspace
 ***************************************************/

Subspace Subspace::span(std::size_t ambient, const std::vector<SparseVec>& vectors)
{
    RowEchelon e(ambient);
    for (const auto& v : vectors)
        e.insert(v);
    Subspace s(ambient);
    for (const auto& [pivot, row] : e.rows()) {
        s.pivots_.push_back(pivot);
        s.basis_.push_back(row);
    }
    return s;
}

Subspace Subspace::span(std::size_t ambient, const std::vector<Vector>& vectors)
{
    std::vector<SparseVec> sv;
    sv.reserve(vectors.size());
    for (const auto& v : vectors) {
        if (v.size() != ambient)
            throw ContractViolation("spanning vector has wrong ambient dimension");
        sv.push_back(SparseVec::from_dense(v));
    }
    return span(ambient, sv);
}

Subspace Subspace::full(std::size_t ambient)
{
    Subspace s(ambient);
    for (std::size_t i = 0; i < ambient; ++i) {
        s.pivots_.push_back(i);
        s.basis_.push_back(SparseVec::unit(i));
    }
    return s;
}

SparseMatrix Subspace::basis_matrix() const
{
    return SparseMatrix::from_columns(ambient_, basis_);
}

Vector Subspace::coordinates(const Vector& v) const
{
    if (v.size() != ambient_)
        throw ContractViolation("coordinates: ambient dimension mismatch");
    Vector c(pivots_.size());
    for (std::size_t k = 0; k < pivots_.size(); ++k)
        c[k] = v[pivots_[k]];
    return c;
}

Vector Subspace::combination(const Vector& coords) const
{
    if (coords.size() != basis_.size())
        throw ContractViolation("combination: coordinate count mismatch");
    SparseVec acc;
    for (std::size_t k = 0; k < coords.size(); ++k)
        acc.axpy(coords[k], basis_[k]);
    return acc.to_dense(ambient_);
}

bool operator==(const Subspace& a, const Subspace& b)
{
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
}

/****************************************************
 *                   Operations
 ***************************************************/

std::size_t rank(const SparseMatrix& a)
{
    RowEchelon e(a.cols());
    for (auto& r : a.row_vectors())
        e.insert(std::move(r));
    return e.rank();
}

std::optional<Vector> solve(const SparseMatrix& a, const Vector& b)
{
    if (b.size() != a.rows())
        throw ContractViolation("solve: right-hand side has " + std::to_string(b.size()) + " entries, matrix has " +
                                std::to_string(a.rows()) + " rows");
    const std::size_t n = a.cols();
    auto rows = a.row_vectors();
    RowEchelon e(n + 1);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        SparseVec aug = rows[r];
        aug.push_back(n, b[r]);
        e.insert(std::move(aug));
    }
    if (e.rows().count(n))
        return std::nullopt;
    Vector x = zero_vector(n);
    for (const auto& [pivot, row] : e.rows())
        x[pivot] = row.at(n);
    return x;
}

Subspace kernel(const SparseMatrix& a)
{
    const std::size_t n = a.cols();
    RowEchelon e(n);
    for (auto& r : a.row_vectors())
        e.insert(std::move(r));
    std::vector<bool> is_pivot(n, false);
    for (const auto& [pivot, row] : e.rows())
        is_pivot[pivot] = true;
    std::vector<SparseVec> vectors;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f])
            continue;
        Vector x = zero_vector(n);
        x[f] = 1;
        for (const auto& [pivot, row] : e.rows())
            x[pivot] = -row.at(f);
        vectors.push_back(SparseVec::from_dense(x));
    }
    return Subspace::span(n, vectors);
}

Subspace image(const SparseMatrix& a)
{
    return Subspace::span(a.rows(), a.columns());
}

Vector reduce_mod(const Subspace& s, const Vector& v)
{
    if (v.size() != s.ambient())
        throw ContractViolation("reduce_mod: vector of length " + std::to_string(v.size()) + " in ambient dimension " +
                                std::to_string(s.ambient()));
    SparseVec sv = SparseVec::from_dense(v);
    for (std::size_t k = 0; k < s.dim(); ++k) {
        Rational c = sv.at(s.pivots()[k]);
        if (sgn(c) != 0)
            sv.axpy(-c, s.basis()[k]);
    }
    return sv.to_dense(s.ambient());
}

bool member(const Subspace& s, const Vector& v)
{
    return is_zero(reduce_mod(s, v));
}

Subspace sum(const Subspace& s1, const Subspace& s2)
{
    if (s1.ambient() != s2.ambient())
        throw ContractViolation("sum: ambient dimensions differ");
    std::vector<SparseVec> all = s1.basis();
    all.insert(all.end(), s2.basis().begin(), s2.basis().end());
    return Subspace::span(s1.ambient(), all);
}

bool contains(const Subspace& s2, const Subspace& s1)
{
    if (s1.ambient() != s2.ambient())
        throw ContractViolation("contains: ambient dimensions differ");
    for (std::size_t k = 0; k < s1.dim(); ++k)
        if (!member(s2, s1.basis_vector(k)))
            return false;
    return true;
}

}  // namespace sectcat
