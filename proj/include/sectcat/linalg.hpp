#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sectcat {

using Rational = mpq_class;
using Vector = std::vector<Rational>;

/// Raised when a caller breaks an operation's precondition (mismatched
/// dimensions, foreign cochains, undefined Massey cosets, ...).
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

Rational make_rational(long num, long den = 1);
std::string to_string(const Rational& q);

Vector zero_vector(std::size_t n);
bool is_zero(const Vector& v);
Vector add(const Vector& x, const Vector& y);
Vector sub(const Vector& x, const Vector& y);
Vector scaled(const Rational& c, const Vector& x);

/// Sorted (index, value) list with no explicit zeros.
class SparseVec {
public:
    using Entry = std::pair<std::size_t, Rational>;

    SparseVec() = default;

    static SparseVec from_dense(const Vector& v);
    static SparseVec unit(std::size_t i, const Rational& c = 1);

    Vector to_dense(std::size_t n) const;
    const std::vector<Entry>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }
    std::size_t nnz() const { return entries_.size(); }
    Rational at(std::size_t i) const;
    std::optional<std::size_t> leading() const;

    /// Appends an entry; indices must be strictly increasing. Zeros are dropped.
    void push_back(std::size_t i, const Rational& c);
    /// this += c * x
    void axpy(const Rational& c, const SparseVec& x);
    void scale(const Rational& c);

    friend bool operator==(const SparseVec& a, const SparseVec& b);

private:
    std::vector<Entry> entries_;
};

struct Triplet {
    std::size_t row;
    std::size_t col;
    Rational value;
};

/// Column-stored sparse matrix. Equality is structural; entries() reports
/// the canonical row-major order.
class SparseMatrix {
public:
    SparseMatrix() = default;
    SparseMatrix(std::size_t rows, std::size_t cols);

    /// Duplicate positions are summed; zero sums are dropped.
    static SparseMatrix from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> entries);
    static SparseMatrix from_columns(std::size_t rows, std::vector<SparseVec> columns);
    static SparseMatrix from_dense_rows(const std::vector<Vector>& rows, std::size_t cols);
    static SparseMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return columns_.size(); }
    const SparseVec& column(std::size_t j) const { return columns_.at(j); }
    const std::vector<SparseVec>& columns() const { return columns_; }

    std::vector<Triplet> entries() const;
    std::vector<SparseVec> row_vectors() const;
    Vector apply(const Vector& x) const;
    Rational at(std::size_t r, std::size_t c) const;
    bool is_zero() const;

    friend bool operator==(const SparseMatrix& a, const SparseMatrix& b);

private:
    std::size_t rows_ = 0;
    std::vector<SparseVec> columns_;
};

/// Fully reduced row echelon form built incrementally. Every stored row has a
/// leading 1 and zeros in every other stored row's pivot column.
class RowEchelon {
public:
    explicit RowEchelon(std::size_t width) : width_(width) {}

    /// Reduces v against the stored rows in place.
    void reduce(SparseVec& v) const;
    /// Returns true when v was independent of the stored rows.
    bool insert(SparseVec v);

    std::size_t width() const { return width_; }
    std::size_t rank() const { return rows_.size(); }
    const std::map<std::size_t, SparseVec>& rows() const { return rows_; }

private:
    std::size_t width_;
    std::map<std::size_t, SparseVec> rows_;
};

/// Subspace of Q^n held as a basis in reduced column echelon form: each
/// basis vector has a leading 1 at its pivot, pivots increase from the
/// first vector to the last, and every vector is zero at the other pivots.
/// The basis is therefore unique for the subspace.
class Subspace {
public:
    Subspace() = default;
    explicit Subspace(std::size_t ambient) : ambient_(ambient) {}

    static Subspace span(std::size_t ambient, const std::vector<SparseVec>& vectors);
    static Subspace span(std::size_t ambient, const std::vector<Vector>& vectors);
    static Subspace full(std::size_t ambient);

    std::size_t ambient() const { return ambient_; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<SparseVec>& basis() const { return basis_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }
    Vector basis_vector(std::size_t i) const { return basis_.at(i).to_dense(ambient_); }
    SparseMatrix basis_matrix() const;

    /// Coordinates of v in this basis, read off the pivot entries. Only
    /// meaningful when v lies in the subspace.
    Vector coordinates(const Vector& v) const;
    Vector combination(const Vector& coords) const;

    friend bool operator==(const Subspace& a, const Subspace& b);

private:
    std::size_t ambient_ = 0;
    std::vector<SparseVec> basis_;
    std::vector<std::size_t> pivots_;
};

std::size_t rank(const SparseMatrix& a);
std::optional<Vector> solve(const SparseMatrix& a, const Vector& b);
Subspace kernel(const SparseMatrix& a);
Subspace image(const SparseMatrix& a);
bool member(const Subspace& s, const Vector& v);
Subspace sum(const Subspace& s1, const Subspace& s2);
Vector reduce_mod(const Subspace& s, const Vector& v);
/// s1 is contained in s2.
bool contains(const Subspace& s2, const Subspace& s1);

}  // namespace sectcat
