#pragma once

#include "sectcat/dga.hpp"

#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace sectcat {

/// Cohomology class: coordinates over the class basis of one degree.
/// `truncated` marks a product that was forced to zero only because its
/// degree exceeds the truncation.
struct CohClass {
    int degree = 0;
    Vector coords;
    bool truncated = false;

    bool is_zero() const { return sectcat::is_zero(coords); }
    friend bool operator==(const CohClass& a, const CohClass& b)
    {
        return a.degree == b.degree && a.coords == b.coords;
    }
};

CohClass operator+(const CohClass& x, const CohClass& y);
CohClass operator-(const CohClass& x, const CohClass& y);
CohClass operator-(const CohClass& x);
CohClass operator*(const Rational& c, const CohClass& x);

class NotACocycle : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when a DGA cannot be given a cohomology ring (axiom violations,
/// disconnected H^0, or a simply-connected flag contradicted by H^1).
class CohomologyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CohomologyOptions {
    /// Run validate() before computing. Tensor products of validated algebras
    /// are valid by construction and may skip it.
    bool validate = true;
};

/// H(A) with canonical representatives: the class basis in degree k is the
/// reduced echelon basis of Z^k ∩ {v : v vanishes on the pivots of B^k}, a
/// complement of B^k inside Z^k. Immutable once built.
class CohomologyRing {
public:
    explicit CohomologyRing(std::shared_ptr<const Dga> dga, CohomologyOptions options = {});

    const Dga& dga() const { return *dga_; }
    const std::shared_ptr<const Dga>& dga_ptr() const { return dga_; }
    int truncation() const { return dga_->truncation(); }

    std::size_t dim(int k) const;
    std::vector<std::size_t> dims() const;
    /// dim Z^k - dim B^k recomputed from matrix ranks.
    std::size_t rank_nullity_dim(int k) const;
    int top_degree() const;

    const Subspace& cocycles(int k) const { return cocycles_.at(static_cast<std::size_t>(k)); }
    const Subspace& coboundaries(int k) const { return coboundaries_.at(static_cast<std::size_t>(k)); }
    const Subspace& class_space(int k) const { return classes_.at(static_cast<std::size_t>(k)); }

    CohClass zero(int k) const;
    CohClass basis_class(int k, std::size_t i) const;
    CohClass unit() const { return basis_class(0, 0); }
    /// All basis classes of positive degree, in (degree, index) order.
    std::vector<CohClass> positive_basis() const;

    CohClass class_of(const Cochain& z) const;
    Cochain representative(const CohClass& c) const;
    CohClass cup(const CohClass& x, const CohClass& y) const;
    void check(const CohClass& c) const;

    std::string class_name(int k, std::size_t i) const;
    std::string render(const CohClass& c) const;
    /// "[rep]" of a basis class.
    std::string label(int k, std::size_t i) const;

private:
    std::shared_ptr<const Dga> dga_;
    std::vector<Subspace> cocycles_, coboundaries_, classes_;
    // cup_[p][q][i * dim(q) + j] = coordinates of basis(p,i) ∪ basis(q,j)
    std::vector<std::vector<std::vector<Vector>>> cup_;
};

CohomologyRing compute_cohomology(std::shared_ptr<const Dga> dga, CohomologyOptions options = {});
CohClass class_of(const CohomologyRing& r, const Cochain& z);
Cochain representative(const CohomologyRing& r, const CohClass& c);
CohClass cup(const CohomologyRing& r, const CohClass& x, const CohClass& y);

/// Largest r with reduced H^i = 0 for 1 <= i <= r; 0 unless the algebra is
/// flagged simply connected.
int connectivity(const CohomologyRing& r);
/// Longest nonzero product of positive-degree classes.
int cup_length(const CohomologyRing& r);

using ClassProduct = std::function<CohClass(const CohClass&, const CohClass&)>;

/// Powers I^(1) = I, I^(k) = span{x y : x in I^(k-1), y in I} of a graded
/// ideal given per degree. Returns the nonzero powers, each per degree.
std::vector<std::vector<Subspace>> ideal_powers(const std::vector<Subspace>& ideal, const ClassProduct& product);

/// H(A) ⊗ H(B) with its algebraic product
/// (a ⊗ b)(c ⊗ d) = (-1)^{|b||c|} ac ⊗ bd, and the comparison map
/// K([x] ⊗ [y]) = [x ⊗ y] into H(A ⊗ B).
///
/// Pair basis of degree n: (p, i, q, j) with p + q = n, ordered by p, then i,
/// then j.
class KunnethProduct {
public:
    struct Pair {
        int p;
        std::size_t i;
        int q;
        std::size_t j;
    };

    KunnethProduct(std::shared_ptr<const CohomologyRing> left, std::shared_ptr<const CohomologyRing> right);

    const CohomologyRing& left() const { return *left_; }
    const CohomologyRing& right() const { return *right_; }
    const std::shared_ptr<const CohomologyRing>& left_ptr() const { return left_; }
    const CohomologyRing& product_ring() const { return *product_; }
    const std::shared_ptr<const CohomologyRing>& product_ring_ptr() const { return product_; }
    int truncation() const { return truncation_; }
    int top_degree() const;

    const std::vector<Pair>& pairs(int n) const;
    std::size_t dim(int n) const { return pairs(n).size(); }
    std::size_t index(int p, std::size_t i, int q, std::size_t j) const;

    CohClass zero(int n) const;
    CohClass cross(const CohClass& x, const CohClass& y) const;
    CohClass multiply(const CohClass& x, const CohClass& y) const;
    void check(const CohClass& c) const;

    CohClass to_product(const CohClass& x) const;
    CohClass from_product(const CohClass& c) const;
    Cochain cochain(const CohClass& x) const;

    bool dimensions_agree() const { return dims_ok_; }
    bool multiplicative() const { return mult_ok_; }
    bool ok() const { return dims_ok_ && mult_ok_; }

    std::string render(const CohClass& c) const;

private:
    std::shared_ptr<const CohomologyRing> left_, right_, product_;
    int truncation_;
    std::vector<std::vector<Pair>> pairs_;
    std::vector<SparseMatrix> comparison_;  // K in each degree
    bool dims_ok_ = false;
    bool mult_ok_ = false;
};

/// Dimensions and ring structure of H(A ⊗ B) agree with H(A) ⊗ H(B).
bool kunneth_check(std::shared_ptr<const Dga> a, std::shared_ptr<const Dga> b);

}  // namespace sectcat
