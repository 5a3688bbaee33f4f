#pragma once

#include "sectcat/linalg.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace sectcat {

struct BasisElement {
    std::string name;
    int degree = 0;
};

struct DgaFlags {
    bool graded_commutative = true;
    bool unital = true;
    bool simply_connected = false;
    std::optional<int> space_dim;
};

/// Homogeneous element of a Dga: coordinates over the basis of one degree.
/// Degrees outside 0..N have an empty basis, so their only cochain is zero.
struct Cochain {
    int degree = 0;
    Vector coords;

    bool is_zero() const { return sectcat::is_zero(coords); }
    friend bool operator==(const Cochain&, const Cochain&) = default;
};

Cochain operator+(const Cochain& x, const Cochain& y);
Cochain operator-(const Cochain& x, const Cochain& y);
Cochain operator-(const Cochain& x);
Cochain operator*(const Rational& c, const Cochain& x);

/// Finite differential graded algebra given by structure constants on a
/// basis ordered by degree. Products and differentials are stored over
/// global basis indices, so a table may be ill-formed (entries in the wrong
/// degree); validate() reports such defects.
class Dga {
public:
    Dga() = default;
    /// `basis` must be sorted by degree with degrees in 0..truncation.
    /// `mult` is row-major over basis pairs (size n*n) or empty for all-zero;
    /// `diff` has one entry per basis element or is empty.
    Dga(int truncation, std::vector<BasisElement> basis, std::vector<SparseVec> mult, std::vector<SparseVec> diff,
        DgaFlags flags);

    int truncation() const { return truncation_; }
    const DgaFlags& flags() const { return flags_; }
    std::size_t size() const { return basis_.size(); }
    const std::vector<BasisElement>& basis() const { return basis_; }

    std::size_t dim(int degree) const;
    std::size_t offset(int degree) const;
    int degree_of(std::size_t global) const { return basis_.at(global).degree; }

    /// Product of two global basis elements, over global indices.
    const SparseVec& product(std::size_t i, std::size_t j) const;
    const SparseVec& differential(std::size_t i) const { return diff_.at(i); }

    /// Matrix of d restricted to degree k -> k+1 (entries landing elsewhere ignored).
    SparseMatrix diff_matrix(int degree) const;

    Cochain zero(int degree) const;
    Cochain basis_cochain(std::size_t global) const;
    Cochain unit() const;
    Cochain mul(const Cochain& x, const Cochain& y) const;
    Cochain diff(const Cochain& x) const;
    void check(const Cochain& x) const;

    std::string render(const Cochain& x) const;

private:
    int truncation_ = 0;
    std::vector<BasisElement> basis_;
    std::vector<std::size_t> offsets_;  // size truncation+2
    std::vector<SparseVec> mult_;
    std::vector<SparseVec> diff_;
    DgaFlags flags_;
    SparseVec empty_;
};

struct Violation {
    std::string axiom;
    std::vector<std::size_t> tuple;
    std::string detail;
};

/// Checks degree homogeneity, d∘d = 0, Leibniz, associativity, the unit law
/// and (when flagged) graded commutativity on every basis tuple within the
/// truncation. Returns an empty list iff all hold.
std::vector<Violation> validate(const Dga& a);

Cochain mul(const Dga& a, const Cochain& x, const Cochain& y);
Cochain diff(const Dga& a, const Cochain& x);

/// Tensor product with Koszul signs. Degree-n basis: pairs e_i ⊗ f_j with
/// |e_i| + |f_j| = n, ordered by |e_i| ascending, then i, then j.
Dga tensor(const Dga& a, const Dga& b);

/// The cochain x ⊗ y of tensor(a, b).
Cochain tensor_cochain(const Dga& a, const Dga& b, const Cochain& x, const Cochain& y);

/// Local index of e_i ⊗ f_j within its degree of tensor(a, b); i and j are
/// local indices inside degrees p and q.
std::size_t tensor_local_index(const Dga& a, const Dga& b, int p, std::size_t i, int q, std::size_t j);

}  // namespace sectcat
