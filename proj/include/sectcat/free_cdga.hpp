#pragma once

#include "sectcat/dga.hpp"

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sectcat {

struct Generator {
    std::string name;
    int degree = 1;
    friend bool operator==(const Generator&, const Generator&) = default;
};

/// coeff * f1 * f2 * ... ; an empty factor list is the constant coeff.
struct Term {
    Rational coeff = 1;
    std::vector<std::string> factors;
    friend bool operator==(const Term&, const Term&) = default;
};

using Polynomial = std::vector<Term>;

/// Free graded-commutative algebra on `generators` with d given on
/// generators (missing entries mean d = 0), truncated above `truncation`.
struct Presentation {
    std::string name;
    std::vector<Generator> generators;
    std::vector<std::pair<std::string, Polynomial>> differentials;
    std::vector<std::pair<std::string, Polynomial>> aliases;
    int truncation = 0;
    std::optional<int> space_dim;
    bool simply_connected = false;

    friend bool operator==(const Presentation&, const Presentation&) = default;
};

/// Raised for ill-formed presentations and for DGAs failing their axioms.
class ValidationError : public std::runtime_error {
public:
    ValidationError(const std::string& what, std::vector<Violation> violations = {})
        : std::runtime_error(what), violations_(std::move(violations))
    {
    }
    const std::vector<Violation>& violations() const { return violations_; }

private:
    std::vector<Violation> violations_;
};

/// Checks names, degrees and homogeneity of a presentation; throws ValidationError.
void check_presentation(const Presentation& p);

/// Degree of a polynomial's terms; throws if inhomogeneous or unknown names appear.
int polynomial_degree(const Presentation& p, const Polynomial& poly);

/// Compiled free CDGA: the finite Dga plus the monomial chart needed to map
/// formal polynomials to cochains.
///
/// The basis in degree < N is the monomials (generators ordered by
/// (degree, name), odd generators at most once). Degree N is the quotient of
/// the degree-N monomials by a complement of the cocycles of the untruncated
/// differential; when every top monomial is already a cocycle this is the
/// plain monomial basis. With that choice H^k of the compiled algebra agrees
/// with the untruncated algebra for every k <= N.
class FreeModel {
public:
    const Presentation& presentation() const { return presentation_; }
    const std::shared_ptr<const Dga>& dga_ptr() const { return dga_; }
    const Dga& dga() const { return *dga_; }

    /// True when degree N had to be cut down to cocycles.
    bool top_reduced() const { return top_reduced_; }

    /// Image of a polynomial in the compiled algebra.
    Cochain evaluate(const Polynomial& poly) const;
    Cochain generator(const std::string& name) const;
    int generator_degree(const std::string& name) const;
    bool has_generator(const std::string& name) const;

    /// Ordered generators (by degree, then name).
    const std::vector<Generator>& ordered_generators() const { return gens_; }

private:
    friend FreeModel compile_free_cdga(const Presentation& p);

    using Exponents = std::vector<int>;
    Presentation presentation_;
    std::vector<Generator> gens_;
    std::map<std::string, std::size_t> gen_index_;
    std::vector<std::vector<Exponents>> monomials_;  // degrees 0..N+1
    std::map<Exponents, std::size_t> monomial_index_;
    std::vector<std::size_t> top_pivots_;  // pivot monomials of the degree-N cocycle basis
    bool top_reduced_ = false;
    std::shared_ptr<const Dga> dga_;

    Cochain from_free(int degree, const std::map<Exponents, Rational>& poly) const;
};

FreeModel compile_free_cdga(const Presentation& p);

}  // namespace sectcat
