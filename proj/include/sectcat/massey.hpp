#pragma once

#include "sectcat/cohomology.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sectcat {

/// Triple Massey product as a coset: canonical value plus indeterminacy
/// subspace in the class coordinates of the target degree.
struct MasseyCoset {
    int arity = 3;
    bool defined = false;
    int p = 0, q = 0, r = 0;
    CohClass alpha, beta, gamma;

    // Set when undefined: whichever of αβ, βγ is nonzero.
    std::optional<CohClass> left_product, right_product;

    CohClass raw;    // class of the witness cocycle before reduction
    CohClass value;  // raw reduced modulo the indeterminacy
    Subspace indeterminacy;
    Cochain a, b, c, mu, lambda;

    int target_degree() const { return p + q + r - 1; }
};

/// Explicit defining cochains; unset entries are solved canonically.
struct MasseyWitness {
    std::optional<Cochain> mu;
    std::optional<Cochain> lambda;
};

/// ⟨α, β, γ⟩ from the canonical representatives and canonical solutions of
/// dμ = ab, dλ = bc. The witness cocycle is aλ + (-1)^{p+1} μc.
MasseyCoset massey_triple(const CohomologyRing& ring, const CohClass& alpha, const CohClass& beta,
                          const CohClass& gamma);

/// Same product computed from arbitrary cocycles a, b, c and optional μ, λ.
MasseyCoset massey_triple(const CohomologyRing& ring, const Cochain& a, const Cochain& b, const Cochain& c,
                          const MasseyWitness& witness = {});

/// α H^{target-p} + H^{target-r} γ.
Subspace indeterminacy(const CohomologyRing& ring, const CohClass& alpha, const CohClass& gamma, int target_degree);

bool contains_zero(const MasseyCoset& m);

/// Two cosets in the same degree are equal as sets.
bool same_coset(const MasseyCoset& x, const MasseyCoset& y);

struct ClassTriple {
    CohClass alpha, beta, gamma;
};

struct IdentityCheck {
    std::string property;  // linearity, scalar, internal, external
    std::string instance;
    bool passed = false;
    int sign = 0;  // resolved sign for internal/external, 0 when both sides vanish
    std::string detail;
};

/// Linearity, scalar multiplication and internal-product identities on the
/// sampled triples (each sampled triple also serves as the partner triple
/// for the internal-product check of every other one).
std::vector<IdentityCheck> verify_multi_identities(const CohomologyRing& ring, const std::vector<ClassTriple>& sample);

/// As above, plus the external-product identity in both orientations inside
/// `square`, whose factors must both be `square.left()`.
std::vector<IdentityCheck> verify_multi_identities(const KunnethProduct& square, const std::vector<ClassTriple>& sample);

enum class VanishingStatus { Vanishes, Fails, Inconclusive };

struct ExternalVanishing {
    VanishingStatus status = VanishingStatus::Inconclusive;
    int hypothesis = 0;  // 1: α1β1 = 0 = β2γ2, 2: α2β2 = 0 = β1γ1
    bool contains_zero = false;
    bool witness_ok = false;  // the explicit primitive reproduces the witness cocycle
    std::string detail;
    std::optional<MasseyCoset> theta;
};

/// ⟨α1×α2, β1×β2, γ1×γ2⟩ in H(A⊗B) contains zero when α1β1 = 0 = β2γ2 or
/// α2β2 = 0 = β1γ1. Checks the coset and, independently, that the witness
/// cocycle built from primitives in each factor is an explicit coboundary.
ExternalVanishing verify_external_vanishing(const KunnethProduct& ab, const ClassTriple& first,
                                            const ClassTriple& second);

}  // namespace sectcat
