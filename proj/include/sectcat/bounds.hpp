#pragma once

#include "sectcat/massey.hpp"

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace sectcat {

/// Which fibration a weight refers to: the based path fibration (cat) or the
/// free path fibration (TC).
enum class Kind { Cat, TC };

std::string to_string(Kind k);

/// wgt(cls) >= weight. Cat classes live in H(A); TC classes live in the pair
/// basis of H(A) ⊗ H(A), identified with H(A ⊗ A) through the verified
/// Künneth map.
struct WeightFact {
    Kind kind = Kind::Cat;
    CohClass cls;
    int weight = 0;
    std::string rule;  // positive-class, zero-divisor, massey, transfer, product
    std::vector<std::size_t> premises;  // indices of earlier facts
    std::optional<std::size_t> massey_record;
    std::string label;
};

/// One evaluated triple of the Massey scan (indices into positive_basis()).
struct MasseyRecord {
    std::array<std::size_t, 3> classes{};
    MasseyCoset coset;
};

struct BoundCertificate {
    Kind kind = Kind::Cat;
    bool lower = true;
    int value = 0;
    std::string rule;  // cup-length, zcl, weighted-product, massey, cat-below-tc, dimension, james, tc-doubling
    std::vector<std::size_t> facts;
    std::vector<std::size_t> bounds;
    std::optional<MasseyCoset> coset;
    std::string detail;
};

struct QuantityBounds {
    std::optional<int> lower, upper;
    std::optional<std::size_t> lower_certificate, upper_certificate;
};

struct BoundLedger {
    std::optional<int> space_dim;
    int connectivity = 0;
    bool simply_connected = false;
    int cup_length = 0;
    int zcl = 0;
    int massey_degree_cap = 0;
    std::vector<MasseyRecord> massey;
    std::vector<WeightFact> facts;
    std::vector<BoundCertificate> bounds;
    QuantityBounds cat, tc;

    const QuantityBounds& of(Kind k) const { return k == Kind::Cat ? cat : tc; }
};

/// Kernel of the multiplication map H ⊗ H -> H in each degree 0..2N, in the
/// pair basis. Refuses when the Künneth check failed.
std::vector<Subspace> zero_divisor_ideal(const KunnethProduct& square);

/// Z·(H ⊗ H) ⊆ Z on every basis pair.
bool is_ideal(const KunnethProduct& square, const std::vector<Subspace>& ideal);

/// Length of the longest nonzero product of zero-divisors.
int zcl(const KunnethProduct& square);

/// Image of a pair-basis class under multiplication H ⊗ H -> H.
CohClass multiplication_map(const KunnethProduct& square, const CohClass& x);

/// 1 × u - u × 1.
CohClass bar(const KunnethProduct& square, const CohClass& u);

struct TransferOutcome {
    std::optional<WeightFact> fact;
    std::string reason;  // failed hypothesis when fact is empty
};

/// Transfers wgt(u) >= k on the based path fibration to wgt(bar u) >= k on
/// the free path fibration for r-connected spaces with |u| in the window
/// k(r+1) <= |u| < (k+1)(r+1) and vanishing cross products into degree |u|.
TransferOutcome transfer_weight(const KunnethProduct& square, const WeightFact& cat_fact, int k);

struct WeightSearch {
    int bound = 0;  // genus >= bound
    int weight = 0;
    std::vector<std::size_t> facts;
    CohClass product;
};

/// Rule closure: positive classes and bars get weight 1, canonical values of
/// nonzero Massey cosets get cat-weight 2, transfers, then pairwise products.
std::vector<WeightFact> weight_closure(const KunnethProduct& square, const std::vector<MasseyRecord>& massey);

/// Depth-first search over products of non-product facts of one kind for a
/// nonzero product of maximal total weight.
WeightSearch weighted_lower_bound(const KunnethProduct& square, const std::vector<WeightFact>& facts, Kind kind);

/// genus >= wgt(β) + min(wgt(α), wgt(γ)) + 1 when ⟨α, β, γ⟩ is defined and
/// does not contain zero. TC triples are evaluated in H(A ⊗ A).
std::optional<BoundCertificate> massey_lower_bound(const KunnethProduct& square, const std::vector<WeightFact>& facts,
                                                   std::size_t alpha, std::size_t beta, std::size_t gamma);

/// Upper bounds: cat <= dim + 1, the James bound when r >= 1, and
/// TC <= 2 cat - 1 from the best cat upper bound.
std::vector<BoundCertificate> dimension_upper_bounds(std::optional<int> space_dim, int connectivity);

/// Largest integer strictly below (dim + 1)/(r + 1) + 1.
int james_bound(int space_dim, int connectivity);

struct LedgerOptions {
    std::optional<int> max_massey_degree;  // default: truncation / 2
    unsigned threads = 1;
};

struct Analysis {
    std::shared_ptr<const CohomologyRing> ring;
    std::shared_ptr<const KunnethProduct> square;
    BoundLedger ledger;
};

/// Massey scan over basis triples of positive degree <= cap, skipping
/// triples whose first index exceeds the third.
std::vector<MasseyRecord> massey_scan(const CohomologyRing& ring, int degree_cap, unsigned threads = 1);

Analysis analyze(std::shared_ptr<const Dga> dga, const LedgerOptions& options = {});
BoundLedger build_ledger(std::shared_ptr<const Dga> dga, const LedgerOptions& options = {});

struct ReplayReport {
    std::size_t checked = 0;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

/// Re-derives every fact and bound of the ledger from its premises.
ReplayReport replay(const Analysis& analysis);

}  // namespace sectcat
