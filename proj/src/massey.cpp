#include "sectcat/massey.hpp"

#include <array>

namespace sectcat {

namespace {

int parity_sign(long e) { return (e % 2 == 0) ? 1 : -1; }

bool vanishes(const CohClass& c) { return c.truncated || c.is_zero(); }

/// Canonical primitive of an exact cochain x (free variables set to zero).
Cochain primitive(const Dga& a, const Cochain& x)
{
    Cochain out = a.zero(x.degree - 1);
    if (x.is_zero()) return out;
    auto sol = solve(a.diff_matrix(x.degree - 1), x.coords);
    if (!sol) throw ContractViolation("cochain " + a.render(x) + " is not a coboundary");
    out.coords = *sol;
    return out;
}

std::string describe(const CohomologyRing& ring, const ClassTriple& t)
{
    return "<" + ring.render(t.alpha) + ", " + ring.render(t.beta) + ", " + ring.render(t.gamma) + ">";
}

MasseyCoset massey_of(const CohomologyRing& ring, const std::array<CohClass, 3>& t)
{
    return massey_triple(ring, t[0], t[1], t[2]);
}

/// s with x = s*y for s in {1, -1}; 0 when both vanish; nullopt otherwise.
std::optional<int> resolve_sign(const Vector& x, const Vector& y)
{
    if (is_zero(x) && is_zero(y)) return 0;
    if (x == y) return 1;
    if (x == scaled(-1, y)) return -1;
    return std::nullopt;
}

CohClass triple_cup(const CohomologyRing& ring, const CohClass& x, const CohClass& y, const CohClass& z)
{
    CohClass xy = ring.cup(x, y);
    if (xy.truncated) return xy;
    CohClass xyz = ring.cup(xy, z);
    return xyz;
}

}  // namespace

MasseyCoset massey_triple(const CohomologyRing& ring, const CohClass& alpha, const CohClass& beta,
                          const CohClass& gamma)
{
    return massey_triple(ring, ring.representative(alpha), ring.representative(beta), ring.representative(gamma));
}

MasseyCoset massey_triple(const CohomologyRing& ring, const Cochain& a, const Cochain& b, const Cochain& c,
                          const MasseyWitness& witness)
{
    const Dga& dga = ring.dga();
    MasseyCoset m;
    m.p = a.degree;
    m.q = b.degree;
    m.r = c.degree;
    const int target = m.target_degree();
    if (target > ring.truncation())
        throw ContractViolation("Massey product target degree " + std::to_string(target) + " exceeds truncation " +
                                std::to_string(ring.truncation()));
    m.alpha = ring.class_of(a);
    m.beta = ring.class_of(b);
    m.gamma = ring.class_of(c);
    m.a = a;
    m.b = b;
    m.c = c;

    CohClass ab = ring.cup(m.alpha, m.beta);
    CohClass bc = ring.cup(m.beta, m.gamma);
    if (!vanishes(ab)) m.left_product = ab;
    if (!vanishes(bc)) m.right_product = bc;
    if (m.left_product || m.right_product) return m;
    m.defined = true;

    Cochain ab_c = dga.mul(a, b);
    Cochain bc_c = dga.mul(b, c);
    m.mu = witness.mu ? *witness.mu : primitive(dga, ab_c);
    m.lambda = witness.lambda ? *witness.lambda : primitive(dga, bc_c);
    if (dga.diff(m.mu) != ab_c) throw ContractViolation("supplied mu does not bound ab");
    if (dga.diff(m.lambda) != bc_c) throw ContractViolation("supplied lambda does not bound bc");

    Cochain w = dga.mul(a, m.lambda) + Rational(parity_sign(m.p + 1)) * dga.mul(m.mu, c);
    m.raw = ring.class_of(w);
    m.indeterminacy = indeterminacy(ring, m.alpha, m.gamma, target);
    m.value = {target, reduce_mod(m.indeterminacy, m.raw.coords), false};
    return m;
}

Subspace indeterminacy(const CohomologyRing& ring, const CohClass& alpha, const CohClass& gamma, int target_degree)
{
    ring.check(alpha);
    ring.check(gamma);
    if (target_degree > ring.truncation())
        throw ContractViolation("indeterminacy requested beyond truncation");
    std::vector<Vector> gens;
    const int left = target_degree - alpha.degree;
    for (std::size_t i = 0; i < ring.dim(left); ++i)
        gens.push_back(ring.cup(alpha, ring.basis_class(left, i)).coords);
    const int right = target_degree - gamma.degree;
    for (std::size_t i = 0; i < ring.dim(right); ++i)
        gens.push_back(ring.cup(ring.basis_class(right, i), gamma).coords);
    return Subspace::span(ring.dim(target_degree), gens);
}

bool contains_zero(const MasseyCoset& m)
{
    if (!m.defined) throw ContractViolation("contains_zero on an undefined Massey product");
    return m.value.is_zero();
}

bool same_coset(const MasseyCoset& x, const MasseyCoset& y)
{
    return x.defined && y.defined && x.target_degree() == y.target_degree() && x.indeterminacy == y.indeterminacy &&
           x.value == y.value;
}

namespace {

void check_linearity(const CohomologyRing& ring, const ClassTriple& t, const MasseyCoset& base,
                     std::vector<IdentityCheck>& out)
{
    const std::array<CohClass, 3> classes{t.alpha, t.beta, t.gamma};
    static const char* slot_names[] = {"first", "second", "third"};
    for (std::size_t slot = 0; slot < 3; ++slot) {
        const int deg = classes[slot].degree;
        for (std::size_t e = 0; e < ring.dim(deg); ++e) {
            CohClass other = ring.basis_class(deg, e);
            if (other == classes[slot]) continue;
            auto alt = classes;
            alt[slot] = other;
            MasseyCoset m2 = massey_of(ring, alt);
            if (!m2.defined) continue;
            auto summed = classes;
            summed[slot] = classes[slot] + other;
            MasseyCoset ms = massey_of(ring, summed);

            IdentityCheck chk;
            chk.property = "linearity";
            chk.instance = describe(ring, t) + " + " + ring.render(other) + " in the " + slot_names[slot] + " slot";
            if (!ms.defined) {
                chk.detail = "sum triple undefined";
            } else {
                Subspace both = sum(base.indeterminacy, m2.indeterminacy);
                Vector diff = sub(sub(ms.raw.coords, base.raw.coords), m2.raw.coords);
                bool value_ok = member(both, diff);
                bool indet_ok = contains(both, ms.indeterminacy);
                chk.passed = value_ok && indet_ok;
                if (!value_ok) chk.detail = "value outside the sum of cosets";
                else if (!indet_ok) chk.detail = "indeterminacy not contained";
            }
            out.push_back(std::move(chk));
        }
    }
}

void check_scalars(const CohomologyRing& ring, const ClassTriple& t, const MasseyCoset& base,
                   std::vector<IdentityCheck>& out)
{
    const std::array<Rational, 3> units{Rational(2), Rational(-1), Rational(1, 3)};
    const std::array<CohClass, 3> classes{t.alpha, t.beta, t.gamma};
    for (const Rational& u : units) {
        for (std::size_t slot = 0; slot < 3; ++slot) {
            auto scaled_triple = classes;
            scaled_triple[slot] = u * classes[slot];
            MasseyCoset mu = massey_of(ring, scaled_triple);
            IdentityCheck chk;
            chk.property = "scalar";
            chk.instance = describe(ring, t) + " scaled by " + to_string(u) + " in slot " + std::to_string(slot + 1);
            MasseyCoset expect = base;
            expect.value.coords = reduce_mod(base.indeterminacy, scaled(u, base.value.coords));
            chk.passed = same_coset(expect, mu);
            if (!chk.passed) chk.detail = "cosets differ";
            out.push_back(std::move(chk));
        }
    }
}

void check_internal(const CohomologyRing& ring, const ClassTriple& t, const MasseyCoset& base, const ClassTriple& other,
                    bool base_left, std::vector<IdentityCheck>& out)
{
    // base_left: <t> * (other product); otherwise (other product) * <t>
    const ClassTriple& l = base_left ? t : other;
    const ClassTriple& r = base_left ? other : t;
    CohClass a = ring.cup(l.alpha, r.alpha);
    CohClass b = ring.cup(l.beta, r.beta);
    CohClass c = ring.cup(l.gamma, r.gamma);
    if (a.truncated || b.truncated || c.truncated) return;
    if (a.degree + b.degree + c.degree - 1 > ring.truncation()) return;
    MasseyCoset big = massey_triple(ring, a, b, c);

    IdentityCheck chk;
    chk.property = "internal";
    chk.instance = base_left ? describe(ring, t) + " * " + describe(ring, other) + " factors"
                             : describe(ring, other) + " factors * " + describe(ring, t);
    if (!big.defined) {
        chk.detail = "product triple undefined";
        out.push_back(std::move(chk));
        return;
    }
    if (big.indeterminacy.dim() != 0) return;

    CohClass factor = triple_cup(ring, other.alpha, other.beta, other.gamma);
    auto times = [&](const CohClass& x) { return base_left ? ring.cup(x, factor) : ring.cup(factor, x); };
    CohClass lhs = times(base.value);
    bool single = true;
    for (const auto& v : base.indeterminacy.basis())
        if (!vanishes(times({base.value.degree, v.to_dense(base.indeterminacy.ambient()), false}))) single = false;
    Vector lhs_coords = lhs.truncated ? zero_vector(ring.dim(big.target_degree())) : lhs.coords;
    auto sign = resolve_sign(lhs_coords, big.value.coords);
    chk.passed = single && sign.has_value();
    chk.sign = sign.value_or(0);
    if (!single) chk.detail = "indeterminacy survives multiplication";
    else if (!sign) chk.detail = "values differ beyond sign";
    out.push_back(std::move(chk));
}

void check_external(const KunnethProduct& sq, const ClassTriple& t, const MasseyCoset& base, const ClassTriple& other,
                    bool base_left, std::vector<IdentityCheck>& out)
{
    const CohomologyRing& ring = sq.left();
    const CohomologyRing& prod = sq.product_ring();
    auto cross = [&](const CohClass& x, const CohClass& y) {
        return base_left ? sq.to_product(sq.cross(x, y)) : sq.to_product(sq.cross(y, x));
    };
    CohClass a = cross(t.alpha, other.alpha);
    CohClass b = cross(t.beta, other.beta);
    CohClass c = cross(t.gamma, other.gamma);
    if (a.truncated || b.truncated || c.truncated) return;
    if (a.degree + b.degree + c.degree - 1 > prod.truncation()) return;
    MasseyCoset theta = massey_triple(prod, a, b, c);

    IdentityCheck chk;
    chk.property = "external";
    chk.instance = base_left ? describe(ring, t) + " x " + describe(ring, other) + " factors"
                             : describe(ring, other) + " factors x " + describe(ring, t);
    if (!theta.defined) {
        chk.detail = "cross triple undefined";
        out.push_back(std::move(chk));
        return;
    }
    if (theta.indeterminacy.dim() != 0) return;

    CohClass factor = triple_cup(ring, other.alpha, other.beta, other.gamma);
    Vector lhs = zero_vector(prod.dim(theta.target_degree()));
    bool single = true;
    if (!factor.truncated) {
        lhs = cross(base.value, factor).coords;
        for (const auto& v : base.indeterminacy.basis())
            if (!cross({base.value.degree, v.to_dense(base.indeterminacy.ambient()), false}, factor).is_zero())
                single = false;
    }
    auto sign = resolve_sign(lhs, theta.value.coords);
    chk.passed = single && sign.has_value();
    chk.sign = sign.value_or(0);
    if (!single) chk.detail = "indeterminacy survives the cross product";
    else if (!sign) chk.detail = "values differ beyond sign";
    out.push_back(std::move(chk));
}

std::vector<IdentityCheck> run_identities(const CohomologyRing& ring, const KunnethProduct* sq,
                                          const std::vector<ClassTriple>& sample)
{
    std::vector<IdentityCheck> out;
    for (const auto& t : sample) {
        if (t.alpha.degree + t.beta.degree + t.gamma.degree - 1 > ring.truncation()) continue;
        MasseyCoset base = massey_triple(ring, t.alpha, t.beta, t.gamma);
        if (!base.defined) continue;
        check_linearity(ring, t, base, out);
        check_scalars(ring, t, base, out);
        for (const auto& other : sample) {
            check_internal(ring, t, base, other, true, out);
            check_internal(ring, t, base, other, false, out);
            if (sq) {
                check_external(*sq, t, base, other, true, out);
                check_external(*sq, t, base, other, false, out);
            }
        }
    }
    return out;
}

}  // namespace

std::vector<IdentityCheck> verify_multi_identities(const CohomologyRing& ring, const std::vector<ClassTriple>& sample)
{
    return run_identities(ring, nullptr, sample);
}

std::vector<IdentityCheck> verify_multi_identities(const KunnethProduct& square, const std::vector<ClassTriple>& sample)
{
    if (square.left().dga_ptr() != square.right().dga_ptr())
        throw ContractViolation("external identities need a tensor square");
    return run_identities(square.left(), &square, sample);
}

ExternalVanishing verify_external_vanishing(const KunnethProduct& ab, const ClassTriple& first,
                                            const ClassTriple& second)
{
    const CohomologyRing& ra = ab.left();
    const CohomologyRing& rb = ab.right();
    const CohomologyRing& prod = ab.product_ring();
    const Dga& A = ra.dga();
    const Dga& B = rb.dga();
    const Dga& T = prod.dga();

    ExternalVanishing out;
    bool hyp1 = vanishes(ra.cup(first.alpha, first.beta)) && vanishes(rb.cup(second.beta, second.gamma));
    bool hyp2 = vanishes(rb.cup(second.alpha, second.beta)) && vanishes(ra.cup(first.beta, first.gamma));
    if (!hyp1 && !hyp2) {
        out.detail = "neither vanishing hypothesis holds";
        return out;
    }
    out.hypothesis = hyp1 ? 1 : 2;

    const Cochain a1 = ra.representative(first.alpha), b1 = ra.representative(first.beta),
                  c1 = ra.representative(first.gamma);
    const Cochain a2 = rb.representative(second.alpha), b2 = rb.representative(second.beta),
                  c2 = rb.representative(second.gamma);
    const int p1 = a1.degree, q1 = b1.degree, r1 = c1.degree;
    const int p2 = a2.degree, q2 = b2.degree, r2 = c2.degree;
    if (p1 + p2 + q1 + q2 + r1 + r2 - 1 > T.truncation()) {
        out.hypothesis = 0;
        out.detail = "target degree exceeds truncation";
        return out;
    }

    auto tc = [&](const Cochain& x, const Cochain& y) { return tensor_cochain(A, B, x, y); };
    const Cochain A12 = tc(a1, a2), B12 = tc(b1, b2), C12 = tc(c1, c2);

    MasseyCoset theta = massey_triple(prod, A12, B12, C12);
    if (!theta.defined) {
        out.status = VanishingStatus::Fails;
        out.detail = "theta undefined";
        out.theta = std::move(theta);
        return out;
    }
    out.contains_zero = contains_zero(theta);

    Cochain mu, lambda, prim;
    if (hyp1) {
        Cochain mu1 = primitive(A, Rational(parity_sign(static_cast<long>(q1) * p2)) * A.mul(a1, b1));
        long h = static_cast<long>(r1) * (q2 - 1) - q1;
        Cochain lam1 = primitive(B, Rational(parity_sign(h)) * B.mul(b2, c2));
        mu = tc(mu1, B.mul(a2, b2));
        lambda = tc(A.mul(b1, c1), lam1);
        prim = Rational(parity_sign(static_cast<long>(r1) * p2)) * tc(A.mul(mu1, c1), B.mul(a2, lam1));
    } else {
        Cochain mu2 = primitive(B, Rational(parity_sign(static_cast<long>(p2) * q1 + p1 + q1)) * B.mul(a2, b2));
        Cochain lam2 = primitive(A, Rational(parity_sign(static_cast<long>(q2) * r1)) * A.mul(b1, c1));
        mu = tc(A.mul(a1, b1), mu2);
        lambda = tc(lam2, B.mul(b2, c2));
        prim = Rational(parity_sign(static_cast<long>(p2) * r1 + p2 + r1 + 1)) * tc(A.mul(a1, lam2), B.mul(mu2, c2));
    }

    bool mu_ok = T.diff(mu) == T.mul(A12, B12);
    bool lambda_ok = T.diff(lambda) == T.mul(B12, C12);
    if (mu_ok && lambda_ok) {
        MasseyCoset explicit_coset = massey_triple(prod, A12, B12, C12, MasseyWitness{mu, lambda});
        Cochain w = T.mul(A12, lambda) + Rational(parity_sign(p1 + p2 + 1)) * T.mul(mu, C12);
        out.witness_ok = T.diff(prim) == w && explicit_coset.raw.is_zero() && same_coset(explicit_coset, theta);
        if (!out.witness_ok) out.detail = "explicit primitive does not bound the witness cocycle";
    } else {
        out.detail = "product witnesses fail to bound";
    }
    out.status = out.contains_zero && out.witness_ok ? VanishingStatus::Vanishes : VanishingStatus::Fails;
    if (!out.contains_zero) out.detail = "theta does not contain zero";
    out.theta = std::move(theta);
    return out;
}

}  // namespace sectcat
