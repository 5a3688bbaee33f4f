#include "support.hpp"

#include <gtest/gtest.h>

using namespace sectcat;
using support::term;

namespace {

Presentation circle()
{
    Presentation p;
    p.name = "circle";
    p.generators = {{"x", 1}};
    p.truncation = 1;
    return p;
}

Presentation point()
{
    Presentation p;
    p.name = "point";
    p.truncation = 1;
    return p;
}

CohClass named(const FreeModel& fm, const CohomologyRing& r, const std::string& alias)
{
    for (const auto& [n, poly] : fm.presentation().aliases)
        if (n == alias) return r.class_of(fm.evaluate(poly));
    return r.class_of(fm.generator(alias));
}

}  // namespace

TEST(Cohomology, Circle)
{
    auto fm = compile_free_cdga(circle());
    CohomologyRing r(fm.dga_ptr());
    EXPECT_EQ(r.dims(), (std::vector<std::size_t>{1, 1}));
}

TEST(Cohomology, M1Dimensions)
{
    auto fm = support::compiled("M1");
    CohomologyRing r(fm.dga_ptr());
    EXPECT_EQ(r.dims(), (std::vector<std::size_t>{1, 0, 0, 2, 0, 0, 0, 0, 2}));
    auto fa = support::free_algebra_of(fm.presentation());
    for (int k = 0; k <= 8; ++k) EXPECT_EQ(r.dim(k), support::oracle_betti(fa, k));
}

TEST(Cohomology, M3eDimensions)
{
    auto fm = support::compiled("M3e");
    CohomologyRing r(fm.dga_ptr());
    EXPECT_EQ(r.dims(), (std::vector<std::size_t>{1, 0, 2, 0, 0, 2, 0, 1}));
    auto fa = support::free_algebra_of(fm.presentation());
    for (int k = 0; k <= 7; ++k) EXPECT_EQ(r.dim(k), support::oracle_betti(fa, k));
}

TEST(Cohomology, ClassOf)
{
    auto m1 = support::compiled("M1");
    CohomologyRing r1(m1.dga_ptr());
    EXPECT_TRUE(r1.class_of(m1.evaluate({term(1, {"a", "b"})})).is_zero());
    EXPECT_THROW(r1.class_of(m1.generator("z")), NotACocycle);

    auto m3 = support::compiled("M3e");
    CohomologyRing r3(m3.dga_ptr());
    CohClass u = r3.class_of(m3.evaluate({term(1, {"a", "z"}), term(-1, {"x", "b"})}));
    EXPECT_EQ(u, named(m3, r3, "u"));
    EXPECT_FALSE(u.is_zero());
}

TEST(Cohomology, Representatives)
{
    auto fm = support::compiled("M1");
    CohomologyRing r(fm.dga_ptr());
    EXPECT_TRUE(r.representative(r.zero(8)).is_zero());
    CohClass az = r.class_of(fm.evaluate({term(1, {"a", "z"})}));
    EXPECT_EQ(r.representative(az), fm.evaluate({term(1, {"a", "z"})}));
    for (int k = 0; k <= r.truncation(); ++k)
        for (std::size_t i = 0; i < r.dim(k); ++i) EXPECT_EQ(r.class_of(r.representative(r.basis_class(k, i))), r.basis_class(k, i));
}

TEST(Cohomology, NamedRepresentativesOfM3e)
{
    auto fm = support::compiled("M3e");
    CohomologyRing r(fm.dga_ptr());
    EXPECT_EQ(r.label(5, 0), "[a*y - b*z]");
    EXPECT_EQ(r.label(5, 1), "[a*z - b*x]");
    EXPECT_EQ(r.class_name(7, 0), "H^7_0");
}

TEST(Cohomology, CupProducts)
{
    auto m1 = support::compiled("M1");
    CohomologyRing r1(m1.dga_ptr());
    CohClass a = r1.class_of(m1.generator("a")), b = r1.class_of(m1.generator("b"));
    EXPECT_TRUE(r1.cup(a, b).is_zero());
    EXPECT_FALSE(r1.cup(a, b).truncated);
    EXPECT_EQ(r1.cup(r1.unit(), a), a);
    CohClass az = r1.basis_class(8, 0);
    EXPECT_TRUE(r1.cup(a, az).truncated);

    auto m3 = support::compiled("M3e");
    CohomologyRing r3(m3.dga_ptr());
    CohClass alpha = named(m3, r3, "alpha"), beta = named(m3, r3, "beta");
    CohClass u = named(m3, r3, "u"), v = named(m3, r3, "v"), mu = named(m3, r3, "mu");
    EXPECT_FALSE(mu.is_zero());
    EXPECT_EQ(r3.cup(alpha, v), mu);
    EXPECT_EQ(r3.cup(u, beta), mu);
}

TEST(Cohomology, M3eRingTableHasOnlyTheNamedProducts)
{
    auto fm = support::compiled("M3e");
    CohomologyRing r(fm.dga_ptr());
    CohClass alpha = named(fm, r, "alpha"), beta = named(fm, r, "beta");
    CohClass u = named(fm, r, "u"), v = named(fm, r, "v"), mu = named(fm, r, "mu");
    // named classes form a basis of positive-degree cohomology
    EXPECT_EQ(Subspace::span(2, std::vector<Vector>{alpha.coords, beta.coords}), Subspace::full(2));
    EXPECT_EQ(Subspace::span(2, std::vector<Vector>{u.coords, v.coords}), Subspace::full(2));
    std::vector<std::pair<std::string, CohClass>> cls{{"alpha", alpha}, {"beta", beta}, {"u", u}, {"v", v}, {"mu", mu}};
    for (const auto& [nx, x] : cls)
        for (const auto& [ny, y] : cls) {
            CohClass p = r.cup(x, y);
            bool expected = (nx == "alpha" && ny == "v") || (nx == "v" && ny == "alpha") ||
                            (nx == "u" && ny == "beta") || (nx == "beta" && ny == "u");
            EXPECT_EQ(!p.is_zero(), expected) << nx << "*" << ny;
            if (expected) { EXPECT_EQ(p, mu) << nx << "*" << ny; }
        }
}

TEST(Cohomology, Connectivity)
{
    EXPECT_EQ(connectivity(CohomologyRing(support::compiled("M1").dga_ptr())), 2);
    EXPECT_EQ(connectivity(CohomologyRing(support::compiled("M3e").dga_ptr())), 1);
    EXPECT_EQ(connectivity(CohomologyRing(support::compiled("M2").dga_ptr())), 0);
}

TEST(Cohomology, CupLength)
{
    EXPECT_EQ(cup_length(CohomologyRing(compile_free_cdga(point()).dga_ptr())), 0);
    EXPECT_EQ(cup_length(CohomologyRing(support::compiled("M1").dga_ptr())), 1);
    EXPECT_EQ(cup_length(CohomologyRing(support::compiled("M3e").dga_ptr())), 2);
}

TEST(Cohomology, SimplyConnectedFlagContradictedByH1)
{
    Presentation p = circle();
    p.simply_connected = true;
    auto fm = compile_free_cdga(p);
    EXPECT_THROW(CohomologyRing r(fm.dga_ptr()), CohomologyError);
}

TEST(Cohomology, M2FirstCohomologyAndTrivialProducts)
{
    auto fm = support::compiled("M2");
    CohomologyRing r(fm.dga_ptr());
    EXPECT_EQ(r.dim(1), 3u);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) EXPECT_TRUE(r.cup(r.basis_class(1, i), r.basis_class(1, j)).is_zero());
}

TEST(Kunneth, PointAndGoldenSquares)
{
    auto pt = compile_free_cdga(point());
    auto m1 = support::compiled("M1");
    EXPECT_TRUE(kunneth_check(pt.dga_ptr(), m1.dga_ptr()));
    for (const char* name : {"M1", "M2", "M3e", "M3o"}) {
        auto fm = support::compiled(name);
        EXPECT_TRUE(kunneth_check(fm.dga_ptr(), fm.dga_ptr())) << name;
    }
}

TEST(Kunneth, DimensionsAgainstConvolution)
{
    for (const char* name : {"M1", "M2", "M3e", "M3o"}) {
        auto r = support::ring_of(support::compiled(name));
        KunnethProduct sq(r, r);
        for (int n = 0; n <= sq.truncation(); ++n) {
            std::size_t expected = 0;
            for (int p = 0; p <= n; ++p)
                if (p <= r->truncation() && n - p <= r->truncation()) expected += r->dim(p) * r->dim(n - p);
            EXPECT_EQ(sq.dim(n), expected);
            EXPECT_EQ(sq.product_ring().dim(n), expected) << name << " " << n;
        }
    }
}

TEST(Kunneth, CrossProductsCommuteWithMultiplication)
{
    std::mt19937 rng(41);
    for (const char* name : {"M1", "M2", "M3e", "M3o"}) {
        auto r = support::ring_of(support::compiled(name));
        KunnethProduct sq(r, r);
        auto basis = r->positive_basis();
        basis.push_back(r->unit());
        for (int t = 0; t < 30; ++t) {
            const auto& x1 = basis[rng() % basis.size()];
            const auto& y1 = basis[rng() % basis.size()];
            const auto& x2 = basis[rng() % basis.size()];
            const auto& y2 = basis[rng() % basis.size()];
            CohClass lhs = sq.multiply(sq.cross(x1, y1), sq.cross(x2, y2));
            int sign = (y1.degree * x2.degree) % 2 ? -1 : 1;
            CohClass rhs = Rational(sign) * sq.cross(r->cup(x1, x2), r->cup(y1, y2));
            EXPECT_EQ(lhs, rhs) << name;
            EXPECT_EQ(sq.from_product(sq.to_product(lhs)), lhs);
        }
    }
}

TEST(CohomologyProperties, RandomModels)
{
    std::mt19937 rng(42);
    for (int t = 0; t < 120; ++t) {
        auto fm = compile_free_cdga(support::random_presentation(rng, t));
        CohomologyRing r(fm.dga_ptr());
        const Dga& a = fm.dga();
        for (int k = 0; k <= r.truncation(); ++k) {
            EXPECT_EQ(r.dim(k), r.rank_nullity_dim(k));
            std::size_t zk = a.dim(k) - support::dense_rank(support::dense_rows(a.diff_matrix(k)));
            std::size_t bk = k == 0 ? 0 : support::dense_rank(support::dense_rows(a.diff_matrix(k - 1)));
            EXPECT_EQ(r.dim(k), zk - bk);
        }
        auto basis = r.positive_basis();
        for (const auto& x : basis)
            for (const auto& y : basis) {
                CohClass xy = r.cup(x, y), yx = r.cup(y, x);
                EXPECT_EQ(xy, Rational((x.degree * y.degree) % 2 ? -1 : 1) * yx);
                // perturbing representatives by coboundaries leaves the product alone
                if (x.degree > 0 && y.degree + x.degree <= r.truncation()) {
                    Cochain zx = r.representative(x), zy = r.representative(y);
                    if (a.dim(x.degree - 1) > 0) {
                        Cochain w = a.zero(x.degree - 1);
                        for (auto& e : w.coords) e = static_cast<int>(rng() % 5) - 2;
                        zx = zx + a.diff(w);
                    }
                    EXPECT_EQ(r.class_of(a.mul(zx, zy)), xy);
                }
                for (const auto& z : basis) EXPECT_EQ(r.cup(r.cup(x, y), z), r.cup(x, r.cup(y, z)));
            }
    }
}
