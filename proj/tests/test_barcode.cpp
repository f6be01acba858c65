#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "novistoke/barcode.hpp"

#include <cstdint>
#include <vector>

using namespace novistoke;

namespace {

Barcode one_free(int birth_num, int birth_den = 1)
{
    return Barcode({Interval::free(Rational(birth_num, birth_den))});
}

Barcode one_torsion(Rational birth, Rational length)
{
    return Barcode({Interval::torsion(std::move(birth), std::move(length))});
}

struct Rng {
    std::uint64_t state;
    std::uint64_t next()
    {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    }
    int range(int lo, int hi) { return lo + int(next() % std::uint64_t(hi - lo + 1)); }
};

Barcode random_barcode(Rng& rng)
{
    std::vector<Interval> intervals;
    int n = rng.range(0, 3);
    for (int k = 0; k < n; ++k) {
        Rational birth(rng.range(-4, 4), rng.range(1, 3));
        if (rng.range(0, 1))
            intervals.push_back(Interval::free(birth));
        else
            intervals.push_back(Interval::torsion(birth, Rational(rng.range(1, 6), 2)));
    }
    return Barcode(std::move(intervals));
}

GradedMorphism random_morphism(Rng& rng)
{
    Barcode src = random_barcode(rng);
    Barcode tgt = random_barcode(rng);
    Rational degree(rng.range(0, 4), 2);
    Matrix m(tgt.size(), src.size());
    for (std::size_t j = 0; j < tgt.size(); ++j)
        for (std::size_t i = 0; i < src.size(); ++i)
            if (interval_hom_dim(src.intervals()[i], tgt.intervals()[j], degree) && rng.range(0, 1))
                m.at(j, i) = FieldScalar(rng.range(-2, 2));
    return GradedMorphism(std::move(src), std::move(tgt), std::move(degree), std::move(m));
}

// Same reduced class: equal free multiplicity (all free modules are
// isomorphic after reduction), with the birth drift bounded by the shift that
// relates the two lifts. Torsion is invisible after reduction.
bool reduced_equal(const Barcode& a, const Barcode& b, const Rational& slack)
{
    std::vector<Rational> fa, fb;
    for (const auto& iv : a.intervals())
        if (iv.is_free()) fa.push_back(iv.birth);
    for (const auto& iv : b.intervals())
        if (iv.is_free()) fb.push_back(iv.birth);
    if (fa.size() != fb.size()) return false;
    for (std::size_t k = 0; k < fa.size(); ++k) {
        Rational d = fa[k] - fb[k];
        if (d < -slack || d > slack) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("interval hom dimensions")
{
    Interval unit = Interval::free(0);
    CHECK(interval_hom_dim(unit, unit, 0) == 1);
    for (int a = -3; a <= 3; ++a)
        for (int d = 0; d <= 3; ++d)
            CHECK(interval_hom_dim(unit, Interval::free(a), d) == (a <= d ? 1 : 0));
    CHECK(interval_hom_dim(Interval::torsion(0, 1), unit, 0) == 0);
}

TEST_CASE("reduced homs keep only free pairs")
{
    for (int num = -5; num <= 5; ++num)
        CHECK(hom_reduced(one_free(0), one_free(num, 2)).dimension == 1);
    CHECK(hom_reduced(one_torsion(0, 1), one_torsion(0, 1)).dimension == 0);
    CHECK(hom_reduced(Barcode(), one_free(0)).dimension == 0);
    CHECK(hom_reduced(one_free(0).direct_sum(one_torsion(2, 3)),
                      one_free(1).direct_sum(one_free(-1)))
              .dimension == 2);
}

TEST_CASE("kernels of basic morphisms")
{
    Barcode unit = one_free(0);
    Matrix id1(1, 1);
    id1.at(0, 0) = FieldScalar(1);

    CHECK(kernel(GradedMorphism(unit, unit, 0, id1)).is_zero());
    CHECK(kernel(GradedMorphism(unit, unit, 1, id1)).is_zero());

    Barcode quot = one_torsion(0, 1);
    CHECK(kernel(GradedMorphism(unit, quot, 0, id1)) == one_free(1));
}

TEST_CASE("cokernels of basic morphisms")
{
    Barcode unit = one_free(0);
    Matrix id1(1, 1);
    id1.at(0, 0) = FieldScalar(1);

    CHECK(cokernel(GradedMorphism(unit, unit, 0, id1)).is_zero());
    CHECK(cokernel(GradedMorphism(unit, unit, 1, id1)) == one_torsion(0, 1));

    Barcode m = one_free(1).direct_sum(one_torsion(0, 2));
    CHECK(cokernel(GradedMorphism(Barcode(), m, 0, Matrix(m.size(), 0))) == m);
}

TEST_CASE("tensor products of intervals")
{
    CHECK(tensor(one_free(0), one_free(3)) == one_free(3));
    CHECK(tensor(one_free(0), one_torsion(0, 1)) == one_torsion(0, 1));
    CHECK(tensor(one_torsion(0, 1), one_torsion(0, 2)) == one_torsion(0, 1));
}

TEST_CASE("tensor is commutative and associative with unit")
{
    Rng rng{2024};
    Barcode unit = one_free(0);
    for (int trial = 0; trial < 50; ++trial) {
        Barcode a = random_barcode(rng);
        Barcode b = random_barcode(rng);
        Barcode c = random_barcode(rng);
        CHECK(tensor(a, b) == tensor(b, a));
        CHECK(tensor(tensor(a, b), c) == tensor(a, tensor(b, c)));
        CHECK(tensor(unit, a) == a);
    }
}

TEST_CASE("kernels and cokernels are lift independent after reduction")
{
    Rng rng{77};
    for (int trial = 0; trial < 120; ++trial) {
        GradedMorphism f = random_morphism(rng);
        Rational a(rng.range(0, 6), 2);
        GradedMorphism shifted = f.shifted(a);
        CHECK(reduced_equal(kernel(f), kernel(shifted), a));
        CHECK(reduced_equal(cokernel(f), cokernel(shifted), a));
        CHECK(hom_reduced(kernel(f), one_free(0)).dimension ==
              hom_reduced(kernel(shifted), one_free(0)).dimension);
    }
}

TEST_CASE("reduced hom agrees with the T-action chase on the hom table")
{
    // A class survives reduction iff shifting by every T^c keeps the pair hom
    // alive; probe with a few shifts well past all interval lengths.
    Rng rng{5150};
    for (int trial = 0; trial < 60; ++trial) {
        Barcode src = random_barcode(rng);
        Barcode tgt = random_barcode(rng);
        std::size_t brute = 0;
        for (std::size_t i = 0; i < src.size(); ++i)
            for (std::size_t j = 0; j < tgt.size(); ++j) {
                const Interval& s = src.intervals()[i];
                const Interval& t = tgt.intervals()[j];
                Rational base = t.birth - s.birth;
                Rational d = base < 0 ? Rational(0) : base;
                bool survives = interval_hom_dim(s, t, d) != 0;
                for (int c : {7, 29, 101})
                    survives = survives && interval_hom_dim(s, t, d + c) != 0;
                if (survives) ++brute;
            }
        CHECK(hom_reduced(src, tgt).dimension == brute);
    }
}

TEST_CASE("point duality reflects frees and delays torsion by one degree")
{
    Barcode b = one_free(2).direct_sum(one_torsion(Rational(-1, 2), 1));
    auto [deg0, deg1] = point_dual(b);
    REQUIRE(deg0.size() == 1);
    CHECK(deg0.intervals()[0].is_free());
    CHECK(deg0.intervals()[0].birth == Rational(-2));
    REQUIRE(deg1.size() == 1);
    CHECK(!deg1.intervals()[0].is_free());
    CHECK(deg1.intervals()[0].length == ExtRational(Rational(1)));

    auto [z0, z1] = point_dual(Barcode());
    CHECK(z0.is_zero());
    CHECK(z1.is_zero());
}
