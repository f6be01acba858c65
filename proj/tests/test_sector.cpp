#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "novistoke/oracle.hpp"
#include "novistoke/sector.hpp"

#include "corpus.hpp"

using namespace novistoke;

namespace {

PuiseuxFactor inv_z() { return PuiseuxFactor::pole(1); }
PuiseuxFactor inv_z2() { return PuiseuxFactor::pole(2); }

}  // namespace

TEST_CASE("dominance on half and quarter arcs")
{
    CHECK(dominance(inv_z(), SectorArc(Rational(1, 4), Rational(3, 4))) ==
          DominanceVerdict::NEG_DIVERGENT);
    CHECK(dominance(inv_z(), SectorArc(Rational(-1, 8), Rational(1, 8))) ==
          DominanceVerdict::POS_DIVERGENT);
    CHECK(dominance(PuiseuxFactor(), SectorArc(Rational(0), Rational(1))) ==
          DominanceVerdict::ZERO);
    // Boundary rays where the leading cosine vanishes do not stop divergence.
    CHECK(dominance(inv_z2(), SectorArc(Rational(1, 8), Rational(3, 8))) ==
          DominanceVerdict::NEG_DIVERGENT);
}

TEST_CASE("ray classification recurses through vanishing leading terms")
{
    CHECK(classify_ray(inv_z(), Rational(1, 2)) == DominanceVerdict::NEG_DIVERGENT);
    CHECK(classify_ray(inv_z(), Rational(0)) == DominanceVerdict::POS_DIVERGENT);
    CHECK(classify_ray(inv_z(), Rational(1, 4)) == DominanceVerdict::BOUNDED);
    // 1/z^2 +- 1/z at theta = 1/8: leading cosine vanishes, next term decides.
    CHECK(classify_ray(inv_z2() + inv_z(), Rational(1, 8)) == DominanceVerdict::POS_DIVERGENT);
    CHECK(classify_ray(inv_z2() - inv_z(), Rational(1, 8)) == DominanceVerdict::NEG_DIVERGENT);
    CHECK(classify_ray(PuiseuxFactor(), Rational(1, 3)) == DominanceVerdict::ZERO);
}

TEST_CASE("stokes directions of basic pairs")
{
    auto d1 = stokes_directions(inv_z(), PuiseuxFactor());
    REQUIRE(d1.directions.size() == 2);
    CHECK(d1.directions[0].angle == Rational(1, 4));
    CHECK(d1.directions[1].angle == Rational(3, 4));
    CHECK(d1.directions[0].exact);

    auto d2 = stokes_directions(inv_z2(), PuiseuxFactor());
    REQUIRE(d2.directions.size() == 4);
    CHECK(d2.directions[0].angle == Rational(1, 8));
    CHECK(d2.directions[3].angle == Rational(7, 8));

    CHECK_THROWS_AS(stokes_directions(inv_z(), inv_z()), IdenticalFactors);
}

TEST_CASE("stokes directions are symmetric in the factor pair")
{
    corpus::Rng rng(31);
    int tried = 0;
    while (tried < 30) {
        PuiseuxFactor a = corpus::random_factor(rng);
        PuiseuxFactor b = corpus::random_factor(rng);
        if (a == b) continue;
        ++tried;
        auto ab = stokes_directions(a, b);
        auto ba = stokes_directions(b, a);
        REQUIRE(ab.directions.size() == ba.directions.size());
        for (std::size_t k = 0; k < ab.directions.size(); ++k) {
            if (ab.directions[k].exact) {
                CHECK(ab.directions[k].angle == ba.directions[k].angle);
            } else {
                // certified enclosures of the same direction must intersect
                CHECK(ab.directions[k].lo <= ba.directions[k].hi);
                CHECK(ba.directions[k].lo <= ab.directions[k].hi);
            }
        }
    }
}

TEST_CASE("standard covers of reference factor sets")
{
    SectorCover c1 = standard_cover({inv_z(), PuiseuxFactor()});
    CHECK(c1.size() == 4);
    CHECK(cover_is_valid(c1, {Rational(1, 4), Rational(3, 4)}));

    SectorCover c0 = standard_cover({PuiseuxFactor()});
    CHECK(c0.size() == 2);
    CHECK(cover_is_valid(c0, {}));

    // Pairwise directions of {1/z, 1/z^2}: the union of cos 2theta = 0 and the
    // directions of 1/z^2 - 1/z, eight cuts in total.
    SectorCover c2 = standard_cover({inv_z(), inv_z2()});
    CHECK(c2.size() == 8);
    CHECK(cover_is_valid(c2, c2.cuts));
}

TEST_CASE("every cover arc gets a definite verdict")
{
    std::vector<PuiseuxFactor> factors = {PuiseuxFactor(), inv_z(), inv_z2()};
    SectorCover cover = standard_cover(factors);
    for (std::size_t i = 0; i < factors.size(); ++i)
        for (std::size_t j = 0; j < factors.size(); ++j) {
            if (i == j) continue;
            for (const auto& arc : cover.arcs)
                CHECK_NOTHROW(dominance(factors[i] - factors[j], arc));
        }
}

TEST_CASE("negating a factor swaps divergence directions")
{
    corpus::Rng rng(404);
    for (int trial = 0; trial < 60; ++trial) {
        PuiseuxFactor phi = corpus::random_factor(rng);
        SectorArc arc = corpus::random_arc(rng);
        DominanceVerdict v = dominance(phi, arc);
        DominanceVerdict w = dominance(-phi, arc);
        if (v == DominanceVerdict::NEG_DIVERGENT)
            CHECK(w == DominanceVerdict::POS_DIVERGENT);
        if (v == DominanceVerdict::ZERO) CHECK(w == DominanceVerdict::ZERO);
        if (v == DominanceVerdict::BOUNDED) CHECK(w == DominanceVerdict::BOUNDED);
    }
}

TEST_CASE("pullback scales orders and clears ramification")
{
    PuiseuxFactor half = PuiseuxFactor({{Rational(1, 2), FieldScalar(1)}}, 2);
    PuiseuxFactor pulled = pullback_factor(half, 2);
    CHECK(pulled == inv_z());
    CHECK(pulled.ramification() == 1);
    CHECK(pullback_factor(inv_z(), 3) == PuiseuxFactor::pole(3));
    CHECK(pullback_factor(PuiseuxFactor(), 5).is_zero());
}

TEST_CASE("exact trigonometric signs at eighth turns")
{
    CHECK(trig_sign(FieldScalar(1), Rational(0)) == 1);
    CHECK(trig_sign(FieldScalar(1), Rational(1, 4)) == 0);
    CHECK(trig_sign(FieldScalar(1), Rational(1, 2)) == -1);
    CHECK(trig_sign(FieldScalar::i(), Rational(1, 4)) == 1);
    CHECK(trig_sign(FieldScalar(1) + FieldScalar::i(), Rational(1, 8)) == 1);
}

TEST_CASE("exact real parts at rational points")
{
    CHECK(real_part_at(inv_z(), FieldScalar(1)) == Rational(1));
    CHECK(real_part_at(inv_z(), FieldScalar::i()) == Rational(0));
    CHECK(real_part_at(inv_z2(), FieldScalar(2)) == Rational(1, 4));
}

TEST_CASE("symbolic dominance matches the sampling oracle")
{
    corpus::Rng rng(1234);
    int compared = 0;
    for (int trial = 0; trial < 80; ++trial) {
        PuiseuxFactor phi = corpus::random_factor(rng);
        SectorArc arc = corpus::random_arc(rng);
        OracleEstimate est = oracle_dominance(phi, arc);
        if (!est.confident) continue;
        ++compared;
        DominanceVerdict v = dominance(phi, arc);
        if (est.verdict == DominanceVerdict::POS_DIVERGENT)
            CHECK(v == DominanceVerdict::POS_DIVERGENT);
        else
            CHECK(v != DominanceVerdict::POS_DIVERGENT);
    }
    CHECK(compared >= 40);
}
