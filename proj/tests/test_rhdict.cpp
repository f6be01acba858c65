#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "novistoke/rhdict.hpp"

#include "corpus.hpp"

using namespace novistoke;

namespace {

PuiseuxFactor inv_z() { return PuiseuxFactor::pole(1); }
PuiseuxFactor inv_z2() { return PuiseuxFactor::pole(2); }

ConnectionDatum rank_two()
{
    Matrix formal = Matrix::identity(2);
    formal.at(0, 0) = FieldScalar(2);
    Matrix stokes = Matrix::identity(2);
    stokes.at(1, 0) = FieldScalar(3);
    return ConnectionDatum({PuiseuxFactor(), inv_z()}, formal,
                           {{Rational(3, 4), stokes}});
}

}  // namespace

TEST_CASE("solution of a plain exponential extends by zero in degree -1")
{
    CurveComplex c = sol_lambda(ConnectionDatum::exponential(PuiseuxFactor()));
    REQUIRE(c.summands().size() == 1);
    CHECK(c.summands()[0].kind == SummandKind::J_SHRIEK);
    CHECK(c.summands()[0].degree == -1);
    CHECK(c.summands()[0].rank() == 1);
    CHECK(c.summands()[0].system->factors() == std::vector<PuiseuxFactor>{PuiseuxFactor()});
}

TEST_CASE("stokes matrices and formal monodromy assemble the actual monodromy")
{
    ConnectionDatum d = rank_two();
    CurveComplex c = sol_lambda(d);
    REQUIRE(c.summands().size() == 1);
    const StokesLocalSystem& sys = *c.summands()[0].system;
    CHECK(sys.rank() == 2);
    // char_poly(AB) = char_poly(BA), so the assembly order drops out
    Matrix expected = d.formal_monodromy() * d.stokes_matrices()[0].matrix;
    CHECK(char_poly(forget(sys).monodromy) == char_poly(expected));
}

TEST_CASE("construction validates the datum")
{
    Matrix id2 = Matrix::identity(2);
    std::vector<PuiseuxFactor> mixed = {PuiseuxFactor(), inv_z()};

    Matrix singular(2, 2);
    CHECK_THROWS_AS(ConnectionDatum(mixed, singular, {}), std::invalid_argument);

    Matrix off_block = id2;
    off_block.at(0, 1) = FieldScalar(1);  // couples distinct factors formally
    CHECK_THROWS_AS(ConnectionDatum(mixed, off_block, {}), std::invalid_argument);

    Matrix not_unipotent = id2;
    not_unipotent.at(0, 0) = FieldScalar(2);
    CHECK_THROWS_AS(ConnectionDatum(mixed, id2, {{Rational(1, 4), not_unipotent}}),
                    std::invalid_argument);

    // a stokes entry inside an equal-factor block
    Matrix within = id2;
    within.at(0, 1) = FieldScalar(1);
    std::vector<PuiseuxFactor> twins = {inv_z(), inv_z()};
    CHECK_THROWS_AS(ConnectionDatum(twins, id2, {{Rational(1, 4), within}}),
                    std::invalid_argument);

    Matrix stokes = id2;
    stokes.at(1, 0) = FieldScalar(1);
    CHECK_THROWS_AS(ConnectionDatum(mixed, id2,
                                    {{Rational(1, 4), stokes}, {Rational(5, 4), stokes}}),
                    std::invalid_argument);

    // {0, 1/z} has cuts only at 1/4 and 3/4
    CHECK_THROWS_AS(sol_lambda(ConnectionDatum(mixed, id2, {{Rational(1, 8), stokes}})),
                    std::invalid_argument);
}

TEST_CASE("dual datum negates factors and inverts matrices")
{
    ConnectionDatum d = rank_two();
    ConnectionDatum dd = dual_datum(d);
    CHECK(dd.factors() == std::vector<PuiseuxFactor>{PuiseuxFactor(), -inv_z()});
    CHECK(dd.formal_monodromy() == d.formal_monodromy().inverse().transpose());
    REQUIRE(dd.stokes_matrices().size() == 1);
    CHECK(dd.stokes_matrices()[0].direction == Rational(3, 4));

    ConnectionDatum back = dual_datum(dd);
    CHECK(back.factors() == d.factors());
    CHECK(back.formal_monodromy() == d.formal_monodromy());
    CHECK(back.stokes_matrices()[0].matrix == d.stokes_matrices()[0].matrix);
}

TEST_CASE("solution of the dual datum matches the dual solution across the exchange")
{
    // sol always extends by zero, while the dual of a solution object is a
    // pushforward at the same degree; the open payloads agree.
    for (const ConnectionDatum& d :
         {ConnectionDatum::exponential(inv_z()), ConnectionDatum::exponential(inv_z2()),
          rank_two()}) {
        CurveComplex lhs = sol_lambda(dual_datum(d));
        CurveComplex rhs = verdier_dual(sol_lambda(d));
        REQUIRE(lhs.summands().size() == 1);
        REQUIRE(rhs.summands().size() == 1);
        CHECK(lhs.summands()[0].kind == SummandKind::J_SHRIEK);
        CHECK(rhs.summands()[0].kind == SummandKind::J_STAR);
        CHECK(lhs.summands()[0].degree == rhs.summands()[0].degree);
        CHECK(lhs.summands()[0].system->factors() == rhs.summands()[0].system->factors());
        CHECK(char_poly(lhs.summands()[0].system->monodromy()) ==
              char_poly(rhs.summands()[0].system->monodromy()));
    }
}

TEST_CASE("the catalog table is one on the diagonal and asymmetric off it")
{
    std::vector<ConnectionDatum> cat = {ConnectionDatum::exponential(PuiseuxFactor()),
                                        ConnectionDatum::exponential(inv_z()),
                                        ConnectionDatum::exponential(inv_z2())};
    for (std::size_t i = 0; i < cat.size(); ++i)
        for (std::size_t j = 0; j < cat.size(); ++j) {
            HomComparisonTable t = hom_comparison_table(cat[i], cat[j]);
            REQUIRE(t.forward.catalog.has_value());
            CHECK(*t.forward.catalog == (i == j ? 1 : 0));
            CHECK(t.forward.sheaf_disk == (i == j ? 1 : 0));
            if (i == j) {
                CHECK(t.forward.sheaf_ray == 1);
            } else {
                // exactly one of the two ray directions survives
                CHECK(t.forward.sheaf_ray + t.reverse.sheaf_ray == 1);
                // swapping the arguments transposes the table
                HomComparisonTable s = hom_comparison_table(cat[j], cat[i]);
                CHECK(s.forward.sheaf_ray == t.reverse.sheaf_ray);
                CHECK(s.reverse.sheaf_ray == t.forward.sheaf_ray);
                CHECK(s.forward.sheaf_disk == t.reverse.sheaf_disk);
            }
        }
    // the ray column is graded by divergence along theta = 0
    CHECK(hom_comparison_table(cat[0], cat[1]).forward.sheaf_ray == 0);
    CHECK(hom_comparison_table(cat[0], cat[1]).reverse.sheaf_ray == 1);
    CHECK(hom_comparison_table(cat[1], cat[2]).forward.sheaf_ray == 0);
    CHECK(hom_comparison_table(cat[1], cat[2]).reverse.sheaf_ray == 1);
}

TEST_CASE("opposite exponentials admit no disk homs either way")
{
    ConnectionDatum plus = ConnectionDatum::exponential(inv_z());
    ConnectionDatum minus = ConnectionDatum::exponential(-inv_z());
    HomComparisonTable t = hom_comparison_table(plus, minus);
    CHECK(t.forward.sheaf_disk == 0);
    CHECK(t.reverse.sheaf_disk == 0);
}
