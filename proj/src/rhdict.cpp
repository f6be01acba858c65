#include "novistoke/rhdict.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace novistoke {

namespace {

const Rational& match_tolerance()
{
    static const Rational tol(BigInt(1), pow(BigInt(10), 30));
    return tol;
}

bool same_angle(const Rational& a, const Rational& b)
{
    Rational d = a < b ? Rational(b - a) : Rational(a - b);
    return d <= match_tolerance() || Rational(1) - d <= match_tolerance();
}

void require_square(const Matrix& m, std::size_t n, const char* what)
{
    if (m.rows() != n || m.cols() != n) throw std::invalid_argument(what);
}

}  // namespace

ConnectionDatum::ConnectionDatum(std::vector<PuiseuxFactor> factors, Matrix formal_monodromy,
                                 std::vector<StokesMatrixEntry> stokes_matrices)
    : factors_(std::move(factors)),
      formal_monodromy_(std::move(formal_monodromy)),
      stokes_matrices_(std::move(stokes_matrices))
{
    std::size_t n = factors_.size();
    require_square(formal_monodromy_, n, "formal monodromy size must match the factor count");
    if (determinant(formal_monodromy_) == FieldScalar(0))
        throw std::invalid_argument("formal monodromy must be invertible");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!(formal_monodromy_.at(i, j) == FieldScalar(0)) && !(factors_[i] == factors_[j]))
                throw std::invalid_argument("formal monodromy must act within equal-factor blocks");
    for (auto& s : stokes_matrices_) {
        require_square(s.matrix, n, "stokes matrix size must match the factor count");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j && !(s.matrix.at(i, i) == FieldScalar(1)))
                    throw std::invalid_argument("stokes matrices must be unipotent");
                if (i != j && !(s.matrix.at(i, j) == FieldScalar(0)) &&
                    factors_[i] == factors_[j])
                    throw std::invalid_argument(
                        "stokes matrices may differ from identity only between distinct factors");
            }
        s.direction = mod_one(s.direction);
    }
    std::sort(stokes_matrices_.begin(), stokes_matrices_.end(),
              [](const StokesMatrixEntry& a, const StokesMatrixEntry& b) {
                  return a.direction < b.direction;
              });
    for (std::size_t i = 0; i + 1 < stokes_matrices_.size(); ++i)
        if (same_angle(stokes_matrices_[i].direction, stokes_matrices_[i + 1].direction))
            throw std::invalid_argument("duplicate stokes direction");
}

ConnectionDatum ConnectionDatum::exponential(PuiseuxFactor factor)
{
    return ConnectionDatum({std::move(factor)}, Matrix::identity(1), {});
}

ConnectionDatum dual_datum(const ConnectionDatum& d)
{
    std::vector<PuiseuxFactor> factors;
    factors.reserve(d.rank());
    for (const auto& f : d.factors()) factors.push_back(-f);
    std::vector<StokesMatrixEntry> stokes;
    stokes.reserve(d.stokes_matrices().size());
    for (const auto& s : d.stokes_matrices())
        stokes.push_back({s.direction, s.matrix.inverse().transpose()});
    return ConnectionDatum(std::move(factors), d.formal_monodromy().inverse().transpose(),
                           std::move(stokes));
}

CurveComplex sol_lambda(const ConnectionDatum& d)
{
    SectorCover cover = standard_cover(d.factors());
    std::size_t n = cover.size();
    std::vector<Matrix> gluings(n, Matrix::identity(d.rank()));

    for (const auto& s : d.stokes_matrices()) {
        const Rational* cut = nullptr;
        for (const auto& c : cover.cuts)
            if (same_angle(s.direction, c)) cut = &c;
        if (!cut)
            throw std::invalid_argument("matrix attached to a non-Stokes direction");
        std::size_t arc = n;
        for (std::size_t k = 0; k < n; ++k)
            if (cover.arcs[k].contains(*cut)) arc = k;
        if (arc == n) throw std::logic_error("cut not interior to any arc");
        gluings[arc] = s.matrix * gluings[arc];
    }
    gluings[n - 1] = d.formal_monodromy() * gluings[n - 1];

    StokesLocalSystem sys(std::move(cover), d.factors(), std::move(gluings));
    return CurveComplex::shriek(std::move(sys), -1);
}

namespace {

std::size_t ray_dim(const ConnectionDatum& src, const ConnectionDatum& tgt)
{
    std::size_t total = 0;
    for (const auto& a : src.factors())
        for (const auto& b : tgt.factors()) total += hom_constant_ray(a, b, Rational(0));
    return total;
}

bool plain_exponential(const ConnectionDatum& d)
{
    return d.rank() == 1 && d.stokes_matrices().empty() &&
           d.formal_monodromy() == Matrix::identity(1);
}

HomComparison one_direction(const ConnectionDatum& from, const ConnectionDatum& to)
{
    HomComparison h{};
    // contravariant: sheaf homs go from sol(to) to sol(from)
    h.sheaf_ray = ray_dim(to, from);
    auto ext = hom_complex(sol_lambda(to), sol_lambda(from));
    h.sheaf_disk = ext.count(0) ? ext.at(0) : 0;
    if (plain_exponential(from) && plain_exponential(to))
        h.catalog = from.factors()[0] == to.factors()[0] ? 1 : 0;
    return h;
}

}  // namespace

HomComparisonTable hom_comparison_table(const ConnectionDatum& d1, const ConnectionDatum& d2)
{
    return {one_direction(d1, d2), one_direction(d2, d1)};
}

}  // namespace novistoke
