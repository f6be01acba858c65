#pragma once

#include "novistoke/curvecx.hpp"

#include <optional>
#include <vector>

namespace novistoke {

struct StokesMatrixEntry {
    Rational direction;  // angle in turns
    Matrix matrix;
};

/// Exponential connection data at the puncture: a multiset of rank-one
/// exponential factors, a formal monodromy acting within equal-factor blocks,
/// and one unipotent Stokes matrix per Stokes direction.
class ConnectionDatum {
public:
    ConnectionDatum(std::vector<PuiseuxFactor> factors, Matrix formal_monodromy,
                    std::vector<StokesMatrixEntry> stokes_matrices);

    /// Rank-one datum with trivial monodromy and no Stokes matrices.
    static ConnectionDatum exponential(PuiseuxFactor factor);

    const std::vector<PuiseuxFactor>& factors() const { return factors_; }
    const Matrix& formal_monodromy() const { return formal_monodromy_; }
    const std::vector<StokesMatrixEntry>& stokes_matrices() const { return stokes_matrices_; }
    std::size_t rank() const { return factors_.size(); }

private:
    std::vector<PuiseuxFactor> factors_;
    Matrix formal_monodromy_;
    std::vector<StokesMatrixEntry> stokes_matrices_;
};

/// Negated factors, inverse-transpose matrices; same Stokes directions.
ConnectionDatum dual_datum(const ConnectionDatum& d);

/// Solution object of the datum: the Stokes local system on the standard
/// cover with each Stokes matrix glued on the overlap following its
/// direction's arc and the formal monodromy folded into the last gluing,
/// extended by zero in degree -1.
CurveComplex sol_lambda(const ConnectionDatum& d);

struct HomComparison {
    std::size_t sheaf_ray;                // hom along the boundary ray theta = 0
    std::size_t sheaf_disk;               // hom_complex degree 0 on the full disk
    std::optional<std::size_t> catalog;   // analytically known dimension, when cataloged
};

/// Both hom directions between the solution objects, in contravariant order:
/// forward compares Hom(d1, d2) on the connection side with sheaf homs from
/// sol(d2) to sol(d1).
struct HomComparisonTable {
    HomComparison forward, reverse;
};

HomComparisonTable hom_comparison_table(const ConnectionDatum& d1, const ConnectionDatum& d2);

}  // namespace novistoke
