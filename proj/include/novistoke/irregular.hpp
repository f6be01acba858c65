#pragma once

#include "novistoke/barcode.hpp"
#include "novistoke/linalg.hpp"
#include "novistoke/sector.hpp"

#include <vector>

namespace novistoke {

/// The rank-one irregular constant sheaf Lambda^phi restricted to a sector.
struct IrregularConstant {
    PuiseuxFactor factor;
    SectorArc arc;
};

/// dim Hom(Lambda^{phi_a}, Lambda^{phi_b}) on the common arc: 1 unless
/// phi_a - phi_b diverges to +infinity somewhere on the closed arc.
int hom_constant(const IrregularConstant& a, const IrregularConstant& b);

/// Same criterion along a single ray at angle theta (degenerate sector).
int hom_constant_ray(const PuiseuxFactor& a, const PuiseuxFactor& b, const Rational& theta);

IrregularConstant tensor_constant(const IrregularConstant& a, const IrregularConstant& b);

/// Internal hom: Lambda^{phi_b - phi_a} (target minus source).
IrregularConstant sheafhom_constant(const IrregularConstant& a, const IrregularConstant& b);

struct ShiftedConstant {
    IrregularConstant value;
    int shift;
};

/// Verdier dual: Lambda^{-phi} with the orientation shift [2].
ShiftedConstant dual_constant(const IrregularConstant& a);

/// Stalk at a Gaussian-rational point of the open sector: free[-Re phi(x), inf).
Barcode stalk(const IrregularConstant& a, const FieldScalar& x);

/// A Stokes-filtered local system on the punctured disk: a sector cover, one
/// global multiset of exponential factors, and invertible gluing matrices
/// G_k : (frame on arc k) -> (frame on arc k+1) over overlap(k). Entry (i, j)
/// of G_k may be nonzero only when phi_j - phi_i stays away from +infinity on
/// the overlap.
class StokesLocalSystem {
public:
    StokesLocalSystem(SectorCover cover, std::vector<PuiseuxFactor> factors,
                      std::vector<Matrix> gluings);

    /// Rank-one system with the given factor and identity gluings.
    static StokesLocalSystem single(SectorCover cover, PuiseuxFactor factor);
    /// Rank-zero system.
    static StokesLocalSystem zero(SectorCover cover);

    const SectorCover& cover() const { return cover_; }
    const std::vector<PuiseuxFactor>& factors() const { return factors_; }
    const std::vector<Matrix>& gluings() const { return gluings_; }
    std::size_t rank() const { return factors_.size(); }

    /// Ordered product of the gluings around the puncture, in the arc-0 frame.
    Matrix monodromy() const;

private:
    SectorCover cover_;
    std::vector<PuiseuxFactor> factors_;
    std::vector<Matrix> gluings_;
};

/// Transport a system onto another cover of the same circle: each new gluing
/// is the ordered product of the old transitions located between the new arc
/// midpoints.
StokesLocalSystem reglue(const StokesLocalSystem& sys, const SectorCover& cover);

/// A morphism of Stokes local systems on a common cover: per-arc matrices
/// M_k : source frame -> target frame, each entry permitted by the arcwise hom
/// criterion, intertwining the gluings on overlaps.
class IrregularMorphism {
public:
    IrregularMorphism(StokesLocalSystem source, StokesLocalSystem target,
                      std::vector<Matrix> per_arc);

    static IrregularMorphism zero(StokesLocalSystem source, StokesLocalSystem target);

    const StokesLocalSystem& source() const { return source_; }
    const StokesLocalSystem& target() const { return target_; }
    const std::vector<Matrix>& per_arc() const { return per_arc_; }

private:
    StokesLocalSystem source_, target_;
    std::vector<Matrix> per_arc_;
};

struct GlobalHom {
    std::size_t dimension;
    std::vector<std::vector<Matrix>> basis;  // per-arc matrix families
};

/// Global morphisms source -> target: the solution space of the permitted
/// intertwining system. Distinct covers are first merged by regluing both
/// systems onto the standard cover of the combined factor set.
GlobalHom hom_global(const StokesLocalSystem& source, const StokesLocalSystem& target);

StokesLocalSystem kernel_morphism(const IrregularMorphism& f);
StokesLocalSystem cokernel_morphism(const IrregularMorphism& f);

/// The underlying k-local system: rank and monodromy.
struct LocalSystemData {
    std::size_t rank;
    Matrix monodromy;
};

LocalSystemData forget(const StokesLocalSystem& v);

}  // namespace novistoke
