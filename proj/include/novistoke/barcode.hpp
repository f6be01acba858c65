#pragma once

#include "novistoke/linalg.hpp"
#include "novistoke/novikov.hpp"

#include <utility>
#include <vector>

namespace novistoke {

/// One summand of a finitely presented graded module over the Novikov ring:
/// free [birth, inf) or torsion [birth, birth + length).
struct Interval {
    Rational birth{0};
    ExtRational length{ExtRational::infinity()};

    static Interval free(Rational birth) { return {std::move(birth), ExtRational::infinity()}; }
    static Interval torsion(Rational birth, Rational length);

    bool is_free() const { return !length.is_finite(); }
    /// Death grade (birth + length); +infinity for free intervals.
    ExtRational end() const
    {
        return length.is_finite() ? ExtRational(birth + length.value()) : ExtRational::infinity();
    }
    bool alive_at(const Rational& t) const
    {
        return birth <= t && (!length.is_finite() || t < birth + length.value());
    }

    friend bool operator==(const Interval& a, const Interval& b)
    {
        return a.birth == b.birth && a.length == b.length;
    }
    friend bool operator<(const Interval& a, const Interval& b);

    std::string str() const;
};

/// A graded module in interval normal form: a sorted multiset of intervals.
class Barcode {
public:
    Barcode() = default;
    explicit Barcode(std::vector<Interval> intervals);

    const std::vector<Interval>& intervals() const { return intervals_; }
    bool is_zero() const { return intervals_.empty(); }
    std::size_t size() const { return intervals_.size(); }
    std::size_t free_count() const;

    friend bool operator==(const Barcode& a, const Barcode& b)
    {
        return a.intervals_ == b.intervals_;
    }

    Barcode direct_sum(const Barcode& other) const;
    std::string str() const;

private:
    std::vector<Interval> intervals_;
};

/// dim_k Hom^degree between two interval modules (0 or 1).
int interval_hom_dim(const Interval& src, const Interval& tgt, const Rational& degree);

struct HomBasisElement {
    std::size_t source_index;
    std::size_t target_index;
};

/// Basis of the space of degree-d morphisms between barcodes: one basis
/// element per interval pair with a nonzero hom.
std::vector<HomBasisElement> hom_degree(const Barcode& source, const Barcode& target,
                                        const Rational& degree);

/// The tensor-reduced hom space Hom (x)_Lambda k: classes surviving
/// multiplication by every T^a. Only free-to-free components survive.
struct ReducedHom {
    std::size_t dimension;
    std::vector<HomBasisElement> basis;  // (free source interval, free target interval)
};
ReducedHom hom_reduced(const Barcode& source, const Barcode& target);

/// A homogeneous lift of a morphism: degree-d map given by field coefficients
/// on interval pairs. Entry (j, i) scales the canonical generator map from
/// source interval i into target interval j.
class GradedMorphism {
public:
    GradedMorphism(Barcode source, Barcode target, Rational degree, Matrix coefficients);

    const Barcode& source() const { return source_; }
    const Barcode& target() const { return target_; }
    const Rational& degree() const { return degree_; }
    const Matrix& coefficients() const { return coefficients_; }

    /// T^a * f: same coefficients at degree d + a; components whose pair hom
    /// dies at the higher degree are dropped.
    GradedMorphism shifted(const Rational& a) const;

private:
    Barcode source_, target_;
    Rational degree_;
    Matrix coefficients_;  // target.size() x source.size()
};

Barcode kernel(const GradedMorphism& f);
Barcode cokernel(const GradedMorphism& f);

Barcode tensor(const Barcode& a, const Barcode& b);
Interval tensor_intervals(const Interval& a, const Interval& b);

/// Verdier dual over the point: frees reflect, torsions reflect and move to
/// cohomological degree +1 (the Ext^1 part). Returned as (degree 0, degree 1).
std::pair<Barcode, Barcode> point_dual(const Barcode& b);

}  // namespace novistoke
