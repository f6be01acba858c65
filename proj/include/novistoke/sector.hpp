#pragma once

#include "novistoke/barcode.hpp"
#include "novistoke/field.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace novistoke {

/// Raised when the certified sign procedure hits the precision cap.
struct UndecidableSign : std::runtime_error {
    UndecidableSign() : std::runtime_error("sign determination failed at maximum precision") {}
};

struct IdenticalFactors : std::invalid_argument {
    IdenticalFactors() : std::invalid_argument("factors coincide modulo bounded terms") {}
};

/// Precision cap (in bits) for the escalating-precision sign procedure.
/// Defaults to 4096, overridable by the NOVISTOKE_MAX_PRECISION env var.
int max_precision_bits();
void set_max_precision_bits(int bits);

/// An exponential factor phi(z) = sum c_q z^{-q} with rational orders q > 0,
/// stored modulo bounded terms (orders <= 0 dropped at construction).
class PuiseuxFactor {
public:
    using Term = std::pair<Rational, FieldScalar>;  // (order, coefficient)

    PuiseuxFactor() = default;  // the zero factor
    explicit PuiseuxFactor(std::vector<Term> terms, unsigned ramification = 0);

    /// c * z^{-order}.
    static PuiseuxFactor pole(Rational order, FieldScalar coeff = FieldScalar(1));

    const std::vector<Term>& terms() const { return terms_; }
    unsigned ramification() const { return ramification_; }
    bool is_zero() const { return terms_.empty(); }

    friend PuiseuxFactor operator+(const PuiseuxFactor& a, const PuiseuxFactor& b);
    friend PuiseuxFactor operator-(const PuiseuxFactor& a);
    friend PuiseuxFactor operator-(const PuiseuxFactor& a, const PuiseuxFactor& b);
    friend bool operator==(const PuiseuxFactor& a, const PuiseuxFactor& b)
    {
        return a.terms_ == b.terms_;
    }

    std::string str() const;

private:
    std::vector<Term> terms_;  // orders strictly decreasing, coefficients nonzero
    unsigned ramification_ = 1;
};

/// phi(z^r): each order scales by r; ramification divides out.
PuiseuxFactor pullback_factor(const PuiseuxFactor& phi, unsigned r);

/// An open angular sector at the puncture. Angles are in turns (fractions of
/// a full circle); start < end and end - start <= 1.
struct SectorArc {
    Rational start, end;

    SectorArc(Rational s, Rational e);

    Rational length() const { return end - start; }
    /// Is theta (mod 1) in the closure of the arc?
    bool closure_contains(const Rational& theta) const;
    /// Is theta (mod 1) in the open arc?
    bool contains(const Rational& theta) const;

    friend bool operator==(const SectorArc& a, const SectorArc& b)
    {
        return a.start == b.start && a.end == b.end;
    }

    std::string str() const;
};

enum class DominanceVerdict { BOUNDED, NEG_DIVERGENT, POS_DIVERGENT, ZERO };

const char* to_string(DominanceVerdict v);

/// Classification of sup Re(phi(r e^{2 pi i theta})) over the CLOSED arc as
/// r -> 0. Throws UndecidableSign if certified arithmetic hits the cap.
DominanceVerdict dominance(const PuiseuxFactor& phi, const SectorArc& arc);

/// Same classification along the single ray at angle theta (turns).
DominanceVerdict classify_ray(const PuiseuxFactor& phi, const Rational& theta);

/// Sign (-1, 0, +1) of Re(c e^{-2 pi i t}) = re(c) cos(2 pi t) + im(c) sin(2 pi t).
/// Exact whenever arg(c) is a multiple of 1/8 turn; certified numerics otherwise.
int trig_sign(const FieldScalar& c, const Rational& t);

/// One Stokes direction: exact rational angle when available, always with a
/// certified rational enclosure lo <= theta <= hi (lo = hi = angle if exact).
struct StokesDirection {
    bool exact;
    Rational angle;
    Rational lo, hi;
};

struct StokesDirectionSet {
    std::vector<StokesDirection> directions;  // sorted by lo, angles in [0, 1)
    FieldScalar leading_coeff;                // descriptor of the defining equation
    Rational leading_order;                   // cos(arg c - 2 pi q theta) = 0
};

/// Directions where the leading term of Re(phi1 - phi2) changes sign.
StokesDirectionSet stokes_directions(const PuiseuxFactor& phi1, const PuiseuxFactor& phi2);

/// A cyclic cover of the circle by open arcs; arc k overlaps arc k+1 (mod n).
/// cuts[k] is the single Stokes direction inside arc k (empty if none).
struct SectorCover {
    std::vector<SectorArc> arcs;
    std::vector<Rational> cuts;

    std::size_t size() const { return arcs.size(); }
    /// Overlap of arc k with arc k+1 (mod n), as an arc.
    SectorArc overlap(std::size_t k) const;
};

/// Cover of the circle in which every arc's closure contains at most one
/// Stokes direction of any pair of the given factors.
SectorCover standard_cover(const std::vector<PuiseuxFactor>& factors);

/// Verification predicate: coverage, consecutive nonempty overlaps, and at
/// most one of the given cut angles inside each closed arc.
bool cover_is_valid(const SectorCover& cover, const std::vector<Rational>& cuts);

/// Exact Re(phi(x)) at a nonzero Gaussian-rational point; requires phi
/// unramified (integer orders).
Rational real_part_at(const PuiseuxFactor& phi, const FieldScalar& x);

/// Rational bounds lo <= arg(z)/2pi <= hi, normalized into [0, 1); exact
/// (lo = hi) for axis-aligned and diagonal z.
std::pair<Rational, Rational> argument_bounds(const FieldScalar& z);

}  // namespace novistoke
