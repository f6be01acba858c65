#pragma once

#include "novistoke/field.hpp"

#include <utility>
#include <vector>

namespace novistoke {

/// An element of the finite Novikov ring: a finite sum of c * T^a with
/// exponents a >= 0 in Q. Terms are kept sorted by exponent with no zero
/// coefficients and no duplicates.
class NovikovScalar {
public:
    using Term = std::pair<Rational, FieldScalar>;  // (exponent, coefficient)

    NovikovScalar() = default;

    static NovikovScalar zero() { return {}; }
    static NovikovScalar one() { return monomial(0, FieldScalar(1)); }
    static NovikovScalar monomial(Rational exponent, FieldScalar coeff = FieldScalar(1));

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Minimal exponent with nonzero coefficient; +infinity for zero.
    ExtRational valuation() const;

    /// The reduction Lambda -> k given by T^a |-> 1 (sum of coefficients).
    FieldScalar reduce_at_one() const;

    friend NovikovScalar operator+(const NovikovScalar& a, const NovikovScalar& b);
    friend NovikovScalar operator-(const NovikovScalar& a, const NovikovScalar& b);
    friend NovikovScalar operator-(const NovikovScalar& a);
    friend NovikovScalar operator*(const NovikovScalar& a, const NovikovScalar& b);
    friend bool operator==(const NovikovScalar& a, const NovikovScalar& b)
    {
        return a.terms_ == b.terms_;
    }

    std::string str() const;

    /// Construct from arbitrary (exponent, coefficient) pairs; normalizes.
    static NovikovScalar from_terms(std::vector<Term> terms);

private:
    std::vector<Term> terms_;
};

}  // namespace novistoke
