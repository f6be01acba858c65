#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

namespace novistoke {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// A rational that may be +infinity. Used for interval lengths and valuations.
class ExtRational {
public:
    ExtRational() : finite_(true), value_(0) {}
    ExtRational(Rational v) : finite_(true), value_(std::move(v)) {}
    ExtRational(int v) : finite_(true), value_(v) {}

    static ExtRational infinity()
    {
        ExtRational e;
        e.finite_ = false;
        return e;
    }

    bool is_finite() const { return finite_; }
    const Rational& value() const
    {
        if (!finite_)
            throw std::logic_error("ExtRational: value() on infinity");
        return value_;
    }

    friend bool operator==(const ExtRational& a, const ExtRational& b)
    {
        if (a.finite_ != b.finite_)
            return false;
        return !a.finite_ || a.value_ == b.value_;
    }
    friend bool operator<(const ExtRational& a, const ExtRational& b)
    {
        if (!a.finite_)
            return false;
        if (!b.finite_)
            return true;
        return a.value_ < b.value_;
    }
    friend bool operator<=(const ExtRational& a, const ExtRational& b) { return a == b || a < b; }

    friend ExtRational operator+(const ExtRational& a, const Rational& b)
    {
        return a.finite_ ? ExtRational(a.value_ + b) : infinity();
    }

    std::string str() const { return finite_ ? value_.str() : std::string("inf"); }

private:
    bool finite_;
    Rational value_;
};

inline std::int64_t to_int64(const BigInt& v)
{
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
        throw std::overflow_error("rational component exceeds 64-bit range in serialization");
    return static_cast<std::int64_t>(v);
}

inline std::int64_t num64(const Rational& q) { return to_int64(numerator(q)); }
inline std::int64_t den64(const Rational& q) { return to_int64(denominator(q)); }

inline Rational make_rational(std::int64_t num, std::int64_t den)
{
    if (den == 0)
        throw std::invalid_argument("rational with zero denominator");
    return Rational(BigInt(num), BigInt(den));
}

/// Reduce into [0, 1). Angles are stored in turns (fractions of a full circle).
inline Rational mod_one(const Rational& q)
{
    BigInt n = numerator(q), d = denominator(q);
    BigInt m = n % d;
    if (m < 0)
        m += d;
    return Rational(m, d);
}

inline int sign(const Rational& q)
{
    if (q > 0)
        return 1;
    if (q < 0)
        return -1;
    return 0;
}

}  // namespace novistoke
