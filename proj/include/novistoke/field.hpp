#pragma once

#include "novistoke/rational.hpp"

#include <string>

namespace novistoke {

/// The base field: Gaussian rationals a + bi with exact components.
class FieldScalar {
public:
    FieldScalar() = default;
    FieldScalar(Rational re, Rational im = 0) : re_(std::move(re)), im_(std::move(im)) {}
    FieldScalar(int re) : re_(re) {}

    static FieldScalar i() { return FieldScalar(0, 1); }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }
    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_real() const { return im_ == 0; }

    FieldScalar conj() const { return FieldScalar(re_, -im_); }
    Rational norm() const { return re_ * re_ + im_ * im_; }

    friend FieldScalar operator+(const FieldScalar& a, const FieldScalar& b)
    {
        return {a.re_ + b.re_, a.im_ + b.im_};
    }
    friend FieldScalar operator-(const FieldScalar& a, const FieldScalar& b)
    {
        return {a.re_ - b.re_, a.im_ - b.im_};
    }
    friend FieldScalar operator-(const FieldScalar& a) { return {-a.re_, -a.im_}; }
    friend FieldScalar operator*(const FieldScalar& a, const FieldScalar& b)
    {
        return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
    }
    friend FieldScalar operator/(const FieldScalar& a, const FieldScalar& b)
    {
        Rational n = b.norm();
        if (n == 0)
            throw std::domain_error("FieldScalar: division by zero");
        FieldScalar c = a * b.conj();
        return {c.re_ / n, c.im_ / n};
    }
    FieldScalar& operator+=(const FieldScalar& o) { return *this = *this + o; }
    FieldScalar& operator-=(const FieldScalar& o) { return *this = *this - o; }
    FieldScalar& operator*=(const FieldScalar& o) { return *this = *this * o; }

    friend bool operator==(const FieldScalar& a, const FieldScalar& b)
    {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    std::string str() const
    {
        if (im_ == 0)
            return re_.str();
        if (re_ == 0)
            return im_.str() + "i";
        return re_.str() + (im_ > 0 ? "+" : "") + im_.str() + "i";
    }

private:
    Rational re_{0};
    Rational im_{0};
};

}  // namespace novistoke
