#include "novistoke/novikov.hpp"

#include <algorithm>
#include <stdexcept>

namespace novistoke {

NovikovScalar NovikovScalar::monomial(Rational exponent, FieldScalar coeff)
{
    if (exponent < 0)
        throw std::invalid_argument("NovikovScalar: negative exponent");
    NovikovScalar s;
    if (!coeff.is_zero())
        s.terms_.push_back({std::move(exponent), std::move(coeff)});
    return s;
}

NovikovScalar NovikovScalar::from_terms(std::vector<Term> terms)
{
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return a.first < b.first; });
    NovikovScalar s;
    for (auto& t : terms) {
        if (t.first < 0)
            throw std::invalid_argument("NovikovScalar: negative exponent");
        if (!s.terms_.empty() && s.terms_.back().first == t.first) {
            s.terms_.back().second += t.second;
            if (s.terms_.back().second.is_zero())
                s.terms_.pop_back();
        } else if (!t.second.is_zero()) {
            s.terms_.push_back(std::move(t));
        }
    }
    return s;
}

ExtRational NovikovScalar::valuation() const
{
    if (terms_.empty())
        return ExtRational::infinity();
    return terms_.front().first;
}

FieldScalar NovikovScalar::reduce_at_one() const
{
    FieldScalar sum;
    for (const auto& [_, c] : terms_)
        sum += c;
    return sum;
}

NovikovScalar operator+(const NovikovScalar& a, const NovikovScalar& b)
{
    NovikovScalar out;
    auto ia = a.terms_.begin(), ib = b.terms_.begin();
    while (ia != a.terms_.end() || ib != b.terms_.end()) {
        if (ib == b.terms_.end() || (ia != a.terms_.end() && ia->first < ib->first)) {
            out.terms_.push_back(*ia++);
        } else if (ia == a.terms_.end() || ib->first < ia->first) {
            out.terms_.push_back(*ib++);
        } else {
            FieldScalar c = ia->second + ib->second;
            if (!c.is_zero())
                out.terms_.push_back({ia->first, c});
            ++ia, ++ib;
        }
    }
    return out;
}

NovikovScalar operator-(const NovikovScalar& a)
{
    NovikovScalar out = a;
    for (auto& [_, c] : out.terms_)
        c = -c;
    return out;
}

NovikovScalar operator-(const NovikovScalar& a, const NovikovScalar& b) { return a + (-b); }

NovikovScalar operator*(const NovikovScalar& a, const NovikovScalar& b)
{
    std::vector<NovikovScalar::Term> prods;
    prods.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_)
            prods.push_back({ea + eb, ca * cb});
    return NovikovScalar::from_terms(std::move(prods));
}

std::string NovikovScalar::str() const
{
    if (terms_.empty())
        return "0";
    std::string out;
    for (size_t i = 0; i < terms_.size(); ++i) {
        if (i)
            out += " + ";
        out += "(" + terms_[i].second.str() + ")T^" + terms_[i].first.str();
    }
    return out;
}

}  // namespace novistoke
