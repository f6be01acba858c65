#include "novistoke/sector.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <optional>

namespace novistoke {

namespace {

std::atomic<int> g_max_precision_bits{0};

int initial_precision_cap()
{
    if (const char* env = std::getenv("NOVISTOKE_MAX_PRECISION")) {
        int v = std::atoi(env);
        if (v > 0)
            return v;
    }
    return 4096;
}

BigInt floor_q(const Rational& q)
{
    BigInt n = numerator(q), d = denominator(q);
    BigInt f = n / d;
    if (n % d != 0 && n < 0)
        --f;
    return f;
}

BigInt ceil_q(const Rational& q) { return -floor_q(-q); }

BigInt lcm_big(const BigInt& a, const BigInt& b) { return a / gcd(a, b) * b; }

// arg(c) in turns when it is an exact multiple of 1/8 (axis or diagonal
// coefficient); nullopt otherwise. For Gaussian-rational c these are the only
// cases with rational argument (Niven).
std::optional<Rational> eighth_arg(const Rational& a, const Rational& b)
{
    if (b == 0)
        return Rational(a > 0 ? 0 : 1, a > 0 ? 1 : 2);
    if (a == 0)
        return Rational(b > 0 ? 1 : 3, 4);
    if (a == b)
        return Rational(a > 0 ? 1 : 5, 8);
    if (a == -b)
        return Rational(a > 0 ? 7 : 3, 8);
    return std::nullopt;
}

template <class F>
F to_float(const Rational& q)
{
    return F(numerator(q)) / F(denominator(q));
}

// Sign of a cos(2 pi t) + b sin(2 pi t) at one floating precision; nullopt if
// the value is smaller than the certified error margin.
template <class F>
std::optional<int> try_trig_sign(const Rational& a, const Rational& b, const Rational& t)
{
    const F two_pi = 2 * acos(F(-1));
    F psi = two_pi * to_float<F>(t);
    F v = to_float<F>(a) * cos(psi) + to_float<F>(b) * sin(psi);
    F scale = to_float<F>(abs(a) + abs(b)) + 1;
    F margin = scale * pow(F(10), 10 - static_cast<int>(std::numeric_limits<F>::digits10));
    if (v > margin)
        return 1;
    if (v < -margin)
        return -1;
    return std::nullopt;
}

using Float200 = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<200>>;
using Float600 = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<600>>;
using Float1200 = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<1200>>;

int escalating_trig_sign(const Rational& a, const Rational& b, const Rational& t)
{
    int cap = max_precision_bits();
    // Roughly 3.33 bits per decimal digit at each rung.
    if (cap >= 168)
        if (auto s = try_trig_sign<boost::multiprecision::cpp_bin_float_50>(a, b, t))
            return *s;
    if (cap >= 333)
        if (auto s = try_trig_sign<boost::multiprecision::cpp_bin_float_100>(a, b, t))
            return *s;
    if (cap >= 665)
        if (auto s = try_trig_sign<Float200>(a, b, t))
            return *s;
    if (cap >= 1994)
        if (auto s = try_trig_sign<Float600>(a, b, t))
            return *s;
    if (cap >= 3987)
        if (auto s = try_trig_sign<Float1200>(a, b, t))
            return *s;
    throw UndecidableSign();
}

}  // namespace

int max_precision_bits()
{
    int v = g_max_precision_bits.load();
    if (v == 0) {
        v = initial_precision_cap();
        g_max_precision_bits.store(v);
    }
    return v;
}

void set_max_precision_bits(int bits)
{
    if (bits <= 0)
        throw std::invalid_argument("precision cap must be positive");
    g_max_precision_bits.store(bits);
}

PuiseuxFactor::PuiseuxFactor(std::vector<Term> terms, unsigned ramification)
{
    std::sort(terms.begin(), terms.end(),
              [](const Term& x, const Term& y) { return x.first > y.first; });
    for (auto& t : terms) {
        if (t.first <= 0 || t.second.is_zero())
            continue;  // bounded terms and zero coefficients are dropped
        if (!terms_.empty() && terms_.back().first == t.first) {
            terms_.back().second += t.second;
            if (terms_.back().second.is_zero())
                terms_.pop_back();
        } else {
            terms_.push_back(std::move(t));
        }
    }
    BigInt lcm = 1;
    for (const auto& [q, _] : terms_)
        lcm = lcm_big(lcm, denominator(q));
    if (ramification == 0) {
        ramification_ = static_cast<unsigned>(lcm);
    } else {
        if (BigInt(ramification) % lcm != 0)
            throw std::invalid_argument("PuiseuxFactor: order denominators exceed ramification");
        ramification_ = ramification;
    }
}

PuiseuxFactor PuiseuxFactor::pole(Rational order, FieldScalar coeff)
{
    return PuiseuxFactor({{std::move(order), std::move(coeff)}});
}

PuiseuxFactor operator+(const PuiseuxFactor& a, const PuiseuxFactor& b)
{
    std::vector<PuiseuxFactor::Term> all = a.terms_;
    all.insert(all.end(), b.terms_.begin(), b.terms_.end());
    return PuiseuxFactor(std::move(all));
}

PuiseuxFactor operator-(const PuiseuxFactor& a)
{
    std::vector<PuiseuxFactor::Term> neg = a.terms_;
    for (auto& [_, c] : neg)
        c = -c;
    return PuiseuxFactor(std::move(neg));
}

PuiseuxFactor operator-(const PuiseuxFactor& a, const PuiseuxFactor& b) { return a + (-b); }

std::string PuiseuxFactor::str() const
{
    if (terms_.empty())
        return "0";
    std::string out;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (i)
            out += " + ";
        out += "(" + terms_[i].second.str() + ")z^-" + terms_[i].first.str();
    }
    return out;
}

PuiseuxFactor pullback_factor(const PuiseuxFactor& phi, unsigned r)
{
    if (r == 0)
        throw std::invalid_argument("pullback_factor: r must be positive");
    std::vector<PuiseuxFactor::Term> terms = phi.terms();
    for (auto& [q, _] : terms)
        q *= r;
    return PuiseuxFactor(std::move(terms));
}

SectorArc::SectorArc(Rational s, Rational e) : start(std::move(s)), end(std::move(e))
{
    if (!(start < end))
        throw std::invalid_argument("SectorArc: start must be < end");
    if (end - start > 1)
        throw std::invalid_argument("SectorArc: length exceeds a full turn");
}

bool SectorArc::closure_contains(const Rational& theta) const
{
    Rational t = mod_one(theta - start) + start;
    return t <= end || t - 1 >= start;
}

bool SectorArc::contains(const Rational& theta) const
{
    Rational t = mod_one(theta - start) + start;
    return (t > start && t < end) || (t - 1 > start && t - 1 < end);
}

std::string SectorArc::str() const { return "(" + start.str() + ", " + end.str() + ")"; }

const char* to_string(DominanceVerdict v)
{
    switch (v) {
        case DominanceVerdict::BOUNDED: return "BOUNDED";
        case DominanceVerdict::NEG_DIVERGENT: return "NEG_DIVERGENT";
        case DominanceVerdict::POS_DIVERGENT: return "POS_DIVERGENT";
        case DominanceVerdict::ZERO: return "ZERO";
    }
    return "?";
}

int trig_sign(const FieldScalar& c, const Rational& t)
{
    const Rational &a = c.re(), &b = c.im();
    if (a == 0 && b == 0)
        return 0;
    if (auto alpha = eighth_arg(a, b)) {
        // value = |c| cos(2 pi (t - alpha)); sign from the phase alone.
        Rational w = mod_one(t - *alpha);
        if (w == Rational(1, 4) || w == Rational(3, 4))
            return 0;
        return (w < Rational(1, 4) || w > Rational(3, 4)) ? 1 : -1;
    }
    // The value is a nonzero algebraic number here (a rational-turn phase with
    // non-eighth argument cannot produce an exact zero), so escalation ends.
    return escalating_trig_sign(a, b, t);
}

DominanceVerdict classify_ray(const PuiseuxFactor& phi, const Rational& theta)
{
    for (const auto& [q, c] : phi.terms()) {
        int s = trig_sign(c, q * theta);
        if (s > 0)
            return DominanceVerdict::POS_DIVERGENT;
        if (s < 0)
            return DominanceVerdict::NEG_DIVERGENT;
    }
    return phi.is_zero() ? DominanceVerdict::ZERO : DominanceVerdict::BOUNDED;
}

DominanceVerdict dominance(const PuiseuxFactor& phi, const SectorArc& arc)
{
    if (phi.is_zero())
        return DominanceVerdict::ZERO;
    const auto& [q, c] = phi.terms().front();
    const Rational &s = arc.start, &e = arc.end;

    auto alpha = eighth_arg(c.re(), c.im());
    if (!alpha) {
        // Leading cosine has no zero at any rational angle, so it keeps a
        // definite sign between samples spaced below the half-lobe width
        // 1/(2q); positivity anywhere on the closed arc shows at a sample.
        BigInt n = ceil_q(4 * q * (e - s));
        if (n < 1)
            n = 1;
        Rational step = (e - s) / Rational(n);
        for (BigInt j = 0; j <= n; ++j) {
            if (trig_sign(c, q * (s + Rational(j) * step)) > 0)
                return DominanceVerdict::POS_DIVERGENT;
        }
        return DominanceVerdict::NEG_DIVERGENT;
    }

    // Exact phase: zeros of the leading cosine at theta = (alpha + 1/4 + k/2)/q.
    std::vector<Rational> zeros;
    BigInt k_lo = ceil_q(2 * (q * s - *alpha) - Rational(1, 2));
    BigInt k_hi = floor_q(2 * (q * e - *alpha) - Rational(1, 2));
    for (BigInt k = k_lo; k <= k_hi; ++k)
        zeros.push_back((*alpha + Rational(1, 4) + Rational(k) / 2) / q);

    std::vector<Rational> pts;
    pts.push_back(s);
    pts.insert(pts.end(), zeros.begin(), zeros.end());
    pts.push_back(e);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        if (pts[i] == pts[i + 1])
            continue;
        Rational w = mod_one(q * (pts[i] + pts[i + 1]) / 2 - *alpha);
        if (w < Rational(1, 4) || w > Rational(3, 4))
            return DominanceVerdict::POS_DIVERGENT;
    }
    if (zeros.empty())
        return DominanceVerdict::NEG_DIVERGENT;

    bool bounded_ray = false;
    for (const auto& z : zeros) {
        switch (classify_ray(phi, z)) {
            case DominanceVerdict::POS_DIVERGENT:
                return DominanceVerdict::POS_DIVERGENT;
            case DominanceVerdict::NEG_DIVERGENT:
                break;
            default:
                // A bounded boundary ray does not obstruct uniform divergence
                // on closed subarcs of the open sector; interior rays do.
                if (z > s && z < e)
                    bounded_ray = true;
        }
    }
    return bounded_ray ? DominanceVerdict::BOUNDED : DominanceVerdict::NEG_DIVERGENT;
}

namespace {

// Certified rational enclosure of arg(c) / 2pi for a non-eighth coefficient.
std::pair<Rational, Rational> arg_enclosure(const FieldScalar& c)
{
    using F = boost::multiprecision::cpp_bin_float_100;
    F a = to_float<F>(c.re()), b = to_float<F>(c.im());
    F two_pi = 2 * acos(F(-1));
    F ang = atan2(b, a) / two_pi;
    Rational mid = static_cast<Rational>(static_cast<boost::multiprecision::cpp_rational>(ang));
    Rational err(BigInt(1), pow(BigInt(10), 60));
    return {mid - err, mid + err};
}

}  // namespace

StokesDirectionSet stokes_directions(const PuiseuxFactor& phi1, const PuiseuxFactor& phi2)
{
    PuiseuxFactor d = phi1 - phi2;
    if (d.is_zero())
        throw IdenticalFactors();
    const auto& [q, c] = d.terms().front();
    StokesDirectionSet out;
    out.leading_coeff = c;
    out.leading_order = q;

    auto alpha = eighth_arg(c.re(), c.im());
    Rational a_lo, a_hi;
    if (alpha) {
        a_lo = a_hi = *alpha;
    } else {
        std::tie(a_lo, a_hi) = arg_enclosure(c);
    }
    Rational a_mid = (a_lo + a_hi) / 2;

    // theta = (alpha + 1/4 + k/2)/q, enumerated for theta in [0, 1).
    BigInt k = ceil_q(-2 * a_mid - Rational(1, 2));
    while (true) {
        Rational mid = (a_mid + Rational(1, 4) + Rational(k) / 2) / q;
        if (mid >= 1)
            break;
        StokesDirection dir;
        dir.exact = alpha.has_value();
        dir.lo = (a_lo + Rational(1, 4) + Rational(k) / 2) / q;
        dir.hi = (a_hi + Rational(1, 4) + Rational(k) / 2) / q;
        dir.angle = mid;
        out.directions.push_back(std::move(dir));
        ++k;
    }
    std::sort(out.directions.begin(), out.directions.end(),
              [](const StokesDirection& x, const StokesDirection& y) { return x.lo < y.lo; });
    return out;
}

SectorArc SectorCover::overlap(std::size_t k) const
{
    const SectorArc& a = arcs[k];
    if (k + 1 < arcs.size())
        return SectorArc(arcs[k + 1].start, a.end);
    return SectorArc(arcs[0].start + 1, a.end);
}

namespace {

SectorArc normalized(Rational s, Rational e)
{
    Rational shift = Rational(floor_q(s));
    return SectorArc(s - shift, e - shift);
}

}  // namespace

SectorCover standard_cover(const std::vector<PuiseuxFactor>& factors)
{
    std::vector<Rational> cuts;
    for (std::size_t i = 0; i < factors.size(); ++i)
        for (std::size_t j = i + 1; j < factors.size(); ++j) {
            if (factors[i] == factors[j])
                continue;
            for (const auto& dir : stokes_directions(factors[i], factors[j]).directions)
                cuts.push_back(mod_one(dir.angle));
        }
    std::sort(cuts.begin(), cuts.end());
    Rational tol(BigInt(1), pow(BigInt(10), 30));
    std::vector<Rational> dedup;
    for (const auto& v : cuts)
        if (dedup.empty() || v - dedup.back() > tol)
            dedup.push_back(v);
    if (dedup.size() > 1 && dedup.front() + 1 - dedup.back() <= tol)
        dedup.pop_back();

    SectorCover cover;
    cover.cuts = dedup;
    const std::size_t m = dedup.size();
    if (m == 0) {
        cover.arcs = {SectorArc(Rational(0), Rational(9, 16)),
                      SectorArc(Rational(1, 2), Rational(17, 16))};
        return cover;
    }
    // One arc around each cut plus one arc spanning each inter-cut gap; the
    // gap arcs carry no Stokes direction and adjacent arcs overlap.
    for (std::size_t i = 0; i < m; ++i) {
        const Rational& c = dedup[i];
        Rational wrap_gap = dedup[0] + 1 - dedup[m - 1];
        Rational gap_prev = (i == 0 ? wrap_gap : Rational(dedup[i] - dedup[i - 1]));
        Rational gap_next = (i + 1 == m ? wrap_gap : Rational(dedup[i + 1] - dedup[i]));
        if (m == 1)
            gap_prev = gap_next = 1;
        cover.arcs.push_back(normalized(c - gap_prev / 4, c + gap_next / 4));
        Rational next = (i + 1 == m ? Rational(dedup[0] + 1) : dedup[i + 1]);
        cover.arcs.push_back(normalized(c + gap_next / 8, next - gap_next / 8));
    }
    std::sort(cover.arcs.begin(), cover.arcs.end(),
              [](const SectorArc& x, const SectorArc& y) { return x.start < y.start; });
    return cover;
}

bool cover_is_valid(const SectorCover& cover, const std::vector<Rational>& cuts)
{
    const auto& arcs = cover.arcs;
    const std::size_t n = arcs.size();
    if (n < 2)
        return false;
    for (std::size_t i = 0; i < n; ++i) {
        const SectorArc& cur = arcs[i];
        Rational next_start = i + 1 < n ? arcs[i + 1].start : arcs[0].start + 1;
        Rational next_end = i + 1 < n ? arcs[i + 1].end : arcs[0].end + 1;
        if (!(cur.end > next_start) || !(cur.end < next_end))
            return false;  // consecutive arcs must overlap in a proper open arc
        std::size_t inside = 0;
        for (const auto& cut : cuts)
            inside += cur.closure_contains(cut);
        if (inside > 1)
            return false;
    }
    return true;
}

std::pair<Rational, Rational> argument_bounds(const FieldScalar& z)
{
    if (z.is_zero())
        throw std::invalid_argument("argument_bounds: zero has no argument");
    if (auto alpha = eighth_arg(z.re(), z.im()))
        return {*alpha, *alpha};
    auto [lo, hi] = arg_enclosure(z);
    Rational shift = Rational(floor_q(lo));
    return {lo - shift, hi - shift};
}

Rational real_part_at(const PuiseuxFactor& phi, const FieldScalar& x)
{
    if (x.is_zero())
        throw std::invalid_argument("real_part_at: evaluation at the puncture");
    FieldScalar inv = FieldScalar(1) / x;
    Rational re = 0;
    for (const auto& [q, c] : phi.terms()) {
        if (denominator(q) != 1)
            throw std::invalid_argument("real_part_at: ramified factor; pull back first");
        BigInt n = numerator(q);
        FieldScalar w(1);
        for (BigInt i = 0; i < n; ++i)
            w *= inv;
        re += (c * w).re();
    }
    return re;
}

}  // namespace novistoke
