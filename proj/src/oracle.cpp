#include "novistoke/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace novistoke {

namespace {

double to_double(const Rational& q)
{
    return q.convert_to<double>();
}

// Value plus the summed term magnitudes; a sample whose value is tiny
// relative to the magnitudes lost its leading digits to cancellation.
double real_part_sample(const PuiseuxFactor& phi, double r, double theta_turns, double& magnitude)
{
    double v = 0;
    magnitude = 0;
    for (const auto& [order, coeff] : phi.terms()) {
        double q = to_double(order);
        double ang = 2.0 * M_PI * q * theta_turns;
        double term = std::pow(r, -q) *
             (to_double(coeff.re()) * std::cos(ang) + to_double(coeff.im()) * std::sin(ang));
        magnitude += std::pow(r, -q) * (std::abs(to_double(coeff.re())) + std::abs(to_double(coeff.im())));
        v += term;
    }
    return v;
}

}  // namespace

OracleEstimate oracle_dominance(const PuiseuxFactor& phi, const SectorArc& arc, std::size_t grid)
{
    if (phi.is_zero()) return {DominanceVerdict::ZERO, true, 0.0};
    if (grid == 0) grid = 1;
    double s = to_double(arc.start), e = to_double(arc.end);
    std::vector<double> maxima;
    bool tainted = false;
    for (int k = 1; k <= 8; ++k) {
        double r = std::pow(10.0, -k);
        double m = -HUGE_VAL;
        for (std::size_t j = 0; j <= grid; ++j) {
            double theta = s + (e - s) * static_cast<double>(j) / static_cast<double>(grid);
            double magnitude = 0;
            double v = real_part_sample(phi, r, theta, magnitude);
            if (k == 8 && std::abs(v) < 1e-9 * magnitude) tainted = true;
            m = std::max(m, v);
        }
        maxima.push_back(m);
    }
    double m7 = maxima[6], m8 = maxima[7];
    bool confident = !tainted;
    if (m8 > 1e4 && m8 >= 5.0 * std::max(m7, 1.0))
        return {DominanceVerdict::POS_DIVERGENT, confident, m8};
    if (m8 < -1e4 && m8 <= 5.0 * std::min(m7, -1.0))
        return {DominanceVerdict::NEG_DIVERGENT, confident, m8};
    if (std::abs(m8) < 1e2 && std::abs(m8 - m7) < 1.0)
        return {DominanceVerdict::BOUNDED, confident, m8};
    return {DominanceVerdict::BOUNDED, false, m8};
}

StokesDiagram stokes_diagram(const std::vector<PuiseuxFactor>& factors)
{
    StokesDiagram d;
    std::vector<Rational> angles;
    for (std::size_t i = 0; i < factors.size(); ++i)
        for (std::size_t j = i + 1; j < factors.size(); ++j) {
            if (factors[i] == factors[j]) continue;
            d.pairs.emplace_back(i, j);
            for (const auto& dir : stokes_directions(factors[i], factors[j]).directions)
                angles.push_back(mod_one(dir.angle));
        }
    std::sort(angles.begin(), angles.end());
    Rational tol(BigInt(1), pow(BigInt(10), 30));
    for (const auto& a : angles)
        if (d.directions.empty() || a - d.directions.back() > tol) d.directions.push_back(a);
    if (d.directions.size() > 1 && d.directions.front() + 1 - d.directions.back() <= tol)
        d.directions.pop_back();

    const std::size_t m = d.directions.size();
    if (m == 0) {
        d.arcs.emplace_back(Rational(0), Rational(1));
    } else if (m == 1) {
        d.arcs.emplace_back(d.directions[0], d.directions[0] + 1);
    } else {
        for (std::size_t i = 0; i < m; ++i) {
            Rational next = i + 1 < m ? d.directions[i + 1] : Rational(d.directions[0] + 1);
            d.arcs.emplace_back(d.directions[i], next);
        }
    }
    for (const auto& [i, j] : d.pairs) {
        std::vector<int> row;
        for (const auto& arc : d.arcs) {
            SectorArc inner(arc.start + arc.length() / 8, arc.end - arc.length() / 8);
            switch (dominance(factors[i] - factors[j], inner)) {
                case DominanceVerdict::POS_DIVERGENT: row.push_back(1); break;
                case DominanceVerdict::NEG_DIVERGENT: row.push_back(-1); break;
                default: row.push_back(0); break;
            }
        }
        d.signs.push_back(std::move(row));
    }
    return d;
}

std::string diagram_text(const StokesDiagram& d, const std::vector<PuiseuxFactor>& factors)
{
    std::ostringstream out;
    out << "directions:";
    if (d.directions.empty()) out << " (none)";
    for (const auto& a : d.directions) out << " " << a.str();
    out << "\n";

    std::vector<std::string> arc_labels;
    std::size_t width = 0;
    for (const auto& arc : d.arcs) {
        arc_labels.push_back(arc.str());
        width = std::max(width, arc_labels.back().size());
    }
    for (std::size_t p = 0; p < d.pairs.size(); ++p) {
        out << "pair " << factors[d.pairs[p].first].str() << " vs "
            << factors[d.pairs[p].second].str() << "\n";
        for (std::size_t a = 0; a < d.arcs.size(); ++a) {
            const char* sign = d.signs[p][a] > 0 ? "+" : (d.signs[p][a] < 0 ? "-" : "0");
            out << "  " << std::left << std::setw(static_cast<int>(width)) << arc_labels[a]
                << "  " << sign << "\n";
        }
    }
    return out.str();
}

}  // namespace novistoke
