#pragma once

#include "novistoke/sector.hpp"

#include <cstddef>
#include <vector>

namespace novistoke {

/// Floating-point estimate of the dominance classification, by sampling
/// Re(phi) on a theta grid at radii 10^-1 .. 10^-8 and comparing the last two
/// decades. The trend is called unambiguous when the final maximum exceeds
/// 10^4 in magnitude and grew by at least a factor of 5 over the last decade
/// (divergent), or moved by less than 1 while staying below 10^2 (bounded).
/// Confidence is withdrawn when any final-radius sample loses more than nine
/// leading digits to cancellation (rays where the dominant cosine vanishes
/// exactly; rounding noise there is amplified by r^-q).
struct OracleEstimate {
    DominanceVerdict verdict;
    bool confident;
    double last_max;  // max over the grid at r = 10^-8
};

OracleEstimate oracle_dominance(const PuiseuxFactor& phi, const SectorArc& arc,
                                std::size_t grid = 64);

/// Union of the pairwise Stokes directions of a factor set, with the sign of
/// Re(factor i - factor j) on each inter-direction arc.
struct StokesDiagram {
    std::vector<Rational> directions;  // sorted, turns in [0, 1)
    std::vector<SectorArc> arcs;       // between consecutive directions; full circle if none
    std::vector<std::pair<std::size_t, std::size_t>> pairs;  // distinct factor index pairs
    std::vector<std::vector<int>> signs;  // [pair][arc]: +1 POS, -1 NEG, 0 otherwise
};

StokesDiagram stokes_diagram(const std::vector<PuiseuxFactor>& factors);

/// Aligned text rendering of the diagram.
std::string diagram_text(const StokesDiagram& d, const std::vector<PuiseuxFactor>& factors);

}  // namespace novistoke
