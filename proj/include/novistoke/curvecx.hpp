#pragma once

#include "novistoke/irregular.hpp"

#include <map>
#include <optional>
#include <vector>

namespace novistoke {

/// Summand kinds for constructible complexes on the pointed disk: extension by
/// zero and derived pushforward from the punctured disk, and skyscrapers at
/// the puncture.
enum class SummandKind { J_SHRIEK = 0, J_STAR = 1, SKYSCRAPER = 2 };

const char* to_string(SummandKind k);

struct Summand {
    int degree;
    SummandKind kind;
    std::optional<StokesLocalSystem> system;  // open kinds
    Barcode barcode;                          // skyscraper payload

    std::size_t rank() const;
};

/// A finite direct sum of shifted generators, canonically sorted; the zero
/// complex is the empty sum.
class CurveComplex {
public:
    CurveComplex() = default;
    explicit CurveComplex(std::vector<Summand> summands);

    static CurveComplex shriek(StokesLocalSystem sys, int degree);
    static CurveComplex star(StokesLocalSystem sys, int degree);
    static CurveComplex skyscraper(Barcode b, int degree);

    const std::vector<Summand>& summands() const { return summands_; }
    bool is_zero() const { return summands_.empty(); }
    CurveComplex direct_sum(const CurveComplex& other) const;

private:
    std::vector<Summand> summands_;
};

/// Dual local system: negated factors, inverse-transpose gluings.
StokesLocalSystem dual_system(const StokesLocalSystem& v);

CurveComplex verdier_dual(const CurveComplex& c);

/// Per-degree dimension of the support of the underlying cohomology sheaves;
/// a missing degree means the cohomology vanishes there.
struct SupportProfile {
    std::map<int, int> dims;  // degree -> 0 or 1

    std::optional<int> dim(int j) const
    {
        auto it = dims.find(j);
        return it == dims.end() ? std::nullopt : std::optional<int>(it->second);
    }
};

SupportProfile support_profile(const CurveComplex& c);

struct PerversityVerdict {
    bool perverse;
    std::optional<int> witness;  // first violating cohomological degree
};

/// Support conditions dim supp H^j <= -j for the complex and its dual.
PerversityVerdict is_perverse(const CurveComplex& c);

enum class TruncationSide { LE0, GE1 };

/// Perverse degree of one summand (each generator is perverse-pure).
int perverse_degree(const Summand& s);

CurveComplex truncate(const CurveComplex& c, TruncationSide side);

/// Ext dimensions Hom(a, b[n]) per degree n.
std::map<int, std::size_t> hom_complex(const CurveComplex& a, const CurveComplex& b);

/// A bounded cochain complex of finite-dimensional vector spaces; diffs[i]
/// maps degree lo+i to lo+i+1.
struct VectorComplex {
    int lo = 0;
    std::vector<std::size_t> dims;
    std::vector<Matrix> diffs;

    std::size_t dim_at(int degree) const;
    std::map<int, std::size_t> cohomology() const;
};

/// Reduced sections complex of the system near the puncture (Cech on the
/// cover): computes the stalk of the derived pushforward at 0.
VectorComplex stalk_complex(const StokesLocalSystem& v);

/// Reduced Cech hom complex on the punctured disk: H^0 is the global hom
/// space, H^1 the obstruction.
VectorComplex cech_hom_complex(const StokesLocalSystem& v, const StokesLocalSystem& w);

}  // namespace novistoke
