#include "novistoke/barcode.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace novistoke {

Interval Interval::torsion(Rational birth, Rational length)
{
    if (length <= 0)
        throw std::invalid_argument("Interval: torsion length must be positive");
    return {std::move(birth), ExtRational(std::move(length))};
}

bool operator<(const Interval& a, const Interval& b)
{
    if (a.birth != b.birth)
        return a.birth < b.birth;
    return a.length < b.length;
}

std::string Interval::str() const
{
    return "[" + birth.str() + ", " + (is_free() ? "inf" : Rational(birth + length.value()).str()) + ")";
}

Barcode::Barcode(std::vector<Interval> intervals) : intervals_(std::move(intervals))
{
    for (const auto& iv : intervals_)
        if (iv.length.is_finite() && iv.length.value() <= 0)
            throw std::invalid_argument("Barcode: nonpositive interval length");
    std::sort(intervals_.begin(), intervals_.end());
}

std::size_t Barcode::free_count() const
{
    std::size_t n = 0;
    for (const auto& iv : intervals_)
        n += iv.is_free();
    return n;
}

Barcode Barcode::direct_sum(const Barcode& other) const
{
    std::vector<Interval> all = intervals_;
    all.insert(all.end(), other.intervals_.begin(), other.intervals_.end());
    return Barcode(std::move(all));
}

std::string Barcode::str() const
{
    if (intervals_.empty())
        return "0";
    std::string out;
    for (size_t i = 0; i < intervals_.size(); ++i)
        out += (i ? " + " : "") + intervals_[i].str();
    return out;
}

int interval_hom_dim(const Interval& src, const Interval& tgt, const Rational& degree)
{
    // The generator of src sits in grade src.birth and lands in grade
    // src.birth + degree of tgt; it must hit a nonzero graded piece and its
    // relation T^{src.length} must be satisfied in the target.
    Rational landing = src.birth + degree;
    if (landing < tgt.birth)
        return 0;
    if (tgt.length.is_finite() && landing >= tgt.birth + tgt.length.value())
        return 0;
    if (src.length.is_finite()) {
        ExtRational src_relation = ExtRational(landing + src.length.value());
        if (src_relation < tgt.end())
            return 0;  // torsion relation maps to a nonzero element
        return 1;
    }
    return 1;
}

std::vector<HomBasisElement> hom_degree(const Barcode& source, const Barcode& target,
                                        const Rational& degree)
{
    std::vector<HomBasisElement> basis;
    for (std::size_t i = 0; i < source.size(); ++i)
        for (std::size_t j = 0; j < target.size(); ++j)
            if (interval_hom_dim(source.intervals()[i], target.intervals()[j], degree))
                basis.push_back({i, j});
    return basis;
}

ReducedHom hom_reduced(const Barcode& source, const Barcode& target)
{
    // A class survives tensoring with k iff T^a f != 0 for every a, i.e. the
    // interval pair supports homs in unbounded degrees. That happens exactly
    // for free-to-free pairs; all torsion components are eventually killed.
    ReducedHom out{0, {}};
    for (std::size_t i = 0; i < source.size(); ++i) {
        if (!source.intervals()[i].is_free())
            continue;
        for (std::size_t j = 0; j < target.size(); ++j) {
            if (!target.intervals()[j].is_free())
                continue;
            out.basis.push_back({i, j});
        }
    }
    out.dimension = out.basis.size();
    return out;
}

GradedMorphism::GradedMorphism(Barcode source, Barcode target, Rational degree, Matrix coefficients)
    : source_(std::move(source)),
      target_(std::move(target)),
      degree_(std::move(degree)),
      coefficients_(std::move(coefficients))
{
    if (coefficients_.rows() != target_.size() || coefficients_.cols() != source_.size())
        throw std::invalid_argument("GradedMorphism: coefficient matrix shape mismatch");
    for (std::size_t j = 0; j < target_.size(); ++j)
        for (std::size_t i = 0; i < source_.size(); ++i)
            if (!coefficients_.at(j, i).is_zero() &&
                !interval_hom_dim(source_.intervals()[i], target_.intervals()[j], degree_))
                throw std::invalid_argument("GradedMorphism: entry not supported by interval hom");
}

GradedMorphism GradedMorphism::shifted(const Rational& a) const
{
    if (a < 0)
        throw std::invalid_argument("GradedMorphism: shift must be nonnegative");
    Rational d = degree_ + a;
    Matrix m = coefficients_;
    for (std::size_t j = 0; j < target_.size(); ++j)
        for (std::size_t i = 0; i < source_.size(); ++i)
            if (!interval_hom_dim(source_.intervals()[i], target_.intervals()[j], d))
                m.at(j, i) = FieldScalar(0);
    return GradedMorphism(source_, target_, d, std::move(m));
}

namespace {

// Pointwise evaluation: the matrix of f_t : M_t -> N_{t+d} in the bases of
// intervals alive at the respective grades, padded by zero columns/rows for
// dead intervals (full interval-indexed shape keeps indices aligned).
Matrix morphism_at(const GradedMorphism& f, const Rational& t)
{
    const auto& src = f.source().intervals();
    const auto& tgt = f.target().intervals();
    Matrix m(tgt.size(), src.size());
    Rational landing = t + f.degree();
    for (std::size_t i = 0; i < src.size(); ++i) {
        if (!src[i].alive_at(t))
            continue;
        for (std::size_t j = 0; j < tgt.size(); ++j) {
            if (!tgt[j].alive_at(landing))
                continue;
            m.at(j, i) = f.coefficients().at(j, i);
        }
    }
    return m;
}

// Structure map of an interval direct sum from grade s to grade t >= s, as a
// 0/1 diagonal matrix in the full interval-indexed shape.
Matrix structure_map(const std::vector<Interval>& ivs, const Rational& s, const Rational& t)
{
    Matrix m(ivs.size(), ivs.size());
    for (std::size_t i = 0; i < ivs.size(); ++i)
        if (ivs[i].alive_at(s) && ivs[i].alive_at(t))
            m.at(i, i) = FieldScalar(1);
    return m;
}

// Reconstruct the barcode of a persistence module given a callback computing
// rank(K_s -> K_t) and the sorted grid of candidate critical grades.
Barcode from_rank_invariant(const std::vector<Rational>& grid,
                            const std::function<std::size_t(const Rational&, const Rational&)>& rank)
{
    std::vector<Interval> out;
    if (grid.empty())
        return Barcode{};
    std::size_t n = grid.size();
    // Probe points: before[p] is strictly between grid[p-1] and grid[p].
    std::vector<Rational> before(n);
    before[0] = grid[0] - 1;
    for (std::size_t p = 1; p < n; ++p)
        before[p] = (grid[p - 1] + grid[p]) / 2;
    Rational beyond = grid[n - 1] + 1;

    for (std::size_t p = 0; p < n; ++p) {
        // Free intervals born at grid[p].
        std::size_t free_mult =
            rank(grid[p], beyond) - rank(before[p], beyond);
        for (std::size_t k = 0; k < free_mult; ++k)
            out.push_back(Interval::free(grid[p]));
        // Torsion intervals [grid[p], grid[q]).
        for (std::size_t q = p + 1; q < n; ++q) {
            long long mult = static_cast<long long>(rank(grid[p], before[q])) -
                             static_cast<long long>(rank(before[p], before[q])) -
                             static_cast<long long>(rank(grid[p], grid[q])) +
                             static_cast<long long>(rank(before[p], grid[q]));
            for (long long k = 0; k < mult; ++k)
                out.push_back(Interval::torsion(grid[p], grid[q] - grid[p]));
        }
    }
    return Barcode(std::move(out));
}

std::vector<Rational> sorted_unique(std::set<Rational> s)
{
    return {s.begin(), s.end()};
}

}  // namespace

Barcode kernel(const GradedMorphism& f)
{
    // K_t = ker(f_t : M_t -> N_{t+d}); rank invariant of K determines its
    // interval decomposition.
    std::set<Rational> grades;
    for (const auto& iv : f.source().intervals()) {
        grades.insert(iv.birth);
        if (!iv.is_free())
            grades.insert(iv.birth + iv.length.value());
    }
    for (const auto& iv : f.target().intervals()) {
        grades.insert(iv.birth - f.degree());
        if (!iv.is_free())
            grades.insert(iv.birth + iv.length.value() - f.degree());
    }
    auto grid = sorted_unique(std::move(grades));

    auto rank_st = [&f](const Rational& s, const Rational& t) -> std::size_t {
        Matrix ks = morphism_at(f, s).kernel_basis();
        // Columns of ks use the full interval-indexed shape, but only alive
        // slots can be nonzero; restrict the structure map and compose.
        Matrix sigma = structure_map(f.source().intervals(), s, t);
        Matrix moved = sigma * ks;
        // Image lands in ker f_t automatically; its rank is what we need.
        return moved.rank();
    };
    return from_rank_invariant(grid, rank_st);
}

Barcode cokernel(const GradedMorphism& f)
{
    // C_t = N_t / im(f_{t-d}), graded by the target's own grading.
    std::set<Rational> grades;
    for (const auto& iv : f.target().intervals()) {
        grades.insert(iv.birth);
        if (!iv.is_free())
            grades.insert(iv.birth + iv.length.value());
    }
    for (const auto& iv : f.source().intervals()) {
        grades.insert(iv.birth + f.degree());
        if (!iv.is_free())
            grades.insert(iv.birth + iv.length.value() + f.degree());
    }
    auto grid = sorted_unique(std::move(grades));

    const auto& tgt = f.target().intervals();
    auto rank_st = [&](const Rational& s, const Rational& t) -> std::size_t {
        // rank(C_s -> C_t) = dim((sigma(N_s) + im f_{t-d}) / im f_{t-d})
        //                  = rank [sigma | im] - rank im.
        Matrix sigma = structure_map(tgt, s, t);
        Matrix im_t = morphism_at(f, t - f.degree());
        return Matrix::hstack(sigma, im_t).rank() - im_t.rank();
    };
    return from_rank_invariant(grid, rank_st);
}

Interval tensor_intervals(const Interval& a, const Interval& b)
{
    Rational birth = a.birth + b.birth;
    if (a.is_free() && b.is_free())
        return Interval::free(birth);
    ExtRational len = a.length < b.length ? a.length : b.length;
    return Interval::torsion(birth, len.value());
}

Barcode tensor(const Barcode& a, const Barcode& b)
{
    std::vector<Interval> out;
    out.reserve(a.size() * b.size());
    for (const auto& ia : a.intervals())
        for (const auto& ib : b.intervals())
            out.push_back(tensor_intervals(ia, ib));
    return Barcode(std::move(out));
}

std::pair<Barcode, Barcode> point_dual(const Barcode& b)
{
    std::vector<Interval> deg0, deg1;
    for (const auto& iv : b.intervals()) {
        if (iv.is_free())
            deg0.push_back(Interval::free(-iv.birth));
        else
            deg1.push_back(Interval::torsion(-iv.birth - iv.length.value(), iv.length.value()));
    }
    return {Barcode(std::move(deg0)), Barcode(std::move(deg1))};
}

}  // namespace novistoke
