#include "novistoke/irregular.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace novistoke {

namespace {

bool covers_equal(const SectorCover& a, const SectorCover& b)
{
    return a.arcs == b.arcs;
}

void require_same_arc(const IrregularConstant& a, const IrregularConstant& b)
{
    if (!(a.arc == b.arc))
        throw std::invalid_argument("irregular constants live on different arcs");
}

Matrix submatrix(const Matrix& m, const std::vector<std::size_t>& rows,
                 const std::vector<std::size_t>& cols)
{
    Matrix out(rows.size(), cols.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < cols.size(); ++c)
            out.at(r, c) = m.at(rows[r], cols[c]);
    return out;
}

// Slots of each distinct factor, classes ordered by first occurrence.
std::vector<std::pair<PuiseuxFactor, std::vector<std::size_t>>> factor_classes(
    const std::vector<PuiseuxFactor>& factors)
{
    std::vector<std::pair<PuiseuxFactor, std::vector<std::size_t>>> classes;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        auto it = std::find_if(classes.begin(), classes.end(),
                               [&](const auto& c) { return c.first == factors[i]; });
        if (it == classes.end())
            classes.push_back({factors[i], {i}});
        else
            it->second.push_back(i);
    }
    return classes;
}

std::vector<std::size_t> slots_of(const std::vector<PuiseuxFactor>& factors,
                                  const PuiseuxFactor& phi)
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < factors.size(); ++i)
        if (factors[i] == phi)
            out.push_back(i);
    return out;
}

}  // namespace

int hom_constant(const IrregularConstant& a, const IrregularConstant& b)
{
    require_same_arc(a, b);
    return dominance(a.factor - b.factor, a.arc) != DominanceVerdict::POS_DIVERGENT;
}

int hom_constant_ray(const PuiseuxFactor& a, const PuiseuxFactor& b, const Rational& theta)
{
    return classify_ray(a - b, theta) != DominanceVerdict::POS_DIVERGENT;
}

IrregularConstant tensor_constant(const IrregularConstant& a, const IrregularConstant& b)
{
    require_same_arc(a, b);
    return {a.factor + b.factor, a.arc};
}

IrregularConstant sheafhom_constant(const IrregularConstant& a, const IrregularConstant& b)
{
    require_same_arc(a, b);
    return {b.factor - a.factor, a.arc};
}

ShiftedConstant dual_constant(const IrregularConstant& a)
{
    return {{-a.factor, a.arc}, 2};
}

Barcode stalk(const IrregularConstant& a, const FieldScalar& x)
{
    auto [lo, hi] = argument_bounds(x);
    if (!a.arc.contains((lo + hi) / 2))
        throw std::invalid_argument("stalk: point outside the open sector");
    return Barcode({Interval::free(-real_part_at(a.factor, x))});
}

StokesLocalSystem::StokesLocalSystem(SectorCover cover, std::vector<PuiseuxFactor> factors,
                                     std::vector<Matrix> gluings)
    : cover_(std::move(cover)), factors_(std::move(factors)), gluings_(std::move(gluings))
{
    const std::size_t n = factors_.size();
    if (gluings_.size() != cover_.arcs.size())
        throw std::invalid_argument("StokesLocalSystem: one gluing per overlap required");
    for (std::size_t k = 0; k < gluings_.size(); ++k) {
        const Matrix& g = gluings_[k];
        if (g.rows() != n || g.cols() != n)
            throw std::invalid_argument("StokesLocalSystem: gluing shape mismatch");
        if (g.rank() != n)
            throw std::invalid_argument("StokesLocalSystem: gluing not invertible");
        SectorArc ov = cover_.overlap(k);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (!g.at(i, j).is_zero() &&
                    dominance(factors_[j] - factors_[i], ov) == DominanceVerdict::POS_DIVERGENT)
                    throw std::invalid_argument(
                        "StokesLocalSystem: gluing entry forbidden by dominance");
    }
}

StokesLocalSystem StokesLocalSystem::single(SectorCover cover, PuiseuxFactor factor)
{
    std::vector<Matrix> gluings(cover.arcs.size(), Matrix::identity(1));
    return StokesLocalSystem(std::move(cover), {std::move(factor)}, std::move(gluings));
}

StokesLocalSystem StokesLocalSystem::zero(SectorCover cover)
{
    std::vector<Matrix> gluings(cover.arcs.size(), Matrix(0, 0));
    return StokesLocalSystem(std::move(cover), {}, std::move(gluings));
}

Matrix StokesLocalSystem::monodromy() const
{
    Matrix m = Matrix::identity(rank());
    for (const auto& g : gluings_)
        m = g * m;
    return m;
}

StokesLocalSystem reglue(const StokesLocalSystem& sys, const SectorCover& cover)
{
    if (covers_equal(sys.cover(), cover))
        return sys;
    const std::size_t n_old = sys.cover().arcs.size();
    const std::size_t n_new = cover.arcs.size();

    // Angular positions of the old transitions (overlap midpoints).
    std::vector<Rational> pos(n_old);
    for (std::size_t k = 0; k < n_old; ++k) {
        SectorArc ov = sys.cover().overlap(k);
        pos[k] = mod_one((ov.start + ov.end) / 2);
    }
    // Reference point of each new arc: its midpoint, nudged off any transition.
    std::vector<Rational> ref(n_new);
    for (std::size_t j = 0; j < n_new; ++j) {
        const SectorArc& a = cover.arcs[j];
        Rational r = mod_one((a.start + a.end) / 2);
        while (std::find(pos.begin(), pos.end(), r) != pos.end())
            r = mod_one(r + (a.end - a.start) / 1000);
        ref[j] = r;
    }

    std::vector<Matrix> gluings(n_new);
    for (std::size_t j = 0; j < n_new; ++j) {
        Rational from = ref[j];
        Rational to = ref[(j + 1) % n_new];
        // Old transitions crossed going ccw from `from` to `to`, in order.
        std::vector<std::pair<Rational, std::size_t>> crossed;
        for (std::size_t k = 0; k < n_old; ++k) {
            Rational rel = mod_one(pos[k] - from);
            if (rel < mod_one(to - from))
                crossed.push_back({rel, k});
        }
        std::sort(crossed.begin(), crossed.end());
        Matrix g = Matrix::identity(sys.rank());
        for (const auto& [_, k] : crossed)
            g = sys.gluings()[k] * g;
        gluings[j] = std::move(g);
    }
    return StokesLocalSystem(cover, sys.factors(), std::move(gluings));
}

IrregularMorphism::IrregularMorphism(StokesLocalSystem source, StokesLocalSystem target,
                                     std::vector<Matrix> per_arc)
    : source_(std::move(source)), target_(std::move(target)), per_arc_(std::move(per_arc))
{
    if (!covers_equal(source_.cover(), target_.cover()))
        throw std::invalid_argument("IrregularMorphism: systems on different covers");
    const std::size_t n = source_.cover().arcs.size();
    if (per_arc_.size() != n)
        throw std::invalid_argument("IrregularMorphism: one matrix per arc required");
    for (std::size_t k = 0; k < n; ++k) {
        const Matrix& m = per_arc_[k];
        if (m.rows() != target_.rank() || m.cols() != source_.rank())
            throw std::invalid_argument("IrregularMorphism: matrix shape mismatch");
        const SectorArc& arc = source_.cover().arcs[k];
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j)
                if (!m.at(i, j).is_zero() &&
                    dominance(source_.factors()[j] - target_.factors()[i], arc) ==
                        DominanceVerdict::POS_DIVERGENT)
                    throw std::invalid_argument("IrregularMorphism: entry forbidden on its arc");
    }
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t k1 = (k + 1) % n;
        if (!(target_.gluings()[k] * per_arc_[k] == per_arc_[k1] * source_.gluings()[k]))
            throw std::invalid_argument("IrregularMorphism: gluing compatibility fails");
    }
}

IrregularMorphism IrregularMorphism::zero(StokesLocalSystem source, StokesLocalSystem target)
{
    std::vector<Matrix> per_arc(source.cover().arcs.size(),
                                Matrix(target.rank(), source.rank()));
    return IrregularMorphism(std::move(source), std::move(target), std::move(per_arc));
}

GlobalHom hom_global(const StokesLocalSystem& source, const StokesLocalSystem& target)
{
    const StokesLocalSystem* v = &source;
    const StokesLocalSystem* w = &target;
    StokesLocalSystem v_store = source, w_store = target;
    if (!covers_equal(source.cover(), target.cover())) {
        std::vector<PuiseuxFactor> all = source.factors();
        all.insert(all.end(), target.factors().begin(), target.factors().end());
        SectorCover merged = standard_cover(all);
        v_store = reglue(source, merged);
        w_store = reglue(target, merged);
        v = &v_store;
        w = &w_store;
    }
    const std::size_t n = v->cover().arcs.size();
    const std::size_t nv = v->rank(), nw = w->rank();

    // Variable indices for the permitted entries of each per-arc matrix.
    std::vector<std::vector<long>> var(n, std::vector<long>(nw * nv, -1));
    std::size_t nvars = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const SectorArc& arc = v->cover().arcs[k];
        for (std::size_t i = 0; i < nw; ++i)
            for (std::size_t j = 0; j < nv; ++j)
                if (dominance(v->factors()[j] - w->factors()[i], arc) !=
                    DominanceVerdict::POS_DIVERGENT)
                    var[k][i * nv + j] = static_cast<long>(nvars++);
    }

    // G^W_k M_k - M_{k+1} G^V_k = 0 for every overlap.
    Matrix sys(n * nw * nv, nvars);
    std::size_t row = 0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t k1 = (k + 1) % n;
        const Matrix& gw = w->gluings()[k];
        const Matrix& gv = v->gluings()[k];
        for (std::size_t i = 0; i < nw; ++i)
            for (std::size_t j = 0; j < nv; ++j) {
                for (std::size_t l = 0; l < nw; ++l)
                    if (var[k][l * nv + j] >= 0)
                        sys.at(row, var[k][l * nv + j]) += gw.at(i, l);
                for (std::size_t l = 0; l < nv; ++l)
                    if (var[k1][i * nv + l] >= 0)
                        sys.at(row, var[k1][i * nv + l]) -= gv.at(l, j);
                ++row;
            }
    }

    Matrix null = sys.kernel_basis();
    GlobalHom out;
    out.dimension = null.cols();
    for (std::size_t b = 0; b < null.cols(); ++b) {
        std::vector<Matrix> mats(n, Matrix(nw, nv));
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < nw; ++i)
                for (std::size_t j = 0; j < nv; ++j)
                    if (var[k][i * nv + j] >= 0)
                        mats[k].at(i, j) = null.at(var[k][i * nv + j], b);
        out.basis.push_back(std::move(mats));
    }
    return out;
}

namespace {

void require_class_diagonal(const IrregularMorphism& f)
{
    const auto& sf = f.source().factors();
    const auto& tf = f.target().factors();
    for (const auto& m : f.per_arc())
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j)
                if (!m.at(i, j).is_zero() && !(sf[j] == tf[i]))
                    throw std::invalid_argument(
                        "morphism not diagonal with respect to the formal types");
}

}  // namespace

StokesLocalSystem kernel_morphism(const IrregularMorphism& f)
{
    require_class_diagonal(f);
    const std::size_t n = f.source().cover().arcs.size();
    const std::size_t nv = f.source().rank();
    auto classes = factor_classes(f.source().factors());

    // Class-pure kernel bases K_k of each per-arc matrix, as full-size columns.
    std::vector<PuiseuxFactor> out_factors;
    std::vector<Matrix> bases(n, Matrix(nv, 0));
    for (const auto& [phi, src_slots] : classes) {
        auto tgt_slots = slots_of(f.target().factors(), phi);
        std::size_t dim = 0;
        for (std::size_t k = 0; k < n; ++k) {
            Matrix block = submatrix(f.per_arc()[k], tgt_slots, src_slots);
            Matrix kb = block.kernel_basis();
            if (k == 0)
                dim = kb.cols();
            else if (kb.cols() != dim)
                throw std::logic_error("kernel rank varies across arcs");
            Matrix full(nv, kb.cols());
            for (std::size_t r = 0; r < src_slots.size(); ++r)
                for (std::size_t c = 0; c < kb.cols(); ++c)
                    full.at(src_slots[r], c) = kb.at(r, c);
            bases[k] = Matrix::hstack(bases[k], full);
        }
        for (std::size_t d = 0; d < dim; ++d)
            out_factors.push_back(phi);
    }

    std::vector<Matrix> gluings(n);
    for (std::size_t k = 0; k < n; ++k)
        gluings[k] = solve(bases[(k + 1) % n], f.source().gluings()[k] * bases[k]);
    return StokesLocalSystem(f.source().cover(), std::move(out_factors), std::move(gluings));
}

StokesLocalSystem cokernel_morphism(const IrregularMorphism& f)
{
    require_class_diagonal(f);
    const std::size_t n = f.source().cover().arcs.size();
    const std::size_t nw = f.target().rank();
    auto classes = factor_classes(f.target().factors());

    // Class-pure quotient presentations: rows of L_k span the left null space
    // of each per-arc matrix; q_k = L_k presents coker(f_k).
    std::vector<PuiseuxFactor> out_factors;
    std::vector<Matrix> quots(n, Matrix(0, nw));
    for (const auto& [phi, tgt_slots] : classes) {
        auto src_slots = slots_of(f.source().factors(), phi);
        std::size_t dim = 0;
        for (std::size_t k = 0; k < n; ++k) {
            Matrix block = submatrix(f.per_arc()[k], tgt_slots, src_slots);
            Matrix lb = block.transpose().kernel_basis().transpose();
            if (k == 0)
                dim = lb.rows();
            else if (lb.rows() != dim)
                throw std::logic_error("cokernel rank varies across arcs");
            Matrix full(lb.rows(), nw);
            for (std::size_t r = 0; r < lb.rows(); ++r)
                for (std::size_t c = 0; c < tgt_slots.size(); ++c)
                    full.at(r, tgt_slots[c]) = lb.at(r, c);
            quots[k] = Matrix::vstack(quots[k], full);
        }
        for (std::size_t d = 0; d < dim; ++d)
            out_factors.push_back(phi);
    }

    std::vector<Matrix> gluings(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t k1 = (k + 1) % n;
        Matrix rhs = (quots[k1] * f.target().gluings()[k]).transpose();
        gluings[k] = solve(quots[k].transpose(), rhs).transpose();
    }
    return StokesLocalSystem(f.source().cover(), std::move(out_factors), std::move(gluings));
}

LocalSystemData forget(const StokesLocalSystem& v)
{
    return {v.rank(), v.monodromy()};
}

}  // namespace novistoke
