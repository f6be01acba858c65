#include "novistoke/curvecx.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace novistoke {

namespace {

int hi_degree(const VectorComplex& c)
{
    return c.lo + static_cast<int>(c.dims.size()) - 1;
}

Matrix diff_from(const VectorComplex& c, int degree)
{
    int i = degree - c.lo;
    if (i >= 0 && i + 1 < static_cast<int>(c.dims.size())) return c.diffs[i];
    return Matrix(c.dim_at(degree + 1), c.dim_at(degree));
}

/// Basis layout of the total hom complex Hom(A, B): degree m splits into
/// blocks Hom(A^p, B^{p+m}), ordered by p, row-major within a block.
struct HomLayout {
    const VectorComplex* a;
    const VectorComplex* b;

    std::size_t dim(int m) const
    {
        std::size_t total = 0;
        for (int p = a->lo; p <= hi_degree(*a); ++p) total += a->dim_at(p) * b->dim_at(p + m);
        return total;
    }

    std::size_t offset(int m, int p) const
    {
        std::size_t off = 0;
        for (int q = a->lo; q < p; ++q) off += a->dim_at(q) * b->dim_at(q + m);
        return off;
    }
};

VectorComplex hom_pt(const VectorComplex& a, const VectorComplex& b)
{
    if (a.dims.empty() || b.dims.empty()) return {};
    HomLayout lay{&a, &b};
    int mlo = b.lo - hi_degree(a);
    int mhi = hi_degree(b) - a.lo;
    VectorComplex h;
    h.lo = mlo;
    for (int m = mlo; m <= mhi; ++m) h.dims.push_back(lay.dim(m));
    for (int m = mlo; m < mhi; ++m) {
        Matrix d(lay.dim(m + 1), lay.dim(m));
        // -(-1)^m for the precomposition term of d(h) = D_B h - (-1)^m h D_A
        FieldScalar pre = (((m % 2) + 2) % 2 == 0) ? FieldScalar(-1) : FieldScalar(1);
        for (int p = a.lo; p <= hi_degree(a); ++p) {
            std::size_t acols = a.dim_at(p);
            if (acols == 0) continue;
            // postcomposition: block (m, p) -> block (m+1, p)
            if (b.dim_at(p + m) > 0 && b.dim_at(p + m + 1) > 0) {
                Matrix db = diff_from(b, p + m);
                for (std::size_t rb2 = 0; rb2 < db.rows(); ++rb2)
                    for (std::size_t rb = 0; rb < db.cols(); ++rb) {
                        if (db.at(rb2, rb) == FieldScalar(0)) continue;
                        for (std::size_t ca = 0; ca < acols; ++ca)
                            d.at(lay.offset(m + 1, p) + rb2 * acols + ca,
                                 lay.offset(m, p) + rb * acols + ca) = db.at(rb2, rb);
                    }
            }
            // precomposition: block (m, p+1) -> block (m+1, p)
            std::size_t acols2 = a.dim_at(p + 1);
            std::size_t brows = b.dim_at(p + m + 1);
            if (acols2 > 0 && brows > 0) {
                Matrix da = diff_from(a, p);
                for (std::size_t rb2 = 0; rb2 < brows; ++rb2)
                    for (std::size_t ca2 = 0; ca2 < acols2; ++ca2)
                        for (std::size_t ca = 0; ca < acols; ++ca) {
                            const FieldScalar& v = da.at(ca2, ca);
                            if (v == FieldScalar(0)) continue;
                            d.at(lay.offset(m + 1, p) + rb2 * acols + ca,
                                 lay.offset(m, p + 1) + rb2 * acols2 + ca2) =
                                d.at(lay.offset(m + 1, p) + rb2 * acols + ca,
                                     lay.offset(m, p + 1) + rb2 * acols2 + ca2) +
                                pre * v;
                        }
            }
        }
        h.diffs.push_back(std::move(d));
    }
    return h;
}

/// Mapping fibre of a degreewise chain map f : A -> B: F^n = A^n + B^{n-1},
/// d(x, y) = (d_A x, f(x) - d_B y).
struct ChainMap {
    const VectorComplex* a;
    const VectorComplex* b;
    std::vector<Matrix> comps;  // comps[i] : A^{a.lo+i} -> B^{a.lo+i}
};

Matrix comp_at(const ChainMap& f, int degree)
{
    int i = degree - f.a->lo;
    if (i >= 0 && i < static_cast<int>(f.comps.size())) return f.comps[i];
    return Matrix(f.b->dim_at(degree), f.a->dim_at(degree));
}

VectorComplex fiber(const ChainMap& f)
{
    const VectorComplex& a = *f.a;
    const VectorComplex& b = *f.b;
    if (a.dims.empty() && b.dims.empty()) return {};
    int lo = a.dims.empty() ? b.lo + 1 : (b.dims.empty() ? a.lo : std::min(a.lo, b.lo + 1));
    int hi = a.dims.empty() ? hi_degree(b) + 1
                            : (b.dims.empty() ? hi_degree(a)
                                              : std::max(hi_degree(a), hi_degree(b) + 1));
    VectorComplex out;
    out.lo = lo;
    for (int n = lo; n <= hi; ++n) out.dims.push_back(a.dim_at(n) + b.dim_at(n - 1));
    for (int n = lo; n < hi; ++n) {
        std::size_t ra = a.dim_at(n + 1), rb = b.dim_at(n);
        std::size_t ca = a.dim_at(n), cb = b.dim_at(n - 1);
        Matrix d(ra + rb, ca + cb);
        Matrix da = diff_from(a, n);
        for (std::size_t r = 0; r < ra; ++r)
            for (std::size_t c = 0; c < ca; ++c) d.at(r, c) = da.at(r, c);
        Matrix fn = comp_at(f, n);
        for (std::size_t r = 0; r < rb; ++r)
            for (std::size_t c = 0; c < ca; ++c) d.at(ra + r, c) = fn.at(r, c);
        Matrix db = diff_from(b, n - 1);
        for (std::size_t r = 0; r < rb; ++r)
            for (std::size_t c = 0; c < cb; ++c) d.at(ra + r, ca + c) = FieldScalar(0) - db.at(r, c);
        out.diffs.push_back(std::move(d));
    }
    return out;
}

/// Reduced section slots of a system: slot (k, i) survives on arc k (resp.
/// overlap k) when factor i does not diverge to +infinity there.
struct StalkData {
    VectorComplex cx;
    std::vector<std::vector<long>> idx0, idx1;  // [arc][factor] -> flat index or -1
    std::size_t dim0 = 0, dim1 = 0;
};

StalkData stalk_data(const StokesLocalSystem& v)
{
    std::size_t n = v.cover().size();
    std::size_t r = v.rank();
    StalkData s;
    s.idx0.assign(n, std::vector<long>(r, -1));
    s.idx1.assign(n, std::vector<long>(r, -1));
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < r; ++i)
            if (dominance(v.factors()[i], v.cover().arcs[k]) != DominanceVerdict::POS_DIVERGENT)
                s.idx0[k][i] = static_cast<long>(s.dim0++);
        for (std::size_t i = 0; i < r; ++i)
            if (dominance(v.factors()[i], v.cover().overlap(k)) != DominanceVerdict::POS_DIVERGENT)
                s.idx1[k][i] = static_cast<long>(s.dim1++);
    }
    Matrix d(s.dim1, s.dim0);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t kk = (k + 1) % n;
        for (std::size_t i = 0; i < r; ++i) {
            if (s.idx1[k][i] < 0) continue;
            std::size_t row = static_cast<std::size_t>(s.idx1[k][i]);
            for (std::size_t j = 0; j < r; ++j)
                if (s.idx0[k][j] >= 0)
                    d.at(row, static_cast<std::size_t>(s.idx0[k][j])) =
                        d.at(row, static_cast<std::size_t>(s.idx0[k][j])) +
                        v.gluings()[k].at(i, j);
            if (s.idx0[kk][i] >= 0)
                d.at(row, static_cast<std::size_t>(s.idx0[kk][i])) =
                    d.at(row, static_cast<std::size_t>(s.idx0[kk][i])) - FieldScalar(1);
        }
    }
    s.cx.lo = 0;
    s.cx.dims = {s.dim0, s.dim1};
    s.cx.diffs = {std::move(d)};
    return s;
}

/// Permitted-entry slots of the hom sheaf from v to w on arcs and overlaps.
struct CechData {
    VectorComplex cx;
    std::vector<std::vector<long>> idx0, idx1;  // [arc][i * rank(v) + j] -> flat index
    std::size_t dim0 = 0, dim1 = 0;
};

CechData cech_data(const StokesLocalSystem& v, const StokesLocalSystem& w)
{
    if (!(v.cover().arcs == w.cover().arcs))
        throw std::invalid_argument("hom complex requires a common cover");
    std::size_t n = v.cover().size();
    std::size_t rv = v.rank(), rw = w.rank();
    CechData c;
    c.idx0.assign(n, std::vector<long>(rw * rv, -1));
    c.idx1.assign(n, std::vector<long>(rw * rv, -1));
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < rw; ++i)
            for (std::size_t j = 0; j < rv; ++j) {
                if (dominance(v.factors()[j] - w.factors()[i], v.cover().arcs[k]) !=
                    DominanceVerdict::POS_DIVERGENT)
                    c.idx0[k][i * rv + j] = static_cast<long>(c.dim0++);
                if (dominance(v.factors()[j] - w.factors()[i], v.cover().overlap(k)) !=
                    DominanceVerdict::POS_DIVERGENT)
                    c.idx1[k][i * rv + j] = static_cast<long>(c.dim1++);
            }
    }
    Matrix d(c.dim1, c.dim0);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t kk = (k + 1) % n;
        for (std::size_t i = 0; i < rw; ++i)
            for (std::size_t j = 0; j < rv; ++j) {
                if (c.idx1[k][i * rv + j] < 0) continue;
                std::size_t row = static_cast<std::size_t>(c.idx1[k][i * rv + j]);
                // (G^W_k M_k)(i, j) - (M_{k+1} G^V_k)(i, j)
                for (std::size_t l = 0; l < rw; ++l)
                    if (c.idx0[k][l * rv + j] >= 0)
                        d.at(row, static_cast<std::size_t>(c.idx0[k][l * rv + j])) =
                            d.at(row, static_cast<std::size_t>(c.idx0[k][l * rv + j])) +
                            w.gluings()[k].at(i, l);
                for (std::size_t l = 0; l < rv; ++l)
                    if (c.idx0[kk][i * rv + l] >= 0)
                        d.at(row, static_cast<std::size_t>(c.idx0[kk][i * rv + l])) =
                            d.at(row, static_cast<std::size_t>(c.idx0[kk][i * rv + l])) -
                            v.gluings()[k].at(l, j);
            }
    }
    c.cx.lo = 0;
    c.cx.dims = {c.dim0, c.dim1};
    c.cx.diffs = {std::move(d)};
    return c;
}

VectorComplex barcode_point(const Barcode& b)
{
    std::size_t f = b.free_count();
    if (f == 0) return {};
    VectorComplex c;
    c.lo = 0;
    c.dims = {f};
    return c;
}

/// RHom(Rj_* V, j_! W) as the fibre of the stalk restriction map from the
/// open hom complex to Hom(sections(V), sections(W)).
VectorComplex star_to_shriek(const StokesLocalSystem& v, const StokesLocalSystem& w)
{
    CechData cu = cech_data(v, w);
    StalkData sv = stalk_data(v);
    StalkData sw = stalk_data(w);
    VectorComplex hs = hom_pt(sv.cx, sw.cx);
    HomLayout lay{&sv.cx, &sw.cx};
    std::size_t n = v.cover().size();
    std::size_t rv = v.rank(), rw = w.rank();

    ChainMap rho{&cu.cx, &hs, {}};
    Matrix rho0(hs.dim_at(0), cu.dim0);
    Matrix rho1(hs.dim_at(1), cu.dim1);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t kp = (k + n - 1) % n;
        for (std::size_t i = 0; i < rw; ++i)
            for (std::size_t j = 0; j < rv; ++j) {
                long a0 = cu.idx0[k][i * rv + j];
                if (a0 >= 0) {
                    // arc action of M_k
                    if (sw.idx0[k][i] >= 0 && sv.idx0[k][j] >= 0)
                        rho0.at(lay.offset(0, 0) +
                                    static_cast<std::size_t>(sw.idx0[k][i]) * sv.dim0 +
                                    static_cast<std::size_t>(sv.idx0[k][j]),
                                static_cast<std::size_t>(a0)) = FieldScalar(1);
                    // overlap k-1 carries the frame of arc k
                    if (sw.idx1[kp][i] >= 0 && sv.idx1[kp][j] >= 0)
                        rho0.at(lay.offset(0, 1) +
                                    static_cast<std::size_t>(sw.idx1[kp][i]) * sv.dim1 +
                                    static_cast<std::size_t>(sv.idx1[kp][j]),
                                static_cast<std::size_t>(a0)) = FieldScalar(1);
                }
                long a1 = cu.idx1[k][i * rv + j];
                if (a1 >= 0 && sw.idx1[k][i] >= 0 && sv.idx0[k][j] >= 0)
                    rho1.at(lay.offset(1, 0) +
                                static_cast<std::size_t>(sw.idx1[k][i]) * sv.dim0 +
                                static_cast<std::size_t>(sv.idx0[k][j]),
                            static_cast<std::size_t>(a1)) = FieldScalar(1);
            }
    }
    rho.comps = {std::move(rho0), std::move(rho1)};
    return fiber(rho);
}

bool is_open_kind(SummandKind k)
{
    return k == SummandKind::J_SHRIEK || k == SummandKind::J_STAR;
}

/// Ext dimensions between unshifted generators, by recollement adjunctions.
std::map<int, std::size_t> pair_ext(const Summand& x, const Summand& y)
{
    if (is_open_kind(x.kind) && is_open_kind(y.kind)) {
        if (x.kind == SummandKind::J_STAR && y.kind == SummandKind::J_SHRIEK)
            return star_to_shriek(*x.system, *y.system).cohomology();
        return cech_data(*x.system, *y.system).cx.cohomology();
    }
    if (x.kind == SummandKind::J_SHRIEK) return {};  // no stalk at the puncture
    if (x.kind == SummandKind::J_STAR) {
        // Hom(Rj_* V, i_* K) through the stalk of V
        return hom_pt(stalk_data(*x.system).cx, barcode_point(y.barcode)).cohomology();
    }
    // skyscraper source
    if (y.kind == SummandKind::J_STAR) return {};  // costalk of Rj_* vanishes
    if (y.kind == SummandKind::J_SHRIEK) {
        // costalk of j_! W is the shifted sections complex of W
        auto h = hom_pt(barcode_point(x.barcode), stalk_data(*y.system).cx).cohomology();
        std::map<int, std::size_t> out;
        for (const auto& [m, dim] : h) out[m + 1] = dim;
        return out;
    }
    ReducedHom rh = hom_reduced(x.barcode, y.barcode);
    if (rh.dimension == 0) return {};
    return {{0, rh.dimension}};
}

}  // namespace

const char* to_string(SummandKind k)
{
    switch (k) {
        case SummandKind::J_SHRIEK: return "j_shriek";
        case SummandKind::J_STAR: return "j_star";
        default: return "skyscraper";
    }
}

std::size_t Summand::rank() const
{
    return kind == SummandKind::SKYSCRAPER ? barcode.size() : system->rank();
}

CurveComplex::CurveComplex(std::vector<Summand> summands)
{
    for (auto& s : summands) {
        if (is_open_kind(s.kind)) {
            if (!s.system) throw std::invalid_argument("open summand requires a system");
            if (s.system->rank() == 0) continue;
            s.barcode = Barcode();
        } else if (s.barcode.is_zero()) {
            continue;
        } else {
            s.system.reset();
        }
        summands_.push_back(std::move(s));
    }
    std::stable_sort(summands_.begin(), summands_.end(), [](const Summand& a, const Summand& b) {
        if (a.degree != b.degree) return a.degree < b.degree;
        return static_cast<int>(a.kind) < static_cast<int>(b.kind);
    });
    // skyscrapers at a common degree are one summand with the merged barcode
    std::vector<Summand> merged;
    for (auto& s : summands_) {
        if (!merged.empty() && s.kind == SummandKind::SKYSCRAPER &&
            merged.back().kind == SummandKind::SKYSCRAPER && merged.back().degree == s.degree) {
            merged.back().barcode = merged.back().barcode.direct_sum(s.barcode);
        } else {
            merged.push_back(std::move(s));
        }
    }
    summands_ = std::move(merged);
}

CurveComplex CurveComplex::shriek(StokesLocalSystem sys, int degree)
{
    return CurveComplex({{degree, SummandKind::J_SHRIEK, std::move(sys), Barcode()}});
}

CurveComplex CurveComplex::star(StokesLocalSystem sys, int degree)
{
    return CurveComplex({{degree, SummandKind::J_STAR, std::move(sys), Barcode()}});
}

CurveComplex CurveComplex::skyscraper(Barcode b, int degree)
{
    return CurveComplex({{degree, SummandKind::SKYSCRAPER, std::nullopt, std::move(b)}});
}

CurveComplex CurveComplex::direct_sum(const CurveComplex& other) const
{
    std::vector<Summand> all = summands_;
    all.insert(all.end(), other.summands_.begin(), other.summands_.end());
    return CurveComplex(std::move(all));
}

StokesLocalSystem dual_system(const StokesLocalSystem& v)
{
    std::vector<PuiseuxFactor> factors;
    factors.reserve(v.rank());
    for (const auto& f : v.factors()) factors.push_back(-f);
    std::vector<Matrix> gluings;
    gluings.reserve(v.gluings().size());
    for (const auto& g : v.gluings()) gluings.push_back(g.inverse().transpose());
    return StokesLocalSystem(v.cover(), std::move(factors), std::move(gluings));
}

CurveComplex verdier_dual(const CurveComplex& c)
{
    std::vector<Summand> out;
    for (const auto& s : c.summands()) {
        if (s.kind == SummandKind::J_SHRIEK) {
            out.push_back({-s.degree - 2, SummandKind::J_STAR, dual_system(*s.system), Barcode()});
        } else if (s.kind == SummandKind::J_STAR) {
            out.push_back(
                {-s.degree - 2, SummandKind::J_SHRIEK, dual_system(*s.system), Barcode()});
        } else {
            auto [frees, torsions] = point_dual(s.barcode);
            if (!frees.is_zero())
                out.push_back({-s.degree, SummandKind::SKYSCRAPER, std::nullopt, frees});
            if (!torsions.is_zero())
                out.push_back({-s.degree + 1, SummandKind::SKYSCRAPER, std::nullopt, torsions});
        }
    }
    return CurveComplex(std::move(out));
}

SupportProfile support_profile(const CurveComplex& c)
{
    SupportProfile p;
    auto raise = [&p](int degree, int dim) {
        auto it = p.dims.find(degree);
        if (it == p.dims.end())
            p.dims[degree] = dim;
        else
            it->second = std::max(it->second, dim);
    };
    for (const auto& s : c.summands()) {
        if (is_open_kind(s.kind)) {
            raise(s.degree, 1);
            if (s.kind == SummandKind::J_STAR) {
                StalkData sd = stalk_data(*s.system);
                std::size_t h1 = sd.dim1 - sd.cx.diffs[0].rank();
                if (h1 > 0) raise(s.degree + 1, 0);
            }
        } else if (s.barcode.free_count() > 0) {
            raise(s.degree, 0);
        }
    }
    return p;
}

PerversityVerdict is_perverse(const CurveComplex& c)
{
    PerversityVerdict v{true, std::nullopt};
    auto check = [&v](const SupportProfile& p) {
        for (const auto& [j, dim] : p.dims)
            if (dim > -j && (!v.witness || j < *v.witness)) {
                v.perverse = false;
                v.witness = j;
            }
    };
    check(support_profile(c));
    check(support_profile(verdier_dual(c)));
    return v;
}

int perverse_degree(const Summand& s)
{
    return s.kind == SummandKind::SKYSCRAPER ? s.degree : s.degree + 1;
}

CurveComplex truncate(const CurveComplex& c, TruncationSide side)
{
    std::vector<Summand> out;
    for (const auto& s : c.summands()) {
        int p = perverse_degree(s);
        if ((side == TruncationSide::LE0) == (p <= 0)) out.push_back(s);
    }
    return CurveComplex(std::move(out));
}

std::map<int, std::size_t> hom_complex(const CurveComplex& a, const CurveComplex& b)
{
    std::vector<Summand> xs = a.summands(), ys = b.summands();

    // put every open summand on one cover
    std::vector<const StokesLocalSystem*> systems;
    std::vector<PuiseuxFactor> all_factors;
    for (const auto* side : {&xs, &ys})
        for (const auto& s : *side)
            if (s.system) {
                systems.push_back(&*s.system);
                all_factors.insert(all_factors.end(), s.system->factors().begin(),
                                   s.system->factors().end());
            }
    bool same = true;
    for (const auto* s : systems)
        if (!(s->cover().arcs == systems.front()->cover().arcs)) same = false;
    if (!systems.empty() && !same) {
        SectorCover common = standard_cover(all_factors);
        for (auto* side : {&xs, &ys})
            for (auto& s : *side)
                if (s.system) s.system = reglue(*s.system, common);
    }

    std::map<int, std::size_t> acc;
    for (const auto& x : xs)
        for (const auto& y : ys)
            for (const auto& [m, dim] : pair_ext(x, y)) {
                if (dim == 0) continue;
                acc[m - x.degree + y.degree] += dim;
            }
    return acc;
}

std::size_t VectorComplex::dim_at(int degree) const
{
    int i = degree - lo;
    if (i < 0 || i >= static_cast<int>(dims.size())) return 0;
    return dims[static_cast<std::size_t>(i)];
}

std::map<int, std::size_t> VectorComplex::cohomology() const
{
    std::map<int, std::size_t> h;
    for (std::size_t i = 0; i < dims.size(); ++i) {
        int degree = lo + static_cast<int>(i);
        std::size_t cut = 0;
        if (i + 1 <= diffs.size() && i < diffs.size()) cut += diffs[i].rank();
        if (i >= 1 && i - 1 < diffs.size()) cut += diffs[i - 1].rank();
        if (dims[i] > cut) h[degree] = dims[i] - cut;
    }
    return h;
}

VectorComplex stalk_complex(const StokesLocalSystem& v)
{
    return stalk_data(v).cx;
}

VectorComplex cech_hom_complex(const StokesLocalSystem& v, const StokesLocalSystem& w)
{
    return cech_data(v, w).cx;
}

}  // namespace novistoke
