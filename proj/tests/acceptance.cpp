// Acceptance gate: one pass/fail line per criterion, nonzero exit on failure.
// Usage: acceptance <scenario-dir>

#include "novistoke/scenario.hpp"

#include "corpus.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace novistoke;

namespace {

std::string g_scenario_dir;

struct Criterion {
    int number;
    const char* description;
    double limit_seconds;
    std::function<bool()> run;
};

bool check(bool ok, const char* what)
{
    if (!ok) std::cerr << "  detail: " << what << "\n";
    return ok;
}

// ---- criterion 1 --------------------------------------------------------

bool ray_counterexample()
{
    PuiseuxFactor invx = PuiseuxFactor::pole(1);
    PuiseuxFactor invx2 = PuiseuxFactor::pole(2);
    if (!check(hom_constant_ray(invx2, invx, Rational(0)) == 0, "full-ray hom not zero"))
        return false;
    // on a truncated ray the singularity is gone and exactly one reduced class
    // survives: compare stalks at sample points along the positive axis
    SectorArc around(Rational(-1, 4), Rational(1, 4));
    for (int b = 1; b <= 8; ++b) {
        Barcode src = stalk({invx2, around}, FieldScalar(b));
        Barcode tgt = stalk({invx, around}, FieldScalar(b));
        if (!check(hom_reduced(src, tgt).dimension == 1, "truncated-ray hom not one"))
            return false;
    }
    return true;
}

// ---- criterion 2 --------------------------------------------------------

bool hom_oracle_agreement()
{
    corpus::Rng rng(20260826);
    int compared = 0;
    for (int trial = 0; trial < 2000 && compared < 200; ++trial) {
        PuiseuxFactor a = corpus::random_factor(rng);
        PuiseuxFactor b = corpus::random_factor(rng);
        SectorArc arc = corpus::random_arc(rng);
        OracleEstimate est = oracle_dominance(a - b, arc);
        if (!est.confident) continue;
        ++compared;
        std::size_t expect = est.verdict == DominanceVerdict::POS_DIVERGENT ? 0 : 1;
        if (!check(hom_constant({a, arc}, {b, arc}) == expect, "hom disagrees with oracle"))
            return false;
    }
    return check(compared >= 200, "fewer than 200 unambiguous oracle verdicts");
}

// ---- criterion 3 --------------------------------------------------------

bool tensor_inverse_identity()
{
    corpus::Rng rng(33);
    SectorArc around(Rational(-1, 4), Rational(1, 4));
    for (int trial = 0; trial < 50; ++trial) {
        PuiseuxFactor phi = corpus::random_factor(rng);
        IrregularConstant prod = tensor_constant({phi, around}, {-phi, around});
        for (int p = 1; p <= 20; ++p) {
            if (!check(stalk(prod, FieldScalar(p)) ==
                           stalk({PuiseuxFactor(), around}, FieldScalar(p)),
                       "tensor with the inverse differs from the unit at a stalk"))
                return false;
        }
    }
    return true;
}

// ---- criterion 4 --------------------------------------------------------

bool forget_exactness()
{
    corpus::Rng rng(44);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<PuiseuxFactor> factors = corpus::random_factor_list(rng, 3);
        SectorCover cover = standard_cover(factors);
        StokesLocalSystem a = corpus::random_system(rng, factors, cover);
        StokesLocalSystem b = corpus::random_system(rng, factors, cover);
        IrregularMorphism f = corpus::random_morphism(rng, a, b);

        std::size_t plain_ker = f.per_arc()[0].kernel_basis().cols();
        std::size_t plain_coker = b.rank() - (a.rank() - plain_ker);
        if (!check(forget(kernel_morphism(f)).rank == plain_ker, "kernel rank mismatch"))
            return false;
        if (!check(forget(cokernel_morphism(f)).rank == plain_coker, "cokernel rank mismatch"))
            return false;
    }
    return true;
}

// ---- criterion 5 --------------------------------------------------------

bool same_summand_shape(const CurveComplex& a, const CurveComplex& b)
{
    const auto& sa = a.summands();
    const auto& sb = b.summands();
    if (sa.size() != sb.size()) return false;
    for (std::size_t k = 0; k < sa.size(); ++k) {
        if (sa[k].degree != sb[k].degree || sa[k].kind != sb[k].kind) return false;
        if (sa[k].rank() != sb[k].rank()) return false;
        if (sa[k].kind == SummandKind::SKYSCRAPER) {
            if (!(sa[k].barcode == sb[k].barcode)) return false;
        } else {
            if (!(sa[k].system->factors() == sb[k].system->factors())) return false;
            if (char_poly(sa[k].system->monodromy()) != char_poly(sb[k].system->monodromy()))
                return false;
        }
    }
    return true;
}

bool double_duality()
{
    corpus::Rng rng(55);
    for (int trial = 0; trial < 100; ++trial) {
        CurveComplex c = corpus::random_complex(rng);
        if (!check(same_summand_shape(verdier_dual(verdier_dual(c)), c),
                   "double dual changed the shape"))
            return false;
    }
    return true;
}

// ---- criteria 6 and 7 ---------------------------------------------------

std::vector<CurveComplex> shared_corpus()
{
    corpus::Rng rng(66);
    std::vector<CurveComplex> out;
    while (out.size() < 50) out.push_back(corpus::random_complex(rng));
    return out;
}

bool truncation_orthogonality()
{
    std::vector<CurveComplex> corpus_set = shared_corpus();
    for (const auto& c : corpus_set)
        for (const auto& d : corpus_set) {
            auto dims = hom_complex(truncate(c, TruncationSide::LE0),
                                    truncate(d, TruncationSide::GE1));
            auto it = dims.find(0);
            if (!check(it == dims.end() || it->second == 0,
                       "degree-zero hom across the truncation"))
                return false;
        }
    return true;
}

// middle-perversity glue conditions evaluated on the forgotten complex
bool classical_perverse(const CurveComplex& c)
{
    std::map<int, std::size_t> open_part, costalk, stalk_part;
    for (const auto& s : c.summands()) {
        if (s.kind == SummandKind::SKYSCRAPER) {
            std::size_t fc = s.barcode.free_count();
            if (fc) {
                stalk_part[s.degree] += fc;
                costalk[s.degree] += fc;
            }
            continue;
        }
        LocalSystemData data = forget(*s.system);
        if (data.rank == 0) continue;
        open_part[s.degree] += data.rank;
        Matrix shifted = data.monodromy - Matrix::identity(data.rank);
        std::size_t inv = data.rank - shifted.rank();
        if (s.kind == SummandKind::J_SHRIEK) {
            if (inv) {
                costalk[s.degree + 1] += inv;
                costalk[s.degree + 2] += inv;
            }
        } else {
            if (inv) {
                stalk_part[s.degree] += inv;
                stalk_part[s.degree + 1] += inv;
            }
        }
    }
    for (const auto& [deg, dim] : open_part)
        if (dim && deg != -1) return false;
    for (const auto& [deg, dim] : stalk_part)
        if (dim && deg > 0) return false;
    for (const auto& [deg, dim] : costalk)
        if (dim && deg < 0) return false;
    return true;
}

bool perversity_agreement()
{
    for (const auto& c : shared_corpus())
        if (!check(is_perverse(c).perverse == classical_perverse(c),
                   "perversity verdict differs from the classical criterion"))
            return false;
    return true;
}

// ---- criterion 8 --------------------------------------------------------

GradedMorphism random_graded(corpus::Rng& rng)
{
    Barcode src = corpus::random_barcode(rng);
    Barcode tgt = corpus::random_barcode(rng);
    Rational degree(rng.range(0, 4), 2);
    Matrix m(tgt.size(), src.size());
    for (std::size_t j = 0; j < tgt.size(); ++j)
        for (std::size_t i = 0; i < src.size(); ++i)
            if (interval_hom_dim(src.intervals()[i], tgt.intervals()[j], degree) && rng.coin())
                m.at(j, i) = FieldScalar(rng.range(-2, 2));
    return GradedMorphism(std::move(src), std::move(tgt), std::move(degree), std::move(m));
}

bool reduced_equal(const Barcode& a, const Barcode& b, const Rational& slack)
{
    std::vector<Rational> fa, fb;
    for (const auto& iv : a.intervals())
        if (iv.is_free()) fa.push_back(iv.birth);
    for (const auto& iv : b.intervals())
        if (iv.is_free()) fb.push_back(iv.birth);
    if (fa.size() != fb.size()) return false;
    for (std::size_t k = 0; k < fa.size(); ++k) {
        Rational d = fa[k] - fb[k];
        if (d < -slack || d > slack) return false;
    }
    return true;
}

bool kernel_lift_independence()
{
    corpus::Rng rng(88);
    for (int trial = 0; trial < 100; ++trial) {
        GradedMorphism f = random_graded(rng);
        Rational a(rng.range(0, 6), 2);
        GradedMorphism shifted = f.shifted(a);
        if (!check(reduced_equal(kernel(f), kernel(shifted), a), "kernel drifted after lift"))
            return false;
        if (!check(hom_reduced(kernel(f), Barcode({Interval::free(0)})).dimension ==
                       hom_reduced(kernel(shifted), Barcode({Interval::free(0)})).dimension,
                   "reduced kernel dimension changed"))
            return false;
    }
    return true;
}

// ---- criterion 9 --------------------------------------------------------

bool rh_table()
{
    std::vector<ConnectionDatum> cat = {
        ConnectionDatum::exponential(PuiseuxFactor()),
        ConnectionDatum::exponential(PuiseuxFactor::pole(1)),
        ConnectionDatum::exponential(PuiseuxFactor::pole(2))};
    for (std::size_t i = 0; i < cat.size(); ++i)
        for (std::size_t j = 0; j < cat.size(); ++j) {
            HomComparisonTable t = hom_comparison_table(cat[i], cat[j]);
            std::size_t expect_ray = i >= j ? 1 : 0;  // homs flow down the divergence order
            if (!check(t.forward.sheaf_ray == expect_ray, "ray table entry off"))
                return false;
            if (!check(t.forward.sheaf_disk == (i == j ? 1u : 0u), "disk table entry off"))
                return false;
            if (!check(t.forward.catalog && *t.forward.catalog == (i == j ? 1u : 0u),
                       "catalog entry off"))
                return false;
            HomComparisonTable s = hom_comparison_table(cat[j], cat[i]);
            if (!check(s.forward.sheaf_ray == t.reverse.sheaf_ray &&
                           s.reverse.sheaf_ray == t.forward.sheaf_ray &&
                           s.forward.sheaf_disk == t.reverse.sheaf_disk,
                       "table does not transpose under swap"))
                return false;
        }
    return true;
}

// ---- criterion 10 -------------------------------------------------------

bool cli_determinism()
{
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(g_scenario_dir))
        if (e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    if (!check(!files.empty(), "no scenario files found")) return false;
    for (const auto& f : files) {
        std::ifstream in(f);
        std::ostringstream buf;
        buf << in.rdbuf();
        std::string text = buf.str();

        Report a = run_scenario_text(text);
        Report b = run_scenario_text(text);
        if (!check(a.all_ok(), "scenario reported an error")) return false;
        if (!check(a.to_text() == b.to_text() && a.to_json().dump() == b.to_json().dump(),
                   "reruns differ"))
            return false;

        Scenario s = parse_scenario(text);
        std::string once = s.canonical.dump(2);
        if (!check(parse_scenario(once).canonical.dump(2) == once, "round trip not byte-exact"))
            return false;
    }
    return true;
}

}  // namespace

int main(int argc, char** argv)
{
    if (argc < 2) {
        std::cerr << "usage: acceptance <scenario-dir>\n";
        return 2;
    }
    g_scenario_dir = argv[1];

    std::vector<Criterion> criteria = {
        {1, "full ray hom vanishes, truncated rays keep one class", 1.0, ray_counterexample},
        {2, "hom_constant agrees with the sampling oracle on 200 triples", 30.0,
         hom_oracle_agreement},
        {3, "tensor with the inverse factor is the unit at 20 stalks x 50 factors", 5.0,
         tensor_inverse_identity},
        {4, "forgetting commutes with kernels and cokernels on 100 morphisms", 10.0,
         forget_exactness},
        {5, "double duality is the identity on 100 complexes", 10.0, double_duality},
        {6, "no degree-zero homs across the truncation on 50x50 pairs", 60.0,
         truncation_orthogonality},
        {7, "perversity matches the classical criterion on the corpus", 30.0,
         perversity_agreement},
        {8, "kernels are lift independent after reduction on 100 pairs", 5.0,
         kernel_lift_independence},
        {9, "3x3 connection catalog table is asymmetric and transposes", 5.0, rh_table},
        {10, "CLI runs deterministically and round-trips byte-exact", 5.0, cli_determinism},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        bool ok = false;
        try {
            ok = c.run();
        } catch (const std::exception& e) {
            std::cerr << "  exception: " << e.what() << "\n";
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool in_time = secs < c.limit_seconds;
        bool pass = ok && in_time;
        if (!pass) ++failures;
        std::ostringstream line;
        line.setf(std::ios::fixed);
        line.precision(2);
        line << "criterion " << c.number << ": " << (pass ? "pass" : "fail") << " - "
             << c.description << " (" << secs << "s";
        if (!in_time) line << ", over " << c.limit_seconds << "s limit";
        line << ")";
        std::cout << line.str() << "\n";
    }
    return failures == 0 ? 0 : 1;
}
