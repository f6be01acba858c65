#include "novistoke/scenario.hpp"

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace novistoke {

using nlohmann::json;

namespace {

json bigint_json(const BigInt& v)
{
    static const BigInt lim = BigInt(1) << 53;
    if (v < lim && v > -lim) return static_cast<std::int64_t>(v);
    return v.str();
}

BigInt parse_bigint(const json& j)
{
    if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
    if (j.is_string()) return BigInt(j.get<std::string>());
    throw ParseError("expected an integer or integer string");
}

FieldScalar parse_scalar(const json& j)
{
    if (j.is_array()) return FieldScalar(parse_rational(j));
    if (!j.is_object()) throw ParseError("expected a scalar object with re/im");
    Rational re = j.contains("re") ? parse_rational(j.at("re")) : Rational(0);
    Rational im = j.contains("im") ? parse_rational(j.at("im")) : Rational(0);
    return FieldScalar(std::move(re), std::move(im));
}

json scalar_json(const FieldScalar& v)
{
    return json{{"im", rational_json(v.im())}, {"re", rational_json(v.re())}};
}

Matrix parse_matrix(const json& j)
{
    if (!j.is_array()) throw ParseError("expected a matrix as an array of rows");
    std::size_t rows = j.size();
    std::size_t cols = rows == 0 ? 0 : j.at(0).size();
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        if (j.at(r).size() != cols) throw ParseError("ragged matrix rows");
        for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = parse_scalar(j.at(r).at(c));
    }
    return m;
}

json arc_json(const SectorArc& a)
{
    return json{{"end", rational_json(a.end)}, {"start", rational_json(a.start)}};
}

template <typename Map>
const typename Map::mapped_type& look(const Map& m, const json& cmd, const char* key,
                                      const char* kind)
{
    if (!cmd.contains(key)) throw ParseError(std::string("missing argument: ") + key);
    std::string name = cmd.at(key).get<std::string>();
    auto it = m.find(name);
    if (it == m.end())
        throw ReferenceError(std::string("unknown ") + kind + ": " + name);
    return it->second;
}

PuiseuxFactor parse_factor(const json& spec)
{
    std::vector<PuiseuxFactor::Term> terms;
    for (const auto& t : spec.value("terms", json::array()))
        terms.emplace_back(parse_rational(t.at("order")), parse_scalar(t.at("coeff")));
    unsigned ram = spec.value("ramification", 0u);
    return PuiseuxFactor(std::move(terms), ram);
}

Barcode parse_barcode(const json& spec)
{
    std::vector<Interval> intervals;
    for (const auto& t : spec.value("intervals", json::array())) {
        Rational birth = parse_rational(t.at("birth"));
        if (t.contains("length"))
            intervals.push_back(Interval::torsion(std::move(birth), parse_rational(t.at("length"))));
        else
            intervals.push_back(Interval::free(std::move(birth)));
    }
    return Barcode(std::move(intervals));
}

json interval_json(const Interval& iv)
{
    json j{{"birth", rational_json(iv.birth)}};
    if (!iv.is_free()) j["length"] = rational_json(iv.length.value());
    return j;
}

SectorArc arc_for_point(const FieldScalar& x)
{
    auto [lo, hi] = argument_bounds(x);
    return SectorArc(lo - Rational(1, 16), hi + Rational(1, 16));
}

json by_degree_json(const std::map<int, std::size_t>& dims)
{
    json out = json::object();
    for (const auto& [d, v] : dims) out[std::to_string(d)] = v;
    return out;
}

json execute(const Scenario& s, const json& cmd)
{
    std::string op = cmd.value("op", "");
    if (op == "dominance") {
        const auto& f = look(s.factors, cmd, "factor", "factor");
        const auto& a = look(s.arcs, cmd, "arc", "arc");
        return json{{"verdict", to_string(dominance(f, a))}};
    }
    if (op == "classify_ray") {
        const auto& f = look(s.factors, cmd, "factor", "factor");
        return json{{"verdict", to_string(classify_ray(f, parse_rational(cmd.at("theta"))))}};
    }
    if (op == "hom_constant") {
        const auto& src = look(s.factors, cmd, "source", "factor");
        const auto& tgt = look(s.factors, cmd, "target", "factor");
        const auto& a = look(s.arcs, cmd, "arc", "arc");
        return json{{"dimension", hom_constant({src, a}, {tgt, a})}};
    }
    if (op == "hom_ray") {
        const auto& src = look(s.factors, cmd, "source", "factor");
        const auto& tgt = look(s.factors, cmd, "target", "factor");
        return json{{"dimension", hom_constant_ray(src, tgt, parse_rational(cmd.at("theta")))}};
    }
    if (op == "tensor") {
        const auto& lhs = look(s.factors, cmd, "lhs", "factor");
        const auto& rhs = look(s.factors, cmd, "rhs", "factor");
        return json{{"factor", factor_json(lhs + rhs)}};
    }
    if (op == "sheafhom") {
        const auto& src = look(s.factors, cmd, "source", "factor");
        const auto& tgt = look(s.factors, cmd, "target", "factor");
        return json{{"factor", factor_json(tgt - src)}};
    }
    if (op == "dual_factor") {
        const auto& f = look(s.factors, cmd, "factor", "factor");
        return json{{"factor", factor_json(-f)}, {"shift", 2}};
    }
    if (op == "stalk") {
        const auto& f = look(s.factors, cmd, "factor", "factor");
        FieldScalar x = parse_scalar(cmd.at("point"));
        SectorArc arc = arc_for_point(x);
        return json{{"barcode", barcode_json(stalk({f, arc}, x))}};
    }
    if (op == "stokes_directions") {
        const auto& lhs = look(s.factors, cmd, "lhs", "factor");
        const auto& rhs = look(s.factors, cmd, "rhs", "factor");
        json dirs = json::array();
        for (const auto& d : stokes_directions(lhs, rhs).directions)
            dirs.push_back(json{{"angle", rational_json(d.angle)},
                                {"exact", d.exact},
                                {"hi", rational_json(d.hi)},
                                {"lo", rational_json(d.lo)}});
        return json{{"directions", dirs}};
    }
    if (op == "stokes_diagram" || op == "standard_cover") {
        std::vector<PuiseuxFactor> fs;
        for (const auto& name : cmd.at("factors")) {
            json ref{{"f", name}};
            fs.push_back(look(s.factors, ref, "f", "factor"));
        }
        if (op == "standard_cover") {
            SectorCover cover = standard_cover(fs);
            json arcs = json::array(), cuts = json::array();
            for (const auto& a : cover.arcs) arcs.push_back(arc_json(a));
            for (const auto& c : cover.cuts) cuts.push_back(rational_json(c));
            return json{{"arcs", arcs}, {"cuts", cuts}};
        }
        StokesDiagram d = stokes_diagram(fs);
        json out = diagram_json(d);
        out["text"] = diagram_text(d, fs);
        return out;
    }
    if (op == "hom_global") {
        const auto& src = look(s.systems, cmd, "source", "system");
        const auto& tgt = look(s.systems, cmd, "target", "system");
        return json{{"dimension", hom_global(src, tgt).dimension}};
    }
    if (op == "forget") {
        const auto& v = look(s.systems, cmd, "system", "system");
        LocalSystemData d = forget(v);
        return json{{"monodromy", matrix_json(d.monodromy)}, {"rank", d.rank}};
    }
    if (op == "hom_complex") {
        const auto& src = look(s.complexes, cmd, "source", "complex");
        const auto& tgt = look(s.complexes, cmd, "target", "complex");
        return json{{"by_degree", by_degree_json(hom_complex(src, tgt))}};
    }
    if (op == "perverse") {
        const auto& c = look(s.complexes, cmd, "complex", "complex");
        PerversityVerdict v = is_perverse(c);
        json out{{"perverse", v.perverse}};
        out["witness"] = v.witness ? json(*v.witness) : json(nullptr);
        return out;
    }
    if (op == "support") {
        const auto& c = look(s.complexes, cmd, "complex", "complex");
        json out = json::object();
        for (const auto& [d, dim] : support_profile(c).dims) out[std::to_string(d)] = dim;
        return json{{"by_degree", out}};
    }
    if (op == "dual") {
        const auto& c = look(s.complexes, cmd, "complex", "complex");
        return json{{"complex", complex_json(verdier_dual(c))}};
    }
    if (op == "truncate") {
        const auto& c = look(s.complexes, cmd, "complex", "complex");
        std::string side = cmd.value("side", "le0");
        if (side != "le0" && side != "ge1") throw ParseError("truncate side must be le0 or ge1");
        return json{{"complex", complex_json(truncate(
                        c, side == "le0" ? TruncationSide::LE0 : TruncationSide::GE1))}};
    }
    if (op == "sol") {
        const auto& d = look(s.connections, cmd, "connection", "connection");
        return json{{"complex", complex_json(sol_lambda(d))}};
    }
    if (op == "rh_table") {
        const auto& lhs = look(s.connections, cmd, "lhs", "connection");
        const auto& rhs = look(s.connections, cmd, "rhs", "connection");
        HomComparisonTable t = hom_comparison_table(lhs, rhs);
        auto side = [](const HomComparison& h) {
            json j{{"sheaf_disk", h.sheaf_disk}, {"sheaf_ray", h.sheaf_ray}};
            j["catalog"] = h.catalog ? json(*h.catalog) : json(nullptr);
            return j;
        };
        return json{{"forward", side(t.forward)}, {"reverse", side(t.reverse)}};
    }
    if (op == "oracle_dominance") {
        const auto& f = look(s.factors, cmd, "factor", "factor");
        const auto& a = look(s.arcs, cmd, "arc", "arc");
        OracleEstimate e = oracle_dominance(f, a, cmd.value("grid", 64u));
        return json{{"confident", e.confident},
                    {"last_max", e.last_max},
                    {"verdict", to_string(e.verdict)}};
    }
    throw ParseError("unknown op: " + op);
}

}  // namespace

json rational_json(const Rational& q)
{
    return json::array({bigint_json(numerator(q)), bigint_json(denominator(q))});
}

Rational parse_rational(const json& j)
{
    if (j.is_number_integer()) return Rational(parse_bigint(j));
    if (!j.is_array() || j.size() != 2)
        throw ParseError("expected a rational as [numerator, denominator]");
    BigInt den = parse_bigint(j.at(1));
    if (den == 0) throw ParseError("rational with zero denominator");
    return Rational(parse_bigint(j.at(0)), den);
}

json factor_json(const PuiseuxFactor& f)
{
    json terms = json::array();
    for (const auto& [order, coeff] : f.terms())
        terms.push_back(json{{"coeff", scalar_json(coeff)}, {"order", rational_json(order)}});
    return json{{"ramification", f.ramification()}, {"terms", terms}};
}

json barcode_json(const Barcode& b)
{
    json out = json::array();
    for (const auto& iv : b.intervals()) out.push_back(interval_json(iv));
    return out;
}

json matrix_json(const Matrix& m)
{
    json out = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(scalar_json(m.at(r, c)));
        out.push_back(row);
    }
    return out;
}

json complex_json(const CurveComplex& c)
{
    json out = json::array();
    for (const auto& s : c.summands()) {
        json item{{"degree", s.degree}, {"kind", to_string(s.kind)}};
        if (s.kind == SummandKind::SKYSCRAPER) {
            item["barcode"] = barcode_json(s.barcode);
        } else {
            json fs = json::array();
            for (const auto& f : s.system->factors()) fs.push_back(factor_json(f));
            json gs = json::array();
            for (const auto& g : s.system->gluings()) gs.push_back(matrix_json(g));
            item["system"] = json{{"factors", fs}, {"gluings", gs}};
        }
        out.push_back(item);
    }
    return json{{"summands", out}};
}

json diagram_json(const StokesDiagram& d)
{
    json dirs = json::array();
    for (const auto& a : d.directions) dirs.push_back(rational_json(a));
    json arcs = json::array();
    for (const auto& a : d.arcs) arcs.push_back(arc_json(a));
    json pairs = json::array();
    for (const auto& [i, j] : d.pairs) pairs.push_back(json::array({i, j}));
    json signs = json::array();
    for (const auto& row : d.signs) signs.push_back(row);
    return json{{"arcs", arcs}, {"directions", dirs}, {"pairs", pairs}, {"signs", signs}};
}

Scenario parse_scenario(const std::string& text)
{
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!root.is_object()) throw ParseError("scenario root must be an object");
    if (root.value("version", 0) != kSchemaVersion)
        throw ParseError("unsupported scenario version");

    Scenario s;
    s.raw = text;
    json canonical{{"version", kSchemaVersion}};

    auto guard = [](const char* section, const std::string& name, auto&& fn) {
        try {
            fn();
        } catch (const ParseError&) {
            throw;
        } catch (const ReferenceError&) {
            throw;
        } catch (const std::exception& e) {
            throw ParseError(std::string(section) + " '" + name + "': " + e.what());
        }
    };

    json cf = json::object();
    const json factors_section = root.value("factors", json::object());
    for (const auto& [name, spec] : factors_section.items())
        guard("factor", name, [&] {
            auto f = parse_factor(spec);
            cf[name] = factor_json(f);
            s.factors.emplace(name, std::move(f));
        });
    canonical["factors"] = cf;

    json ca = json::object();
    const json arcs_section = root.value("arcs", json::object());
    for (const auto& [name, spec] : arcs_section.items())
        guard("arc", name, [&] {
            SectorArc a(parse_rational(spec.at("start")), parse_rational(spec.at("end")));
            ca[name] = arc_json(a);
            s.arcs.emplace(name, std::move(a));
        });
    canonical["arcs"] = ca;

    json cb = json::object();
    const json barcodes_section = root.value("barcodes", json::object());
    for (const auto& [name, spec] : barcodes_section.items())
        guard("barcode", name, [&] {
            auto b = parse_barcode(spec);
            cb[name] = json{{"intervals", barcode_json(b)}};
            s.barcodes.emplace(name, std::move(b));
        });
    canonical["barcodes"] = cb;

    json cs = json::object();
    const json systems_section = root.value("systems", json::object());
    for (const auto& [name, spec] : systems_section.items())
        guard("system", name, [&] {
            std::string cover_kind = spec.value("cover", "standard");
            if (cover_kind != "standard") throw ParseError("only the standard cover is supported");
            std::vector<PuiseuxFactor> fs;
            json fnames = json::array();
            for (const auto& fname : spec.value("factors", json::array())) {
                json ref{{"f", fname}};
                fs.push_back(look(s.factors, ref, "f", "factor"));
                fnames.push_back(fname);
            }
            SectorCover cover = standard_cover(fs);
            std::vector<Matrix> gluings;
            if (spec.contains("gluings")) {
                for (const auto& g : spec.at("gluings")) gluings.push_back(parse_matrix(g));
            } else {
                gluings.assign(cover.size(), Matrix::identity(fs.size()));
            }
            StokesLocalSystem sys(std::move(cover), std::move(fs), std::move(gluings));
            json gl = json::array();
            for (const auto& g : sys.gluings()) gl.push_back(matrix_json(g));
            cs[name] = json{{"cover", "standard"}, {"factors", fnames}, {"gluings", gl}};
            s.systems.emplace(name, std::move(sys));
        });
    canonical["systems"] = cs;

    json cc = json::object();
    const json complexes_section = root.value("complexes", json::object());
    for (const auto& [name, spec] : complexes_section.items())
        guard("complex", name, [&] {
            std::vector<Summand> summands;
            json cm = json::array();
            for (const auto& sm : spec.value("summands", json::array())) {
                int degree = sm.at("degree").get<int>();
                std::string kind = sm.at("kind").get<std::string>();
                if (kind == "skyscraper") {
                    const auto& b = look(s.barcodes, sm, "barcode", "barcode");
                    summands.push_back({degree, SummandKind::SKYSCRAPER, std::nullopt, b});
                    cm.push_back(json{{"barcode", sm.at("barcode")},
                                      {"degree", degree},
                                      {"kind", kind}});
                } else if (kind == "j_shriek" || kind == "j_star") {
                    const auto& v = look(s.systems, sm, "system", "system");
                    summands.push_back(
                        {degree, kind == "j_shriek" ? SummandKind::J_SHRIEK : SummandKind::J_STAR,
                         v, Barcode()});
                    cm.push_back(json{{"degree", degree},
                                      {"kind", kind},
                                      {"system", sm.at("system")}});
                } else {
                    throw ParseError("unknown summand kind: " + kind);
                }
            }
            s.complexes.emplace(name, CurveComplex(std::move(summands)));
            cc[name] = json{{"summands", cm}};
        });
    canonical["complexes"] = cc;

    json cd = json::object();
    const json connections_section = root.value("connections", json::object());
    for (const auto& [name, spec] : connections_section.items())
        guard("connection", name, [&] {
            std::vector<PuiseuxFactor> fs;
            json fnames = json::array();
            for (const auto& fname : spec.value("factors", json::array())) {
                json ref{{"f", fname}};
                fs.push_back(look(s.factors, ref, "f", "factor"));
                fnames.push_back(fname);
            }
            Matrix fm = spec.contains("formal_monodromy")
                            ? parse_matrix(spec.at("formal_monodromy"))
                            : Matrix::identity(fs.size());
            std::vector<StokesMatrixEntry> stokes;
            for (const auto& st : spec.value("stokes_matrices", json::array()))
                stokes.push_back({parse_rational(st.at("direction")),
                                  parse_matrix(st.at("matrix"))});
            ConnectionDatum d(std::move(fs), std::move(fm), std::move(stokes));
            json sj = json::array();
            for (const auto& st : d.stokes_matrices())
                sj.push_back(json{{"direction", rational_json(st.direction)},
                                  {"matrix", matrix_json(st.matrix)}});
            cd[name] = json{{"factors", fnames},
                            {"formal_monodromy", matrix_json(d.formal_monodromy())},
                            {"stokes_matrices", sj}};
            s.connections.emplace(name, std::move(d));
        });
    canonical["connections"] = cd;

    json cmds = json::array();
    for (const auto& cmd : root.value("commands", json::array())) {
        if (!cmd.is_object() || !cmd.contains("op"))
            throw ParseError("each command must be an object with an op");
        s.commands.push_back(cmd);
        cmds.push_back(cmd);
    }
    canonical["commands"] = cmds;
    s.canonical = std::move(canonical);
    return s;
}

json scenario_canonical_json(const Scenario& s)
{
    return s.canonical;
}

std::string content_hash(const std::string& text)
{
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << h;
    return out.str();
}

bool Report::all_ok() const
{
    for (const auto& r : results)
        if (!r.ok) return false;
    return true;
}

bool Report::any_reference_error() const
{
    for (const auto& r : results)
        if (!r.ok && r.error_kind == "REFERENCE_ERROR") return true;
    return false;
}

json Report::to_json() const
{
    json rs = json::array();
    for (const auto& r : results) {
        json item{{"index", r.index}, {"op", r.op}};
        if (r.ok) {
            item["status"] = "ok";
            item["value"] = r.value;
        } else {
            item["status"] = "error";
            item["kind"] = r.error_kind;
            item["message"] = r.error;
        }
        rs.push_back(item);
    }
    return json{{"results", rs},
                {"scenario_hash", scenario_hash},
                {"tool_version", tool_version}};
}

std::string Report::to_text() const
{
    std::ostringstream out;
    out << "novistoke " << tool_version << " scenario " << scenario_hash << "\n";
    for (const auto& r : results) {
        out << "[" << r.index << "] " << r.op << ": ";
        if (r.ok)
            out << "ok " << r.value.dump() << "\n";
        else
            out << "error (" << r.error_kind << ") " << r.error << "\n";
    }
    return out.str();
}

Report run_commands(const Scenario& s, const std::vector<json>& commands,
                    const std::string& hash)
{
    Report report;
    report.tool_version = kToolVersion;
    report.scenario_hash = hash;
    for (std::size_t i = 0; i < commands.size(); ++i) {
        CommandResult res;
        res.index = i;
        res.op = commands[i].value("op", "");
        try {
            res.value = execute(s, commands[i]);
            res.ok = true;
        } catch (const ReferenceError& e) {
            res.ok = false;
            res.error_kind = "REFERENCE_ERROR";
            res.error = e.what();
        } catch (const ParseError& e) {
            res.ok = false;
            res.error_kind = "PARSE_ERROR";
            res.error = e.what();
        } catch (const UndecidableSign& e) {
            res.ok = false;
            res.error_kind = "UNDECIDABLE_SIGN";
            res.error = e.what();
        } catch (const std::exception& e) {
            res.ok = false;
            res.error_kind = "DOMAIN_ERROR";
            res.error = e.what();
        }
        report.results.push_back(std::move(res));
    }
    return report;
}

Report run_scenario_text(const std::string& text)
{
    Scenario s = parse_scenario(text);
    return run_commands(s, s.commands, content_hash(text));
}

Report run_scenario(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open scenario file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return run_scenario_text(buf.str());
}

}  // namespace novistoke
