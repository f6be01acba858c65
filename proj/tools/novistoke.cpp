#include "novistoke/scenario.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using nlohmann::json;
using namespace novistoke;

namespace {

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open scenario file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

json cli_rational(const std::string& text)
{
    auto slash = text.find('/');
    Rational q = slash == std::string::npos
                     ? Rational(BigInt(text))
                     : Rational(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
    return rational_json(q);
}

struct Options {
    std::string scenario;
    std::string out;
    std::string format = "json";
    int max_precision_bits = 0;
    unsigned long seed = 0;
};

int emit(const Report& report, const Options& opt)
{
    std::string body =
        opt.format == "text" ? report.to_text() : report.to_json().dump(2) + "\n";
    if (opt.out.empty()) {
        std::cout << body;
    } else {
        std::ofstream out(opt.out, std::ios::binary);
        out << body;
    }
    if (report.all_ok()) return 0;
    return report.any_reference_error() ? 2 : 1;
}

int run_one(const Options& opt, const json& cmd)
{
    std::string text = read_file(opt.scenario);
    Scenario s = parse_scenario(text);
    return emit(run_commands(s, {cmd}, content_hash(text)), opt);
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Stokes-filtered sheaf calculator on the pointed disk"};
    app.require_subcommand(1);

    Options opt;
    app.add_option("--scenario", opt.scenario, "scenario file")->required();
    app.add_option("--out", opt.out, "write the report to this path instead of stdout");
    app.add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"json", "text"}));
    app.add_option("--max-precision-bits", opt.max_precision_bits,
                   "cap for certified sign arithmetic");
    app.add_option("--seed", opt.seed, "corpus seed (recorded; used by property tooling)");

    auto* run = app.add_subcommand("run", "execute every command in the scenario");
    run->fallthrough();

    std::string source, target, lhs, rhs, factor, arc, complex_name, theta = "0", side = "le0";
    std::vector<std::string> factor_names;
    unsigned grid = 64;

    auto* hom = app.add_subcommand("hom", "hom dimension between two declared objects");
    hom->fallthrough();
    hom->add_option("--source", source)->required();
    hom->add_option("--target", target)->required();
    hom->add_option("--arc", arc, "arc name for factor-level homs");
    hom->add_option("--theta", theta, "ray angle in turns (p/q) for factor-level homs");

    auto* tensor = app.add_subcommand("tensor", "tensor product of two factors");
    tensor->fallthrough();
    tensor->add_option("--lhs", lhs)->required();
    tensor->add_option("--rhs", rhs)->required();

    auto* dual = app.add_subcommand("dual", "Verdier dual of a complex or factor");
    dual->fallthrough();
    dual->add_option("--complex", complex_name);
    dual->add_option("--factor", factor);

    auto* perverse = app.add_subcommand("perverse", "perversity check for a complex");
    perverse->fallthrough();
    perverse->add_option("--complex", complex_name)->required();

    auto* stokes = app.add_subcommand("stokes", "Stokes direction diagram of factors");
    stokes->fallthrough();
    stokes->add_option("--factors", factor_names, "declared factor names")->required();

    auto* rh = app.add_subcommand("rh-table", "hom comparison table for two connection data");
    rh->fallthrough();
    rh->add_option("--lhs", lhs)->required();
    rh->add_option("--rhs", rhs)->required();

    auto* oracle = app.add_subcommand("oracle", "numeric dominance estimate");
    oracle->fallthrough();
    oracle->add_option("--factor", factor)->required();
    oracle->add_option("--arc", arc)->required();
    oracle->add_option("--grid", grid, "theta samples");

    CLI11_PARSE(app, argc, argv);

    if (opt.max_precision_bits > 0) set_max_precision_bits(opt.max_precision_bits);

    try {
        if (run->parsed()) {
            std::string text = read_file(opt.scenario);
            return emit(run_scenario_text(text), opt);
        }
        if (hom->parsed()) {
            std::string text = read_file(opt.scenario);
            Scenario s = parse_scenario(text);
            json cmd;
            if (s.systems.count(source) || s.systems.count(target))
                cmd = json{{"op", "hom_global"}, {"source", source}, {"target", target}};
            else if (s.complexes.count(source) || s.complexes.count(target))
                cmd = json{{"op", "hom_complex"}, {"source", source}, {"target", target}};
            else if (!arc.empty())
                cmd = json{{"op", "hom_constant"},
                           {"source", source},
                           {"target", target},
                           {"arc", arc}};
            else
                cmd = json{{"op", "hom_ray"},
                           {"source", source},
                           {"target", target},
                           {"theta", cli_rational(theta)}};
            return emit(run_commands(s, {cmd}, content_hash(text)), opt);
        }
        if (tensor->parsed())
            return run_one(opt, json{{"op", "tensor"}, {"lhs", lhs}, {"rhs", rhs}});
        if (dual->parsed()) {
            if (!complex_name.empty())
                return run_one(opt, json{{"op", "dual"}, {"complex", complex_name}});
            if (!factor.empty())
                return run_one(opt, json{{"op", "dual_factor"}, {"factor", factor}});
            std::cerr << "dual: need --complex or --factor\n";
            return 2;
        }
        if (perverse->parsed())
            return run_one(opt, json{{"op", "perverse"}, {"complex", complex_name}});
        if (stokes->parsed())
            return run_one(opt, json{{"op", "stokes_diagram"}, {"factors", factor_names}});
        if (rh->parsed())
            return run_one(opt, json{{"op", "rh_table"}, {"lhs", lhs}, {"rhs", rhs}});
        if (oracle->parsed())
            return run_one(opt, json{{"op", "oracle_dominance"},
                                     {"factor", factor},
                                     {"arc", arc},
                                     {"grid", grid}});
    } catch (const ReferenceError& e) {
        std::cerr << "reference error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
