#pragma once

#include "novistoke/oracle.hpp"
#include "novistoke/rhdict.hpp"

#include <json.hpp>

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace novistoke {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

/// Malformed scenario file (bad JSON or schema violation).
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A name that does not resolve to a declaration.
struct ReferenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parsed scenario: named declarations plus an ordered command list.
struct Scenario {
    std::map<std::string, PuiseuxFactor> factors;
    std::map<std::string, SectorArc> arcs;
    std::map<std::string, Barcode> barcodes;
    std::map<std::string, StokesLocalSystem> systems;
    std::map<std::string, CurveComplex> complexes;
    std::map<std::string, ConnectionDatum> connections;
    std::vector<nlohmann::json> commands;
    std::string raw;
    nlohmann::json canonical;  // normalized declarations and commands
};

Scenario parse_scenario(const std::string& text);

/// Canonical re-serialization of the declarations and commands.
nlohmann::json scenario_canonical_json(const Scenario& s);

struct CommandResult {
    std::size_t index;
    std::string op;
    bool ok;
    nlohmann::json value;    // when ok
    std::string error_kind;  // REFERENCE_ERROR, UNDECIDABLE_SIGN, DOMAIN_ERROR
    std::string error;
};

struct Report {
    std::string tool_version;
    std::string scenario_hash;
    std::vector<CommandResult> results;

    bool all_ok() const;
    bool any_reference_error() const;
    nlohmann::json to_json() const;
    std::string to_text() const;
};

Report run_scenario_text(const std::string& text);
Report run_scenario(const std::string& path);

/// Execute an explicit command list against parsed declarations.
Report run_commands(const Scenario& s, const std::vector<nlohmann::json>& commands,
                    const std::string& hash);

/// FNV-1a 64 of the raw bytes, as a hex string.
std::string content_hash(const std::string& text);

// serialization helpers shared with the CLI
nlohmann::json rational_json(const Rational& q);
Rational parse_rational(const nlohmann::json& j);
nlohmann::json factor_json(const PuiseuxFactor& f);
nlohmann::json barcode_json(const Barcode& b);
nlohmann::json matrix_json(const Matrix& m);
nlohmann::json complex_json(const CurveComplex& c);
nlohmann::json diagram_json(const StokesDiagram& d);

}  // namespace novistoke
