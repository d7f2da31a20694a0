#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "fairdiv/audit.hpp"
#include "fairdiv/mechanisms.hpp"

namespace fairdiv::io {

using Json = nlohmann::ordered_json;

// A parsed instance file: named agents and items plus the validated profile.
// The raw valuation documents are kept verbatim so serialization round-trips.
struct Instance {
    std::vector<std::string> agents;
    std::vector<std::string> items;
    Profile profile;
    Json valuations;
    Json params; // free-form metadata, carried through untouched
};

// Strict parser for the JSON instance schema (documented in the README):
// unknown keys, duplicate names, and floating-point numbers are rejected.
// Syntax errors carry line/column; schema errors name the offending key.
Instance parse_instance(const std::string& text);
std::string serialize_instance(const Instance& inst);

struct NamedInstance {
    std::string name;
    std::string description;
    Instance instance;
};
// The worked examples and lower-bound instances, ready to solve or audit.
const std::vector<NamedInstance>& builtin_fixtures();

// "3" as a JSON number, "7/2" as a string; never floating point.
Json rat_json(const Rat& r);

// Report renderings. Both are deterministic functions of their inputs; `seed`
// is echoed verbatim when present and never interpreted.
std::string outcome_text(const Instance& inst, const Outcome& o,
                         const std::string* seed = nullptr);
Json outcome_json(const Instance& inst, const Outcome& o, const std::string* seed = nullptr);
std::string audit_text(const Instance& inst, const std::string& suite,
                       const std::vector<audit::AuditReport>& reports,
                       const std::string* seed = nullptr);
Json audit_json(const Instance& inst, const std::string& suite,
                const std::vector<audit::AuditReport>& reports,
                const std::string* seed = nullptr);

} // namespace fairdiv::io
