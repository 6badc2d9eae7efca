#pragma once

#include "towerdyn/conditions.hpp"
#include "towerdyn/lp.hpp"
#include "towerdyn/shift.hpp"
#include "towerdyn/tower.hpp"

#include <json.hpp>

#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace towerdyn::io {

using json = nlohmann::json;

/// Configuration problems are reported with the offending field so the CLI
/// can name it in its diagnostic (exit code 2).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& field, const std::string& what)
        : std::runtime_error("config error in '" + field + "': " + what), field_name(field) {}
    std::string field_name;
};

inline json to_json(const Rational& r) { return r.to_string(); }

inline Rational rational_from_json(const json& j, const std::string& field) {
    if (!j.is_string() && !j.is_number_integer())
        throw ConfigError(field, "expected a rational as \"num/den\" string");
    try {
        return j.is_string() ? Rational::parse(j.get<std::string>())
                             : Rational(static_cast<long long>(j.get<long long>()));
    } catch (const std::exception& e) {
        throw ConfigError(field, e.what());
    }
}

inline json to_json(const DyadicSet& s) { return s.to_text(); }

inline DyadicSet set_from_json(const json& j, const std::string& field) {
    if (!j.is_string()) throw ConfigError(field, "expected a set as \"lo:hi,lo:hi\" string");
    try {
        return DyadicSet::parse_text(j.get<std::string>());
    } catch (const std::exception& e) {
        throw ConfigError(field, e.what());
    }
}

inline json to_json(const LeveledSet& s) {
    json out = json::object();
    for (const auto& [level, fiber] : s.parts()) out[std::to_string(level)] = fiber.to_text();
    return out;
}

inline LeveledSet leveled_set_from_json(const json& j, const std::string& field) {
    if (!j.is_object()) throw ConfigError(field, "expected an object {\"level\": \"set\"}");
    LeveledSet out;
    for (const auto& [key, value] : j.items()) {
        long long level = 0;
        try {
            level = std::stoll(key);
        } catch (const std::exception&) {
            throw ConfigError(field, "level key '" + key + "' is not an integer");
        }
        out.insert(level, set_from_json(value, field + "." + key));
    }
    return out;
}

inline json to_json(const SimpleFunction& f) {
    json out = json::array();
    for (const auto& t : f.terms())
        out.push_back({{"level", t.level}, {"set", t.support.to_text()}, {"coeff", t.coeff.to_string()}});
    return out;
}

inline SimpleFunction simple_function_from_json(const json& j, const std::string& field) {
    if (!j.is_array()) throw ConfigError(field, "expected an array of {level, set, coeff}");
    std::vector<SimpleTerm> raw;
    for (const auto& item : j) {
        if (!item.is_object() || !item.contains("level") || !item.contains("set") || !item.contains("coeff"))
            throw ConfigError(field, "each term needs level, set and coeff");
        raw.push_back({item["level"].get<long long>(), set_from_json(item["set"], field + ".set"),
                       rational_from_json(item["coeff"], field + ".coeff")});
    }
    return SimpleFunction(std::move(raw));
}

inline json to_json(const StepFunction& f) {
    json breaks = json::array(), values = json::array();
    for (size_t i = 0; i < f.piece_count(); ++i) {
        breaks.push_back(f.breakpoints()[i].to_string());
        values.push_back(f.values()[i].to_string());
    }
    return {{"breaks", breaks}, {"values", values}};
}

inline StepFunction step_from_json(const json& j, const std::string& field) {
    if (!j.is_object() || !j.contains("breaks") || !j.contains("values"))
        throw ConfigError(field, "expected {breaks: [...], values: [...]}");
    std::vector<Rational> breaks, values;
    for (const auto& b : j["breaks"]) breaks.push_back(rational_from_json(b, field + ".breaks"));
    for (const auto& v : j["values"]) values.push_back(rational_from_json(v, field + ".values"));
    try {
        return StepFunction(std::move(breaks), std::move(values));
    } catch (const std::exception& e) {
        throw ConfigError(field, e.what());
    }
}

inline json system_descriptor(const TowerSystem& sys) {
    json out{{"name", sys.name()}};
    switch (sys.kind()) {
        case TowerSystem::Kind::bdp:
            out["kind"] = "bdp";
            break;
        case TowerSystem::Kind::geometric:
            out["kind"] = "geometric";
            out["parameters"] = {{"rho", sys.rho().to_string()}};
            break;
        case TowerSystem::Kind::custom: {
            out["kind"] = "custom";
            json table = json::object();
            for (const auto& [pos, density] : sys.window()) table[std::to_string(pos)] = to_json(density);
            out["densities"] = table;
            out["default_density"] = to_json(*sys.fallback());
            break;
        }
    }
    return out;
}

inline TowerSystem system_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind")) throw ConfigError("system", "descriptor needs a kind");
    std::string kind = j["kind"].get<std::string>();
    if (kind == "bdp") return TowerSystem::bdp();
    if (kind == "geometric") {
        if (!j.contains("parameters") || !j["parameters"].contains("rho"))
            throw ConfigError("system.parameters.rho", "geometric systems need rho");
        return TowerSystem::geometric(rational_from_json(j["parameters"]["rho"], "system.parameters.rho"));
    }
    if (kind == "custom") {
        if (!j.contains("default_density"))
            throw ConfigError("system.default_density", "custom systems need a default density rule");
        std::map<long long, StepFunction> window;
        if (j.contains("densities"))
            for (const auto& [key, value] : j["densities"].items()) {
                long long pos = 0;
                try {
                    pos = std::stoll(key);
                } catch (const std::exception&) {
                    throw ConfigError("system.densities", "position key '" + key + "' is not an integer");
                }
                window.emplace(pos, step_from_json(value, "system.densities." + key));
            }
        std::string name = j.contains("name") ? j["name"].get<std::string>() : "custom";
        return TowerSystem::custom(name, std::move(window),
                                   step_from_json(j["default_density"], "system.default_density"));
    }
    throw ConfigError("system.kind", "unknown kind '" + kind + "'");
}

/// Accepts "bdp", "geometric:RHO", inline JSON, or a path to a JSON file.
inline TowerSystem system_from_spec(const std::string& spec) {
    if (spec == "bdp") return TowerSystem::bdp();
    if (spec.rfind("geometric:", 0) == 0)
        return TowerSystem::geometric(Rational::parse(spec.substr(10)));
    if (spec == "identity")
        return TowerSystem::custom("identity", {}, StepFunction::constant(Rational(1)));
    if (!spec.empty() && spec.front() == '{') {
        json j = json::parse(spec, nullptr, false);
        if (j.is_discarded()) throw ConfigError("system", "inline JSON does not parse");
        return system_from_json(j);
    }
    std::ifstream in(spec);
    if (!in) throw ConfigError("system", "unknown system '" + spec + "' (not a name, JSON, or readable file)");
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded()) throw ConfigError("system", "file '" + spec + "' does not hold valid JSON");
    return system_from_json(j);
}

/// Fixed CSV layout for sequence exports: n, value_num, value_den, tag.
inline void write_csv_header(std::ostream& os) { os << "n,value_num,value_den,tag\n"; }

inline void write_csv_row(std::ostream& os, long long n, const Rational& v, const std::string& tag) {
    os << n << "," << v.num().str() << "," << v.den().str() << "," << tag << "\n";
}

inline json to_json(Verdict v) { return std::string(to_string(v)); }

inline json to_json(const WitnessTriple& w) {
    return {{"n", w.step},
            {"level", w.level},
            {"witness", w.witness.to_text()},
            {"defect_a", w.defect_a.to_string()},
            {"defect_back", w.defect_back.to_string()},
            {"defect_fwd", w.defect_fwd.to_string()}};
}

inline json to_json(const KscFailureCertificate& cert) {
    json rows = json::array();
    for (const auto& row : cert.rows)
        rows.push_back({{"block", row.block},
                        {"j", row.j},
                        {"slice", row.slice.to_string()},
                        {"pigeonhole_bound", row.pigeonhole_bound.to_string()},
                        {"position", row.position},
                        {"mu_forward", row.mu_forward.to_string()}});
    return {{"fiber_length", cert.fiber_length.to_string()},
            {"floor_value", cert.floor_value.to_string()},
            {"verified", cert.verified},
            {"rows", rows}};
}

inline json sequence_json(const std::vector<Rational>& values) {
    json out = json::array();
    for (const auto& v : values) out.push_back(v.to_string());
    return out;
}

inline json to_json(const MscReport& r, bool include_triples = true) {
    json out{{"condition", "MSC"},
             {"verdict", to_json(r.verdict)},
             {"schedule", r.schedule_note},
             {"first_violation", r.first_violation}};
    if (!r.certificate_note.empty()) out["certificate"] = r.certificate_note;
    if (include_triples) {
        json triples = json::array();
        for (const auto& w : r.triples) triples.push_back(to_json(w));
        out["triples"] = triples;
    }
    return out;
}

inline json to_json(const KscReport& r, bool include_tails = true) {
    json out{{"condition", "KSC"},
             {"verdict", to_json(r.verdict)},
             {"witness", r.witness.to_text()},
             {"achieved_sup", r.achieved_sup.to_string()},
             {"tail_sup", r.tail_sup.to_string()}};
    if (r.certificate) out["certificate"] = to_json(*r.certificate);
    if (include_tails) {
        out["tail_back"] = sequence_json(r.tail_back);
        out["tail_fwd"] = sequence_json(r.tail_fwd);
    }
    return out;
}

inline json to_json(const GrcReport& r) {
    json out{{"condition", "GSC"},
             {"verdict", to_json(r.verdict)},
             {"witness", r.witness.to_text()},
             {"subsequence", r.subsequence},
             {"subsequence_tails", sequence_json(r.subsequence_tails)}};
    if (!r.certificate_note.empty()) out["certificate"] = r.certificate_note;
    return out;
}

inline json to_json(const GeneratorReport& r, bool include_sequences = true) {
    json out{{"condition", "generator-tails"},
             {"verdict", to_json(r.verdict)},
             {"exceptional", r.exceptional},
             {"exceptional_is_structural", r.exceptional_is_structural},
             {"tail_sup", r.tail_sup.to_string()}};
    if (include_sequences) {
        out["forward"] = sequence_json(r.forward);
        out["backward"] = sequence_json(r.backward);
    }
    return out;
}

inline json to_json(const DynamicsReport& r, bool include_sequences = false) {
    json labels = json::object();
    for (const auto& [name, result] : r.labels)
        labels[name] = {{"verdict", to_json(result.verdict)}, {"basis", result.basis}};
    json hsc{{"condition", "HSC"},
             {"verdict", to_json(r.hsc.decays ? Verdict::holds_to_horizon : Verdict::inconclusive)},
             {"subsequence", r.hsc.steps}};
    return {{"horizon", r.horizon},
            {"eps", r.eps.to_string()},
            {"labels", labels},
            {"msc", to_json(r.msc, include_sequences)},
            {"ksc", to_json(r.ksc, include_sequences)},
            {"gsc", to_json(r.gsc)},
            {"hsc", hsc},
            {"generator", to_json(r.generator, include_sequences)}};
}

}  // namespace towerdyn::io
