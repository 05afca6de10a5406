#include "stabland/code_spec.hpp"

#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "stabland/pauli.hpp"

namespace stabland {
namespace {

struct BuiltinText {
    const char* name;
    const char* json;
};

// Generated from specs/*.json at configure time.
constexpr BuiltinText kBuiltins[] = {
#include "builtin_specs.inc"
};

}  // namespace

void validate(const CodeSpec& spec) {
    if (spec.name.empty()) throw std::invalid_argument("code spec needs a name");
    if (spec.dim < 1 || spec.dim > kMaxDim) throw std::invalid_argument("code spec D must be 1, 2 or 3");
    if (spec.qubits_per_site < 1) throw std::invalid_argument("code spec q must be positive");
    if (spec.species.empty()) throw std::invalid_argument("code spec has no generator species");
    if (spec.error_alphabet.empty()) throw std::invalid_argument("code spec error alphabet is empty");
    for (char c : spec.error_alphabet)
        if (c != 'X' && c != 'Y' && c != 'Z') throw std::invalid_argument("error alphabet may only contain X, Y, Z");
    for (const Species& s : spec.species) {
        if (s.terms.empty()) throw std::invalid_argument("species '" + s.name + "' has no terms");
        for (std::size_t i = 0; i < s.terms.size(); ++i) {
            const GeneratorTerm& t = s.terms[i];
            for (int a = 0; a < kMaxDim; ++a) {
                int limit = a < spec.dim ? 1 : 0;
                if (t.offset[a] < 0 || t.offset[a] > limit)
                    throw std::invalid_argument("species '" + s.name + "': corner offset outside the elementary cube");
            }
            if (static_cast<int>(t.label.size()) != spec.qubits_per_site)
                throw std::invalid_argument("species '" + s.name + "': label length differs from q");
            for (char c : t.label)
                if (!is_pauli_label(c)) throw std::invalid_argument("species '" + s.name + "': bad Pauli label");
            for (std::size_t j = 0; j < i; ++j)
                if (s.terms[j].offset == t.offset)
                    throw std::invalid_argument("species '" + s.name + "': corner listed twice");
        }
    }
}

CodeSpec parse_code_spec(std::string_view json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("code spec is not valid JSON: ") + e.what());
    }
    CodeSpec spec;
    try {
        spec.name = doc.at("name").get<std::string>();
        spec.dim = doc.at("D").get<int>();
        spec.qubits_per_site = doc.at("q").get<int>();
        spec.error_alphabet = doc.value("errors", std::string("XYZ"));
        for (const auto& s : doc.at("species")) {
            Species species;
            species.name = s.value("name", std::string());
            const auto& offsets = s.at("offsets");
            const auto& labels = s.at("labels");
            if (offsets.size() != labels.size())
                throw std::invalid_argument("species offsets and labels differ in length");
            for (std::size_t i = 0; i < offsets.size(); ++i) {
                GeneratorTerm term;
                const auto& o = offsets[i];
                if (static_cast<int>(o.size()) != spec.dim)
                    throw std::invalid_argument("corner offset must have D components");
                for (int a = 0; a < spec.dim; ++a) term.offset[a] = o[a].get<int>();
                term.label = labels[i].get<std::string>();
                species.terms.push_back(std::move(term));
            }
            spec.species.push_back(std::move(species));
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed code spec: ") + e.what());
    }
    validate(spec);
    return spec;
}

CodeSpec load_code_spec(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open code spec " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_code_spec(buffer.str());
}

std::string to_json_text(const CodeSpec& spec) {
    nlohmann::ordered_json doc;
    doc["name"] = spec.name;
    doc["D"] = spec.dim;
    doc["q"] = spec.qubits_per_site;
    doc["errors"] = spec.error_alphabet;
    doc["species"] = nlohmann::ordered_json::array();
    for (const Species& s : spec.species) {
        nlohmann::ordered_json offsets = nlohmann::ordered_json::array();
        nlohmann::ordered_json labels = nlohmann::ordered_json::array();
        for (const GeneratorTerm& t : s.terms) {
            nlohmann::ordered_json o = nlohmann::ordered_json::array();
            for (int a = 0; a < spec.dim; ++a) o.push_back(t.offset[a]);
            offsets.push_back(o);
            labels.push_back(t.label);
        }
        doc["species"].push_back({{"name", s.name}, {"offsets", offsets}, {"labels", labels}});
    }
    return doc.dump(2);
}

std::vector<std::string> builtin_code_names() {
    std::vector<std::string> out;
    for (const BuiltinText& b : kBuiltins) out.emplace_back(b.name);
    return out;
}

std::string_view builtin_code_json(std::string_view name) {
    for (const BuiltinText& b : kBuiltins)
        if (name == b.name) return b.json;
    throw std::invalid_argument("unknown code '" + std::string(name) + "'");
}

const CodeSpec& builtin_code_spec(std::string_view name) {
    static std::mutex mutex;
    static std::map<std::string, CodeSpec, std::less<>> cache;
    std::lock_guard lock(mutex);
    if (auto it = cache.find(name); it != cache.end()) return it->second;
    auto [it, inserted] = cache.emplace(std::string(name), parse_code_spec(builtin_code_json(name)));
    return it->second;
}

}  // namespace stabland
