#include "fmw/serialize.hpp"

#include <fstream>
#include <sstream>

#include "fmw/error.hpp"

namespace fmw {

json to_json(const Vocabulary& v) {
    json rels = json::object();
    for (const auto& [name, arity] : v.relations) rels[name] = arity;
    return json{{"relations", rels}, {"constants", v.constants}};
}

Vocabulary vocabulary_from_json(const json& j) {
    Vocabulary v;
    if (!j.is_object() || !j.contains("relations") || !j.contains("constants"))
        throw InputError("vocab must be an object with 'relations' and 'constants'");
    for (const auto& [name, arity] : j.at("relations").items()) {
        if (!arity.is_number_integer())
            throw InputError("arity of " + name + " must be an integer");
        v.relations[name] = arity.get<int>();
    }
    for (const auto& c : j.at("constants")) v.constants.push_back(c.get<std::string>());
    validate(v);
    return v;
}

json to_json(const Structure& s) {
    json rels = json::object();
    for (const auto& [name, tuples] : s.relations) {
        json list = json::array();
        for (const auto& t : tuples) list.push_back(ids_of(s, t));
        rels[name] = list;
    }
    json consts = json::object();
    for (const auto& [name, index] : s.constants) consts[name] = s.universe[index];
    return json{{"vocab", to_json(s.vocab)},
                {"universe", s.universe},
                {"relations", rels},
                {"constants", consts}};
}

Structure structure_from_json(const json& j) {
    if (!j.is_object())
        throw InputError("structure document must be an object");
    for (const char* key : {"vocab", "universe", "relations", "constants"})
        if (!j.contains(key))
            throw InputError(std::string("structure document is missing '") + key + "'");
    Vocabulary v = vocabulary_from_json(j.at("vocab"));
    std::vector<std::string> universe;
    for (const auto& e : j.at("universe")) universe.push_back(e.get<std::string>());
    std::map<std::string, std::vector<std::vector<std::string>>> rels;
    for (const auto& [name, tuples] : j.at("relations").items()) {
        auto& out = rels[name];
        for (const auto& t : tuples) {
            std::vector<std::string> tuple;
            for (const auto& e : t) tuple.push_back(e.get<std::string>());
            out.push_back(std::move(tuple));
        }
    }
    std::map<std::string, std::string> consts;
    for (const auto& [name, id] : j.at("constants").items()) consts[name] = id.get<std::string>();
    return make_structure(std::move(v), std::move(universe), std::move(rels), std::move(consts));
}

json to_json(const Morphism& m) {
    json map = json::object();
    for (int i = 0; i < m.source.size(); ++i)
        map[m.source.universe[i]] = m.target.universe[m.map[i]];
    return json{{"source", to_json(m.source)}, {"target", to_json(m.target)}, {"map", map}};
}

Morphism morphism_from_json(const json& j) {
    if (!j.is_object() || !j.contains("source") || !j.contains("target") || !j.contains("map"))
        throw InputError("morphism document must have 'source', 'target' and 'map'");
    Structure source = structure_from_json(j.at("source"));
    Structure target = structure_from_json(j.at("target"));
    std::map<std::string, std::string> map;
    for (const auto& [from, to] : j.at("map").items()) map[from] = to.get<std::string>();
    return make_morphism(std::move(source), std::move(target), map);
}

std::string dump_canonical(const json& j) {
    return j.dump(2) + "\n";
}

std::string serialize(const Structure& s) { return dump_canonical(to_json(s)); }
std::string serialize(const Morphism& m) { return dump_canonical(to_json(m)); }

namespace {

json parse_json(const std::string& text, const std::string& what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded())
        throw InputError("malformed " + what + " document (invalid JSON)");
    return j;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

Structure parse_structure(const std::string& text) {
    return structure_from_json(parse_json(text, "structure"));
}

Morphism parse_morphism(const std::string& text) {
    return morphism_from_json(parse_json(text, "morphism"));
}

Structure load_structure(const std::string& path) {
    try {
        return parse_structure(read_file(path));
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
    }
}

Morphism load_morphism(const std::string& path) {
    try {
        return parse_morphism(read_file(path));
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
    }
}

void save_structure(const Structure& s, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw InputError("cannot write file: " + path);
    out << serialize(s);
}

} // namespace fmw
