#include "fmw/vocabulary.hpp"

#include <algorithm>
#include <set>

#include "fmw/error.hpp"

namespace fmw {

bool Vocabulary::has_constant(const std::string& name) const {
    return std::find(constants.begin(), constants.end(), name) != constants.end();
}

int Vocabulary::arity(const std::string& relation) const {
    auto it = relations.find(relation);
    if (it == relations.end())
        throw InputError("unknown relation symbol: " + relation);
    return it->second;
}

void validate(const Vocabulary& v) {
    std::set<std::string> seen;
    for (const auto& [name, arity] : v.relations) {
        if (name.empty())
            throw InputError("empty relation name");
        if (arity < 1)
            throw InputError("relation " + name + " has arity " + std::to_string(arity) + " (must be >= 1)");
        seen.insert(name);
    }
    for (const auto& c : v.constants) {
        if (c.empty())
            throw InputError("empty constant name");
        if (!seen.insert(c).second)
            throw InputError("symbol name used twice in vocabulary: " + c);
    }
}

Vocabulary make_vocabulary(std::map<std::string, int> relations, std::vector<std::string> constants) {
    Vocabulary v{std::move(relations), std::move(constants)};
    validate(v);
    return v;
}

Vocabulary parse_vocabulary_spec(std::string_view spec) {
    Vocabulary v;
    size_t pos = 0;
    while (pos <= spec.size()) {
        size_t comma = spec.find(',', pos);
        std::string_view item = spec.substr(pos, comma == std::string_view::npos ? comma : comma - pos);
        while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
        if (!item.empty()) {
            size_t slash = item.find('/');
            if (slash == std::string_view::npos) {
                v.constants.emplace_back(item);
            } else {
                std::string name(item.substr(0, slash));
                std::string arity_text(item.substr(slash + 1));
                int arity = 0;
                try {
                    arity = std::stoi(arity_text);
                } catch (const std::exception&) {
                    throw InputError("bad arity in vocabulary spec: " + std::string(item));
                }
                if (!v.relations.emplace(name, arity).second)
                    throw InputError("relation named twice in vocabulary spec: " + name);
            }
        }
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    validate(v);
    return v;
}

std::string vocabulary_spec(const Vocabulary& v) {
    std::string out;
    for (const auto& [name, arity] : v.relations) {
        if (!out.empty()) out += ',';
        out += name + "/" + std::to_string(arity);
    }
    for (const auto& c : v.constants) {
        if (!out.empty()) out += ',';
        out += c;
    }
    return out;
}

std::pair<Vocabulary, std::vector<std::string>> expand_vocabulary(const Vocabulary& v, int n) {
    if (n < 0)
        throw InputError("cannot expand a vocabulary by a negative number of constants");
    Vocabulary out = v;
    std::vector<std::string> fresh;
    int next = 1;
    while (static_cast<int>(fresh.size()) < n) {
        std::string name = "c_" + std::to_string(next++);
        if (out.has_relation(name) || out.has_constant(name)) continue;
        out.constants.push_back(name);
        fresh.push_back(name);
    }
    return {std::move(out), std::move(fresh)};
}

} // namespace fmw
