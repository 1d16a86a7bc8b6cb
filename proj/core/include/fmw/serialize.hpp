#pragma once

#include <string>

#include <json.hpp>

#include "fmw/morphism.hpp"
#include "fmw/structure.hpp"

namespace fmw {

using json = nlohmann::json;

// Canonical structure documents: keys and lists sorted, so byte equality
// coincides with structural equality.

json to_json(const Vocabulary& v);
Vocabulary vocabulary_from_json(const json& j);

json to_json(const Structure& s);
Structure structure_from_json(const json& j);

json to_json(const Morphism& m);
Morphism morphism_from_json(const json& j);

/// Canonical textual form: 2-space indented JSON plus trailing newline.
std::string serialize(const Structure& s);
std::string serialize(const Morphism& m);
std::string dump_canonical(const json& j);

Structure parse_structure(const std::string& text);
Morphism parse_morphism(const std::string& text);

Structure load_structure(const std::string& path);
Morphism load_morphism(const std::string& path);
void save_structure(const Structure& s, const std::string& path);

} // namespace fmw
