#pragma once

#include <json.hpp>
#include <string>

#include "nlgf/game.hpp"
#include "nlgf/polylab.hpp"
#include "nlgf/quantum.hpp"

namespace nlgf {

using Json = nlohmann::json;

Json question_to_json(const Question& q);
Question question_from_json(const Json& j);
Json answer_to_json(const Answer& a);
Answer answer_from_json(const Json& j);

/// Library and transform games serialize by name and parameters; explicit
/// games carry their table, alphabets, and decision table.
Json game_to_json(const Game& g);
GamePtr game_from_json(const Json& j);

/// FNV-1a hash of the canonical serialization.
std::string game_fingerprint(const Game& g);

Json field_to_json(const FieldCtx& f);
Json clfunction_to_json(const CLFunction& f, int table_limit = 4096);
Json poly_to_json(const IdPoly& f);

/// Versioned little-endian binary layout.
void save_strategy(const Strategy& s, const std::string& path);
Strategy load_strategy(const std::string& path);

Json report_to_json(const struct SolveReport& r);

} // namespace nlgf
