#pragma once

#include <string>

#include <json.hpp>

#include "torusrf/freegroup.hpp"
#include "torusrf/hnn.hpp"
#include "torusrf/matgroup.hpp"

namespace torusrf {

using Json = nlohmann::json;

/**
 * Parses "a->ab, b->ba". Whitespace is ignored; a word is a run of
 * generator tokens g or g^n (n may be negative), or "1" for the empty word.
 * Generators are single letters other than 't' and are numbered by their
 * first appearance on a left-hand side.
 *
 * Throws SyntaxError, MissingImage (a definition without "->"), or
 * UnknownGenerator (a right-hand symbol with no definition).
 */
Endo parse_endo(const std::string& text);
std::string format_endo(const Endo& phi);

/// A word over phi's alphabet, same token syntax as the DSL.
Word parse_word(const std::string& text, const Endo& phi);
/// Like parse_word but also accepts t; e.g. "t a t^-1 b".
HnnWord parse_hnn_word(const std::string& text, const Endo& phi);

/// [[a,b],[c,d]] with integer or decimal-string entries.
IntMat int_mat_from_json(const Json& j);
IntTuple int_tuple_from_json(const Json& j);
Json to_json(const IntMat& m);
Json to_json(const IntTuple& t);
Json to_json(const ModMat& m);
Json to_json(const ModTuple& t);

/// The example pair A = [[5,2],[2,1]], B = [[1,2],[2,5]].
IntTuple example_matrices();

}  // namespace torusrf
