#pragma once

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "lieseq/lie_algebra.hpp"

namespace lieseq {

// {"name", "dim", "ring": "Z"|"Q"|"Fp:<p>", "basis"?, "constants": [[i,j,k,value]]
// with 1-based i < j, "weights"?}. Serialisation is canonical (fixed key
// order, constants sorted), so serialise ∘ parse is the identity on its
// own output.
nlohmann::ordered_json algebra_to_json(const LieAlgebra& g);
LieAlgebra algebra_from_json(const nlohmann::json& j);

std::string serialize_algebra(const LieAlgebra& g);
LieAlgebra parse_algebra(std::string_view text);

// Builtin name or path to a JSON file. Throws ParseError / DomainError, and
// IoError for unreadable files.
LieAlgebra load_algebra(const std::string& spec, std::size_t max_dim);

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lieseq
