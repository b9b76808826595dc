#include "lieseq/algebra_json.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "lieseq/builtins.hpp"
#include "lieseq/error.hpp"

namespace lieseq {

nlohmann::ordered_json algebra_to_json(const LieAlgebra& g) {
  nlohmann::ordered_json j;
  j["name"] = g.name();
  j["dim"] = g.dim();
  j["ring"] = g.ring().name();
  bool default_names = true;
  for (std::size_t i = 0; i < g.dim(); ++i)
    if (g.basis_names()[i] != "e" + std::to_string(i + 1)) default_names = false;
  if (!default_names) j["basis"] = g.basis_names();
  auto constants = nlohmann::ordered_json::array();
  for (const auto& c : g.constants()) constants.push_back({c.i + 1, c.j + 1, c.k + 1, c.value});
  j["constants"] = constants;
  if (g.has_weights()) j["weights"] = g.weights();
  return j;
}

LieAlgebra algebra_from_json(const nlohmann::json& j) {
  try {
    if (!j.is_object()) throw ParseError("algebra JSON must be an object");
    for (const char* key : {"name", "dim", "ring", "constants"})
      if (!j.contains(key)) throw ParseError(std::string("algebra JSON lacks \"") + key + "\"");
    const auto name = j.at("name").get<std::string>();
    const auto dim = j.at("dim").get<std::int64_t>();
    if (dim <= 0) throw ParseError("\"dim\" must be positive");
    const Ring ring = Ring::parse(j.at("ring").get<std::string>());
    std::vector<StructureConstant> constants;
    for (const auto& c : j.at("constants")) {
      if (!c.is_array() || c.size() != 4) throw ParseError("each constant must be [i, j, k, value]");
      auto i = c[0].get<std::int64_t>(), jj = c[1].get<std::int64_t>(), k = c[2].get<std::int64_t>();
      if (i < 1 || jj < 1 || k < 1 || i > dim || jj > dim || k > dim)
        throw ParseError("constant index outside 1.." + std::to_string(dim));
      if (i >= jj) throw ParseError("constants must have i < j");
      constants.push_back({static_cast<std::uint32_t>(i - 1), static_cast<std::uint32_t>(jj - 1),
                           static_cast<std::uint32_t>(k - 1), c[3].get<std::int64_t>()});
    }
    std::vector<std::string> names;
    if (j.contains("basis")) names = j.at("basis").get<std::vector<std::string>>();
    std::optional<std::vector<WeightVector>> weights;
    if (j.contains("weights")) weights = j.at("weights").get<std::vector<WeightVector>>();
    return LieAlgebra(name, static_cast<std::size_t>(dim), ring, std::move(constants), std::move(names),
                      std::move(weights));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed algebra JSON: ") + e.what());
  } catch (const DomainError& e) {
    throw ParseError(std::string("invalid algebra JSON: ") + e.what());
  }
}

std::string serialize_algebra(const LieAlgebra& g) { return algebra_to_json(g).dump(); }

LieAlgebra parse_algebra(std::string_view text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("algebra text is not valid JSON");
  return algebra_from_json(j);
}

LieAlgebra load_algebra(const std::string& spec, std::size_t max_dim) {
  const bool looks_like_file = spec.ends_with(".json") || spec.find('/') != std::string::npos;
  if (!looks_like_file) return builtin::by_name(spec, max_dim);
  std::ifstream in(spec);
  if (!in) throw IoError("cannot read algebra file '" + spec + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  LieAlgebra g = parse_algebra(buf.str());
  if (g.dim() > max_dim)
    throw DomainError(g.name() + " has dimension " + std::to_string(g.dim()) + ", above the cap of " +
                      std::to_string(max_dim));
  return g;
}

}  // namespace lieseq
