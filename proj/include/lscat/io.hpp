#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "lscat/campaign.hpp"
#include "lscat/category.hpp"
#include "lscat/cohomology.hpp"
#include "lscat/dynamics.hpp"
#include "lscat/homotopy.hpp"
#include "lscat/space.hpp"

namespace lscat {

using json = nlohmann::json;

// Poset text format: one declaration per line, either `point <id>` or
// `<id> < <id>` (a cover). Blank lines and `#` comments ignored. Point order
// is first appearance.
SpacePtr space_from_text(const std::string& content);
std::string space_to_text(const FiniteSpace& x);

// JSON mirror: {"format":"poset/1","points":[...],"covers":[[lo,hi],...]}.
json space_to_json(const FiniteSpace& x);
SpacePtr space_from_json(const json& j);

// {"format":"system/1","space":{...},"phi":{"x":"y",...},"F":{"x":"p/q",...}}
struct SystemInput {
  SpacePtr space;
  std::vector<int> step;
  std::vector<Rational> lyapunov;
};
SystemInput system_from_json(const json& j);
json system_to_json(const GradientLikeSystem& sys);

// {"format":"fence/1","source":{...},"target":{...},"maps":[{"x":"fx",...}]}
json fence_to_json(const Fence& f);
Fence fence_from_json(const json& j);

json pointset_to_json(const FiniteSpace& x, const Bitset& a);
Bitset pointset_from_json(const FiniteSpace& x, const json& j);

json cover_to_json(const FiniteSpace& x, int k, const CoverSolution& sol, bool with_certificates);
json spectrum_to_json(const FiniteSpace& x, const MinMaxSpectrum& s);
json theorem_report_to_json(const FiniteSpace& x, const TheoremReport& r);
json axiom_report_to_json(const AxiomReport& r);
json complex_to_json(const SimplicialComplex& k);
json campaign_to_json(const CampaignResult& r);

// Sniffs JSON ('{' first non-space) vs text; dispatches to system or poset by
// the "format" field. Parse errors carry line numbers (text) or byte offsets.
SpacePtr load_space(const std::string& path);
json load_json(const std::string& path);
std::string read_file(const std::string& path);

std::string fnv1a64_hex(const std::string& bytes);

}  // namespace lscat
