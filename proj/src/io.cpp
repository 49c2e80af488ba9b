#include "lscat/io.hpp"

#include <fstream>
#include <sstream>

#include "lscat/errors.hpp"

namespace lscat {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

}  // namespace

SpacePtr space_from_text(const std::string& content) {
  std::vector<std::string> ids;
  std::unordered_map<std::string, int> index;
  std::vector<std::pair<int, int>> edges;
  auto intern = [&](const std::string& id) {
    auto it = index.find(id);
    if (it != index.end()) return it->second;
    int k = static_cast<int>(ids.size());
    ids.push_back(id);
    index.emplace(id, k);
    return k;
  };

  std::istringstream is(content);
  std::string line;
  int lineno = 0;
  bool saw_declaration = false;
  while (std::getline(is, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto toks = split_ws(line);
    if (toks.empty()) continue;
    saw_declaration = true;
    if (toks.size() == 2 && toks[0] == "point") {
      intern(toks[1]);
    } else if (toks.size() == 3 && toks[1] == "<") {
      int lo = intern(toks[0]);
      int hi = intern(toks[2]);
      edges.emplace_back(lo, hi);
    } else {
      throw ParseError("line " + std::to_string(lineno) +
                       ": expected 'point <id>' or '<id> < <id>'");
    }
  }
  if (!saw_declaration) throw ParseError("no declarations found");
  return FiniteSpace::from_parts(std::move(ids), std::move(edges));
}

std::string space_to_text(const FiniteSpace& x) {
  std::string out;
  for (const auto& id : x.ids()) out += "point " + id + "\n";
  for (auto [lo, hi] : x.covers()) out += x.id_of(lo) + " < " + x.id_of(hi) + "\n";
  return out;
}

json space_to_json(const FiniteSpace& x) {
  json j;
  j["format"] = "poset/1";
  j["points"] = x.ids();
  json covers = json::array();
  for (auto [lo, hi] : x.covers()) covers.push_back({x.id_of(lo), x.id_of(hi)});
  j["covers"] = std::move(covers);
  return j;
}

SpacePtr space_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("poset JSON must be an object");
  if (j.contains("format") && j["format"] != "poset/1")
    throw ParseError("unsupported poset format '" + j["format"].get<std::string>() + "'");
  std::vector<std::string> ids;
  std::unordered_map<std::string, int> index;
  auto intern = [&](const std::string& id) {
    auto it = index.find(id);
    if (it != index.end()) return it->second;
    int k = static_cast<int>(ids.size());
    ids.push_back(id);
    index.emplace(id, k);
    return k;
  };
  if (j.contains("points"))
    for (const auto& p : j["points"]) intern(p.get<std::string>());
  std::vector<std::pair<int, int>> edges;
  if (j.contains("covers"))
    for (const auto& e : j["covers"]) {
      if (!e.is_array() || e.size() != 2) throw ParseError("cover entries must be [lo, hi]");
      int lo = intern(e[0].get<std::string>());
      int hi = intern(e[1].get<std::string>());
      edges.emplace_back(lo, hi);
    }
  if (ids.empty()) throw ParseError("poset JSON declares no points");
  return FiniteSpace::from_parts(std::move(ids), std::move(edges));
}

SystemInput system_from_json(const json& j) {
  if (!j.is_object() || !j.contains("space") || !j.contains("phi") || !j.contains("F"))
    throw ParseError("system JSON needs 'space', 'phi' and 'F'");
  if (j.contains("format") && j["format"] != "system/1")
    throw ParseError("unsupported system format '" + j["format"].get<std::string>() + "'");
  SystemInput in;
  in.space = space_from_json(j["space"]);
  int n = in.space->size();
  in.step.assign(static_cast<std::size_t>(n), -1);
  for (const auto& [key, val] : j["phi"].items()) {
    int x = in.space->index_of(key);
    in.step[static_cast<std::size_t>(x)] = in.space->index_of(val.get<std::string>());
  }
  for (int x = 0; x < n; ++x)
    if (in.step[static_cast<std::size_t>(x)] < 0)
      throw ParseError("phi missing point '" + in.space->id_of(x) + "'");
  in.lyapunov.assign(static_cast<std::size_t>(n), Rational(0));
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (const auto& [key, val] : j["F"].items()) {
    int x = in.space->index_of(key);
    in.lyapunov[static_cast<std::size_t>(x)] =
        val.is_string() ? Rational::parse(val.get<std::string>())
                        : Rational(val.get<std::int64_t>());
    seen[static_cast<std::size_t>(x)] = true;
  }
  for (int x = 0; x < n; ++x)
    if (!seen[static_cast<std::size_t>(x)])
      throw ParseError("F missing point '" + in.space->id_of(x) + "'");
  return in;
}

json system_to_json(const GradientLikeSystem& sys) {
  json j;
  j["format"] = "system/1";
  j["space"] = space_to_json(*sys.space);
  json phi = json::object();
  json f = json::object();
  for (int x = 0; x < sys.space->size(); ++x) {
    phi[sys.space->id_of(x)] = sys.space->id_of(sys.step(x));
    f[sys.space->id_of(x)] = sys.lyapunov[static_cast<std::size_t>(x)].str();
  }
  j["phi"] = std::move(phi);
  j["F"] = std::move(f);
  return j;
}

json fence_to_json(const Fence& f) {
  json j;
  j["format"] = "fence/1";
  j["source"] = space_to_json(*f.front().source);
  j["target"] = space_to_json(*f.front().target);
  json maps = json::array();
  for (const auto& m : f.maps) {
    json a = json::object();
    for (int x = 0; x < m.source->size(); ++x)
      a[m.source->id_of(x)] = m.target->id_of(m.assign[static_cast<std::size_t>(x)]);
    maps.push_back(std::move(a));
  }
  j["maps"] = std::move(maps);
  return j;
}

Fence fence_from_json(const json& j) {
  if (!j.is_object() || !j.contains("source") || !j.contains("target") || !j.contains("maps"))
    throw ParseError("fence JSON needs 'source', 'target' and 'maps'");
  if (j.contains("format") && j["format"] != "fence/1")
    throw ParseError("unsupported fence format '" + j["format"].get<std::string>() + "'");
  SpacePtr src = space_from_json(j["source"]);
  SpacePtr tgt = space_from_json(j["target"]);
  Fence f;
  for (const auto& entry : j["maps"]) {
    std::vector<int> assign(static_cast<std::size_t>(src->size()), -1);
    for (const auto& [key, val] : entry.items())
      assign[static_cast<std::size_t>(src->index_of(key))] = tgt->index_of(val.get<std::string>());
    for (int x = 0; x < src->size(); ++x)
      if (assign[static_cast<std::size_t>(x)] < 0)
        throw ParseError("fence map missing point '" + src->id_of(x) + "'");
    f.maps.push_back(MonotoneMap{src, tgt, std::move(assign)});
  }
  if (f.maps.empty()) throw ParseError("fence has no maps");
  return f;
}

json pointset_to_json(const FiniteSpace& x, const Bitset& a) {
  json arr = json::array();
  a.for_each([&](int i) { arr.push_back(x.id_of(i)); });
  return arr;
}

Bitset pointset_from_json(const FiniteSpace& x, const json& j) {
  Bitset b(x.size());
  for (const auto& p : j) b.set(x.index_of(p.get<std::string>()));
  return b;
}

json cover_to_json(const FiniteSpace& x, int k, const CoverSolution& sol,
                   bool with_certificates) {
  json j;
  j["cat"] = k;
  j["kind"] = sol.kind == SetKind::Open ? "open" : "closed";
  json sets = json::array();
  for (const auto& s : sol.sets) sets.push_back(pointset_to_json(x, s));
  j["sets"] = std::move(sets);
  if (with_certificates) {
    json certs = json::array();
    for (const auto& f : sol.certificates) certs.push_back(fence_to_json(f));
    j["certificates"] = std::move(certs);
  }
  return j;
}

json spectrum_to_json(const FiniteSpace& x, const MinMaxSpectrum& s) {
  json j;
  j["nu_X"] = s.nu_x;
  json vals = json::array();
  for (const auto& v : s.values) vals.push_back(v.str());
  j["values"] = std::move(vals);
  json blocks = json::array();
  for (const auto& b : s.blocks) {
    json e;
    e["value"] = b.value.str();
    e["multiplicity"] = b.multiplicity;
    e["level_set"] = pointset_to_json(x, b.level_set);
    blocks.push_back(std::move(e));
  }
  j["blocks"] = std::move(blocks);
  return j;
}

json theorem_report_to_json(const FiniteSpace& x, const TheoremReport& r) {
  json j;
  j["model"] = r.model_note;
  j["index"] = r.index_name;
  j["nu_X"] = r.nu_x;
  json crit = json::array();
  for (const auto& v : r.critical_values) crit.push_back(v.str());
  j["critical_values"] = std::move(crit);
  j["level_nu"] = r.level_nu;
  j["sum"] = r.sum;
  j["theorem_holds"] = r.theorem_holds;
  j["spectrum"] = spectrum_to_json(x, r.spectrum);
  json mult = json::array();
  for (const auto& m : r.multiplicity_checks) {
    json e;
    e["value"] = m.value.str();
    e["multiplicity"] = m.multiplicity;
    e["level_nu"] = m.level_nu;
    e["pass"] = m.pass;
    mult.push_back(std::move(e));
  }
  j["multiplicity_checks"] = std::move(mult);
  j["multiplicity_all_pass"] = r.multiplicity_all_pass;
  j["criticality_ok"] = r.criticality_ok;
  j["rest_count"] = r.rest_count;
  if (r.normalization_checked) j["normalization_ok"] = r.normalization_ok;
  j["level_count_probe"] = {{"m", r.level_count_probe.level_count},
                            {"nu_X", r.level_count_probe.nu_x},
                            {"holds", r.level_count_probe.holds}};
  j["cat_sum_check"] = {{"level_values", r.cat_sum_check.level_values},
                        {"sum", r.cat_sum_check.sum},
                        {"cat_X", r.cat_sum_check.cat_x},
                        {"pass", r.cat_sum_check.pass}};
  j["unit_level_check"] = {{"applicable", r.unit_level_check.applicable},
                           {"pass", r.unit_level_check.pass}};
  if (!r.diagnostics.empty()) {
    json diag = json::array();
    for (const auto& d : r.diagnostics) {
      json e;
      e["value"] = d.value.str();
      e["partition_ok"] = d.partition_ok;
      e["one_shot_image_ok"] = d.one_shot_image_ok;
      diag.push_back(std::move(e));
    }
    j["diagnostics"] = std::move(diag);
  }
  return j;
}

json axiom_report_to_json(const AxiomReport& r) {
  json j;
  json checks = json::array();
  for (const auto& c : r.checks) {
    json e;
    e["axiom"] = axiom_name(c.axiom);
    e["checked"] = c.checked;
    e["pass"] = c.passed;
    e["cases"] = c.cases;
    if (!c.counterexample.empty()) e["counterexample"] = c.counterexample;
    checks.push_back(std::move(e));
  }
  j["checks"] = std::move(checks);
  j["evaluations"] = r.evaluations;
  j["automorphisms"] = r.automorphism_count;
  j["used_step_map"] = r.used_step_map;
  j["all_passed"] = r.all_passed();
  return j;
}

json complex_to_json(const SimplicialComplex& k) {
  json j;
  j["format"] = "complex/1";
  j["vertices"] = k.labels;
  json cells = json::array();
  for (int d = 0; d <= k.dim(); ++d) {
    json layer = json::array();
    for (const auto& s : k.cells[static_cast<std::size_t>(d)]) {
      json verts = json::array();
      for (int v : s) verts.push_back(k.labels[static_cast<std::size_t>(v)]);
      layer.push_back(std::move(verts));
    }
    cells.push_back(std::move(layer));
  }
  j["cells"] = std::move(cells);
  return j;
}

json campaign_to_json(const CampaignResult& r) {
  json j;
  j["trials"] = r.trials;
  j["max_size"] = r.options.max_size;
  j["seed"] = r.options.seed;
  j["theorem_holds"] = r.theorem_holds;
  j["criticality_ok"] = r.criticality_ok;
  j["multiplicity_ok"] = r.multiplicity_ok;
  j["normalization_ok"] = r.normalization_ok;
  j["cat_sum_ok"] = r.cat_sum_ok;
  j["unit_level_ok"] = r.unit_level_ok;
  auto outcome_entry = [](const TrialOutcome& o) {
    json e;
    e["seed"] = o.trial_seed;
    e["detail"] = o.detail;
    if (o.space) e["space"] = space_to_json(*o.space);
    return e;
  };
  json viol = json::array();
  for (const auto& o : r.violations) viol.push_back(outcome_entry(o));
  j["violations"] = std::move(viol);
  json gave_up = json::array();
  for (const auto& o : r.budget_failures) gave_up.push_back(outcome_entry(o));
  j["budget_failures"] = std::move(gave_up);
  json probe;
  probe["checked"] = r.probe_holds + static_cast<int>(r.probe_violations.size());
  probe["holds"] = r.probe_holds;
  probe["violation_count"] = static_cast<int>(r.probe_violations.size());
  if (r.options.probe_level_count) {
    json pv = json::array();
    for (const auto& o : r.probe_violations) {
      json e;
      e["seed"] = o.trial_seed;
      e["m"] = o.probe.level_count;
      e["nu_X"] = o.probe.nu_x;
      pv.push_back(std::move(e));
    }
    probe["violations"] = std::move(pv);
  }
  j["level_count_probe"] = std::move(probe);
  return j;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json load_json(const std::string& path) {
  std::string content = read_file(path);
  try {
    return json::parse(content);
  } catch (const json::parse_error& e) {
    throw ParseError("'" + path + "': " + e.what());
  }
}

SpacePtr load_space(const std::string& path) {
  std::string content = read_file(path);
  auto first = content.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && content[first] == '{') {
    json j;
    try {
      j = json::parse(content);
    } catch (const json::parse_error& e) {
      throw ParseError("'" + path + "': " + e.what());
    }
    if (j.contains("format") && j["format"] == "system/1") return system_from_json(j).space;
    return space_from_json(j);
  }
  return space_from_text(content);
}

std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace lscat
