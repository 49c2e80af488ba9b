// lscat: exact category, homotopy, cohomology and gradient-like dynamics on
// finite spaces. Every subcommand prints a report envelope on stdout whose
// "results" field is reproducible bit-for-bit from argv + input files + seed.
#include <chrono>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "lscat/campaign.hpp"
#include "lscat/category.hpp"
#include "lscat/cohomology.hpp"
#include "lscat/dynamics.hpp"
#include "lscat/errors.hpp"
#include "lscat/io.hpp"

namespace {

using lscat::json;

struct Ctx {
  std::string command;
  std::vector<std::string> argv;
  std::map<std::string, std::string> digests;
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string out_path;
};

std::string register_input(Ctx& ctx, const std::string& path) {
  ctx.digests[path] = "fnv1a64:" + lscat::fnv1a64_hex(lscat::read_file(path));
  return path;
}

lscat::Bitset parse_subset(const lscat::FiniteSpace& x, const std::string& csv) {
  lscat::Bitset b(x.size());
  std::string tok;
  std::istringstream is(csv);
  while (std::getline(is, tok, ',')) {
    if (!tok.empty()) b.set(x.index_of(tok));
  }
  return b;
}

void render_text(const json& results, std::ostream& os, int indent = 0) {
  std::string pad(static_cast<std::size_t>(indent), ' ');
  if (results.is_object()) {
    for (const auto& [k, v] : results.items()) {
      if (v.is_object() || v.is_array()) {
        os << pad << k << ":\n";
        render_text(v, os, indent + 2);
      } else {
        os << pad << k << ": " << v.dump() << "\n";
      }
    }
  } else if (results.is_array()) {
    for (const auto& v : results) {
      if (v.is_object() || v.is_array()) {
        os << pad << "-\n";
        render_text(v, os, indent + 2);
      } else {
        os << pad << "- " << v.dump() << "\n";
      }
    }
  } else {
    os << pad << results.dump() << "\n";
  }
}

int emit(const Ctx& ctx, const json& results, int exit_code,
         std::chrono::steady_clock::time_point started) {
  using ms = std::chrono::duration<double, std::milli>;
  double elapsed = ms(std::chrono::steady_clock::now() - started).count();
  if (!ctx.out_path.empty()) {
    std::ofstream out(ctx.out_path);
    out << results.dump(2) << "\n";
  }
  if (ctx.format == "text") {
    render_text(results, std::cout);
  } else {
    json envelope;
    envelope["format"] = "report/1";
    envelope["command"] = ctx.command;
    envelope["argv"] = ctx.argv;
    envelope["inputs"] = ctx.digests;
    envelope["seed"] = ctx.seed;
    envelope["results"] = results;
    envelope["timing_ms"] = elapsed;
    std::cout << envelope.dump(2) << "\n";
  }
  return exit_code;
}

lscat::GradientLikeSystem load_system(Ctx& ctx, const std::string& path,
                                      const lscat::HomotopyOptions& hopts) {
  auto in = lscat::system_from_json(lscat::load_json(register_input(ctx, path)));
  return lscat::validate_system(in.space, std::move(in.step), std::move(in.lyapunov),
                                std::nullopt, hopts);
}

lscat::IndexFunction make_index(const std::string& name,
                                const std::shared_ptr<lscat::CatSolver>& solver) {
  if (name == "cat") return lscat::cat_index(solver);
  if (name == "card") return lscat::cardinality_index();
  if (name == "nonempty") return lscat::nonempty_index();
  throw lscat::ParseError("unknown index '" + name + "' (expected cat, card or nonempty)");
}

lscat::SpacePtr make_model(const std::string& model, int n, double edge_prob, int count,
                           std::uint64_t seed, const std::string& base_path, Ctx& ctx) {
  auto base = [&]() -> lscat::SpacePtr {
    if (base_path.empty()) throw lscat::ParseError("model '" + model + "' needs --base");
    return lscat::load_space(register_input(ctx, base_path));
  };
  if (model == "chain") return lscat::chain_space(n);
  if (model == "antichain") return lscat::antichain_space(n);
  if (model == "pseudocircle") return lscat::pseudocircle();
  if (model == "sphere") return lscat::sphere_space(n);
  if (model == "subdivision") return lscat::subdivision(*base());
  if (model == "wart") return lscat::wart_space(base(), count, seed);
  if (model == "random") return lscat::random_poset(n, edge_prob, seed);
  throw lscat::ParseError("unknown model '" + model + "'");
}

}  // namespace

int main(int argc, char** argv) {
  auto started = std::chrono::steady_clock::now();
  Ctx ctx;
  for (int i = 1; i < argc; ++i) ctx.argv.emplace_back(argv[i]);

  CLI::App app{"exact category / homotopy / dynamics laboratory for finite spaces"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", ctx.format, "json (default) or text")
      ->check(CLI::IsMember({"json", "text"}));
  app.add_option("--seed", ctx.seed, "seed for every random choice (default 0)");
  app.add_option("--out", ctx.out_path, "also write the raw results object to this file");

  std::string space_path, system_path, fence_path, subset_csv, index_name = "cat";
  bool closed = false, witness = false, export_complex = false, gen_system = false;
  std::size_t budget = 1000000, max_opens = 100000, max_simplices = 100000;
  int gen_n = 3, gen_count = 1, level_spread = 3;
  double edge_prob = 0.3;
  std::string model = "random", base_path, mode_name = "exhaustive";
  int samples = 65536;
  lscat::CampaignOptions camp;

  auto* cat_cmd = app.add_subcommand("cat", "relative category of a space or subset");
  cat_cmd->add_option("space", space_path, "poset file (text or JSON)")->required();
  cat_cmd->add_option("--subset", subset_csv, "comma-separated point ids (default: all)");
  cat_cmd->add_flag("--closed", closed, "cover by closed sets instead of open ones");
  cat_cmd->add_flag("--witness", witness, "include the cover and its certificates");
  cat_cmd->add_option("--budget", budget, "homotopy search budget");
  cat_cmd->add_option("--max-opens", max_opens, "open-set enumeration cap");

  auto* core_cmd = app.add_subcommand("core", "beat-point core and retraction");
  core_cmd->add_option("space", space_path)->required();

  auto* contr_cmd = app.add_subcommand("contractible", "is the subset contractible in the space");
  contr_cmd->add_option("space", space_path)->required();
  contr_cmd->add_option("--subset", subset_csv, "comma-separated point ids (default: all)");
  contr_cmd->add_option("--budget", budget);

  auto* betti_cmd = app.add_subcommand("betti", "GF(2) Betti numbers of the order complex");
  betti_cmd->add_option("space", space_path)->required();
  betti_cmd->add_option("--max-simplices", max_simplices);
  betti_cmd->add_flag("--export-complex", export_complex, "include the complex itself");

  auto* cup_cmd = app.add_subcommand("cuplength", "GF(2) cup-length of the order complex");
  cup_cmd->add_option("space", space_path)->required();
  cup_cmd->add_option("--max-simplices", max_simplices);
  cup_cmd->add_option("--budget", budget, "cup product search budget");

  auto* verify_cmd = app.add_subcommand("verify", "validate a system and check the sum inequality");
  verify_cmd->add_option("system", system_path, "system JSON file")->required();
  verify_cmd->add_option("--index", index_name, "cat (default), card or nonempty");
  verify_cmd->add_option("--budget", budget);

  auto* spec_cmd = app.add_subcommand("spectrum", "min-max spectrum of a system");
  spec_cmd->add_option("system", system_path)->required();
  spec_cmd->add_option("--index", index_name);
  spec_cmd->add_option("--budget", budget);

  auto* ax_cmd = app.add_subcommand("axioms", "check the index axioms on a space or system");
  ax_cmd->add_option("input", space_path, "poset or system file")->required();
  ax_cmd->add_option("--index", index_name);
  ax_cmd->add_option("--mode", mode_name)->check(CLI::IsMember({"exhaustive", "sampled"}));
  ax_cmd->add_option("--samples", samples);
  ax_cmd->add_option("--budget", budget);

  auto* gen_cmd = app.add_subcommand("gen", "generate a named or seeded space (or system)");
  gen_cmd->add_option("--model", model, "chain antichain pseudocircle sphere subdivision wart random");
  gen_cmd->add_option("--n", gen_n, "size (chain/antichain/random) or dimension (sphere)");
  gen_cmd->add_option("--edge-prob", edge_prob);
  gen_cmd->add_option("--count", gen_count, "points added by wart");
  gen_cmd->add_option("--base", base_path, "base space for subdivision/wart");
  gen_cmd->add_flag("--system", gen_system, "emit a generated system on the space");
  gen_cmd->add_option("--level-spread", level_spread);

  auto* camp_cmd = app.add_subcommand("campaign", "seeded verification campaign");
  camp_cmd->add_option("--trials", camp.trials);
  camp_cmd->add_option("--size", camp.max_size, "maximum space size");
  camp_cmd->add_flag("--probe-moreover", camp.probe_level_count,
                     "list every level-count probe violation");
  camp_cmd->add_option("--level-spread-max", camp.level_spread_max);
  camp_cmd->add_option("--jobs", camp.jobs);
  camp_cmd->add_option("--budget", budget);

  auto* fence_cmd = app.add_subcommand("check-fence", "revalidate a fence certificate");
  fence_cmd->add_option("fence", fence_path, "fence JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    lscat::HomotopyOptions hopts{budget};
    lscat::CatOptions copts;
    copts.homotopy_budget = budget;
    copts.max_opens = max_opens;

    if (cat_cmd->parsed()) {
      ctx.command = "cat";
      auto x = lscat::load_space(register_input(ctx, space_path));
      lscat::Bitset a = subset_csv.empty() ? x->full_set() : parse_subset(*x, subset_csv);
      lscat::CatSolver solver(x, copts);
      auto kind = closed ? lscat::SetKind::Closed : lscat::SetKind::Open;
      auto [k, sol] = solver.solve(a, kind);
      json results = lscat::cover_to_json(*x, k, sol, witness);
      if (!witness) results.erase("certificates");
      results["subset"] = lscat::pointset_to_json(*x, a);
      return emit(ctx, results, 0, started);
    }

    if (core_cmd->parsed()) {
      ctx.command = "core";
      auto x = lscat::load_space(register_input(ctx, space_path));
      auto cr = lscat::core(x);
      json results;
      results["core"] = lscat::space_to_json(*cr.core_space);
      results["is_core"] = cr.core_space->size() == x->size();
      json retr = json::object();
      for (int i = 0; i < x->size(); ++i)
        retr[x->id_of(i)] = x->id_of(cr.retraction(i));
      results["retraction"] = std::move(retr);
      results["contractible"] = cr.core_space->size() == 1;
      return emit(ctx, results, 0, started);
    }

    if (contr_cmd->parsed()) {
      ctx.command = "contractible";
      auto x = lscat::load_space(register_input(ctx, space_path));
      lscat::Bitset a = subset_csv.empty() ? x->full_set() : parse_subset(*x, subset_csv);
      auto fent = lscat::contractible_in(x, a, hopts);
      json results;
      results["subset"] = lscat::pointset_to_json(*x, a);
      results["contractible_in_space"] = fent.has_value();
      if (fent) results["fence"] = lscat::fence_to_json(*fent);
      return emit(ctx, results, 0, started);
    }

    if (betti_cmd->parsed()) {
      ctx.command = "betti";
      auto x = lscat::load_space(register_input(ctx, space_path));
      auto k = lscat::order_complex(*x, max_simplices);
      json results;
      results["betti"] = lscat::betti_gf2(k);
      json fvec = json::array();
      for (int d = 0; d <= k.dim(); ++d) fvec.push_back(k.count(d));
      results["f_vector"] = std::move(fvec);
      results["euler_characteristic"] = k.euler_characteristic();
      if (export_complex) results["complex"] = lscat::complex_to_json(k);
      return emit(ctx, results, 0, started);
    }

    if (cup_cmd->parsed()) {
      ctx.command = "cuplength";
      auto x = lscat::load_space(register_input(ctx, space_path));
      auto k = lscat::order_complex(*x, max_simplices);
      json results;
      int cl = lscat::cup_length(k, lscat::CupOptions{budget});
      results["cup_length"] = cl;
      results["betti"] = lscat::betti_gf2(k);
      results["cat_lower_bound"] = cl + 1;
      return emit(ctx, results, 0, started);
    }

    if (verify_cmd->parsed() || spec_cmd->parsed()) {
      ctx.command = verify_cmd->parsed() ? "verify" : "spectrum";
      auto sys = load_system(ctx, system_path, hopts);
      auto solver = std::make_shared<lscat::CatSolver>(sys.space, copts);
      auto nu = make_index(index_name, solver);
      json results;
      if (verify_cmd->parsed()) {
        auto report = lscat::verify_theorem(sys, nu, solver);
        results = lscat::theorem_report_to_json(*sys.space, report);
      } else {
        results = lscat::spectrum_to_json(*sys.space, lscat::minmax_spectrum(sys, nu));
        results["model"] = lscat::kModelNote;
      }
      if (sys.notice) results["notice"] = *sys.notice;
      return emit(ctx, results, 0, started);
    }

    if (ax_cmd->parsed()) {
      ctx.command = "axioms";
      std::string content = lscat::read_file(space_path);
      register_input(ctx, space_path);
      auto first = content.find_first_not_of(" \t\r\n");
      std::optional<lscat::MonotoneMap> phi;
      lscat::SpacePtr x;
      if (first != std::string::npos && content[first] == '{') {
        json j = json::parse(content);
        if (j.contains("format") && j["format"] == "system/1") {
          auto in = lscat::system_from_json(j);
          x = in.space;
          phi = lscat::MonotoneMap{x, x, in.step};
        } else {
          x = lscat::space_from_json(j);
        }
      } else {
        x = lscat::space_from_text(content);
      }
      auto solver = std::make_shared<lscat::CatSolver>(x, copts);
      auto nu = make_index(index_name, solver);
      lscat::CheckMode mode;
      mode.exhaustive = mode_name == "exhaustive";
      mode.samples = samples;
      mode.seed = ctx.seed;
      auto report = lscat::check_axioms(nu, x, phi, mode, hopts);
      json results = lscat::axiom_report_to_json(report);
      results["index"] = nu.name;
      return emit(ctx, results, 0, started);
    }

    if (gen_cmd->parsed()) {
      ctx.command = "gen";
      auto x = make_model(model, gen_n, edge_prob, gen_count, ctx.seed, base_path, ctx);
      json results;
      if (gen_system) {
        auto sys = lscat::generate_system(x, ctx.seed, level_spread);
        results = lscat::system_to_json(sys);
        if (sys.notice) results["notice"] = *sys.notice;
      } else {
        results = lscat::space_to_json(*x);
      }
      return emit(ctx, results, 0, started);
    }

    if (camp_cmd->parsed()) {
      ctx.command = "campaign";
      camp.seed = ctx.seed;
      camp.cat = copts;
      auto res = lscat::run_campaign(camp);
      json results = lscat::campaign_to_json(res);
      int code = 0;
      if (!res.violations.empty())
        code = 1;
      else if (!res.budget_failures.empty())
        code = 3;
      return emit(ctx, results, code, started);
    }

    if (fence_cmd->parsed()) {
      ctx.command = "check-fence";
      auto fence = lscat::fence_from_json(lscat::load_json(register_input(ctx, fence_path)));
      json results;
      auto issue = lscat::fence_violation(fence);
      results["valid"] = !issue.has_value();
      results["length"] = fence.maps.size();
      if (issue) {
        results["error"] = {{"kind", issue->kind}, {"message", issue->message}};
        return emit(ctx, results, 2, started);
      }
      results["endpoints_equal"] = fence.front().assign == fence.back().assign;
      results["ends_constant"] = fence.back().is_constant();
      return emit(ctx, results, 0, started);
    }

    throw lscat::InternalError("no subcommand handled");
  } catch (const lscat::Error& e) {
    json results;
    results["error"] = {{"kind", lscat::error_name(e.kind())}, {"message", e.what()}};
    return emit(ctx, results, lscat::exit_code_for(e.kind()), started);
  } catch (const std::exception& e) {
    json results;
    results["error"] = {{"kind", "InternalError"}, {"message", e.what()}};
    return emit(ctx, results, 2, started);
  }
}
