#ifndef PROFIN_TOOLS_CLI_HPP
#define PROFIN_TOOLS_CLI_HPP

#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "profin/fusion.hpp"
#include "profin/group_spec.hpp"
#include "profin/invariants.hpp"
#include "profin/report.hpp"
#include "profin/tower.hpp"

namespace profin::cli
{

using nlohmann::json;

enum exit_code : int
{
  ok = 0,
  input_error = 1,
  cap_error = 2,
};

struct Outputs
{
  std::string stdout_text;
  std::string json_text; // written to --json when given
  std::string csv_text;  // written to --csv when given
};

inline std::string dump(const json &j) { return j.dump(2) + "\n"; }

inline std::vector<std::uint64_t> parse_list(const std::string &text, const char *what)
{
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    std::uint64_t v = 0;
    try {
      v = std::stoull(item, &used);
    } catch (const std::exception &) {
      used = 0;
    }
    if (used == 0 || used != item.size())
      throw invalid_input(std::string("bad ") + what + " list '" + text + "'");
    out.push_back(v);
  }
  if (out.empty())
    throw invalid_input(std::string("empty ") + what + " list");
  return out;
}

inline json cycles(const std::vector<Permutation> &xs)
{
  json a = json::array();
  for (auto &x : xs)
    a.push_back(x.to_cycles());
  return a;
}

inline Outputs invariants_command(const std::string &text, const Limits &limits)
{
  GroupSpec spec = parse_spec(text);
  PermGroup g = build_group(spec, limits);
  NormalLattice lat(g, limits);
  auto comps = components(g, limits);
  PermGroup f = fitting(lat);
  PermGroup e = layer(g, comps);

  InvariantReport r(print_spec(spec));
  r.set("order", g.size(), "build_group");
  r.set("degree", static_cast<std::uint64_t>(g.degree()), "build_group");
  r.set("normal_subgroups", static_cast<std::uint64_t>(lat.size()), "normal_lattice");
  r.set("fitting_order", f.size(), "fitting");
  r.set("components", static_cast<std::uint64_t>(comps.size()), "components");
  r.set("layer_order", e.size(), "layer");
  r.set("generalized_fitting_order", join(f, e).size(), "generalized_fitting");
  r.set("frattini_normal_order", frattini_normal(lat).size(), "frattini_normal");
  r.set("phi_lhd_height", static_cast<std::uint64_t>(phi_lhd_height(g, limits)),
        "phi_lhd_height");
  for (auto p : g.order().primes()) {
    const std::string ps = std::to_string(p);
    r.set("O_" + ps + "_order", pi_core(lat, {p}).size(), "pi_core");
    r.set("O^" + ps + "_order", pi_residual(lat, {p}).size(), "pi_residual");
    r.set("p_prime_normal_" + ps, is_p_prime_normal(lat, p), "is_p_prime_normal");
  }
  Outputs o;
  o.stdout_text = o.json_text = dump(r.to_json());
  return o;
}

inline Outputs ob_table_command(const std::string &text, std::uint64_t max_n, bool star,
                                const Limits &limits)
{
  if (max_n == 0)
    throw invalid_input("--max-n must be positive");
  GroupSpec spec = parse_spec(text);
  PermGroup g = build_group(spec, limits);
  NormalLattice lat(g, limits);
  std::vector<std::uint64_t> ob, obs;
  for (std::uint64_t n = 1; n <= max_n; ++n) {
    ob.push_back(ob_function(lat, n));
    if (star)
      obs.push_back(ob_star_function(lat, n, limits));
  }
  std::string csv = star ? "n,ob,ob_star\n" : "n,ob\n";
  for (std::uint64_t n = 1; n <= max_n; ++n) {
    csv += std::to_string(n) + "," + std::to_string(ob[n - 1]);
    if (star)
      csv += "," + std::to_string(obs[n - 1]);
    csv += "\n";
  }
  InvariantReport r(print_spec(spec));
  r.set("ob", ob, "ob_function");
  if (star)
    r.set("ob_star", obs, "ob_star_function");
  Outputs o;
  o.stdout_text = o.csv_text = csv;
  o.json_text = dump(r.to_json());
  return o;
}

inline Outputs tate_command(const std::string &text, std::uint64_t p, const std::string &k_text,
                            const Limits &limits)
{
  GroupSpec spec = parse_spec(text);
  PermGroup g = build_group(spec, limits);
  PermGroup k = k_text == "self"    ? g
                : k_text == "sylow" ? sylow(g, p, limits)
                                    : build_group(k_text, limits);
  TateResult t = tate_check(g, k, p, limits);
  InvariantReport r(print_spec(spec));
  r.set("K", k_text == "self" || k_text == "sylow" ? k_text : print_spec(parse_spec(k_text)),
        "tate_check");
  r.set("p", p, "tate_check");
  r.set("derived", t.derived, "tate_check");
  r.set("derived_pth_powers", t.derived_pth_powers, "tate_check");
  r.set("derived_residual", t.derived_residual, "tate_check");
  r.set("residual", t.residual, "tate_check");
  Outputs o;
  o.stdout_text = o.json_text = dump(r.to_json());
  return o;
}

inline Outputs fusion_command(const std::string &text, std::uint64_t p, bool alperin,
                              const Limits &limits)
{
  GroupSpec spec = parse_spec(text);
  PermGroup g = build_group(spec, limits);
  FusionTable ft = fusion_table(g, p, limits);

  json classes = json::array();
  for (std::size_t i = 0; i < ft.s_classes.size(); ++i) {
    const auto &c = ft.s_classes[i];
    classes.push_back({{"id", i},
                       {"order", c.order},
                       {"size", c.size},
                       {"generators", cycles(c.representative.generators())},
                       {"fused_to", ft.fused_to[i]},
                       {"witness", ft.witness[i].to_cycles()},
                       {"automizer_order", ft.automizers[i].order},
                       {"automizer_generators", cycles(ft.automizers[i].generators)}});
  }
  json matrix = json::array();
  for (std::size_t i = 0; i < ft.s_classes.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < ft.s_classes.size(); ++j)
      row.push_back(ft.fused(i, j) ? 1 : 0);
    matrix.push_back(std::move(row));
  }
  json doc = {{"group", print_spec(spec)},
              {"p", p},
              {"sylow_order", ft.sylow.size()},
              {"sylow_generators", cycles(ft.sylow.generators())},
              {"subgroup_count", ft.subgroups.size()},
              {"classes", classes},
              {"fusion", matrix}};
  if (alperin) {
    AlperinResult a = alperin_closure_check(ft);
    json locals = json::array();
    for (auto &l : a.locals)
      locals.push_back({{"class", ft.class_of[l.subgroup]},
                        {"generators", cycles(detail::small_subgroup_group(
                                                ft.table, ft.subgroups[l.subgroup])
                                                .generators())},
                        {"normalizer_generators", cycles(l.normalizer)}});
    json chains = json::array();
    for (auto &c : a.chains) {
      json steps = json::array();
      for (auto &s : c.steps)
        steps.push_back({s.local, s.generator, s.target});
      chains.push_back(
        {{"from", c.from}, {"to", c.to}, {"steps", steps}, {"element", c.element.to_cycles()}});
    }
    doc["alperin"] = {{"holds", a.holds}, {"locals", locals}, {"chains", chains}};
  }
  Outputs o;
  o.stdout_text = o.json_text = dump(doc);
  return o;
}

struct TowerOptions
{
  std::string family;
  std::string params;
  std::size_t depth = 0;
  std::uint64_t max_n = 0; // ob table up to this n; 0 for none
  bool star = false;
  bool fitting = false;
  std::string eta; // "n:bound,n:bound"
};

inline Tower build_tower(const TowerOptions &opt, const Limits &limits)
{
  auto params = parse_list(opt.params, "parameter");
  if (opt.family == "cyclic" || opt.family == "wreath") {
    if (params.size() != 1)
      throw invalid_input(opt.family + " tower takes one parameter (the prime)");
    return opt.family == "cyclic" ? cyclic_tower(params[0], opt.depth, limits)
                                  : wreath_tower(params[0], opt.depth, limits);
  }
  if (opt.family == "fitting-degenerate")
    return fitting_degenerate_tower(params, opt.depth, limits);
  throw invalid_input("unknown tower family '" + opt.family + "'");
}

inline std::vector<std::pair<std::uint64_t, std::uint64_t>> parse_eta(const std::string &text)
{
  std::vector<std::pair<std::uint64_t, std::uint64_t>> eta;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto colon = item.find(':');
    if (colon == std::string::npos)
      throw invalid_input("eta entries are n:bound, got '" + item + "'");
    eta.emplace_back(parse_list(item.substr(0, colon), "eta")[0],
                     parse_list(item.substr(colon + 1), "eta")[0]);
  }
  return eta;
}

inline Outputs tower_command(const TowerOptions &opt, const Limits &limits)
{
  Tower t = build_tower(opt, limits);
  json levels = json::array(), maps = json::array();
  for (auto &g : t.levels) {
    auto n = g.order().to_u64();
    json order = n ? json(*n) : json(g.order().to_string()); // string only past 64 bits
    levels.push_back({{"order", order}, {"degree", g.degree()}});
  }
  for (auto &m : t.maps)
    maps.push_back(cycles(m.images()));
  json doc = {{"family", t.family}, {"params", t.params}, {"levels", levels}, {"maps", maps}};

  Outputs o;
  if (opt.max_n) {
    std::string csv = opt.star ? "level,n,ob,ob_star,stable\n" : "level,n,ob,stable\n";
    std::vector<ObSequence> seqs;
    for (std::uint64_t n = 1; n <= opt.max_n; ++n)
      seqs.push_back(tower_ob_sequence(t, n, opt.star, limits));
    json ob = json::array();
    for (std::size_t lvl = 0; lvl < t.depth(); ++lvl)
      for (std::uint64_t n = 1; n <= opt.max_n; ++n) {
        const ObSequence &s = seqs[n - 1];
        csv += std::to_string(lvl + 1) + "," + std::to_string(n) + "," +
               std::to_string(s.values[lvl]);
        if (opt.star)
          csv += "," + std::to_string(s.star[lvl]);
        csv += std::string(",") + (s.stable ? "true" : "false") + "\n";
      }
    for (std::uint64_t n = 1; n <= opt.max_n; ++n) {
      json row = {{"n", n}, {"ob", seqs[n - 1].values}, {"stable", seqs[n - 1].stable}};
      if (opt.star)
        row["ob_star"] = seqs[n - 1].star;
      ob.push_back(std::move(row));
    }
    doc["ob"] = ob;
    o.csv_text = csv;
  }
  if (opt.fitting)
    doc["fitting_indices"] = tower_fitting_sequence(t, limits);
  if (!opt.eta.empty())
    doc["ji_certificate"] = ji_certificate(t, parse_eta(opt.eta), limits);
  o.stdout_text = o.json_text = dump(doc);
  return o;
}

inline void write_file(const std::string &path, const std::string &text)
{
  std::ofstream f(path, std::ios::binary);
  if (!f)
    throw invalid_input("cannot open '" + path + "' for writing");
  f << text;
  if (!f)
    throw invalid_input("failed writing '" + path + "'");
}

/// Runs one command line. Reports go to `out` (and to --json / --csv files);
/// errors go to `err` as a one-line JSON object. Returns the exit code.
inline int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
  CLI::App app{"Finite group invariants, fusion and profinite approximation towers", "profin"};
  app.require_subcommand(1);
  app.fallthrough();

  Limits limits;
  std::string json_path, csv_path;
  app.add_option("--seed", limits.seed, "seed for randomised subroutines")->default_val(0);
  app.add_option("--json", json_path, "also write the JSON report to this file");
  app.add_option("--csv", csv_path, "also write the CSV table to this file");
  app.add_option("--cap-degree", limits.degree, "largest permutation degree")
    ->default_val(limits.degree);
  app.add_option("--cap-enumeration,--cap-order", limits.enumeration, "largest group enumerated elementwise")
    ->default_val(limits.enumeration);
  app.add_option("--cap-lattice", limits.lattice, "largest group for normal lattices")
    ->default_val(limits.lattice);
  app.add_option("--cap-obstar", limits.obstar, "largest group for strong oblique cores")
    ->default_val(limits.obstar);
  app.add_option("--cap-aut", limits.aut, "largest group for automorphism search")
    ->default_val(limits.aut);
  app.add_option("--cap-sylow-subgroups", limits.sylow_subgroups,
                 "largest Sylow subgroup whose subgroups are enumerated")
    ->default_val(limits.sylow_subgroups);

  std::string spec_text;
  std::uint64_t p = 0, max_n = 0;
  bool star = false, alperin = false;
  std::string k_text = "self";
  TowerOptions topt;

  auto *inv = app.add_subcommand("invariants", "normal-structure invariants of a group");
  inv->add_option("spec", spec_text, "group specification")->required();

  auto *obt = app.add_subcommand("ob-table", "ob(n) for n = 1..max-n as CSV");
  obt->add_option("spec", spec_text, "group specification")->required();
  obt->add_option("--max-n", max_n, "largest n")->required();
  obt->add_flag("--star", star, "add the ob* column");

  auto *tate = app.add_subcommand("tate", "the four transfer-control conditions");
  tate->add_option("spec", spec_text, "group specification")->required();
  tate->add_option("--p", p, "prime")->required();
  tate->add_option("--K", k_text, "self, sylow, or a subgroup specification")
    ->default_val("self");

  auto *fus = app.add_subcommand("fusion", "fusion of subgroups of a Sylow subgroup");
  fus->add_option("spec", spec_text, "group specification")->required();
  fus->add_option("--p", p, "prime")->required();
  fus->add_flag("--alperin", alperin, "verify Alperin factorisation chains");

  auto *tow = app.add_subcommand("tower", "approximation towers and their invariant sequences");
  tow->add_option("--family", topt.family, "cyclic, wreath or fitting-degenerate")->required();
  tow->add_option("--params", topt.params, "prime, or comma-separated primes")->required();
  tow->add_option("--depth", topt.depth, "number of levels")->required();
  tow->add_option("--max-n", topt.max_n, "ob table for n = 1..max-n");
  tow->add_flag("--star", topt.star, "add ob* to the ob table");
  tow->add_flag("--fitting", topt.fitting, "Fitting index sequence");
  tow->add_option("--eta", topt.eta, "certificate pairs n:bound,...");

  auto fail = [&](int code, json diag) {
    err << diag.dump() << "\n";
    return code;
  };

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError &e) {
    return fail(input_error, {{"error", "usage"}, {"message", e.what()}});
  }

  try {
    Outputs o;
    if (*inv)
      o = invariants_command(spec_text, limits);
    else if (*obt)
      o = ob_table_command(spec_text, max_n, star, limits);
    else if (*tate)
      o = tate_command(spec_text, p, k_text, limits);
    else if (*fus)
      o = fusion_command(spec_text, p, alperin, limits);
    else
      o = tower_command(topt, limits);

    // all computation done: emit everything or nothing
    if (!json_path.empty())
      write_file(json_path, o.json_text);
    if (!csv_path.empty()) {
      if (o.csv_text.empty())
        throw invalid_input("this command produces no CSV table");
      write_file(csv_path, o.csv_text);
    }
    out << o.stdout_text;
    return ok;
  } catch (const spec_error &e) {
    return fail(input_error, {{"error", "invalid_input"},
                              {"message", e.what()},
                              {"line", e.line()},
                              {"column", e.column()}});
  } catch (const cap_exceeded &e) {
    return fail(cap_error, {{"error", "cap_exceeded"},
                            {"cap", e.cap()},
                            {"limit", e.limit()},
                            {"message", e.what()}});
  } catch (const invalid_input &e) {
    return fail(input_error, {{"error", "invalid_input"}, {"message", e.what()}});
  }
}

} // namespace profin::cli

#endif
