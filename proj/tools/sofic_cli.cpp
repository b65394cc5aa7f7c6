// Batch command-line interface: one command per invocation, one JSON report.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "sofic/align.hpp"
#include "sofic/commutant.hpp"
#include "sofic/convex.hpp"
#include "sofic/error.hpp"
#include "sofic/group.hpp"
#include "sofic/io.hpp"
#include "sofic/rounding.hpp"

namespace {

using namespace sofic;
using io::json;

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitBudget = 4;

struct Options {
  std::vector<std::string> inputs;
  std::string output;
  std::uint64_t seed = 0;
  std::size_t max_words = 3;
  std::size_t exact_cap = 8;
  std::size_t anneal_steps = 5000;
  std::size_t restarts = 20;
  std::size_t enum_cap = 100'000;

  // command-specific
  std::string kind;
  std::string group = "cyclic";
  std::string side = "left";
  std::string other;
  std::size_t n = 0, r = 0, m = 0, cap = 1'000'000;
  std::vector<std::size_t> subgroup, subset, map, y, z;
  std::vector<std::string> weights;
  bool exact = false;
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--input", o.inputs, "input JSON file (repeatable where a command takes several)");
  cmd->add_option("--output", o.output, "report path; stdout if omitted");
  cmd->add_option("--seed", o.seed, "root seed");
  cmd->add_option("--max-words", o.max_words, "word-length truncation L");
  cmd->add_option("--exact-cap", o.exact_cap, "largest dimension for exhaustive conjugator search");
  cmd->add_option("--anneal-steps", o.anneal_steps, "annealing steps per restart");
  cmd->add_option("--restarts", o.restarts, "annealing restarts");
  cmd->add_option("--enum-cap", o.enum_cap, "centralizer enumeration cap");
}

json config_echo(const std::string& command, const Options& o) {
  json c;
  c["command"] = command;
  c["inputs"] = o.inputs;
  c["seed"] = o.seed;
  c["max_words"] = o.max_words;
  c["exact_cap"] = o.exact_cap;
  c["anneal_steps"] = o.anneal_steps;
  c["restarts"] = o.restarts;
  c["enum_cap"] = o.enum_cap;
  return c;
}

const std::string& single_input(const Options& o) {
  if (o.inputs.size() != 1) throw PreconditionError("expected exactly one --input");
  return o.inputs.front();
}

SoficApprox load_approx(const std::string& path) { return io::approx_from_json(io::read_json_file(path)); }

Subset subset_arg(const std::vector<std::size_t>& pts, std::size_t n) {
  std::vector<Point> p(pts.begin(), pts.end());
  return Subset(n, std::move(p));
}

CayleyTable named_table(const Options& o) {
  if (!o.inputs.empty()) return io::table_from_json(io::read_json_file(single_input(o)));
  if (o.group == "cyclic") return cyclic_group_table(o.n);
  if (o.group == "dihedral") return dihedral_group_table(o.n);
  if (o.group == "klein") return klein_four_table();
  if (o.group == "quaternion") return quaternion_table();
  throw ParseError("unknown group '" + o.group + "'");
}

// Approximation documents carry the config echo alongside the usual fields;
// the loader ignores unknown keys.
json approx_report(const SoficApprox& theta, json config) {
  json out = io::to_json(theta);
  out["config"] = std::move(config);
  return out;
}

json cmd_build(Options& o, json cfg) {
  cfg["kind"] = o.kind;
  if (o.kind == "shift") {
    cfg["n"] = o.n;
    return approx_report(cyclic_shift_approx(o.n), cfg);
  }
  const CayleyTable k = named_table(o);
  cfg["group"] = o.inputs.empty() ? o.group : "table";
  cfg["n"] = o.n;
  if (o.kind == "regular") {
    if (o.side != "left" && o.side != "right") throw ParseError("--side must be left or right");
    cfg["side"] = o.side;
    return approx_report(regular_action(k, o.side == "left" ? Side::left : Side::right), cfg);
  }
  if (o.kind == "coset") {
    cfg["subgroup"] = o.subgroup;
    return approx_report(coset_action(k, std::vector<Point>(o.subgroup.begin(), o.subgroup.end())), cfg);
  }
  throw ParseError("unknown construction '" + o.kind + "'");
}

json cmd_profile(Options& o, json cfg) {
  const SoficApprox theta = load_approx(single_input(o));
  json out = io::to_json(trace_profile(theta, o.max_words), theta.generators());
  out["dimension"] = theta.dimension();
  if (theta.relators()) {
    out["relator_defect"] = to_string(relator_defect(theta));
    out["relator_defect_note"] = "max over relators of the squared Hilbert-Schmidt distance to the identity";
  } else {
    out["relator_defect"] = "0/1";
    out["relator_defect_note"] = "no relators supplied";
  }
  out["config"] = std::move(cfg);
  return out;
}

json cmd_combine(Options& o, json cfg) {
  if (o.inputs.size() != o.weights.size()) throw PreconditionError("need one --weights entry per --input");
  std::vector<std::pair<Rational, SoficApprox>> pairs;
  for (std::size_t i = 0; i < o.inputs.size(); ++i)
    pairs.emplace_back(parse_rational(o.weights[i]), load_approx(o.inputs[i]));
  cfg["weights"] = o.weights;
  cfg["cap"] = o.cap;
  auto [theta, plan] = convex_combine(pairs, o.cap);
  json out = approx_report(theta, cfg);
  out["plan"] = io::to_json(plan);
  return out;
}

json cmd_amplify(Options& o, json cfg) {
  cfg["r"] = o.r;
  return approx_report(amplify(load_approx(single_input(o)), o.r), cfg);
}

json cmd_tensor_power(Options& o, json cfg) {
  cfg["m"] = o.m;
  cfg["cap"] = o.cap;
  return approx_report(tensor_power(load_approx(single_input(o)), o.m, o.cap), cfg);
}

json cmd_cut(Options& o, json cfg) {
  const SoficApprox theta = load_approx(single_input(o));
  const Subset s = subset_arg(o.subset, theta.dimension());
  cfg["subset"] = io::to_json(s);
  json out = approx_report(cut(theta, s), cfg);
  out["recovery_conjugator"] = io::to_json(cut_recovery_conjugator(s));
  return out;
}

json cmd_orbits(Options& o, json cfg) {
  const SoficApprox theta = load_approx(single_input(o));
  return {{"config", cfg}, {"dimension", theta.dimension()}, {"orbits", orbits(theta)}};
}

json cmd_round(Options& o, json cfg) {
  const PointMap f(std::vector<Point>(o.map.begin(), o.map.end()));
  const Rounding rd = round_to_permutation(f);
  cfg["map"] = o.map;
  const std::size_t n = f.size();
  return {{"config", cfg},
          {"permutation", io::to_json(rd.w)},
          {"disagreements", rd.disagreements},
          {"deficit", deficit(f)},
          {"hs_dist_sq", to_string(make_rational(2 * static_cast<long long>(rd.disagreements), static_cast<long long>(n)))}};
}

json cmd_majority(Options& o, json cfg) {
  const json doc = io::read_json_file(single_input(o));
  const std::size_t n = doc.at("ambient").get<std::size_t>();
  const SubsetFamily fam = io::family_from_json(doc.at("family"), n);
  const MajoritySet maj = majority_set(fam);
  const Witness w = witness_permutation(fam, o.seed);
  return {{"config", cfg},
          {"majority", io::to_json(maj.set)},
          {"cost", maj.cost},
          {"witness", io::to_json(w.p)},
          {"witness_cost", w.cost},
          {"witness_exhaustive", w.exhaustive},
          {"averaging_bound", averaging_bound(fam)}};
}

json cmd_blockify(Options& o, json cfg) {
  const Subset s = subset_arg(o.subset, o.n * o.r);
  cfg["n"] = o.n;
  cfg["r"] = o.r;
  cfg["subset"] = io::to_json(s);
  const Blockified b = blockify(s, o.n, o.r);
  json slices = json::array();
  for (const Subset& a : b.slices) slices.push_back(io::to_json(a));
  return {{"config", cfg},
          {"t", io::to_json(b.t)},
          {"majority", io::to_json(b.majority.set)},
          {"slices", std::move(slices)},
          {"distance", b.distance}};
}

json cmd_distance(Options& o, json cfg) {
  if (o.other.empty()) throw PreconditionError("--other is required");
  const Equalized eq = equalize_dimensions(load_approx(single_input(o)), load_approx(o.other));
  const WeightScheme ws = make_weight_scheme(eq.theta.generators().size(), o.max_words);
  cfg["other"] = o.other;
  cfg["mode"] = o.exact ? "exact" : "anneal";
  const Alignment al = o.exact ? conj_distance_exact(eq.theta, eq.phi, ws, o.exact_cap)
                               : conj_distance_anneal(eq.theta, eq.phi, ws, o.seed,
                                                      AnnealConfig{o.restarts, o.anneal_steps});
  return {{"config", cfg},
          {"dimension", eq.theta.dimension()},
          {"amplification", {eq.theta_factor, eq.phi_factor}},
          {"word_count", ws.word_count()},
          {"alignment", io::to_json(al)}};
}

json cmd_axioms(Options& o, json cfg) {
  std::vector<SoficApprox> inst;
  for (const auto& p : o.inputs) inst.push_back(load_approx(p));
  AxiomSuiteConfig ac;
  ac.max_length = o.max_words;
  ac.exact_cap = std::min<std::size_t>(o.exact_cap, 7);
  ac.seed = o.seed;
  ac.anneal.restarts = o.restarts;
  ac.anneal.steps = o.anneal_steps;
  const AxiomReport rep = axiom_suite(inst, ac);
  json checks = json::array();
  for (const AxiomCheck& c : rep.checks)
    checks.push_back({{"axiom", c.axiom},
                      {"instance", c.instance},
                      {"passed", c.passed},
                      {"objective", to_string(c.objective)},
                      {"bound", to_string(c.bound)},
                      {"conjugator", io::to_json(c.conjugator)},
                      {"detail", c.detail}});
  return {{"config", cfg},
          {"all_passed", rep.all_passed()},
          {"empirical_metric_constant_display_only", rep.empirical_metric_constant},
          {"checks", std::move(checks)}};
}

json cmd_centralizer(Options& o, json cfg) {
  const SoficApprox theta = load_approx(single_input(o));
  const auto desc = centralizer_exact(theta);
  json gens = json::array(), elems = json::array();
  for (const Perm& p : desc.generators()) gens.push_back(io::to_json(p));
  const auto listed = desc.elements(o.enum_cap);
  for (const Perm& p : listed) elems.push_back(io::to_json(p));
  return {{"config", cfg},
          {"order", desc.order().str()},
          {"order_formula", desc.order_formula()},
          {"generators", std::move(gens)},
          {"elements", std::move(elems)},
          {"complete", Integer(listed.size()) == desc.order()}};
}

json cmd_certificate(Options& o, json cfg) {
  const SoficApprox theta = load_approx(single_input(o));
  const auto cert = ergodicity_certificate(theta);
  json out = io::to_json(cert);
  out["verified"] = verify_certificate(theta, cert);
  out["config"] = std::move(cfg);
  return out;
}

json cmd_mixing(Options& o, json cfg) {
  const SoficApprox theta = load_approx(single_input(o));
  const Subset ys = subset_arg(o.y, theta.dimension()), zs = subset_arg(o.z, theta.dimension());
  cfg["y"] = io::to_json(ys);
  cfg["z"] = io::to_json(zs);
  const MixingStatistic ms = mixing_statistic(theta, ys, zs, o.enum_cap);
  json out = {{"config", cfg},
              {"value", to_string(ms.value)},
              {"min_measure", to_string(ms.min_measure)},
              {"enumerated", ms.enumerated},
              {"exhaustive", ms.exhaustive}};
  if (ms.best) out["best"] = io::to_json(*ms.best);
  return out;
}

void emit(const Options& o, const json& report) {
  if (o.output.empty())
    std::cout << report.dump(2) << '\n';
  else
    io::write_json_file_atomic(o.output, report);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-stage sofic approximation workbench"};
  app.require_subcommand(1);
  Options o;

  using Handler = json (*)(Options&, json);
  std::vector<std::pair<CLI::App*, Handler>> commands;
  auto add = [&](const char* name, const char* help, Handler h) {
    CLI::App* c = app.add_subcommand(name, help);
    add_common(c, o);
    commands.emplace_back(c, h);
    return c;
  };

  auto* build = add("build", "construct shift, regular or coset approximations", cmd_build);
  build->add_option("kind", o.kind, "shift | regular | coset")->required();
  build->add_option("--n", o.n, "dimension or group parameter");
  build->add_option("--group", o.group, "cyclic | dihedral | klein | quaternion");
  build->add_option("--side", o.side, "left | right");
  build->add_option("--subgroup", o.subgroup, "subgroup elements")->delimiter(',');

  add("profile", "trace profile and relator defect", cmd_profile);
  auto* combine = add("combine", "convex combination with plan report", cmd_combine);
  combine->add_option("--weights", o.weights, "weights as p/q, one per input")->delimiter(',')->required();
  combine->add_option("--cap", o.cap, "total dimension cap");
  add("amplify", "tensor with an identity block", cmd_amplify)->add_option("--r", o.r)->required();
  auto* tp = add("tensor-power", "m-th tensor power", cmd_tensor_power);
  tp->add_option("--m", o.m)->required();
  tp->add_option("--cap", o.cap, "dimension cap");
  add("cut", "restrict to an invariant subset", cmd_cut)->add_option("--subset", o.subset)->delimiter(',');
  add("orbits", "orbit decomposition", cmd_orbits);
  add("round", "round a point map to a permutation", cmd_round)
      ->add_option("--map", o.map, "images f(0),f(1),...")
      ->delimiter(',')
      ->required();
  add("majority", "majority set and copy-shift witness", cmd_majority);
  auto* bl = add("blockify", "block approximation of a subset of n*r points", cmd_blockify);
  bl->add_option("--n", o.n)->required();
  bl->add_option("--r", o.r)->required();
  bl->add_option("--subset", o.subset)->delimiter(',');
  auto* dist = add("distance", "conjugacy distance", cmd_distance);
  dist->add_option("--other", o.other, "second approximation")->required();
  dist->add_flag("--exact", o.exact, "exhaustive search instead of annealing");
  add("axioms", "convex axiom certificates", cmd_axioms);
  add("centralizer", "exact centralizer", cmd_centralizer);
  add("certificate", "transitivity certificate of the centralizer", cmd_certificate);
  auto* mix = add("mixing", "mixing statistic over centralizer elements", cmd_mixing);
  mix->add_option("--y", o.y)->delimiter(',');
  mix->add_option("--z", o.z)->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }

  try {
    for (auto& [cmd, handler] : commands) {
      if (!cmd->parsed()) continue;
      emit(o, handler(o, config_echo(cmd->get_name(), o)));
    }
    return kExitOk;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const BudgetError& e) {
    std::cerr << "budget exhausted: " << e.what() << '\n';
    return kExitBudget;
  } catch (const Error& e) {
    std::cerr << "precondition violated: " << e.what() << '\n';
    return kExitPrecondition;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitParse;
  }
}
