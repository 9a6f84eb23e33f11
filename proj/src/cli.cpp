#include "spreclone/cli.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spreclone/closures.hpp"
#include "spreclone/error.hpp"
#include "spreclone/galois.hpp"
#include "spreclone/io.hpp"
#include "spreclone/lattice_tools.hpp"
#include "spreclone/relation.hpp"
#include "spreclone/signed_op.hpp"

namespace spreclone::cli {

namespace {

using io::Json;

constexpr std::uint64_t kHardTupleLimit = std::uint64_t{1} << 20;

struct RunConfig {
  std::string monoid = "z2";
  int k = 2;
  int op_cap = 3;
  int rel_cap = 2;
  int slack = -1;  // negative: engine default
  std::string format = "json";
  std::uint64_t seed = 0;
};

struct Inputs {
  std::string op_file;
  std::string gen_file;
  std::string rel_file;
  std::string clone_file;
  std::string signum;
  std::string pi;
  std::string h;
  std::string mode;
  int arity = 0;
  int random = 0;
};

std::uint64_t power(std::uint64_t base, int exponent) {
  std::uint64_t out = 1;
  for (int i = 0; i < exponent; ++i) {
    if (out > kHardTupleLimit) return out;
    out *= base;
  }
  return out;
}

void validate(const RunConfig& config) {
  if (config.k < 1 || config.k > 255) throw Error(ErrorKind::Usage, "--k must lie in 1..255");
  if (config.op_cap < 1) throw Error(ErrorKind::Usage, "--op-cap must be positive");
  if (config.rel_cap < 1) throw Error(ErrorKind::Usage, "--rel-cap must be positive");
  if (config.format != "json" && config.format != "text") throw Error(ErrorKind::Usage, "--format is json or text");
  const std::uint64_t required = power(static_cast<std::uint64_t>(config.k), config.rel_cap);
  if (required > kHardTupleLimit) {
    throw Error(ErrorKind::ArityCapExceeded, "relation cap " + std::to_string(config.rel_cap) + " needs k^m = " +
                                                 std::to_string(config.k) + "^" + std::to_string(config.rel_cap) +
                                                 " tuples, configured limit is 2^20 = " +
                                                 std::to_string(kHardTupleLimit));
  }
}

std::optional<int> slack_option(const RunConfig& config) {
  if (config.slack < 0) return std::nullopt;
  return config.slack;
}

Json caps_json(const RunConfig& config) {
  Json caps{{"op_arity", config.op_cap}, {"rel_arity", config.rel_cap}};
  if (config.slack >= 0) caps["slack"] = config.slack;
  return caps;
}

std::vector<SignedOp> load_ops(const std::string& path, const Monoid& monoid, const char* flag) {
  if (path.empty()) throw Error(ErrorKind::Usage, std::string(flag) + " is required");
  return io::ops_from_json(io::read_json_file(path), monoid);
}

std::vector<SRelation> load_relations(const std::string& path, const Monoid& monoid, bool required = true) {
  if (path.empty()) {
    if (required) throw Error(ErrorKind::Usage, "--rel is required");
    return {};
  }
  return io::relations_from_json(io::read_json_file(path), monoid);
}

void require_domain(int k, std::span<const SignedOp> ops, std::span<const SRelation> relations) {
  for (const auto& f : ops)
    if (f.domain_size() != k) throw Error(ErrorKind::DomainMismatch, "operation base set differs from --k");
  for (const auto& r : relations)
    if (r.domain_size() != k) throw Error(ErrorKind::DomainMismatch, "relation base set differs from --k");
}

Json ops_json(std::span<const SignedOp> ops, const Monoid& monoid) {
  Json out = Json::array();
  for (const auto& f : ops) out.push_back(io::to_json(f, monoid));
  return out;
}

Json relations_json(std::span<const SRelation> relations, const Monoid& monoid) {
  Json out = Json::array();
  for (const auto& r : relations) out.push_back(io::to_json(r, monoid));
  return out;
}

Json counts_by_arity(std::span<const SignedOp> ops, int cap) {
  Json counts = Json::array();
  for (int n = 1; n <= cap; ++n)
    counts.push_back(std::count_if(ops.begin(), ops.end(), [n](const SignedOp& f) { return f.arity() == n; }));
  return counts;
}

Json handle_json(const PrecloneHandle& handle) {
  Json out = Json::object();
  if (handle.has_generators()) out["generators"] = ops_json(handle.generators(), handle.monoid());
  out["fragment_size"] = handle.fragment().size();
  out["fragment_by_arity"] = counts_by_arity(handle.fragment(), handle.op_cap());
  return out;
}

std::vector<int> parse_int_list(const std::string& literal) {
  std::vector<int> out;
  std::size_t start = 0;
  while (start <= literal.size()) {
    const std::size_t comma = std::min(literal.find(',', start), literal.size());
    const std::string item = literal.substr(start, comma - start);
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorKind::Usage, "bad integer '" + item + "' in '" + literal + "'");
    }
    start = comma + 1;
  }
  return out;
}

ValuePermutation parse_value_permutation(const std::string& literal, int k) {
  const auto values = parse_int_list(literal);
  if (static_cast<int>(values.size()) != k) throw Error(ErrorKind::Usage, "--pi must list k images");
  std::vector<bool> seen(static_cast<std::size_t>(k), false);
  ValuePermutation pi;
  for (int v : values) {
    if (v < 0 || v >= k || seen[static_cast<std::size_t>(v)]) throw Error(ErrorKind::Usage, "--pi is not a permutation of the base set");
    seen[static_cast<std::size_t>(v)] = true;
    pi.push_back(static_cast<Value>(v));
  }
  return pi;
}

Permutation parse_automorphism(const std::string& literal, const Monoid& monoid) {
  const Permutation h = monoid.parse_signum(literal);
  const auto autos = monoid.automorphisms();
  if (std::find(autos.begin(), autos.end(), h) == autos.end()) throw Error(ErrorKind::Usage, "--automorphism is not a monoid automorphism");
  return h;
}

std::vector<ValuePermutation> all_value_permutations(int k) {
  ValuePermutation pi(static_cast<std::size_t>(k));
  std::iota(pi.begin(), pi.end(), Value{0});
  std::vector<ValuePermutation> out;
  do out.push_back(pi);
  while (std::next_permutation(pi.begin(), pi.end()));
  return out;
}

struct Outcome {
  Json report;
  bool property_holds = true;
};

using Handler = std::function<Outcome(const RunConfig&, const Inputs&, const Monoid&)>;

Outcome do_check(const RunConfig& config, const Inputs& in, const Monoid& monoid) {
  const auto ops = load_ops(in.op_file, monoid, "--op");
  const auto relations = load_relations(in.rel_file, monoid);
  require_domain(config.k, ops, relations);
  Outcome outcome;
  Json results = Json::array();
  for (std::size_t i = 0; i < ops.size(); ++i)
    for (std::size_t j = 0; j < relations.size(); ++j) {
      Json entry{{"op", i}, {"relation", j}};
      if (auto witness = find_violation(monoid, ops[i], relations[j])) {
        outcome.property_holds = false;
        entry["preserved"] = false;
        entry["witness"] = io::to_json(*witness, config.k, monoid);
      } else {
        entry["preserved"] = true;
      }
      results.push_back(std::move(entry));
    }
  outcome.report = Json{{"result", outcome.property_holds ? "preserved" : "violated"}, {"checks", std::move(results)}};
  return outcome;
}

Outcome do_gamma(const RunConfig& config, const Inputs& in, const Monoid& monoid) {
  const auto gens = load_ops(in.gen_file, monoid, "--gen");
  const auto relations = load_relations(in.rel_file, monoid);
  require_domain(config.k, gens, relations);
  Json results = Json::array();
  for (const auto& rho : relations) {
    const auto closure = gamma_closure(monoid, gens, rho);
    results.push_back(Json{{"iterations", closure.iterations}, {"closure", io::to_json(closure.result, monoid)}});
  }
  return {Json{{"results", std::move(results)}}, true};
}

Outcome do_chi(const RunConfig& config, const Inputs& in, const Monoid& monoid) {
  if (in.signum.empty()) throw Error(ErrorKind::Usage, "--signum is required");
  const Signum lambda = monoid.parse_signum(in.signum);
  const auto c = chi(monoid, config.k, lambda);
  Json columns = Json::array();
  const int m = c.relation.arity();
  for (TupleIndex col : c.columns) {
    Json t = Json::array();
    for (Value v : decode(col, config.k, m)) t.push_back(static_cast<int>(v));
    columns.push_back(std::move(t));
  }
  return {Json{{"columns", std::move(columns)}, {"relation", io::to_json(c.relation, monoid)}}, true};
}

Outcome do_member(const RunConfig& config, const Inputs& in, const Monoid& monoid) {
  const auto gens = load_ops(in.gen_file, monoid, "--gen");
  const auto candidates = load_ops(in.op_file, monoid, "--op");
  require_domain(config.k, gens, {});
  require_domain(config.k, candidates, {});
  MembershipOracle oracle(monoid, config.k, gens);
  Outcome outcome;
  Json results = Json::array();
  for (const auto& g : candidates) {
    const auto result = oracle.test(g);
    Json entry{{"op", io::to_json(g, monoid)}, {"member", result.member}};
    if (result.witness) entry["witness"] = io::to_json(*result.witness, config.k, monoid);
    if (!result.member) outcome.property_holds = false;
    results.push_back(std::move(entry));
  }
  outcome.report = Json{{"member", outcome.property_holds}, {"results", std::move(results)}};
  return outcome;
}

Outcome do_spol(const RunConfig& config, const Inputs& in, const Monoid& monoid) {
  const auto relations = load_relations(in.rel_file, monoid);
  require_domain(config.k, {}, relations);
  const auto ops = spol(monoid, config.k, relations, config.op_cap);
  return {Json{{"caps", caps_json(config)},
               {"count", ops.size()},
               {"by_arity", counts_by_arity(ops, config.op_cap)},
               {"members", ops_json(ops, monoid)}},
          true};
}

Outcome do_sinv(const RunConfig& config, const Inputs& in, const Monoid& monoid) {
  const auto gens = load_ops(in.gen_file, monoid, "--gen");
  require_domain(config.k, gens, {});
  const auto relations = sinv(monoid, config.k, gens, config.rel_cap);
  return {Json{{"caps", caps_json(config)}, {"count", relations.size()}, {"members", relations_json(relations, monoid)}},
          true};
}

Outcome do_gen_preclone(const RunConfig& config, const Inputs& in, const Monoid& monoid) {
  const auto gens = load_ops(in.gen_file, monoid, "--gen");
  require_domain(config.k, gens, {});
  PrecloneOptions options;
  options.arity_cap = config.op_cap;
  options.slack = slack_option(config);
  const auto fragment = preclone_generate(monoid, config.k, gens, options);
  return {io::to_json(fragment, monoid), true};
}

Outcome do_gen_relclone(const RunConfig& config, const Inputs& in, const Monoid& monoid) {
  const auto relations = load_relations(in.rel_file, monoid, false);
  require_domain(config.k, {}, relations);
  RelCloneOptions options;
  options.arity_cap = config.rel_cap;
  options.slack = slack_option(config);
  const auto fragment = relclone_generate(monoid, config.k, relations, options);
  return {io::to_json(fragment, monoid), true};
}

Outcome do_diagonals(const RunConfig& config, const Inputs& in, const Monoid& monoid) {
  std::vector<int> arities;
  if (in.arity > 0) {
    arities.push_back(in.arity);
  } else {
    for (int m = 1; m <= config.rel_cap; ++m) arities.push_back(m);
  }
  Json levels = Json::array();
  for (int m : arities) {
    const auto diagonals = s_diagonals_all(monoid, config.k, m);
    levels.push_back(Json{{"arity", m}, {"count", diagonals.size()}, {"members", relations_json(diagonals, monoid)}});
  }
  return {Json{{"levels", std::move(levels)}}, true};
}

Outcome do_verify_thm1(const RunConfig& config, const Inputs& in, const Monoid& monoid) {
  const auto gens = load_ops(in.gen_file, monoid, "--gen");
  require_domain(config.k, gens, {});
  PrecloneOptions options;
  options.arity_cap = config.op_cap;
  options.slack = slack_option(config);
  const auto report = verify_theorem_I(monoid, config.k, gens, config.op_cap, options);
  Json discrepancies = Json::array();
  for (const auto& d : report.discrepancies)
    discrepancies.push_back(
        Json{{"op", io::to_json(d.op, monoid)}, {"in_fragment", d.in_fragment}, {"in_gamma", d.in_gamma}});
  return {Json{{"caps", Json{{"op_arity", report.op_cap}, {"slack", report.slack}}},
               {"candidates", report.candidates},
               {"fragment_members", report.fragment_members},
               {"gamma_members", report.gamma_members},
               {"saturated_arities", report.saturated_arities},
               {"discrepancies", std::move(discrepancies)},
               {"ok", report.ok()}},
          report.ok()};
}

Outcome do_verify_thm2(const RunConfig& config, const Inputs& in, const Monoid& monoid) {
  const auto relations = load_relations(in.rel_file, monoid);
  require_domain(config.k, {}, relations);
  RelCloneOptions options;
  options.arity_cap = config.rel_cap;
  options.slack = slack_option(config);
  const auto report = verify_theorem_II(monoid, config.k, relations, config.op_cap, config.rel_cap, options);
  Json rounds = Json::array();
  for (const auto& r : report.rounds)
    rounds.push_back(Json{{"op_cap", r.op_cap},
                          {"spol_size", r.spol_size},
                          {"sinv_size", r.sinv_size},
                          {"contained", r.contained},
                          {"difference", relations_json(r.difference, monoid)}});
  return {Json{{"caps", caps_json(config)},
               {"fragment_saturated", report.fragment_saturated},
               {"fragment_size", report.fragment_size},
               {"rounds", std::move(rounds)},
               {"ok", report.ok()}},
          report.ok()};
}

Outcome do_sheffer(const RunConfig& config, const Inputs& in, const Monoid& monoid) {
  const auto report = sheffer_generation_check(monoid, config.k, config.op_cap, in.random, config.seed);
  return {Json{{"caps", caps_json(config)},
               {"seed", config.seed},
               {"generator", io::to_json(webb_operation(monoid, config.k), monoid)},
               {"checked", report.checked},
               {"failures", ops_json(report.failures, monoid)},
               {"random_checked", report.random_checked},
               {"random_failures", ops_json(report.random_failures, monoid)},
               {"ok", report.ok()}},
          report.ok()};
}

Outcome do_minimal(const RunConfig& config, const Inputs&, const Monoid& monoid) {
  const auto report = minimal_search(monoid, config.k, config.op_cap);
  Json classes = Json::array();
  for (const auto& c : report.minimal) {
    Json entry = handle_json(c.handle);
    entry["members"] = ops_json(c.members, monoid);
    classes.push_back(std::move(entry));
  }
  return {Json{{"caps", caps_json(config)},
               {"search_arity", report.search_arity},
               {"candidates", report.candidates},
               {"minimal", std::move(classes)}},
          true};
}

Outcome do_maximal(const RunConfig& config, const Inputs&, const Monoid& monoid) {
  const auto report = maximal_candidates(monoid, config.k, config.op_cap);
  Json candidates = Json::array();
  for (const auto& c : report.candidates) {
    Json entry{{"parts", c.part_labels},
               {"relation", io::to_json(c.relation, monoid)},
               {"merged", c.merged},
               {"full", c.full}};
    entry["fragment_size"] = c.handle.fragment().size();
    entry["fragment_by_arity"] = counts_by_arity(c.handle.fragment(), report.op_cap);
    candidates.push_back(std::move(entry));
  }
  Json inclusion = Json::array();
  for (const auto& row : report.inclusion) {
    Json r = Json::array();
    for (bool b : row) r.push_back(b ? 1 : 0);
    inclusion.push_back(std::move(r));
  }
  return {Json{{"caps", caps_json(config)},
               {"raw_candidates", report.raw_candidates},
               {"candidates", std::move(candidates)},
               {"inclusion", std::move(inclusion)},
               {"maximal", report.maximal},
               {"maximal_found", report.maximal.size()},
               {"expected_count", report.expected_count}},
          true};
}

Outcome do_embed(const RunConfig& config, const Inputs& in, const Monoid& monoid) {
  if (in.mode != "psi" && in.mode != "phi") throw Error(ErrorKind::Usage, "embed mode is psi or phi");
  if (in.clone_file.empty()) throw Error(ErrorKind::Usage, "--clone is required");
  const auto tables = io::operations_from_json(io::read_json_file(in.clone_file));
  for (const auto& f : tables)
    if (f.domain_size() != config.k) throw Error(ErrorKind::DomainMismatch, "operation base set differs from --k");
  const auto handle = in.mode == "psi" ? psi_embed(monoid, config.k, tables, config.op_cap)
                                       : phi_embed(monoid, config.k, tables, config.op_cap);
  Json report = handle_json(handle);
  report["caps"] = caps_json(config);
  report["mode"] = in.mode;
  Json inverse = Json::array();
  for (const auto& f : phi_inverse(handle)) inverse.push_back(io::to_json(f));
  report["underlying"] = std::move(inverse);
  return {std::move(report), true};
}

Outcome do_orbit(const RunConfig& config, const Inputs& in, const Monoid& monoid) {
  const auto gens = load_ops(in.gen_file, monoid, "--gen");
  require_domain(config.k, gens, {});
  const auto handle = PrecloneHandle::generated(monoid, config.k, gens, config.op_cap);
  const auto pis = all_value_permutations(config.k);
  const auto hs = monoid.automorphisms();
  const auto orbit = symmetry_orbit(handle, pis, hs);
  Json members = Json::array();
  for (const auto& h : orbit) members.push_back(handle_json(h));
  return {Json{{"caps", caps_json(config)},
               {"value_permutations", pis.size()},
               {"automorphisms", hs.size()},
               {"orbit_size", orbit.size()},
               {"orbit", std::move(members)}},
          true};
}

Outcome do_dual(const RunConfig& config, const Inputs& in, const Monoid& monoid) {
  ValuePermutation pi(static_cast<std::size_t>(config.k));
  std::iota(pi.begin(), pi.end(), Value{0});
  if (!in.pi.empty()) pi = parse_value_permutation(in.pi, config.k);
  Permutation h(monoid.size());
  std::iota(h.begin(), h.end(), Elem{0});
  if (!in.h.empty()) h = parse_automorphism(in.h, monoid);
  if (in.op_file.empty() && in.rel_file.empty()) throw Error(ErrorKind::Usage, "--op or --rel is required");
  Json report = Json::object();
  if (!in.op_file.empty()) {
    auto ops = load_ops(in.op_file, monoid, "--op");
    require_domain(config.k, ops, {});
    for (auto& f : ops) f = h_map(pi_dual(f, pi), h);
    report["ops"] = ops_json(ops, monoid);
  }
  if (!in.rel_file.empty()) {
    auto relations = load_relations(in.rel_file, monoid);
    require_domain(config.k, {}, relations);
    for (auto& r : relations) r = h_map(pi_dual(r, pi), h);
    report["relations"] = relations_json(relations, monoid);
  }
  return {std::move(report), true};
}

void add_common(CLI::App* sub, RunConfig& config) {
  sub->add_option("--monoid", config.monoid, "builtin name (trivial, z2, z3, sprime, shat) or monoid file");
  sub->add_option("--k", config.k, "size of the base set");
  sub->add_option("--op-cap", config.op_cap, "operation arity cap");
  sub->add_option("--rel-cap", config.rel_cap, "relation arity cap");
  sub->add_option("--slack", config.slack, "extra arity for intermediate terms");
  sub->add_option("--format", config.format, "json or text");
  sub->add_option("--seed", config.seed, "seed for randomized suites");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"S-preclones and S-relational clones on finite sets", "spreclone"};
  app.require_subcommand(1);
  RunConfig config;
  Inputs in;

  struct Entry {
    const char* name;
    const char* help;
    Handler handler;
  };
  const std::vector<Entry> entries = {
      {"check", "does each op S-preserve each relation", do_check},
      {"gamma", "Γ_F(ρ) for the relations in --rel", do_gamma},
      {"chi", "the relation χ^λ for --signum", do_chi},
      {"member", "membership of --op in the preclone generated by --gen", do_member},
      {"spol", "signed polymorphisms of --rel up to the op cap", do_spol},
      {"sinv", "invariant S-relations of --gen up to the rel cap", do_sinv},
      {"gen-preclone", "bounded fragment of the preclone generated by --gen", do_gen_preclone},
      {"gen-relclone", "bounded fragment of the relational clone generated by --rel", do_gen_relclone},
      {"diagonals", "all S-diagonals of --arity (default 1..rel cap)", do_diagonals},
      {"verify-thm1", "term closure against Γ membership for --gen", do_verify_thm1},
      {"verify-thm2", "relational clone fragment against sinv(spol(--rel))", do_verify_thm2},
      {"sheffer", "generation of all ops by max(x,y)+1 and the signed identities", do_sheffer},
      {"minimal", "candidate minimal preclones up to the op cap", do_minimal},
      {"maximal", "Boolean maximal candidates and their inclusion matrix", do_maximal},
      {"embed", "embed a clone (psi or phi)", do_embed},
      {"orbit", "orbit of ⟨--gen⟩ under value permutations and automorphisms", do_orbit},
      {"dual", "apply --pi and --automorphism to ops and relations", do_dual},
  };

  std::map<std::string, CLI::App*> subs;
  for (const auto& e : entries) {
    CLI::App* sub = app.add_subcommand(e.name, e.help);
    add_common(sub, config);
    subs[e.name] = sub;
  }
  for (const char* name : {"check", "member", "dual"}) subs[name]->add_option("--op", in.op_file, "op file");
  for (const char* name : {"gamma", "member", "sinv", "gen-preclone", "verify-thm1", "orbit"})
    subs[name]->add_option("--gen", in.gen_file, "generator op file");
  for (const char* name : {"check", "gamma", "spol", "gen-relclone", "verify-thm2", "dual"})
    subs[name]->add_option("--rel", in.rel_file, "relation file");
  subs["chi"]->add_option("--signum", in.signum, "signum literal such as +,-");
  subs["diagonals"]->add_option("--arity", in.arity, "single arity to list");
  subs["sheffer"]->add_option("--random", in.random, "number of random ops of arity op cap + 1");
  subs["embed"]->add_option("mode", in.mode, "psi or phi")->required();
  subs["embed"]->add_option("--clone", in.clone_file, "clone generator file");
  subs["dual"]->add_option("--pi", in.pi, "value permutation as images, e.g. 1,0");
  subs["dual"]->add_option("--automorphism", in.h, "automorphism as images of the elements, e.g. e,b,a");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    validate(config);
    const Monoid monoid = io::load_monoid(config.monoid);
    for (const auto& e : entries) {
      if (!subs[e.name]->parsed()) continue;
      Outcome outcome = e.handler(config, in, monoid);
      if (config.format == "json") {
        out << outcome.report.dump(2) << "\n";
      } else {
        out << io::render_text(outcome.report);
      }
      return outcome.property_holds ? kExitOk : kExitPropertyFailure;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace spreclone::cli
