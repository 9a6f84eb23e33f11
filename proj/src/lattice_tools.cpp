#include "spreclone/lattice_tools.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "spreclone/error.hpp"
#include "spreclone/parallel.hpp"

namespace spreclone {

namespace {

std::vector<SignedOp> members_of(const MembershipOracle& oracle, const std::vector<SignedOp>& universe) {
  std::vector<char> in(universe.size(), 0);
  parallel_for(universe.size(), [&](std::size_t i) { in[i] = oracle.contains(universe[i]) ? 1 : 0; });
  std::vector<SignedOp> out;
  for (std::size_t i = 0; i < universe.size(); ++i)
    if (in[i] != 0) out.push_back(universe[i]);
  return out;
}

SignedOp all_e(const Monoid& monoid, const Operation& f) {
  return SignedOp(f, Signum(static_cast<std::size_t>(f.arity()), monoid.unit()));
}

}  // namespace

std::vector<SignedOp> all_signed_ops(const Monoid& monoid, int k, int op_cap) {
  std::uint64_t total = 0;
  for (int n = 1; n <= op_cap; ++n) {
    const auto c = count_signed_ops(monoid.size(), k, n);
    if (c == 0 || (total += c) > kDefaultEnumerationLimit) {
      throw Error(ErrorKind::CapExceeded, "too many SignedOps up to arity " + std::to_string(op_cap));
    }
  }
  std::vector<SignedOp> out;
  out.reserve(static_cast<std::size_t>(total));
  for (int n = 1; n <= op_cap; ++n)
    for_each_signed_op(monoid.size(), k, n, [&](const SignedOp& f) {
      out.push_back(f);
      return true;
    });
  return out;
}

std::vector<SignedOp> trivial_projections(const Monoid& monoid, int k, int op_cap) {
  std::vector<SignedOp> out;
  for (int n = 1; n <= op_cap; ++n)
    for (const auto& signum : all_signa(monoid.size(), n))
      for (int i = 0; i < n; ++i)
        if (signum[static_cast<std::size_t>(i)] == monoid.unit()) out.push_back(projection(monoid, k, n, i, signum));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

PrecloneHandle PrecloneHandle::generated(const Monoid& monoid, int k, std::vector<SignedOp> generators, int op_cap) {
  PrecloneHandle h;
  h.monoid_ = std::make_shared<const Monoid>(monoid);
  h.k_ = k;
  h.op_cap_ = op_cap;
  std::sort(generators.begin(), generators.end());
  generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
  h.generators_ = generators;
  h.oracle_ = std::make_shared<const MembershipOracle>(monoid, k, std::move(generators));
  h.fragment_ = members_of(*h.oracle_, all_signed_ops(monoid, k, op_cap));
  return h;
}

PrecloneHandle PrecloneHandle::from_fragment(const Monoid& monoid, int k, std::vector<SignedOp> fragment, int op_cap) {
  PrecloneHandle h;
  h.monoid_ = std::make_shared<const Monoid>(monoid);
  h.k_ = k;
  h.op_cap_ = op_cap;
  std::sort(fragment.begin(), fragment.end());
  fragment.erase(std::unique(fragment.begin(), fragment.end()), fragment.end());
  h.fragment_ = std::move(fragment);
  return h;
}

bool PrecloneHandle::contains(const SignedOp& f) const {
  if (oracle_) return oracle_->contains(f);
  return std::binary_search(fragment_.begin(), fragment_.end(), f);
}

bool PrecloneHandle::fragment_subset_of(const PrecloneHandle& other) const {
  return std::includes(other.fragment_.begin(), other.fragment_.end(), fragment_.begin(), fragment_.end());
}

std::string PrecloneHandle::least_key() const {
  const auto& source = generators_.empty() ? fragment_ : generators_;
  std::string best;
  for (const auto& f : source) {
    auto key = canonical_key(f);
    if (best.empty() || key < best) best = std::move(key);
  }
  return best;
}

SignedOp webb_operation(const Monoid& monoid, int k) {
  return SignedOp(Operation::from_function(k, 2,
                                           [k](std::span<const Value> x) {
                                             return static_cast<Value>((std::max(x[0], x[1]) + 1) % k);
                                           }),
                  Signum{monoid.unit(), monoid.unit()});
}

GenerationReport sheffer_generation_check(const Monoid& monoid, int k, int op_cap, int random_count,
                                          std::uint64_t seed) {
  std::vector<SignedOp> generators{webb_operation(monoid, k)};
  for (std::size_t s = 0; s < monoid.size(); ++s) generators.push_back(identity(k, static_cast<Elem>(s)));
  const MembershipOracle oracle(monoid, k, generators);
  GenerationReport report;
  const auto universe = all_signed_ops(monoid, k, op_cap);
  report.checked = universe.size();
  const auto members = members_of(oracle, universe);
  std::set_difference(universe.begin(), universe.end(), members.begin(), members.end(),
                      std::back_inserter(report.failures));
  if (random_count > 0) {
    std::mt19937_64 rng(seed);
    const int n = op_cap + 1;
    const auto size = checked_power(k, n);
    if (size == 0) throw Error(ErrorKind::CapExceeded, "random arity too large");
    std::uniform_int_distribution<int> value(0, k - 1);
    std::uniform_int_distribution<int> element(0, static_cast<int>(monoid.size()) - 1);
    std::vector<SignedOp> sample;
    for (int i = 0; i < random_count; ++i) {
      Signum signum(static_cast<std::size_t>(n));
      for (Elem& s : signum) s = static_cast<Elem>(element(rng));
      std::vector<Value> values(static_cast<std::size_t>(size));
      for (Value& v : values) v = static_cast<Value>(value(rng));
      sample.emplace_back(k, std::move(signum), std::move(values));
    }
    std::vector<char> in(sample.size(), 0);
    parallel_for(sample.size(), [&](std::size_t i) { in[i] = oracle.contains(sample[i]) ? 1 : 0; });
    report.random_checked = sample.size();
    for (std::size_t i = 0; i < sample.size(); ++i)
      if (in[i] == 0) report.random_failures.push_back(sample[i]);
  }
  return report;
}

std::vector<SRelation> relational_generators(const Monoid& monoid, int k) {
  const Relation equal = Relation::diagonal(k, {0, 0});
  const Relation full = Relation::full(k, 2);
  Relation leq(k, 2), neq(k, 2);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      const std::vector<Value> t{static_cast<Value>(a), static_cast<Value>(b)};
      if (a <= b) leq.insert(t);
      if (a != b) neq.insert(t);
    }
  std::vector<Relation> first(monoid.size(), full);
  first[monoid.unit()] = equal;
  return {SRelation(std::move(first)), SRelation::uniform(leq, monoid.size()), SRelation::uniform(neq, monoid.size())};
}

RelationalGenerationReport relational_generation_check(const Monoid& monoid, int k, int op_cap) {
  if (k < 3) {
    throw Error(ErrorKind::UnsupportedDomain,
                "the three binary generators only work for k >= 3; k = 2 needs a ternary relation not provided here");
  }
  RelationalGenerationReport report;
  report.relations = relational_generators(monoid, k);
  report.spol = spol(monoid, k, report.relations, op_cap);
  report.trivial_expected = trivial_projections(monoid, k, op_cap).size();
  for (const auto& f : report.spol)
    if (!is_trivial_projection(monoid, f)) report.extras.push_back(f);
  return report;
}

MinimalReport minimal_search(const Monoid& monoid, int k, int op_cap) {
  MinimalReport report;
  report.op_cap = op_cap;
  report.search_arity = std::min<int>(op_cap, k * k * static_cast<int>(monoid.size()));
  std::vector<SignedOp> ops;
  for (const auto& f : all_signed_ops(monoid, k, report.search_arity))
    if (!is_trivial_projection(monoid, f)) ops.push_back(f);
  report.candidates = ops.size();
  const std::size_t n = ops.size();
  // below[i][j]: ops[j] ∈ ⟨ops[i]⟩.
  std::vector<std::vector<char>> below(n, std::vector<char>(n, 0));
  parallel_for(n, [&](std::size_t i) {
    const MembershipOracle oracle(monoid, k, {ops[i]});
    for (std::size_t j = 0; j < n; ++j) below[i][j] = (i == j || oracle.contains(ops[j])) ? 1 : 0;
  });
  std::vector<bool> assigned(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (assigned[i]) continue;
    std::vector<std::size_t> cls;
    for (std::size_t j = 0; j < n; ++j)
      if (below[i][j] && below[j][i]) cls.push_back(j);
    for (std::size_t j : cls) assigned[j] = true;
    // Minimal iff everything ⟨ops[i]⟩ generates lies in the class.
    bool minimal = true;
    for (std::size_t j = 0; j < n && minimal; ++j)
      if (below[i][j] && !below[j][i]) minimal = false;
    if (!minimal) continue;
    MinimalClass mc{PrecloneHandle::generated(monoid, k, {ops[i]}, op_cap), {}};
    for (std::size_t j : cls) mc.members.push_back(ops[j]);
    report.minimal.push_back(std::move(mc));
  }
  std::sort(report.minimal.begin(), report.minimal.end(),
            [](const MinimalClass& a, const MinimalClass& b) { return a.handle.least_key() < b.handle.least_key(); });
  return report;
}

std::vector<std::pair<std::string, Relation>> boolean_maximal_witnesses() {
  Relation zero(2, 1), one(2, 1), leq(2, 2), neq(2, 2), affine(2, 4);
  zero.insert(std::vector<Value>{0});
  one.insert(std::vector<Value>{1});
  for (Value a = 0; a < 2; ++a)
    for (Value b = 0; b < 2; ++b) {
      if (a <= b) leq.insert(std::vector<Value>{a, b});
      if (a != b) neq.insert(std::vector<Value>{a, b});
      for (Value c = 0; c < 2; ++c) affine.insert(std::vector<Value>{a, b, c, static_cast<Value>(a ^ b ^ c)});
    }
  return {{"T0", zero}, {"T1", one}, {"leq", leq}, {"neq", neq}, {"affine", affine}};
}

MaximalReport maximal_candidates(const Monoid& monoid, int k, int op_cap) {
  if (k != 2) throw Error(ErrorKind::UnsupportedDomain, "maximal candidates use the Boolean maximal clones (k = 2)");
  MaximalReport report;
  report.op_cap = op_cap;
  // Per-part options of each arity: diagonals, empty, and witnesses whose
  // minimal nontrivial arity is that arity (≥ is the second order witness).
  std::vector<std::pair<std::string, Relation>> witnesses = boolean_maximal_witnesses();
  witnesses.emplace_back("geq", tau(witnesses[2].second));
  std::stable_sort(witnesses.begin(), witnesses.end(),
                   [](const auto& a, const auto& b) { return a.second.arity() < b.second.arity(); });
  std::set<int> arities;
  for (const auto& w : witnesses) arities.insert(w.second.arity());

  const auto universe = all_signed_ops(monoid, k, op_cap);
  const std::size_t size = monoid.size();
  std::vector<std::pair<SRelation, std::vector<std::string>>> raw;
  for (int m : arities) {
    std::vector<std::pair<std::string, Relation>> options;
    for (const auto& p : all_partitions(m)) options.emplace_back("diag", Relation::diagonal(k, p));
    options.emplace_back("empty", Relation(k, m));
    const std::size_t trivial_options = options.size();
    for (const auto& w : witnesses)
      if (w.second.arity() == m) options.push_back(w);
    std::vector<std::size_t> choice(size, 0);
    while (true) {
      bool nontrivial = false;
      std::vector<Relation> parts;
      std::vector<std::string> labels;
      for (std::size_t s = 0; s < size; ++s) {
        nontrivial = nontrivial || choice[s] >= trivial_options;
        parts.push_back(options[choice[s]].second);
        labels.push_back(options[choice[s]].first);
      }
      if (nontrivial) raw.emplace_back(SRelation(std::move(parts)), std::move(labels));
      std::size_t s = size;
      bool done = true;
      while (s > 0) {
        --s;
        if (++choice[s] < options.size()) {
          done = false;
          break;
        }
        choice[s] = 0;
      }
      if (done) break;
    }
  }
  report.raw_candidates = raw.size();

  std::vector<std::vector<SignedOp>> fragments(raw.size());
  parallel_for(raw.size(), [&](std::size_t i) {
    for (const auto& f : universe)
      if (preserves(monoid, f, raw[i].first)) fragments[i].push_back(f);
  });
  for (std::size_t i = 0; i < raw.size(); ++i) {
    auto it = std::find_if(report.candidates.begin(), report.candidates.end(), [&](const MaximalCandidate& c) {
      return c.handle.fragment() == fragments[i];
    });
    if (it != report.candidates.end()) {
      ++it->merged;
      continue;
    }
    MaximalCandidate c{raw[i].first, raw[i].second,
                       PrecloneHandle::from_fragment(monoid, k, fragments[i], op_cap), 1,
                       fragments[i].size() == universe.size()};
    report.candidates.push_back(std::move(c));
  }
  const std::size_t n = report.candidates.size();
  report.inclusion.assign(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      report.inclusion[i][j] = report.candidates[i].handle.fragment_subset_of(report.candidates[j].handle);
  for (std::size_t i = 0; i < n; ++i) {
    if (report.candidates[i].full) continue;
    bool dominated = false;
    for (std::size_t j = 0; j < n && !dominated; ++j)
      dominated = j != i && !report.candidates[j].full && report.inclusion[i][j] && !report.inclusion[j][i];
    if (!dominated) report.maximal.push_back(i);
  }
  return report;
}

PrecloneHandle psi_embed(const Monoid& monoid, int k, std::span<const Operation> clone_generators, int op_cap) {
  std::vector<SignedOp> generators;
  for (const auto& f : clone_generators) generators.push_back(all_e(monoid, f));
  return PrecloneHandle::generated(monoid, k, std::move(generators), op_cap);
}

PrecloneHandle phi_embed(const Monoid& monoid, int k, std::span<const Operation> clone_generators, int op_cap) {
  std::vector<SignedOp> generators;
  for (std::size_t s = 0; s < monoid.size(); ++s) generators.push_back(identity(k, static_cast<Elem>(s)));
  for (const auto& f : clone_generators) {
    if (monoid.is_group()) {
      generators.push_back(all_e(monoid, f));
      continue;
    }
    for (auto& signum : all_signa(monoid.size(), f.arity())) generators.emplace_back(f, std::move(signum));
  }
  return PrecloneHandle::generated(monoid, k, std::move(generators), op_cap);
}

std::vector<Operation> phi_inverse(const PrecloneHandle& handle) {
  std::set<Operation> tables;
  const auto& source = handle.has_generators() ? handle.generators() : handle.fragment();
  for (const auto& f : source) tables.insert(f.table());
  return {tables.begin(), tables.end()};
}

std::vector<PrecloneHandle> symmetry_orbit(const PrecloneHandle& handle, std::span<const ValuePermutation> pis,
                                           std::span<const Permutation> hs) {
  std::vector<PrecloneHandle> orbit;
  const auto& monoid = handle.monoid();
  for (const auto& pi : pis)
    for (const auto& h : hs) {
      auto image = [&](const std::vector<SignedOp>& ops) {
        std::vector<SignedOp> out;
        for (const auto& f : ops) out.push_back(h_map(pi_dual(f, pi), h));
        return out;
      };
      PrecloneHandle mapped =
          handle.has_generators()
              ? PrecloneHandle::generated(monoid, handle.domain_size(), image(handle.generators()), handle.op_cap())
              : PrecloneHandle::from_fragment(monoid, handle.domain_size(), image(handle.fragment()), handle.op_cap());
      const bool seen = std::any_of(orbit.begin(), orbit.end(), [&](const PrecloneHandle& o) { return o.same_fragment(mapped); });
      if (!seen) orbit.push_back(std::move(mapped));
    }
  return orbit;
}

}  // namespace spreclone
