#include "spreclone/closures.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "spreclone/error.hpp"
#include "spreclone/parallel.hpp"

namespace spreclone {

namespace {

/// Append-only, deduplicated member store; ids are insertion positions.
template <class T, class KeyFn>
class MemberStore {
 public:
  explicit MemberStore(KeyFn key) : key_(std::move(key)) {}

  bool add(T item) {
    if (!keys_.insert(key_(item)).second) return false;
    items_.push_back(std::move(item));
    return true;
  }
  const T& operator[](std::size_t id) const { return items_[id]; }
  std::size_t size() const { return items_.size(); }
  const std::vector<T>& items() const { return items_; }

 private:
  KeyFn key_;
  std::unordered_set<std::string> keys_;
  std::vector<T> items_;
};

auto op_key = [](const SignedOp& f) { return canonical_key(f); };
auto rel_key = [](const SRelation& r) { return canonical_key(r); };

/// Visits index vectors drawing position j from lists[j], where at least one
/// position takes an id >= `fresh` and all ids are < `limit`. Each such
/// combination is visited once: the first fresh position p draws from the
/// fresh range, earlier positions from old ids, later ones from all.
/// Stops as soon as the visitor returns false.
template <class Fn>
void semi_naive_product(const std::vector<const std::vector<std::size_t>*>& lists, std::size_t fresh,
                        std::size_t limit, Fn&& visit) {
  const std::size_t p_count = lists.size();
  std::vector<std::size_t> old_end(p_count), all_end(p_count);
  for (std::size_t j = 0; j < p_count; ++j) {
    const auto& l = *lists[j];
    old_end[j] = static_cast<std::size_t>(std::lower_bound(l.begin(), l.end(), fresh) - l.begin());
    all_end[j] = static_cast<std::size_t>(std::lower_bound(l.begin(), l.end(), limit) - l.begin());
  }
  std::vector<std::size_t> lo(p_count), hi(p_count), c(p_count), ids(p_count);
  for (std::size_t p = 0; p < p_count; ++p) {
    bool empty = false;
    for (std::size_t j = 0; j < p_count; ++j) {
      lo[j] = j == p ? old_end[j] : 0;
      hi[j] = j < p ? old_end[j] : all_end[j];
      empty = empty || lo[j] >= hi[j];
    }
    if (empty) continue;
    c = lo;
    while (true) {
      for (std::size_t j = 0; j < p_count; ++j) ids[j] = (*lists[j])[c[j]];
      if (!visit(ids)) return;
      std::size_t j = p_count;
      bool done = true;
      while (j > 0) {
        --j;
        if (++c[j] < hi[j]) {
          done = false;
          break;
        }
        c[j] = lo[j];
      }
      if (done) break;
    }
  }
}

struct PrecloneRun {
  std::vector<SignedOp> members;  // every member, any arity up to the limit
  bool budget_exhausted = false;
};

PrecloneRun run_preclone(const Monoid& monoid, int k, std::span<const SignedOp> generators, int limit,
                         std::size_t budget, std::uint64_t work_budget) {
  if (checked_power(k, limit) == 0) {
    throw Error(ErrorKind::CapExceeded, "intermediate arity " + std::to_string(limit) + " needs tables beyond 2^20");
  }
  MemberStore<SignedOp, decltype(op_key)> store(op_key);
  std::vector<std::vector<std::size_t>> by_arity(static_cast<std::size_t>(limit) + 1);
  std::map<Signum, std::vector<std::size_t>> by_signum;
  PrecloneRun run;
  std::uint64_t work = 0;
  // False once either budget is spent; every rule application goes through here.
  auto add = [&](SignedOp f) {
    if (++work > work_budget || store.size() > budget) {
      run.budget_exhausted = true;
      return false;
    }
    if (f.arity() > limit) return true;
    const int n = f.arity();
    const Signum signum = f.signum();
    if (store.add(std::move(f))) {
      by_arity[static_cast<std::size_t>(n)].push_back(store.size() - 1);
      by_signum[signum].push_back(store.size() - 1);
    }
    return true;
  };
  add(identity(k, monoid.unit()));
  for (const auto& f : generators) {
    if (f.domain_size() != k) throw Error(ErrorKind::DomainMismatch, "generator over a different base set");
    add(f);
  }

  std::size_t fresh = 0;
  while (!run.budget_exhausted) {
    const std::size_t now = store.size();
    if (fresh == now) break;
    // Unary rules on the newest members.
    for (std::size_t id = fresh; id < now && !run.budget_exhausted; ++id) {
      const SignedOp f = store[id];
      add(zeta(f));
      add(tau(f));
      add(delta(f));
      if (f.arity() < limit)
        for (std::size_t s = 0; s < monoid.size(); ++s) add(nabla(static_cast<Elem>(s), f));
    }
    // f ∘ g with at least one of them new. The lists are snapshots since add()
    // grows the live indexes.
    for (int a = 1; a <= limit && !run.budget_exhausted; ++a)
      for (int b = 1; a + b - 1 <= limit && !run.budget_exhausted; ++b) {
        const auto first = by_arity[static_cast<std::size_t>(a)];
        const auto second = by_arity[static_cast<std::size_t>(b)];
        semi_naive_product({&first, &second}, fresh, now, [&](const std::vector<std::size_t>& ids) {
          return add(compose(monoid, store[ids[0]], store[ids[1]]));
        });
      }
    // Superposition f(g_1(x), .., g_p(x)) for each generator f.
    for (const auto& f : generators) {
      if (run.budget_exhausted) break;
      const auto p = static_cast<std::size_t>(f.arity());
      for (int n = 1; n <= limit && !run.budget_exhausted; ++n) {
        // lists[λ][i]: members of arity n whose signum times c_i is λ.
        std::map<Signum, std::vector<std::vector<std::size_t>>> lists;
        for (const auto& [mu, ids] : by_signum) {
          if (static_cast<int>(mu.size()) != n) continue;
          for (std::size_t i = 0; i < p; ++i) {
            Signum lambda = mu;
            for (Elem& x : lambda) x = monoid.mul(x, f.signum()[i]);
            auto& slot = lists.try_emplace(lambda, std::vector<std::vector<std::size_t>>(p)).first->second[i];
            slot.insert(slot.end(), ids.begin(), ids.end());
          }
        }
        const auto size = static_cast<std::size_t>(checked_power(k, n));
        std::vector<std::size_t> weights(p);
        for (std::size_t i = p, w = 1; i > 0; --i, w *= static_cast<std::size_t>(k)) weights[i - 1] = w;
        for (auto& [lambda, per_position] : lists) {
          std::vector<const std::vector<std::size_t>*> ptrs;
          for (auto& l : per_position) {
            std::sort(l.begin(), l.end());
            ptrs.push_back(&l);
          }
          semi_naive_product(ptrs, fresh, now, [&](const std::vector<std::size_t>& ids) {
            std::vector<Value> values(size);
            for (std::size_t x = 0; x < size; ++x) {
              std::size_t arg = 0;
              for (std::size_t i = 0; i < p; ++i) arg += weights[i] * store[ids[i]].table().values()[x];
              values[x] = f.table().values()[arg];
            }
            return add(SignedOp(Operation(k, n, std::move(values)), lambda));
          });
          if (run.budget_exhausted) break;
        }
      }
    }
    fresh = now;
  }
  run.members = store.items();
  return run;
}

std::vector<SignedOp> up_to(const std::vector<SignedOp>& all, int cap) {
  std::vector<SignedOp> out;
  for (const auto& f : all)
    if (f.arity() <= cap) out.push_back(f);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<int> PrecloneFragment::saturated_arities() const {
  std::vector<int> out;
  for (int n = 1; n <= arity_cap; ++n)
    if (saturated_at(n)) out.push_back(n);
  return out;
}

bool PrecloneFragment::contains(const SignedOp& f) const { return std::binary_search(members.begin(), members.end(), f); }

std::size_t PrecloneFragment::count_at(int arity) const {
  return static_cast<std::size_t>(
      std::count_if(members.begin(), members.end(), [arity](const SignedOp& f) { return f.arity() == arity; }));
}

PrecloneFragment preclone_generate(const Monoid& monoid, int k, std::span<const SignedOp> generators,
                                   const PrecloneOptions& options) {
  if (options.arity_cap < 1) throw Error(ErrorKind::CapExceeded, "arity cap must be positive");
  const bool group = monoid.is_group();
  PrecloneFragment fragment;
  fragment.domain_size = k;
  fragment.arity_cap = options.arity_cap;
  fragment.slack = options.slack.value_or(group ? 0 : 2);
  const int limit = options.arity_cap + fragment.slack;
  const PrecloneRun run = run_preclone(monoid, k, generators, limit, options.member_budget, options.work_budget);
  fragment.members = up_to(run.members, options.arity_cap);
  fragment.budget_exhausted = run.budget_exhausted;
  fragment.saturated.assign(static_cast<std::size_t>(options.arity_cap), false);
  if (run.budget_exhausted) return fragment;
  if (group) {
    // Every term over F on n variables is a superposition of n-ary members,
    // so the fixed point is complete at every level up to the limit.
    fragment.saturated.assign(static_cast<std::size_t>(options.arity_cap), true);
    return fragment;
  }
  if (!options.confirm_saturation) return fragment;
  try {
    const PrecloneRun wider = run_preclone(monoid, k, generators, limit + 1, options.member_budget, options.work_budget);
    if (wider.budget_exhausted) return fragment;
    const auto wide = up_to(wider.members, options.arity_cap);
    for (int n = 1; n <= options.arity_cap; ++n) {
      const auto count = [n](const std::vector<SignedOp>& v) {
        return std::count_if(v.begin(), v.end(), [n](const SignedOp& f) { return f.arity() == n; });
      };
      fragment.saturated[static_cast<std::size_t>(n - 1)] = count(wide) == count(fragment.members);
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::CapExceeded) throw;
  }
  return fragment;
}

std::vector<SRelation> RelCloneFragment::at_arity(int arity) const {
  std::vector<SRelation> out;
  for (const auto& r : members)
    if (r.arity() == arity) out.push_back(r);
  return out;
}

bool RelCloneFragment::contains(const SRelation& r) const {
  return std::find(members.begin(), members.end(), r) != members.end();
}

RelCloneFragment relclone_generate(const Monoid& monoid, int k, std::span<const SRelation> relations,
                                   const RelCloneOptions& options) {
  if (options.arity_cap < 1) throw Error(ErrorKind::CapExceeded, "arity cap must be positive");
  RelCloneFragment fragment;
  fragment.domain_size = k;
  fragment.arity_cap = options.arity_cap;
  fragment.slack = options.slack.value_or(options.arity_cap);
  const int limit = options.arity_cap + fragment.slack;
  if (checked_power(k, limit) == 0) {
    throw Error(ErrorKind::CapExceeded, "intermediate arity " + std::to_string(limit) + " needs relations beyond 2^20");
  }

  MemberStore<SRelation, decltype(rel_key)> store(rel_key);
  std::vector<std::vector<std::size_t>> by_arity;
  auto add_any = [&](SRelation r) {
    const auto m = static_cast<std::size_t>(r.arity());
    if (store.add(std::move(r))) {
      if (by_arity.size() <= m) by_arity.resize(m + 1);
      by_arity[m].push_back(store.size() - 1);
    }
  };
  auto add = [&](SRelation r) {
    if (r.arity() <= limit) add_any(std::move(r));
  };
  add_any(delta_S(monoid, k));
  for (const auto& r : relations) {
    if (r.domain_size() != k) throw Error(ErrorKind::DomainMismatch, "relation over a different base set");
    if (r.monoid_size() != monoid.size()) throw Error(ErrorKind::DomainMismatch, "relation over a different monoid");
    add_any(r);
  }

  std::vector<std::size_t> all_ids;
  std::size_t fresh = 0;
  fragment.saturated = true;
  while (true) {
    const std::size_t now = store.size();
    if (fresh == now) break;
    if (now > options.member_budget) {
      fragment.saturated = false;
      break;
    }
    for (std::size_t id = fresh; id < now; ++id) {
      const SRelation r = store[id];
      add(zeta(r));
      add(tau(r));
      add(pr(r));
      for (std::size_t v = 0; v < monoid.size(); ++v) {
        add(mu(monoid, r, static_cast<Elem>(v)));
        add(self_intersect(monoid, r, static_cast<Elem>(v)));
      }
    }
    all_ids.resize(now);
    for (std::size_t i = 0; i < now; ++i) all_ids[i] = i;
    semi_naive_product({&all_ids, &all_ids}, fresh, now, [&](const std::vector<std::size_t>& ids) {
      // Fetch by id each time: add() may reallocate the store.
      const std::size_t x = ids[0], y = ids[1];
      add(meet(store[x], store[y]));
      if (store[x].arity() + store[y].arity() <= limit) add(product(store[x], store[y]));
      return store.size() <= options.member_budget;
    });
    fresh = now;
  }
  for (const auto& r : store.items())
    if (r.arity() <= options.arity_cap) fragment.members.push_back(r);
  std::sort(fragment.members.begin(), fragment.members.end(), [](const SRelation& a, const SRelation& b) {
    if (a.arity() != b.arity()) return a.arity() < b.arity();
    return a < b;
  });
  return fragment;
}

std::vector<SRelation> s_diagonals_all(const Monoid& monoid, int k, int arity) {
  std::vector<std::optional<Partition>> options;
  for (auto& p : all_partitions(arity)) options.emplace_back(std::move(p));
  options.emplace_back(std::nullopt);
  const std::size_t size = monoid.size();
  std::vector<std::size_t> choice(size, 0);
  std::vector<SRelation> out;
  std::unordered_set<std::string> seen;
  while (true) {
    DiagonalSpec spec{arity, {}};
    for (std::size_t s = 0; s < size; ++s) spec.parts.push_back(options[choice[s]]);
    SRelation r = make_diagonal(monoid, k, spec);
    if (is_s_diagonal(monoid, r) && seen.insert(canonical_key(r)).second) out.push_back(std::move(r));
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
  return out;
}

SRelation gamma_Q(const RelCloneFragment& fragment, const SRelation& rho) {
  if (!fragment.saturated) throw Error(ErrorKind::Unsaturated, "relational clone fragment did not reach its fixed point");
  if (rho.arity() > fragment.arity_cap) {
    throw Error(ErrorKind::CapExceeded, "relation arity " + std::to_string(rho.arity()) + " above the fragment cap " +
                                            std::to_string(fragment.arity_cap));
  }
  std::vector<Relation> full(rho.monoid_size(), Relation::full(rho.domain_size(), rho.arity()));
  SRelation result{std::move(full)};
  for (const auto& r : fragment.members) {
    if (r.arity() != rho.arity() || !rho.is_subset_of(r)) continue;
    result = meet(result, r);
  }
  return result;
}

TheoremIReport verify_theorem_I(const Monoid& monoid, int k, std::span<const SignedOp> generators, int op_cap,
                                const PrecloneOptions& options) {
  PrecloneOptions opts = options;
  opts.arity_cap = op_cap;
  const PrecloneFragment fragment = preclone_generate(monoid, k, generators, opts);
  const MembershipOracle oracle(monoid, k, std::vector<SignedOp>(generators.begin(), generators.end()));

  TheoremIReport report;
  report.op_cap = op_cap;
  report.slack = fragment.slack;
  report.saturated_arities = fragment.saturated_arities();
  report.fragment_members = fragment.members.size();

  std::vector<SignedOp> candidates;
  for (int n = 1; n <= op_cap; ++n) {
    if (count_signed_ops(monoid.size(), k, n) == 0 || count_signed_ops(monoid.size(), k, n) > kDefaultEnumerationLimit) {
      throw Error(ErrorKind::CapExceeded, "too many candidates at arity " + std::to_string(n));
    }
    for_each_signed_op(monoid.size(), k, n, [&](const SignedOp& g) {
      candidates.push_back(g);
      return true;
    });
  }
  report.candidates = candidates.size();
  std::vector<char> in_gamma(candidates.size(), 0);
  parallel_for(candidates.size(), [&](std::size_t i) { in_gamma[i] = oracle.contains(candidates[i]) ? 1 : 0; });
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const bool gamma = in_gamma[i] != 0;
    const bool frag = fragment.contains(candidates[i]);
    report.gamma_members += gamma ? 1 : 0;
    const bool unsound = frag && !gamma;
    const bool incomplete = fragment.saturated_at(candidates[i].arity()) && frag != gamma;
    if (unsound || incomplete) report.discrepancies.push_back({candidates[i], frag, gamma});
  }
  return report;
}

bool TheoremIIReport::ok() const {
  if (rounds.empty()) return false;
  for (const auto& r : rounds)
    if (!r.contained) return false;
  return rounds.back().difference.empty();
}

TheoremIIReport verify_theorem_II(const Monoid& monoid, int k, std::span<const SRelation> relations, int op_cap,
                                  int rel_cap, const RelCloneOptions& options) {
  RelCloneOptions opts = options;
  opts.arity_cap = rel_cap;
  const RelCloneFragment fragment = relclone_generate(monoid, k, relations, opts);
  TheoremIIReport report;
  report.rel_cap = rel_cap;
  report.fragment_saturated = fragment.saturated;
  report.fragment_size = fragment.members.size();
  std::unordered_set<std::string> in_fragment;
  for (const auto& r : fragment.members) in_fragment.insert(canonical_key(r));
  for (int c = 1; c <= op_cap; ++c) {
    TheoremIIRound round;
    round.op_cap = c;
    const auto ops = spol(monoid, k, relations, c);
    round.spol_size = ops.size();
    const auto invariants = sinv(monoid, k, ops, rel_cap);
    round.sinv_size = invariants.size();
    std::unordered_set<std::string> in_sinv;
    for (const auto& r : invariants) {
      const auto key = canonical_key(r);
      in_sinv.insert(key);
      if (!in_fragment.contains(key)) round.difference.push_back(r);
    }
    round.contained = std::all_of(fragment.members.begin(), fragment.members.end(),
                                  [&](const SRelation& r) { return in_sinv.contains(canonical_key(r)); });
    report.rounds.push_back(std::move(round));
  }
  return report;
}

}  // namespace spreclone
