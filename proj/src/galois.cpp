#include "spreclone/galois.hpp"

#include <algorithm>
#include <set>

#include "spreclone/error.hpp"
#include "spreclone/parallel.hpp"

namespace spreclone {

namespace {

void require_domain(int expected, int actual) {
  if (expected != actual) {
    throw Error(ErrorKind::DomainMismatch,
                "base set size " + std::to_string(actual) + " differs from " + std::to_string(expected));
  }
}

/// Visits every index vector with c[j] in [lo[j], hi[j]); returns false if
/// the visitor stopped the walk.
template <class Fn>
bool odometer(const std::vector<std::size_t>& lo, const std::vector<std::size_t>& hi, std::vector<std::size_t>& c,
              Fn&& visit) {
  const std::size_t n = lo.size();
  for (std::size_t j = 0; j < n; ++j)
    if (lo[j] >= hi[j]) return true;
  c = lo;
  while (true) {
    if (!visit(c)) return false;
    std::size_t j = n;
    while (j > 0) {
      --j;
      if (++c[j] < hi[j]) break;
      c[j] = lo[j];
      if (j == 0) return true;
    }
    if (n == 0) return true;
  }
}

/// Members of one part with their digits laid out row by row, so an
/// operation can be applied column-wise without decoding.
struct PartTable {
  std::vector<TupleIndex> members;
  std::vector<Value> digits;  // digits[i * m + row]

  void add(TupleIndex index, int k, int m) {
    members.push_back(index);
    const auto t = decode(index, k, m);
    digits.insert(digits.end(), t.begin(), t.end());
  }
};

/// Applies f to the columns picked by `choice` from the given parts.
class ColumnApplier {
 public:
  ColumnApplier(const Operation& f, int m) : f_(f), m_(m), weights_(static_cast<std::size_t>(f.arity())) {
    TupleIndex w = 1;
    for (int j = f.arity() - 1; j >= 0; --j) {
      weights_[static_cast<std::size_t>(j)] = w;
      w *= static_cast<TupleIndex>(f.domain_size());
    }
  }

  TupleIndex apply(const std::vector<const PartTable*>& parts, const std::vector<std::size_t>& choice) const {
    const auto k = static_cast<TupleIndex>(f_.domain_size());
    const auto m = static_cast<std::size_t>(m_);
    TupleIndex out = 0;
    for (std::size_t row = 0; row < m; ++row) {
      TupleIndex arg = 0;
      for (std::size_t j = 0; j < weights_.size(); ++j) arg += weights_[j] * parts[j]->digits[choice[j] * m + row];
      out = out * k + f_.at(arg);
    }
    return out;
  }

 private:
  const Operation& f_;
  int m_;
  std::vector<TupleIndex> weights_;
};

PartTable table_of(const Relation& r) {
  PartTable t;
  r.for_each([&](TupleIndex i) { t.add(i, r.domain_size(), r.arity()); });
  return t;
}

}  // namespace

std::optional<PreservationWitness> find_violation(const Monoid& monoid, const SignedOp& f, const SRelation& rho) {
  require_domain(rho.domain_size(), f.domain_size());
  if (rho.monoid_size() != monoid.size()) throw Error(ErrorKind::DomainMismatch, "S-relation indexed by a different monoid");
  const int m = rho.arity();
  const auto n = static_cast<std::size_t>(f.arity());
  std::vector<PartTable> tables;
  for (const auto& p : rho.parts()) tables.push_back(table_of(p));
  const ColumnApplier applier(f.table(), m);
  std::vector<const PartTable*> sources(n);
  std::vector<std::size_t> lo(n, 0), hi(n), choice;
  for (std::size_t s = 0; s < monoid.size(); ++s) {
    const Relation& target = rho.part(static_cast<Elem>(s));
    for (std::size_t j = 0; j < n; ++j) {
      sources[j] = &tables[monoid.mul(f.signum()[j], static_cast<Elem>(s))];
      hi[j] = sources[j]->members.size();
    }
    std::optional<PreservationWitness> witness;
    odometer(lo, hi, choice, [&](const std::vector<std::size_t>& c) {
      const TupleIndex image = applier.apply(sources, c);
      if (target.contains(image)) return true;
      PreservationWitness w{static_cast<Elem>(s), m, {}, image};
      for (std::size_t j = 0; j < n; ++j) w.columns.push_back(sources[j]->members[c[j]]);
      witness = std::move(w);
      return false;
    });
    if (witness) return witness;
  }
  return std::nullopt;
}

bool preserves(const Monoid& monoid, const SignedOp& f, const SRelation& rho) {
  return !find_violation(monoid, f, rho).has_value();
}

bool preserves_pair(const Operation& f, const RelationPair& pair) {
  require_domain(pair.source.domain_size(), f.domain_size());
  if (pair.source.arity() != pair.target.arity()) throw Error(ErrorKind::ArityMismatch, "relation pair arities differ");
  const PartTable source = table_of(pair.source);
  const ColumnApplier applier(f, pair.source.arity());
  const auto n = static_cast<std::size_t>(f.arity());
  std::vector<const PartTable*> sources(n, &source);
  std::vector<std::size_t> lo(n, 0), hi(n, source.members.size()), choice;
  return odometer(lo, hi, choice,
                  [&](const std::vector<std::size_t>& c) { return pair.target.contains(applier.apply(sources, c)); });
}

bool preserves_classical(const Operation& f, const Relation& sigma) { return preserves_pair(f, {sigma, sigma}); }

ChiRelation chi(const Monoid& monoid, int k, const Signum& lambda) {
  const int n = static_cast<int>(lambda.size());
  if (n < 1) throw Error(ErrorKind::BadSignum, "signum must be nonempty");
  for (Elem s : lambda)
    if (s >= monoid.size()) throw Error(ErrorKind::BadSignum, "signum entry outside the monoid");
  const auto rows = checked_power(k, n);
  if (rows == 0 || checked_power(k, static_cast<int>(rows)) == 0) {
    throw Error(ErrorKind::ArityCapExceeded, "χ^λ needs arity k^n = " + std::to_string(k) + "^" + std::to_string(n) +
                                                 ", whose relation table exceeds the hard limit 2^20");
  }
  const int m = static_cast<int>(rows);
  ChiRelation out{SRelation(k, m, monoid.size()), {}};
  for (int i = 0; i < n; ++i) {
    std::vector<Value> column(static_cast<std::size_t>(m));
    for (int r = 0; r < m; ++r) column[static_cast<std::size_t>(r)] = digit(static_cast<TupleIndex>(r), k, n, i);
    const TupleIndex kappa = encode(column, k);
    out.columns.push_back(kappa);
    out.relation.part(lambda[static_cast<std::size_t>(i)]).insert(kappa);
  }
  return out;
}

ClosureReport gamma_closure(const Monoid& monoid, std::span<const SignedOp> generators, const SRelation& rho,
                            GammaStrategy strategy) {
  if (rho.monoid_size() != monoid.size()) throw Error(ErrorKind::DomainMismatch, "S-relation indexed by a different monoid");
  for (const auto& f : generators) require_domain(rho.domain_size(), f.domain_size());
  const int k = rho.domain_size();
  const int m = rho.arity();
  const std::size_t size = monoid.size();

  SRelation current = rho;
  std::vector<PartTable> tables;
  for (const auto& p : rho.parts()) tables.push_back(table_of(p));
  std::vector<std::size_t> before(size, 0);  // part sizes of the iterate preceding the current one

  ClosureReport report;
  std::vector<std::size_t> lo, hi, choice;
  std::vector<const PartTable*> sources;
  while (true) {
    std::vector<std::size_t> now(size);
    for (std::size_t s = 0; s < size; ++s) now[s] = tables[s].members.size();
    std::vector<std::vector<TupleIndex>> added(size);

    for (const auto& f : generators) {
      const auto n = static_cast<std::size_t>(f.arity());
      const ColumnApplier applier(f.table(), m);
      sources.assign(n, nullptr);
      lo.assign(n, 0);
      hi.assign(n, 0);
      for (std::size_t s = 0; s < size; ++s) {
        std::vector<Elem> src(n);
        for (std::size_t j = 0; j < n; ++j) {
          src[j] = monoid.mul(f.signum()[j], static_cast<Elem>(s));
          sources[j] = &tables[src[j]];
        }
        Relation& target = current.part(static_cast<Elem>(s));
        auto visit = [&](const std::vector<std::size_t>& c) {
          const TupleIndex image = applier.apply(sources, c);
          if (!target.contains(image)) {
            target.insert(image);
            added[s].push_back(image);
          }
          return true;
        };
        if (strategy == GammaStrategy::Naive) {
          for (std::size_t j = 0; j < n; ++j) {
            lo[j] = 0;
            hi[j] = now[src[j]];
          }
          odometer(lo, hi, choice, visit);
          continue;
        }
        // Combinations with at least one column new in the last step; the
        // first such position p is drawn from the new range.
        for (std::size_t p = 0; p < n; ++p) {
          for (std::size_t j = 0; j < n; ++j) {
            lo[j] = j == p ? before[src[j]] : 0;
            hi[j] = j < p ? before[src[j]] : now[src[j]];
          }
          odometer(lo, hi, choice, visit);
        }
      }
    }

    bool grew = false;
    for (std::size_t s = 0; s < size; ++s) {
      for (TupleIndex index : added[s]) tables[s].add(index, k, m);
      grew = grew || !added[s].empty();
    }
    before = now;
    if (!grew) break;
    ++report.iterations;
  }
  report.result = std::move(current);
  return report;
}

MembershipResult membership(const Monoid& monoid, const SignedOp& g, std::span<const SignedOp> generators,
                            MembershipMode mode) {
  for (const auto& f : generators) require_domain(g.domain_size(), f.domain_size());
  const ChiRelation c = chi(monoid, g.domain_size(), g.signum());
  const SRelation gamma = gamma_closure(monoid, generators, c.relation).result;
  MembershipResult result;
  if (mode == MembershipMode::Preservation) {
    result.witness = find_violation(monoid, g, gamma);
    result.member = !result.witness;
    return result;
  }
  const int m = c.relation.arity();
  const TupleIndex image = apply_op(g.table(), c.columns, m);
  result.member = gamma.part(monoid.unit()).contains(image);
  if (!result.member) result.witness = PreservationWitness{monoid.unit(), m, c.columns, image};
  return result;
}

MembershipOracle::MembershipOracle(Monoid monoid, int k, std::vector<SignedOp> generators)
    : monoid_(std::move(monoid)), k_(k), generators_(std::move(generators)) {
  for (const auto& f : generators_) require_domain(k_, f.domain_size());
}

const SRelation& MembershipOracle::gamma_chi(const Signum& lambda) const {
  {
    std::lock_guard lock(mutex_);
    if (auto it = cache_.find(lambda); it != cache_.end()) return *it->second;
  }
  auto gamma = std::make_unique<SRelation>(gamma_closure(monoid_, generators_, chi(monoid_, k_, lambda).relation).result);
  std::lock_guard lock(mutex_);
  auto [it, inserted] = cache_.try_emplace(lambda, std::move(gamma));
  return *it->second;
}

MembershipResult MembershipOracle::test(const SignedOp& g) const {
  require_domain(k_, g.domain_size());
  const SRelation& gamma = gamma_chi(g.signum());
  const ChiRelation c = chi(monoid_, k_, g.signum());
  const int m = c.relation.arity();
  const TupleIndex image = apply_op(g.table(), c.columns, m);
  MembershipResult result;
  result.member = gamma.part(monoid_.unit()).contains(image);
  if (!result.member) result.witness = PreservationWitness{monoid_.unit(), m, c.columns, image};
  return result;
}

namespace {

std::vector<Value> table_from_index(int k, std::size_t size, std::uint64_t index) {
  std::vector<Value> values(size);
  for (std::size_t i = size; i > 0; --i) {
    values[i - 1] = static_cast<Value>(index % static_cast<std::uint64_t>(k));
    index /= static_cast<std::uint64_t>(k);
  }
  return values;
}

constexpr std::uint64_t kChunk = 1024;

}  // namespace

std::vector<SignedOp> spol(const Monoid& monoid, int k, std::span<const SRelation> relations, int op_cap,
                           std::uint64_t limit) {
  for (const auto& r : relations) require_domain(k, r.domain_size());
  if (op_cap < 1) throw Error(ErrorKind::CapExceeded, "op arity cap must be positive");
  std::uint64_t total = 0;
  for (int n = 1; n <= op_cap; ++n) {
    const auto c = count_signed_ops(monoid.size(), k, n);
    if (c == 0 || (total += c) > limit) {
      throw Error(ErrorKind::CapExceeded, "spol at op cap " + std::to_string(op_cap) + " needs more than " +
                                              std::to_string(limit) + " candidates");
    }
  }
  std::vector<SignedOp> out;
  for (int n = 1; n <= op_cap; ++n) {
    const auto signa = all_signa(monoid.size(), n);
    const auto table_size = static_cast<std::size_t>(checked_power(k, n));
    const std::uint64_t tables = count_signed_ops(1, k, n);
    const std::uint64_t count = tables * signa.size();
    const std::size_t chunks = static_cast<std::size_t>((count + kChunk - 1) / kChunk);
    std::vector<std::vector<SignedOp>> found(chunks);
    parallel_for(chunks, [&](std::size_t chunk) {
      const std::uint64_t end = std::min<std::uint64_t>(count, (chunk + 1) * kChunk);
      for (std::uint64_t i = chunk * kChunk; i < end; ++i) {
        SignedOp f(Operation(k, n, table_from_index(k, table_size, i % tables)), signa[i / tables]);
        const bool ok = std::all_of(relations.begin(), relations.end(),
                                    [&](const SRelation& r) { return preserves(monoid, f, r); });
        if (ok) found[chunk].push_back(std::move(f));
      }
    });
    for (auto& chunk : found)
      for (auto& f : chunk) out.push_back(std::move(f));
  }
  return out;
}

std::uint64_t count_s_relations(std::size_t monoid_size, int k, int arity) {
  const auto universe = checked_power(k, arity);
  if (universe == 0 || universe * monoid_size > 63) return 0;
  return std::uint64_t{1} << (universe * monoid_size);
}

namespace {

SRelation s_relation_from_index(std::size_t monoid_size, int k, int arity, std::uint64_t index) {
  const auto universe = static_cast<std::size_t>(checked_power(k, arity));
  std::vector<Relation> parts;
  for (std::size_t s = 0; s < monoid_size; ++s) {
    const std::uint64_t mask = (index >> (universe * (monoid_size - 1 - s))) & ((std::uint64_t{1} << universe) - 1);
    Relation part(k, arity);
    for (std::size_t t = 0; t < universe; ++t)
      if ((mask >> t) & 1U) part.insert(static_cast<TupleIndex>(t));
    parts.push_back(std::move(part));
  }
  return SRelation(std::move(parts));
}

}  // namespace

void for_each_s_relation(std::size_t monoid_size, int k, int arity, const std::function<bool(const SRelation&)>& visit) {
  const auto count = count_s_relations(monoid_size, k, arity);
  if (count == 0) throw Error(ErrorKind::CapExceeded, "too many S-relations to enumerate");
  for (std::uint64_t i = 0; i < count; ++i)
    if (!visit(s_relation_from_index(monoid_size, k, arity, i))) return;
}

std::vector<SRelation> sinv(const Monoid& monoid, int k, std::span<const SignedOp> generators, int rel_cap,
                            std::uint64_t limit) {
  for (const auto& f : generators) require_domain(k, f.domain_size());
  if (rel_cap < 1) throw Error(ErrorKind::CapExceeded, "relation arity cap must be positive");
  std::uint64_t total = 0;
  for (int m = 1; m <= rel_cap; ++m) {
    const auto c = count_s_relations(monoid.size(), k, m);
    if (c == 0 || (total += c) > limit) {
      throw Error(ErrorKind::CapExceeded, "sinv at relation cap " + std::to_string(rel_cap) + " needs more than " +
                                              std::to_string(limit) + " candidates");
    }
  }
  std::vector<SRelation> out;
  for (int m = 1; m <= rel_cap; ++m) {
    const auto count = count_s_relations(monoid.size(), k, m);
    const std::size_t chunks = static_cast<std::size_t>((count + kChunk - 1) / kChunk);
    std::vector<std::vector<SRelation>> found(chunks);
    parallel_for(chunks, [&](std::size_t chunk) {
      const std::uint64_t end = std::min<std::uint64_t>(count, (chunk + 1) * kChunk);
      for (std::uint64_t i = chunk * kChunk; i < end; ++i) {
        SRelation r = s_relation_from_index(monoid.size(), k, m, i);
        const bool ok = std::all_of(generators.begin(), generators.end(),
                                    [&](const SignedOp& f) { return preserves(monoid, f, r); });
        if (ok) found[chunk].push_back(std::move(r));
      }
    });
    for (auto& chunk : found)
      for (auto& r : chunk) out.push_back(std::move(r));
  }
  return out;
}

bool underlying_clone_membership(const Operation& f, std::span<const SignedOp> generators) {
  const Monoid trivial = Monoid::trivial();
  std::vector<SignedOp> classical;
  for (const auto& g : generators) classical.emplace_back(g.table(), Signum(static_cast<std::size_t>(g.arity()), 0));
  const SignedOp target(f, Signum(static_cast<std::size_t>(f.arity()), 0));
  return membership(trivial, target, classical).member;
}

std::vector<Operation> s_part(std::span<const SignedOp> ops, Elem s) {
  std::set<Operation> part;
  for (const auto& f : ops)
    if (f.signum_set() == singleton(s)) part.insert(f.table());
  return {part.begin(), part.end()};
}

std::optional<MinorViolation> minor_closure_violation(std::span<const Operation> ops, int cap) {
  const std::set<Operation> present(ops.begin(), ops.end());
  for (const auto& f : ops) {
    const int n = f.arity();
    const int k = f.domain_size();
    for (int m = 1; m <= cap; ++m) {
      std::vector<int> sigma(static_cast<std::size_t>(n), 0);
      while (true) {
        Operation h = Operation::from_function(k, m, [&](std::span<const Value> x) {
          std::vector<Value> args(static_cast<std::size_t>(n));
          for (int i = 0; i < n; ++i) args[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(sigma[static_cast<std::size_t>(i)])];
          return f.at(encode(args, k));
        });
        if (!present.contains(h)) return MinorViolation{f, sigma, std::move(h)};
        int pos = n - 1;
        while (pos >= 0 && ++sigma[static_cast<std::size_t>(pos)] == m) sigma[static_cast<std::size_t>(pos--)] = 0;
        if (pos < 0) break;
      }
    }
  }
  return std::nullopt;
}

bool e_part_is_clone(const Monoid& monoid, std::span<const SignedOp> ops, int cap) {
  const std::vector<Operation> part = s_part(ops, monoid.unit());
  const std::set<Operation> present(part.begin(), part.end());
  auto plain = [&](const Operation& f) { return SignedOp(f, Signum(static_cast<std::size_t>(f.arity()), monoid.unit())); };
  auto has = [&](const SignedOp& f) { return f.arity() > cap || present.contains(f.table()); };
  int k = 0;
  for (const auto& f : ops) k = f.domain_size();
  if (k == 0) return false;
  for (int n = 1; n <= cap; ++n)
    for (int i = 0; i < n; ++i)
      if (!present.contains(Operation::projection(k, n, i))) return false;
  for (const auto& f0 : part) {
    const SignedOp f = plain(f0);
    if (!has(zeta(f)) || !has(tau(f)) || !has(delta(f)) || !has(nabla(monoid.unit(), f))) return false;
    for (const auto& g0 : part) {
      if (f.arity() + g0.arity() - 1 > cap) continue;
      if (!has(compose(monoid, f, plain(g0)))) return false;
    }
  }
  return true;
}

SRelation reconstruct_from_chi(const Monoid& monoid, std::span<const SignedOp> generators, const SRelation& rho) {
  const Listing list = listing(rho);
  if (list.columns.empty()) return SRelation(rho.domain_size(), rho.arity(), monoid.size());
  const int k = rho.domain_size();
  const int m = rho.arity();
  const int n = static_cast<int>(list.columns.size());
  const SRelation gamma = gamma_closure(monoid, generators, chi(monoid, k, list.signum).relation).result;
  // Row j of ρ's column matrix is the n-tuple (r_1[j], .., r_n[j]); it sits at
  // row encode(r_1[j], .., r_n[j]) of the χ matrix.
  std::vector<int> rows(static_cast<std::size_t>(m));
  std::vector<Value> row(static_cast<std::size_t>(n));
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < n; ++i) row[static_cast<std::size_t>(i)] = digit(list.columns[static_cast<std::size_t>(i)], k, m, j);
    rows[static_cast<std::size_t>(j)] = static_cast<int>(encode(row, k));
  }
  return pr_rows(gamma, rows);
}

}  // namespace spreclone
