#include "spreclone/relation.hpp"

#include <algorithm>
#include <bit>

#include "spreclone/error.hpp"

namespace spreclone {

namespace {

std::size_t universe_or_throw(int k, int arity) {
  if (k < 1 || k > 255) throw Error(ErrorKind::DomainMismatch, "domain size must be in 1..255");
  if (arity < 1) throw Error(ErrorKind::ArityMismatch, "relation arity must be at least 1");
  const auto size = checked_power(k, arity);
  if (size == 0) {
    throw Error(ErrorKind::ArityCapExceeded,
                "k^m for k=" + std::to_string(k) + ", m=" + std::to_string(arity) + " exceeds the hard limit 2^20");
  }
  return static_cast<std::size_t>(size);
}

void require_same_domain(int a, int b) {
  if (a != b) throw Error(ErrorKind::DomainMismatch, "relations over different base sets");
}

/// Maps every member through a tuple rewrite into a relation of arity `out_arity`.
template <class Rewrite>
Relation remap(const Relation& r, int out_arity, Rewrite rewrite) {
  const int k = r.domain_size();
  Relation out(k, out_arity);
  std::vector<Value> tuple;
  r.for_each([&](TupleIndex index) {
    tuple = decode(index, k, r.arity());
    out.insert(encode(rewrite(tuple), k));
  });
  return out;
}

void check_monoid_match(const Monoid& monoid, const SRelation& r) {
  if (monoid.size() != r.monoid_size()) throw Error(ErrorKind::DomainMismatch, "S-relation indexed by a different monoid");
}

}  // namespace

Relation::Relation(int k, int arity) : k_(k), arity_(arity), universe_(universe_or_throw(k, arity)) {
  words_.assign((universe_ + 63) / 64, 0);
}

Relation Relation::full(int k, int arity) {
  Relation r(k, arity);
  for (std::size_t i = 0; i < r.universe_; ++i) r.insert(static_cast<TupleIndex>(i));
  return r;
}

Relation Relation::from_tuples(int k, int arity, const std::vector<std::vector<Value>>& tuples) {
  Relation r(k, arity);
  for (const auto& t : tuples) r.insert(t);
  return r;
}

Relation Relation::diagonal(int k, const Partition& eps) {
  const int m = static_cast<int>(eps.size());
  Relation r(k, m);
  const Partition norm = normalize_partition(eps);
  const int blocks = norm.empty() ? 0 : *std::max_element(norm.begin(), norm.end()) + 1;
  std::vector<Value> block_value(static_cast<std::size_t>(blocks), 0);
  std::vector<Value> tuple(static_cast<std::size_t>(m));
  while (true) {
    for (int i = 0; i < m; ++i) tuple[static_cast<std::size_t>(i)] = block_value[static_cast<std::size_t>(norm[static_cast<std::size_t>(i)])];
    r.insert(encode(tuple, k));
    int pos = blocks - 1;
    while (pos >= 0 && ++block_value[static_cast<std::size_t>(pos)] == k) block_value[static_cast<std::size_t>(pos--)] = 0;
    if (pos < 0) break;
  }
  return r;
}

bool Relation::contains(std::span<const Value> tuple) const {
  if (static_cast<int>(tuple.size()) != arity_) throw Error(ErrorKind::ArityMismatch, "tuple length differs from arity");
  for (Value a : tuple)
    if (a >= k_) return false;
  return contains(encode(tuple, k_));
}

void Relation::insert(std::span<const Value> tuple) {
  if (static_cast<int>(tuple.size()) != arity_) throw Error(ErrorKind::ArityMismatch, "tuple length differs from arity");
  for (Value a : tuple)
    if (a >= k_) throw Error(ErrorKind::DomainMismatch, "tuple entry outside the base set");
  insert(encode(tuple, k_));
}

std::size_t Relation::count() const {
  std::size_t total = 0;
  for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

bool Relation::empty() const {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

std::vector<TupleIndex> Relation::members() const {
  std::vector<TupleIndex> out;
  for_each([&](TupleIndex i) { out.push_back(i); });
  return out;
}

std::vector<std::vector<Value>> Relation::tuples() const {
  std::vector<std::vector<Value>> out;
  for_each([&](TupleIndex i) { out.push_back(decode(i, k_, arity_)); });
  return out;
}

bool Relation::is_subset_of(const Relation& other) const {
  if (k_ != other.k_ || arity_ != other.arity_) return empty();
  for (std::size_t w = 0; w < words_.size(); ++w)
    if ((words_[w] & ~other.words_[w]) != 0) return false;
  return true;
}

Relation& Relation::operator|=(const Relation& other) {
  if (k_ != other.k_ || arity_ != other.arity_) throw Error(ErrorKind::ArityMismatch, "union of relations of different shape");
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
  return *this;
}

Relation& Relation::operator&=(const Relation& other) {
  if (k_ != other.k_ || arity_ != other.arity_) throw Error(ErrorKind::ArityMismatch, "intersection of relations of different shape");
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= other.words_[w];
  return *this;
}

std::strong_ordering Relation::operator<=>(const Relation& other) const {
  if (auto c = k_ <=> other.k_; c != 0) return c;
  if (auto c = arity_ <=> other.arity_; c != 0) return c;
  // Compare as sorted member lists so the order does not depend on word layout.
  const auto a = members();
  const auto b = other.members();
  return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
}

Relation zeta(const Relation& r) {
  if (r.arity() == 1) return r;
  return remap(r, r.arity(), [](std::vector<Value>& t) -> std::vector<Value>& {
    std::rotate(t.begin(), t.begin() + 1, t.end());
    return t;
  });
}

Relation tau(const Relation& r) {
  if (r.arity() == 1) return r;
  return remap(r, r.arity(), [](std::vector<Value>& t) -> std::vector<Value>& {
    std::swap(t[0], t[1]);
    return t;
  });
}

Relation pr(const Relation& r) {
  if (r.arity() == 1) return r;
  return remap(r, r.arity() - 1, [](std::vector<Value>& t) {
    return std::vector<Value>(t.begin() + 1, t.end());
  });
}

Relation product(const Relation& a, const Relation& b) {
  require_same_domain(a.domain_size(), b.domain_size());
  const int k = a.domain_size();
  Relation out(k, a.arity() + b.arity());
  const auto shift = static_cast<TupleIndex>(b.universe_size());
  a.for_each([&](TupleIndex x) { b.for_each([&](TupleIndex y) { out.insert(x * shift + y); }); });
  return out;
}

Relation meet(const Relation& a, const Relation& b) {
  require_same_domain(a.domain_size(), b.domain_size());
  if (a.arity() != b.arity()) return Relation(a.domain_size(), a.arity());
  Relation out = a;
  out &= b;
  return out;
}

Relation join(const Relation& a, const Relation& b) {
  Relation out = a;
  out |= b;
  return out;
}

Relation pr_rows(const Relation& r, std::span<const int> rows) {
  if (rows.empty()) throw Error(ErrorKind::BadRowIndex, "row list must be nonempty");
  for (int z : rows)
    if (z < 0 || z >= r.arity()) throw Error(ErrorKind::BadRowIndex, "row index " + std::to_string(z) + " out of range");
  std::vector<Value> out(rows.size());
  return remap(r, static_cast<int>(rows.size()), [&](const std::vector<Value>& t) -> std::vector<Value>& {
    for (std::size_t i = 0; i < rows.size(); ++i) out[i] = t[static_cast<std::size_t>(rows[i])];
    return out;
  });
}

Relation pi_dual(const Relation& r, const ValuePermutation& pi) {
  if (static_cast<int>(pi.size()) != r.domain_size()) throw Error(ErrorKind::DomainMismatch, "permutation size differs from |A|");
  return remap(r, r.arity(), [&](std::vector<Value>& t) -> std::vector<Value>& {
    for (Value& a : t) a = pi[a];
    return t;
  });
}

Partition normalize_partition(std::span<const int> labels) {
  Partition out(labels.size());
  std::vector<std::pair<int, int>> seen;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto it = std::find_if(seen.begin(), seen.end(), [&](const auto& p) { return p.first == labels[i]; });
    if (it == seen.end()) {
      seen.emplace_back(labels[i], static_cast<int>(seen.size()));
      out[i] = seen.back().second;
    } else {
      out[i] = it->second;
    }
  }
  return out;
}

std::optional<Partition> diagonal_partition(const Relation& r) {
  if (r.empty()) return std::nullopt;
  const int m = r.arity();
  // i ~ j iff every member agrees on rows i and j.
  std::vector<std::vector<bool>> same(static_cast<std::size_t>(m), std::vector<bool>(static_cast<std::size_t>(m), true));
  r.for_each([&](TupleIndex index) {
    const auto t = decode(index, r.domain_size(), m);
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j)
        if (t[static_cast<std::size_t>(i)] != t[static_cast<std::size_t>(j)]) same[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = false;
  });
  Partition labels(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    labels[static_cast<std::size_t>(i)] = i;
    for (int j = 0; j < i; ++j)
      if (same[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]) {
        labels[static_cast<std::size_t>(i)] = labels[static_cast<std::size_t>(j)];
        break;
      }
  }
  Partition eps = normalize_partition(labels);
  if (Relation::diagonal(r.domain_size(), eps) != r) return std::nullopt;
  return eps;
}

std::vector<Partition> all_partitions(int m) {
  // Restricted growth strings: label_i <= 1 + max(label_0..label_{i-1}).
  std::vector<Partition> out;
  Partition p(static_cast<std::size_t>(m), 0);
  auto extend = [&](auto&& self, int i, int max_label) -> void {
    if (i == m) {
      out.push_back(p);
      return;
    }
    for (int label = 0; label <= max_label + 1; ++label) {
      p[static_cast<std::size_t>(i)] = label;
      self(self, i + 1, std::max(max_label, label));
    }
  };
  if (m >= 1) {
    p[0] = 0;
    extend(extend, 1, 0);
  }
  return out;
}

SRelation::SRelation(int k, int arity, std::size_t monoid_size) : parts_(monoid_size, Relation(k, arity)) {
  if (monoid_size == 0) throw Error(ErrorKind::MalformedTable, "S-relation over an empty monoid");
}

SRelation::SRelation(std::vector<Relation> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw Error(ErrorKind::MalformedTable, "S-relation needs at least one part");
  for (const auto& p : parts_) {
    require_same_domain(p.domain_size(), parts_.front().domain_size());
    if (p.arity() != parts_.front().arity()) throw Error(ErrorKind::ArityMismatch, "parts of an S-relation differ in arity");
  }
}

SRelation SRelation::uniform(const Relation& r, std::size_t monoid_size) {
  return SRelation(std::vector<Relation>(monoid_size, r));
}

bool SRelation::is_subset_of(const SRelation& other) const {
  if (parts_.size() != other.parts_.size()) return false;
  for (std::size_t s = 0; s < parts_.size(); ++s)
    if (!parts_[s].is_subset_of(other.parts_[s])) return false;
  return true;
}

std::size_t SRelation::listing_size() const {
  std::size_t total = 0;
  for (const auto& p : parts_) total += p.count();
  return total;
}

namespace {

template <class Fn>
SRelation partwise(const SRelation& r, Fn fn) {
  std::vector<Relation> parts;
  parts.reserve(r.monoid_size());
  for (const auto& p : r.parts()) parts.push_back(fn(p));
  return SRelation(std::move(parts));
}

template <class Fn>
SRelation partwise2(const SRelation& a, const SRelation& b, Fn fn) {
  if (a.monoid_size() != b.monoid_size()) throw Error(ErrorKind::DomainMismatch, "S-relations over different monoids");
  std::vector<Relation> parts;
  parts.reserve(a.monoid_size());
  for (std::size_t s = 0; s < a.monoid_size(); ++s) parts.push_back(fn(a.parts()[s], b.parts()[s]));
  return SRelation(std::move(parts));
}

}  // namespace

SRelation zeta(const SRelation& r) { return partwise(r, [](const Relation& p) { return zeta(p); }); }
SRelation tau(const SRelation& r) { return partwise(r, [](const Relation& p) { return tau(p); }); }
SRelation pr(const SRelation& r) { return partwise(r, [](const Relation& p) { return pr(p); }); }

SRelation product(const SRelation& a, const SRelation& b) {
  return partwise2(a, b, [](const Relation& x, const Relation& y) { return product(x, y); });
}

SRelation meet(const SRelation& a, const SRelation& b) {
  return partwise2(a, b, [](const Relation& x, const Relation& y) { return meet(x, y); });
}

SRelation join(const SRelation& a, const SRelation& b) {
  return partwise2(a, b, [](const Relation& x, const Relation& y) { return join(x, y); });
}

SRelation pr_rows(const SRelation& r, std::span<const int> rows) {
  return partwise(r, [rows](const Relation& p) { return pr_rows(p, rows); });
}

SRelation mu(const Monoid& monoid, const SRelation& r, Elem v) {
  check_monoid_match(monoid, r);
  std::vector<Relation> parts;
  for (std::size_t s = 0; s < monoid.size(); ++s) parts.push_back(r.part(monoid.mul(static_cast<Elem>(s), v)));
  return SRelation(std::move(parts));
}

SRelation m_self_intersect(const Monoid& monoid, const SRelation& r, const MFamily& family) {
  check_monoid_match(monoid, r);
  if (!family.valid || !monoid.check_m_condition(family)) {
    throw Error(ErrorKind::InvalidFamily, "family violates s'·M_s ⊆ M_{s's}");
  }
  std::vector<Relation> parts;
  for (std::size_t s = 0; s < monoid.size(); ++s) {
    Relation part = Relation::full(r.domain_size(), r.arity());
    for (std::size_t x = 0; x < monoid.size(); ++x)
      if (contains(family.sets[s], static_cast<Elem>(x))) part &= r.part(static_cast<Elem>(x));
    parts.push_back(std::move(part));
  }
  return SRelation(std::move(parts));
}

SRelation self_intersect(const Monoid& monoid, const SRelation& r, Elem v) {
  return m_self_intersect(monoid, r, monoid.m_family(v));
}

SRelation delta_S(const Monoid& monoid, int k, int arity) {
  return SRelation::uniform(Relation::diagonal(k, Partition(static_cast<std::size_t>(arity), 0)), monoid.size());
}

SRelation make_diagonal(const Monoid& monoid, int k, const DiagonalSpec& spec) {
  if (spec.arity < 1) throw Error(ErrorKind::BadPartition, "diagonal arity must be at least 1");
  if (spec.parts.size() != monoid.size()) throw Error(ErrorKind::BadPartition, "need one partition or ⊤ per monoid element");
  std::vector<Relation> parts;
  for (const auto& eps : spec.parts) {
    if (!eps) {
      parts.emplace_back(k, spec.arity);
      continue;
    }
    if (static_cast<int>(eps->size()) != spec.arity) throw Error(ErrorKind::BadPartition, "partition size differs from arity");
    for (int label : *eps)
      if (label < 0) throw Error(ErrorKind::BadPartition, "negative block label");
    parts.push_back(Relation::diagonal(k, *eps));
  }
  return SRelation(std::move(parts));
}

bool is_s_diagonal(const Monoid& monoid, const SRelation& r) {
  check_monoid_match(monoid, r);
  for (const auto& p : r.parts())
    if (!p.empty() && !diagonal_partition(p)) return false;
  for (std::size_t s = 0; s < monoid.size(); ++s)
    for (std::size_t t = 0; t < monoid.size(); ++t) {
      const ElemSet ss = monoid.left_ideal(static_cast<Elem>(s));
      const ElemSet st = monoid.left_ideal(static_cast<Elem>(t));
      if ((ss & ~st) == 0 && !r.part(static_cast<Elem>(s)).is_subset_of(r.part(static_cast<Elem>(t)))) return false;
    }
  return true;
}

SRelation pi_dual(const SRelation& r, const ValuePermutation& pi) {
  return partwise(r, [&pi](const Relation& p) { return pi_dual(p, pi); });
}

SRelation h_map(const SRelation& r, const Permutation& h) {
  if (h.size() != r.monoid_size()) throw Error(ErrorKind::DomainMismatch, "automorphism size differs from |S|");
  std::vector<Relation> parts(r.monoid_size());
  for (std::size_t s = 0; s < r.monoid_size(); ++s) parts[h[s]] = r.part(static_cast<Elem>(s));
  return SRelation(std::move(parts));
}

TupleIndex apply_op(const Operation& f, std::span<const TupleIndex> columns, int m) {
  if (static_cast<int>(columns.size()) != f.arity()) throw Error(ErrorKind::ArityMismatch, "need one column per argument");
  const int k = f.domain_size();
  TupleIndex out = 0;
  for (int row = 0; row < m; ++row) {
    TupleIndex arg = 0;
    for (TupleIndex c : columns) arg = arg * static_cast<TupleIndex>(k) + digit(c, k, m, row);
    out = out * static_cast<TupleIndex>(k) + f.at(arg);
  }
  return out;
}

Listing listing(const SRelation& r) {
  Listing out;
  for (std::size_t s = 0; s < r.monoid_size(); ++s)
    r.part(static_cast<Elem>(s)).for_each([&](TupleIndex c) {
      out.columns.push_back(c);
      out.signum.push_back(static_cast<Elem>(s));
    });
  return out;
}

std::string canonical_key(const SRelation& r) {
  std::string key;
  key.push_back(static_cast<char>(r.domain_size()));
  key.push_back(static_cast<char>(r.arity()));
  key.push_back(static_cast<char>(r.monoid_size()));
  for (const auto& p : r.parts())
    for (auto w : p.words())
      for (int byte = 0; byte < 8; ++byte) key.push_back(static_cast<char>((w >> (8 * byte)) & 0xFF));
  return key;
}

std::size_t SRelationHash::operator()(const SRelation& r) const {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  };
  mix(static_cast<std::uint64_t>(r.arity()));
  for (const auto& p : r.parts())
    for (auto w : p.words()) mix(w);
  return static_cast<std::size_t>(h);
}

}  // namespace spreclone
