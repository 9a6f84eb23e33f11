#include "spreclone/signed_op.hpp"

#include <algorithm>
#include <numeric>

#include "spreclone/error.hpp"

namespace spreclone {

namespace {

std::size_t table_size_or_throw(int k, int arity) {
  if (k < 1 || k > 255) throw Error(ErrorKind::DomainMismatch, "domain size must be in 1..255");
  if (arity < 1) throw Error(ErrorKind::ArityMismatch, "arity must be at least 1");
  const auto size = checked_power(k, arity);
  if (size == 0) throw Error(ErrorKind::ArityCapExceeded, "table k^n exceeds the hard size limit");
  return static_cast<std::size_t>(size);
}

/// h(x_0..x_{m-1}) = f(x_{src[0]}, .., x_{src[n-1]}) for a new arity m.
std::vector<Value> remap_table(const Operation& f, int new_arity, std::span<const int> src) {
  const int k = f.domain_size();
  const std::size_t size = table_size_or_throw(k, new_arity);
  std::vector<Value> out(size);
  std::vector<Value> x(static_cast<std::size_t>(new_arity), 0);
  std::vector<Value> args(static_cast<std::size_t>(f.arity()));
  for (std::size_t index = 0; index < size; ++index) {
    for (std::size_t i = 0; i < args.size(); ++i) args[i] = x[static_cast<std::size_t>(src[i])];
    out[index] = f.at(encode(args, k));
    for (int pos = new_arity - 1; pos >= 0; --pos) {
      auto& d = x[static_cast<std::size_t>(pos)];
      if (++d < k) break;
      d = 0;
    }
  }
  return out;
}

void require_same_domain(const SignedOp& f, const SignedOp& g) {
  if (f.domain_size() != g.domain_size()) throw Error(ErrorKind::DomainMismatch, "operations over different base sets");
}

SignedOp rotate(SignedOp f, int times) {
  for (int i = 0; i < times; ++i) f = zeta(f);
  return f;
}

/// Swaps arguments j and j+1 via ζ^(n-j) τ ζ^j.
SignedOp swap_adjacent(const SignedOp& f, int j) {
  const int n = f.arity();
  return rotate(tau(rotate(f, (n - j) % n)), j);
}

}  // namespace

Operation::Operation(int k, int arity, std::vector<Value> values) : k_(k), arity_(arity), values_(std::move(values)) {
  const std::size_t size = table_size_or_throw(k, arity);
  if (values_.size() != size) throw Error(ErrorKind::ArityMismatch, "value table length is not k^n");
  for (Value v : values_)
    if (v >= k) throw Error(ErrorKind::DomainMismatch, "table value outside the base set");
}

Operation Operation::from_function(int k, int arity, const std::function<Value(std::span<const Value>)>& fn) {
  const std::size_t size = table_size_or_throw(k, arity);
  std::vector<Value> values(size);
  for (std::size_t index = 0; index < size; ++index) {
    const auto args = decode(static_cast<TupleIndex>(index), k, arity);
    values[index] = fn(args);
  }
  return Operation(k, arity, std::move(values));
}

Operation Operation::projection(int k, int arity, int position) {
  if (position < 0 || position >= arity) throw Error(ErrorKind::ArityMismatch, "projection position out of range");
  return from_function(k, arity, [position](std::span<const Value> x) { return x[static_cast<std::size_t>(position)]; });
}

Operation Operation::constant(int k, int arity, Value c) {
  return Operation(k, arity, std::vector<Value>(table_size_or_throw(k, arity), c));
}

Value Operation::eval(std::span<const Value> args) const {
  if (static_cast<int>(args.size()) != arity_) {
    throw Error(ErrorKind::ArityMismatch,
                "expected " + std::to_string(arity_) + " arguments, got " + std::to_string(args.size()));
  }
  for (Value a : args)
    if (a >= k_) throw Error(ErrorKind::DomainMismatch, "argument outside the base set");
  return values_[encode(args, k_)];
}

int Operation::projection_position() const {
  for (int i = 0; i < arity_; ++i)
    if (*this == projection(k_, arity_, i)) return i;
  return -1;
}

bool Operation::is_essential(int position) const {
  const auto stride = static_cast<std::size_t>(checked_power(k_, arity_ - 1 - position));
  for (std::size_t index = 0; index < values_.size(); ++index) {
    const auto d = (index / stride) % static_cast<std::size_t>(k_);
    if (d == 0) continue;
    if (values_[index] != values_[index - d * stride]) return true;
  }
  return false;
}

SignedOp::SignedOp(Operation table, Signum signum) : table_(std::move(table)), signum_(std::move(signum)) {
  if (static_cast<int>(signum_.size()) != table_.arity()) {
    throw Error(ErrorKind::ArityMismatch, "signum length differs from arity");
  }
}

SignedOp::SignedOp(int k, Signum signum, std::vector<Value> values)
    : table_(k, static_cast<int>(signum.size()), std::move(values)), signum_(std::move(signum)) {}

ElemSet SignedOp::signum_set() const {
  ElemSet set = 0;
  for (Elem s : signum_) set |= singleton(s);
  return set;
}

std::strong_ordering SignedOp::operator<=>(const SignedOp& other) const {
  if (auto c = table_.domain_size() <=> other.table_.domain_size(); c != 0) return c;
  if (auto c = arity() <=> other.arity(); c != 0) return c;
  if (auto c = signum_ <=> other.signum_; c != 0) return c;
  return table_.values() <=> other.table_.values();
}

SignedOp zeta(const SignedOp& f) {
  const int n = f.arity();
  if (n == 1) return f;
  std::vector<int> src(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) src[static_cast<std::size_t>(i)] = (i + 1) % n;
  Signum signum(static_cast<std::size_t>(n));
  signum[0] = f.signum()[static_cast<std::size_t>(n - 1)];
  for (int j = 1; j < n; ++j) signum[static_cast<std::size_t>(j)] = f.signum()[static_cast<std::size_t>(j - 1)];
  return SignedOp(Operation(f.domain_size(), n, remap_table(f.table(), n, src)), std::move(signum));
}

SignedOp tau(const SignedOp& f) {
  const int n = f.arity();
  if (n == 1) return f;
  std::vector<int> src(static_cast<std::size_t>(n));
  std::iota(src.begin(), src.end(), 0);
  std::swap(src[0], src[1]);
  Signum signum = f.signum();
  std::swap(signum[0], signum[1]);
  return SignedOp(Operation(f.domain_size(), n, remap_table(f.table(), n, src)), std::move(signum));
}

SignedOp nabla(Elem s, const SignedOp& f) {
  const int n = f.arity();
  std::vector<int> src(static_cast<std::size_t>(n));
  std::iota(src.begin(), src.end(), 1);
  Signum signum{s};
  signum.insert(signum.end(), f.signum().begin(), f.signum().end());
  return SignedOp(Operation(f.domain_size(), n + 1, remap_table(f.table(), n + 1, src)), std::move(signum));
}

SignedOp delta(const SignedOp& f) {
  const int n = f.arity();
  if (n < 2 || f.signum()[0] != f.signum()[1]) return f;
  std::vector<int> src(static_cast<std::size_t>(n));
  src[0] = 0;
  for (int i = 1; i < n; ++i) src[static_cast<std::size_t>(i)] = i - 1;
  Signum signum(f.signum().begin() + 1, f.signum().end());
  return SignedOp(Operation(f.domain_size(), n - 1, remap_table(f.table(), n - 1, src)), std::move(signum));
}

SignedOp compose(const Monoid& monoid, const SignedOp& f, const SignedOp& g) {
  require_same_domain(f, g);
  const int k = f.domain_size();
  const int n = f.arity();
  const int m = g.arity();
  const int arity = m + n - 1;
  const std::size_t size = table_size_or_throw(k, arity);
  const auto tail = static_cast<std::size_t>(checked_power(k, n - 1));  // k^(n-1)
  std::vector<Value> values(size);
  for (std::size_t index = 0; index < size; ++index) {
    const std::size_t g_index = index / tail;
    const std::size_t rest = index % tail;
    values[index] = f.table().at(static_cast<TupleIndex>(g.table().at(static_cast<TupleIndex>(g_index)) * tail + rest));
  }
  Signum signum;
  signum.reserve(static_cast<std::size_t>(arity));
  const Elem s1 = f.signum()[0];
  for (Elem sp : g.signum()) signum.push_back(monoid.mul(sp, s1));
  signum.insert(signum.end(), f.signum().begin() + 1, f.signum().end());
  return SignedOp(Operation(k, arity, std::move(values)), std::move(signum));
}

SignedOp identity(int k, Elem s) { return SignedOp(Operation::projection(k, 1, 0), Signum{s}); }

SignedOp projection(const Monoid& monoid, int k, int arity, int position, Signum signum) {
  if (static_cast<int>(signum.size()) != arity) throw Error(ErrorKind::ArityMismatch, "signum length differs from arity");
  if (position < 0 || position >= arity) throw Error(ErrorKind::ArityMismatch, "projection position out of range");
  if (signum[static_cast<std::size_t>(position)] != monoid.unit()) {
    throw Error(ErrorKind::BadSignum, "the essential argument of a trivial projection must carry the unit");
  }
  return SignedOp(Operation::projection(k, arity, position), std::move(signum));
}

bool is_trivial_projection(const Monoid& monoid, const SignedOp& f) {
  for (int i = 0; i < f.arity(); ++i) {
    if (f.signum()[static_cast<std::size_t>(i)] != monoid.unit()) continue;
    if (f.table() == Operation::projection(f.domain_size(), f.arity(), i)) return true;
  }
  return false;
}

SignedOp permute_arguments(const SignedOp& f, std::span<const int> perm) {
  const int n = f.arity();
  if (static_cast<int>(perm.size()) != n) throw Error(ErrorKind::ArityMismatch, "permutation length differs from arity");
  // target[p] = final position of the argument currently at position p.
  std::vector<int> target(perm.begin(), perm.end());
  {
    std::vector<int> check = target;
    std::sort(check.begin(), check.end());
    for (int i = 0; i < n; ++i)
      if (check[static_cast<std::size_t>(i)] != i) throw Error(ErrorKind::ArityMismatch, "not a permutation");
  }
  SignedOp h = f;
  for (bool swapped = true; swapped;) {
    swapped = false;
    for (int j = 0; j + 1 < n; ++j) {
      if (target[static_cast<std::size_t>(j)] > target[static_cast<std::size_t>(j + 1)]) {
        h = swap_adjacent(h, j);
        std::swap(target[static_cast<std::size_t>(j)], target[static_cast<std::size_t>(j + 1)]);
        swapped = true;
      }
    }
  }
  return h;
}

SignedOp identify_arguments(const SignedOp& f, int i, int j) {
  const int n = f.arity();
  if (i < 0 || j <= i || j >= n) throw Error(ErrorKind::ArityMismatch, "identify_arguments needs 0 <= i < j < n");
  if (f.signum()[static_cast<std::size_t>(i)] != f.signum()[static_cast<std::size_t>(j)]) return f;
  std::vector<int> front(static_cast<std::size_t>(n));
  front[static_cast<std::size_t>(i)] = 0;
  front[static_cast<std::size_t>(j)] = 1;
  for (int p = 0, next = 2; p < n; ++p)
    if (p != i && p != j) front[static_cast<std::size_t>(p)] = next++;
  const SignedOp merged = delta(permute_arguments(f, front));
  // merged: position 0 is the identified argument, then the rest in order.
  std::vector<int> back(static_cast<std::size_t>(n - 1));
  back[0] = i;
  for (int p = 0, q = 1; p < n; ++p) {
    if (p == i || p == j) continue;
    back[static_cast<std::size_t>(q++)] = p < j ? p : p - 1;
  }
  return permute_arguments(merged, back);
}

SignedOp add_fictitious(const SignedOp& f, int position, Elem s) {
  const int n = f.arity();
  if (position < 0 || position > n) throw Error(ErrorKind::ArityMismatch, "fictitious position out of range");
  std::vector<int> perm(static_cast<std::size_t>(n + 1));
  perm[0] = position;
  for (int p = 1; p <= n; ++p) perm[static_cast<std::size_t>(p)] = p - 1 < position ? p - 1 : p;
  return permute_arguments(nabla(s, f), perm);
}

SignedOp general_compose(const Monoid& monoid, const SignedOp& f, std::span<const SignedOp> gs) {
  if (static_cast<int>(gs.size()) != f.arity()) throw Error(ErrorKind::ArityMismatch, "need one inner operation per argument");
  SignedOp h = f;
  int placed = 0;  // arguments already filled by earlier blocks
  for (std::size_t i = 0; i < gs.size(); ++i) {
    require_same_domain(f, gs[i]);
    const int n = h.arity();
    // Bring the argument at position `placed` to the front.
    std::vector<int> to_front(static_cast<std::size_t>(n));
    for (int p = 0; p < n; ++p) to_front[static_cast<std::size_t>(p)] = p < placed ? p + 1 : (p == placed ? 0 : p);
    h = compose(monoid, permute_arguments(h, to_front), gs[i]);
    // Now: [block i (m args), earlier blocks (placed args), remaining f args].
    const int m = gs[i].arity();
    std::vector<int> back(static_cast<std::size_t>(h.arity()));
    for (int p = 0; p < h.arity(); ++p) {
      if (p < m) back[static_cast<std::size_t>(p)] = placed + p;
      else if (p < m + placed) back[static_cast<std::size_t>(p)] = p - m;
      else back[static_cast<std::size_t>(p)] = p;
    }
    h = permute_arguments(h, back);
    placed += m;
  }
  return h;
}

SignedOp general_compose_direct(const Monoid& monoid, const SignedOp& f, std::span<const SignedOp> gs) {
  if (static_cast<int>(gs.size()) != f.arity()) throw Error(ErrorKind::ArityMismatch, "need one inner operation per argument");
  const int k = f.domain_size();
  Signum signum;
  for (std::size_t i = 0; i < gs.size(); ++i) {
    require_same_domain(f, gs[i]);
    for (Elem sp : gs[i].signum()) signum.push_back(monoid.mul(sp, f.signum()[i]));
  }
  const int arity = static_cast<int>(signum.size());
  auto table = Operation::from_function(k, arity, [&](std::span<const Value> x) {
    std::vector<Value> outer(gs.size());
    std::size_t offset = 0;
    for (std::size_t i = 0; i < gs.size(); ++i) {
      const auto m = static_cast<std::size_t>(gs[i].arity());
      outer[i] = gs[i].table().at(encode(x.subspan(offset, m), k));
      offset += m;
    }
    return f.table().at(encode(outer, k));
  });
  return SignedOp(std::move(table), std::move(signum));
}

SignedOp superpose(const Monoid& monoid, const SignedOp& f, std::span<const SignedOp> gs) {
  if (static_cast<int>(gs.size()) != f.arity()) throw Error(ErrorKind::ArityMismatch, "need one inner operation per argument");
  const int k = f.domain_size();
  const int n = gs.front().arity();
  Signum signum(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < gs.size(); ++i) {
    require_same_domain(f, gs[i]);
    if (gs[i].arity() != n) throw Error(ErrorKind::ArityMismatch, "superposition needs inner operations of equal arity");
    for (std::size_t x = 0; x < signum.size(); ++x) {
      const Elem s = monoid.mul(gs[i].signum()[x], f.signum()[i]);
      if (i == 0) signum[x] = s;
      else if (signum[x] != s) throw Error(ErrorKind::BadSignum, "inconsistent signum for a shared variable");
    }
  }
  const std::size_t size = gs.front().table().table_size();
  std::vector<Value> values(size);
  std::vector<Value> outer(gs.size());
  for (std::size_t index = 0; index < size; ++index) {
    for (std::size_t i = 0; i < gs.size(); ++i) outer[i] = gs[i].table().at(static_cast<TupleIndex>(index));
    values[index] = f.table().at(encode(outer, k));
  }
  return SignedOp(Operation(k, n, std::move(values)), std::move(signum));
}

bool is_minor(const Operation& f, const Operation& g) {
  if (f.domain_size() != g.domain_size()) return false;
  const int n = f.arity();
  const int m = g.arity();
  const int k = f.domain_size();
  std::vector<int> sigma(static_cast<std::size_t>(m), 0);
  std::vector<Value> args(static_cast<std::size_t>(m));
  while (true) {
    bool equal = true;
    for (std::size_t index = 0; index < f.table_size() && equal; ++index) {
      const auto a = decode(static_cast<TupleIndex>(index), k, n);
      for (int j = 0; j < m; ++j) args[static_cast<std::size_t>(j)] = a[static_cast<std::size_t>(sigma[static_cast<std::size_t>(j)])];
      equal = f.at(static_cast<TupleIndex>(index)) == g.at(encode(args, k));
    }
    if (equal) return true;
    int pos = m - 1;
    while (pos >= 0 && ++sigma[static_cast<std::size_t>(pos)] == n) sigma[static_cast<std::size_t>(pos--)] = 0;
    if (pos < 0) return false;
  }
}

Operation pi_dual(const Operation& f, const ValuePermutation& pi) {
  const int k = f.domain_size();
  if (static_cast<int>(pi.size()) != k) throw Error(ErrorKind::DomainMismatch, "permutation size differs from |A|");
  ValuePermutation inv(pi.size());
  for (std::size_t a = 0; a < pi.size(); ++a) inv[pi[a]] = static_cast<Value>(a);
  std::vector<Value> values(f.table_size());
  std::vector<Value> y(static_cast<std::size_t>(f.arity()));
  for (std::size_t index = 0; index < values.size(); ++index) {
    const auto x = decode(static_cast<TupleIndex>(index), k, f.arity());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = inv[x[i]];
    values[index] = pi[f.at(encode(y, k))];
  }
  return Operation(k, f.arity(), std::move(values));
}

SignedOp pi_dual(const SignedOp& f, const ValuePermutation& pi) { return SignedOp(pi_dual(f.table(), pi), f.signum()); }

SignedOp h_map(const SignedOp& f, const Permutation& h) {
  Signum signum = f.signum();
  for (Elem& s : signum) s = h[s];
  return SignedOp(f.table(), std::move(signum));
}

std::string canonical_key(const SignedOp& f) {
  std::string key;
  key.reserve(2 + f.signum().size() + f.table().table_size());
  key.push_back(static_cast<char>(f.domain_size()));
  key.push_back(static_cast<char>(f.arity()));
  for (Elem s : f.signum()) key.push_back(static_cast<char>(s));
  for (Value v : f.table().values()) key.push_back(static_cast<char>(v));
  return key;
}

SignedOp from_canonical_key(const std::string& key) {
  if (key.size() < 2) throw Error(ErrorKind::Parse, "truncated operation key");
  const int k = static_cast<unsigned char>(key[0]);
  const int n = static_cast<unsigned char>(key[1]);
  const auto size = checked_power(k, n);
  if (size == 0 || key.size() != 2 + static_cast<std::size_t>(n) + size) throw Error(ErrorKind::Parse, "malformed operation key");
  Signum signum(key.begin() + 2, key.begin() + 2 + n);
  std::vector<Value> values(key.begin() + 2 + n, key.end());
  return SignedOp(k, std::move(signum), std::move(values));
}

std::size_t SignedOpHash::operator()(const SignedOp& f) const {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::uint64_t v) {
    h ^= v;
    h *= 1099511628211ULL;
  };
  mix(static_cast<std::uint64_t>(f.domain_size()));
  mix(static_cast<std::uint64_t>(f.arity()));
  for (Elem s : f.signum()) mix(s);
  for (Value v : f.table().values()) mix(v);
  return static_cast<std::size_t>(h);
}

std::uint64_t count_signed_ops(std::size_t monoid_size, int k, int arity) {
  const auto table = checked_power(k, arity);
  if (table == 0 || table > 63) {
    if (table == 0 || k > 1) return 0;
  }
  std::uint64_t tables = 1;
  for (std::uint64_t i = 0; i < table; ++i) {
    if (tables > (std::uint64_t{1} << 40)) return 0;
    tables *= static_cast<std::uint64_t>(k);
  }
  std::uint64_t signa = 1;
  for (int i = 0; i < arity; ++i) signa *= monoid_size;
  return tables * signa;
}

std::vector<Signum> all_signa(std::size_t monoid_size, int arity) {
  std::vector<Signum> result;
  Signum signum(static_cast<std::size_t>(arity), 0);
  while (true) {
    result.push_back(signum);
    int pos = arity - 1;
    while (pos >= 0 && ++signum[static_cast<std::size_t>(pos)] == monoid_size) signum[static_cast<std::size_t>(pos--)] = 0;
    if (pos < 0) break;
  }
  return result;
}

std::vector<Operation> all_operations(int k, int arity) {
  const std::size_t size = table_size_or_throw(k, arity);
  if (count_signed_ops(1, k, arity) == 0) throw Error(ErrorKind::CapExceeded, "too many operations to enumerate");
  std::vector<Operation> result;
  std::vector<Value> values(size, 0);
  while (true) {
    result.emplace_back(k, arity, values);
    std::ptrdiff_t pos = static_cast<std::ptrdiff_t>(size) - 1;
    while (pos >= 0 && ++values[static_cast<std::size_t>(pos)] == k) values[static_cast<std::size_t>(pos--)] = 0;
    if (pos < 0) break;
  }
  return result;
}

void for_each_signed_op(std::size_t monoid_size, int k, int arity, const std::function<bool(const SignedOp&)>& visit) {
  const auto tables = all_operations(k, arity);
  for (const auto& signum : all_signa(monoid_size, arity))
    for (const auto& table : tables)
      if (!visit(SignedOp(table, signum))) return;
}

}  // namespace spreclone
