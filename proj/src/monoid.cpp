#include "spreclone/monoid.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "spreclone/error.hpp"

namespace spreclone {

namespace {

ErrorKind error_kind(MonoidViolation::Kind kind) {
  switch (kind) {
    case MonoidViolation::Kind::NonAssociative: return ErrorKind::NonAssociative;
    case MonoidViolation::Kind::BadUnit: return ErrorKind::BadUnit;
    case MonoidViolation::Kind::MalformedTable: return ErrorKind::MalformedTable;
  }
  return ErrorKind::MalformedTable;
}

[[noreturn]] void throw_violations(const std::vector<MonoidViolation>& found) {
  std::ostringstream message;
  message << found.size() << " violation(s)";
  for (const auto& v : found) message << "; " << v.detail;
  throw Error(error_kind(found.front().kind), message.str());
}

}  // namespace

std::vector<MonoidViolation> Monoid::violations(std::size_t size, int unit,
                                                const std::vector<std::vector<int>>& table) {
  using Kind = MonoidViolation::Kind;
  std::vector<MonoidViolation> found;
  const int n = static_cast<int>(size);
  if (size == 0) {
    found.push_back({Kind::MalformedTable, "empty element list"});
    return found;
  }
  if (size > kMaxMonoidSize) {
    found.push_back({Kind::MalformedTable, "more than " + std::to_string(kMaxMonoidSize) + " elements"});
    return found;
  }
  if (table.size() != size) {
    found.push_back({Kind::MalformedTable, "table has " + std::to_string(table.size()) + " rows, expected " +
                                               std::to_string(size)});
    return found;
  }
  for (int a = 0; a < n; ++a) {
    const auto& row = table[static_cast<std::size_t>(a)];
    if (row.size() != size) {
      found.push_back({Kind::MalformedTable, "row " + std::to_string(a) + " has " + std::to_string(row.size()) +
                                                 " entries"});
      continue;
    }
    for (int b = 0; b < n; ++b) {
      const int v = row[static_cast<std::size_t>(b)];
      if (v < 0 || v >= n) {
        found.push_back({Kind::MalformedTable, "entry (" + std::to_string(a) + "," + std::to_string(b) +
                                                   ") out of range"});
      }
    }
  }
  if (unit < 0 || unit >= n) found.push_back({Kind::MalformedTable, "unit is not an element"});
  if (!found.empty()) return found;

  auto at = [&](int a, int b) { return table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; };
  for (int x = 0; x < n; ++x) {
    if (at(unit, x) != x || at(x, unit) != x) {
      found.push_back({Kind::BadUnit, "BadUnit(" + std::to_string(x) + ")"});
    }
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (at(at(a, b), c) != at(a, at(b, c))) {
          found.push_back({Kind::NonAssociative, "NonAssociative(" + std::to_string(a) + "," + std::to_string(b) +
                                                     "," + std::to_string(c) + ")"});
        }
  return found;
}

Monoid Monoid::validate(std::vector<std::string> names, int unit, const std::vector<std::vector<int>>& table) {
  std::set<std::string> distinct(names.begin(), names.end());
  if (distinct.size() != names.size()) throw Error(ErrorKind::MalformedTable, "element names are not distinct");
  if (const auto found = violations(names.size(), unit, table); !found.empty()) throw_violations(found);
  std::vector<Elem> flat;
  flat.reserve(names.size() * names.size());
  for (const auto& row : table)
    for (int v : row) flat.push_back(static_cast<Elem>(v));
  return Monoid(std::move(names), static_cast<Elem>(unit), std::move(flat));
}

Monoid Monoid::validate(std::vector<std::string> names, std::string_view unit,
                        const std::vector<std::vector<std::string>>& table) {
  auto lookup = [&](std::string_view name) -> int {
    const auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw Error(ErrorKind::MalformedTable, "unknown element name '" + std::string(name) + "'");
    return static_cast<int>(it - names.begin());
  };
  std::vector<std::vector<int>> indices;
  for (const auto& row : table) {
    std::vector<int> out;
    for (const auto& cell : row) out.push_back(lookup(cell));
    indices.push_back(std::move(out));
  }
  const int unit_index = lookup(unit);
  return validate(std::move(names), unit_index, indices);
}

Monoid Monoid::trivial() { return validate({"e"}, 0, {{0}}); }

Monoid Monoid::z2() { return validate({"+", "-"}, 0, {{0, 1}, {1, 0}}); }

Monoid Monoid::z3() { return validate({"e", "g", "g2"}, 0, {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}); }

Monoid Monoid::sprime() { return validate({"+", "o"}, 0, {{0, 1}, {1, 1}}); }

Monoid Monoid::shat() { return validate({"+", "-", "o"}, 0, {{0, 1, 2}, {1, 0, 2}, {2, 2, 2}}); }

std::optional<Monoid> Monoid::builtin(std::string_view name) {
  if (name == "trivial") return trivial();
  if (name == "z2") return z2();
  if (name == "z3") return z3();
  if (name == "sprime") return sprime();
  if (name == "shat") return shat();
  return std::nullopt;
}

std::vector<std::string> Monoid::builtin_names() { return {"trivial", "z2", "z3", "sprime", "shat"}; }

std::optional<Elem> Monoid::index_of(std::string_view name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<Elem>(it - names_.begin());
}

std::vector<Elem> Monoid::parse_signum(std::string_view literal) const {
  std::vector<Elem> signum;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = literal.find(',', start);
    const std::string_view token = literal.substr(start, comma == std::string_view::npos ? comma : comma - start);
    const auto index = index_of(token);
    if (!index) throw Error(ErrorKind::BadSignum, "unknown signum entry '" + std::string(token) + "'");
    signum.push_back(*index);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return signum;
}

ElemSet Monoid::left_ideal(Elem t) const {
  ElemSet ideal = 0;
  for (std::size_t s = 0; s < size(); ++s) ideal |= singleton(mul(static_cast<Elem>(s), t));
  return ideal;
}

ElemSet Monoid::invertibles() const {
  ElemSet result = 0;
  for (std::size_t s = 0; s < size(); ++s)
    for (std::size_t t = 0; t < size(); ++t)
      if (mul(static_cast<Elem>(t), static_cast<Elem>(s)) == unit_) result |= singleton(static_cast<Elem>(s));
  return result;
}

std::optional<Elem> Monoid::inverse(Elem x) const {
  for (std::size_t t = 0; t < size(); ++t) {
    const auto y = static_cast<Elem>(t);
    if (mul(x, y) == unit_ && mul(y, x) == unit_) return y;
  }
  return std::nullopt;
}

MFamily Monoid::m_family(Elem v) const {
  MFamily family{std::vector<ElemSet>(size(), 0), true};
  for (std::size_t x = 0; x < size(); ++x) family.sets[mul(static_cast<Elem>(x), v)] |= singleton(static_cast<Elem>(x));
  return family;
}

MFamily Monoid::translation_family(Elem v) const {
  MFamily family{std::vector<ElemSet>(size(), 0), true};
  for (std::size_t s = 0; s < size(); ++s) family.sets[s] = singleton(mul(static_cast<Elem>(s), v));
  return family;
}

ElemSet Monoid::left_mul(Elem x, ElemSet set) const {
  ElemSet out = 0;
  for (std::size_t s = 0; s < size(); ++s)
    if (contains(set, static_cast<Elem>(s))) out |= singleton(mul(x, static_cast<Elem>(s)));
  return out;
}

bool Monoid::check_m_condition(const MFamily& family) const {
  if (family.sets.size() != size()) return false;
  for (std::size_t s = 0; s < size(); ++s)
    for (std::size_t sp = 0; sp < size(); ++sp) {
      const auto a = static_cast<Elem>(sp);
      const ElemSet image = left_mul(a, family.sets[s]);
      if ((image & ~family.sets[mul(a, static_cast<Elem>(s))]) != 0) return false;
    }
  return true;
}

std::vector<Permutation> Monoid::automorphisms() const {
  // Depth-first over partial bijections in lexicographic order, pruning as
  // soon as a product of two assigned elements is assigned inconsistently.
  std::vector<Permutation> result;
  const std::size_t n = size();
  Permutation h(n, 0);
  std::vector<bool> assigned(n, false), used(n, false);
  auto consistent = [&](std::size_t upto) {
    for (std::size_t a = 0; a <= upto; ++a)
      for (std::size_t b = 0; b <= upto; ++b) {
        const Elem ab = mul(static_cast<Elem>(a), static_cast<Elem>(b));
        if (assigned[ab] && h[ab] != mul(h[a], h[b])) return false;
      }
    return true;
  };
  auto extend = [&](auto&& self, std::size_t x) -> void {
    if (x == n) {
      result.push_back(h);
      return;
    }
    for (std::size_t y = 0; y < n; ++y) {
      if (used[y] || ((x == unit_) != (y == unit_))) continue;
      h[x] = static_cast<Elem>(y);
      assigned[x] = used[y] = true;
      if (consistent(x)) self(self, x + 1);
      assigned[x] = used[y] = false;
    }
  };
  extend(extend, 0);
  return result;
}

Permutation inverse_permutation(const Permutation& p) {
  Permutation inv(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) inv[p[i]] = static_cast<Elem>(i);
  return inv;
}

}  // namespace spreclone
