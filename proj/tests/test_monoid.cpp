#include <doctest.h>

#include <algorithm>

#include "spreclone/error.hpp"
#include "spreclone/monoid.hpp"
#include "spreclone/tuple_codec.hpp"

using namespace spreclone;

namespace {

ElemSet set_of(const Monoid& m, std::initializer_list<const char*> names) {
  ElemSet out = 0;
  for (const char* n : names) out |= singleton(*m.index_of(n));
  return out;
}

}  // namespace

TEST_CASE("tuple codec is lexicographic with the first coordinate most significant") {
  const std::vector<Value> t{1, 0, 2};
  CHECK(encode(t, 3) == 1 * 9 + 0 * 3 + 2);
  CHECK(decode(11, 3, 3) == t);
  for (TupleIndex i = 0; i < 81; ++i) {
    const auto d = decode(i, 3, 4);
    CHECK(encode(d, 3) == i);
    for (int row = 0; row < 4; ++row) CHECK(digit(i, 3, 4, row) == d[static_cast<std::size_t>(row)]);
  }
  CHECK(checked_power(2, 20) == (1U << 20));
  CHECK(checked_power(2, 21) == 0);
}

TEST_CASE("named tables validate") {
  const auto z2 = Monoid::validate({"+", "-"}, "+", {{"+", "-"}, {"-", "+"}});
  CHECK(z2 == Monoid::z2());
  CHECK(z2.is_group());
  const auto sp = Monoid::validate({"+", "o"}, "+", {{"+", "o"}, {"o", "o"}});
  CHECK(sp == Monoid::sprime());
  CHECK_FALSE(sp.is_group());
}

TEST_CASE("axiom violations are reported by kind") {
  try {
    Monoid::validate({"a", "b"}, "a", {{"a", "a"}, {"b", "b"}});
    FAIL("expected BadUnit");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BadUnit);
  }
  const auto bad = Monoid::violations(3, 0, {{0, 1, 2}, {1, 2, 1}, {2, 1, 0}});
  CHECK(std::any_of(bad.begin(), bad.end(),
                    [](const MonoidViolation& v) { return v.kind == MonoidViolation::Kind::NonAssociative; }));
  CHECK_THROWS_AS(Monoid::validate({"a"}, "a", {{"a", "a"}}), Error);
  CHECK_THROWS_AS(Monoid::validate({"a", "b"}, "a", {{"a", "c"}, {"b", "a"}}), Error);
}

TEST_CASE("left ideals") {
  const auto z2 = Monoid::z2();
  CHECK(z2.left_ideal(*z2.index_of("-")) == z2.all());
  const auto sp = Monoid::sprime();
  CHECK(sp.left_ideal(*sp.index_of("o")) == set_of(sp, {"o"}));
  const auto sh = Monoid::shat();
  CHECK(sh.left_ideal(*sh.index_of("-")) == sh.all());
  CHECK(sh.left_ideal(*sh.index_of("o")) == set_of(sh, {"o"}));
}

TEST_CASE("invertibles") {
  CHECK(Monoid::z2().invertibles() == Monoid::z2().all());
  const auto sp = Monoid::sprime();
  CHECK(sp.invertibles() == set_of(sp, {"+"}));
  const auto sh = Monoid::shat();
  CHECK(sh.invertibles() == set_of(sh, {"+", "-"}));
}

TEST_CASE("m families") {
  const auto z2 = Monoid::z2();
  const auto f = z2.m_family(*z2.index_of("-"));
  CHECK(f.valid);
  CHECK(f.sets[0] == set_of(z2, {"-"}));
  CHECK(f.sets[1] == set_of(z2, {"+"}));

  const auto sp = Monoid::sprime();
  const auto g = sp.m_family(*sp.index_of("o"));
  CHECK(g.sets[0] == 0);
  CHECK(g.sets[1] == sp.all());

  const auto sh = Monoid::shat();
  const auto h = sh.m_family(sh.unit());
  for (Elem s = 0; s < sh.size(); ++s) CHECK(h.sets[s] == singleton(s));
}

TEST_CASE("m condition") {
  const auto z2 = Monoid::z2();
  CHECK_FALSE(z2.check_m_condition(MFamily{{z2.all(), 0}, false}));
  CHECK(Monoid::trivial().check_m_condition(MFamily{{0}, false}));
  for (const auto& name : Monoid::builtin_names()) {
    const auto m = *Monoid::builtin(name);
    for (Elem v = 0; v < m.size(); ++v) {
      CHECK(m.check_m_condition(m.m_family(v)));
      CHECK(m.check_m_condition(m.translation_family(v)));
    }
  }
}

TEST_CASE("automorphisms") {
  CHECK(Monoid::z2().automorphisms().size() == 1);
  const auto z3 = Monoid::z3().automorphisms();
  REQUIRE(z3.size() == 2);
  CHECK(z3[1] == Permutation{0, 2, 1});
  CHECK(Monoid::shat().automorphisms().size() == 1);
  CHECK(Monoid::sprime().automorphisms().size() == 1);
}

TEST_CASE("every element lies in exactly one class of each m family") {
  for (const auto& name : Monoid::builtin_names()) {
    const auto m = *Monoid::builtin(name);
    for (Elem v = 0; v < m.size(); ++v) {
      const auto family = m.m_family(v);
      for (Elem x = 0; x < m.size(); ++x) {
        int hits = 0;
        for (Elem s = 0; s < m.size(); ++s) hits += contains(family.sets[s], x) ? 1 : 0;
        CHECK(hits == 1);
        CHECK(contains(family.sets[m.mul(x, v)], x));
      }
    }
  }
}

TEST_CASE("signum literals") {
  const auto z3 = Monoid::z3();
  CHECK(z3.parse_signum("e,g2,g") == std::vector<Elem>{0, 2, 1});
  CHECK_THROWS_AS(z3.parse_signum("e,h"), Error);
}
