#include <doctest.h>

#include <numeric>
#include <random>

#include "helpers.hpp"
#include "spreclone/error.hpp"
#include "spreclone/signed_op.hpp"

using namespace spreclone;
using spreclone::testing::op;
using spreclone::testing::random_op;

namespace {

const Monoid kZ2 = Monoid::z2();

SignedOp nor(const Monoid& m) { return op(m, 2, "+,+", {1, 0, 0, 0}); }

}  // namespace

TEST_CASE("evaluation") {
  const auto f = nor(kZ2);
  CHECK(f.eval(std::vector<Value>{0, 0}) == 1);
  CHECK(f.eval(std::vector<Value>{1, 0}) == 0);
  CHECK(identity(2, 0).eval(std::vector<Value>{1}) == 1);
  CHECK_THROWS_AS(f.eval(std::vector<Value>{1}), Error);
  CHECK_THROWS_AS(op(kZ2, 2, "+,+", {1, 0, 0}), Error);
}

TEST_CASE("cyclic shift and transposition") {
  const auto u = op(kZ2, 2, "-", {1, 0});
  CHECK(zeta(u) == u);
  CHECK(tau(u) == u);

  const auto z3 = Monoid::z3();
  std::mt19937_64 rng(7);
  auto f = random_op(rng, z3, 2, 3);
  f = SignedOp(f.table(), z3.parse_signum("e,g,g2"));
  CHECK(zeta(f).signum() == z3.parse_signum("g2,e,g"));
  for (Value a = 0; a < 2; ++a)
    for (Value b = 0; b < 2; ++b)
      for (Value c = 0; c < 2; ++c)
        CHECK(zeta(f).eval(std::vector<Value>{a, b, c}) == f.eval(std::vector<Value>{b, c, a}));

  const auto first = SignedOp(Operation::projection(2, 2, 0), z3.parse_signum("e,g"));
  const auto swapped = tau(first);
  CHECK(swapped.table() == Operation::projection(2, 2, 1));
  CHECK(swapped.signum() == z3.parse_signum("g,e"));
}

TEST_CASE("fictitious arguments") {
  const auto g = nabla(1, identity(2, 0));
  CHECK(g.table() == Operation::projection(2, 2, 1));
  CHECK(g.signum() == Signum{1, 0});
  const auto h = nabla(0, nor(kZ2));
  CHECK(h.arity() == 3);
  CHECK(h.signum() == Signum{0, 0, 0});
  CHECK_FALSE(h.table().is_essential(0));
}

TEST_CASE("identification of the first two arguments") {
  const auto n = delta(nor(kZ2));
  CHECK(n == op(kZ2, 2, "+", {1, 0}));
  const auto mixed = op(kZ2, 2, "+,-", {1, 0, 0, 0});
  CHECK(delta(mixed) == mixed);
  const auto u = op(kZ2, 2, "-", {1, 0});
  CHECK(delta(u) == u);
}

TEST_CASE("composition") {
  std::mt19937_64 rng(3);
  auto f = random_op(rng, kZ2, 2, 2);
  auto g = random_op(rng, kZ2, 2, 2);
  f = SignedOp(f.table(), kZ2.parse_signum("-,+"));
  g = SignedOp(g.table(), kZ2.parse_signum("+,-"));
  CHECK(compose(kZ2, f, g).signum() == kZ2.parse_signum("-,+,+"));

  const auto id = identity(2, kZ2.unit());
  CHECK(compose(kZ2, f, id) == f);

  const auto neg = op(kZ2, 2, "-", {1, 0});
  CHECK(compose(kZ2, neg, neg) == op(kZ2, 2, "+", {0, 1}));
}

TEST_CASE("projections") {
  const auto p = projection(kZ2, 2, 2, 0, kZ2.parse_signum("+,-"));
  CHECK(p.table() == Operation::projection(2, 2, 0));
  CHECK(is_trivial_projection(kZ2, p));
  CHECK_FALSE(is_trivial_projection(kZ2, op(kZ2, 2, "-", {0, 1})));
  CHECK(is_trivial_projection(kZ2, op(kZ2, 2, "+", {0, 1})));
  CHECK_THROWS_AS(projection(kZ2, 2, 2, 1, kZ2.parse_signum("+,-")), Error);
}

TEST_CASE("minors") {
  const auto n = nor(kZ2).table();
  CHECK(is_minor(n, n));
  CHECK(is_minor(Operation(2, 1, {1, 0}), n));
  CHECK_FALSE(is_minor(Operation::constant(2, 1, 0), Operation::projection(2, 1, 0)));
}

TEST_CASE("duals") {
  const auto f = nor(kZ2);
  const ValuePermutation id{0, 1}, swap{1, 0};
  CHECK(pi_dual(f, id) == f);
  CHECK(pi_dual(f, swap) == op(kZ2, 2, "+,+", {1, 1, 1, 0}));
  std::mt19937_64 rng(11);
  for (int i = 0; i < 20; ++i) {
    const auto g = random_op(rng, kZ2, 3, 2);
    const ValuePermutation pi{2, 0, 1}, inv{1, 2, 0};
    CHECK(pi_dual(pi_dual(g, pi), inv) == g);
  }

  const auto z3 = Monoid::z3();
  const auto h = z3.automorphisms()[1];
  auto g = SignedOp(f.table(), z3.parse_signum("g,g2"));
  CHECK(h_map(g, h).signum() == z3.parse_signum("g2,g"));
  CHECK(h_map(g, z3.automorphisms()[0]) == g);
  for (int i = 0; i < 20; ++i) {
    const auto a = random_op(rng, z3, 2, 2);
    const auto b = random_op(rng, z3, 2, 2);
    CHECK(h_map(compose(z3, a, b), h) == compose(z3, h_map(a, h), h_map(b, h)));
  }
}

TEST_CASE("canonical keys") {
  const auto f = nor(kZ2);
  const auto g = op(kZ2, 2, "+,-", {1, 0, 0, 0});
  CHECK(canonical_key(f) == canonical_key(nor(kZ2)));
  CHECK(canonical_key(f) != canonical_key(g));
  CHECK(from_canonical_key(canonical_key(g)) == g);
  CHECK(SignedOpHash{}(f) == SignedOpHash{}(nor(kZ2)));
}

TEST_CASE("enumeration counts and order") {
  CHECK(count_signed_ops(2, 2, 1) == 8);
  CHECK(count_signed_ops(2, 2, 2) == 64);
  CHECK(count_signed_ops(2, 2, 3) == 8 * 256);
  std::vector<SignedOp> seen;
  for_each_signed_op(2, 2, 2, [&](const SignedOp& f) {
    seen.push_back(f);
    return true;
  });
  CHECK(seen.size() == 64);
  CHECK(std::is_sorted(seen.begin(), seen.end()));
  CHECK(all_signa(3, 2).size() == 9);
  CHECK(all_operations(3, 1).size() == 27);
}

TEST_CASE("shift and transposition laws") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 30; ++i) {
    const int n = 1 + static_cast<int>(rng() % 4);
    const auto f = random_op(rng, Monoid::shat(), 2, n);
    SignedOp g = f;
    for (int j = 0; j < n; ++j) g = zeta(g);
    CHECK(g == f);
    CHECK(tau(tau(f)) == f);
  }
}

TEST_CASE("derived constructions agree with direct evaluation") {
  std::mt19937_64 rng(17);
  const auto m = Monoid::shat();
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 3);
    const auto f = random_op(rng, m, 2, n);
    std::vector<SignedOp> gs;
    int total = 0;
    for (int i = 0; i < n; ++i) {
      gs.push_back(random_op(rng, m, 2, 1 + static_cast<int>(rng() % 2)));
      total += gs.back().arity();
    }
    if (total > 6) continue;
    CHECK(general_compose(m, f, gs) == general_compose_direct(m, f, gs));
  }
}

TEST_CASE("argument permutation, identification and padding") {
  std::mt19937_64 rng(23);
  const auto m = Monoid::z3();
  for (int trial = 0; trial < 30; ++trial) {
    const auto f = random_op(rng, m, 2, 3);
    std::vector<int> perm{0, 1, 2};
    std::shuffle(perm.begin(), perm.end(), rng);
    const auto g = permute_arguments(f, perm);
    for (TupleIndex x = 0; x < 8; ++x) {
      const auto a = decode(x, 2, 3);
      std::vector<Value> b(3);
      for (int i = 0; i < 3; ++i) b[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = a[static_cast<std::size_t>(i)];
      CHECK(g.eval(b) == f.eval(a));
    }
    for (int i = 0; i < 3; ++i) CHECK(g.signum()[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] == f.signum()[static_cast<std::size_t>(i)]);

    const auto same = SignedOp(f.table(), Signum{1, 2, 1});
    const auto ident = identify_arguments(same, 0, 2);
    CHECK(ident.arity() == 2);
    for (TupleIndex x = 0; x < 4; ++x) {
      const auto a = decode(x, 2, 2);
      CHECK(ident.eval(a) == same.eval(std::vector<Value>{a[0], a[1], a[0]}));
    }
    CHECK(identify_arguments(same, 0, 1) == same);

    const auto padded = add_fictitious(f, 1, 2);
    CHECK(padded.arity() == 4);
    CHECK(padded.signum()[1] == 2);
    CHECK_FALSE(padded.table().is_essential(1));
  }
}

TEST_CASE("superposition checks signum consistency") {
  const auto f = op(kZ2, 2, "+,-", {0, 1, 1, 0});
  const auto x = op(kZ2, 2, "+", {0, 1});
  const auto xm = op(kZ2, 2, "-", {0, 1});
  const std::vector<SignedOp> ok{x, xm};
  const auto h = superpose(kZ2, f, ok);
  CHECK(h.arity() == 1);
  CHECK(h.table() == Operation::constant(2, 1, 0));
  const std::vector<SignedOp> bad{x, x};
  CHECK_THROWS_AS(superpose(kZ2, f, bad), Error);
}
