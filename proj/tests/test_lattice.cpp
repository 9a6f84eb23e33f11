#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"
#include "spreclone/closures.hpp"
#include "spreclone/error.hpp"
#include "spreclone/galois.hpp"
#include "spreclone/lattice_tools.hpp"

using namespace spreclone;
using spreclone::testing::leq_geq;
using spreclone::testing::op;

namespace {

const Monoid kZ2 = Monoid::z2();

bool subset(const std::vector<SignedOp>& a, const std::vector<SignedOp>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

TEST_CASE("handles") {
  const auto h = PrecloneHandle::generated(kZ2, 2, {op(kZ2, 2, "-", {1, 0})}, 2);
  CHECK(h.has_generators());
  CHECK(h.contains(op(kZ2, 2, "+", {0, 1})));
  CHECK_FALSE(h.contains(op(kZ2, 2, "+", {1, 0})));
  const auto f = PrecloneHandle::from_fragment(kZ2, 2, h.fragment(), 2);
  CHECK(f.same_fragment(h));
  CHECK_FALSE(f.has_generators());
  CHECK(f.contains(op(kZ2, 2, "-", {1, 0})));
  const auto trivial = PrecloneHandle::from_fragment(kZ2, 2, trivial_projections(kZ2, 2, 2), 2);
  CHECK(trivial.fragment_subset_of(h));
  CHECK_FALSE(h.fragment_subset_of(trivial));
}

TEST_CASE("Sheffer generation") {
  CHECK(webb_operation(kZ2, 2).table() == Operation(2, 2, {1, 0, 0, 0}));
  const auto report = sheffer_generation_check(kZ2, 2, 2, 5, 0);
  CHECK(report.ok());
  CHECK(report.checked == 72);
  CHECK(report.random_checked == 5);

  const auto trivial = Monoid::trivial();
  const auto k3 = sheffer_generation_check(trivial, 3, 1);
  CHECK(k3.ok());
  CHECK(k3.checked == 27);
}

TEST_CASE("relational generators") {
  CHECK_THROWS_AS(relational_generation_check(kZ2, 2, 2), Error);
  const auto r = relational_generation_check(kZ2, 3, 1);
  CHECK(r.ok());
  CHECK(r.spol == trivial_projections(kZ2, 3, 1));
  CHECK(relational_generators(kZ2, 3).size() == 3);
}

TEST_CASE("minimal candidates") {
  const auto report = minimal_search(kZ2, 2, 1);
  CHECK(report.search_arity == 1);
  REQUIRE_FALSE(report.minimal.empty());
  const auto id_minus = op(kZ2, 2, "-", {0, 1});
  bool found = false;
  for (const auto& c : report.minimal) {
    for (const auto& g : c.members) {
      const auto h = PrecloneHandle::generated(kZ2, 2, {g}, 1);
      CHECK(h.same_fragment(c.handle));
      if (g == id_minus) found = true;
    }
  }
  CHECK(found);
  for (std::size_t i = 0; i < report.minimal.size(); ++i)
    for (std::size_t j = 0; j < report.minimal.size(); ++j)
      if (i != j) CHECK_FALSE(report.minimal[i].handle.fragment_subset_of(report.minimal[j].handle));
}

TEST_CASE("maximal candidates") {
  CHECK_THROWS_AS(maximal_candidates(kZ2, 3, 1), Error);
  const auto report = maximal_candidates(kZ2, 2, 2);
  CHECK(report.raw_candidates == 72);
  CHECK(report.expected_count == 9);
  CHECK(report.inclusion.size() == report.candidates.size());
  bool poset = false;
  for (const auto& c : report.candidates)
    if (c.relation == leq_geq()) poset = true;
  CHECK(poset);
  for (const auto& c : report.candidates) {
    bool all_diag = true;
    for (const auto& label : c.part_labels) all_diag = all_diag && (label == "diag" || label == "empty");
    CHECK_FALSE(all_diag);
  }
  for (std::size_t i : report.maximal) CHECK_FALSE(report.candidates[i].full);
}

TEST_CASE("embeddings") {
  const std::vector<Operation> none;
  const auto psi = psi_embed(kZ2, 2, none, 2);
  CHECK(psi.fragment() == trivial_projections(kZ2, 2, 2));
  const auto phi = phi_embed(kZ2, 2, none, 2);
  std::vector<SignedOp> ids{identity(2, 0), identity(2, 1)};
  CHECK(phi.same_fragment(PrecloneHandle::generated(kZ2, 2, ids, 2)));

  const std::vector<Operation> meet{Operation(2, 2, {0, 0, 0, 1})};
  const std::vector<Operation> lattice{Operation(2, 2, {0, 0, 0, 1}), Operation(2, 2, {0, 1, 1, 1})};
  CHECK(subset(psi_embed(kZ2, 2, meet, 2).fragment(), psi_embed(kZ2, 2, lattice, 2).fragment()));

  const auto back = phi_inverse(phi_embed(kZ2, 2, meet, 2));
  CHECK(std::find(back.begin(), back.end(), meet[0]) != back.end());
}

TEST_CASE("redecoration closure for groups") {
  const std::vector<Operation> meet{Operation(2, 2, {0, 0, 0, 1})};
  const auto phi = phi_embed(kZ2, 2, meet, 2);
  for (const auto& f : phi.fragment())
    for (const auto& signum : all_signa(2, f.arity())) CHECK(phi.contains(SignedOp(f.table(), signum)));
}

TEST_CASE("symmetry orbits") {
  const auto wedge = PrecloneHandle::generated(kZ2, 2, {op(kZ2, 2, "+,+", {0, 0, 0, 1})}, 2);
  const std::vector<ValuePermutation> id{{0, 1}};
  const std::vector<Permutation> hid{{0, 1}};
  const auto same = symmetry_orbit(wedge, id, hid);
  REQUIRE(same.size() == 1);
  CHECK(same[0].same_fragment(wedge));

  const std::vector<ValuePermutation> both{{0, 1}, {1, 0}};
  const auto orbit = symmetry_orbit(wedge, both, hid);
  REQUIRE(orbit.size() == 2);
  const auto vee = PrecloneHandle::generated(kZ2, 2, {op(kZ2, 2, "+,+", {0, 1, 1, 1})}, 2);
  CHECK(orbit[1].same_fragment(vee));
  CHECK(orbit[1].fragment().size() == wedge.fragment().size());

  const auto z3 = Monoid::z3();
  const auto h = PrecloneHandle::generated(z3, 2, {op(z3, 2, "g", {1, 0})}, 1);
  const auto autos = z3.automorphisms();
  const auto z3_orbit = symmetry_orbit(h, id, autos);
  CHECK(2 % z3_orbit.size() == 0);
  for (const auto& o : z3_orbit) CHECK(o.fragment().size() == h.fragment().size());
}
