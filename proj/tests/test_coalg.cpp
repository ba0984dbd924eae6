#include <catch2/catch_amalgamated.hpp>

#include <cstddef>
#include <functional>
#include <vector>

#include "herdkit/coalg.hpp"
#include "herdkit/setcore.hpp"

using namespace herdkit;

namespace {

Herd herd_from_table(std::size_t n, const std::function<std::size_t(std::size_t, std::size_t, std::size_t)>& t) {
  Herd h;
  h.carrier.dim = n;
  h.carrier.delta = RatMat(n * n, n);
  h.carrier.eps = RatMat(1, n);
  for (std::size_t i = 0; i < n; ++i) {
    h.carrier.delta.at(i * n + i, i) = 1;
    h.carrier.eps.at(0, i) = 1;
  }
  h.q = RatMat(n, n * n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) h.q.at(t(a, b, c), (a * n + b) * n + c) = 1;
  return h;
}

// Coalgebra of 2x2 matrix units: delta(e_ij) = sum_k e_ik (x) e_kj. Not
// cocommutative, which makes it a useful probe for the opposite construction.
Comonoid matrix_coalgebra2() {
  Comonoid c;
  c.dim = 4;
  c.delta = RatMat(16, 4);
  c.eps = RatMat(1, 4);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      for (std::size_t k = 0; k < 2; ++k)
        c.delta.at((i * 2 + k) * 4 + (k * 2 + j), i * 2 + j) = 1;
      if (i == j) c.eps.at(0, i * 2 + j) = 1;
    }
  return c;
}

const Check& named(const CheckReport& rep, const std::string& name) {
  for (const auto& c : rep.checks)
    if (c.name == name) return c;
  FAIL("no check named " + name);
  return rep.checks.front();
}

}  // namespace

TEST_CASE("group-like comonoids and the matrix coalgebra pass the axioms") {
  const Herd xh = heap_algebra(group_to_heap(cyclic_group(2)));
  REQUIRE(check_comonoid(xh.carrier).all_passed());

  const Comonoid m2 = matrix_coalgebra2();
  REQUIRE(check_comonoid(m2).all_passed());

  Comonoid broken = m2;
  broken.eps.at(0, 1) = 1;
  const CheckReport rep = check_comonoid(broken);
  REQUIRE_FALSE(rep.all_passed());
  REQUIRE(named(rep, "coassociativity").passed);
  REQUIRE_FALSE(named(rep, "counit_left").passed);
}

TEST_CASE("opposite comonoid flips the legs and is involutive") {
  const Comonoid m2 = matrix_coalgebra2();
  const Comonoid op = opposite_comonoid(m2);
  REQUIRE(check_comonoid(op).all_passed());
  REQUIRE_FALSE(op.delta == m2.delta);
  REQUIRE(opposite_comonoid(op).delta == m2.delta);

  // Group-like comonoids are cocommutative, so opposing them is a no-op.
  const Herd xh = heap_algebra(group_to_heap(cyclic_group(3)));
  REQUIRE(opposite_comonoid(xh.carrier).delta == xh.carrier.delta);
}

TEST_CASE("tensor comonoid is a comonoid and its projections are morphisms") {
  const Comonoid m2 = matrix_coalgebra2();
  const Comonoid gl = heap_algebra(group_to_heap(cyclic_group(3))).carrier;
  const Comonoid t = tensor_comonoid(m2, gl);
  REQUIRE(t.dim == 12);
  REQUIRE(check_comonoid(t).all_passed());

  // eps (x) 1 : M2 (x) C -> C is a comonoid morphism.
  const RatMat proj = kron(m2.eps, RatMat::identity(3));
  REQUIRE(check_comonoid_morphism(proj, t, gl).all_passed());

  // The identity is one as well; a scaled identity breaks on comultiplication.
  REQUIRE(check_comonoid_morphism(RatMat::identity(12), t, t).all_passed());
  RatMat twice = RatMat::identity(4);
  for (std::size_t i = 0; i < 4; ++i) twice.at(i, i) = 2;
  const CheckReport rep = check_comonoid_morphism(twice, m2, m2);
  REQUIRE_FALSE(named(rep, "respects_comultiplication").passed);
  REQUIRE_FALSE(named(rep, "respects_counit").passed);
}

TEST_CASE("group algebras are Hopf monoids with the inverse-permutation antipode") {
  const HopfMonoid h3 = group_algebra(cyclic_group(3));
  REQUIRE(check_hopf(h3).all_passed());
  REQUIRE(h3.nu == RatMat::from_int_rows({{1, 0, 0}, {0, 0, 1}, {0, 1, 0}}));

  const HopfMonoid hs3 = group_algebra(symmetric3());
  REQUIRE(check_hopf(hs3).all_passed());
  REQUIRE(mul(hs3.nu, hs3.nu) == RatMat::identity(6));

  GroupTable bad = cyclic_group(3);
  bad.mul[1 * 3 + 2] = 1;
  REQUIRE_THROWS_AS(group_algebra(bad), GroupAxiomError);
}

TEST_CASE("fusion operator of the order-2 group algebra is a frozen involution") {
  const HopfMonoid h = group_algebra(cyclic_group(2));
  const RatMat v = fusion_operator(h);
  const RatMat expected = RatMat::from_int_rows(
      {{1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}, {0, 1, 0, 0}});
  REQUIRE(v == expected);
  REQUIRE(mul(v, v) == RatMat::identity(4));

  const HopfMonoid rec = antipode_from_fusion(h);
  REQUIRE(rec.nu == h.nu);
  REQUIRE(check_fusion_identities(rec).all_passed());
}

TEST_CASE("antipode recovery and fusion identities on an odd-order group") {
  const HopfMonoid direct = group_algebra(cyclic_group(3));
  const HopfMonoid rec = antipode_from_fusion(direct);
  REQUIRE(rec.nu == direct.nu);
  REQUIRE(check_hopf(rec).all_passed());
  REQUIRE(check_fusion_identities(rec).all_passed());
  REQUIRE(check_fusion_identities(group_algebra(dihedral4())).all_passed());
}

TEST_CASE("absorbing monoid bialgebra has a singular fusion operator") {
  const Bimonoid b = monoid_algebra(2, {0, 1, 1, 1}, 0);
  REQUIRE(check_bimonoid(b).all_passed());
  bool threw = false;
  try {
    antipode_from_fusion(b);
  } catch (const NoAntipodeError& e) {
    threw = true;
    const RatMat expected = RatMat::from_int_rows(
        {{1, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 1}});
    REQUIRE(e.fusion == expected);
    REQUIRE_FALSE(try_inverse(e.fusion).has_value());
  }
  REQUIRE(threw);
}

TEST_CASE("bimonoid compatibility checks isolate the broken law") {
  Bimonoid b = group_algebra(cyclic_group(2));
  b.eta.at(0, 0) = 0;
  b.eta.at(1, 0) = 1;
  const CheckReport rep = check_bimonoid(b);
  REQUIRE_FALSE(named(rep, "unit_left").passed);
  REQUIRE(named(rep, "associativity").passed);
  REQUIRE(named(rep, "delta_of_product").passed);
  // eps is all ones on a group-like carrier, so any basis unit still counits.
  REQUIRE(named(rep, "eps_of_unit").passed);

  Bimonoid z = group_algebra(cyclic_group(2));
  z.eta.at(0, 0) = 0;
  const CheckReport zrep = check_bimonoid(z);
  REQUIRE_FALSE(named(zrep, "eps_of_unit").passed);
  REQUIRE(named(zrep, "delta_of_unit").passed);
}

TEST_CASE("heap linearizations satisfy the full herd axiom battery") {
  REQUIRE(check_herd(heap_algebra(group_to_heap(cyclic_group(2)))).all_passed());
  REQUIRE(check_herd(heap_algebra(group_to_heap(cyclic_group(4)))).all_passed());
  REQUIRE(check_herd(heap_algebra(group_to_heap(symmetric3()))).all_passed());

  HeapTable bad{2, {0, 1, 1, 0, 1, 0, 0, 0}};
  REQUIRE_THROWS_AS(heap_algebra(bad), HeapAxiomError);
}

TEST_CASE("herd failures come with the first offending basis tuple") {
  // Ternary sum mod 3: para-associative but cancellation fails at (0,1).
  const Herd mod3 = herd_from_table(3, [](std::size_t a, std::size_t b, std::size_t c) {
    return (a + b + c) % 3;
  });
  const CheckReport rep = check_herd(mod3);
  REQUIRE(named(rep, "para_associativity").passed);
  const Check& cr = named(rep, "cancel_right");
  REQUIRE_FALSE(cr.passed);
  REQUIRE(cr.witness->input == std::vector<std::size_t>{0, 1});
  REQUIRE(cr.witness->component == 0);
  REQUIRE(cr.witness->lhs == "0");
  REQUIRE(cr.witness->rhs == "1");

  // a + b*c mod 2 breaks para-associativity, first at (0,0,0,1,1).
  const Herd skew = herd_from_table(2, [](std::size_t a, std::size_t b, std::size_t c) {
    return (a + b * c) % 2;
  });
  const Check& pa = named(check_herd(skew), "para_associativity");
  REQUIRE_FALSE(pa.passed);
  REQUIRE(pa.witness->input == std::vector<std::size_t>{0, 0, 0, 1, 1});
  REQUIRE(pa.witness->component == 0);

  // A non-group-like q column breaks the comonoid-morphism side.
  Herd smeared = heap_algebra(group_to_heap(cyclic_group(2)));
  smeared.q.at(1, 0) = 1;
  const CheckReport srep = check_herd(smeared);
  const Check& cm = named(srep, "q_respects_comultiplication");
  REQUIRE_FALSE(cm.passed);
  REQUIRE(cm.witness->input == std::vector<std::size_t>{0, 0, 0});
  REQUIRE(cm.witness->component == 1);
  REQUIRE(cm.witness->lhs == "0");
  REQUIRE(cm.witness->rhs == "1");
  REQUIRE_FALSE(named(srep, "q_respects_counit").passed);
}
