#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>

#include "herdkit/setcore.hpp"

using namespace herdkit;

namespace {

HeapTable table_from(std::size_t n, std::size_t (*f)(std::size_t, std::size_t, std::size_t)) {
  HeapTable h{n, std::vector<std::size_t>(n * n * n)};
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) h.q[(a * n + b) * n + c] = f(a, b, c);
  return h;
}

// Oracle: equivalence classes of pairs by min-label propagation to a fixed
// point, labels canonicalized by first occurrence. Independent of the
// union-find in heap_to_group.
std::vector<std::size_t> closure_classes(const HeapTable& h) {
  const std::size_t n = h.size;
  std::vector<std::size_t> lab(n * n);
  for (std::size_t i = 0; i < lab.size(); ++i) lab[i] = i;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c) {
          const std::size_t i = h.op(a, b, c) * n + c, j = a * n + b;
          const std::size_t m = std::min(lab[i], lab[j]);
          if (lab[i] != m || lab[j] != m) {
            lab[i] = lab[j] = m;
            changed = true;
          }
        }
  }
  std::vector<std::size_t> canon(n * n, SIZE_MAX), out(n * n);
  std::size_t next = 0;
  for (std::size_t i = 0; i < lab.size(); ++i) {
    if (canon[lab[i]] == SIZE_MAX) canon[lab[i]] = next++;
    out[i] = canon[lab[i]];
  }
  return out;
}

}  // namespace

TEST_CASE("xor is a heap") {
  const HeapTable h = table_from(2, [](std::size_t a, std::size_t b, std::size_t c) {
    return a ^ b ^ c;
  });
  CHECK(check_heap(h).all_passed());
}

TEST_CASE("mod-3 sum is not a heap, witnessed at (0,1)") {
  const HeapTable h = table_from(3, [](std::size_t a, std::size_t b, std::size_t c) {
    return (a + b + c) % 3;
  });
  const CheckReport rep = check_heap(h);
  REQUIRE(rep.checks.size() == 3);
  CHECK(rep.checks[0].name == "para_associativity");
  CHECK(rep.checks[0].passed);
  CHECK(rep.checks[1].name == "cancel_right");
  REQUIRE(!rep.checks[1].passed);
  CHECK(rep.checks[1].witness->input == std::vector<std::size_t>{0, 1});  // frozen
  CHECK(rep.checks[1].witness->lhs == "2");
  CHECK(rep.checks[1].witness->rhs == "0");
  CHECK(!rep.checks[2].passed);
}

TEST_CASE("witness is schedule independent") {
  const HeapTable h = table_from(3, [](std::size_t a, std::size_t b, std::size_t c) {
    return (a + b + c) % 3;
  });
  setenv("HERDKIT_THREADS", "1", 1);
  const CheckReport one = check_heap(h);
  setenv("HERDKIT_THREADS", "3", 1);
  const CheckReport three = check_heap(h);
  unsetenv("HERDKIT_THREADS");
  REQUIRE(one.checks.size() == three.checks.size());
  for (std::size_t i = 0; i < one.checks.size(); ++i) {
    CHECK(one.checks[i].passed == three.checks[i].passed);
    if (one.checks[i].witness) {
      CHECK(one.checks[i].witness->input == three.checks[i].witness->input);
      CHECK(one.checks[i].witness->lhs == three.checks[i].witness->lhs);
    }
  }
}

TEST_CASE("group tables satisfy the group axioms") {
  for (std::size_t n = 1; n <= 8; ++n) CHECK(check_group(cyclic_group(n)).all_passed());
  CHECK(check_group(direct_product(cyclic_group(2), cyclic_group(2))).all_passed());
  CHECK(check_group(symmetric3()).all_passed());
  CHECK(check_group(dihedral4()).all_passed());
  CHECK(check_group(quaternion8()).all_passed());
  CHECK(check_group(direct_product(cyclic_group(2), cyclic_group(4))).all_passed());
  GroupTable broken = cyclic_group(3);
  broken.mul[4] = 0;  // 1*1 = 0
  const CheckReport rep = check_group(broken);
  CHECK(!rep.all_passed());
}

TEST_CASE("groups give heaps") {
  const HeapTable h2 = group_to_heap(cyclic_group(2));
  CHECK(h2.q == std::vector<std::size_t>{0, 1, 1, 0, 1, 0, 0, 1});  // frozen: xor
  CHECK(check_heap(h2).all_passed());
  CHECK(check_heap(group_to_heap(symmetric3())).all_passed());
  CHECK(check_heap(group_to_heap(quaternion8())).all_passed());
}

TEST_CASE("heap quotient recovers the group") {
  SECTION("xor heap") {
    const HeapTable h = group_to_heap(cyclic_group(2));
    const HeapToGroup g = heap_to_group(h);
    CHECK(!g.empty_carrier);
    CHECK(g.group.size == 2);
    CHECK(check_group(g.group).all_passed());
    CHECK(g.varpi == std::vector<std::size_t>{0, 1, 1, 0});  // frozen: class(a,b) = a xor b
    CHECK(g.varpi == closure_classes(h));
  }
  SECTION("mod-3 difference heap") {
    const HeapTable h = table_from(3, [](std::size_t a, std::size_t b, std::size_t c) {
      return (a + 3 - b + c) % 3;
    });
    REQUIRE(check_heap(h).all_passed());
    const HeapToGroup g = heap_to_group(h);
    CHECK(g.group.size == 3);
    CHECK(check_group(g.group).all_passed());
    CHECK(g.varpi == closure_classes(h));
    // frozen: classes are labeled by lex-first representative (0, b-a)
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = 0; b < 3; ++b) CHECK(g.varpi[a * 3 + b] == (b + 3 - a) % 3);
    CHECK(find_isomorphism(g.group, cyclic_group(3)).has_value());
  }
  SECTION("one-element heap gives the trivial group") {
    const HeapTable h{1, {0}};
    const HeapToGroup g = heap_to_group(h);
    CHECK(g.group.size == 1);
    CHECK(!g.empty_carrier);
  }
  SECTION("empty heap gives the trivial group and a warning") {
    const HeapTable h{0, {}};
    CHECK(check_heap(h).all_passed());  // vacuous
    const HeapToGroup g = heap_to_group(h);
    CHECK(g.group.size == 1);
    CHECK(g.varpi.empty());
    CHECK(g.empty_carrier);
  }
  SECTION("projection table is rejected") {
    const HeapTable h = table_from(2, [](std::size_t a, std::size_t, std::size_t) { return a; });
    CHECK_THROWS_AS(heap_to_group(h), WellDefinednessError);
  }
}

TEST_CASE("quotient group is isomorphic to the original") {
  const GroupTable gs[] = {cyclic_group(4), symmetric3(), dihedral4(), quaternion8()};
  for (const GroupTable& g : gs) {
    const HeapToGroup back = heap_to_group(group_to_heap(g));
    REQUIRE(back.group.size == g.size);
    const auto iso = find_isomorphism(back.group, g);
    REQUIRE(iso.has_value());
    for (std::size_t i = 0; i < g.size; ++i)
      for (std::size_t j = 0; j < g.size; ++j)
        CHECK((*iso)[back.group.times(i, j)] == g.times((*iso)[i], (*iso)[j]));
  }
}

TEST_CASE("isomorphism search distinguishes non-isomorphic groups") {
  CHECK(!find_isomorphism(cyclic_group(4), direct_product(cyclic_group(2), cyclic_group(2)))
             .has_value());
  CHECK(!find_isomorphism(dihedral4(), quaternion8()).has_value());
  CHECK(!find_isomorphism(cyclic_group(8), dihedral4()).has_value());
  CHECK(find_isomorphism(direct_product(cyclic_group(2), cyclic_group(4)),
                         direct_product(cyclic_group(4), cyclic_group(2)))
            .has_value());
  CHECK(!find_isomorphism(cyclic_group(3), cyclic_group(4)).has_value());
}

TEST_CASE("heap actions are torsors") {
  const HeapTable heaps[] = {group_to_heap(cyclic_group(2)), group_to_heap(symmetric3()),
                             group_to_heap(dihedral4())};
  for (const HeapTable& h : heaps) {
    const ActionTable t = action_from_heap(h);
    CHECK(check_group(t.group).all_passed());
    const TorsorCheck tc = check_torsor(t);
    CHECK(tc.report.all_passed());
    REQUIRE(tc.varpi.has_value());
    CHECK(*tc.varpi == heap_to_group(h).varpi);  // division = quotient classes
  }
}

TEST_CASE("degenerate actions fail the torsor checks") {
  SECTION("trivial action is not simply transitive") {
    ActionTable t{cyclic_group(2), 2, {0, 1, 0, 1}};
    const TorsorCheck tc = check_torsor(t);
    REQUIRE(tc.report.checks.size() >= 2);
    CHECK(tc.report.checks[0].passed);
    CHECK(!tc.report.checks[1].passed);
    CHECK(tc.report.checks[1].witness->input == std::vector<std::size_t>{1, 0});
    CHECK(!tc.varpi.has_value());
  }
  SECTION("empty carrier") {
    ActionTable t{cyclic_group(1), 0, {}};
    const TorsorCheck tc = check_torsor(t);
    CHECK(!tc.report.all_passed());
    CHECK(tc.report.checks[0].name == "carrier_nonempty");
  }
}
