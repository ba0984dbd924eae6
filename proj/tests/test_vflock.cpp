#include <catch2/catch_amalgamated.hpp>

#include <herdkit/coalg.hpp>
#include <herdkit/setcore.hpp>
#include <herdkit/vflock.hpp>

using namespace herdkit;

namespace {

Herd group_herd(const GroupTable& g) { return heap_algebra(group_to_heap(g)); }

RatMat weight_indicator(std::size_t n, std::size_t g) {
  RatMat m(n, 1);
  m.at(g, 0) = 1;
  return m;
}

const Check& named(const CheckReport& rep, const std::string& name) {
  for (const auto& c : rep.checks)
    if (c.name == name) return c;
  FAIL("missing check " + name);
  throw std::logic_error("unreachable");
}

}  // namespace

TEST_CASE("duality data satisfies both snake identities") {
  for (std::size_t m = 1; m <= 4; ++m) {
    const DualData d = standard_dual(m);
    REQUIRE(d.ev.rows() == 1);
    REQUIRE(d.ev.cols() == m * m);
    REQUIRE(d.coev.rows() == m * m);
    REQUIRE(d.coev.cols() == 1);
    REQUIRE(check_dual(d).all_passed());
  }

  DualData broken = standard_dual(2);
  broken.coev.at(0, 0) = 0;
  broken.coev.at(1, 0) = 1;  // pairs e_0 with the wrong covector
  const CheckReport rep = check_dual(broken);
  REQUIRE_FALSE(rep.all_passed());
  REQUIRE_FALSE(named(rep, "snake_object_side").passed);
}

TEST_CASE("comodule axioms hold for regular and weight coactions") {
  const Herd a3 = group_herd(cyclic_group(3));

  REQUIRE(check_comodule(regular_comodule(a3)).all_passed());
  for (std::size_t g = 0; g < 3; ++g)
    REQUIRE(check_comodule(weight_comodule(a3, g)).all_passed());

  Comodule zero;
  zero.dim = 1;
  zero.over = a3;
  zero.rho = RatMat(3, 1);
  const CheckReport rep = check_comodule(zero);
  REQUIRE(named(rep, "coaction_coassociativity").passed);
  const Check& cu = named(rep, "coaction_counit");
  REQUIRE_FALSE(cu.passed);
  REQUIRE(cu.witness->input == std::vector<std::size_t>{0});
  REQUIRE(cu.witness->lhs == "0");
  REQUIRE(cu.witness->rhs == "1");
}

TEST_CASE("Q of weight comodules carries the heap-composite weight") {
  for (std::size_t order : {2, 3}) {
    const GroupTable g = cyclic_group(order);
    const HeapTable h = group_to_heap(g);
    const Herd a = heap_algebra(h);
    const std::size_t n = order;
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        for (std::size_t z = 0; z < n; ++z) {
          const Comodule q = q_comodule(a, weight_comodule(a, x),
                                        weight_comodule(a, y), weight_comodule(a, z));
          REQUIRE(q.dim == 1);
          REQUIRE(q.rho == weight_indicator(n, h.op(x, y, z)));
          REQUIRE(check_comodule(q).all_passed());
        }
  }
}

TEST_CASE("Q of the regular triple over the order-two group herd") {
  const Herd a = group_herd(cyclic_group(2));
  const Comodule r = regular_comodule(a);
  const Comodule q = q_comodule(a, r, r, r);
  REQUIRE(q.dim == 8);
  REQUIRE(q.rho.rows() == 16);
  REQUIRE(q.rho.cols() == 8);
  REQUIRE(check_comodule(q).all_passed());
}

TEST_CASE("Q over the one-dimensional herd is the plain tensor product") {
  const Herd triv = group_herd(cyclic_group(1));
  const Comodule l{2, triv, RatMat::identity(2)};
  const Comodule m{3, triv, RatMat::identity(3)};
  const Comodule n{2, triv, RatMat::identity(2)};
  const Comodule q = q_comodule(triv, l, m, n);
  REQUIRE(q.dim == 12);
  REQUIRE(q.rho == RatMat::identity(12));
  REQUIRE(check_comodule(q).all_passed());
}

TEST_CASE("invalid inputs to Q are rejected with the failing axiom named") {
  const Herd a2 = group_herd(cyclic_group(2));
  const Herd a3 = group_herd(cyclic_group(3));
  const Comodule w = weight_comodule(a2, 0);

  Comodule zero;
  zero.dim = 1;
  zero.over = a2;
  zero.rho = RatMat(2, 1);
  REQUIRE_THROWS_MATCHES(q_comodule(a2, w, zero, w), ComoduleAxiomError,
                         Catch::Matchers::Message(
                             "q_comodule: slot M fails coaction_counit"));
  REQUIRE_THROWS_AS(q_comodule(a3, w, w, w), ComoduleAxiomError);
}

TEST_CASE("flock maps pass every check over the one-dimensional herd") {
  const Herd triv = group_herd(cyclic_group(1));
  auto obj = [&](std::size_t d) { return Comodule{d, triv, RatMat::identity(d)}; };
  const FlockData f = flock_maps(triv, obj(2), obj(3), obj(2), obj(1), obj(2));
  for (const auto& c : f.report.checks) {
    INFO(c.name);
    REQUIRE(c.passed);
  }
  REQUIRE(f.phi == RatMat::identity(24));
  REQUIRE(f.q_left.dim == 24);
  REQUIRE(f.q_left.rho == f.q_right.rho);
  REQUIRE(f.alpha.rows() == 2);
  REQUIRE(f.alpha.cols() == 18);
  REQUIRE(f.beta.rows() == 12);
  REQUIRE(f.beta.cols() == 3);
}

TEST_CASE("flock maps pass for every weight tuple over the order-two group herd") {
  const GroupTable g = cyclic_group(2);
  const HeapTable h = group_to_heap(g);
  const Herd a = heap_algebra(h);
  for (std::size_t t = 0; t < 32; ++t) {
    const std::size_t wa = t & 1, wb = (t >> 1) & 1, wc = (t >> 2) & 1;
    const std::size_t wd = (t >> 3) & 1, we = (t >> 4) & 1;
    const FlockData f =
        flock_maps(a, weight_comodule(a, wa), weight_comodule(a, wb),
                   weight_comodule(a, wc), weight_comodule(a, wd),
                   weight_comodule(a, we));
    INFO("tuple " << wa << wb << wc << wd << we);
    REQUIRE(f.report.all_passed());
    // nested Q weight agrees with the iterated heap composite
    const std::size_t expect = h.op(h.op(wa, wb, wc), wd, we);
    REQUIRE(f.q_left.rho == weight_indicator(2, expect));
  }
}

TEST_CASE("flock maps pass for every weight tuple over the order-three group herd") {
  const GroupTable g = cyclic_group(3);
  const HeapTable h = group_to_heap(g);
  const Herd a = heap_algebra(h);
  for (std::size_t t = 0; t < 243; ++t) {
    std::size_t digits[5], rest = t;
    for (auto& d : digits) {
      d = rest % 3;
      rest /= 3;
    }
    const FlockData f =
        flock_maps(a, weight_comodule(a, digits[0]), weight_comodule(a, digits[1]),
                   weight_comodule(a, digits[2]), weight_comodule(a, digits[3]),
                   weight_comodule(a, digits[4]));
    REQUIRE(f.report.all_passed());
    const std::size_t expect =
        h.op(h.op(digits[0], digits[1], digits[2]), digits[3], digits[4]);
    REQUIRE(f.q_left.rho == weight_indicator(3, expect));
  }
}

TEST_CASE("flock maps pass for the regular triple slots over the order-two group herd") {
  const Herd a = group_herd(cyclic_group(2));
  const Comodule r = regular_comodule(a);
  const Comodule w = weight_comodule(a, 1);
  const FlockData f = flock_maps(a, r, r, r, w, w);
  for (const auto& c : f.report.checks) {
    INFO(c.name);
    REQUIRE(c.passed);
  }
}

TEST_CASE("unit object induces tensor and dual tables") {
  const GroupTable g = cyclic_group(2);
  const HeapTable h = group_to_heap(g);
  const Herd a = heap_algebra(h);
  const std::vector<Comodule> objs{weight_comodule(a, 0), weight_comodule(a, 1)};

  SECTION("weight zero unit recovers the group product and self-duals") {
    const MonoidalTables t = unit_object_check(a, weight_comodule(a, 0), objs);
    REQUIRE(t.report.all_passed());
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 2; ++j)
        REQUIRE(t.tensor[i][j].rho ==
                weight_indicator(2, g.times(i, j)));
      REQUIRE(t.dual[i].rho == weight_indicator(2, g.inv[i]));
    }
  }

  SECTION("weight one unit still passes and shifts the tables") {
    const MonoidalTables t = unit_object_check(a, weight_comodule(a, 1), objs);
    REQUIRE(t.report.all_passed());
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        REQUIRE(t.tensor[i][j].rho == weight_indicator(2, h.op(i, 1, j)));
    // duals Q(J,X,J) stay self-inverse for the two-element group
    REQUIRE(t.dual[0].rho == weight_indicator(2, h.op(1, 0, 1)));
    REQUIRE(t.dual[1].rho == weight_indicator(2, h.op(1, 1, 1)));
  }

  SECTION("a higher-dimensional unit candidate fails invertibility") {
    const MonoidalTables t = unit_object_check(a, regular_comodule(a), objs);
    REQUIRE_FALSE(t.report.all_passed());
    REQUIRE_FALSE(named(t.report, "alpha_invertible_1").passed);
    REQUIRE(t.tensor.empty());
    REQUIRE(t.dual.empty());
  }
}

TEST_CASE("unit object over the one-dimensional herd recovers plain tensor and dual") {
  const Herd triv = group_herd(cyclic_group(1));
  auto obj = [&](std::size_t d) { return Comodule{d, triv, RatMat::identity(d)}; };
  const std::vector<Comodule> objs{obj(2), obj(3)};
  const MonoidalTables t = unit_object_check(triv, obj(1), objs);
  REQUIRE(t.report.all_passed());
  REQUIRE(t.tensor[0][1].dim == 6);
  REQUIRE(t.tensor[1][1].dim == 9);
  REQUIRE(t.dual[1].dim == 3);
  REQUIRE(t.dual[1].rho == RatMat::identity(3));
}
