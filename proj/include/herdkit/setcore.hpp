#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "parallel.hpp"
#include "report.hpp"

namespace herdkit {

// Ternary operation table on {0..n-1}; q(a,b,c) sits at ((a*n)+b)*n+c.
struct HeapTable {
  std::size_t size = 0;
  std::vector<std::size_t> q;

  std::size_t op(std::size_t a, std::size_t b, std::size_t c) const {
    return q[(a * size + b) * size + c];
  }
};

struct GroupTable {
  std::size_t size = 0;
  std::vector<std::size_t> mul;  // n^2 entries, a*n+b
  std::size_t unit = 0;
  std::vector<std::size_t> inv;  // n entries

  std::size_t times(std::size_t a, std::size_t b) const { return mul[a * size + b]; }
};

struct ActionTable {
  GroupTable group;
  std::size_t carrier = 0;
  std::vector<std::size_t> act;  // |G| * carrier entries, g*carrier + a

  std::size_t apply(std::size_t g, std::size_t a) const { return act[g * carrier + a]; }
};

// The three heap axioms, each scanned exhaustively in lexicographic order.
inline CheckReport check_heap(const HeapTable& h) {
  CheckReport rep;
  const std::size_t n = h.size;
  rep.add("para_associativity", scan_first_failure(n * n * n * n * n, [&](std::size_t f) -> std::optional<Witness> {
            const std::size_t e = f % n, d = (f / n) % n, c = (f / (n * n)) % n;
            const std::size_t b = (f / (n * n * n)) % n, a = f / (n * n * n * n);
            const std::size_t lhs = h.op(h.op(a, b, c), d, e);
            const std::size_t rhs = h.op(a, b, h.op(c, d, e));
            if (lhs == rhs) return std::nullopt;
            return Witness{{a, b, c, d, e}, 0, std::to_string(lhs), std::to_string(rhs)};
          }));
  rep.add("cancel_right", scan_first_failure(n * n, [&](std::size_t f) -> std::optional<Witness> {
            const std::size_t a = f / n, b = f % n;
            const std::size_t lhs = h.op(a, b, b);
            if (lhs == a) return std::nullopt;
            return Witness{{a, b}, 0, std::to_string(lhs), std::to_string(a)};
          }));
  rep.add("cancel_left", scan_first_failure(n * n, [&](std::size_t f) -> std::optional<Witness> {
            const std::size_t a = f / n, b = f % n;
            const std::size_t lhs = h.op(a, a, b);
            if (lhs == b) return std::nullopt;
            return Witness{{a, b}, 0, std::to_string(lhs), std::to_string(b)};
          }));
  return rep;
}

inline CheckReport check_group(const GroupTable& g) {
  CheckReport rep;
  const std::size_t n = g.size;
  rep.add("associativity", scan_first_failure(n * n * n, [&](std::size_t f) -> std::optional<Witness> {
            const std::size_t c = f % n, b = (f / n) % n, a = f / (n * n);
            const std::size_t lhs = g.times(g.times(a, b), c), rhs = g.times(a, g.times(b, c));
            if (lhs == rhs) return std::nullopt;
            return Witness{{a, b, c}, 0, std::to_string(lhs), std::to_string(rhs)};
          }));
  rep.add("unit_left", scan_first_failure(n, [&](std::size_t a) -> std::optional<Witness> {
            const std::size_t lhs = g.times(g.unit, a);
            if (lhs == a) return std::nullopt;
            return Witness{{a}, 0, std::to_string(lhs), std::to_string(a)};
          }));
  rep.add("unit_right", scan_first_failure(n, [&](std::size_t a) -> std::optional<Witness> {
            const std::size_t lhs = g.times(a, g.unit);
            if (lhs == a) return std::nullopt;
            return Witness{{a}, 0, std::to_string(lhs), std::to_string(a)};
          }));
  rep.add("inverse_left", scan_first_failure(n, [&](std::size_t a) -> std::optional<Witness> {
            const std::size_t lhs = g.times(g.inv[a], a);
            if (lhs == g.unit) return std::nullopt;
            return Witness{{a}, 0, std::to_string(lhs), std::to_string(g.unit)};
          }));
  rep.add("inverse_right", scan_first_failure(n, [&](std::size_t a) -> std::optional<Witness> {
            const std::size_t lhs = g.times(a, g.inv[a]);
            if (lhs == g.unit) return std::nullopt;
            return Witness{{a}, 0, std::to_string(lhs), std::to_string(g.unit)};
          }));
  return rep;
}

// q(a,b,c) = a * b^{-1} * c.
inline HeapTable group_to_heap(const GroupTable& g) {
  const std::size_t n = g.size;
  HeapTable h{n, std::vector<std::size_t>(n * n * n)};
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        h.q[(a * n + b) * n + c] = g.times(g.times(a, g.inv[b]), c);
  return h;
}

struct HeapToGroup {
  GroupTable group;
  std::vector<std::size_t> varpi;  // class of pair (a,b) at a*size+b
  bool empty_carrier = false;      // size-0 heap collapses to the trivial group
};

namespace detail {
struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) {
    for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};
}  // namespace detail

// Quotient of A x A by the relation (q(a,b,c), c) ~ (a,b), with
// [a,b]*[c,d] = [q(a,b,c), d], unit [a,a], inverse [b,a]. Classes are
// labeled in order of their smallest flat pair index. Compatibility of the
// product with the relation is verified, not assumed.
inline HeapToGroup heap_to_group(const HeapTable& h) {
  const std::size_t n = h.size;
  if (n == 0) return {GroupTable{1, {0}, 0, {0}}, {}, true};

  detail::UnionFind uf(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) uf.unite(h.op(a, b, c) * n + c, a * n + b);

  std::vector<std::size_t> cls(n * n, SIZE_MAX), rep;
  for (std::size_t p = 0; p < n * n; ++p) {
    const std::size_t r = uf.find(p);
    if (cls[r] == SIZE_MAX) {
      cls[r] = rep.size();
      rep.push_back(p);
    }
    cls[p] = cls[r];
  }
  const std::size_t m = rep.size();
  auto cls_of = [&](std::size_t a, std::size_t b) { return cls[a * n + b]; };
  auto prod_cls = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
    return cls_of(h.op(a, b, c), d);
  };

  // The product must not depend on representatives: check both sides of
  // every generating relation against every pair.
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        const std::size_t x = h.op(a, b, c);  // (x, c) ~ (a, b)
        for (std::size_t d = 0; d < n; ++d)
          for (std::size_t e = 0; e < n; ++e) {
            if (prod_cls(x, c, d, e) != prod_cls(a, b, d, e))
              throw WellDefinednessError("product differs across representatives [" +
                                         std::to_string(x) + "," + std::to_string(c) + "] ~ [" +
                                         std::to_string(a) + "," + std::to_string(b) + "]");
            if (prod_cls(d, e, x, c) != prod_cls(d, e, a, b))
              throw WellDefinednessError("product differs across representatives [" +
                                         std::to_string(x) + "," + std::to_string(c) + "] ~ [" +
                                         std::to_string(a) + "," + std::to_string(b) + "]");
          }
      }

  GroupTable g{m, std::vector<std::size_t>(m * m), cls_of(0, 0), std::vector<std::size_t>(m)};
  for (std::size_t a = 0; a < n; ++a)
    if (cls_of(a, a) != g.unit)
      throw WellDefinednessError("diagonal pairs land in distinct classes");
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t a = rep[i] / n, b = rep[i] % n;
    for (std::size_t j = 0; j < m; ++j) {
      const std::size_t c = rep[j] / n, d = rep[j] % n;
      g.mul[i * m + j] = prod_cls(a, b, c, d);
    }
    g.inv[i] = cls_of(b, a);
  }
  return {std::move(g), std::move(cls), false};
}

// act([a,b], c) = q(a,b,c), checked to agree across class representatives.
inline ActionTable action_from_heap(const HeapTable& h) {
  const std::size_t n = h.size;
  HeapToGroup q = heap_to_group(h);
  const std::size_t m = q.group.size;
  ActionTable t{std::move(q.group), n, std::vector<std::size_t>(m * n, 0)};
  if (n == 0) return t;
  std::vector<bool> defined(m * n, false);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t g = q.varpi[a * n + b];
      for (std::size_t c = 0; c < n; ++c) {
        const std::size_t v = h.op(a, b, c);
        if (!defined[g * n + c]) {
          t.act[g * n + c] = v;
          defined[g * n + c] = true;
        } else if (t.act[g * n + c] != v) {
          throw WellDefinednessError("action of class " + std::to_string(g) + " on " +
                                     std::to_string(c) + " differs across representatives");
        }
      }
    }
  return t;
}

struct TorsorCheck {
  CheckReport report;
  // Division table: varpi[a*carrier+b] = the unique g with g*b = a.
  std::optional<std::vector<std::size_t>> varpi;
};

// Simply transitive action: (g,a) -> (g*a, a) bijective, plus the two
// projection identities tying the division table back to the action.
inline TorsorCheck check_torsor(const ActionTable& t) {
  TorsorCheck out;
  const std::size_t m = t.group.size, n = t.carrier;
  if (n == 0) {
    out.report.fail("carrier_nonempty", Witness{{}, 0, "0", ">=1"});
    return out;
  }
  out.report.pass("carrier_nonempty");

  std::vector<std::size_t> varpi(n * n, SIZE_MAX);
  std::optional<Witness> bad;
  if (m != n) bad = Witness{{}, 0, std::to_string(m), std::to_string(n)};
  for (std::size_t g = 0; !bad && g < m; ++g)
    for (std::size_t a = 0; a < n; ++a) {
      const std::size_t c = t.apply(g, a);
      if (varpi[c * n + a] != SIZE_MAX) {
        bad = Witness{{g, a}, c, std::to_string(g), std::to_string(varpi[c * n + a])};
        break;
      }
      varpi[c * n + a] = g;
    }
  out.report.add("simply_transitive", bad);
  if (bad) return out;

  out.report.add("division_recovers_group",
                 scan_first_failure(m * n, [&](std::size_t f) -> std::optional<Witness> {
                   const std::size_t g = f / n, a = f % n;
                   const std::size_t got = varpi[t.apply(g, a) * n + a];
                   if (got == g) return std::nullopt;
                   return Witness{{g, a}, 0, std::to_string(got), std::to_string(g)};
                 }));
  out.report.add("division_acts_back",
                 scan_first_failure(n * n, [&](std::size_t f) -> std::optional<Witness> {
                   const std::size_t a = f / n, b = f % n;
                   const std::size_t got = t.apply(varpi[a * n + b], b);
                   if (got == a) return std::nullopt;
                   return Witness{{a, b}, 0, std::to_string(got), std::to_string(a)};
                 }));
  out.varpi = std::move(varpi);
  return out;
}

// ---------------------------------------------------------------------------
// Small-group constructors and brute-force isomorphism search.

inline GroupTable cyclic_group(std::size_t n) {
  GroupTable g{n, std::vector<std::size_t>(n * n), 0, std::vector<std::size_t>(n)};
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) g.mul[a * n + b] = (a + b) % n;
    g.inv[a] = (n - a) % n;
  }
  return g;
}

inline GroupTable direct_product(const GroupTable& a, const GroupTable& b) {
  const std::size_t n = a.size * b.size;
  auto enc = [&](std::size_t x, std::size_t y) { return x * b.size + y; };
  GroupTable g{n, std::vector<std::size_t>(n * n), enc(a.unit, b.unit),
               std::vector<std::size_t>(n)};
  for (std::size_t x1 = 0; x1 < a.size; ++x1)
    for (std::size_t y1 = 0; y1 < b.size; ++y1) {
      const std::size_t e1 = enc(x1, y1);
      g.inv[e1] = enc(a.inv[x1], b.inv[y1]);
      for (std::size_t x2 = 0; x2 < a.size; ++x2)
        for (std::size_t y2 = 0; y2 < b.size; ++y2)
          g.mul[e1 * n + enc(x2, y2)] = enc(a.times(x1, x2), b.times(y1, y2));
    }
  return g;
}

// Permutations of {0,1,2} in lexicographic one-line order.
inline GroupTable symmetric3() {
  const std::size_t perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                   {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  auto index_of = [&](const std::size_t* p) -> std::size_t {
    for (std::size_t i = 0; i < 6; ++i)
      if (perms[i][0] == p[0] && perms[i][1] == p[1] && perms[i][2] == p[2]) return i;
    return SIZE_MAX;
  };
  GroupTable g{6, std::vector<std::size_t>(36), 0, std::vector<std::size_t>(6)};
  for (std::size_t i = 0; i < 6; ++i) {
    std::size_t inv[3];
    for (std::size_t k = 0; k < 3; ++k) inv[perms[i][k]] = k;
    g.inv[i] = index_of(inv);
    for (std::size_t j = 0; j < 6; ++j) {
      std::size_t comp[3];  // (i after j): comp(k) = perms[i][perms[j][k]]
      for (std::size_t k = 0; k < 3; ++k) comp[k] = perms[i][perms[j][k]];
      g.mul[i * 6 + j] = index_of(comp);
    }
  }
  return g;
}

// r^4 = s^2 = 1, s r s = r^{-1}; element r^i s^j at index i + 4*j.
inline GroupTable dihedral4() {
  GroupTable g{8, std::vector<std::size_t>(64), 0, std::vector<std::size_t>(8)};
  auto enc = [](std::size_t i, std::size_t j) { return i + 4 * j; };
  for (std::size_t i1 = 0; i1 < 4; ++i1)
    for (std::size_t j1 = 0; j1 < 2; ++j1) {
      const std::size_t e1 = enc(i1, j1);
      g.inv[e1] = j1 ? e1 : enc((4 - i1) % 4, 0);
      for (std::size_t i2 = 0; i2 < 4; ++i2)
        for (std::size_t j2 = 0; j2 < 2; ++j2) {
          // (r^i1 s^j1)(r^i2 s^j2) = r^(i1 + (-1)^j1 i2) s^(j1+j2)
          const std::size_t i = j1 ? (i1 + 4 - i2) % 4 : (i1 + i2) % 4;
          g.mul[e1 * 8 + enc(i2, j2)] = enc(i, (j1 + j2) % 2);
        }
    }
  return g;
}

// Unit quaternions: index s*4 + u with sign s (0 -> +, 1 -> -) and unit
// u in (1, i, j, k).
inline GroupTable quaternion8() {
  // unit_mul[u][v] = (sign, unit) of u*v among 1,i,j,k
  const std::pair<std::size_t, std::size_t> unit_mul[4][4] = {
      {{0, 0}, {0, 1}, {0, 2}, {0, 3}},
      {{0, 1}, {1, 0}, {0, 3}, {1, 2}},
      {{0, 2}, {1, 3}, {1, 0}, {0, 1}},
      {{0, 3}, {0, 2}, {1, 1}, {1, 0}}};
  GroupTable g{8, std::vector<std::size_t>(64), 0, std::vector<std::size_t>(8)};
  for (std::size_t s1 = 0; s1 < 2; ++s1)
    for (std::size_t u1 = 0; u1 < 4; ++u1) {
      const std::size_t e1 = s1 * 4 + u1;
      g.inv[e1] = u1 == 0 ? e1 : (1 - s1) * 4 + u1;  // i^{-1} = -i, (±1)^{-1} = ±1
      for (std::size_t s2 = 0; s2 < 2; ++s2)
        for (std::size_t u2 = 0; u2 < 4; ++u2) {
          const auto [s, u] = unit_mul[u1][u2];
          g.mul[e1 * 8 + (s2 * 4 + u2)] = ((s1 + s2 + s) % 2) * 4 + u;
        }
    }
  return g;
}

namespace detail {
inline std::size_t element_order(const GroupTable& g, std::size_t a) {
  std::size_t x = a, ord = 1;
  while (x != g.unit) {
    x = g.times(x, a);
    ++ord;
  }
  return ord;
}

inline bool extend_isomorphism(const GroupTable& g1, const GroupTable& g2,
                               std::vector<std::size_t>& map, std::vector<bool>& used,
                               std::size_t k) {
  const std::size_t n = g1.size;
  if (k == n) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (map[g1.times(i, j)] != g2.times(map[i], map[j])) return false;
    return true;
  }
  if (map[k] != SIZE_MAX) return extend_isomorphism(g1, g2, map, used, k + 1);
  for (std::size_t v = 0; v < n; ++v) {
    if (used[v] || element_order(g1, k) != element_order(g2, v)) continue;
    bool ok = true;
    for (std::size_t i = 0; i <= k && ok; ++i) {
      if (map[i] == SIZE_MAX) continue;
      const std::size_t ik = g1.times(i, k), ki = g1.times(k, i);
      if (ik <= k && map[ik] != SIZE_MAX && map[ik] != g2.times(map[i], v)) ok = false;
      if (ki <= k && map[ki] != SIZE_MAX && map[ki] != g2.times(v, map[i])) ok = false;
    }
    if (!ok) continue;
    map[k] = v;
    used[v] = true;
    if (extend_isomorphism(g1, g2, map, used, k + 1)) return true;
    map[k] = SIZE_MAX;
    used[v] = false;
  }
  return false;
}
}  // namespace detail

// Brute-force search, feasible for the desk-scale orders handled here.
inline std::optional<std::vector<std::size_t>> find_isomorphism(const GroupTable& g1,
                                                                const GroupTable& g2) {
  if (g1.size != g2.size) return std::nullopt;
  std::vector<std::size_t> map(g1.size, SIZE_MAX);
  if (g1.size == 0) return map;
  std::vector<bool> used(g1.size, false);
  map[g1.unit] = g2.unit;
  used[g2.unit] = true;
  if (detail::extend_isomorphism(g1, g2, map, used, 0)) return map;
  return std::nullopt;
}

}  // namespace herdkit
