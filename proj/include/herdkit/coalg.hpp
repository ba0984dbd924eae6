#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"
#include "parallel.hpp"
#include "report.hpp"
#include "setcore.hpp"

namespace herdkit {

struct Comonoid {
  std::size_t dim = 0;
  RatMat delta;  // dim^2 x dim
  RatMat eps;    // 1 x dim
};

struct Monoid {
  std::size_t dim = 0;
  RatMat mu;   // dim x dim^2
  RatMat eta;  // dim x 1
};

struct Bimonoid {
  std::size_t dim = 0;
  RatMat delta, eps, mu, eta;

  Comonoid comonoid() const { return {dim, delta, eps}; }
  Monoid monoid() const { return {dim, mu, eta}; }
};

struct HopfMonoid : Bimonoid {
  RatMat nu;  // dim x dim
};

// Comonoid carrier with a ternary operation q : A (x) A (x) A -> A.
struct Herd {
  Comonoid carrier;
  RatMat q;  // dim x dim^3
};

// Raised when the fusion operator of a bimonoid has no inverse; carries the
// singular operator for reporting.
struct NoAntipodeError : std::runtime_error {
  RatMat fusion;
  explicit NoAntipodeError(RatMat f)
      : std::runtime_error("fusion operator is singular"), fusion(std::move(f)) {}
};

// Raised when a table handed to a linearization fails its axioms.
struct GroupAxiomError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline FactorPerm braid_swap(std::size_t a, std::size_t b) {
  return FactorPerm({a, b}, {2, 1});
}

// The middle swap 1 (x) c (x) 1 on X1 (x) X1 (x) X2 (x) X2.
inline FactorPerm middle_swap(std::size_t x1, std::size_t x2) {
  return FactorPerm({x1, x1, x2, x2}, {1, 3, 2, 4});
}

inline CheckReport check_comonoid(const Comonoid& c) {
  const std::size_t n = c.dim;
  const RatMat id = RatMat::identity(n);
  CheckReport rep;
  rep.add("coassociativity", diff_witness(mul(kron(c.delta, id), c.delta),
                                          mul(kron(id, c.delta), c.delta), {n}));
  rep.add("counit_left", diff_witness(mul(kron(c.eps, id), c.delta), id, {n}));
  rep.add("counit_right", diff_witness(mul(kron(id, c.eps), c.delta), id, {n}));
  return rep;
}

inline CheckReport check_monoid(const Monoid& m) {
  const std::size_t n = m.dim;
  const RatMat id = RatMat::identity(n);
  CheckReport rep;
  rep.add("associativity",
          diff_witness(mul(m.mu, kron(m.mu, id)), mul(m.mu, kron(id, m.mu)), {n, n, n}));
  rep.add("unit_left", diff_witness(mul(m.mu, kron(m.eta, id)), id, {n}));
  rep.add("unit_right", diff_witness(mul(m.mu, kron(id, m.eta)), id, {n}));
  return rep;
}

inline Comonoid opposite_comonoid(const Comonoid& c) {
  return {c.dim, permute_rows(braid_swap(c.dim, c.dim), c.delta), c.eps};
}

inline Comonoid tensor_comonoid(const Comonoid& a, const Comonoid& b) {
  return {a.dim * b.dim,
          permute_rows(middle_swap(a.dim, b.dim), kron(a.delta, b.delta)),
          kron(a.eps, b.eps)};
}

// f : src -> dst as a dst.dim x src.dim matrix.
inline CheckReport check_comonoid_morphism(const RatMat& f, const Comonoid& src,
                                           const Comonoid& dst) {
  CheckReport rep;
  rep.add("respects_comultiplication",
          diff_witness(mul(dst.delta, f), mul(kron(f, f), src.delta), {src.dim}));
  rep.add("respects_counit", diff_witness(mul(dst.eps, f), src.eps, {src.dim}));
  return rep;
}

inline CheckReport check_bimonoid(const Bimonoid& b) {
  const std::size_t n = b.dim;
  CheckReport rep = check_comonoid(b.comonoid());
  rep.merge(check_monoid(b.monoid()));
  const RatMat twisted = permute_rows(middle_swap(n, n), kron(b.delta, b.delta));
  rep.add("delta_of_product",
          diff_witness(mul(b.delta, b.mu), mul(kron(b.mu, b.mu), twisted), {n, n}));
  rep.add("eps_of_product", diff_witness(mul(b.eps, b.mu), kron(b.eps, b.eps), {n, n}));
  rep.add("delta_of_unit", diff_witness(mul(b.delta, b.eta), kron(b.eta, b.eta), {1}));
  rep.add("eps_of_unit", diff_witness(mul(b.eps, b.eta), RatMat::identity(1), {1}));
  return rep;
}

inline CheckReport check_hopf(const HopfMonoid& h) {
  const std::size_t n = h.dim;
  const RatMat id = RatMat::identity(n);
  CheckReport rep = check_bimonoid(h);
  const RatMat eta_eps = mul(h.eta, h.eps);
  rep.add("antipode_left",
          diff_witness(mul(h.mu, mul(kron(h.nu, id), h.delta)), eta_eps, {n}));
  rep.add("antipode_right",
          diff_witness(mul(h.mu, mul(kron(id, h.nu), h.delta)), eta_eps, {n}));
  return rep;
}

// Exhaustive herd axioms. The two comonoid-morphism sides and the
// para-associativity law live on high tensor powers, so they are evaluated
// one basis column at a time instead of materializing the composites.
inline CheckReport check_herd(const Herd& h) {
  const std::size_t n = h.carrier.dim;
  const RatMat& q = h.q;
  const RatMat& delta = h.carrier.delta;
  const RatMat& eps = h.carrier.eps;
  CheckReport rep = check_comonoid(h.carrier);

  const std::vector<std::size_t> triple{n, n, n};
  const FactorPerm shuffle =
      n ? FactorPerm({n, n, n, n, n, n}, {1, 4, 5, 2, 3, 6}) : FactorPerm({}, {});
  rep.add("q_respects_comultiplication",
          scan_first_failure(n * n * n, [&](std::size_t col) -> std::optional<Witness> {
            const TermVec qc = apply_matrix(q, basis_term(col));
            const TermVec lhs = apply_matrix(delta, qc);
            TermVec t = apply_block(delta, 1, n * n, basis_term(col));
            t = apply_block(delta, n * n, n, t);
            t = apply_block(delta, n * n * n * n, 1, t);
            t = apply_factor_perm(shuffle, t);
            t = apply_block(q, 1, n * n * n, t);
            t = apply_block(q, n, 1, t);
            auto w = term_diff(lhs, t);
            if (!w) return std::nullopt;
            w->input = tuple_of(triple, col);
            return w;
          }));
  rep.add("q_respects_counit",
          scan_first_failure(n * n * n, [&](std::size_t col) -> std::optional<Witness> {
            const TermVec lhs = apply_matrix(eps, apply_matrix(q, basis_term(col)));
            TermVec t = apply_block(eps, 1, n * n, basis_term(col));
            t = apply_block(eps, 1, n, t);
            t = apply_matrix(eps, t);
            auto w = term_diff(lhs, t);
            if (!w) return std::nullopt;
            w->input = tuple_of(triple, col);
            return w;
          }));
  rep.add("para_associativity",
          scan_first_failure(n * n * n * n * n, [&](std::size_t col) -> std::optional<Witness> {
            const TermVec lhs =
                apply_matrix(q, apply_block(q, 1, n * n, basis_term(col)));
            const TermVec rhs =
                apply_matrix(q, apply_block(q, n * n, 1, basis_term(col)));
            auto w = term_diff(lhs, rhs);
            if (!w) return std::nullopt;
            w->input = tuple_of({n, n, n, n, n}, col);
            return w;
          }));
  const RatMat id = RatMat::identity(n);
  rep.add("cancel_right",
          diff_witness(mul(q, kron(id, delta)), kron(id, eps), {n, n}));
  rep.add("cancel_left", diff_witness(mul(q, kron(delta, id)), kron(eps, id), {n, n}));
  return rep;
}

// Group-like linearization of a finite monoid table.
inline Bimonoid monoid_algebra(std::size_t n, const std::vector<std::size_t>& mul_table,
                               std::size_t unit) {
  Bimonoid b;
  b.dim = n;
  b.delta = RatMat(n * n, n);
  b.eps = RatMat(1, n);
  b.mu = RatMat(n, n * n);
  b.eta = RatMat(n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    b.delta.at(i * n + i, i) = 1;
    b.eps.at(0, i) = 1;
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t c = 0; c < n; ++c) b.mu.at(mul_table[a * n + c], a * n + c) = 1;
  if (n) b.eta.at(unit, 0) = 1;
  return b;
}

inline HopfMonoid group_algebra(const GroupTable& g) {
  if (!check_group(g).all_passed()) throw GroupAxiomError("table fails the group axioms");
  HopfMonoid h;
  static_cast<Bimonoid&>(h) = monoid_algebra(g.size, g.mul, g.unit);
  h.nu = RatMat(g.size, g.size);
  for (std::size_t a = 0; a < g.size; ++a) h.nu.at(g.inv[a], a) = 1;
  return h;
}

inline Herd heap_algebra(const HeapTable& t) {
  {
    const CheckReport rep = check_heap(t);
    if (!rep.all_passed()) {
      for (const auto& c : rep.checks)
        if (!c.passed)
          throw HeapAxiomError("table fails " + c.name + " (got " + c.witness->lhs +
                               ", expected " + c.witness->rhs + ")");
    }
  }
  const std::size_t n = t.size;
  Herd h;
  h.carrier.dim = n;
  h.carrier.delta = RatMat(n * n, n);
  h.carrier.eps = RatMat(1, n);
  for (std::size_t i = 0; i < n; ++i) {
    h.carrier.delta.at(i * n + i, i) = 1;
    h.carrier.eps.at(0, i) = 1;
  }
  h.q = RatMat(n, n * n * n);
  for (std::size_t f = 0; f < n * n * n; ++f) {
    const std::size_t c = f % n, b = (f / n) % n, a = f / (n * n);
    h.q.at(t.op(a, b, c), f) = 1;
  }
  return h;
}

// v = (mu (x) 1)(1 (x) delta) on A (x) A.
inline RatMat fusion_operator(const Bimonoid& b) {
  const RatMat id = RatMat::identity(b.dim);
  return mul(kron(b.mu, id), kron(id, b.delta));
}

// Antipode recovered from the inverse of the fusion operator:
// nu = (1 (x) eps) vbar (eta (x) 1). Structural validation is post hoc via
// check_hopf and check_fusion_identities.
inline HopfMonoid antipode_from_fusion(const Bimonoid& b) {
  RatMat v = fusion_operator(b);
  auto vbar = try_inverse(v);
  if (!vbar) throw NoAntipodeError(std::move(v));
  const RatMat id = RatMat::identity(b.dim);
  HopfMonoid h;
  static_cast<Bimonoid&>(h) = b;
  h.nu = mul(kron(id, b.eps), mul(*vbar, kron(b.eta, id)));
  return h;
}

// The fusion operator of a Hopf monoid is invertible with closed-form
// inverse vbar = (mu (x) 1)(1 (x) nu (x) 1)(1 (x) delta), and both operators
// interact with mu, delta, eta, eps by exchange laws. All verified exactly.
inline CheckReport check_fusion_identities(const HopfMonoid& h) {
  const std::size_t n = h.dim;
  const RatMat id = RatMat::identity(n);
  const RatMat v = fusion_operator(h);
  const RatMat vbar =
      mul(kron(h.mu, id), mul(kron(id, kron(h.nu, id)), kron(id, h.delta)));
  CheckReport rep;
  rep.add("inverse_closed_form_right", diff_witness(mul(v, vbar), RatMat::identity(n * n), {n, n}));
  rep.add("inverse_closed_form_left", diff_witness(mul(vbar, v), RatMat::identity(n * n), {n, n}));
  rep.add("fusion_commutes_with_multiplication",
          diff_witness(mul(kron(h.mu, id), kron(id, v)), mul(v, kron(h.mu, id)), {n, n, n}));
  rep.add("fusion_recovers_comultiplication",
          diff_witness(mul(v, kron(h.eta, id)), h.delta, {n}));
  rep.add("fusion_commutes_with_comultiplication",
          diff_witness(mul(kron(id, h.delta), v), mul(kron(v, id), kron(id, h.delta)), {n, n}));
  rep.add("fusion_recovers_multiplication", diff_witness(mul(kron(id, h.eps), v), h.mu, {n, n}));
  rep.add("inverse_commutes_with_multiplication",
          diff_witness(mul(kron(h.mu, id), kron(id, vbar)), mul(vbar, kron(h.mu, id)), {n, n, n}));
  rep.add("inverse_splits_comultiplication",
          diff_witness(mul(vbar, h.delta), kron(h.eta, id), {n}));
  rep.add("inverse_commutes_with_comultiplication",
          diff_witness(mul(kron(id, h.delta), vbar), mul(kron(vbar, id), kron(id, h.delta)),
                       {n, n}));
  rep.add("inverse_collapses_multiplication",
          diff_witness(mul(h.mu, vbar), kron(id, h.eps), {n, n}));
  return rep;
}

}  // namespace herdkit
