#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "coalg.hpp"
#include "errors.hpp"
#include "linalg.hpp"
#include "report.hpp"
#include "vflock.hpp"

namespace herdkit {

// Finite diagram of comodules over one herd. Morphism matrices are
// dst.dim x src.dim and must intertwine the coactions.
struct Diagram {
  struct Morphism {
    std::size_t src = 0, dst = 0;
    RatMat mat;
  };
  std::vector<Comodule> objects;
  std::vector<Morphism> morphisms;
};

inline CheckReport check_diagram(const Diagram& d) {
  CheckReport rep;
  for (std::size_t i = 0; i < d.objects.size(); ++i)
    rep.merge(check_comodule(d.objects[i]), "object_" + std::to_string(i));
  for (std::size_t i = 0; i < d.morphisms.size(); ++i) {
    const auto& f = d.morphisms[i];
    if (f.src >= d.objects.size() || f.dst >= d.objects.size())
      throw std::invalid_argument("check_diagram: morphism endpoint out of range");
    const Comodule& s = d.objects[f.src];
    const Comodule& t = d.objects[f.dst];
    if (f.mat.rows() != t.dim || f.mat.cols() != s.dim)
      throw std::invalid_argument("check_diagram: morphism shape mismatch");
    const std::size_t n = s.over.carrier.dim;
    rep.add("morphism_" + std::to_string(i) + "_comodule_map",
            diff_witness(mul(t.rho, f.mat),
                         mul(kron(f.mat, RatMat::identity(n)), s.rho), {s.dim}));
  }
  return rep;
}

// Quotient of the direct sum of the summands X_i* (x) X_i by the span of the
// columns (f composed into the dual leg) minus (f applied to the vector leg),
// one column per morphism and basis pair. Summand i occupies the coordinate
// block [offsets[i], offsets[i] + dim_i^2) with the dual index major.
struct Coend {
  std::size_t dim = 0;
  RatMat proj;                       // dim x (total summand size)
  std::vector<RatMat> coprojections; // dim x dim_i^2 slices of proj
  std::vector<std::size_t> offsets;
  Diagram diagram;
  RatMat deltaE;  // dim^2 x dim, filled by coend_comonoid
  RatMat epsE;    // 1 x dim, filled by coend_comonoid
  RatMat qE;      // dim x dim^3, filled by coend_herd
};

inline Coend coend(const Diagram& d) {
  const CheckReport rep = check_diagram(d);
  for (const auto& c : rep.checks)
    if (!c.passed) throw ComoduleAxiomError("coend: diagram fails " + c.name);

  Coend e;
  e.diagram = d;
  std::size_t total = 0;
  for (const auto& obj : d.objects) {
    e.offsets.push_back(total);
    total += obj.dim * obj.dim;
  }
  std::size_t rel_cols = 0;
  for (const auto& f : d.morphisms)
    rel_cols += d.objects[f.src].dim * d.objects[f.dst].dim;

  // One relation per morphism f : s -> t and basis covector/vector pair
  // (i of t*, j of s): sum_k F(i,k) e^k(x)e_j in summand s minus
  // sum_l F(l,j) e^i(x)e_l in summand t.
  RatMat rel(total, rel_cols);
  std::size_t col = 0;
  for (const auto& f : d.morphisms) {
    const std::size_t ms = d.objects[f.src].dim, mt = d.objects[f.dst].dim;
    for (std::size_t i = 0; i < mt; ++i)
      for (std::size_t j = 0; j < ms; ++j, ++col) {
        for (std::size_t k = 0; k < ms; ++k)
          rel.at(e.offsets[f.src] + k * ms + j, col) += f.mat.at(i, k);
        for (std::size_t l = 0; l < mt; ++l)
          rel.at(e.offsets[f.dst] + i * mt + l, col) -= f.mat.at(l, j);
      }
  }
  const Cokernel ck = cokernel(rel);
  e.dim = ck.dim;
  e.proj = ck.proj;
  for (std::size_t t = 0; t < d.objects.size(); ++t) {
    const std::size_t m2 = d.objects[t].dim * d.objects[t].dim;
    RatMat copr(e.dim, m2);
    for (std::size_t r = 0; r < e.dim; ++r)
      for (std::size_t c = 0; c < m2; ++c) copr.at(r, c) = e.proj.at(r, e.offsets[t] + c);
    e.coprojections.push_back(std::move(copr));
  }
  return e;
}

// deltaE on the class of e^i(x)e_k splits the pair across an inserted
// coevaluation: sum_l [e^i(x)e_l] (x) [e^l(x)e_k]. epsE restricts to the
// evaluation pairing on each summand. Both are forced by the coprojections;
// factoring through proj is what verifies them well defined on the
// relations (a FactorizationError here means the diagram was not one).
inline Coend coend_comonoid(Coend e) {
  const std::size_t total = e.proj.cols();
  RatMat big_delta(e.dim * e.dim, total);
  RatMat big_eps(1, total);
  for (std::size_t t = 0; t < e.diagram.objects.size(); ++t) {
    const std::size_t m = e.diagram.objects[t].dim;
    const DualData d = standard_dual(m);
    const RatMat split =
        mul(kron(e.coprojections[t], e.coprojections[t]),
            kron(RatMat::identity(m), kron(d.coev, RatMat::identity(m))));
    for (std::size_t r = 0; r < e.dim * e.dim; ++r)
      for (std::size_t c = 0; c < m * m; ++c)
        big_delta.at(r, e.offsets[t] + c) = split.at(r, c);
    for (std::size_t c = 0; c < m * m; ++c) big_eps.at(0, e.offsets[t] + c) = d.ev.at(0, c);
  }
  e.deltaE = factor_through_surjection(big_delta, e.proj);
  e.epsE = factor_through_surjection(big_eps, e.proj);
  return e;
}

// qE is forced on each summand triple by rearranging
// X_i* (x) X_i (x) X_j* (x) X_j (x) X_k* (x) X_k into the summand of the
// comodule Q(X_i, X_j, X_k) = X_i (x) X_j* (x) X_k: the factor-ordering
// identification of (X_i (x) X_j* (x) X_k)* swaps the two middle legs with
// their partners (vector legs of i and j trade places with the dual legs of
// j and k), then the coprojection of the matching diagram object applies.
// The diagram must actually contain that comodule.
inline Coend coend_herd(Coend e, const Herd& a) {
  const auto& objs = e.diagram.objects;
  const std::size_t n = objs.size();
  std::size_t triple_total = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const std::size_t block =
            objs[i].dim * objs[i].dim * objs[j].dim * objs[j].dim * objs[k].dim * objs[k].dim;
        triple_total += block;
      }
  RatMat big_p(e.dim * e.dim * e.dim, triple_total);
  RatMat big_g(e.dim, triple_total);
  std::size_t col0 = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const Comodule qc = q_comodule(a, objs[i], objs[j], objs[k]);
        std::size_t t = n;
        for (std::size_t s = 0; s < n; ++s)
          if (objs[s].dim == qc.dim && objs[s].rho == qc.rho) {
            t = s;
            break;
          }
        if (t == n)
          throw MissingObjectError("coend_herd: diagram has no object matching Q(" +
                                   std::to_string(i) + "," + std::to_string(j) + "," +
                                   std::to_string(k) + ")");
        const std::size_t di = objs[i].dim, dj = objs[j].dim, dk = objs[k].dim;
        const RatMat p = kron(e.coprojections[i], kron(e.coprojections[j], e.coprojections[k]));
        const RatMat r =
            perm_matrix(FactorPerm({di, di, dj, dj, dk, dk}, {1, 4, 5, 2, 3, 6}));
        const RatMat g = mul(e.coprojections[t], r);
        for (std::size_t rr = 0; rr < p.rows(); ++rr)
          for (std::size_t c = 0; c < p.cols(); ++c) big_p.at(rr, col0 + c) = p.at(rr, c);
        for (std::size_t rr = 0; rr < e.dim; ++rr)
          for (std::size_t c = 0; c < g.cols(); ++c) big_g.at(rr, col0 + c) = g.at(rr, c);
        col0 += p.cols();
      }
  e.qE = factor_through_surjection(big_g, big_p);
  return e;
}

// Does f : E -> A carry the reconstructed herd onto A? Invertibility plus
// comonoid morphism plus equivariance of the ternary operations.
inline CheckReport herd_iso_check(const Coend& e, const Herd& a, const RatMat& f) {
  CheckReport rep;
  rep.add("invertible", detail::invertible_witness(f));
  rep.merge(check_comonoid_morphism(f, Comonoid{e.dim, e.deltaE, e.epsE}, a.carrier));
  rep.add("respects_q", diff_witness(mul(f, e.qE), mul(a.q, kron(f, kron(f, f))),
                                     {e.dim, e.dim, e.dim}));
  return rep;
}

}  // namespace herdkit
