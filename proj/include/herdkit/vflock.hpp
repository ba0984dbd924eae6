#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "coalg.hpp"
#include "errors.hpp"
#include "linalg.hpp"
#include "report.hpp"

namespace herdkit {

// Right coaction rho : M -> M (x) A over the carrier comonoid of a herd.
struct Comodule {
  std::size_t dim = 0;
  Herd over;
  RatMat rho;  // (dim * over.carrier.dim) x dim
};

// Standard-basis duality data for a space of dimension m. coev inserts
// M (x) M*, ev pairs M* (x) M; both are the diagonal delta pattern.
struct DualData {
  std::size_t dim = 0;
  RatMat ev;    // 1 x m^2
  RatMat coev;  // m^2 x 1
};

inline DualData standard_dual(std::size_t m) {
  DualData d;
  d.dim = m;
  d.ev = RatMat(1, m * m);
  d.coev = RatMat(m * m, 1);
  for (std::size_t i = 0; i < m; ++i) {
    d.ev.at(0, i * m + i) = 1;
    d.coev.at(i * m + i, 0) = 1;
  }
  return d;
}

inline CheckReport check_dual(const DualData& d) {
  const std::size_t m = d.dim;
  const RatMat id = RatMat::identity(m);
  CheckReport rep;
  rep.add("snake_dual_side",
          diff_witness(mul(kron(d.ev, id), kron(id, d.coev)), id, {m}));
  rep.add("snake_object_side",
          diff_witness(mul(kron(id, d.ev), kron(d.coev, id)), id, {m}));
  return rep;
}

inline CheckReport check_comodule(const Comodule& M) {
  const std::size_t m = M.dim, n = M.over.carrier.dim;
  if (M.rho.rows() != m * n || M.rho.cols() != m)
    throw std::invalid_argument("check_comodule: coaction shape mismatch");
  CheckReport rep;
  rep.add("coaction_coassociativity",
          diff_witness(mul(kron(M.rho, RatMat::identity(n)), M.rho),
                       mul(kron(RatMat::identity(m), M.over.carrier.delta), M.rho),
                       {m}));
  rep.add("coaction_counit",
          diff_witness(mul(kron(RatMat::identity(m), M.over.carrier.eps), M.rho),
                       RatMat::identity(m), {m}));
  return rep;
}

// A over itself, coacting by its own comultiplication.
inline Comodule regular_comodule(const Herd& A) {
  return {A.carrier.dim, A, A.carrier.delta};
}

// One-dimensional comodule of weight g: rho(1) = 1 (x) e_g.
inline Comodule weight_comodule(const Herd& A, std::size_t g) {
  Comodule c;
  c.dim = 1;
  c.over = A;
  c.rho = RatMat(A.carrier.dim, 1);
  c.rho.at(g, 0) = 1;
  return c;
}

namespace detail {

inline bool same_herd(const Herd& a, const Herd& b) {
  return a.carrier.dim == b.carrier.dim && a.carrier.delta == b.carrier.delta &&
         a.carrier.eps == b.carrier.eps && a.q == b.q;
}

inline void require_comodule(const Herd& A, const Comodule& M, const char* slot) {
  if (!same_herd(A, M.over))
    throw ComoduleAxiomError(std::string("q_comodule: slot ") + slot +
                             " is not a comodule over the given herd");
  const CheckReport rep = check_comodule(M);
  for (const auto& c : rep.checks)
    if (!c.passed)
      throw ComoduleAxiomError(std::string("q_comodule: slot ") + slot +
                               " fails " + c.name);
}

}  // namespace detail

// Coaction on Q(L,M,N) = L (x) M* (x) N. Six stages: insert coev of M after
// the dual leg, coact on L, M and N, evaluate the original M* against the
// inserted M, route factors 1..6 to positions 1,4,5,2,3,6 so the three A legs
// sit at the back (the leg produced by the M coaction lands in the middle),
// and fuse the A legs with q.
inline Comodule q_comodule(const Herd& A, const Comodule& L, const Comodule& M,
                           const Comodule& N) {
  detail::require_comodule(A, L, "L");
  detail::require_comodule(A, M, "M");
  detail::require_comodule(A, N, "N");
  const std::size_t l = L.dim, m = M.dim, k = N.dim, n = A.carrier.dim;
  const DualData dm = standard_dual(m);
  // L (x) M* (x) N -> L (x) M* (x) M (x) M* (x) N
  const RatMat s1 = kron(RatMat::identity(l * m), kron(dm.coev, RatMat::identity(k)));
  // -> L (x) A (x) M* (x) M (x) A (x) M* (x) N (x) A
  const RatMat s2 =
      kron(L.rho, kron(RatMat::identity(m), kron(M.rho, kron(RatMat::identity(m), N.rho))));
  // -> L (x) A (x) A (x) M* (x) N (x) A
  const RatMat s3 =
      kron(RatMat::identity(l * n), kron(dm.ev, RatMat::identity(n * m * k * n)));
  // -> L (x) M* (x) N (x) A (x) A (x) A
  const FactorPerm place({l, n, n, m, k, n}, {1, 4, 5, 2, 3, 6});
  Comodule out;
  out.dim = l * m * k;
  out.over = A;
  out.rho = mul(kron(RatMat::identity(l * m * k), A.q),
                permute_rows(place, mul(s3, mul(s2, s1))));
  return out;
}

// The reassociation phi, the contraction alpha and the insertion beta for one
// object tuple, with the per-instance flock checks. phi is the identity on
// the strictified carrier L (x) M* (x) N (x) R* (x) S; the content of the
// phi checks is that the coactions built through the two nestings agree.
struct FlockData {
  Comodule q_left;   // Q(Q(L,M,N),R,S)
  Comodule q_right;  // Q(L,M,Q(N,R,S))
  RatMat phi;        // identity on the common carrier
  RatMat alpha;      // 1_L (x) ev_M : Q(L,M,M) -> L
  RatMat beta;       // coev_L (x) 1_M : M -> Q(L,L,M)
  CheckReport report;
};

inline FlockData flock_maps(const Herd& A, const Comodule& L, const Comodule& M,
                            const Comodule& N, const Comodule& R, const Comodule& S) {
  FlockData out;
  const std::size_t n = A.carrier.dim;
  const RatMat idA = RatMat::identity(n);

  out.q_left = q_comodule(A, q_comodule(A, L, M, N), R, S);
  out.q_right = q_comodule(A, L, M, q_comodule(A, N, R, S));
  out.phi = RatMat::identity(out.q_left.dim);
  const std::vector<std::size_t> carrier_dims{L.dim, M.dim, N.dim, R.dim, S.dim};
  out.report.add("phi_comodule_morphism",
                 diff_witness(out.q_left.rho, out.q_right.rho, carrier_dims));

  const DualData dm = standard_dual(M.dim);
  out.alpha = kron(RatMat::identity(L.dim), dm.ev);
  const Comodule qlmm = q_comodule(A, L, M, M);
  out.report.add("alpha_comodule_morphism",
                 diff_witness(mul(L.rho, out.alpha),
                              mul(kron(out.alpha, idA), qlmm.rho),
                              {L.dim, M.dim, M.dim}));

  const DualData dl = standard_dual(L.dim);
  out.beta = kron(dl.coev, RatMat::identity(M.dim));
  const Comodule qllm = q_comodule(A, L, L, M);
  out.report.add("beta_comodule_morphism",
                 diff_witness(mul(qllm.rho, out.beta),
                              mul(kron(out.beta, idA), M.rho),
                              {M.dim}));

  // Condition 1, instantiated at (L,M,N,R,N,R,S): with phi strict, the
  // pentagon commutes exactly when all five corner coactions coincide.
  {
    const Comodule inner = q_comodule(A, N, R, N);
    const Comodule tail = q_comodule(A, N, R, S);
    const Comodule qlmn = q_comodule(A, L, M, N);
    const Comodule x1 = q_comodule(A, q_comodule(A, qlmn, R, N), R, S);
    const Comodule x2 = q_comodule(A, qlmn, R, tail);
    const Comodule x3 = q_comodule(A, L, M, q_comodule(A, N, R, tail));
    const Comodule x4 = q_comodule(A, q_comodule(A, L, M, inner), R, S);
    const Comodule x5 = q_comodule(A, L, M, q_comodule(A, inner, R, S));
    const std::vector<std::size_t> dims7{L.dim, M.dim, N.dim, R.dim,
                                         N.dim, R.dim, S.dim};
    std::optional<Witness> w = diff_witness(x1.rho, x2.rho, dims7);
    if (!w) w = diff_witness(x2.rho, x3.rho, dims7);
    if (!w) w = diff_witness(x1.rho, x4.rho, dims7);
    if (!w) w = diff_witness(x4.rho, x5.rho, dims7);
    if (!w) w = diff_witness(x5.rho, x3.rho, dims7);
    out.report.add("flock_pentagon", w);
  }

  // Condition 2 at (L,M,N): Q(alpha,1,1) phi^{-1} Q(1,1,beta) = 1 on Q(L,M,N).
  {
    const DualData d = standard_dual(M.dim);
    const RatMat insert =
        kron(RatMat::identity(L.dim * M.dim), kron(d.coev, RatMat::identity(N.dim)));
    const RatMat contract =
        kron(kron(RatMat::identity(L.dim), d.ev), RatMat::identity(M.dim * N.dim));
    out.report.add("flock_triangle",
                   diff_witness(mul(contract, insert),
                                RatMat::identity(L.dim * M.dim * N.dim),
                                {L.dim, M.dim, N.dim}));
  }

  // Condition 3 at each supplied object: alpha . beta = 1.
  {
    const Comodule* objs[5] = {&L, &M, &N, &R, &S};
    for (std::size_t i = 0; i < 5; ++i) {
      const std::size_t x = objs[i]->dim;
      const DualData d = standard_dual(x);
      const RatMat a = kron(RatMat::identity(x), d.ev);
      const RatMat b = kron(d.coev, RatMat::identity(x));
      out.report.add("alpha_beta_identity_" + std::to_string(i + 1),
                     diff_witness(mul(a, b), RatMat::identity(x), {x}));
    }
  }
  return out;
}

// Induced monoidal structure when J behaves as a unit: X (x) Y = Q(X,J,Y)
// and X* = Q(J,X,J). Tables are emitted only when every alpha_X^J and
// beta_Y^J is invertible.
struct MonoidalTables {
  std::vector<std::vector<Comodule>> tensor;  // tensor[i][j] = Q(objs[i], J, objs[j])
  std::vector<Comodule> dual;                 // dual[i] = Q(J, objs[i], J)
  CheckReport report;
};

namespace detail {

inline std::optional<Witness> invertible_witness(const RatMat& f) {
  if (f.rows() != f.cols())
    return Witness{{}, 0,
                   std::to_string(f.rows()) + "x" + std::to_string(f.cols()),
                   "square invertible"};
  if (try_inverse(f)) return std::nullopt;
  return Witness{{}, 0, "singular", "invertible"};
}

}  // namespace detail

inline MonoidalTables unit_object_check(const Herd& A, const Comodule& J,
                                        const std::vector<Comodule>& objs) {
  detail::require_comodule(A, J, "J");
  MonoidalTables out;
  const DualData dj = standard_dual(J.dim);
  for (std::size_t i = 0; i < objs.size(); ++i) {
    const RatMat a = kron(RatMat::identity(objs[i].dim), dj.ev);
    out.report.add("alpha_invertible_" + std::to_string(i + 1),
                   detail::invertible_witness(a));
    const RatMat b = kron(dj.coev, RatMat::identity(objs[i].dim));
    out.report.add("beta_invertible_" + std::to_string(i + 1),
                   detail::invertible_witness(b));
  }
  if (!out.report.all_passed()) return out;
  out.tensor.resize(objs.size());
  for (std::size_t i = 0; i < objs.size(); ++i)
    for (std::size_t j = 0; j < objs.size(); ++j)
      out.tensor[i].push_back(q_comodule(A, objs[i], J, objs[j]));
  for (std::size_t i = 0; i < objs.size(); ++i)
    out.dual.push_back(q_comodule(A, J, objs[i], J));
  return out;
}

}  // namespace herdkit
