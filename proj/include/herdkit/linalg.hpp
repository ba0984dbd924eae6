#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rat.hpp"
#include "report.hpp"

namespace herdkit {

// Dense exact-rational matrix, row major. A matrix stands for a linear map
// V -> W with dim V = cols and dim W = rows; composition is mul(g, f) for
// "f then g".
class RatMat {
 public:
  RatMat() = default;
  RatMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols) {}

  static RatMat identity(std::size_t n) {
    RatMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  static RatMat from_int_rows(std::initializer_list<std::initializer_list<long long>> rows) {
    RatMat m(rows.size(), rows.size() ? rows.begin()->size() : 0);
    std::size_t r = 0;
    for (const auto& row : rows) {
      if (row.size() != m.cols()) throw std::invalid_argument("ragged rows");
      std::size_t c = 0;
      for (long long v : row) m.at(r, c++) = v;
      ++r;
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rat& at(std::size_t r, std::size_t c) { return e_[r * cols_ + c]; }
  const Rat& at(std::size_t r, std::size_t c) const { return e_[r * cols_ + c]; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap(at(a, j), at(b, j));
  }

  bool is_zero() const {
    for (const auto& x : e_)
      if (!x.is_zero()) return false;
    return true;
  }

  friend bool operator==(const RatMat&, const RatMat&) = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rat> e_;
};

inline RatMat mul(const RatMat& a, const RatMat& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("mul: inner dimensions differ");
  RatMat out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Rat& f = a.at(i, k);
      if (f.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        const Rat& g = b.at(k, j);
        if (g.is_zero()) continue;
        out.at(i, j) += f * g;
      }
    }
  return out;
}

inline RatMat add(const RatMat& a, const RatMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("add: shapes differ");
  RatMat out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!b.at(i, j).is_zero()) out.at(i, j) += b.at(i, j);
  return out;
}

inline RatMat sub(const RatMat& a, const RatMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("sub: shapes differ");
  RatMat out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!b.at(i, j).is_zero()) out.at(i, j) -= b.at(i, j);
  return out;
}

inline RatMat transpose(const RatMat& a) {
  RatMat out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!a.at(i, j).is_zero()) out.at(j, i) = a.at(i, j);
  return out;
}

// Kronecker product; basis convention index(e_i (x) e_j) = i * dim(B) + j.
inline RatMat kron(const RatMat& a, const RatMat& b) {
  RatMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ia = 0; ia < a.rows(); ++ia)
    for (std::size_t ja = 0; ja < a.cols(); ++ja) {
      const Rat& f = a.at(ia, ja);
      if (f.is_zero()) continue;
      for (std::size_t ib = 0; ib < b.rows(); ++ib)
        for (std::size_t jb = 0; jb < b.cols(); ++jb) {
          const Rat& g = b.at(ib, jb);
          if (g.is_zero()) continue;
          out.at(ia * b.rows() + ib, ja * b.cols() + jb) = f * g;
        }
    }
  return out;
}

inline std::size_t dims_total(const std::vector<std::size_t>& dims) {
  std::size_t n = 1;
  for (std::size_t d : dims) n *= d;
  return n;
}

inline std::vector<std::size_t> tuple_of(const std::vector<std::size_t>& dims, std::size_t flat) {
  std::vector<std::size_t> t(dims.size());
  for (std::size_t i = dims.size(); i-- > 0;) {
    t[i] = flat % dims[i];
    flat /= dims[i];
  }
  return t;
}

inline std::size_t flat_index(const std::vector<std::size_t>& dims,
                              const std::vector<std::size_t>& tuple) {
  std::size_t flat = 0;
  for (std::size_t i = 0; i < dims.size(); ++i) flat = flat * dims[i] + tuple[i];
  return flat;
}

// Relabeling of tensor factors. placement is 1-based: input factor i lands
// at output position placement[i-1]. Over vector spaces the braiding is the
// plain swap, so only the underlying permutation is tracked; there is no
// braid word to remember.
class FactorPerm {
 public:
  FactorPerm(std::vector<std::size_t> dims, std::vector<std::size_t> placement)
      : dims_(std::move(dims)), placement_(std::move(placement)) {
    if (dims_.size() != placement_.size())
      throw std::invalid_argument("FactorPerm: dims/placement length mismatch");
    std::vector<bool> seen(placement_.size(), false);
    for (std::size_t p : placement_) {
      if (p < 1 || p > placement_.size() || seen[p - 1])
        throw std::invalid_argument("FactorPerm: placement is not a permutation");
      seen[p - 1] = true;
    }
    out_dims_.resize(dims_.size());
    for (std::size_t i = 0; i < dims_.size(); ++i) out_dims_[placement_[i] - 1] = dims_[i];
    total_ = dims_total(dims_);
  }

  const std::vector<std::size_t>& dims() const { return dims_; }
  const std::vector<std::size_t>& placement() const { return placement_; }
  const std::vector<std::size_t>& out_dims() const { return out_dims_; }
  std::size_t total() const { return total_; }

  std::size_t apply_index(std::size_t flat) const {
    const std::vector<std::size_t> x = tuple_of(dims_, flat);
    std::vector<std::size_t> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[placement_[i] - 1] = x[i];
    return flat_index(out_dims_, y);
  }

  FactorPerm inverse() const {
    std::vector<std::size_t> inv(placement_.size());
    for (std::size_t i = 0; i < placement_.size(); ++i) inv[placement_[i] - 1] = i + 1;
    return FactorPerm(out_dims_, inv);
  }

 private:
  std::vector<std::size_t> dims_, placement_, out_dims_;
  std::size_t total_ = 1;
};

// first, then after: factor i goes through `first`, landing at a position
// that `after` then relocates. Matrix side: perm_matrix(compose(after,
// first)) == mul(perm_matrix(after), perm_matrix(first)).
inline FactorPerm compose(const FactorPerm& after, const FactorPerm& first) {
  if (first.out_dims() != after.dims())
    throw std::invalid_argument("compose: factor dimensions do not chain");
  std::vector<std::size_t> placement(first.placement().size());
  for (std::size_t i = 0; i < placement.size(); ++i)
    placement[i] = after.placement()[first.placement()[i] - 1];
  return FactorPerm(first.dims(), placement);
}

inline RatMat perm_matrix(const FactorPerm& p) {
  RatMat out(p.total(), p.total());
  for (std::size_t x = 0; x < p.total(); ++x) out.at(p.apply_index(x), x) = 1;
  return out;
}

// perm_matrix(p) * m without materializing the permutation matrix.
inline RatMat permute_rows(const FactorPerm& p, const RatMat& m) {
  if (m.rows() != p.total()) throw std::invalid_argument("permute_rows: row count mismatch");
  RatMat out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const std::size_t rr = p.apply_index(r);
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (!m.at(r, c).is_zero()) out.at(rr, c) = m.at(r, c);
  }
  return out;
}

// m * perm_matrix(p).
inline RatMat permute_cols(const RatMat& m, const FactorPerm& p) {
  if (m.cols() != p.total()) throw std::invalid_argument("permute_cols: column count mismatch");
  RatMat out(m.rows(), m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c) {
    const std::size_t cc = p.apply_index(c);
    for (std::size_t r = 0; r < m.rows(); ++r)
      if (!m.at(r, cc).is_zero()) out.at(r, c) = m.at(r, cc);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sparse column vectors. The exhaustive axiom scans evaluate long composites
// one basis column at a time; a column is a sorted, duplicate-free,
// zero-free list of (index, coefficient) terms. Matrices stay dense; this
// is only the column representation used while chasing a single basis
// vector through a composite.

struct Term {
  std::size_t idx;
  Rat coef;
  friend bool operator==(const Term&, const Term&) = default;
};
using TermVec = std::vector<Term>;

inline TermVec normalize_terms(TermVec v) {
  std::sort(v.begin(), v.end(), [](const Term& a, const Term& b) { return a.idx < b.idx; });
  TermVec out;
  out.reserve(v.size());
  for (auto& t : v) {
    if (!out.empty() && out.back().idx == t.idx)
      out.back().coef += t.coef;
    else
      out.push_back(std::move(t));
    if (!out.empty() && out.back().coef.is_zero()) out.pop_back();
  }
  return out;
}

inline TermVec basis_term(std::size_t idx) { return {{idx, Rat(1)}}; }

inline TermVec col_terms(const RatMat& m, std::size_t col) {
  TermVec out;
  for (std::size_t r = 0; r < m.rows(); ++r)
    if (!m.at(r, col).is_zero()) out.push_back({r, m.at(r, col)});
  return out;
}

// Applies 1_left (x) f (x) 1_right, where left and right are the dimensions
// of the untouched outer blocks.
inline TermVec apply_block(const RatMat& f, std::size_t left, std::size_t right,
                           const TermVec& v) {
  const std::size_t c = f.cols(), r = f.rows();
  TermVec out;
  for (const Term& t : v) {
    const std::size_t rblk = t.idx % right;
    const std::size_t mid = (t.idx / right) % c;
    const std::size_t lblk = t.idx / (right * c);
    for (std::size_t y = 0; y < r; ++y) {
      const Rat& g = f.at(y, mid);
      if (g.is_zero()) continue;
      out.push_back({(lblk * r + y) * right + rblk, t.coef * g});
    }
  }
  (void)left;  // implied by the index arithmetic; kept for call-site clarity
  return normalize_terms(std::move(out));
}

inline TermVec apply_matrix(const RatMat& f, const TermVec& v) {
  return apply_block(f, 1, 1, v);
}

inline TermVec apply_factor_perm(const FactorPerm& p, const TermVec& v) {
  TermVec out;
  out.reserve(v.size());
  for (const Term& t : v) out.push_back({p.apply_index(t.idx), t.coef});
  return normalize_terms(std::move(out));
}

// First index where two normalized columns differ, with both values.
inline std::optional<Witness> term_diff(const TermVec& lhs, const TermVec& rhs) {
  std::size_t i = 0, j = 0;
  while (i < lhs.size() || j < rhs.size()) {
    const std::size_t li = i < lhs.size() ? lhs[i].idx : SIZE_MAX;
    const std::size_t rj = j < rhs.size() ? rhs[j].idx : SIZE_MAX;
    if (li < rj) return Witness{{}, li, rat_to_string(lhs[i].coef), "0"};
    if (rj < li) return Witness{{}, rj, "0", rat_to_string(rhs[j].coef)};
    if (lhs[i].coef != rhs[j].coef)
      return Witness{{}, li, rat_to_string(lhs[i].coef), rat_to_string(rhs[j].coef)};
    ++i, ++j;
  }
  return std::nullopt;
}

// First difference between two equally shaped matrices, reported as the
// lexicographically first domain basis tuple (columns decoded by
// domain_dims) and the output coordinate.
inline std::optional<Witness> diff_witness(const RatMat& lhs, const RatMat& rhs,
                                           const std::vector<std::size_t>& domain_dims) {
  if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols())
    throw std::invalid_argument("diff_witness: shapes differ");
  for (std::size_t c = 0; c < lhs.cols(); ++c)
    for (std::size_t r = 0; r < lhs.rows(); ++r)
      if (lhs.at(r, c) != rhs.at(r, c))
        return Witness{tuple_of(domain_dims, c), r, rat_to_string(lhs.at(r, c)),
                       rat_to_string(rhs.at(r, c))};
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Elimination-based operations. All pivoting is deterministic (first
// nonzero), so every result below is canonical for its input.

// In-place Gauss-Jordan to reduced row-echelon form; returns pivot columns.
inline std::vector<std::size_t> rref(RatMat& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t pr = row;
    while (pr < m.rows() && m.at(pr, col).is_zero()) ++pr;
    if (pr == m.rows()) continue;
    m.swap_rows(pr, row);
    if (m.at(row, col) != 1) {
      const Rat inv = Rat(1) / m.at(row, col);
      for (std::size_t j = col; j < m.cols(); ++j)
        if (!m.at(row, j).is_zero()) m.at(row, j) *= inv;
    }
    for (std::size_t rr = 0; rr < m.rows(); ++rr) {
      if (rr == row) continue;
      const Rat f = m.at(rr, col);
      if (f.is_zero()) continue;
      for (std::size_t j = col; j < m.cols(); ++j)
        if (!m.at(row, j).is_zero()) m.at(rr, j) -= f * m.at(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

inline std::size_t rank(const RatMat& m) {
  RatMat copy = m;
  return rref(copy).size();
}

struct Cokernel {
  RatMat proj;      // (rows(f) - rank(f)) x rows(f), full row rank
  std::size_t dim;  // == proj.rows()
};

// Canonical cokernel of f: the quotient of the codomain by the column
// space. The column space is reduced with pivots chosen rightmost, so the
// quotient coordinates are the ascending non-pivot (lex-first) coordinates;
// for a subspace spanned by differences of basis vectors the rows of proj
// come out as the indicator vectors of the equivalence classes.
inline Cokernel cokernel(const RatMat& f) {
  const std::size_t m = f.rows();
  std::vector<std::vector<Rat>> basis;  // reduced spanning rows of im(f)
  std::vector<std::size_t> piv;         // rightmost nonzero coordinate per row
  for (std::size_t j = 0; j < f.cols(); ++j) {
    std::vector<Rat> v(m);
    bool any = false;
    for (std::size_t i = 0; i < m; ++i) {
      v[i] = f.at(i, j);
      any = any || !v[i].is_zero();
    }
    if (!any) continue;
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const Rat c = v[piv[b]];
      if (c.is_zero()) continue;
      for (std::size_t i = 0; i < m; ++i)
        if (!basis[b][i].is_zero()) v[i] -= c * basis[b][i];
    }
    std::size_t p = m;
    for (std::size_t i = m; i-- > 0;)
      if (!v[i].is_zero()) {
        p = i;
        break;
      }
    if (p == m) continue;
    if (v[p] != 1) {
      const Rat inv = Rat(1) / v[p];
      for (auto& x : v)
        if (!x.is_zero()) x *= inv;
    }
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const Rat c = basis[b][p];
      if (c.is_zero()) continue;
      for (std::size_t i = 0; i < m; ++i)
        if (!v[i].is_zero()) basis[b][i] -= c * v[i];
    }
    basis.push_back(std::move(v));
    piv.push_back(p);
  }
  std::vector<bool> is_piv(m, false);
  for (std::size_t p : piv) is_piv[p] = true;
  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < m; ++i)
    if (!is_piv[i]) free.push_back(i);
  RatMat proj(free.size(), m);
  for (std::size_t j = 0; j < free.size(); ++j) {
    proj.at(j, free[j]) = 1;
    for (std::size_t b = 0; b < basis.size(); ++b)
      if (!basis[b][free[j]].is_zero()) proj.at(j, piv[b]) = -basis[b][free[j]];
  }
  return {std::move(proj), free.size()};
}

// Unique g with g * p == f for surjective p. Existence requires f to vanish
// on ker(p); if it does not, no g exists and FactorizationError is thrown.
inline RatMat factor_through_surjection(const RatMat& f, const RatMat& p) {
  if (f.cols() != p.cols())
    throw std::invalid_argument("factor_through_surjection: domains differ");
  const std::size_t m = p.rows(), n = p.cols();
  RatMat aug(m, n + m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = p.at(i, j);
    aug.at(i, n + i) = 1;
  }
  const std::vector<std::size_t> pivots = rref(aug);
  for (std::size_t pc : pivots)
    if (pc >= n) throw FactorizationError("projection is not surjective");
  // pivots.size() == m here: [p | I] always has full row rank.
  RatMat rinv(n, m);
  for (std::size_t i = 0; i < pivots.size(); ++i)
    for (std::size_t j = 0; j < m; ++j) rinv.at(pivots[i], j) = aug.at(i, n + j);
  RatMat g = mul(f, rinv);
  const RatMat back = mul(g, p);
  if (back != f) {
    const auto w = diff_witness(back, f, {n});
    throw FactorizationError("map does not vanish on ker(projection); first difference at column " +
                             std::to_string(w->input[0]) + ", row " + std::to_string(w->component) +
                             ": " + w->lhs + " vs " + w->rhs);
  }
  return g;
}

inline std::optional<RatMat> try_inverse(const RatMat& f) {
  if (f.rows() != f.cols()) throw std::invalid_argument("try_inverse: matrix is not square");
  const std::size_t n = f.rows();
  RatMat aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = f.at(i, j);
    aug.at(i, n + i) = 1;
  }
  const std::vector<std::size_t> pivots = rref(aug);
  for (std::size_t pc : pivots)
    if (pc >= n) return std::nullopt;
  if (pivots.size() < n) return std::nullopt;
  RatMat inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
  return inv;
}

inline RatMat inverse(const RatMat& f) {
  auto inv = try_inverse(f);
  if (!inv) throw SingularError("matrix is singular");
  return *std::move(inv);
}

}  // namespace herdkit
