#pragma once

// Exact Hermite and Smith normal forms over an integral scalar type.
//
// Everything here is templated on the scalar so the same kernels run on
// Integer (GMP) in production and on builtin integers in tests. Matrices are
// read column-wise: the columns of a relation matrix generate a lattice.

#include "ahom/core/integer.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace ahom {

template <typename S>
struct HermiteDecomposition {
  Mat<S> form;       // m * transform == form
  Mat<S> transform;  // unimodular, cols x cols
  std::vector<Index> pivot_rows;  // pivot row of column j, j < rank
  Index rank() const { return static_cast<Index>(pivot_rows.size()); }
};

template <typename S>
struct SmithDecomposition {
  Mat<S> d;      // u * m * v == d
  Mat<S> u;      // unimodular, rows x rows
  Mat<S> v;      // unimodular, cols x cols
  Mat<S> u_inv;  // inverse of u
  std::vector<S> diagonal() const {
    std::vector<S> out;
    for (Index i = 0; i < std::min(d.rows(), d.cols()); ++i) out.push_back(d(i, i));
    return out;
  }
};

namespace detail {

// Replace columns (a, b) by (s*a + t*b, -y*a + x*b), det = s*x + t*y = 1.
template <typename S, typename Derived>
void unimodular_column_pair(Eigen::MatrixBase<Derived>& m, Index a, Index b, const S& s,
                            const S& t, const S& x, const S& y) {
  for (Index r = 0; r < m.rows(); ++r) {
    S va = m(r, a), vb = m(r, b);
    m(r, a) = s * va + t * vb;
    m(r, b) = x * vb - y * va;
  }
}

template <typename S, typename Derived>
void unimodular_row_pair(Eigen::MatrixBase<Derived>& m, Index a, Index b, const S& s,
                         const S& t, const S& x, const S& y) {
  for (Index c = 0; c < m.cols(); ++c) {
    S va = m(a, c), vb = m(b, c);
    m(a, c) = s * va + t * vb;
    m(b, c) = x * vb - y * va;
  }
}

}  // namespace detail

/// Column-style Hermite normal form with the column transform.
///
/// Pivots are positive and lie in strictly increasing rows; in each pivot row
/// the entries to the left of the pivot are reduced into [0, pivot). Columns
/// beyond the rank are zero.
template <typename S>
HermiteDecomposition<S> hermite_decomposition(const Mat<S>& m) {
  HermiteDecomposition<S> out;
  out.form = m;
  out.transform = Mat<S>::Identity(m.cols(), m.cols());
  Mat<S>& h = out.form;
  Mat<S>& t = out.transform;
  Index k = 0;
  for (Index row = 0; row < h.rows() && k < h.cols(); ++row) {
    for (Index j = k + 1; j < h.cols(); ++j) {
      if (h(row, j) == 0) continue;
      if (h(row, k) == 0) {
        h.col(k).swap(h.col(j));
        t.col(k).swap(t.col(j));
        continue;
      }
      S a = h(row, k), b = h(row, j);
      auto [g, s, tt] = ext_gcd(a, b);
      S x = a / g, y = b / g;
      detail::unimodular_column_pair(h, k, j, s, tt, x, y);
      detail::unimodular_column_pair(t, k, j, s, tt, x, y);
    }
    if (h(row, k) == 0) continue;
    if (h(row, k) < 0) {
      h.col(k) = -h.col(k);
      t.col(k) = -t.col(k);
    }
    const S pivot = h(row, k);
    for (Index c = 0; c < k; ++c) {
      S q = floor_div(S(h(row, c)), pivot);
      if (q != 0) {
        h.col(c) -= q * h.col(k);
        t.col(c) -= q * t.col(k);
      }
    }
    out.pivot_rows.push_back(row);
    ++k;
  }
  return out;
}

template <typename S>
Mat<S> hnf(const Mat<S>& m) {
  return hermite_decomposition(m).form;
}

/// Nonzero columns of the Hermite form: a canonical basis of the column lattice.
template <typename S>
Mat<S> lattice_basis(const Mat<S>& m) {
  auto dec = hermite_decomposition(m);
  return dec.form.leftCols(dec.rank());
}

/// Basis (as columns) of the integer kernel {x : m x = 0}.
template <typename S>
Mat<S> integer_kernel(const Mat<S>& m) {
  auto dec = hermite_decomposition(m);
  return dec.transform.rightCols(m.cols() - dec.rank());
}

/// Solves basis * c == v over the integers; std::nullopt when v is not in the
/// column lattice.
template <typename S>
std::optional<Vec<S>> solve_in_lattice(const Mat<S>& basis, const Vec<S>& v) {
  auto dec = hermite_decomposition(basis);
  Vec<S> rest = v;
  Vec<S> coeff = Vec<S>::Zero(basis.cols());
  for (Index j = 0; j < dec.rank(); ++j) {
    const Index row = dec.pivot_rows[static_cast<std::size_t>(j)];
    // Rows above this pivot must already be cleared.
    const Index prev = j == 0 ? 0 : dec.pivot_rows[static_cast<std::size_t>(j - 1)] + 1;
    for (Index r = prev; r < row; ++r)
      if (rest(r) != 0) return std::nullopt;
    const S& p = dec.form(row, j);
    if (floor_mod(S(rest(row)), p) != 0) return std::nullopt;
    S q = rest(row) / p;
    coeff(j) = q;
    rest -= q * dec.form.col(j);
  }
  for (Index r = 0; r < rest.size(); ++r)
    if (rest(r) != 0) return std::nullopt;
  return Vec<S>(dec.transform * coeff);
}

template <typename S>
bool in_lattice(const Mat<S>& basis, const Vec<S>& v) {
  return solve_in_lattice(basis, v).has_value();
}

/// Smith normal form u*m*v = d with d_i | d_{i+1}, nonnegative, zeros last.
template <typename S>
SmithDecomposition<S> smith_decomposition(const Mat<S>& m) {
  SmithDecomposition<S> out;
  const Index rows = m.rows(), cols = m.cols();
  out.d = m;
  out.u = Mat<S>::Identity(rows, rows);
  out.u_inv = Mat<S>::Identity(rows, rows);
  out.v = Mat<S>::Identity(cols, cols);
  Mat<S>& d = out.d;

  auto swap_rows = [&](Index a, Index b) {
    if (a == b) return;
    d.row(a).swap(d.row(b));
    out.u.row(a).swap(out.u.row(b));
    out.u_inv.col(a).swap(out.u_inv.col(b));
  };
  auto swap_cols = [&](Index a, Index b) {
    if (a == b) return;
    d.col(a).swap(d.col(b));
    out.v.col(a).swap(out.v.col(b));
  };
  // Row op on (a, b) with matrix [[s, t], [-y, x]]; its inverse is
  // [[x, -t], [y, s]], applied to the columns of u_inv.
  auto row_pair = [&](Index a, Index b, const S& s, const S& t, const S& x, const S& y) {
    detail::unimodular_row_pair(d, a, b, s, t, x, y);
    detail::unimodular_row_pair(out.u, a, b, s, t, x, y);
    for (Index r = 0; r < rows; ++r) {
      S ca = out.u_inv(r, a), cb = out.u_inv(r, b);
      out.u_inv(r, a) = x * ca + y * cb;
      out.u_inv(r, b) = s * cb - t * ca;
    }
  };
  auto col_pair = [&](Index a, Index b, const S& s, const S& t, const S& x, const S& y) {
    detail::unimodular_column_pair(d, a, b, s, t, x, y);
    detail::unimodular_column_pair(out.v, a, b, s, t, x, y);
  };

  const Index n = std::min(rows, cols);
  for (Index t = 0; t < n; ++t) {
    // Pick the smallest nonzero entry of the trailing block as pivot.
    Index pr = -1, pc = -1;
    for (Index i = t; i < rows; ++i)
      for (Index j = t; j < cols; ++j)
        if (d(i, j) != 0 && (pr < 0 || abs_value(S(d(i, j))) < abs_value(S(d(pr, pc))))) {
          pr = i;
          pc = j;
        }
    if (pr < 0) break;
    swap_rows(t, pr);
    swap_cols(t, pc);
    for (;;) {
      bool changed = false;
      for (Index i = t + 1; i < rows; ++i) {
        if (d(i, t) == 0) continue;
        S a = d(t, t), b = d(i, t);
        if (floor_mod(b, a) == 0) {
          row_pair(t, i, S(1), S(0), S(1), S(b / a));
        } else {
          auto [g, s, tt] = ext_gcd(a, b);
          row_pair(t, i, s, tt, S(a / g), S(b / g));
        }
        changed = true;
      }
      for (Index j = t + 1; j < cols; ++j) {
        if (d(t, j) == 0) continue;
        S a = d(t, t), b = d(t, j);
        if (floor_mod(b, a) == 0) {
          col_pair(t, j, S(1), S(0), S(1), S(b / a));
        } else {
          auto [g, s, tt] = ext_gcd(a, b);
          col_pair(t, j, s, tt, S(a / g), S(b / g));
        }
        changed = true;
      }
      if (changed) continue;
      // Divisibility: fold an offending row into the pivot row and retry.
      Index bad = -1;
      for (Index i = t + 1; i < rows && bad < 0; ++i)
        for (Index j = t + 1; j < cols; ++j)
          if (floor_mod(S(d(i, j)), S(d(t, t))) != 0) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      row_pair(t, bad, S(1), S(1), S(1), S(0));
    }
    if (d(t, t) < 0) {
      d.row(t) = -d.row(t);
      out.u.row(t) = -out.u.row(t);
      out.u_inv.col(t) = -out.u_inv.col(t);
    }
  }
  return out;
}

/// Diagonal of the Smith form as a matrix of the input's shape.
template <typename S>
Mat<S> snf(const Mat<S>& m) {
  return smith_decomposition(m).d;
}

/// Exact determinant by fraction-free (Bareiss) elimination.
template <typename S>
S determinant(Mat<S> a) {
  const Index n = a.rows();
  if (n == 0) return S(1);
  S sign = 1, prev = 1;
  for (Index k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      Index r = k + 1;
      while (r < n && a(r, k) == 0) ++r;
      if (r == n) return S(0);
      a.row(k).swap(a.row(r));
      sign = -sign;
    }
    for (Index i = k + 1; i < n; ++i)
      for (Index j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

}  // namespace ahom
