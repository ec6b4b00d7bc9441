#pragma once

#include "toricq/matrix.hpp"

#include <algorithm>
#include <cstddef>

namespace toricq {

/// U * A * V == S with S diagonal, d_1 | d_2 | ..., d_i >= 0, and U, V
/// unimodular. The inverses are tracked alongside so callers never have to
/// invert a unimodular matrix rationally.
struct SmithForm {
  IntMatrix S, U, V, U_inv, V_inv;

  std::vector<Integer> diagonal() const {
    std::vector<Integer> d;
    for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i) d.push_back(S(i, i));
    return d;
  }
  std::size_t rank() const {
    std::size_t r = 0;
    for (const auto& d : diagonal())
      if (d != 0) ++r;
    return r;
  }
};

namespace detail {

struct SmithWork {
  IntMatrix a, u, v, u_inv, v_inv;

  // Every row operation on a is mirrored on u (left) and inversely on u_inv
  // (right); columns likewise with v and v_inv.
  void swap_rows(std::size_t i, std::size_t j) {
    a.swap_rows(i, j);
    u.swap_rows(i, j);
    u_inv.swap_cols(i, j);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    a.swap_cols(i, j);
    v.swap_cols(i, j);
    v_inv.swap_rows(i, j);
  }
  void add_row(std::size_t dst, std::size_t src, const Integer& k) {
    a.add_row(dst, src, k);
    u.add_row(dst, src, k);
    u_inv.add_col(src, dst, -k);
  }
  void add_col(std::size_t dst, std::size_t src, const Integer& k) {
    a.add_col(dst, src, k);
    v.add_col(dst, src, k);
    v_inv.add_row(src, dst, -k);
  }
  void negate_row(std::size_t i) {
    a.negate_row(i);
    u.negate_row(i);
    u_inv.negate_col(i);
  }
};

inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace detail

inline SmithForm smith_normal_form(const IntMatrix& A) {
  const std::size_t m = A.rows(), n = A.cols();
  detail::SmithWork w{A, IntMatrix::identity(m), IntMatrix::identity(n), IntMatrix::identity(m),
                      IntMatrix::identity(n)};
  auto& a = w.a;
  const std::size_t k_max = std::min(m, n);
  for (std::size_t t = 0; t < k_max; ++t) {
    while (true) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      bool found = false;
      std::size_t pi = t, pj = t;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (a(i, j) != 0 && (!found || abs(a(i, j)) < abs(a(pi, pj)))) {
            found = true;
            pi = i;
            pj = j;
          }
      if (!found) goto done;
      w.swap_rows(t, pi);
      w.swap_cols(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (a(i, t) == 0) continue;
        w.add_row(i, t, -detail::floor_div(a(i, t), a(t, t)));
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a(t, j) == 0) continue;
        w.add_col(j, t, -detail::floor_div(a(t, j), a(t, t)));
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Divisibility: fold an offending row into row t and retry.
      bool divisible = true;
      for (std::size_t i = t + 1; i < m && divisible; ++i)
        for (std::size_t j = t + 1; j < n; ++j) {
          Integer r;
          mpz_mod(r.get_mpz_t(), a(i, j).get_mpz_t(), a(t, t).get_mpz_t());
          if (r != 0) {
            w.add_row(t, i, 1);
            divisible = false;
            break;
          }
        }
      if (divisible) break;
    }
    if (a(t, t) < 0) w.negate_row(t);
  }
done:
  return SmithForm{std::move(w.a), std::move(w.u), std::move(w.v), std::move(w.u_inv), std::move(w.v_inv)};
}

}  // namespace toricq
