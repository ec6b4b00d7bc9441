#pragma once

#include "toricq/matrix.hpp"

#include <optional>
#include <vector>

namespace toricq {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rational value;
  QVector x;
};

/// maximize c.x  subject to  A x <= b,  x >= 0.
///
/// Two-phase dictionary simplex over exact rationals. Entering and leaving
/// variables follow Bland's rule (smallest variable id), which guarantees
/// termination and a deterministic pivot sequence.
class SimplexSolver {
 public:
  SimplexSolver(const RationalMatrix& A, const QVector& b, const QVector& c)
      : m_(A.rows()), n_(c.size()), basis_(m_), nonbasis_(n_ + 1), d_(m_ + 2, n_ + 2) {
    for (std::size_t i = 0; i < m_; ++i)
      for (std::size_t j = 0; j < n_; ++j) d_(i, j) = A(i, j);
    for (std::size_t i = 0; i < m_; ++i) {
      basis_[i] = static_cast<long>(n_ + i);
      d_(i, n_) = -1;
      d_(i, n_ + 1) = b[i];
    }
    for (std::size_t j = 0; j < n_; ++j) {
      nonbasis_[j] = static_cast<long>(j);
      d_(m_, j) = -c[j];
    }
    nonbasis_[n_] = -1;  // phase-one artificial variable
    d_(m_ + 1, n_) = 1;
  }

  LpResult solve() {
    LpResult res;
    std::size_t r = 0;
    for (std::size_t i = 1; i < m_; ++i)
      if (d_(i, n_ + 1) < d_(r, n_ + 1)) r = i;
    if (m_ > 0 && d_(r, n_ + 1) < 0) {
      pivot(r, n_);
      if (!run(1) || d_(m_ + 1, n_ + 1) < 0) {
        res.status = LpStatus::Infeasible;
        return res;
      }
      for (std::size_t i = 0; i < m_; ++i)
        if (basis_[i] == -1) {
          std::optional<std::size_t> s;
          for (std::size_t j = 0; j <= n_; ++j)
            if (d_(i, j) != 0 && (!s || nonbasis_[j] < nonbasis_[*s])) s = j;
          if (s) pivot(i, *s);
        }
    }
    if (!run(2)) {
      res.status = LpStatus::Unbounded;
      return res;
    }
    res.status = LpStatus::Optimal;
    res.x.assign(n_, Rational(0));
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] >= 0 && static_cast<std::size_t>(basis_[i]) < n_) res.x[basis_[i]] = d_(i, n_ + 1);
    res.value = d_(m_, n_ + 1);
    return res;
  }

 private:
  void pivot(std::size_t r, std::size_t s) {
    const Rational inv = 1 / d_(r, s);
    for (std::size_t i = 0; i < m_ + 2; ++i) {
      if (i == r || d_(i, s) == 0) continue;
      const Rational factor = d_(i, s) * inv;
      for (std::size_t j = 0; j < n_ + 2; ++j)
        if (j != s && d_(r, j) != 0) d_(i, j) -= d_(r, j) * factor;
    }
    for (std::size_t j = 0; j < n_ + 2; ++j)
      if (j != s) d_(r, j) *= inv;
    for (std::size_t i = 0; i < m_ + 2; ++i)
      if (i != r) d_(i, s) *= -inv;
    d_(r, s) = inv;
    std::swap(basis_[r], nonbasis_[s]);
  }

  bool run(int phase) {
    const std::size_t x = phase == 1 ? m_ + 1 : m_;
    while (true) {
      std::optional<std::size_t> s;
      for (std::size_t j = 0; j <= n_; ++j) {
        if (phase == 2 && nonbasis_[j] == -1) continue;
        if (d_(x, j) < 0 && (!s || nonbasis_[j] < nonbasis_[*s])) s = j;
      }
      if (!s) return true;
      std::optional<std::size_t> r;
      Rational best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (d_(i, *s) <= 0) continue;
        Rational ratio = d_(i, n_ + 1) / d_(i, *s);
        if (!r || ratio < best || (ratio == best && basis_[i] < basis_[*r])) {
          r = i;
          best = ratio;
        }
      }
      if (!r) return false;
      pivot(*r, *s);
    }
  }

  std::size_t m_, n_;
  std::vector<long> basis_, nonbasis_;
  RationalMatrix d_;
};

}  // namespace toricq
