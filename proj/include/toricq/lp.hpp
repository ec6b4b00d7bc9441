#pragma once

#include "toricq/errors.hpp"
#include "toricq/simplex.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace toricq {

/// One affine row  <normal, y> + offset.
struct AffineRow {
  QVector normal;
  Rational offset;

  Rational eval(const QVector& y) const { return dot(normal, y) + offset; }
  Rational eval(const IntPoint& y) const { return dot(normal, y) + offset; }
};

/// { y : <y,u> + c < 0 for strict rows, <y,u> + c >= 0 for weak rows }.
struct Polyhedron {
  std::size_t dim = 0;
  std::vector<AffineRow> strict_rows;
  std::vector<AffineRow> weak_rows;

  explicit Polyhedron(std::size_t d = 0) : dim(d) {}

  void add_strict(QVector normal, Rational offset) { strict_rows.push_back({std::move(normal), std::move(offset)}); }
  void add_weak(QVector normal, Rational offset) { weak_rows.push_back({std::move(normal), std::move(offset)}); }
  /// <y,u> + c == 0, as a pair of weak rows.
  void add_equality(const QVector& normal, const Rational& offset) {
    add_weak(normal, offset);
    QVector neg(normal.size());
    for (std::size_t i = 0; i < normal.size(); ++i) neg[i] = -normal[i];
    add_weak(std::move(neg), -offset);
  }

  template <class Point>
  bool contains(const Point& y) const {
    for (const auto& r : strict_rows)
      if (r.eval(y) >= 0) return false;
    for (const auto& r : weak_rows)
      if (r.eval(y) < 0) return false;
    return true;
  }

  /// Strict rows relaxed to <y,u> + c <= 0.
  Polyhedron closure() const {
    Polyhedron c(dim);
    c.weak_rows = weak_rows;
    for (const auto& r : strict_rows) {
      QVector neg(r.normal.size());
      for (std::size_t i = 0; i < r.normal.size(); ++i) neg[i] = -r.normal[i];
      c.add_weak(std::move(neg), -r.offset);
    }
    return c;
  }

  void check() const {
    for (const auto* rows : {&strict_rows, &weak_rows})
      for (const auto& r : *rows)
        if (r.normal.size() != dim) fail(ErrorKind::InvalidArgument, "polyhedron row dimension mismatch");
  }
};

struct Feasibility {
  bool feasible = false;
  QVector witness;  // meaningful only when feasible
};

namespace detail {

// Free variables y are split as y+ - y-; the extra last variable is the
// slack t (capped at 1), shifting strict rows and, if requested, weak rows.
inline LpResult max_slack(const Polyhedron& p, bool shift_weak) {
  const std::size_t d = p.dim;
  const std::size_t nv = 2 * d + 1;
  const std::size_t m = p.strict_rows.size() + p.weak_rows.size() + 1;
  RationalMatrix A(m, nv);
  QVector b(m), c(nv);
  std::size_t row = 0;
  for (const auto& r : p.strict_rows) {
    // <y,u> + t <= -c
    for (std::size_t j = 0; j < d; ++j) {
      A(row, j) = r.normal[j];
      A(row, d + j) = -r.normal[j];
    }
    A(row, 2 * d) = 1;
    b[row++] = -r.offset;
  }
  for (const auto& r : p.weak_rows) {
    // -<y,w> (+ t) <= c
    for (std::size_t j = 0; j < d; ++j) {
      A(row, j) = -r.normal[j];
      A(row, d + j) = r.normal[j];
    }
    A(row, 2 * d) = shift_weak ? 1 : 0;
    b[row++] = r.offset;
  }
  A(row, 2 * d) = 1;
  b[row] = 1;
  c[2 * d] = 1;
  return SimplexSolver(A, b, c).solve();
}

inline QVector unsplit(const QVector& x, std::size_t d) {
  QVector y(d);
  for (std::size_t j = 0; j < d; ++j) y[j] = x[j] - x[d + j];
  return y;
}

}  // namespace detail

/// Decides whether P has a point satisfying every strict row strictly and
/// every weak row weakly. Witnesses prefer interior points: the slack is
/// first maximized on all rows, falling back to strict rows only when the
/// weak rows have empty interior.
inline Feasibility lp_strict_feasible(const Polyhedron& p) {
  p.check();
  auto centered = detail::max_slack(p, true);
  if (centered.status == LpStatus::Optimal && centered.value > 0)
    return {true, detail::unsplit(centered.x, p.dim)};
  auto plain = detail::max_slack(p, false);
  if (plain.status != LpStatus::Optimal) return {false, {}};
  if (p.strict_rows.empty() || plain.value > 0) return {true, detail::unsplit(plain.x, p.dim)};
  return {false, {}};
}

/// Optimum of <objective, y> over the closure of P (strict rows relaxed).
struct LinearOptimum {
  LpStatus status = LpStatus::Infeasible;
  Rational value;
  QVector argmax;
};

inline LinearOptimum maximize_over_closure(const Polyhedron& p, const QVector& objective) {
  const Polyhedron cl = p.closure();
  const std::size_t d = p.dim;
  RationalMatrix A(cl.weak_rows.size(), 2 * d);
  QVector b(cl.weak_rows.size()), c(2 * d);
  for (std::size_t i = 0; i < cl.weak_rows.size(); ++i) {
    const auto& r = cl.weak_rows[i];
    for (std::size_t j = 0; j < d; ++j) {
      A(i, j) = -r.normal[j];
      A(i, d + j) = r.normal[j];
    }
    b[i] = r.offset;
  }
  for (std::size_t j = 0; j < d; ++j) {
    c[j] = objective[j];
    c[d + j] = -objective[j];
  }
  auto res = SimplexSolver(A, b, c).solve();
  LinearOptimum out;
  out.status = res.status;
  if (res.status == LpStatus::Optimal) {
    out.value = res.value;
    out.argmax = detail::unsplit(res.x, d);
  }
  return out;
}

struct Box {
  IntPoint lo, hi;
  bool empty = false;
};

/// Integer bounding box of P; throws UnboundedRegion when some coordinate is
/// unbounded on the (nonempty) closure.
inline Box integer_bounding_box(const Polyhedron& p) {
  p.check();
  Box box;
  box.lo.resize(p.dim);
  box.hi.resize(p.dim);
  for (std::size_t i = 0; i < p.dim; ++i) {
    QVector e(p.dim, Rational(0));
    e[i] = 1;
    auto up = maximize_over_closure(p, e);
    if (up.status == LpStatus::Infeasible) return {{}, {}, true};
    if (up.status == LpStatus::Unbounded)
      fail(ErrorKind::UnboundedRegion, "coordinate " + std::to_string(i) + " unbounded above");
    e[i] = -1;
    auto down = maximize_over_closure(p, e);
    if (down.status == LpStatus::Unbounded)
      fail(ErrorKind::UnboundedRegion, "coordinate " + std::to_string(i) + " unbounded below");
    box.hi[i] = to_int64(floor_of(up.value));
    box.lo[i] = to_int64(ceil_of(-down.value));
    if (box.lo[i] > box.hi[i]) box.empty = true;
  }
  return box;
}

namespace detail {

// Rows scaled to integers: sign * (<y,u> + c) with strictness kept.
struct IntRow {
  IntPoint normal;
  std::int64_t offset;
  bool strict;
};

inline IntRow to_int_row(const AffineRow& r, bool strict) {
  QVector all = r.normal;
  all.push_back(r.offset);
  Integer den = common_denominator(all);
  IntRow out{IntPoint(r.normal.size()), 0, strict};
  for (std::size_t i = 0; i < r.normal.size(); ++i) {
    Rational v = r.normal[i] * den;
    out.normal[i] = to_int64(v.get_num());
  }
  out.offset = to_int64(Rational(r.offset * den).get_num());
  return out;
}

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b, r = a % b;
  return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}
inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

// Walks integer points of P in lexicographic order. The first dim-1
// coordinates range over the box; the last is solved exactly per prefix.
// visit(prefix, lo, hi) receives the admissible range of the last coordinate;
// returning false stops the walk.
template <class Visit>
void walk_lattice(const Polyhedron& p, const Box& box, Visit&& visit) {
  std::vector<IntRow> rows;
  for (const auto& r : p.strict_rows) rows.push_back(to_int_row(r, true));
  for (const auto& r : p.weak_rows) rows.push_back(to_int_row(r, false));
  const std::size_t d = p.dim;
  if (d == 0) {
    IntPoint empty;
    for (const auto& r : rows)
      if (r.strict ? !(r.offset < 0) : !(r.offset >= 0)) return;
    visit(empty, 0, 0);
    return;
  }
  IntPoint y(box.lo);
  // partial[i] = offset + sum_{k < d-1} normal[k] * y[k]
  while (true) {
    std::int64_t lo = box.lo[d - 1], hi = box.hi[d - 1];
    bool ok = true;
    for (const auto& r : rows) {
      std::int64_t s = r.offset;
      for (std::size_t k = 0; k + 1 < d; ++k) s += r.normal[k] * y[k];
      const std::int64_t a = r.normal[d - 1];
      if (a == 0) {
        if (r.strict ? !(s < 0) : !(s >= 0)) {
          ok = false;
          break;
        }
        continue;
      }
      // strict: a*z + s < 0 ; weak: a*z + s >= 0
      if (r.strict) {
        if (a > 0) hi = std::min(hi, ceil_div(-s, a) - 1);
        else lo = std::max(lo, floor_div(-s, a) + 1);
      } else {
        if (a > 0) lo = std::max(lo, ceil_div(-s, a));
        else hi = std::min(hi, floor_div(-s, a));
      }
      if (lo > hi) {
        ok = false;
        break;
      }
    }
    if (ok && !visit(y, lo, hi)) return;
    // advance prefix odometer
    std::size_t k = d - 1;
    while (k > 0) {
      --k;
      if (y[k] < box.hi[k]) {
        ++y[k];
        for (std::size_t j = k + 1; j + 1 < d; ++j) y[j] = box.lo[j];
        break;
      }
      if (k == 0) return;
    }
    if (d == 1) return;
  }
}

}  // namespace detail

/// All integer points of P in lexicographic order.
inline std::vector<IntPoint> lattice_points(const Polyhedron& p) {
  std::vector<IntPoint> out;
  Box box = integer_bounding_box(p);
  if (box.empty) return out;
  detail::walk_lattice(p, box, [&](const IntPoint& prefix, std::int64_t lo, std::int64_t hi) {
    for (std::int64_t z = lo; z <= hi; ++z) {
      IntPoint pt = prefix;
      if (!pt.empty()) pt.back() = z;
      out.push_back(std::move(pt));
    }
    return true;
  });
  return out;
}

inline Integer count_lattice_points(const Polyhedron& p) {
  Integer total = 0;
  Box box = integer_bounding_box(p);
  if (box.empty) return total;
  detail::walk_lattice(p, box, [&](const IntPoint&, std::int64_t lo, std::int64_t hi) {
    total += to_integer(hi - lo + 1);
    return true;
  });
  return total;
}

struct LatticeSummary {
  Integer count = 0;
  std::optional<IntPoint> first;
};

/// Count plus the lexicographically first point, from a single walk.
inline LatticeSummary summarize_lattice_points(const Polyhedron& p) {
  LatticeSummary out;
  Box box = integer_bounding_box(p);
  if (box.empty) return out;
  detail::walk_lattice(p, box, [&](const IntPoint& prefix, std::int64_t lo, std::int64_t hi) {
    if (!out.first) {
      IntPoint pt = prefix;
      if (!pt.empty()) pt.back() = lo;
      out.first = std::move(pt);
    }
    out.count += to_integer(hi - lo + 1);
    return true;
  });
  return out;
}

inline std::optional<IntPoint> find_lattice_point(const Polyhedron& p) {
  std::optional<IntPoint> found;
  Box box = integer_bounding_box(p);
  if (box.empty) return found;
  detail::walk_lattice(p, box, [&](const IntPoint& prefix, std::int64_t lo, std::int64_t) {
    IntPoint pt = prefix;
    if (!pt.empty()) pt.back() = lo;
    found = std::move(pt);
    return false;
  });
  return found;
}

}  // namespace toricq
