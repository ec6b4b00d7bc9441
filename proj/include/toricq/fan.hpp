#pragma once

#include "toricq/errors.hpp"
#include "toricq/lp.hpp"
#include "toricq/smith.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace toricq {

/// Sorted list of 0-based ray indices.
using Cone = std::vector<int>;
using RaySet = std::vector<int>;

struct Fan {
  int lattice_rank = 0;
  std::vector<IntPoint> rays;
  std::vector<Cone> max_cones;

  int ray_count() const { return static_cast<int>(rays.size()); }
  friend bool operator==(const Fan&, const Fan&) = default;
};

struct FanProperties {
  bool simplicial = false;
  bool complete = false;
  bool smooth = false;
  friend bool operator==(const FanProperties&, const FanProperties&) = default;
};

inline std::string cone_name(const Cone& c) {
  if (c.empty()) return "()";
  std::string s = "(";
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i] + 1);
  return s + ")";
}

inline bool is_subset(const Cone& small, const Cone& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

inline Cone intersect(const Cone& a, const Cone& b) {
  Cone out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline IntMatrix cone_matrix(const Fan& fan, const Cone& c) {
  IntMatrix m(c.size(), static_cast<std::size_t>(fan.lattice_rank));
  for (std::size_t i = 0; i < c.size(); ++i)
    for (int j = 0; j < fan.lattice_rank; ++j) m(i, j) = to_integer(fan.rays[c[i]][j]);
  return m;
}

/// Every face of every maximal cone (including the zero cone), ordered by
/// dimension and then lexicographically.
inline std::vector<Cone> all_cones(const Fan& fan) {
  std::set<Cone> faces;
  for (const auto& sigma : fan.max_cones) {
    const std::size_t k = sigma.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
      Cone f;
      for (std::size_t i = 0; i < k; ++i)
        if (mask >> i & 1) f.push_back(sigma[i]);
      faces.insert(f);
    }
  }
  std::vector<Cone> out(faces.begin(), faces.end());
  std::stable_sort(out.begin(), out.end(), [](const Cone& a, const Cone& b) { return a.size() < b.size(); });
  return out;
}

inline bool is_cone_of(const Fan& fan, const Cone& tau) {
  return std::any_of(fan.max_cones.begin(), fan.max_cones.end(),
                     [&](const Cone& s) { return is_subset(tau, s); });
}

namespace detail {

// Two simplicial cones meet in their common face iff some linear form
// vanishes on the common rays and separates the remaining rays strictly.
inline bool meet_properly(const Fan& fan, const Cone& a, const Cone& b) {
  const Cone common = intersect(a, b);
  Polyhedron p(static_cast<std::size_t>(fan.lattice_rank));
  auto q = [&](int ray) { return to_qvector(fan.rays[ray]); };
  for (int r : common) p.add_equality(q(r), 0);
  for (int r : a)
    if (!std::binary_search(common.begin(), common.end(), r)) {
      QVector n = q(r);
      for (auto& x : n) x = -x;
      p.add_strict(std::move(n), 0);
    }
  for (int r : b)
    if (!std::binary_search(common.begin(), common.end(), r)) p.add_strict(q(r), 0);
  return lp_strict_feasible(p).feasible;
}

}  // namespace detail

/// Validates the fan. Structural problems always throw InvalidFan; failure
/// of completeness only throws when require_complete is set.
inline FanProperties validate(const Fan& fan, bool require_complete = false) {
  const int n = fan.lattice_rank;
  if (n < 0) fail(ErrorKind::InvalidFan, "negative lattice rank");
  for (std::size_t i = 0; i < fan.rays.size(); ++i) {
    const auto& u = fan.rays[i];
    if (static_cast<int>(u.size()) != n)
      fail(ErrorKind::InvalidFan, "ray " + std::to_string(i + 1) + " has wrong dimension");
    const auto g = gcd_of(u);
    if (g == 0) fail(ErrorKind::InvalidFan, "ray " + std::to_string(i + 1) + " is zero");
    if (g != 1) fail(ErrorKind::InvalidFan, "ray " + std::to_string(i + 1) + " is not primitive");
    for (std::size_t j = 0; j < i; ++j)
      if (fan.rays[j] == u)
        fail(ErrorKind::InvalidFan, "rays " + std::to_string(j + 1) + " and " + std::to_string(i + 1) + " coincide");
  }
  if (fan.max_cones.empty()) fail(ErrorKind::InvalidFan, "no maximal cones");
  std::vector<bool> used(fan.rays.size(), false);
  for (const auto& sigma : fan.max_cones) {
    if (!std::is_sorted(sigma.begin(), sigma.end()) || std::adjacent_find(sigma.begin(), sigma.end()) != sigma.end())
      fail(ErrorKind::InvalidFan, "cone " + cone_name(sigma) + " must list distinct indices in increasing order");
    for (int r : sigma) {
      if (r < 0 || r >= fan.ray_count()) fail(ErrorKind::InvalidFan, "cone " + cone_name(sigma) + " has a bad ray index");
      used[r] = true;
    }
    if (rank(cone_matrix(fan, sigma)) != sigma.size())
      fail(ErrorKind::InvalidFan, "cone " + cone_name(sigma) + " is not simplicial");
  }
  for (std::size_t i = 0; i < used.size(); ++i)
    if (!used[i]) fail(ErrorKind::InvalidFan, "ray " + std::to_string(i + 1) + " lies in no cone");
  for (std::size_t i = 0; i < fan.max_cones.size(); ++i)
    for (std::size_t j = i + 1; j < fan.max_cones.size(); ++j) {
      const auto &a = fan.max_cones[i], &b = fan.max_cones[j];
      if (is_subset(a, b) || is_subset(b, a))
        fail(ErrorKind::InvalidFan, "cone " + cone_name(a) + " and " + cone_name(b) + " are nested");
      if (!detail::meet_properly(fan, a, b))
        fail(ErrorKind::InvalidFan, "cones " + cone_name(a) + " and " + cone_name(b) + " overlap");
    }

  FanProperties props;
  props.simplicial = true;
  props.smooth = std::all_of(fan.max_cones.begin(), fan.max_cones.end(), [&](const Cone& s) {
    if (s.empty()) return true;
    auto snf = smith_normal_form(cone_matrix(fan, s));
    for (const auto& d : snf.diagonal())
      if (d != 1) return false;
    return true;
  });

  std::string why;
  bool complete = true;
  for (const auto& s : fan.max_cones)
    if (static_cast<int>(s.size()) != n) {
      complete = false;
      why = "cone " + cone_name(s) + " is not full-dimensional";
      break;
    }
  if (complete && n > 0) {
    std::map<Cone, int> neighbors;
    for (const auto& s : fan.max_cones)
      for (std::size_t drop = 0; drop < s.size(); ++drop) {
        Cone wall = s;
        wall.erase(wall.begin() + static_cast<std::ptrdiff_t>(drop));
        ++neighbors[wall];
      }
    for (const auto& [wall, count] : neighbors)
      if (count != 2) {
        complete = false;
        why = "wall " + cone_name(wall) + " borders " + std::to_string(count) + " maximal cone(s)";
        break;
      }
  }
  props.complete = complete;
  if (require_complete && !complete) fail(ErrorKind::InvalidFan, "fan is not complete: " + why);
  return props;
}

struct RayImage {
  int index = -1;
  std::int64_t multiplicity = 1;
  friend bool operator==(const RayImage&, const RayImage&) = default;
};

/// Fan of the orbit closure V(tau) in N / (N cap span tau).
struct StarQuotient {
  Fan fan;
  std::vector<std::optional<RayImage>> ray_image;  // indexed by original ray
  IntMatrix projection;                           // (n-k) x n, integral
};

inline StarQuotient star_quotient(const Fan& fan, const Cone& tau) {
  if (!is_cone_of(fan, tau)) fail(ErrorKind::NotACone, cone_name(tau) + " is not a cone of the fan");
  const int n = fan.lattice_rank;
  const int k = static_cast<int>(tau.size());
  StarQuotient out;
  if (k == 0) {
    out.fan = fan;
    out.projection = IntMatrix::identity(static_cast<std::size_t>(n));
    for (int i = 0; i < fan.ray_count(); ++i) out.ray_image.push_back(RayImage{i, 1});
    return out;
  }
  // U T V = S with T having the rays of tau as columns; the trailing rows
  // of U project N onto N / (N cap span tau).
  auto snf = smith_normal_form(cone_matrix(fan, tau).transpose());
  out.projection = IntMatrix(static_cast<std::size_t>(n - k), static_cast<std::size_t>(n));
  for (int i = 0; i < n - k; ++i)
    for (int j = 0; j < n; ++j) out.projection(i, j) = snf.U(k + i, j);

  std::vector<Cone> star;
  for (const auto& s : fan.max_cones)
    if (is_subset(tau, s)) star.push_back(s);
  std::set<int> link;
  for (const auto& s : star)
    for (int r : s)
      if (!std::binary_search(tau.begin(), tau.end(), r)) link.insert(r);

  out.fan.lattice_rank = n - k;
  out.ray_image.assign(fan.rays.size(), std::nullopt);
  for (int r : link) {
    IntPoint img(static_cast<std::size_t>(n - k));
    for (int i = 0; i < n - k; ++i) {
      Integer s = 0;
      for (int j = 0; j < n; ++j) s += out.projection(i, j) * to_integer(fan.rays[r][j]);
      img[i] = to_int64(s);
    }
    const auto g = gcd_of(img);
    for (auto& x : img) x /= g;
    for (std::size_t q = 0; q < out.fan.rays.size(); ++q)
      if (out.fan.rays[q] == img) fail(ErrorKind::InvalidFan, "two rays share an image in the star quotient");
    out.ray_image[r] = RayImage{static_cast<int>(out.fan.rays.size()), g};
    out.fan.rays.push_back(std::move(img));
  }
  for (const auto& s : star) {
    Cone c;
    for (int r : s)
      if (out.ray_image[r]) c.push_back(out.ray_image[r]->index);
    std::sort(c.begin(), c.end());
    out.fan.max_cones.push_back(std::move(c));
  }
  return out;
}

/// Full subcomplex of the fan's simplicial complex on the vertex set S.
/// The empty face is implicit.
struct RaySubcomplex {
  RaySet vertices;
  std::vector<Cone> faces;  // nonempty, ordered by dimension then lexicographically
};

inline RaySubcomplex full_subcomplex(const Fan& fan, RaySet S) {
  std::sort(S.begin(), S.end());
  S.erase(std::unique(S.begin(), S.end()), S.end());
  RaySubcomplex out{S, {}};
  for (auto& c : all_cones(fan))
    if (!c.empty() && is_subset(c, S)) out.faces.push_back(std::move(c));
  return out;
}

/// True iff the graph on S whose edges are the 2-cones inside S is connected.
inline bool subset_connected(const Fan& fan, RaySet S) {
  std::sort(S.begin(), S.end());
  S.erase(std::unique(S.begin(), S.end()), S.end());
  if (S.empty()) fail(ErrorKind::EmptySet, "connectivity of an empty ray set");
  std::map<int, int> parent;
  for (int v : S) parent[v] = v;
  std::function<int(int)> find = [&](int v) { return parent[v] == v ? v : parent[v] = find(parent[v]); };
  for (const auto& c : all_cones(fan))
    if (c.size() == 2 && is_subset(c, S)) parent[find(c[0])] = find(c[1]);
  const int root = find(S.front());
  return std::all_of(S.begin(), S.end(), [&](int v) { return find(v) == root; });
}

}  // namespace toricq
