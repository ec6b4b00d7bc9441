#pragma once

#include "toricq/fan.hpp"
#include "toricq/simplicial.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>

namespace toricq {

class ToricVariety;
using VarietyPtr = std::shared_ptr<const ToricVariety>;

/// Wall between two maximal cones: sigma = wall + {ray}, sigma' = wall + {ray'}.
struct Wall {
  Cone cone;
  int left = -1, right = -1;          // maximal cone indices
  int left_ray = -1, right_ray = -1;  // rays opposite the wall
};

/// N^1 coordinates: Cl(X) = Z^r / im(M) read through the Smith form of the
/// ray matrix. The free coordinates are rows rank.. of U.
struct PicardBasis {
  std::size_t rank = 0;                 // rank of N^1
  IntMatrix free_rows;                  // rank x r
  std::vector<Integer> torsion;         // invariant factors > 1
  IntMatrix torsion_rows;               // one row per torsion factor
  std::vector<QVector> basis_divisors;  // divisor whose class is the k-th basis vector
};

/// Subset S of rays with nonzero H~^{p-1} of its full subcomplex.
struct BadSubset {
  std::uint32_t mask = 0;
  RaySet rays;
  int dimension = 0;
};

struct BadSubsetIndex {
  std::vector<std::vector<BadSubset>> by_degree;  // index p = 0..n
  std::vector<ReducedCohomology> by_mask;         // all 2^r subsets
};

struct OrbitClosure {
  Cone tau;
  VarietyPtr variety;
  std::vector<std::optional<RayImage>> ray_image;
};

inline constexpr int kMaxRaysForSubsets = 20;

inline RaySet rays_of_mask(std::uint32_t mask, int r) {
  RaySet s;
  for (int i = 0; i < r; ++i)
    if (mask >> i & 1) s.push_back(i);
  return s;
}

inline std::uint32_t mask_of(const RaySet& s) {
  std::uint32_t m = 0;
  for (int i : s) m |= std::uint32_t{1} << i;
  return m;
}

/// Validated fan plus derived data. Immutable once built; lazily computed
/// caches are initialized exactly once and never change afterwards.
class ToricVariety : public std::enable_shared_from_this<ToricVariety> {
 public:
  static VarietyPtr create(Fan fan, std::string name = {}) {
    auto props = validate(fan, false);
    return VarietyPtr(new ToricVariety(std::move(fan), props, std::move(name)));
  }

  const Fan& fan() const { return fan_; }
  const FanProperties& properties() const { return props_; }
  const std::string& name() const { return name_; }
  int dim() const { return fan_.lattice_rank; }
  int ray_count() const { return fan_.ray_count(); }
  const IntPoint& ray(int i) const { return fan_.rays[i]; }
  QVector ray_q(int i) const { return to_qvector(fan_.rays[i]); }

  bool complete() const { return props_.complete; }
  void require_complete(const char* what) const {
    if (!props_.complete) fail(ErrorKind::NotComplete, std::string(what) + " needs a complete fan");
  }

  const std::vector<Cone>& cones() const { return cones_; }
  const std::vector<Wall>& walls() const { return walls_; }
  const std::vector<Cone>& max_cones() const { return fan_.max_cones; }
  int max_cone_index(const Cone& c) const {
    for (std::size_t i = 0; i < fan_.max_cones.size(); ++i)
      if (fan_.max_cones[i] == c) return static_cast<int>(i);
    return -1;
  }

  /// Inverse of the matrix whose rows are the rays of maximal cone i.
  const RationalMatrix& max_cone_inverse(std::size_t i) const { return cone_inverse_.at(i); }

  /// r x n matrix with the rays as rows: m -> (<m, u_rho>)_rho.
  const RationalMatrix& ray_matrix() const { return ray_matrix_; }

  const PicardBasis& picard() const {
    std::call_once(picard_once_, [this] { picard_ = compute_picard(); });
    return picard_;
  }

  const BadSubsetIndex& bad_subsets() const {
    std::call_once(bad_once_, [this] { bad_ = compute_bad_subsets(); });
    return bad_;
  }

  std::shared_ptr<const OrbitClosure> orbit_closure(const Cone& tau) const {
    std::lock_guard lock(orbit_mutex_);
    auto it = orbits_.find(tau);
    if (it != orbits_.end()) return it->second;
    auto sq = star_quotient(fan_, tau);
    for (const auto& img : sq.ray_image)
      if (props_.smooth && img && img->multiplicity != 1)
        fail(ErrorKind::InvalidFan, "ray image multiplicity != 1 on a smooth fan");
    std::string child = name_.empty() ? std::string{} : name_ + "/V" + cone_name(tau);
    auto oc = std::make_shared<OrbitClosure>(OrbitClosure{tau, create(std::move(sq.fan), child), std::move(sq.ray_image)});
    orbits_.emplace(tau, oc);
    return oc;
  }

 private:
  ToricVariety(Fan fan, FanProperties props, std::string name)
      : fan_(std::move(fan)), props_(props), name_(std::move(name)) {
    cones_ = all_cones(fan_);
    const auto n = static_cast<std::size_t>(fan_.lattice_rank);
    ray_matrix_ = RationalMatrix(fan_.rays.size(), n);
    for (std::size_t i = 0; i < fan_.rays.size(); ++i)
      for (std::size_t j = 0; j < n; ++j) ray_matrix_(i, j) = make_rational(fan_.rays[i][j]);
    for (const auto& s : fan_.max_cones) {
      if (s.size() == n) cone_inverse_.push_back(inverse(to_rational(cone_matrix(fan_, s))));
      else cone_inverse_.emplace_back();
    }
    if (props_.complete && n > 0) {
      std::map<Cone, Wall> by_cone;
      for (std::size_t i = 0; i < fan_.max_cones.size(); ++i) {
        const auto& s = fan_.max_cones[i];
        for (std::size_t drop = 0; drop < s.size(); ++drop) {
          Cone w = s;
          w.erase(w.begin() + static_cast<std::ptrdiff_t>(drop));
          auto& wall = by_cone[w];
          wall.cone = w;
          if (wall.left < 0) {
            wall.left = static_cast<int>(i);
            wall.left_ray = s[drop];
          } else {
            wall.right = static_cast<int>(i);
            wall.right_ray = s[drop];
          }
        }
      }
      for (auto& [c, w] : by_cone) walls_.push_back(std::move(w));
    }
  }

  PicardBasis compute_picard() const {
    const std::size_t r = fan_.rays.size();
    const std::size_t n = static_cast<std::size_t>(fan_.lattice_rank);
    auto snf = smith_normal_form(int_matrix_from_rows(fan_.rays, n));
    const std::size_t rk = snf.rank();
    PicardBasis pb;
    pb.rank = r - rk;
    pb.free_rows = IntMatrix(pb.rank, r);
    for (std::size_t i = 0; i < pb.rank; ++i)
      for (std::size_t j = 0; j < r; ++j) pb.free_rows(i, j) = snf.U(rk + i, j);
    std::vector<std::size_t> tors;
    for (std::size_t i = 0; i < rk; ++i)
      if (snf.S(i, i) > 1) tors.push_back(i);
    pb.torsion_rows = IntMatrix(tors.size(), r);
    for (std::size_t t = 0; t < tors.size(); ++t) {
      pb.torsion.push_back(snf.S(tors[t], tors[t]));
      for (std::size_t j = 0; j < r; ++j) pb.torsion_rows(t, j) = snf.U(tors[t], j);
    }
    for (std::size_t i = 0; i < pb.rank; ++i) {
      QVector d(r);
      for (std::size_t j = 0; j < r; ++j) d[j] = Rational(snf.U_inv(j, rk + i));
      pb.basis_divisors.push_back(std::move(d));
    }
    return pb;
  }

  BadSubsetIndex compute_bad_subsets() const {
    const int r = ray_count();
    if (r > kMaxRaysForSubsets)
      fail(ErrorKind::InvalidArgument, "subset enumeration supports at most " + std::to_string(kMaxRaysForSubsets) + " rays");
    BadSubsetIndex idx;
    idx.by_degree.resize(static_cast<std::size_t>(dim() + 1));
    const std::uint32_t total = std::uint32_t{1} << r;
    idx.by_mask.reserve(total);
    for (std::uint32_t mask = 0; mask < total; ++mask) {
      RaySubcomplex sub{rays_of_mask(mask, r), {}};
      for (const auto& c : cones_)
        if (!c.empty() && (mask_of(c) & ~mask) == 0) sub.faces.push_back(c);
      auto rc = reduced_cohomology(sub, dim() - 1);
      for (int p = 0; p <= dim(); ++p)
        if (int h = rc.at(p - 1); h > 0) idx.by_degree[p].push_back({mask, sub.vertices, h});
      idx.by_mask.push_back(std::move(rc));
    }
    return idx;
  }

  Fan fan_;
  FanProperties props_;
  std::string name_;
  std::vector<Cone> cones_;
  std::vector<Wall> walls_;
  std::vector<RationalMatrix> cone_inverse_;
  RationalMatrix ray_matrix_;

  mutable std::once_flag picard_once_, bad_once_;
  mutable PicardBasis picard_;
  mutable BadSubsetIndex bad_;
  mutable std::mutex orbit_mutex_;
  mutable std::map<Cone, std::shared_ptr<const OrbitClosure>> orbits_;
};

}  // namespace toricq
