#pragma once

#include "toricq/divisor.hpp"

#include <optional>
#include <vector>

namespace toricq {

/// Reduced cohomology of a full subcomplex of the fan (degrees -1..n-1).
inline ReducedCohomology reduced_cohomology(const ToricVariety& X, const RaySubcomplex& c) {
  return reduced_cohomology(c, X.dim() - 1);
}

/// P_S(D) = {m : <m,u_rho> + a_rho < 0 for rho in S, >= 0 otherwise}.
inline Polyhedron weight_region(const ToricDivisor& D, std::uint32_t mask) {
  const auto& X = *D.variety();
  Polyhedron p(static_cast<std::size_t>(X.dim()));
  for (int i = 0; i < X.ray_count(); ++i) {
    if (mask >> i & 1) p.add_strict(X.ray_q(i), D[i]);
    else p.add_weak(X.ray_q(i), D[i]);
  }
  return p;
}

/// The section polytope P_D (weak rows only).
inline Polyhedron section_polytope(const ToricDivisor& D) { return weight_region(D, 0); }

struct CohomologyWitness {
  RaySet subset;
  Integer weight_count;      // #(P_S(D) cap M)
  int reduced_dim = 0;       // dim H~^{p-1}(S)
  IntPoint sample_weight;    // lexicographically first weight of P_S(D)
};

struct CohomologyTable {
  std::vector<Integer> dims;  // h^0..h^n; degrees outside the requested range stay 0
  std::vector<std::vector<CohomologyWitness>> witnesses;
  int min_degree = 0;

  Integer euler_characteristic() const {
    Integer chi = 0;
    for (std::size_t p = 0; p < dims.size(); ++p) chi += (p % 2 == 0) ? dims[p] : Integer(-dims[p]);
    return chi;
  }
};

/// dim H^p(X, O(D)) = sum_S #(P_S(D) cap M) * dim H~^{p-1}(S), summed only
/// over subsets with nonzero reduced cohomology. Degrees below min_degree are
/// skipped (their regions can be large and scan mode never needs them).
inline CohomologyTable cohomology_dims(const ToricDivisor& D, int min_degree = 0) {
  const auto& X = *D.variety();
  X.require_complete("cohomology_dims");
  if (!D.integral()) fail(ErrorKind::NotIntegral, "cohomology needs an integral divisor");
  const auto& bad = X.bad_subsets();
  CohomologyTable t;
  t.min_degree = min_degree;
  t.dims.assign(static_cast<std::size_t>(X.dim() + 1), Integer(0));
  t.witnesses.resize(t.dims.size());
  for (int p = std::max(0, min_degree); p <= X.dim(); ++p)
    for (const auto& s : bad.by_degree[p]) {
      auto region = weight_region(D, s.mask);
      auto summary = summarize_lattice_points(region);
      if (!summary.first) continue;
      t.dims[p] += summary.count * s.dimension;
      t.witnesses[p].push_back({s.rays, summary.count, s.dimension, *summary.first});
    }
  return t;
}

/// Certificate that H^p(X, O(kD)) != 0 for infinitely many k: a rational
/// direction y strictly inside Q_S(D), so k*y is a contributing weight
/// whenever k clears its denominators.
struct AsymptoticCertificate {
  int degree = 0;
  RaySet subset;
  int reduced_dim = 0;
  QVector direction;
};

inline std::optional<AsymptoticCertificate> asymptotic_nonvanishing(const ToricDivisor& D, int p) {
  const auto& X = *D.variety();
  X.require_complete("asymptotic_nonvanishing");
  if (p < 0 || p > X.dim()) return std::nullopt;
  for (const auto& s : X.bad_subsets().by_degree[p]) {
    auto f = lp_strict_feasible(weight_region(D, s.mask));
    if (f.feasible) return AsymptoticCertificate{p, s.rays, s.dimension, f.witness};
  }
  return std::nullopt;
}

}  // namespace toricq
