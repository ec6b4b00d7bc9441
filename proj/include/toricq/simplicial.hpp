#pragma once

#include "toricq/fan.hpp"

#include <map>
#include <vector>

namespace toricq {

/// Reduced cohomology dimensions over Q. Degree k is stored at index k + 1,
/// so index 0 holds H~^{-1}.
struct ReducedCohomology {
  std::vector<int> dims;

  int at(int degree) const {
    const int idx = degree + 1;
    return (idx >= 0 && idx < static_cast<int>(dims.size())) ? dims[idx] : 0;
  }
  bool acyclic() const {
    for (int d : dims)
      if (d != 0) return false;
    return true;
  }
};

/// H~^k(C) = dim C^k - rank(d^k) - rank(d^{k-1}) with C^{-1} = Q spanned by
/// the empty face. max_degree bounds the reported range (n - 1 for a rank-n fan).
inline ReducedCohomology reduced_cohomology(const RaySubcomplex& c, int max_degree) {
  // faces_by_dim[k + 1] lists the k-dimensional faces (k = -1 is the empty face)
  std::vector<std::vector<Cone>> faces_by_dim(static_cast<std::size_t>(max_degree + 2));
  faces_by_dim[0].push_back({});
  for (const auto& f : c.faces) {
    const std::size_t k = f.size();  // dimension k - 1, stored at index k
    if (k < faces_by_dim.size()) faces_by_dim[k].push_back(f);
  }
  // rank of the coboundary from degree k to k + 1 is stored at index k + 1
  std::vector<std::size_t> cob_rank(faces_by_dim.size(), 0);
  for (std::size_t k = 0; k + 1 < faces_by_dim.size(); ++k) {
    const auto& lower = faces_by_dim[k];
    const auto& upper = faces_by_dim[k + 1];
    if (lower.empty() || upper.empty()) continue;
    std::map<Cone, std::size_t> index;
    for (std::size_t j = 0; j < lower.size(); ++j) index[lower[j]] = j;
    RationalMatrix d(upper.size(), lower.size());
    for (std::size_t i = 0; i < upper.size(); ++i) {
      const auto& f = upper[i];
      for (std::size_t drop = 0; drop < f.size(); ++drop) {
        Cone facet = f;
        facet.erase(facet.begin() + static_cast<std::ptrdiff_t>(drop));
        d(i, index.at(facet)) = (drop % 2 == 0) ? 1 : -1;
      }
    }
    cob_rank[k] = rank(d);
  }
  ReducedCohomology out;
  out.dims.resize(faces_by_dim.size());
  for (std::size_t k = 0; k < faces_by_dim.size(); ++k) {
    const std::size_t prev = k > 0 ? cob_rank[k - 1] : 0;
    out.dims[k] = static_cast<int>(faces_by_dim[k].size() - cob_rank[k] - prev);
  }
  return out;
}

}  // namespace toricq
