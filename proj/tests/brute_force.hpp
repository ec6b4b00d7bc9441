#pragma once

// Independent reference implementations used only by tests. Nothing here
// calls the library's LP, lattice walker, or simplicial cohomology: ranks are
// taken mod a large prime and the weight box comes from Cramer's rule.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <set>
#include <vector>

namespace brute {

using Vec = std::vector<std::int64_t>;
using Face = std::vector<int>;

struct FanData {
  int n = 0;
  std::vector<Vec> rays;
  std::vector<Face> max_cones;
};

inline constexpr std::int64_t kPrime = 1000003;

inline std::int64_t mod_pow(std::int64_t b, std::int64_t e) {
  std::int64_t r = 1;
  b %= kPrime;
  if (b < 0) b += kPrime;
  while (e) {
    if (e & 1) r = r * b % kPrime;
    b = b * b % kPrime;
    e >>= 1;
  }
  return r;
}

inline int rank_mod_p(std::vector<std::vector<std::int64_t>> m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size(), cols = m[0].size();
  int rk = 0;
  for (std::size_t c = 0; c < cols && static_cast<std::size_t>(rk) < rows; ++c) {
    std::size_t piv = static_cast<std::size_t>(rk);
    while (piv < rows && m[piv][c] % kPrime == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[static_cast<std::size_t>(rk)]);
    auto& pr = m[static_cast<std::size_t>(rk)];
    const std::int64_t inv = mod_pow((pr[c] % kPrime + kPrime) % kPrime, kPrime - 2);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == static_cast<std::size_t>(rk)) continue;
      const std::int64_t f = ((m[r][c] % kPrime + kPrime) % kPrime) * inv % kPrime;
      if (!f) continue;
      for (std::size_t k = 0; k < cols; ++k) m[r][k] = ((m[r][k] - f * pr[k]) % kPrime + kPrime) % kPrime;
    }
    ++rk;
  }
  return rk;
}

inline std::set<Face> all_faces(const FanData& f) {
  std::set<Face> out;
  for (const auto& c : f.max_cones) {
    const int k = static_cast<int>(c.size());
    for (int mask = 0; mask < (1 << k); ++mask) {
      Face s;
      for (int i = 0; i < k; ++i)
        if (mask >> i & 1) s.push_back(c[i]);
      std::sort(s.begin(), s.end());
      out.insert(s);
    }
  }
  return out;
}

/// dims[k+1] = dim H~^k of the full subcomplex on S, k = -1..n-1.
inline std::vector<int> reduced_cohomology(const std::set<Face>& faces, const std::vector<int>& S, int n) {
  std::vector<std::vector<Face>> by_dim(static_cast<std::size_t>(n + 1));  // index k+1 for k-simplices
  for (const auto& f : faces) {
    if (!std::all_of(f.begin(), f.end(), [&](int v) { return std::find(S.begin(), S.end(), v) != S.end(); })) continue;
    by_dim[f.size()].push_back(f);  // the empty face sits at index 0 (k = -1)
  }
  // coboundary d_k: C^k -> C^{k+1}, matrix rows = (k+1)-simplices
  std::vector<int> rank_d(static_cast<std::size_t>(n + 1), 0);
  for (int k = -1; k < n - 1; ++k) {
    const auto& lo = by_dim[static_cast<std::size_t>(k + 1)];
    const auto& hi = by_dim[static_cast<std::size_t>(k + 2)];
    if (lo.empty() || hi.empty()) continue;
    std::map<Face, std::size_t> idx;
    for (std::size_t i = 0; i < lo.size(); ++i) idx[lo[i]] = i;
    std::vector<std::vector<std::int64_t>> m(hi.size(), std::vector<std::int64_t>(lo.size(), 0));
    for (std::size_t r = 0; r < hi.size(); ++r)
      for (std::size_t j = 0; j < hi[r].size(); ++j) {
        Face sub = hi[r];
        sub.erase(sub.begin() + static_cast<long>(j));
        m[r][idx.at(sub)] = (j % 2 == 0) ? 1 : kPrime - 1;
      }
    rank_d[static_cast<std::size_t>(k + 1)] = rank_mod_p(m);
  }
  std::vector<int> dims(static_cast<std::size_t>(n + 1), 0);
  for (int k = -1; k < n; ++k) {
    const int c = static_cast<int>(by_dim[static_cast<std::size_t>(k + 1)].size());
    const int out = rank_d[static_cast<std::size_t>(k + 1)];
    const int in = k >= 0 ? rank_d[static_cast<std::size_t>(k)] : 0;
    dims[static_cast<std::size_t>(k + 1)] = c - out - in;
  }
  return dims;
}

inline std::int64_t det(const std::vector<Vec>& a) {
  const std::size_t n = a.size();
  if (n == 1) return a[0][0];
  if (n == 2) return a[0][0] * a[1][1] - a[0][1] * a[1][0];
  std::int64_t d = 0;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Vec> minor;
    for (std::size_t i = 1; i < n; ++i) {
      Vec row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(a[i][k]);
      minor.push_back(row);
    }
    d += (j % 2 == 0 ? 1 : -1) * a[0][j] * det(minor);
  }
  return d;
}

/// Every vertex of every region {<m,u> >= -a or <= -a-1 per ray} solves an
/// n x n subsystem with right-hand side entries of size <= max|a|+1; Cramer
/// bounds each coordinate by sum_j |cofactor| * b / |det|.
inline std::int64_t weight_box(const FanData& f, const Vec& a) {
  const int n = f.n, r = static_cast<int>(f.rays.size());
  std::int64_t b = 0;
  for (auto x : a) b = std::max<std::int64_t>(b, std::llabs(x) + 1);
  std::int64_t bound = 0;
  std::vector<int> pick(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pick[static_cast<std::size_t>(i)] = i;
  while (true) {
    std::vector<Vec> A;
    for (int i : pick) A.push_back(f.rays[static_cast<std::size_t>(i)]);
    const std::int64_t d = det(A);
    if (d != 0) {
      // coordinate i of A^{-1} rhs: sum_j cof(j,i) rhs_j / d
      for (int i = 0; i < n; ++i) {
        std::int64_t s = 0;
        for (int j = 0; j < n; ++j) {
          auto Ai = A;
          for (int k = 0; k < n; ++k) Ai[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] = (k == j);
          s += std::llabs(det(Ai)) * b;
        }
        bound = std::max<std::int64_t>(bound, s / std::llabs(d) + 1);
      }
    }
    int k = n - 1;
    while (k >= 0 && pick[static_cast<std::size_t>(k)] == r - n + k) --k;
    if (k < 0) break;
    ++pick[static_cast<std::size_t>(k)];
    for (int j = k + 1; j < n; ++j) pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
  }
  return bound;
}

/// h^p(X, O(sum a_i F_i)) by summing dim H~^{p-1} of the negative pattern
/// over every weight in the certified box.
inline std::vector<std::int64_t> cohomology(const FanData& f, const Vec& a) {
  const auto faces = all_faces(f);
  const int n = f.n;
  const std::int64_t B = weight_box(f, a);
  std::map<std::vector<int>, std::vector<int>> cache;
  std::vector<std::int64_t> h(static_cast<std::size_t>(n + 1), 0);
  Vec m(static_cast<std::size_t>(n), -B);
  while (true) {
    std::vector<int> S;
    for (std::size_t i = 0; i < f.rays.size(); ++i) {
      std::int64_t v = a[i];
      for (int k = 0; k < n; ++k) v += m[static_cast<std::size_t>(k)] * f.rays[i][static_cast<std::size_t>(k)];
      if (v < 0) S.push_back(static_cast<int>(i));
    }
    auto it = cache.find(S);
    if (it == cache.end()) it = cache.emplace(S, reduced_cohomology(faces, S, n)).first;
    for (int p = 0; p <= n; ++p) h[static_cast<std::size_t>(p)] += it->second[static_cast<std::size_t>(p)];
    int k = 0;
    while (k < n && m[static_cast<std::size_t>(k)] == B) m[static_cast<std::size_t>(k++)] = -B;
    if (k == n) break;
    ++m[static_cast<std::size_t>(k)];
  }
  return h;
}

}  // namespace brute
