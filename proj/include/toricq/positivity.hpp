#pragma once

#include "toricq/cohomology.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace toricq {

// ---------------------------------------------------------------------------
// Cone membership

struct ConeFlags {
  bool nef = false;
  bool ample = false;
  bool effective = false;
  bool big = false;
  bool pseudoeffective = false;
  std::optional<Wall> non_nef_wall;    // torus-invariant curve with D.C < 0
  std::optional<Wall> non_ample_wall;  // curve with D.C <= 0
  std::optional<IntPoint> section_weight;
};

/// Bend of psi_D across a wall: <m_sigma, u_rho'> + a_rho' for the ray rho'
/// opposite the wall in the neighbouring cone. Positive means strictly convex.
inline Rational wall_bend(const ToricDivisor& D, const Wall& w) {
  const auto m = local_functional(D, static_cast<std::size_t>(w.left));
  return dot(m, D.variety()->ray(w.right_ray)) + D[w.right_ray];
}

inline ConeFlags classify_cones(const ToricDivisor& D) {
  const auto& X = *D.variety();
  X.require_complete("classify_cones");
  ConeFlags f;
  f.nef = f.ample = true;
  for (const auto& w : X.walls()) {
    const auto bend = wall_bend(D, w);
    if (bend < 0 && f.nef) {
      f.nef = false;
      f.non_nef_wall = w;
    }
    if (bend <= 0 && f.ample) {
      f.ample = false;
      f.non_ample_wall = w;
    }
  }
  const auto P = section_polytope(D);
  f.pseudoeffective = lp_strict_feasible(P).feasible;
  if (f.pseudoeffective) {
    // interior of cone{[F_rho]}: some representative with every a_rho > 0
    Polyhedron strict(P.dim);
    for (const auto& r : P.weak_rows) {
      QVector neg(r.normal);
      for (auto& x : neg) x = -x;
      strict.add_strict(std::move(neg), -r.offset);
    }
    f.big = lp_strict_feasible(strict).feasible;
    f.section_weight = find_lattice_point(P);
    f.effective = f.section_weight.has_value();
  }
  return f;
}

/// An ample divisor: -K when it is ample, otherwise one found by LP over the
/// strict wall inequalities (linear in the coefficients), scaled to be integral.
inline ToricDivisor default_ample(const VarietyPtr& X) {
  X->require_complete("default_ample");
  auto anti = -canonical_divisor(X);
  if (classify_cones(anti).ample) return anti;
  const int r = X->ray_count();
  Polyhedron p(static_cast<std::size_t>(r));
  for (const auto& w : X->walls()) {
    // bend(a) = <m_sigma(a), u_rho'> + a_rho' with m_sigma(a) = -A^{-1} a_sigma
    const auto& sigma = X->max_cones()[w.left];
    const auto& inv = X->max_cone_inverse(static_cast<std::size_t>(w.left));
    QVector normal(static_cast<std::size_t>(r), Rational(0));
    const auto u = X->ray_q(w.right_ray);
    for (std::size_t k = 0; k < sigma.size(); ++k) {
      Rational coeff = 0;
      for (std::size_t j = 0; j < u.size(); ++j) coeff += u[j] * inv(j, k);
      normal[sigma[k]] -= coeff;
    }
    normal[w.right_ray] += 1;
    // bend > 0  <=>  -bend < 0
    for (auto& x : normal) x = -x;
    p.add_strict(std::move(normal), 0);
  }
  auto f = lp_strict_feasible(p);
  if (!f.feasible) fail(ErrorKind::InvalidArgument, "fan is not projective: no ample divisor exists");
  ToricDivisor d(X, f.witness);
  return d * Rational(d.denominator());
}

// ---------------------------------------------------------------------------
// Base loci

/// Union of orbit closures V(tau), listed by their minimal cones. An empty
/// list is the empty locus; the zero cone stands for the whole variety.
struct BaseLocusReport {
  std::vector<Cone> components;
  bool no_sections = false;
  int dimension = -1;
  std::optional<std::int64_t> multiple;        // stabilization multiple used
  std::vector<std::vector<Cone>> chain;        // intermediate loci, when computed
  std::int64_t horizon = 0;

  bool empty() const { return components.empty(); }
  bool whole() const { return components.size() == 1 && components.front().empty(); }
  bool contains(const Cone& tau) const {
    return std::any_of(components.begin(), components.end(), [&](const Cone& c) { return is_subset(c, tau); });
  }
};

namespace detail {

template <class InLocus>
std::vector<Cone> minimal_cones(const ToricVariety& X, InLocus&& in_locus) {
  std::vector<Cone> locus;
  for (const auto& tau : X.cones()) {
    // cones() is ordered by dimension, so faces are decided first
    if (std::any_of(locus.begin(), locus.end(), [&](const Cone& c) { return is_subset(c, tau); })) continue;
    if (in_locus(tau)) locus.push_back(tau);
  }
  return locus;
}

inline int locus_dimension(const ToricVariety& X, const std::vector<Cone>& comps) {
  int d = -1;
  for (const auto& c : comps) d = std::max(d, X.dim() - static_cast<int>(c.size()));
  return d;
}

/// {m in P_D : <m,u_rho> + a_rho = 0 for rho in tau}.
inline Polyhedron tight_face(const ToricDivisor& D, const Cone& tau) {
  auto p = section_polytope(D);
  for (int r : tau) {
    QVector neg = D.variety()->ray_q(r);
    for (auto& x : neg) x = -x;
    p.add_weak(std::move(neg), -D[r]);
  }
  return p;
}

/// True when the face system of D - eps*H has a point for every small eps > 0:
/// strictly feasible at some eps > 0 and weakly feasible at eps = 0 (the
/// feasible eps form an interval).
inline bool tight_for_small_eps(const ToricDivisor& D, const ToricDivisor& H, const Cone& tau) {
  if (!lp_strict_feasible(tight_face(D, tau)).feasible) return false;
  const auto& X = *D.variety();
  const std::size_t n = static_cast<std::size_t>(X.dim());
  Polyhedron p(n + 1);
  for (int i = 0; i < X.ray_count(); ++i) {
    QVector row = X.ray_q(i);
    row.push_back(-H[i]);
    if (std::binary_search(tau.begin(), tau.end(), i)) p.add_equality(row, D[i]);
    else p.add_weak(std::move(row), D[i]);
  }
  QVector eps(n + 1, Rational(0));
  eps[n] = -1;
  p.add_strict(std::move(eps), 0);
  return lp_strict_feasible(p).feasible;
}

}  // namespace detail

/// Bs(|D|): tau is in the base locus iff no weight of P_D is tight on tau.
inline BaseLocusReport base_locus(const ToricDivisor& D) {
  const auto& X = *D.variety();
  X.require_complete("base_locus");
  if (!D.integral()) fail(ErrorKind::NotIntegral, "base_locus needs an integral divisor");
  BaseLocusReport rep;
  rep.multiple = 1;
  if (!find_lattice_point(section_polytope(D))) {
    rep.no_sections = true;
    rep.components = {Cone{}};
  } else {
    rep.components = detail::minimal_cones(X, [&](const Cone& tau) {
      return !find_lattice_point(detail::tight_face(D, tau)).has_value();
    });
  }
  rep.dimension = detail::locus_dimension(X, rep.components);
  return rep;
}

/// Exact B(D) from the rational section polytope: V(tau) avoids B(D) iff some
/// rational point of P_D is tight on tau.
inline std::vector<Cone> stable_locus_exact(const ToricDivisor& D) {
  const auto& X = *D.variety();
  return detail::minimal_cones(X, [&](const Cone& tau) {
    return !lp_strict_feasible(detail::tight_face(D, tau)).feasible;
  });
}

/// B(D) = intersection of Bs(|kD|). The chain of running intersections over
/// k = 1..K is reported; the multiple is the first k where it reaches the
/// exact locus.
inline BaseLocusReport stable_base_locus(const ToricDivisor& D, std::int64_t K = 24) {
  const auto& X = *D.variety();
  X.require_complete("stable_base_locus");
  const Integer den = D.denominator();
  const auto exact = stable_locus_exact(D);
  auto in_exact = [&](const Cone& tau) {
    return std::any_of(exact.begin(), exact.end(), [&](const Cone& c) { return is_subset(c, tau); });
  };
  // cones of the running intersection that the exact locus does not contain
  std::vector<Cone> pending;
  for (const auto& tau : X.cones())
    if (!in_exact(tau)) pending.push_back(tau);

  BaseLocusReport rep;
  rep.horizon = K;
  std::vector<bool> removed(pending.size(), false);
  std::size_t remaining = pending.size();
  for (std::int64_t k = 1; k <= K; ++k) {
    if (remaining == 0) break;
    const auto kD = D * Rational(den * to_integer(k));
    for (std::size_t i = 0; i < pending.size(); ++i)
      if (!removed[i] && find_lattice_point(detail::tight_face(kD, pending[i]))) {
        removed[i] = true;
        --remaining;
      }
    rep.chain.push_back(detail::minimal_cones(X, [&](const Cone& tau) {
      if (in_exact(tau)) return true;
      auto it = std::find(pending.begin(), pending.end(), tau);
      return !removed[static_cast<std::size_t>(it - pending.begin())];
    }));
    if (remaining == 0) rep.multiple = k * to_int64(den);
  }
  if (remaining == 0 && !rep.multiple) rep.multiple = to_int64(den);
  if (remaining != 0)
    fail(ErrorKind::NoStabilizationDetected,
         "base loci of multiples 1.." + std::to_string(K) + " have not reached the stable locus");
  rep.components = exact;
  rep.no_sections = exact.size() == 1 && exact.front().empty() && !lp_strict_feasible(section_polytope(D)).feasible;
  rep.dimension = detail::locus_dimension(X, exact);
  return rep;
}

/// B_+(D) = B(D - eps H) for small eps > 0. Exact via the parametric face
/// systems; the doubling chain B(kD - H), k = 2, 4, ..., provides the reported
/// multiple (first k agreeing with the exact locus, confirmed at 2k).
inline BaseLocusReport augmented_base_locus(const ToricDivisor& D, const ToricDivisor& H,
                                            std::int64_t max_multiple = std::int64_t{1} << 20) {
  const auto& X = *D.variety();
  X.require_complete("augmented_base_locus");
  const auto exact = detail::minimal_cones(X, [&](const Cone& tau) { return !detail::tight_for_small_eps(D, H, tau); });
  BaseLocusReport rep;
  rep.components = exact;
  rep.dimension = detail::locus_dimension(X, exact);
  rep.horizon = max_multiple;
  const Integer den = D.denominator();
  for (std::int64_t k = 2; k <= max_multiple; k *= 2) {
    auto Bk = stable_locus_exact(D * Rational(den * to_integer(k)) - H);
    rep.chain.push_back(Bk);
    if (Bk == exact) {
      auto next = stable_locus_exact(D * Rational(den * to_integer(2 * k)) - H);
      if (next == exact) {
        rep.chain.push_back(next);
        rep.multiple = k * to_int64(den);
        return rep;
      }
    }
  }
  fail(ErrorKind::NoStabilizationDetected,
       "B(kD - H) did not reach the augmented locus by k = " + std::to_string(max_multiple));
}

// ---------------------------------------------------------------------------
// q-nef

struct QNefCheck {
  Cone tau;
  ToricDivisor restricted;
  bool negative_big = false;
};

struct QNefResult {
  int q = 0;
  bool qnef = true;
  std::vector<QNefCheck> checks;  // one per orbit closure of dimension q+1
  std::optional<Cone> witness;
};

/// Torus-invariant q-nef test: -D|V(tau) is not big for every orbit closure
/// of dimension q + 1.
inline QNefResult is_qnef(const ToricDivisor& D, int q) {
  const auto& X = *D.variety();
  X.require_complete("is_qnef");
  if (q < 0) fail(ErrorKind::InvalidArgument, "q must be nonnegative");
  QNefResult res;
  res.q = q;
  if (q >= X.dim()) return res;
  const auto codim = static_cast<std::size_t>(X.dim() - q - 1);
  for (const auto& tau : X.cones()) {
    if (tau.size() != codim) continue;
    auto r = restrict_divisor(D, tau);
    const bool nb = classify_cones(-r.divisor).big;
    res.checks.push_back({tau, r.divisor, nb});
    if (nb && res.qnef) {
      res.qnef = false;
      res.witness = tau;
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// q-ample decision

struct QAmpleObstruction {
  int degree = 0;
  RaySet subset;
  int reduced_dim = 0;
  Rational eps;            // a sample eps > 0 ...
  QVector weight;          // ... with weight strictly inside Q_S(D - eps H)
  QVector closure_weight;  // point of the eps = 0 closure; the segment gives every smaller eps
};

enum class SubsetOutcome { StrictInfeasible, ClosureInfeasible, Obstruction };

struct SubsetCheck {
  int degree = 0;
  RaySet subset;
  SubsetOutcome outcome = SubsetOutcome::StrictInfeasible;
};

struct AsymptoticVerdict {
  int q = 0;
  bool qample = true;
  std::vector<QAmpleObstruction> obstructions;
  std::vector<SubsetCheck> checks;
  std::optional<int> augmented_dim;  // dim B_+(D) when computed
  bool shortcut_applies = false;      // dim B_+(D) <= q
};

namespace detail {

// Q_S(D - eps H) as a polyhedron in (y, eps) with eps > 0.
inline Polyhedron parametric_region(const ToricDivisor& D, const ToricDivisor& H, std::uint32_t mask) {
  const auto& X = *D.variety();
  const std::size_t n = static_cast<std::size_t>(X.dim());
  Polyhedron p(n + 1);
  for (int i = 0; i < X.ray_count(); ++i) {
    QVector row = X.ray_q(i);
    row.push_back(-H[i]);
    if (mask >> i & 1) p.add_strict(std::move(row), D[i]);
    else p.add_weak(std::move(row), D[i]);
  }
  QVector eps(n + 1, Rational(0));
  eps[n] = -1;
  p.add_strict(std::move(eps), 0);
  return p;
}

}  // namespace detail

/// D is q-ample iff no subset S with H~^{p-1}(S) != 0, p > q, has Q_S(D - eps H)
/// nonempty for arbitrarily small eps > 0. Boundary classes of the q-ample
/// cone therefore come out as not q-ample.
inline AsymptoticVerdict decide_qample_asymptotic(const ToricDivisor& D, int q, const ToricDivisor& H,
                                                  bool with_shortcut = true, bool stop_at_first = false) {
  const auto& X = *D.variety();
  X.require_complete("decide_qample");
  if (q < 0) fail(ErrorKind::InvalidArgument, "q must be nonnegative");
  AsymptoticVerdict v;
  v.q = q;
  const auto Dn = D * Rational(D.denominator());
  const auto& bad = X.bad_subsets();
  for (int p = q + 1; p <= X.dim(); ++p) {
    for (const auto& s : bad.by_degree[p]) {
      auto strict = lp_strict_feasible(detail::parametric_region(Dn, H, s.mask));
      if (!strict.feasible) {
        v.checks.push_back({p, s.rays, SubsetOutcome::StrictInfeasible});
        continue;
      }
      auto closure = lp_strict_feasible(weight_region(Dn, s.mask).closure());
      if (!closure.feasible) {
        v.checks.push_back({p, s.rays, SubsetOutcome::ClosureInfeasible});
        continue;
      }
      v.checks.push_back({p, s.rays, SubsetOutcome::Obstruction});
      QVector y(strict.witness.begin(), strict.witness.end() - 1);
      v.obstructions.push_back({p, s.rays, s.dimension, strict.witness.back(), std::move(y), closure.witness});
      v.qample = false;
      if (stop_at_first) break;
    }
    if (stop_at_first && !v.qample) break;
  }
  if (with_shortcut) {
    v.augmented_dim = augmented_base_locus(Dn, H).dimension;
    v.shortcut_applies = *v.augmented_dim <= q;
    if (v.shortcut_applies && !v.qample)
      fail(ErrorKind::InternalConsistency, "dim B_+ <= q but an asymptotic obstruction was found");
  }
  return v;
}

struct ScanParams {
  int n_start = 1;
  int n_step = 1;
  int n_max = 12;
  int j_max = 4;
};

struct ScanHit {
  int N = 0, j = 0, degree = 0;
  Integer dim;
};

/// Cohomology of N*D - j*H for the scanned (N, j), degrees >= min_degree.
struct ScanTables {
  ScanParams params;
  int min_degree = 1;
  std::vector<int> Ns;
  std::vector<std::vector<CohomologyTable>> tables;  // [N index][j - 1]
};

inline ScanTables scan_tables(const ToricDivisor& D, const ToricDivisor& H, const ScanParams& params, int min_degree) {
  const auto Dn = D * Rational(D.denominator());
  ScanTables st;
  st.params = params;
  st.min_degree = min_degree;
  for (int N = params.n_start; N <= params.n_max; N += params.n_step) {
    st.Ns.push_back(N);
    std::vector<CohomologyTable> row;
    for (int j = 1; j <= params.j_max; ++j) row.push_back(cohomology_dims(Dn * Rational(N) - H * Rational(j), min_degree));
    st.tables.push_back(std::move(row));
  }
  return st;
}

struct ScanVerdict {
  int q = 0;
  bool obstruction = false;  // nonvanishing above q at every scanned N
  std::vector<ScanHit> hits;
  ScanParams params;
};

inline ScanVerdict scan_verdict(const ScanTables& st, int q) {
  if (q + 1 < st.min_degree) fail(ErrorKind::InvalidArgument, "scan tables do not cover degree q+1");
  ScanVerdict v;
  v.q = q;
  v.params = st.params;
  bool every_N = !st.Ns.empty();
  for (std::size_t a = 0; a < st.Ns.size(); ++a) {
    bool hit_here = false;
    for (std::size_t b = 0; b < st.tables[a].size(); ++b) {
      const auto& t = st.tables[a][b];
      for (int p = q + 1; p < static_cast<int>(t.dims.size()); ++p)
        if (t.dims[p] != 0) {
          v.hits.push_back({st.Ns[a], static_cast<int>(b) + 1, p, t.dims[p]});
          hit_here = true;
        }
    }
    every_N = every_N && hit_here;
  }
  v.obstruction = every_N;
  return v;
}

struct RealizedCertificate {
  int degree = 0;
  RaySet subset;
  int N = 0, j = 0;
  IntPoint weight;  // lattice point of P_S(N D - j H)
  Integer scanned_dim;
};

struct ModeAgreement {
  bool agree = true;
  std::string detail;
  AsymptoticVerdict asymptotic;
  ScanVerdict scan;
  std::vector<RealizedCertificate> realized;
};

/// Cross-checks the two modes: a persistent scan obstruction must be seen
/// asymptotically, and every asymptotic obstruction that has a lattice weight
/// within the scan window must show up as a nonzero scanned group.
inline ModeAgreement check_mode_agreement(const ToricDivisor& D, int q, const ToricDivisor& H, const ScanTables& st,
                                          bool with_shortcut = false) {
  ModeAgreement out;
  out.asymptotic = decide_qample_asymptotic(D, q, H, with_shortcut);
  out.scan = scan_verdict(st, q);
  if (out.scan.obstruction && out.asymptotic.qample) {
    out.agree = false;
    out.detail = "scan finds nonvanishing above q at every N but the asymptotic test finds none";
  }
  const auto Dn = D * Rational(D.denominator());
  for (const auto& ob : out.asymptotic.obstructions) {
    const auto mask = mask_of(ob.subset);
    bool done = false;
    for (std::size_t a = 0; a < st.Ns.size() && !done; ++a)
      for (int j = 1; j <= st.params.j_max && !done; ++j) {
        auto pt = find_lattice_point(weight_region(Dn * Rational(st.Ns[a]) - H * Rational(j), mask));
        if (!pt) continue;
        const auto& dimv = st.tables[a][static_cast<std::size_t>(j - 1)].dims[static_cast<std::size_t>(ob.degree)];
        out.realized.push_back({ob.degree, ob.subset, st.Ns[a], j, *pt, dimv});
        if (dimv == 0) {
          out.agree = false;
          out.detail = "asymptotic certificate realized at N=" + std::to_string(st.Ns[a]) + ", j=" + std::to_string(j) +
                       " but the scanned group vanishes";
        }
        done = true;
      }
  }
  return out;
}

enum class QAmpleMode { Asymptotic, Scan };

struct QAmpleDecision {
  int q = 0;
  QAmpleMode mode = QAmpleMode::Asymptotic;
  bool qample = false;  // scan mode: true means "no obstruction found"
  AsymptoticVerdict asymptotic;
  std::optional<ScanVerdict> scan;
};

inline QAmpleDecision decide_qample(const ToricDivisor& D, int q, const ToricDivisor& H,
                                    QAmpleMode mode = QAmpleMode::Asymptotic, const ScanParams& params = {}) {
  QAmpleDecision d;
  d.q = q;
  d.mode = mode;
  d.asymptotic = decide_qample_asymptotic(D, q, H, true);
  d.qample = d.asymptotic.qample;
  if (mode == QAmpleMode::Scan) {
    const auto& X = *D.variety();
    if (q >= X.dim()) {
      d.scan = ScanVerdict{q, false, {}, params};
    } else {
      auto st = scan_tables(D, H, params, q + 1);
      auto agreement = check_mode_agreement(D, q, H, st);
      if (!agreement.agree) fail(ErrorKind::ModeDisagreement, agreement.detail);
      d.scan = agreement.scan;
    }
    d.qample = !d.scan->obstruction;
  }
  return d;
}

/// Smallest q in 0..n with D q-ample (every class is n-ample).
inline int smallest_qample(const ToricDivisor& D, const ToricDivisor& H) {
  const int n = D.variety()->dim();
  for (int q = 0; q < n; ++q)
    if (decide_qample_asymptotic(D, q, H, false, true).qample) return q;
  return n;
}

// ---------------------------------------------------------------------------
// Disconnected zero sets

struct DisconnectionResult {
  RaySet support;
  bool connected = true;
  bool applies = false;  // support disconnected and dim >= 2
  int threshold_q = 0;   // n - 2: the criterion rules out threshold_q-amplitude
  int q_target = 0;
  bool rules_out_target = false;
  std::vector<std::pair<int, Integer>> h1_checks;  // (m, h^1(O(-mD)))
};

/// A torus-invariant effective D whose support is disconnected is not
/// (n-2)-ample, hence not q-ample for q <= n-2. Cross-checked by
/// h^1(X, O(-mD)) != 0 for m = 1..4.
inline DisconnectionResult disconnected_section_criterion(const ToricDivisor& D, int q_target) {
  const auto& X = *D.variety();
  X.require_complete("disconnected_section_criterion");
  DisconnectionResult r;
  r.q_target = q_target;
  r.threshold_q = X.dim() - 2;
  for (std::size_t i = 0; i < D.size(); ++i) {
    if (!is_integral(D[i]) || D[i] < 0)
      fail(ErrorKind::NotEffectiveSupport, "coefficients must be nonnegative integers");
    if (D[i] > 0) r.support.push_back(static_cast<int>(i));
  }
  if (r.support.empty()) fail(ErrorKind::NotEffectiveSupport, "empty support");
  r.connected = subset_connected(X.fan(), r.support);
  r.applies = !r.connected && X.dim() >= 2;
  if (!r.applies) return r;
  r.rules_out_target = q_target <= r.threshold_q;
  for (int m = 1; m <= 4; ++m) {
    auto t = cohomology_dims(D * Rational(-m), 1);
    r.h1_checks.emplace_back(m, t.dims[1]);
    if (t.dims[1] == 0)
      fail(ErrorKind::InternalConsistency, "disconnected support but h^1(O(-" + std::to_string(m) + "D)) = 0");
  }
  return r;
}

// ---------------------------------------------------------------------------
// Full report

struct PositivityReport {
  ConeFlags flags;
  std::vector<QNefResult> qnef;            // q = 0..n-1
  std::vector<AsymptoticVerdict> qample;   // q = 0..n-1
  int smallest_q = 0;
};

inline PositivityReport positivity_report(const ToricDivisor& D, const ToricDivisor& H) {
  const int n = D.variety()->dim();
  PositivityReport rep;
  rep.flags = classify_cones(D);
  rep.smallest_q = n;
  for (int q = 0; q < n; ++q) {
    rep.qnef.push_back(is_qnef(D, q));
    rep.qample.push_back(decide_qample_asymptotic(D, q, H, true));
    if (rep.qample.back().qample && rep.smallest_q == n) rep.smallest_q = q;
  }
  return rep;
}

}  // namespace toricq
