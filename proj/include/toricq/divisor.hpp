#pragma once

#include "toricq/variety.hpp"

#include <optional>
#include <string>

namespace toricq {

/// Sign conventions for piecewise-linear data. Internal: psi_D(u_rho) = -a_rho
/// and sections are indexed by P_D = {m : <m,u_rho> + a_rho >= 0}. Paper:
/// psi(u_rho) = +a_rho. Divisor coefficients mean the same in both.
enum class SignConvention { Internal, Paper };

inline const char* convention_name(SignConvention c) { return c == SignConvention::Paper ? "paper" : "internal"; }

/// D = sum_rho a_rho F_rho with exact rational coefficients.
class ToricDivisor {
 public:
  ToricDivisor() = default;
  ToricDivisor(VarietyPtr X, QVector coeffs) : X_(std::move(X)), coeffs_(std::move(coeffs)) {
    if (!X_) fail(ErrorKind::InvalidArgument, "divisor without a variety");
    if (static_cast<int>(coeffs_.size()) != X_->ray_count())
      fail(ErrorKind::InvalidArgument, "divisor has " + std::to_string(coeffs_.size()) + " coefficients, fan has " +
                                           std::to_string(X_->ray_count()) + " rays");
  }
  static ToricDivisor from_ints(VarietyPtr X, const std::vector<std::int64_t>& a) {
    QVector q;
    for (auto v : a) q.push_back(make_rational(v));
    return ToricDivisor(std::move(X), std::move(q));
  }
  static ToricDivisor zero(VarietyPtr X) {
    const auto r = static_cast<std::size_t>(X->ray_count());
    return ToricDivisor(std::move(X), QVector(r, Rational(0)));
  }
  static ToricDivisor prime(VarietyPtr X, int ray) {
    auto d = zero(std::move(X));
    d.coeffs_.at(static_cast<std::size_t>(ray)) = 1;
    return d;
  }
  /// div(chi^m) = sum <m,u_rho> F_rho.
  static ToricDivisor character(VarietyPtr X, const QVector& m) {
    auto d = zero(X);
    for (int i = 0; i < X->ray_count(); ++i) d.coeffs_[i] = dot(m, X->ray(i));
    return d;
  }

  const VarietyPtr& variety() const { return X_; }
  const QVector& coeffs() const { return coeffs_; }
  const Rational& operator[](std::size_t i) const { return coeffs_[i]; }
  std::size_t size() const { return coeffs_.size(); }
  bool integral() const { return all_integral(coeffs_); }

  /// Piecewise-linear values on the rays in the requested convention.
  QVector pl_values(SignConvention c) const {
    QVector v = coeffs_;
    if (c == SignConvention::Internal)
      for (auto& x : v) x = -x;
    return v;
  }

  ToricDivisor operator-() const { return (*this) * Rational(-1); }
  friend ToricDivisor operator+(const ToricDivisor& a, const ToricDivisor& b) {
    check_same(a, b);
    QVector c(a.coeffs_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeffs_[i] + b.coeffs_[i];
    return ToricDivisor(a.X_, std::move(c));
  }
  friend ToricDivisor operator-(const ToricDivisor& a, const ToricDivisor& b) { return a + (-b); }
  friend ToricDivisor operator*(const ToricDivisor& a, const Rational& k) {
    QVector c(a.coeffs_);
    for (auto& x : c) x *= k;
    return ToricDivisor(a.X_, std::move(c));
  }
  friend ToricDivisor operator*(const Rational& k, const ToricDivisor& a) { return a * k; }
  friend bool operator==(const ToricDivisor& a, const ToricDivisor& b) {
    return a.X_ == b.X_ && a.coeffs_ == b.coeffs_;
  }

  /// Smallest positive integer multiple that is integral.
  Integer denominator() const { return common_denominator(coeffs_); }

 private:
  static void check_same(const ToricDivisor& a, const ToricDivisor& b) {
    if (a.X_ != b.X_) fail(ErrorKind::InvalidArgument, "divisors live on different varieties");
  }
  VarietyPtr X_;
  QVector coeffs_;
};

inline std::string to_string(const ToricDivisor& d) {
  std::string s = "[";
  for (std::size_t i = 0; i < d.size(); ++i) s += (i ? ", " : "") + d[i].get_str();
  return s + "]";
}

struct DivisorClass {
  QVector coords;                // free part, in the cached N^1 basis
  std::vector<Integer> torsion;  // residues mod the invariant factors (integral divisors only)
  friend bool operator==(const DivisorClass&, const DivisorClass&) = default;
  bool is_zero() const {
    for (const auto& c : coords)
      if (c != 0) return false;
    return true;
  }
};

inline DivisorClass class_of(const ToricDivisor& D) {
  const auto& pb = D.variety()->picard();
  DivisorClass cls;
  for (std::size_t i = 0; i < pb.rank; ++i) {
    Rational s = 0;
    for (std::size_t j = 0; j < D.size(); ++j) s += Rational(pb.free_rows(i, j)) * D[j];
    cls.coords.push_back(s);
  }
  if (D.integral())
    for (std::size_t t = 0; t < pb.torsion.size(); ++t) {
      Integer s = 0;
      for (std::size_t j = 0; j < D.size(); ++j) s += pb.torsion_rows(t, j) * D[j].get_num();
      Integer r;
      mpz_mod(r.get_mpz_t(), s.get_mpz_t(), pb.torsion[t].get_mpz_t());
      cls.torsion.push_back(r);
    }
  return cls;
}

/// Divisor with the given N^1 coordinates (combination of the basis divisors).
inline ToricDivisor divisor_from_class(const VarietyPtr& X, const QVector& coords) {
  const auto& pb = X->picard();
  auto d = ToricDivisor::zero(X);
  QVector c(d.coeffs());
  for (std::size_t k = 0; k < pb.rank; ++k)
    for (std::size_t j = 0; j < c.size(); ++j) c[j] += coords[k] * pb.basis_divisors[k][j];
  return ToricDivisor(X, std::move(c));
}

struct LinearEquivalence {
  bool equivalent = false;
  std::optional<QVector> witness;  // m with D1 - D2 = div(chi^m)
  bool integral_witness = false;
};

inline LinearEquivalence is_linearly_equivalent(const ToricDivisor& D1, const ToricDivisor& D2) {
  const auto diff = D1 - D2;
  const auto& X = *D1.variety();
  LinearEquivalence out;
  QVector m;
  if (!solve(X.ray_matrix(), diff.coeffs(), m)) return out;
  out.equivalent = true;
  out.integral_witness = all_integral(m);
  out.witness = std::move(m);
  return out;
}

/// m_sigma with <m_sigma, u_rho> = -a_rho on each full-dimensional maximal cone.
struct CartierData {
  std::vector<QVector> functionals;  // indexed like the maximal cones
  bool integral() const {
    for (const auto& m : functionals)
      if (!all_integral(m)) return false;
    return true;
  }
};

inline QVector local_functional(const ToricDivisor& D, std::size_t cone_index) {
  const auto& X = *D.variety();
  const auto& sigma = X.max_cones().at(cone_index);
  const auto& inv = X.max_cone_inverse(cone_index);
  QVector rhs(sigma.size());
  for (std::size_t i = 0; i < sigma.size(); ++i) rhs[i] = -D[sigma[i]];
  return inv.apply(rhs);
}

inline CartierData cartier_data(const ToricDivisor& D) {
  const auto& X = *D.variety();
  X.require_complete("cartier_data");
  CartierData cd;
  for (std::size_t i = 0; i < X.max_cones().size(); ++i) cd.functionals.push_back(local_functional(D, i));
  return cd;
}

/// D restricted to the orbit closure V(tau), presented on the star-quotient fan.
struct RestrictedDivisor {
  Cone tau;
  std::shared_ptr<const OrbitClosure> orbit;
  ToricDivisor divisor;       // on orbit->variety
  QVector shift;              // m used: D + div(chi^m) vanishes on tau
  ToricDivisor representative;  // D + div(chi^m) on the ambient variety
};

/// Restriction through the representative D + div(chi^m) that vanishes on
/// tau; m is the Cartier functional of the chosen maximal cone containing tau
/// (the first one unless `choice` picks another).
inline RestrictedDivisor restrict_divisor(const ToricDivisor& D, const Cone& tau, std::size_t choice = 0) {
  const auto& X = *D.variety();
  X.require_complete("restrict");
  if (!is_cone_of(X.fan(), tau)) fail(ErrorKind::NotACone, cone_name(tau) + " is not a cone of the fan");
  std::vector<std::size_t> containing;
  for (std::size_t i = 0; i < X.max_cones().size(); ++i)
    if (is_subset(tau, X.max_cones()[i])) containing.push_back(i);
  const std::size_t sigma = containing.at(choice % containing.size());
  // internal convention: <m_sigma,u> = -a on sigma, so D + div(chi^{m_sigma}) vanishes there
  QVector m = local_functional(D, sigma);
  auto rep = D + ToricDivisor::character(D.variety(), m);
  auto orbit = X.orbit_closure(tau);
  QVector c(static_cast<std::size_t>(orbit->variety->ray_count()), Rational(0));
  for (std::size_t i = 0; i < orbit->ray_image.size(); ++i)
    if (const auto& img = orbit->ray_image[i])
      c[img->index] = rep[i] / make_rational(img->multiplicity);
  for (int r : tau)
    if (rep[r] != 0) fail(ErrorKind::InvalidArgument, "restriction representative does not vanish on tau");
  return RestrictedDivisor{tau, orbit, ToricDivisor(orbit->variety, std::move(c)), std::move(m), std::move(rep)};
}

inline ToricDivisor canonical_divisor(const VarietyPtr& X) {
  QVector c(static_cast<std::size_t>(X->ray_count()), Rational(-1));
  return ToricDivisor(X, std::move(c));
}

}  // namespace toricq
