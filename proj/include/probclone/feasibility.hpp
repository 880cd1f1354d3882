#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>

#include <Eigen/Core>

#include "probclone/funcspace.hpp"
#include "probclone/rational.hpp"

namespace probclone {

// ---------------------------------------------------------------------------
// Scalar-generic building blocks. Every template below is instantiated for
// double (floating mode) and Rational (exact mode); in exact mode any square
// root must come out rational or a std::domain_error is thrown.
// ---------------------------------------------------------------------------

template <typename Scalar>
struct Complex {
  Scalar re{0};
  Scalar im{0};

  Complex conj() const { return {re, -im}; }
  Scalar norm2() const { return re * re + im * im; }

  friend Complex operator+(const Complex& x, const Complex& y) { return {x.re + y.re, x.im + y.im}; }
  friend Complex operator-(const Complex& x, const Complex& y) { return {x.re - y.re, x.im - y.im}; }
  friend Complex operator*(const Complex& x, const Complex& y) {
    return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
  }
  friend Complex operator*(const Scalar& k, const Complex& x) { return {k * x.re, k * x.im}; }
  friend bool operator==(const Complex&, const Complex&) = default;
};

template <typename Scalar>
using Matrix3 = Eigen::Matrix<Scalar, 3, 3>;

/// 3x3 Hermitian matrix held as real and imaginary parts.
template <typename Scalar>
struct HermitianMatrix3 {
  Matrix3<Scalar> re = Matrix3<Scalar>::Zero();
  Matrix3<Scalar> im = Matrix3<Scalar>::Zero();

  Complex<Scalar> operator()(Eigen::Index i, Eigen::Index j) const { return {re(i, j), im(i, j)}; }
  void set(Eigen::Index i, Eigen::Index j, const Complex<Scalar>& z) {
    re(i, j) = z.re;
    im(i, j) = z.im;
    re(j, i) = z.re;
    im(j, i) = -z.im;
  }
  bool is_hermitian() const { return re == re.transpose() && im == -im.transpose(); }

  template <typename Other>
  HermitianMatrix3<Other> cast() const {
    return {re.template cast<Other>(), im.template cast<Other>()};
  }
};

/// Cloning efficiencies gamma_1..gamma_3, each in [0, 1].
template <typename Scalar>
struct Efficiencies {
  std::array<Scalar, 3> gamma{Scalar(0), Scalar(0), Scalar(0)};

  Scalar operator[](std::size_t i) const { return gamma[i]; }
  Scalar sum() const { return gamma[0] + gamma[1] + gamma[2]; }

  void validate() const {
    for (const auto& g : gamma) {
      if (g < Scalar(0) || g > Scalar(1)) throw std::domain_error("efficiency outside [0, 1]");
    }
  }
  template <typename Other>
  Efficiencies<Other> cast() const {
    return {{static_cast<Other>(gamma[0]), static_cast<Other>(gamma[1]), static_cast<Other>(gamma[2])}};
  }
};

/// Overlaps P_ij = <P(i)|P(j)> of the flag states. P12 = a + bi, P13 = c + di.
template <typename Scalar>
struct FlagOverlaps {
  Complex<Scalar> p12;
  Complex<Scalar> p13;
  Complex<Scalar> p23;

  Scalar a() const { return p12.re; }
  Scalar b() const { return p12.im; }
  Scalar c() const { return p13.re; }
  Scalar d() const { return p13.im; }

  static FlagOverlaps real(Scalar p12, Scalar p13, Scalar p23 = Scalar(0)) {
    return {{p12, Scalar(0)}, {p13, Scalar(0)}, {p23, Scalar(0)}};
  }

  void validate() const {
    for (const auto* p : {&p12, &p13, &p23}) {
      if (p->norm2() > Scalar(1)) throw std::domain_error("flag overlap with modulus above 1");
    }
  }
  template <typename Other>
  FlagOverlaps<Other> cast() const {
    auto cx = [](const Complex<Scalar>& z) {
      return Complex<Other>{static_cast<Other>(z.re), static_cast<Other>(z.im)};
    };
    return {cx(p12), cx(p13), cx(p23)};
  }
};

/// Gram matrix, efficiencies, flags and the derived matrix
/// M = X1 - sqrt(Gamma) X2_P sqrt(Gamma), M_ij = X_ij - sqrt(g_i g_j) X_ij^2 P_ij.
template <typename Scalar>
struct FeasibilityPoint {
  HermitianMatrix3<Scalar> gram;
  Efficiencies<Scalar> eff;
  FlagOverlaps<Scalar> flags;
  HermitianMatrix3<Scalar> m;
};

template <typename Scalar>
Complex<Scalar> flag(const FlagOverlaps<Scalar>& p, Eigen::Index i, Eigen::Index j) {
  if (i == j) return {Scalar(1), Scalar(0)};
  if (i > j) return flag(p, j, i).conj();
  if (i == 0 && j == 1) return p.p12;
  if (i == 0 && j == 2) return p.p13;
  return p.p23;
}

template <typename Scalar>
FeasibilityPoint<Scalar> build_matrix(const HermitianMatrix3<Scalar>& gram, const Efficiencies<Scalar>& eff,
                                      const FlagOverlaps<Scalar>& flags) {
  using std::sqrt;
  eff.validate();
  flags.validate();
  if (!gram.is_hermitian()) throw std::domain_error("gram matrix is not Hermitian");
  for (Eigen::Index i = 0; i < 3; ++i) {
    if (gram.re(i, i) != Scalar(1) || gram.im(i, i) != Scalar(0)) {
      throw std::domain_error("gram matrix must have unit diagonal");
    }
  }
  FeasibilityPoint<Scalar> pt{gram, eff, flags, {}};
  for (Eigen::Index i = 0; i < 3; ++i) {
    for (Eigen::Index j = i; j < 3; ++j) {
      const auto x = gram(i, j);
      const Scalar root = sqrt(eff[static_cast<std::size_t>(i)] * eff[static_cast<std::size_t>(j)]);
      pt.m.set(i, j, x - root * (x * x * flag(flags, i, j)));
    }
  }
  return pt;
}

/// 1x1 minors (m11, m22, m33), 2x2 minors ({1,2}, {1,3}, {2,3}) and the determinant.
template <typename Scalar>
std::array<Scalar, 7> principal_minors(const HermitianMatrix3<Scalar>& m) {
  const Scalar d1 = m.re(0, 0), d2 = m.re(1, 1), d3 = m.re(2, 2);
  const auto m12 = m(0, 1), m13 = m(0, 2), m23 = m(1, 2);
  const Scalar det = d1 * d2 * d3 + Scalar(2) * (m12 * m23 * m13.conj()).re - d1 * m23.norm2() -
                     d2 * m13.norm2() - d3 * m12.norm2();
  return {d1, d2, d3, d1 * d2 - m12.norm2(), d1 * d3 - m13.norm2(), d2 * d3 - m23.norm2(), det};
}

/// Leading principal minors, the three inequalities written out for each case.
template <typename Scalar>
std::array<Scalar, 3> leading_minors(const HermitianMatrix3<Scalar>& m) {
  const auto all = principal_minors(m);
  return {all[0], all[3], all[6]};
}

/// Exact PSD test: a Hermitian matrix is PSD iff every principal minor is >= 0.
inline bool is_psd(const FeasibilityPoint<Rational>& pt) {
  for (const auto& minor : principal_minors(pt.m)) {
    if (minor.sign() < 0) return false;
  }
  return true;
}

/// Eigenvalues in ascending order, closed-form trigonometric solution of the
/// characteristic cubic.
std::array<double, 3> eigenvalues(const HermitianMatrix3<double>& m);
double min_eigenvalue(const HermitianMatrix3<double>& m);

inline constexpr double kDefaultPsdTol = 1e-9;

/// Floating PSD test: smallest eigenvalue >= -tol.
bool is_psd(const FeasibilityPoint<double>& pt, double tol = kDefaultPsdTol);

/// Gram matrix of the three cloned states of the given case, exact.
HermitianMatrix3<Rational> cloned_state_gram(Case c);

// ---------------------------------------------------------------------------
// Reduced coordinates on the gamma_2 = gamma_3 slice. With
// x = sqrt(g1 g2), y = g1 + g2 the feasibility condition reads
//   c0 - q x + s x^2 >= y >= 2x >= 0,   c0 = 7/8 (3-bit), 1/2 (2-bit).
// ---------------------------------------------------------------------------

template <typename Scalar>
struct ReducedFlags {
  Scalar q;
  Scalar s;
};

template <typename Scalar>
Scalar slice_constant(Case c) {
  return c == Case::ThreeBit ? Scalar(7) / Scalar(8) : Scalar(1) / Scalar(2);
}

/// Bounds of the (q, s) region: |q| <= q_bound, s_min <= s <= s_max(q).
template <typename Scalar>
Scalar q_bound(Case c) {
  return c == Case::ThreeBit ? Scalar(1) / Scalar(16) : Scalar(1) / Scalar(2);
}
template <typename Scalar>
Scalar s_min(Case c) {
  return c == Case::ThreeBit ? Scalar(127) / Scalar(128) : Scalar(7) / Scalar(8);
}
template <typename Scalar>
Scalar s_max(Case c, const Scalar& q) {
  return c == Case::ThreeBit ? Scalar(1) - Scalar(2) * q * q : Scalar(1) - q * q / Scalar(2);
}

template <typename Scalar>
ReducedFlags<Scalar> reduce(const FlagOverlaps<Scalar>& p, Case c) {
  const Scalar sq = p.a() * p.a() + p.b() * p.b() + p.c() * p.c() + p.d() * p.d();
  if (c == Case::ThreeBit) return {(p.a() - p.c()) / Scalar(32), Scalar(1) - sq / Scalar(256)};
  return {(p.a() + p.c()) / Scalar(4), Scalar(1) - sq / Scalar(16)};
}

/// Smaller intersection of y = c0 - q x + s x^2 with y = 2x. The larger root
/// exceeds 1 everywhere in the valid region and is discarded.
template <typename Scalar>
Scalar intersection_x0(const Scalar& q, const Scalar& s, Case c) {
  using std::sqrt;
  const Scalar b = Scalar(2) + q;
  const Scalar disc = b * b - Scalar(4) * slice_constant<Scalar>(c) * s;
  if (disc < Scalar(0)) throw std::domain_error("parabola does not meet y = 2x");
  return (b - sqrt(disc)) / (Scalar(2) * s);
}

/// Point on the parabola y = c0 - q x + s x^2 where d(gamma_2)/dx = 0.
/// Singular at q = 0; use slice_maximum() there.
template <typename Scalar>
Scalar stationary_x1(const Scalar& q, const Scalar& s, Case c) {
  using std::sqrt;
  if (q == Scalar(0)) throw std::domain_error("stationary point is singular at q = 0");
  const Scalar c0 = slice_constant<Scalar>(c);
  const Scalar lead = Scalar(4) * c0 * s + q * q - Scalar(4);
  const Scalar disc = lead * lead - Scalar(16) * c0 * s * q * q;
  if (disc < Scalar(0)) throw std::domain_error("stationary point does not exist");
  return (lead + sqrt(disc)) / (Scalar(4) * s * q);
}

/// Inverts x = sqrt(g1 g2), y = g1 + g2 with g1 <= g2.
template <typename Scalar>
std::pair<Scalar, Scalar> gammas_from_xy(const Scalar& x, const Scalar& y) {
  using std::sqrt;
  if (x < Scalar(0) || y < Scalar(2) * x) throw std::domain_error("need y >= 2x >= 0");
  const Scalar root = sqrt(y * y - Scalar(4) * x * x);
  return {(y - root) / Scalar(2), (y + root) / Scalar(2)};
}

template <typename Scalar>
struct SliceOptimum {
  Scalar x;
  Scalar y;
  Scalar gamma1;
  Scalar gamma2;
};

/// Largest gamma_2 on the slice gamma_2 = gamma_3 for fixed (q, s), via the
/// closed-form stationary point. Requires q < 0 (x1 > 0).
template <typename Scalar>
SliceOptimum<Scalar> gamma2_on_slice(const Scalar& q, const Scalar& s, Case c) {
  const Scalar x1 = stationary_x1(q, s, c);
  if (x1 < Scalar(0)) throw std::domain_error("stationary point lies at negative x (q > 0)");
  const Scalar y1 = slice_constant<Scalar>(c) - q * x1 + s * x1 * x1;
  const auto [g1, g2] = gammas_from_xy(x1, y1);
  return {x1, y1, g1, g2};
}

/// gamma2_on_slice for q < 0; otherwise golden-section search of gamma_2 along
/// the parabola over [0, x0].
SliceOptimum<double> slice_maximum(double q, double s, Case c);

enum class BoundaryBranch { MaxS, MinS };

struct VwPoint {
  double v;
  double w;
};

/// Range of the parameter accepted by vw_boundary: v for MaxS, q for MinS.
std::pair<double, double> vw_parameter_range(Case c, BoundaryBranch branch);

/// Point on the image of a (q, s) region boundary in the (v, w) = (x1, y1)
/// plane. MaxS is parameterised by v (closed form w(v)); MinS by q, with
/// q = 0 mapping to the limit (0, c0).
VwPoint vw_boundary(Case c, BoundaryBranch branch, double parameter);

}  // namespace probclone
