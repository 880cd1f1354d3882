#include "probclone/feasibility.hpp"

#include <algorithm>
#include <complex>
#include <numbers>

#include "probclone/phasestate.hpp"

namespace probclone {

std::array<double, 3> eigenvalues(const HermitianMatrix3<double>& m) {
  using cd = std::complex<double>;
  const double a11 = m.re(0, 0), a22 = m.re(1, 1), a33 = m.re(2, 2);
  const cd a12{m.re(0, 1), m.im(0, 1)};
  const cd a13{m.re(0, 2), m.im(0, 2)};
  const cd a23{m.re(1, 2), m.im(1, 2)};

  const double off = std::norm(a12) + std::norm(a13) + std::norm(a23);
  const double mean = (a11 + a22 + a33) / 3.0;
  const double spread = (a11 - mean) * (a11 - mean) + (a22 - mean) * (a22 - mean) +
                        (a33 - mean) * (a33 - mean) + 2.0 * off;
  if (spread == 0.0) return {mean, mean, mean};

  // B = (A - mean I) / p has trace 0 and tr(B^2) = 6, so its eigenvalues are
  // 2 cos(phi + 2 pi k / 3) with cos(3 phi) = det(B) / 2.
  const double p = std::sqrt(spread / 6.0);
  const double b11 = (a11 - mean) / p, b22 = (a22 - mean) / p, b33 = (a33 - mean) / p;
  const cd b12 = a12 / p, b13 = a13 / p, b23 = a23 / p;
  const double det_b = b11 * b22 * b33 + 2.0 * (b12 * b23 * std::conj(b13)).real() - b11 * std::norm(b23) -
                       b22 * std::norm(b13) - b33 * std::norm(b12);
  const double r = std::clamp(det_b / 2.0, -1.0, 1.0);
  const double phi = std::acos(r) / 3.0;

  const double largest = mean + 2.0 * p * std::cos(phi);
  const double smallest = mean + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
  const double middle = 3.0 * mean - largest - smallest;
  return {smallest, middle, largest};
}

double min_eigenvalue(const HermitianMatrix3<double>& m) { return eigenvalues(m)[0]; }

bool is_psd(const FeasibilityPoint<double>& pt, double tol) { return min_eigenvalue(pt.m) >= -tol; }

HermitianMatrix3<Rational> cloned_state_gram(Case c) {
  const auto& space = FunctionSpace::get(c);
  const auto signs = phase_sign_vectors(space.s_f0.members);
  const RationalMatrix g = gram(std::span<const SignVector>(signs));
  HermitianMatrix3<Rational> out;
  out.re = g;
  return out;
}

SliceOptimum<double> slice_maximum(double q, double s, Case c) {
  if (q < 0.0) {
    try {
      return gamma2_on_slice(q, s, c);
    } catch (const std::domain_error&) {
      // fall through to the search below
    }
  }
  const double c0 = slice_constant<double>(c);
  auto gamma2_at = [&](double x) {
    const double y = c0 - q * x + s * x * x;
    return 0.5 * (y + std::sqrt(std::max(0.0, y * y - 4.0 * x * x)));
  };
  double lo = 0.0;
  double hi = intersection_x0(q, s, c);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = gamma2_at(x1), f2 = gamma2_at(x2);
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = gamma2_at(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = gamma2_at(x1);
    }
  }
  // the maximum may sit at the endpoint x = 0
  double x = 0.5 * (lo + hi);
  if (gamma2_at(0.0) >= gamma2_at(x)) x = 0.0;
  const double y = c0 - q * x + s * x * x;
  const auto [g1, g2] = gammas_from_xy(x, std::max(y, 2.0 * x));
  return {x, y, g1, g2};
}

std::pair<double, double> vw_parameter_range(Case c, BoundaryBranch branch) {
  if (branch == BoundaryBranch::MaxS) return {0.0, c == Case::ThreeBit ? 28.0 / 127.0 : 2.0 / 7.0};
  return {-q_bound<double>(c), 0.0};
}

VwPoint vw_boundary(Case c, BoundaryBranch branch, double parameter) {
  const auto [lo, hi] = vw_parameter_range(c, branch);
  const double slack = 1e-12;
  if (!(parameter >= lo - slack && parameter <= hi + slack)) {
    throw std::domain_error("boundary parameter out of range");
  }
  if (branch == BoundaryBranch::MaxS) {
    const double v = std::clamp(parameter, lo, hi);
    const double w = c == Case::ThreeBit ? 9.0 / 16.0 * std::sqrt(49.0 + 32.0 * v * v) - 49.0 / 16.0
                                         : -0.25 + 0.75 * std::sqrt(1.0 + 8.0 * v * v);
    return {v, w};
  }
  const double q = std::min(parameter, 0.0);
  if (q == 0.0) return {0.0, slice_constant<double>(c)};
  const double s = s_min<double>(c);
  const double v = stationary_x1(q, s, c);
  return {v, slice_constant<double>(c) - q * v + s * v * v};
}

}  // namespace probclone
