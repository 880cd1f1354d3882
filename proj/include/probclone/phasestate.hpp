#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "probclone/funcspace.hpp"
#include "probclone/random.hpp"
#include "probclone/rational.hpp"

namespace probclone {

/// Floating-point state of the 2^n-dimensional input register.
using StateVector = Eigen::VectorXcd;

/// Exact phase state: integer amplitudes sharing the normalisation
/// 1/sqrt(dim). Inner products of sign vectors are rational.
using SignVector = Eigen::VectorXi;

/// Gram matrix of floating-point states.
using GramMatrix = Eigen::MatrixXcd;

/// (+-1) entries (-1)^f(x).
SignVector phase_signs(const BooleanFunction& f);

/// sum_x (-1)^f(x) |x> / sqrt(2^n); the ancilla of the oracle is factored out.
StateVector phase_state(const BooleanFunction& f);

StateVector to_state(const SignVector& signs);

/// Multiplies amplitude x by (-1)^f(x).
StateVector apply_phase_oracle(const StateVector& state, const BooleanFunction& f);
SignVector apply_phase_oracle(const SignVector& signs, const BooleanFunction& f);

/// <u|v>, conjugate-linear in u.
std::complex<double> inner(const StateVector& u, const StateVector& v);
/// Exact <u|v> of two sign vectors with the 1/sqrt(dim) normalisation.
Rational inner(const SignVector& u, const SignVector& v);

GramMatrix gram(std::span<const StateVector> states);
RationalMatrix gram(std::span<const SignVector> states);

std::vector<StateVector> phase_states(std::span<const BooleanFunction> fs);
std::vector<SignVector> phase_sign_vectors(std::span<const BooleanFunction> fs);

/// Multiplies by a global phase so the first nonzero amplitude is real positive.
StateVector canonical_phase(const StateVector& state);
/// Equality up to global phase.
bool same_ray(const StateVector& u, const StateVector& v, double tol = 1e-12);

/// Sign shorthand such as "+-++++++". Accepts '-' and U+2212.
std::string sign_string(const SignVector& signs);
SignVector parse_sign_string(std::string_view text);

/// Projective measurement onto an orthonormal set of states. Outcome k < size()
/// means basis element k; outcome size() is the "outside the basis" result
/// that absorbs the leftover probability when the basis is incomplete.
class Discriminator {
 public:
  /// Throws std::domain_error if the basis is empty, larger than the
  /// dimension, or its Gram matrix deviates from identity by more than tol.
  explicit Discriminator(std::vector<StateVector> basis, double tol = 1e-10);

  std::size_t size() const { return basis_.size(); }
  std::size_t outside() const { return basis_.size(); }
  const std::vector<StateVector>& basis() const { return basis_; }

  /// |<b_k|state>|^2 for each k, followed by the remainder.
  Eigen::VectorXd probabilities(const StateVector& state) const;
  std::size_t measure(const StateVector& state, Rng& rng) const;

 private:
  std::vector<StateVector> basis_;
  Eigen::MatrixXcd rows_;  // basis vectors as adjoint rows
};

/// One-shot form of Discriminator::measure.
std::size_t discriminate(const StateVector& state, std::span<const StateVector> basis, Rng& rng);

}  // namespace probclone
