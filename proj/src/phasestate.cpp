#include "probclone/phasestate.hpp"

#include <cmath>
#include <stdexcept>

namespace probclone {

SignVector phase_signs(const BooleanFunction& f) {
  SignVector v(static_cast<Eigen::Index>(f.size()));
  for (std::size_t x = 0; x < f.size(); ++x) v(static_cast<Eigen::Index>(x)) = f(x) ? -1 : 1;
  return v;
}

StateVector to_state(const SignVector& signs) {
  const double norm = 1.0 / std::sqrt(static_cast<double>(signs.size()));
  return (signs.cast<double>() * norm).cast<std::complex<double>>();
}

StateVector phase_state(const BooleanFunction& f) { return to_state(phase_signs(f)); }

StateVector apply_phase_oracle(const StateVector& state, const BooleanFunction& f) {
  if (static_cast<std::size_t>(state.size()) != f.size()) throw std::domain_error("oracle dimension mismatch");
  StateVector out = state;
  for (std::size_t x = 0; x < f.size(); ++x) {
    if (f(x)) out(static_cast<Eigen::Index>(x)) = -out(static_cast<Eigen::Index>(x));
  }
  return out;
}

SignVector apply_phase_oracle(const SignVector& signs, const BooleanFunction& f) {
  if (static_cast<std::size_t>(signs.size()) != f.size()) throw std::domain_error("oracle dimension mismatch");
  return signs.cwiseProduct(phase_signs(f));
}

std::complex<double> inner(const StateVector& u, const StateVector& v) {
  if (u.size() != v.size()) throw std::domain_error("inner product dimension mismatch");
  return u.dot(v);  // Eigen's dot conjugates the first argument
}

Rational inner(const SignVector& u, const SignVector& v) {
  if (u.size() != v.size()) throw std::domain_error("inner product dimension mismatch");
  return {u.dot(v), static_cast<std::int64_t>(u.size())};
}

GramMatrix gram(std::span<const StateVector> states) {
  if (states.empty()) throw std::domain_error("gram of an empty state list");
  const auto m = static_cast<Eigen::Index>(states.size());
  GramMatrix g(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) g(i, j) = inner(states[i], states[j]);
  }
  return g;
}

RationalMatrix gram(std::span<const SignVector> states) {
  if (states.empty()) throw std::domain_error("gram of an empty state list");
  const auto m = static_cast<Eigen::Index>(states.size());
  RationalMatrix g(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) g(i, j) = inner(states[i], states[j]);
  }
  return g;
}

std::vector<StateVector> phase_states(std::span<const BooleanFunction> fs) {
  std::vector<StateVector> out;
  out.reserve(fs.size());
  for (const auto& f : fs) out.push_back(phase_state(f));
  return out;
}

std::vector<SignVector> phase_sign_vectors(std::span<const BooleanFunction> fs) {
  std::vector<SignVector> out;
  out.reserve(fs.size());
  for (const auto& f : fs) out.push_back(phase_signs(f));
  return out;
}

StateVector canonical_phase(const StateVector& state) {
  for (Eigen::Index k = 0; k < state.size(); ++k) {
    if (std::abs(state(k)) > 0.0) return state * (std::abs(state(k)) / state(k));
  }
  return state;
}

bool same_ray(const StateVector& u, const StateVector& v, double tol) {
  if (u.size() != v.size()) return false;
  return (canonical_phase(u) - canonical_phase(v)).cwiseAbs().maxCoeff() <= tol;
}

std::string sign_string(const SignVector& signs) {
  std::string out;
  for (Eigen::Index k = 0; k < signs.size(); ++k) out += signs(k) < 0 ? '-' : '+';
  return out;
}

SignVector parse_sign_string(std::string_view text) {
  std::vector<int> vals;
  for (std::size_t k = 0; k < text.size(); ++k) {
    if (text[k] == '+') {
      vals.push_back(1);
    } else if (text[k] == '-') {
      vals.push_back(-1);
    } else if (text.substr(k, 3) == "\xE2\x88\x92") {  // U+2212 minus sign
      vals.push_back(-1);
      k += 2;
    } else {
      throw std::invalid_argument("unexpected character in sign string '" + std::string(text) + "'");
    }
  }
  if (vals.size() != 4 && vals.size() != 8) throw std::invalid_argument("sign string must have 4 or 8 entries");
  return Eigen::Map<SignVector>(vals.data(), static_cast<Eigen::Index>(vals.size()));
}

Discriminator::Discriminator(std::vector<StateVector> basis, double tol) : basis_(std::move(basis)) {
  if (basis_.empty()) throw std::domain_error("discrimination basis is empty");
  const auto dim = basis_.front().size();
  if (static_cast<Eigen::Index>(basis_.size()) > dim) throw std::domain_error("more basis states than dimensions");
  for (const auto& b : basis_) {
    if (b.size() != dim) throw std::domain_error("basis states of different dimension");
  }
  const GramMatrix g = gram(basis_);
  const auto m = static_cast<Eigen::Index>(basis_.size());
  if ((g - GramMatrix::Identity(m, m)).cwiseAbs().maxCoeff() > tol) {
    throw std::domain_error("discrimination basis is not orthonormal");
  }
  rows_.resize(m, dim);
  for (Eigen::Index k = 0; k < m; ++k) rows_.row(k) = basis_[static_cast<std::size_t>(k)].adjoint();
}

Eigen::VectorXd Discriminator::probabilities(const StateVector& state) const {
  if (state.size() != rows_.cols()) throw std::domain_error("measured state has wrong dimension");
  const auto m = rows_.rows();
  Eigen::VectorXd p(m + 1);
  p.head(m) = (rows_ * state).cwiseAbs2();
  p(m) = state.squaredNorm() - p.head(m).sum();
  // round-off dust would otherwise make exact outcomes nondeterministic
  for (Eigen::Index k = 0; k <= m; ++k) {
    if (p(k) < 1e-14) p(k) = 0.0;
  }
  return p;
}

std::size_t Discriminator::measure(const StateVector& state, Rng& rng) const {
  const Eigen::VectorXd p = probabilities(state);
  std::uniform_real_distribution<double> u(0.0, p.sum());
  double r = u(rng);
  for (Eigen::Index k = 0; k < p.size(); ++k) {
    if (r < p(k)) return static_cast<std::size_t>(k);
    r -= p(k);
  }
  // r landed on the upper edge; return the last outcome with support
  for (Eigen::Index k = p.size() - 1; k >= 0; --k) {
    if (p(k) > 0.0) return static_cast<std::size_t>(k);
  }
  return outside();
}

std::size_t discriminate(const StateVector& state, std::span<const StateVector> basis, Rng& rng) {
  return Discriminator({basis.begin(), basis.end()}).measure(state, rng);
}

}  // namespace probclone
