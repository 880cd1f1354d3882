#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "probclone/random.hpp"

namespace probclone {

/// Which instance of the guessing task: functions of two or of three bits.
enum class Case { TwoBit, ThreeBit };

int arity_of(Case c);
std::string_view to_string(Case c);
/// Accepts "2bit"/"3bit" (also "2"/"3", "two-bit"/"three-bit").
Case parse_case(std::string_view text);

/// Truth table of an n-bit to 1-bit function, n in {2, 3}.
///
/// Bit k of table() is f(k), where k is the input read as a binary number.
/// The printed name lists f(0...0) first, so h_{01000000} has f(001) = 1.
class BooleanFunction {
 public:
  BooleanFunction(int arity, std::uint32_t table);

  /// Parses "h_{0110}", "h_0110" or a bare bit string "0110".
  static BooleanFunction parse(std::string_view name);
  static BooleanFunction zero(int arity) { return {arity, 0}; }
  static BooleanFunction ones(int arity);

  int arity() const { return arity_; }
  std::size_t size() const { return std::size_t{1} << arity_; }
  std::uint32_t table() const { return table_; }

  /// f(x); throws std::out_of_range when x >= 2^arity.
  bool eval(std::size_t x) const;
  bool operator()(std::size_t x) const { return eval(x); }

  BooleanFunction complement() const;

  /// Bit string a1 a2 ... with a1 = f(0).
  std::string bits() const;
  /// "h_{bits}"
  std::string name() const;

  friend auto operator<=>(const BooleanFunction&, const BooleanFunction&) = default;
  friend bool operator==(const BooleanFunction&, const BooleanFunction&) = default;

 private:
  int arity_;
  std::uint32_t table_;
};

/// Pointwise XOR; throws std::domain_error on arity mismatch.
BooleanFunction operator^(const BooleanFunction& f, const BooleanFunction& g);
inline bool eval(const BooleanFunction& f, std::size_t x) { return f.eval(x); }

struct FunctionSet {
  std::string label;
  std::vector<BooleanFunction> members;

  bool contains(const BooleanFunction& f) const;
  std::optional<std::size_t> index_of(const BooleanFunction& f) const;
  std::size_t size() const { return members.size(); }
};

/// All named function sets of one task case.
///
/// pair_sets[k] = {r_k, complement(r_k)}, labelled S_<bits of r_k>; the
/// representatives r_k are the members of S2 in both cases.
struct FunctionSpace {
  Case which;
  int arity;
  FunctionSet s_f0;
  FunctionSet s1;
  FunctionSet s2;
  FunctionSet s_f12;
  std::vector<FunctionSet> pair_sets;
  FunctionSet s_f;
  /// candidate_sets[i] = candidates(s_f0.members[i])
  std::vector<FunctionSet> candidate_sets;
  /// Input at which the two S2-side members of S_f0 disagree.
  std::size_t query_input;

  static const FunctionSpace& get(Case c);

  /// Index into pair_sets of the set containing f, or nullopt if f is not in S_f.
  std::optional<std::size_t> pair_set_of(const BooleanFunction& f) const;
  /// {g in S_f12 : f0 ^ g in S_f}. Throws std::domain_error if f0 is not in S_f0.
  FunctionSet candidates(const BooleanFunction& f0) const;
};

struct TaskInstance {
  BooleanFunction f0;
  BooleanFunction f1;
  BooleanFunction f2;

  /// f0 in S_f0, f1 and f2 in S_f12, and both f0^f1, f0^f2 in S_f.
  bool satisfies_constraint(const FunctionSpace& space) const;
};

/// f0 uniform over S_f0, then f1 and f2 independently uniform over candidates(f0).
TaskInstance sample_instance(const FunctionSpace& space, Rng& rng);

}  // namespace probclone
