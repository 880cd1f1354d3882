#include "probclone/funcspace.hpp"

#include <algorithm>
#include <initializer_list>
#include <stdexcept>

namespace probclone {

int arity_of(Case c) { return c == Case::TwoBit ? 2 : 3; }

std::string_view to_string(Case c) { return c == Case::TwoBit ? "2bit" : "3bit"; }

Case parse_case(std::string_view text) {
  if (text == "2bit" || text == "2" || text == "two-bit") return Case::TwoBit;
  if (text == "3bit" || text == "3" || text == "three-bit") return Case::ThreeBit;
  throw std::invalid_argument("unknown case '" + std::string(text) + "' (expected 2bit or 3bit)");
}

BooleanFunction::BooleanFunction(int arity, std::uint32_t table) : arity_(arity), table_(table) {
  if (arity != 2 && arity != 3) throw std::domain_error("arity must be 2 or 3");
  if (table >> size() != 0) throw std::domain_error("truth table has bits beyond 2^arity");
}

BooleanFunction BooleanFunction::ones(int arity) {
  return {arity, static_cast<std::uint32_t>((1u << (1u << arity)) - 1u)};
}

BooleanFunction BooleanFunction::parse(std::string_view name) {
  std::string_view bits = name;
  if (bits.starts_with("h_")) bits.remove_prefix(2);
  if (bits.starts_with("{")) {
    if (!bits.ends_with("}")) throw std::invalid_argument("unbalanced braces in '" + std::string(name) + "'");
    bits = bits.substr(1, bits.size() - 2);
  }
  int arity = bits.size() == 4 ? 2 : bits.size() == 8 ? 3 : 0;
  if (arity == 0) throw std::invalid_argument("function name needs 4 or 8 bits: '" + std::string(name) + "'");
  std::uint32_t table = 0;
  for (std::size_t k = 0; k < bits.size(); ++k) {
    if (bits[k] == '1') {
      table |= 1u << k;
    } else if (bits[k] != '0') {
      throw std::invalid_argument("bad bit in '" + std::string(name) + "'");
    }
  }
  return {arity, table};
}

bool BooleanFunction::eval(std::size_t x) const {
  if (x >= size()) throw std::out_of_range("input index out of range for arity " + std::to_string(arity_));
  return (table_ >> x) & 1u;
}

BooleanFunction BooleanFunction::complement() const { return *this ^ ones(arity_); }

std::string BooleanFunction::bits() const {
  std::string out(size(), '0');
  for (std::size_t k = 0; k < size(); ++k) {
    if ((table_ >> k) & 1u) out[k] = '1';
  }
  return out;
}

std::string BooleanFunction::name() const { return "h_{" + bits() + "}"; }

BooleanFunction operator^(const BooleanFunction& f, const BooleanFunction& g) {
  if (f.arity() != g.arity()) throw std::domain_error("xor of functions with different arity");
  return {f.arity(), f.table() ^ g.table()};
}

bool FunctionSet::contains(const BooleanFunction& f) const { return index_of(f).has_value(); }

std::optional<std::size_t> FunctionSet::index_of(const BooleanFunction& f) const {
  auto it = std::find(members.begin(), members.end(), f);
  if (it == members.end()) return std::nullopt;
  return static_cast<std::size_t>(it - members.begin());
}

namespace {

FunctionSet make_set(std::string label, std::initializer_list<std::string_view> names) {
  FunctionSet s{std::move(label), {}};
  for (auto n : names) s.members.push_back(BooleanFunction::parse(n));
  return s;
}

FunctionSpace build(Case c, FunctionSet s_f0, FunctionSet s1, FunctionSet s2) {
  FunctionSpace space{c, arity_of(c), std::move(s_f0), std::move(s1), std::move(s2), {}, {}, {}, {}, 0};

  space.s_f12.label = "S_f12";
  space.s_f12.members = space.s1.members;
  space.s_f12.members.insert(space.s_f12.members.end(), space.s2.members.begin(), space.s2.members.end());

  space.s_f.label = "S_f";
  for (const auto& rep : space.s2.members) {
    FunctionSet pair{"S_" + rep.bits(), {rep, rep.complement()}};
    space.s_f.members.insert(space.s_f.members.end(), pair.members.begin(), pair.members.end());
    space.pair_sets.push_back(std::move(pair));
  }

  for (const auto& f0 : space.s_f0.members) space.candidate_sets.push_back(space.candidates(f0));

  const auto& a = space.s_f0.members[1];
  const auto& b = space.s_f0.members[2];
  while (a(space.query_input) == b(space.query_input)) ++space.query_input;
  return space;
}

FunctionSpace build_three_bit() {
  return build(Case::ThreeBit,
               make_set("S_f0", {"01000000", "00110011", "11000011"}),
               make_set("S1", {"01000000", "10110000", "10001100", "00100110", "00010101", "10000011",
                               "00101001", "00011010"}),
               make_set("S2", {"00000000", "00001111", "01010101", "00110011", "10011001", "11000011",
                               "01101001", "10100101"}));
}

// The two-bit sets are not listed in full anywhere; they follow the same
// recipe as the three-bit ones. S_f0 is the three cloned states, S2 holds one
// representative of each affine pair {h, ~h} (including the two S2-side f0),
// and S1 = h_{0010} ^ S2.
FunctionSpace build_two_bit() {
  return build(Case::TwoBit,
               make_set("S_f0", {"0010", "0101", "1001"}),
               make_set("S1", {"0010", "0001", "0111", "1011"}),
               make_set("S2", {"0000", "0011", "0101", "1001"}));
}

}  // namespace

const FunctionSpace& FunctionSpace::get(Case c) {
  static const FunctionSpace two = build_two_bit();
  static const FunctionSpace three = build_three_bit();
  return c == Case::TwoBit ? two : three;
}

std::optional<std::size_t> FunctionSpace::pair_set_of(const BooleanFunction& f) const {
  for (std::size_t k = 0; k < pair_sets.size(); ++k) {
    if (pair_sets[k].contains(f)) return k;
  }
  return std::nullopt;
}

FunctionSet FunctionSpace::candidates(const BooleanFunction& f0) const {
  if (!s_f0.contains(f0)) throw std::domain_error(f0.name() + " is not in S_f0");
  std::vector<BooleanFunction> members;
  for (const auto& g : s_f12.members) {
    if (s_f.contains(f0 ^ g)) members.push_back(g);
  }
  for (const auto* named : {&s1, &s2}) {
    if (named->members == members) return {named->label, std::move(members)};
  }
  return {"candidates(" + f0.name() + ")", std::move(members)};
}

bool TaskInstance::satisfies_constraint(const FunctionSpace& space) const {
  return space.s_f0.contains(f0) && space.s_f12.contains(f1) && space.s_f12.contains(f2) &&
         space.s_f.contains(f0 ^ f1) && space.s_f.contains(f0 ^ f2);
}

TaskInstance sample_instance(const FunctionSpace& space, Rng& rng) {
  std::uniform_int_distribution<std::size_t> pick_f0(0, space.s_f0.size() - 1);
  const std::size_t i = pick_f0(rng);
  const auto& cands = space.candidate_sets[i].members;
  std::uniform_int_distribution<std::size_t> pick(0, cands.size() - 1);
  const auto& f1 = cands[pick(rng)];
  const auto& f2 = cands[pick(rng)];
  return {space.s_f0.members[i], f1, f2};
}

}  // namespace probclone
