// Procedure specifications: modes, multiplicities, directionalities.

#ifndef TLDFORGE_SPEC_HPP
#define TLDFORGE_SPEC_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tldforge/ast.hpp"

namespace tldf {

// An instantiation mode: a nonempty subset of {G, V, N} (ground, free
// variable, non-ground non-variable). Ordered by inclusion.
class Mode {
 public:
  static constexpr std::uint8_t kG = 1;
  static constexpr std::uint8_t kV = 2;
  static constexpr std::uint8_t kN = 4;

  static Mode ground() { return Mode(kG); }
  static Mode var() { return Mode(kV); }
  static Mode ngv() { return Mode(kN); }
  static Mode novar() { return Mode(kG | kN); }
  static Mode gv() { return Mode(kG | kV); }
  static Mode noground() { return Mode(kV | kN); }
  static Mode any() { return Mode(kG | kV | kN); }
  // All seven legal modes, in declaration order of the mode keywords.
  static const std::vector<Mode>& all();

  static std::optional<Mode> from_bits(std::uint8_t bits);
  static std::optional<Mode> parse(std::string_view keyword);

  std::uint8_t bits() const { return bits_; }
  std::string_view name() const;

  bool leq(Mode other) const { return (bits_ & ~other.bits_) == 0; }
  Mode join(Mode other) const { return Mode(bits_ | other.bits_); }
  // Empty intersection signals a contradiction.
  std::optional<Mode> meet(Mode other) const {
    return from_bits(bits_ & other.bits_);
  }
  bool may_be_ground() const { return bits_ & kG; }
  bool may_be_var() const { return bits_ & kV; }
  bool may_be_nonvar() const { return bits_ & (kG | kN); }
  bool is_ground() const { return bits_ == kG; }
  bool is_var() const { return bits_ == kV; }

  // Everything a term in this mode can become by further instantiation.
  Mode inst_closure() const;

  friend bool operator==(Mode, Mode) = default;

 private:
  explicit Mode(std::uint8_t bits) : bits_(bits) {}
  std::uint8_t bits_;
};

// A bound on the number of answer substitutions: a natural number, '*'
// (fixed but unknown) or infinity. Ordered 0 < 1 < ... < * < inf.
class Bound {
 public:
  enum class Kind : std::uint8_t { Finite, Star, Infinite };

  constexpr Bound() = default;
  static constexpr Bound finite(std::uint64_t n) { return Bound(Kind::Finite, n); }
  static constexpr Bound star() { return Bound(Kind::Star, 0); }
  static constexpr Bound infinite() { return Bound(Kind::Infinite, 0); }

  Kind kind() const { return kind_; }
  std::uint64_t value() const { return n_; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  bool is(std::uint64_t n) const { return is_finite() && n_ == n; }

  std::string to_string() const;

  friend bool operator==(Bound, Bound) = default;
  friend std::strong_ordering operator<=>(Bound a, Bound b) {
    if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
    return a.n_ <=> b.n_;
  }

  friend Bound operator*(Bound a, Bound b);
  friend Bound operator+(Bound a, Bound b);

 private:
  constexpr Bound(Kind k, std::uint64_t n) : kind_(k), n_(n) {}
  Kind kind_ = Kind::Finite;
  std::uint64_t n_ = 0;
};

struct Multiplicity {
  Bound min;
  Bound max;

  // (1,0) is the erroneous multiplicity; otherwise min <= max.
  bool well_formed() const;
  std::string to_string() const;  // "<1-1>", "<0-inf>"
  friend bool operator==(const Multiplicity&, const Multiplicity&) = default;
};

// Conjunctive composition (componentwise product) and disjunctive
// composition (componentwise sum).
Multiplicity sequence(const Multiplicity& a, const Multiplicity& b);
Multiplicity alternative(const Multiplicity& a, const Multiplicity& b);

struct ModePair {
  Mode in = Mode::any();
  Mode out = Mode::any();
  friend bool operator==(const ModePair&, const ModePair&) = default;
};

struct Directionality {
  std::vector<ModePair> modes;
  Multiplicity mult;
  // 1-based parameter index pairs that do not share variables.
  std::vector<std::pair<int, int>> nosh;
  SourcePos pos;

  std::string to_string() const;
};

struct Spec {
  std::string name;
  std::vector<std::string> params;
  std::vector<std::string> param_types;
  std::string relation;
  std::string external;
  std::vector<Directionality> dirs;
  std::string file;
  SourcePos pos;

  std::size_t arity() const { return params.size(); }
};

}  // namespace tldf

#endif  // TLDFORGE_SPEC_HPP
