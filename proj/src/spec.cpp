#include "tldforge/spec.hpp"

#include <algorithm>
#include <limits>

namespace tldf {

const std::vector<Mode>& Mode::all() {
  static const std::vector<Mode> modes = {ground(), ngv(),      var(), novar(),
                                          gv(),     noground(), any()};
  return modes;
}

std::optional<Mode> Mode::from_bits(std::uint8_t bits) {
  if (bits == 0 || bits > (kG | kV | kN)) return std::nullopt;
  return Mode(bits);
}

std::optional<Mode> Mode::parse(std::string_view keyword) {
  for (Mode m : all())
    if (m.name() == keyword) return m;
  return std::nullopt;
}

std::string_view Mode::name() const {
  switch (bits_) {
    case kG: return "ground";
    case kV: return "var";
    case kN: return "ngv";
    case kG | kN: return "novar";
    case kG | kV: return "gv";
    case kV | kN: return "noground";
    default: return "any";
  }
}

Mode Mode::inst_closure() const {
  std::uint8_t out = bits_;
  if (bits_ & kV) out |= kG | kN;
  if (bits_ & kN) out |= kG;
  return Mode(out);
}

std::string Bound::to_string() const {
  switch (kind_) {
    case Kind::Finite: return std::to_string(n_);
    case Kind::Star: return "*";
    case Kind::Infinite: return "inf";
  }
  return {};
}

Bound operator*(Bound a, Bound b) {
  if (a.is(0) || b.is(0)) return Bound::finite(0);
  if (a.kind_ == Bound::Kind::Infinite || b.kind_ == Bound::Kind::Infinite)
    return Bound::infinite();
  if (a.kind_ == Bound::Kind::Star || b.kind_ == Bound::Kind::Star)
    return Bound::star();
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  if (a.n_ > kMax / b.n_) return Bound::star();
  return Bound::finite(a.n_ * b.n_);
}

Bound operator+(Bound a, Bound b) {
  if (a.kind_ == Bound::Kind::Infinite || b.kind_ == Bound::Kind::Infinite)
    return Bound::infinite();
  if (a.kind_ == Bound::Kind::Star || b.kind_ == Bound::Kind::Star)
    return Bound::star();
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  if (a.n_ > kMax - b.n_) return Bound::star();
  return Bound::finite(a.n_ + b.n_);
}

bool Multiplicity::well_formed() const {
  if (min.is(1) && max.is(0)) return true;
  return min <= max;
}

std::string Multiplicity::to_string() const {
  return "<" + min.to_string() + "-" + max.to_string() + ">";
}

Multiplicity sequence(const Multiplicity& a, const Multiplicity& b) {
  return {a.min * b.min, a.max * b.max};
}

Multiplicity alternative(const Multiplicity& a, const Multiplicity& b) {
  return {a.min + b.min, a.max + b.max};
}

std::string Directionality::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < modes.size(); ++i) {
    if (i) out += ", ";
    out += modes[i].in.name();
    if (modes[i].out != modes[i].in) {
      out += " -> ";
      out += modes[i].out.name();
    }
  }
  out += ") : " + mult.to_string();
  if (!nosh.empty()) {
    out += " : {";
    for (std::size_t i = 0; i < nosh.size(); ++i) {
      if (i) out += ", ";
      out += "(" + std::to_string(nosh[i].first) + "," +
             std::to_string(nosh[i].second) + ")";
    }
    out += "}";
  }
  return out;
}

}  // namespace tldf
