#include <random>

#include "helpers.hpp"

using namespace tldf;

TEST_CASE("modes: seven legal modes, names and parsing") {
  CHECK(Mode::all().size() == 7);
  for (Mode m : Mode::all()) {
    auto back = Mode::parse(m.name());
    REQUIRE(back.has_value());
    CHECK(*back == m);
  }
  CHECK_FALSE(Mode::from_bits(0).has_value());
  CHECK_FALSE(Mode::parse("solid").has_value());
}

TEST_CASE("modes: join is bitwise union on all pairs") {
  const auto& all = Mode::all();
  int pairs = 0;
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      ++pairs;
      CHECK(all[i].join(all[j]).bits() == (all[i].bits() | all[j].bits()));
    }
  CHECK(pairs == 21);
  CHECK(Mode::ground().join(Mode::var()) == Mode::gv());
  CHECK(Mode::ground().join(Mode::ngv()) == Mode::novar());
  CHECK(Mode::var().join(Mode::ngv()) == Mode::noground());
  CHECK(Mode::gv().join(Mode::ngv()) == Mode::any());
}

TEST_CASE("modes: lattice laws on random triples") {
  std::mt19937 rng(20240517);
  const auto& all = Mode::all();
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
  for (int i = 0; i < 1000; ++i) {
    Mode a = all[pick(rng)], b = all[pick(rng)], c = all[pick(rng)];
    CHECK(a.join(b) == b.join(a));
    CHECK(a.join(b).join(c) == a.join(b.join(c)));
    CHECK(a.join(a) == a);
    CHECK(a.leq(a.join(b)));
    CHECK(a.leq(b) == (a.join(b) == b));
    if (a.leq(b) && b.leq(c)) CHECK(a.leq(c));
    if (a.leq(b) && b.leq(a)) CHECK(a == b);
    if (auto m = a.meet(b)) {
      CHECK(m->leq(a));
      CHECK(m->leq(b));
      CHECK(a.join(*m) == a);
    } else {
      CHECK((a.bits() & b.bits()) == 0);
    }
    CHECK(a.leq(Mode::any()));
  }
}

TEST_CASE("modes: instantiation closure") {
  CHECK(Mode::ground().inst_closure() == Mode::ground());
  CHECK(Mode::ngv().inst_closure() == Mode::novar());
  CHECK(Mode::var().inst_closure() == Mode::any());
  CHECK(Mode::novar().inst_closure() == Mode::novar());
}

TEST_CASE("bounds: order and arithmetic") {
  CHECK(Bound::finite(0) < Bound::finite(1));
  CHECK(Bound::finite(1000) < Bound::star());
  CHECK(Bound::star() < Bound::infinite());
  CHECK(Bound::finite(2) * Bound::finite(3) == Bound::finite(6));
  CHECK(Bound::finite(2) + Bound::finite(3) == Bound::finite(5));
  CHECK(Bound::star() * Bound::finite(0) == Bound::finite(0));
  CHECK(Bound::infinite() * Bound::finite(0) == Bound::finite(0));
  CHECK(Bound::star() * Bound::finite(2) == Bound::star());
  CHECK(Bound::star() + Bound::infinite() == Bound::infinite());
  CHECK(Bound::infinite().to_string() == "inf");
  CHECK(Bound::star().to_string() == "*");
}

TEST_CASE("multiplicities: composition and well-formedness") {
  Multiplicity det{Bound::finite(1), Bound::finite(1)};
  Multiplicity semi{Bound::finite(0), Bound::finite(1)};
  Multiplicity nondet{Bound::finite(0), Bound::infinite()};
  CHECK(sequence(det, semi) == semi);
  CHECK(sequence(semi, Multiplicity{Bound::finite(1), Bound::infinite()}) == nondet);
  CHECK(alternative(semi, semi) == Multiplicity{Bound::finite(0), Bound::finite(2)});
  CHECK(alternative(semi, Multiplicity{Bound::finite(1), Bound::star()}).to_string() == "<1-*>");
  CHECK(det.well_formed());
  CHECK(Multiplicity{Bound::finite(1), Bound::finite(0)}.well_formed());
  CHECK_FALSE(Multiplicity{Bound::finite(2), Bound::finite(1)}.well_formed());
  CHECK(nondet.to_string() == "<0-inf>");
}

TEST_CASE("directionality consistency") {
  Spec ok = test::spec("procedure p(X, Y).\ntypes X: nat, Y: nat.\ndir (ground, var -> ground) : <1-1>.\n");
  CHECK(check_directionality(ok).empty());
  Spec bad = test::spec("procedure p(X).\ntypes X: nat.\ndir (ground -> var) : <0-1>.\n");
  CHECK(test::has_code(check_directionality(bad), "InconsistentMode"));
  Spec nosh = test::spec("procedure p(X).\ntypes X: nat.\ndir (var) : <0-1> : {(1,3)}.\n");
  CHECK(test::has_code(check_directionality(nosh), "InvalidNoShare"));
}
