#include <doctest.h>

#include <set>

#include "cosetlab/folner.hpp"
#include "test_support.hpp"

using namespace cosetlab;
using test::random_element;

namespace {

// Brute-force symmetric difference through std::set.
Rat symdiff_oracle(const FiniteSet& a, const FiniteSet& b) {
  std::set<GroupElement> sa(a.begin(), a.end()), sb(b.begin(), b.end());
  std::size_t count = 0;
  for (const auto& x : sa)
    if (!sb.count(x)) ++count;
  for (const auto& x : sb)
    if (!sa.count(x)) ++count;
  Rat r(static_cast<unsigned long>(count), static_cast<unsigned long>(a.size()));
  r.canonicalize();
  return r;
}

}  // namespace

TEST_CASE("generator sizes and contents") {
  CHECK(generate(FolnerGen::box(1), 4).elements() ==
        std::vector<GroupElement>{make_int_vec({Int(0)}), make_int_vec({Int(1)}),
                                  make_int_vec({Int(2)}), make_int_vec({Int(3)})});
  CHECK(generate(FolnerGen::sym_ball(), 2).size() == 6);
  CHECK(generate(FolnerGen::heis_box(), 2).size() == 225);  // 5*5*9 by the triple loop
  CHECK(generate(FolnerGen::lamp_line(2), 3).size() == 64);
  CHECK(generate(FolnerGen::semidirect_rect(FolnerGen::aff_trans_box(),
                                            FolnerGen::aff_scale_geom(2)),
                 4)
            .size() == 16);

  for (const FolnerGen& gen :
       {FolnerGen::box(2), FolnerGen::heis_box(), FolnerGen::sym_ball(),
        FolnerGen::lamp_line(2)}) {
    Int prev = 0;
    for (long n = 1; n <= 4; ++n) {
      FiniteSet f = generate(gen, n);
      CHECK(Int(f.size()) == generate_count(gen, n));
      CHECK(Int(f.size()) > prev);  // strictly increasing, duplicate-free
      prev = Int(f.size());
    }
  }
}

TEST_CASE("translated sequences shift the base sets on the right") {
  FolnerGen gen = FolnerGen::translated(
      FolnerGen::heis_box(), {make_heis(0, 1, 0), make_heis(2, 0, 0), make_heis(0, 0, 7)});
  for (long n = 1; n <= 4; ++n) {
    FiniteSet base = generate(FolnerGen::heis_box(), n);
    // the translation list is indexed by n, the last entry repeating
    GroupElement s = n == 1 ? make_heis(0, 1, 0)
                            : (n == 2 ? make_heis(2, 0, 0) : make_heis(0, 0, 7));
    CHECK(generate(gen, n).elements() == base.translated_right(s).elements());
  }
}

TEST_CASE("generate respects the budget") {
  CHECK_THROWS_AS(generate(FolnerGen::sym_ball(), 20), BudgetError);
  CHECK_NOTHROW(generate(FolnerGen::sym_ball(), 4));
}

TEST_CASE("left defect closed forms") {
  for (long n : {2L, 5L, 10L, 50L}) {
    FiniteSet f = generate(FolnerGen::box(1), n);
    Rat d = left_defect(f, make_int_vec({Int(1)}));
    CHECK(d == make_rat(2, n));
    CHECK(left_defect(f, identity(Group::int_vec(1))) == 0);
  }
  for (long n : {2L, 7L, 50L}) {
    FiniteSet f = generate(FolnerGen::box(2), n);
    CHECK(left_defect(f, make_int_vec({Int(1), Int(0)})) == make_rat(2, n));
  }
}

TEST_CASE("right defect in the Heisenberg box") {
  FiniteSet f = generate(FolnerGen::heis_box(), 2);
  GroupElement t = make_heis(0, 0, 1);
  CHECK(right_defect(f, t) == make_rat(2, 9));
  CHECK(right_defect(f, t) == symdiff_oracle(f, f.translated_right(t)));
  CHECK(right_defect(f, identity(Group::heis())) == 0);
}

TEST_CASE("defects agree with the set oracle on random data") {
  Rng rng(17);
  for (const Group& g : {Group::heis(), Group::lamp_bs(2), Group::fin_perm()}) {
    for (int i = 0; i < 50; ++i) {
      std::set<GroupElement> pool;
      long size = 3 + rng.uniform(0, 20);
      while (static_cast<long>(pool.size()) < size) pool.insert(random_element(g, rng));
      FiniteSet f(std::vector<GroupElement>(pool.begin(), pool.end()));
      GroupElement t = random_element(g, rng);
      CHECK(left_defect(f, t) == symdiff_oracle(f, f.translated_left(t)));
      CHECK(right_defect(f, t) == symdiff_oracle(f, f.translated_right(t)));
      // inverse of a right Folner set is left
      CHECK(left_defect(f, t) == right_defect(f.inverted(), inverse(t)));
      CHECK(left_defect(f, t) >= 0);
      CHECK(left_defect(f, t) <= 2);
    }
  }
}

TEST_CASE("abelian groups have equal one-sided defects") {
  Rng rng(23);
  for (int i = 0; i < 100; ++i) {
    FiniteSet f = generate(FolnerGen::box(2), 4 + rng.uniform(0, 4));
    GroupElement t = random_element(Group::int_vec(2), rng);
    CHECK(left_defect(f, t) == right_defect(f, t));
  }
}

TEST_CASE("catalog defects shrink along the sequence") {
  struct Case {
    FolnerGen gen;
    GroupElement t;
  };
  std::vector<Case> cases = {
      {FolnerGen::box(1), make_int_vec({Int(3)})},
      {FolnerGen::box(2), make_int_vec({Int(1), Int(-2)})},
  };
  for (const auto& c : cases) {
    Rat d8 = left_defect(generate(c.gen, 8), c.t);
    Rat d32 = left_defect(generate(c.gen, 32, 10000000), c.t);
    CHECK(d32 < d8);
  }
  // cubic and exponential generators hit the same 4x window at desk scale:
  // heis-box at 4 -> 16, lamp-line (size p^{2n}) at 2 -> 5
  for (const GroupElement& t : {make_heis(1, 0, 0), make_heis(0, 1, 2)}) {
    Rat d4 = left_defect(generate(FolnerGen::heis_box(), 4), t);
    Rat d16 = left_defect(generate(FolnerGen::heis_box(), 16), t);
    CHECK(d16 < d4);
  }
  {
    GroupElement t = make_lamp_bs(2, Rat(1, 2), Int(0));
    CHECK(left_defect(generate(FolnerGen::lamp_line(2), 5), t) <
          left_defect(generate(FolnerGen::lamp_line(2), 2), t));
  }
  // locally finite case: translate cosets are disjoint from or equal to the
  // ball, so the defect steps from 2 to 0 once the ball swallows the translate
  CHECK(left_defect(generate(FolnerGen::sym_ball(), 2), parse_element("perm:(0 3)")) == 2);
  CHECK(left_defect(generate(FolnerGen::sym_ball(), 3), parse_element("perm:(0 3)")) == 0);
}

TEST_CASE("triple right defect for the central quotient") {
  Group heis = Group::heis();
  Subgroup center = Subgroup::heis_center();
  for (long n : {1L, 2L, 5L}) {
    auto keys = quotient_box_keys(center, heis, n);
    CHECK(keys.size() == static_cast<std::size_t>((2 * n + 1) * (2 * n + 1)));
    Rat d = triple_right_defect(keys, make_heis(1, 0, 0), center);
    CHECK(d == make_rat(2, 2 * n + 1));
    // members of H act trivially
    CHECK(triple_right_defect(keys, make_heis(0, 0, 7), center) == 0);
  }
}

TEST_CASE("triple right defect matches the pointwise action") {
  Rng rng(29);
  Group heis = Group::heis();
  Subgroup center = Subgroup::heis_center();
  for (int i = 0; i < 50; ++i) {
    std::set<CosetKey> pool;
    while (pool.size() < 12)
      pool.insert(canonicalize(random_element(heis, rng), center));
    std::vector<CosetKey> keys(pool.begin(), pool.end());
    GroupElement s = random_element(heis, rng);
    std::set<CosetKey> moved;
    for (const auto& k : keys) moved.insert(act_right_cH(s, k, center));
    std::size_t inter = 0;
    for (const auto& k : keys)
      if (moved.count(k)) ++inter;
    Rat expect(static_cast<unsigned long>(2 * (keys.size() - inter)),
               static_cast<unsigned long>(keys.size()));
    expect.canonicalize();
    CHECK(triple_right_defect(keys, s, center) == expect);
  }
}

TEST_CASE("adversarial translates reach the maximal ratio") {
  GroupElement t = make_heis(1, 0, 0);
  for (long n : {1L, 2L, 3L, 4L}) {
    FiniteSet f = generate(FolnerGen::heis_box(), n);
    // the closed-form witness from the conjugation trick
    GroupElement witness = make_heis(0, 2 * n * n + 1, 0);
    CHECK(right_defect(f, conjugate(witness, t)) == 2);

    AdversarialResult adv = adversarial_translate(f, t, 64);
    REQUIRE(adv.found);
    CHECK(adv.ratio == 2);
    // found ratio never exceeds the symmetric difference cap
    CHECK(adv.ratio <= 2);
    // the left defect of the same set stays small: this is the divergence
    CHECK(left_defect(f, t) <= make_rat(2, n));
  }

  // central translates have singleton conjugation classes
  CHECK_THROWS_AS(adversarial_translate(generate(FolnerGen::heis_box(), 2),
                                        make_heis(0, 0, 3), 16),
                  PreconditionError);

  // lamp group and finite permutations
  FiniteSet lamp = generate(FolnerGen::lamp_line(2), 3);
  AdversarialResult a2 =
      adversarial_translate(lamp, make_lamp_bs(2, Rat(1), Int(0)), 64);
  REQUIRE(a2.found);
  CHECK(a2.ratio == 2);

  FiniteSet ball = generate(FolnerGen::sym_ball(), 4);
  AdversarialResult a3 = adversarial_translate(ball, parse_element("perm:(0 1)"), 16);
  REQUIRE(a3.found);
  CHECK(a3.ratio == 2);
  CHECK_THROWS_AS(adversarial_translate(ball, make_fin_perm({}), 16), PreconditionError);
}
