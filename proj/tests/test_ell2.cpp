#include <doctest.h>

#include <map>
#include <set>

#include "cosetlab/sparse_vector.hpp"
#include "test_support.hpp"

using namespace cosetlab;
using test::random_element;

namespace {

SparseVector random_vector(const Group& g, const Subgroup& h, Rng& rng, int support = 4) {
  SparseVector v;
  for (int i = 0; i < support; ++i)
    v.add(canonicalize(random_element(g, rng), h),
          RatCplx(make_rat(rng.uniform(-3, 3), 1 + rng.uniform(0, 2)),
                  make_rat(rng.uniform(-3, 3), 1 + rng.uniform(0, 2))));
  return v;
}

// Oracle: averaged vector assembled key by key through a plain map.
Rat avg_norm_oracle(const FiniteSet& f, const Subgroup& h) {
  std::map<CosetKey, Rat> acc;
  for (const auto& s : f) acc[canonicalize(s, h)] += Rat(1, f.size());
  Rat nsq(0);
  for (auto& [k, c] : acc) nsq += c * c;
  return nsq;
}

}  // namespace

TEST_CASE("inner product basics") {
  CosetKey k{std::vector<Int>{Int(0)}};
  CosetKey j{std::vector<Int>{Int(1)}};
  SparseVector dk = SparseVector::delta(k), dj = SparseVector::delta(j);
  CHECK(inner(dk, dk) == RatCplx(Rat(1)));
  CHECK(inner(dk, dj) == RatCplx());

  Rng rng(61);
  Group g = Group::heis();
  Subgroup h = Subgroup::heis_center();
  for (int i = 0; i < 200; ++i) {
    SparseVector v = random_vector(g, h, rng);
    SparseVector w = random_vector(g, h, rng);
    CHECK(inner(v, w) == inner(w, v).conj());
    CHECK(inner(v, v).im == 0);
    CHECK(inner(v, v).re == v.norm_sq());
  }
}

TEST_CASE("the representation is unitary") {
  Rng rng(67);
  struct Case {
    Group g;
    Subgroup h;
  };
  for (const auto& [g, h] : {Case{Group::heis(), Subgroup::heis_center()},
                             Case{Group::lamp_bs(2), Subgroup::lamp_base()},
                             Case{Group::fin_perm(), Subgroup::sym_fix({0})}}) {
    for (int i = 0; i < 200; ++i) {
      SparseVector v = random_vector(g, h, rng);
      GroupElement s = random_element(g, rng);
      CHECK(apply(identity(g), v, h).entries() == v.entries());
      CHECK(apply(s, v, h).norm_sq() == v.norm_sq());
      CHECK(apply(s, SparseVector::delta(identity_key(h, g)), h).entries() ==
            SparseVector::delta(canonicalize(s, h)).entries());
    }
  }
}

TEST_CASE("averaging basics") {
  Group g2 = Group::int_vec(2);
  Subgroup slice = Subgroup::zd_slice(1, 2);  // keys are the first coordinate

  SparseVector d = SparseVector::delta(identity_key(slice, g2));
  FiniteSet just_e(std::vector<GroupElement>{identity(g2)});
  CHECK(average(just_e, d, slice).entries() == d.entries());

  // two disjoint translates give two half-weight copies
  FiniteSet two(std::vector<GroupElement>{identity(g2), make_int_vec({Int(5), Int(0)})});
  SparseVector avg2 = average(two, d, slice);
  CHECK(avg2.support_size() == 2);
  CHECK(avg2.norm_sq() == make_rat(1, 2));

  // uniform spread over n keys at n = 5, against direct summation
  FiniteSet box = generate(FolnerGen::box(2), 5);
  SparseVector avg = average(box, d, slice);
  CHECK(avg.support_size() == 5);
  for (const auto& [k, c] : avg.entries()) CHECK(c == RatCplx(make_rat(1, 5)));
  CHECK(avg.norm_sq() == make_rat(1, 5));
}

TEST_CASE("averages of unitaries are contractions") {
  Rng rng(71);
  Group g = Group::heis();
  Subgroup h = Subgroup::heis_center();
  for (int i = 0; i < 60; ++i) {
    std::set<GroupElement> pool;
    long size = 2 + rng.uniform(0, 12);
    while (static_cast<long>(pool.size()) < size) pool.insert(random_element(g, rng));
    FiniteSet f(std::vector<GroupElement>(pool.begin(), pool.end()));
    SparseVector v = random_vector(g, h, rng);
    CHECK(average(f, v, h).norm_sq() <= v.norm_sq());
  }
}

TEST_CASE("delta-average norms match the multiplicity formula") {
  Rng rng(73);
  struct Case {
    Group g;
    Subgroup h;
  };
  for (const auto& [g, h] : {Case{Group::heis(), Subgroup::heis_center()},
                             Case{Group::lamp_bs(2), Subgroup::lamp_base()},
                             Case{Group::int_vec(2), Subgroup::zd_slice(2, 2)},
                             Case{Group::fin_perm(), Subgroup::sym_fix({0, 1})}}) {
    for (int i = 0; i < 250; ++i) {
      std::set<GroupElement> pool;
      long size = 1 + rng.uniform(0, 15);
      while (static_cast<long>(pool.size()) < size) pool.insert(random_element(g, rng));
      FiniteSet f(std::vector<GroupElement>(pool.begin(), pool.end()));
      Rat nsq = avg_norm_sq_delta(f, h);
      CHECK(nsq == avg_norm_oracle(f, h));
      CHECK(nsq ==
            average(f, SparseVector::delta(identity_key(h, g)), h).norm_sq());
    }
  }
}

TEST_CASE("delta-average norm special values") {
  Group g2 = Group::int_vec(2);
  Subgroup slice = Subgroup::zd_slice(1, 2);
  // all distinct cosets: 1/|F|
  FiniteSet distinct(std::vector<GroupElement>{make_int_vec({Int(0), Int(0)}),
                                               make_int_vec({Int(1), Int(0)}),
                                               make_int_vec({Int(2), Int(0)})});
  CHECK(avg_norm_sq_delta(distinct, slice) == make_rat(1, 3));

  // subsets of H keep norm one
  FiniteSet inside(std::vector<GroupElement>{make_int_vec({Int(0), Int(1)}),
                                             make_int_vec({Int(0), Int(-4)}),
                                             make_int_vec({Int(0), Int(9)})});
  CHECK(avg_norm_sq_delta(inside, slice) == 1);

  // square boxes: n columns of multiplicity n, checked up to 20
  for (long n = 1; n <= 20; ++n)
    CHECK(avg_norm_sq_delta(generate(FolnerGen::box(2), n), slice) == make_rat(1, n));
}

TEST_CASE("right-Folner quotient boxes drive the norm to zero") {
  Group heis = Group::heis();
  Subgroup center = Subgroup::heis_center();
  Rat prev(2);
  for (long n = 1; n <= 6; ++n) {
    FiniteSet lifts = quotient_box_lifts(center, heis, n);
    Rat nsq = avg_norm_sq_delta(lifts, center);
    CHECK(nsq == make_rat(1, (2 * n + 1) * (2 * n + 1)));
    CHECK(nsq < prev);
    prev = nsq;
  }
}

TEST_CASE("right translates do not move the averaged norm (firmness)") {
  Rng rng(79);
  Group heis = Group::heis();
  Subgroup center = Subgroup::heis_center();
  for (long n = 1; n <= 3; ++n) {
    FiniteSet f = generate(FolnerGen::heis_box(), n);
    Rat expect = make_rat(1, (2 * n + 1) * (2 * n + 1));
    for (int i = 0; i < 100; ++i) {
      GroupElement s = random_element(heis, rng, 20);
      Rat nsq = avg_norm_sq_delta(f.translated_right(s), center);
      CHECK(nsq == expect);
      CHECK(nsq == avg_norm_oracle(f.translated_right(s), center));
    }
  }
}

TEST_CASE("weak pairing curves") {
  Group z = Group::int_vec(1);
  Subgroup triv = Subgroup::trivial();
  SparseVector d0 = SparseVector::delta(identity_key(triv, z));
  auto curve = weak_pairing_curve(FolnerGen::box(1), d0, d0, triv, 8);
  for (const auto& pt : curve) CHECK(pt.pairing == RatCplx(make_rat(1, pt.n)));

  // orthogonal directions never pair
  SparseVector off = SparseVector::delta(canonicalize(make_int_vec({Int(-3)}), triv));
  for (const auto& pt : weak_pairing_curve(FolnerGen::box(1), d0, off, triv, 6))
    CHECK(pt.pairing == RatCplx());
}

TEST_CASE("declared orbit regimes and finite-orbit projections") {
  // catalog quotients with a large acting subgroup: infinite orbits, P_L = 0
  CHECK(declared_orbit_regime(Group::heis(), Subgroup::heis_center(),
                              Subgroup::full_group()) == OrbitRegime::AllInfinite);
  CHECK(declared_orbit_regime(Group::lamp_bs(2), Subgroup::lamp_base(),
                              Subgroup::lamp_normal()) == OrbitRegime::AllInfinite);
  CHECK_THROWS_AS(project_invariant_delta(identity_key(Subgroup::heis_center(), Group::heis()),
                                          Subgroup::heis_center(), Subgroup::full_group(),
                                          Group::heis()),
                  PreconditionError);

  // finite testbeds enumerate the orbit: averaging the whole group hits the
  // projection exactly
  Group cg = Group::cyc(6);
  Subgroup h = Subgroup::finite({make_cyc(6, 3)});
  Subgroup l = Subgroup::full_group();
  CHECK(declared_orbit_regime(cg, h, l) == OrbitRegime::Finite);
  CosetKey k = identity_key(h, cg);
  SparseVector pl = project_invariant_delta(k, h, l, cg);
  CHECK(pl.support_size() == 3);  // keys of Z/6 mod {0,3}
  std::vector<GroupElement> all;
  for (long x = 0; x < 6; ++x) all.push_back(make_cyc(6, x));
  SparseVector avg = average(FiniteSet(std::move(all)), SparseVector::delta(k), h);
  CHECK(avg.entries() == pl.entries());
}

TEST_CASE("averaging defect bound") {
  // || A_F v - A_{tF} v || <= (|F delta tF| / |F|) ||v||, squared on both sides
  Rng rng(83);
  Group g = Group::heis();
  Subgroup h = Subgroup::heis_center();
  for (int i = 0; i < 60; ++i) {
    std::set<GroupElement> pool;
    long size = 2 + rng.uniform(0, 10);
    while (static_cast<long>(pool.size()) < size) pool.insert(random_element(g, rng));
    FiniteSet f(std::vector<GroupElement>(pool.begin(), pool.end()));
    GroupElement t = random_element(g, rng);
    SparseVector v = random_vector(g, h, rng);
    FiniteSet tf = f.translated_left(t);
    Rat lhs = (average(f, v, h) - average(tf, v, h)).norm_sq();
    Rat ratio = left_defect(f, t);
    CHECK(lhs <= ratio * ratio * v.norm_sq());
  }
}
