#include "doctest.h"

#include <algorithm>
#include <random>

#include "gentle/cone.hpp"
#include "gentle/oracle.hpp"
#include "gentle/verify.hpp"
#include "support.hpp"

using namespace gentle;
using gentle::testing::corpus;

TEST_CASE("built complexes square to zero") {
  auto f = corpus("B");
  for (const auto& w : enumerate_strings(f.P, 4, 3)) CHECK(d_squared_zero(build_complex<Rational>(f.B, w)));
  for (const auto& b : enumerate_bands(f.P, 4, 3, Rational(-3))) CHECK(d_squared_zero(build_complex<Rational>(f.B, b)));
}

TEST_CASE("minimal complexes decompose into their words") {
  auto f = corpus("B");
  const std::vector<Word> words{parse_word("~e ~d c b @scalar=2", f.P), parse_word("c b", f.P),
                                parse_word("~j ~i", f.P)};
  const auto C = complex_of_words<Rational>(f.B, words);
  const auto M = minimize(C);
  CHECK(M.size() == C.size());
  const auto back = decompose_minimal(M);
  REQUIRE(back.size() == 3);
  CHECK(std::count_if(back.begin(), back.end(), [](const Word& w) { return w.is_band(); }) == 1);
  CHECK(is_isomorphic(complex_of_words<Rational>(f.B, back), C));
}

TEST_CASE("isomorphism distinguishes band scalars") {
  auto f = corpus("B");
  const Word b2 = parse_word("~e ~d c b @scalar=2", f.P);
  const Word b3 = parse_word("~e ~d c b @scalar=3", f.P);
  const auto C2 = build_complex<Rational>(f.B, b2), C3 = build_complex<Rational>(f.B, b3);
  CHECK(is_isomorphic(C2, C2));
  CHECK_FALSE(is_isomorphic(C2, C3));
  // A rotated and inverted presentation of the same band is isomorphic.
  CHECK(is_isomorphic(C2, build_complex<Rational>(f.B, invert(rotate_band(b2, 1)))));
}

TEST_CASE("the cone of an identity minimizes to zero") {
  auto f = corpus("A");
  const Word w = parse_word("e (d*c) b a ~d", f.P);
  const auto C = build_complex<Rational>(f.B, w);
  Components<Rational> id;
  for (int i = 0; i < C.size(); ++i) id[{i, i}] = Lin<Rational>{{f.B->trivial_id(C.slots[i].vertex), Rational(1)}};
  CHECK(chain_defect(C, C, id).empty());
  CHECK(minimize(mapping_cone(C, C, id)).size() == 0);
  CHECK(null_homotopic(C, C, id) == false);
}

TEST_CASE("minimization preserves cohomology and ignores the elimination order") {
  auto f = corpus("B");
  std::mt19937_64 rng(7);
  const auto words = enumerate_strings(f.P, 3, 2);
  int cones = 0;
  for (const auto& s : words)
    for (const auto& t : words)
      for (const auto& sb : basis_in_window(*f.B, s, t, 3))
        for (const auto& m : sb.maps) {
          if (++cones > 60) return;
          const auto C = mapping_cone(representative_chain_map<Rational>(f.B, s, sb.tau, m));
          const auto a = minimize(C), b = minimize(C, random_pivots(rng));
          CHECK(cohomology_dims(a) == cohomology_dims(C));
          CHECK(is_isomorphic(a, b));
        }
}

TEST_CASE("the prime field and the rationals agree on golden cones") {
  Fp::set_modulus(kDefaultPrime);
  auto f = corpus("A");
  const Word s = parse_word("b a c b", f.P);
  const Word t = shift(parse_word("~f c b a", f.P), -2);
  const auto m = standard_basis(*f.B, s, t).at(0);
  const auto v = verify_cone(f.B, s, t, m, cone(*f.B, s, t, m), 3);
  CHECK(v.rational);
  CHECK(v.prime);
}

TEST_CASE("complexes round-trip through json") {
  auto f = corpus("B");
  const auto C = build_complex<Rational>(f.B, parse_word("~e ~d c b @scalar=2/7", f.P));
  const auto D = complex_from_json<Rational>(f.B, complex_json(C));
  CHECK(D.size() == C.size());
  CHECK(D.d == C.d);
}

TEST_CASE("a small sweep passes and the self-test is caught") {
  SweepConfig cfg;
  cfg.max_letters = 3;
  cfg.max_path = 2;
  cfg.self_test = true;
  const auto st = sweep_algebra(corpus("two_cycle").P, cfg);
  CHECK(st.maps > 0);
  CHECK(st.cones_passed == st.maps);
  CHECK(st.basis_passed == st.triples);
  REQUIRE(st.failures.size() == 1);
  CHECK(st.failures[0].check == "self-test");
  CHECK(st.self_test_caught == 1);
  const auto j = sweep_json(st, cfg);
  CHECK(j["passed"] == false);
}
