#include "doctest.h"

#include <algorithm>

#include "gentle/cone.hpp"
#include "gentle/oracle.hpp"
#include "gentle/verify.hpp"
#include "support.hpp"

using namespace gentle;
using gentle::testing::corpus;

namespace {

std::vector<std::string> texts(const Presentation& P, const std::vector<ConeSummand>& cs) {
  std::vector<std::string> out;
  for (const auto& c : cs) out.push_back(summand_text(P, c));
  return out;
}

}  // namespace

TEST_CASE("the basis of a stalk complex to itself is the identity") {
  auto f = corpus("A");
  for (int v = 0; v < f.P.num_vertices(); ++v) {
    const Word w = trivial_string(v);
    const auto maps = standard_basis(*f.B, w, w);
    const int dim = hom_dimension(build_complex<Rational>(f.B, w), build_complex<Rational>(f.B, w));
    CHECK(static_cast<int>(maps.size()) == dim);
    REQUIRE_FALSE(maps.empty());
    CHECK(maps[0].kind == MapKind::Graph);
    const auto cs = cone(*f.B, w, w, maps[0]);
    CHECK(std::all_of(cs.begin(), cs.end(), [](const ConeSummand& c) { return c.is_zero(); }));
  }
}

TEST_CASE("graph map between strings gives two strings") {
  auto f = corpus("A");
  const Word s = parse_word("e (d*c) b a ~d", f.P);
  const Word t = shift(parse_word("~e ~f c b (a*f) e", f.P), -3);
  const auto maps = standard_basis(*f.B, s, t);
  REQUIRE_FALSE(maps.empty());
  CHECK(maps[0].kind == MapKind::Graph);
  const auto cs = cone(*f.B, s, t, maps[0]);
  CHECK(texts(f.P, cs) == std::vector<std::string>{"d f e @anchor=2", "e d f e @anchor=-1"});
  CHECK(cone_matches<Rational>(f.B, s, t, maps[0], cs, 1));
}

TEST_CASE("quasi-graph map is represented by the single map c") {
  auto f = corpus("A");
  const Word s = parse_word("b a c b", f.P);
  const Word t = shift(parse_word("~f c b a", f.P), -2);
  const auto maps = standard_basis(*f.B, s, t);
  REQUIRE(maps.size() == 1);
  CHECK(maps[0].kind == MapKind::QuasiGraph);
  CHECK(maps[0].representative == "single");
  CHECK(is_chain_map(f.B, s, t, maps[0].components));
  const auto cs = cone(*f.B, s, t, maps[0]);
  REQUIRE(cs.size() == 2);
  CHECK(word_key(f.P, cs[0].word) == "b a c b a");
  CHECK(word_key(f.P, cs[1].word) == word_key(f.P, canonical(f.P, parse_word("~f c b", f.P))));
}

TEST_CASE("basis sizes match the oracle and representatives are independent") {
  auto f = corpus("two_cycle");
  const auto strings = enumerate_strings(f.P, 3, 2);
  for (const auto& s : strings)
    for (const auto& t : strings)
      for (int n = -4; n <= 4; ++n) {
        const Word tn = shift(t, n);
        const auto maps = standard_basis(*f.B, s, tn);
        const auto H = hom_space(build_complex<Rational>(f.B, s), build_complex<Rational>(f.B, tn));
        std::vector<Components<Rational>> reps;
        for (const auto& m : maps) {
          CHECK(is_chain_map(f.B, s, tn, m.components));
          reps.push_back(components_over<Rational>(*f.B, m.components));
        }
        CHECK(static_cast<int>(maps.size()) == H.dimension());
        CHECK(rank_modulo_homotopy(H, reps) == H.dimension());
      }
}

TEST_CASE("band-band graph map takes the sign of the overlap parity") {
  auto f = corpus("B");
  const Word s = parse_word("~e ~d c b @scalar=2", f.P);
  const Word t = parse_word("~j ~i ~g f c (b*a) @scalar=3", f.P);
  const auto maps = standard_basis(*f.B, s, t);
  REQUIRE_FALSE(maps.empty());
  const auto cs = cone(*f.B, s, t, maps[0]);
  REQUIRE(cs.size() == 1);
  REQUIRE(cs[0].word.is_band());
  const Word want = canonical(f.P, parse_word("~e ~(f*d) g i j ~a @scalar=-2/3", f.P));
  CHECK(word_key(f.P, cs[0].word) == word_key(f.P, want));
  CHECK(cone_matches<Rational>(f.B, s, t, maps[0], cs, 1));
  auto flipped = cs;
  flipped[0].word.scalar = -flipped[0].word.scalar;
  CHECK_FALSE(cone_matches<Rational>(f.B, s, t, maps[0], flipped, 1));
}

TEST_CASE("the self-extension of a band is the band of multiplicity two") {
  auto f = corpus("B");
  const Word b = parse_word("~e ~d c b @scalar=2", f.P);
  int found = 0;
  for (int n = -3; n <= 3; ++n) {
    const Word bn = shift(b, n);
    for (const auto& m : standard_basis(*f.B, b, bn)) {
      const auto cs = cone(*f.B, b, bn, m);
      if (cs.size() != 1 || cs[0].multiplicity != 2) continue;
      ++found;
      CHECK(cone_matches<Rational>(f.B, b, bn, m, cs, 1));
      // Two separate copies of the band are not the cone.
      auto split = cs;
      split[0].multiplicity = 1;
      split.push_back(split[0]);
      CHECK_FALSE(cone_matches<Rational>(f.B, b, bn, m, split, 1));
      CHECK(summand_text(f.P, cs[0]).find("@multiplicity=2") != std::string::npos);
    }
  }
  CHECK(found == 1);
}

TEST_CASE("multiplicity-two band complex is a Jordan block") {
  auto f = corpus("B");
  const Word b = parse_word("~e ~d c b @scalar=2", f.P);
  const auto J = build_band_complex<Rational>(f.B, b, 2);
  CHECK(J.size() == 2 * b.num_vertices());
  CHECK(d_squared_zero(J));
  const auto twice = direct_sum(f.B, std::vector<Complex<Rational>>{build_complex<Rational>(f.B, b),
                                                                    build_complex<Rational>(f.B, b)});
  CHECK(cohomology_dims(J) == cohomology_dims(twice));
  CHECK_FALSE(is_isomorphic(J, twice));
}

TEST_CASE("cone summand counts follow the kinds of the words") {
  auto f = corpus("B");
  auto words = enumerate_strings(f.P, 3, 2);
  for (auto& b : enumerate_bands(f.P, 4, 2, Rational(2))) words.push_back(b);
  long checked = 0;
  for (const auto& s : words)
    for (const auto& t : words)
      for (const auto& sb : basis_in_window(*f.B, s, t, default_window(s, t)))
        for (const auto& m : sb.maps) {
          const auto cs = cone(*f.B, s, sb.tau, m);
          const size_t want = (!s.is_band() && !sb.tau.is_band()) ? 2 : 1;
          CHECK(cs.size() == want);
          ++checked;
        }
  CHECK(checked > 1000);
}

TEST_CASE("unfolded diagrams render letters and degrees") {
  auto f = corpus("A");
  const std::string d = unfolded_diagram(f.P, parse_word("e (d*c) b a ~d", f.P));
  CHECK(d.find("-e->") != std::string::npos);
  CHECK(d.find("-d*c->") != std::string::npos);
  CHECK(d.find("<-d-") != std::string::npos);
  CHECK(unfolded_diagram(f.P, zero_word()) == "0 (contractible)");
}

TEST_CASE("cone reports serialize to json") {
  auto f = corpus("B");
  const Word b = parse_word("~e ~d c b @scalar=2", f.P);
  const auto j = summand_json(f.P, ConeSummand{WordKind::Band, b, "test"});
  CHECK(j.contains("word"));
}
