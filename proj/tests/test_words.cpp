#include "doctest.h"

#include <set>

#include "gentle/error.hpp"
#include "gentle/words.hpp"
#include "support.hpp"

using namespace gentle;
using gentle::testing::corpus;

namespace {

std::string error_kind(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return "";
}

}  // namespace

TEST_CASE("words print as they parse") {
  auto f = corpus("A");
  for (const char* text : {"e (d*c) b a ~d", "~e ~f c b (a*f) e", "b a c b", "1_0", "0"}) {
    const Word w = parse_word(text, f.P);
    CHECK(word_text(f.P, w, false) == text);
    CHECK(parse_word(word_text(f.P, w), f.P) == w);
  }
}

TEST_CASE("degrees follow the letter directions") {
  auto f = corpus("A");
  const Word w = parse_word("e (d*c) b a ~d @anchor=2", f.P);
  CHECK(w.degree(0) == 2);
  CHECK(w.degree(4) == 6);
  CHECK(w.degree(5) == 5);
  CHECK(shift(w, 3).degree(0) == -1);
  CHECK(shift(shift(w, 3), -3) == w);
}

TEST_CASE("invalid words are rejected with their kind") {
  auto f = corpus("A");
  CHECK(error_kind([&] { parse_word("a b", f.P); }) == "InvalidJunction");
  CHECK(error_kind([&] { parse_word("a ~a", f.P); }) != "");
  CHECK(error_kind([&] { parse_word("a (", f.P); }) == "SyntaxError");
  auto g = corpus("B");
  CHECK(error_kind([&] { parse_word("(g*h*e) ~b ~c ~f @scalar=2", g.P); }) == "UnbalancedDirections");
  CHECK(error_kind([&] { parse_word("~e ~d c b @scalar=0", g.P); }) == "ZeroScalar");
}

TEST_CASE("inversion is an involution and canonical forms are inversion invariant") {
  auto f = corpus("B");
  for (const auto& w : enumerate_strings(f.P, 4, 2)) {
    CHECK(invert(invert(w)) == w);
    CHECK(canonical(f.P, invert(w)) == canonical(f.P, w));
    CHECK(canonical(f.P, w) == w);  // the enumeration yields canonical representatives
  }
}

TEST_CASE("band inversion takes the scalar to its inverse and keeps the class") {
  auto f = corpus("B");
  const Word b = parse_word("~e ~d c b @scalar=2", f.P);
  CHECK(monodromy(b) == Rational(2));
  CHECK(monodromy(invert(b)) == Rational(1, 2));
  for (int k = 0; k < b.size(); ++k) {
    const Word r = rotate_band(b, k);
    CHECK(monodromy(r) == monodromy(b));
    CHECK(canonical(f.P, r) == canonical(f.P, b));
    CHECK(canonical(f.P, invert(r)) == canonical(f.P, b));
  }
  CHECK(monodromy(normalize_scalar(b)) == monodromy(b));
}

TEST_CASE("enumerated bands are balanced, valid and distinct") {
  auto f = corpus("B");
  const auto bands = enumerate_bands(f.P, 6, 3, Rational(5));
  REQUIRE_FALSE(bands.empty());
  std::set<std::string> seen;
  for (const auto& b : bands) {
    int balance = 0;
    for (const auto& l : b.letters) balance += l.step();
    CHECK(balance == 0);
    CHECK_NOTHROW(validate(f.P, b));
    CHECK(seen.insert(word_key(f.P, canonical(f.P, b))).second);
  }
  // The band of the instructive example is among them.
  CHECK(seen.count(word_key(f.P, canonical(f.P, parse_word("~e ~d c b @scalar=5", f.P)))) == 1);
}

TEST_CASE("enumerated strings are valid and unique up to inversion") {
  for (const char* name : {"A", "a3", "two_cycle"}) {
    auto f = corpus(name);
    std::set<std::string> seen;
    const auto strings = enumerate_strings(f.P, 5, 3);
    for (const auto& w : strings) {
      CHECK_NOTHROW(validate(f.P, w));
      CHECK(seen.insert(word_key(f.P, w)).second);
    }
    // One representative per inversion class.
    for (const auto& w : strings) {
      const std::string inv = word_key(f.P, invert(w));
      if (inv != word_key(f.P, w)) CHECK(seen.count(inv) == 0);
    }
    // The trivial strings are included.
    for (int v = 0; v < f.P.num_vertices(); ++v) CHECK(seen.count(word_key(f.P, trivial_string(v))) == 1);
  }
}

TEST_CASE("degree profiles list vertices per degree") {
  auto f = corpus("A");
  const auto prof = degree_profile(parse_word("b a c b", f.P));
  int total = 0;
  for (const auto& [deg, vs] : prof) total += static_cast<int>(vs.size());
  CHECK(total == 5);
}
