#include "doctest.h"

#include "gentle/algebra.hpp"
#include "gentle/error.hpp"
#include "gentle/field.hpp"
#include "support.hpp"

using namespace gentle;
using gentle::testing::corpus;

namespace {

const char* kTriangle = R"(quiver tri
vertex 0 1 2
arrow a : 0 -> 1
arrow b : 1 -> 2
arrow c : 2 -> 0
rel b*a
rel c*b
rel a*c
)";

std::string error_kind(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return "";
}

}  // namespace

TEST_CASE("presentations parse, serialize and round-trip") {
  const auto P = parse_presentation(kTriangle);
  CHECK(P.name == "tri");
  CHECK(P.num_vertices() == 3);
  CHECK(P.num_arrows() == 3);
  CHECK(P.relations.size() == 3);
  const auto Q = parse_presentation(serialize(P));
  CHECK(serialize(Q) == serialize(P));
  CHECK(presentation_hash(Q) == presentation_hash(P));
}

TEST_CASE("paths compose right to left and vanish on relations") {
  auto f = corpus("A");
  const Path a = parse_path("a", f.P), b = parse_path("b", f.P), c = parse_path("c", f.P), d = parse_path("d", f.P);
  CHECK_FALSE(f.P.compose(b, a).has_value());  // b*a is a relation
  CHECK_THROWS(f.P.compose(a, b));             // b ends at 2, a starts at 0
  const auto dc = f.P.compose(d, c);           // "c then d"
  REQUIRE(dc.has_value());
  CHECK(f.P.path_name(*dc) == "d*c");
  CHECK(f.P.path_name(*dc) == f.P.path_name(parse_path("d*c", f.P)));
  CHECK(dc->length() == 2);
  CHECK(error_kind([&] { parse_path("b*a", f.P); }) != "");
  CHECK(f.P.path_name(f.P.trivial(1)) == "1_1");
}

TEST_CASE("path basis products agree with composition") {
  auto f = corpus("B");
  const PathBasis& B = *f.B;
  for (int p = 0; p < B.size(); ++p)
    for (int q = 0; q < B.size(); ++q) {
      const bool composable = B.path(q).target == B.path(p).source;
      const auto r = composable ? f.P.compose(B.path(p), B.path(q)) : std::nullopt;
      if (!r) {
        CHECK(B.mul(p, q) == -1);
      } else {
        CHECK(B.mul(p, q) == B.id_of(*r));
      }
    }
  for (int v = 0; v < f.P.num_vertices(); ++v) CHECK(B.path(B.trivial_id(v)).trivial());
}

TEST_CASE("corpus algebras are gentle and finite dimensional") {
  for (const char* name : {"A", "B", "a3", "two_cycle"}) {
    auto f = corpus(name);
    CHECK(check_gentle(f.P).empty());
    CHECK(f.P.finite_dimensional());
  }
}

TEST_CASE("a third arrow at a vertex violates the first gentleness condition") {
  std::string text = kTriangle;
  text += "vertex 3\narrow z : 0 -> 3\narrow w : 0 -> 3\n";
  const auto P = parse_presentation_unchecked(text);
  const auto v = check_gentle(P);
  REQUIRE_FALSE(v.empty());
  CHECK(v.front().condition == 1);
  CHECK(error_kind([&] { parse_presentation(text); }) == "NotGentle");
}

TEST_CASE("malformed presentations are syntax errors") {
  CHECK(error_kind([] { parse_presentation_unchecked("quiver q\nvertex 1\narrow a : 1 -> 9\n"); }) != "");
  std::string text = kTriangle;
  text += "rel c*b*a\n";
  CHECK(error_kind([&] { parse_presentation(text); }) == "SyntaxError");
}

TEST_CASE("rational and prime field arithmetic") {
  CHECK(parse_rational("-2/3") == Rational(-2, 3));
  CHECK(to_string(parse_rational("6/4")) == "3/2");
  CHECK(error_kind([] { parse_rational("1/0"); }) != "");
  Fp::set_modulus(32003);
  const Fp x(12345);
  CHECK(x * x.inverse() == Fp(1));
  CHECK(Fp(-1) == Fp(32002));
  CHECK(FieldOps<Fp>::from_rational(Rational(1, 2)) * Fp(2) == Fp(1));
}
