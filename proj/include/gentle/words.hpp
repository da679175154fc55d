#pragma once

// Graded homotopy strings and bands.
//
// A word is written left to right as it appears in the unfolded diagram.  A
// direct letter p is drawn P(target p) --p--> P(source p) and raises the degree
// by one; an inverse letter ~p is drawn P(source p) <--p-- P(target p) and
// lowers it by one.  The anchor is the degree of the leftmost vertex.

#include <map>
#include <string>
#include <vector>

#include "gentle/algebra.hpp"
#include "gentle/field.hpp"

namespace gentle {

enum class Dir { Direct, Inverse };

struct Letter {
  Dir dir = Dir::Direct;
  Path path;  // nontrivial

  bool direct() const { return dir == Dir::Direct; }
  int left() const { return direct() ? path.target : path.source; }
  int right() const { return direct() ? path.source : path.target; }
  int step() const { return direct() ? 1 : -1; }
  Letter inverted() const { return Letter{direct() ? Dir::Inverse : Dir::Direct, path}; }

  bool operator==(const Letter& o) const { return dir == o.dir && path == o.path; }
  bool operator!=(const Letter& o) const { return !(*this == o); }
};

enum class WordKind { Zero, String, Band };

// A graded homotopy string (possibly trivial), a band with scalar, or the
// empty string denoting the zero complex.
struct Word {
  WordKind kind = WordKind::String;
  std::vector<Letter> letters;
  int anchor = 0;
  int base = -1;             // leftmost vertex (needed for trivial strings)
  Rational scalar = 1;       // bands only
  int scalar_pos = -1;       // bands only: index of the direct letter carrying the scalar

  bool is_band() const { return kind == WordKind::Band; }
  bool is_zero() const { return kind == WordKind::Zero; }
  int size() const { return static_cast<int>(letters.size()); }
  // Number of vertices of the unfolded diagram (a band's closing vertex is not repeated).
  int num_vertices() const;
  int vertex(int i) const;   // i in [0, size()] for strings, taken cyclically for bands
  int degree(int i) const;   // same indexing as vertex()

  bool operator==(const Word& o) const;
  bool operator!=(const Word& o) const { return !(*this == o); }
};

using DegreeProfile = std::map<int, std::vector<int>>;  // degree -> sorted vertices

Word zero_word();
Word trivial_string(int vertex, int anchor = 0);

// Validation.  Each throws Error with the documented kind on failure.
void check_letter(const Presentation& p, const Letter& l);
void check_junction(const Presentation& p, const Letter& left, const Letter& right,
                    const char* kind = "InvalidJunction");
bool junction_ok(const Presentation& p, const Letter& left, const Letter& right);
void validate_string(const Presentation& p, const Word& w);
void validate_band(const Presentation& p, const Word& w);
void validate(const Presentation& p, const Word& w);

// Parsing and printing.  Syntax: letters `a`, `~a`, `(d*c)`, `~(d*c)`;
// `1_x` for the trivial string at x; `0` for the zero string; options
// `@anchor=<int>`, and for bands `@scalar=<rational>`, `@pos=<index>` (0-based,
// counted left to right) or `@band`.
Word parse_word(const std::string& expr, const Presentation& p, int default_anchor = 0);
Word parse_string(const std::string& expr, const Presentation& p, int anchor = 0);
Word parse_band(const std::string& expr, const Presentation& p, const Rational& scalar, int scalar_pos);
std::string letter_text(const Presentation& p, const Letter& l);
std::string word_text(const Presentation& p, const Word& w, bool with_anchor = true);

// Transformations.
Word invert(const Word& w);
Word shift(const Word& w, int n);
Word rotate_band(const Word& b, int k);
DegreeProfile degree_profile(const Word& w);

// Product of direct scalars over inverse scalars around a band; the isomorphism
// invariant of the band complex.
Rational monodromy(const Word& b);
// Put the band's scalar onto its first direct letter, preserving the monodromy.
Word normalize_scalar(const Word& b);

// Canonical representatives: the smaller of a string and its inverse; for
// bands the smallest rotation of the band or its inverse (scalar follows the
// inversion convention lambda -> 1/lambda).  Anchors are carried along.
Word canonical(const Presentation& p, const Word& w);
// Compare letter sequences lexicographically on their printed tokens.
bool letters_less(const Presentation& p, const std::vector<Letter>& a, const std::vector<Letter>& b);

// Strip anchors for comparisons that ignore grading.
std::string word_key(const Presentation& p, const Word& w);

// Enumeration for sweeps: every homotopy string (trivial ones included) with at
// most max_letters letters of path length at most max_path, one canonical
// representative per inversion class, anchored at 0.
std::vector<Word> enumerate_strings(const Presentation& p, int max_letters, int max_path);
// Every band up to rotation and inversion with at most max_letters letters,
// scalar placed on the first direct letter.
std::vector<Word> enumerate_bands(const Presentation& p, int max_letters, int max_path, const Rational& scalar);

}  // namespace gentle
