#include "gentle/words.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "gentle/error.hpp"

namespace gentle {

int Word::num_vertices() const {
  if (is_zero()) return 0;
  if (is_band()) return size();
  return size() + 1;
}

int Word::vertex(int i) const {
  if (is_band()) {
    int n = size();
    return letters[((i % n) + n) % n].left();
  }
  return i == 0 ? base : letters[i - 1].right();
}

int Word::degree(int i) const {
  if (is_band()) {
    int n = size();
    i = ((i % n) + n) % n;
  }
  int d = anchor;
  for (int j = 0; j < i; ++j) d += letters[j].step();
  return d;
}

bool Word::operator==(const Word& o) const {
  if (kind != o.kind) return false;
  if (is_zero()) return true;
  if (letters != o.letters || anchor != o.anchor || base != o.base) return false;
  if (is_band()) return scalar == o.scalar && scalar_pos == o.scalar_pos;
  return true;
}

Word zero_word() {
  Word w;
  w.kind = WordKind::Zero;
  return w;
}

Word trivial_string(int vertex, int anchor) {
  Word w;
  w.base = vertex;
  w.anchor = anchor;
  return w;
}

void check_letter(const Presentation& p, const Letter& l) {
  if (l.path.trivial()) throw Error("InvalidLetter", "a homotopy letter needs a nontrivial path");
  if (!p.is_nonzero(l.path.arrows))
    throw Error("InvalidLetter", "path " + p.path_name(l.path) + " contains a relation");
}

bool junction_ok(const Presentation& p, const Letter& L, const Letter& R) {
  if (L.right() != R.left()) return false;
  if (L.direct() && R.direct()) return p.is_relation(L.path.first(), R.path.last());
  if (!L.direct() && !R.direct()) return p.is_relation(R.path.first(), L.path.last());
  if (L.direct()) return L.path.first() != R.path.first();
  return L.path.last() != R.path.last();
}

void check_junction(const Presentation& p, const Letter& L, const Letter& R, const char* kind) {
  if (junction_ok(p, L, R)) return;
  std::string pair = letter_text(p, L) + " " + letter_text(p, R);
  if (L.right() != R.left()) throw Error(kind, "letters " + pair + " do not form a walk");
  if (L.dir != R.dir && L.path == R.path) throw Error("CancellingPair", "letters " + pair + " cancel");
  if (L.dir == R.dir)
    throw Error(kind, "letters " + pair + " compose to a nonzero path (letters must be maximal)");
  throw Error(kind, "letters " + pair + " share an adjoining arrow");
}

void validate_string(const Presentation& p, const Word& w) {
  if (w.is_zero()) return;
  if (w.base < 0 || w.base >= p.num_vertices()) throw Error("UnknownVertex", "string has no valid base vertex");
  for (const auto& l : w.letters) check_letter(p, l);
  if (!w.letters.empty() && w.letters.front().left() != w.base)
    throw Error("InvalidJunction", "base vertex does not match the first letter");
  for (int i = 0; i + 1 < w.size(); ++i) check_junction(p, w.letters[i], w.letters[i + 1]);
}

void validate_band(const Presentation& p, const Word& w) {
  if (w.letters.empty()) throw Error("UnbalancedDirections", "a band needs letters");
  for (const auto& l : w.letters) check_letter(p, l);
  for (int i = 0; i + 1 < w.size(); ++i) check_junction(p, w.letters[i], w.letters[i + 1]);
  if (w.letters.back().right() != w.letters.front().left())
    throw Error("NotClosed", "the walk does not return to its start");
  check_junction(p, w.letters.back(), w.letters.front(), "BadCyclicJunction");
  int direct = 0;
  for (const auto& l : w.letters) direct += l.direct();
  if (2 * direct != w.size())
    throw Error("UnbalancedDirections", std::to_string(direct) + " direct vs " +
                                            std::to_string(w.size() - direct) + " inverse letters");
  const int n = w.size();
  for (int k = 1; k < n; ++k) {
    if (n % k) continue;
    bool periodic = true;
    for (int i = 0; i < n && periodic; ++i) periodic = w.letters[i] == w.letters[(i + k) % n];
    if (periodic) throw Error("NotPrimitive", "the band is a power of a shorter band");
  }
  if (sgn(w.scalar) == 0) throw Error("ZeroScalar", "band scalar must be nonzero");
  if (w.scalar_pos < 0 || w.scalar_pos >= n) throw Error("ScalarOnInverseLetter", "scalar position out of range");
  if (!w.letters[w.scalar_pos].direct())
    throw Error("ScalarOnInverseLetter", "letter " + std::to_string(w.scalar_pos) + " is inverse");
  if (w.base != w.letters.front().left()) throw Error("InvalidJunction", "base vertex mismatch");
}

void validate(const Presentation& p, const Word& w) {
  if (w.is_band())
    validate_band(p, w);
  else
    validate_string(p, w);
}

std::string letter_text(const Presentation& p, const Letter& l) {
  std::string body = p.path_name(l.path);
  if (l.path.length() > 1) body = "(" + body + ")";
  return l.direct() ? body : "~" + body;
}

std::string word_text(const Presentation& p, const Word& w, bool with_anchor) {
  if (w.is_zero()) return "0";
  std::string s;
  if (w.letters.empty()) {
    s = "1_" + p.vertices[w.base];
  } else {
    for (const auto& l : w.letters) {
      if (!s.empty()) s += ' ';
      s += letter_text(p, l);
    }
  }
  if (w.is_band()) s += " @scalar=" + to_string(w.scalar) + " @pos=" + std::to_string(w.scalar_pos);
  if (with_anchor && w.anchor != 0) s += " @anchor=" + std::to_string(w.anchor);
  return s;
}

namespace {

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

struct Parsed {
  std::vector<Letter> letters;
  int trivial_vertex = -1;
  bool zero = false;
  bool band = false;
  bool has_anchor = false, has_scalar = false, has_pos = false;
  int anchor = 0, pos = -1;
  Rational scalar = 1;
};

int parse_int(const std::string& v, const std::string& key) {
  size_t i = (!v.empty() && (v[0] == '-' || v[0] == '+')) ? 1 : 0;
  if (i == v.size()) throw Error("SyntaxError", "bad integer for @" + key);
  for (size_t j = i; j < v.size(); ++j)
    if (!std::isdigit(static_cast<unsigned char>(v[j]))) throw Error("SyntaxError", "bad integer for @" + key);
  return std::stoi(v);
}

Parsed tokenize(const std::string& expr, const Presentation& p) {
  Parsed out;
  size_t i = 0;
  const size_t n = expr.size();
  auto skip = [&] {
    while (i < n && std::isspace(static_cast<unsigned char>(expr[i]))) ++i;
  };
  auto ident = [&]() {
    size_t b = i;
    while (i < n && ident_char(expr[i])) ++i;
    if (b == i) throw Error("SyntaxError", "expected an arrow name at offset " + std::to_string(b));
    return expr.substr(b, i - b);
  };
  auto arrow = [&](const std::string& name) {
    int a = p.arrow_index(name);
    if (a < 0) throw Error("InvalidLetter", "unknown arrow '" + name + "'");
    return a;
  };
  int items = 0;
  while (true) {
    skip();
    if (i >= n) break;
    char c = expr[i];
    if (c == '@') {
      ++i;
      size_t b = i;
      while (i < n && !std::isspace(static_cast<unsigned char>(expr[i]))) ++i;
      std::string opt = expr.substr(b, i - b);
      auto eq = opt.find('=');
      std::string key = opt.substr(0, eq), val = eq == std::string::npos ? "" : opt.substr(eq + 1);
      if (key == "band" && eq == std::string::npos) {
        out.band = true;
      } else if (key == "anchor") {
        out.anchor = parse_int(val, key);
        out.has_anchor = true;
      } else if (key == "scalar") {
        out.scalar = parse_rational(val);
        out.has_scalar = out.band = true;
      } else if (key == "pos") {
        out.pos = parse_int(val, key);
        out.has_pos = out.band = true;
      } else {
        throw Error("SyntaxError", "unknown option '@" + opt + "'");
      }
      continue;
    }
    ++items;
    bool inverse = false;
    if (c == '~') {
      inverse = true;
      ++i;
      skip();
    }
    std::vector<std::string> written;
    if (i < n && expr[i] == '(') {
      ++i;
      while (true) {
        skip();
        written.push_back(ident());
        skip();
        if (i < n && expr[i] == '*') {
          ++i;
          continue;
        }
        if (i < n && expr[i] == ')') {
          ++i;
          break;
        }
        throw Error("SyntaxError", "expected '*' or ')' in a path expression");
      }
    } else {
      std::string name = ident();
      if (!inverse && name == "0" && p.arrow_index("0") < 0) {
        out.zero = true;
        continue;
      }
      if (!inverse && name.rfind("1_", 0) == 0 && p.arrow_index(name) < 0) {
        int v = p.vertex_index(name.substr(2));
        if (v < 0) throw Error("UnknownVertex", "vertex '" + name.substr(2) + "' is not declared");
        out.trivial_vertex = v;
        continue;
      }
      written.push_back(name);
    }
    if (i < n && !std::isspace(static_cast<unsigned char>(expr[i])) && expr[i] != '@')
      throw Error("SyntaxError", "unexpected character '" + std::string(1, expr[i]) + "'");
    std::vector<int> traversal;
    for (auto it = written.rbegin(); it != written.rend(); ++it) traversal.push_back(arrow(*it));
    Path path;
    try {
      path = p.make_path(traversal);
    } catch (const Error& e) {
      throw Error("InvalidLetter", e.detail());
    }
    out.letters.push_back(Letter{inverse ? Dir::Inverse : Dir::Direct, path});
  }
  if ((out.zero || out.trivial_vertex >= 0) && items != 1)
    throw Error("SyntaxError", "'0' and '1_x' must stand alone");
  if (items == 0) throw Error("SyntaxError", "empty word");
  return out;
}

}  // namespace

Word parse_word(const std::string& expr, const Presentation& p, int default_anchor) {
  Parsed t = tokenize(expr, p);
  Word w;
  if (t.zero) {
    if (t.band) throw Error("SyntaxError", "the zero string cannot be a band");
    return zero_word();
  }
  w.anchor = t.has_anchor ? t.anchor : default_anchor;
  if (t.trivial_vertex >= 0) {
    if (t.band) throw Error("SyntaxError", "a trivial string cannot be a band");
    w.base = t.trivial_vertex;
    return w;
  }
  w.letters = std::move(t.letters);
  w.base = w.letters.front().left();
  if (t.band) {
    w.kind = WordKind::Band;
    w.scalar = t.scalar;
    if (t.has_pos) {
      w.scalar_pos = t.pos;
    } else {
      for (int k = 0; k < w.size() && w.scalar_pos < 0; ++k)
        if (w.letters[k].direct()) w.scalar_pos = k;
    }
  }
  validate(p, w);
  return w;
}

Word parse_string(const std::string& expr, const Presentation& p, int anchor) {
  Word w = parse_word(expr, p, anchor);
  if (w.is_band()) throw Error("SyntaxError", "expected a string, got a band");
  return w;
}

Word parse_band(const std::string& expr, const Presentation& p, const Rational& scalar, int scalar_pos) {
  Parsed t = tokenize(expr, p);
  if (t.zero || t.trivial_vertex >= 0) throw Error("UnbalancedDirections", "a band needs letters");
  Word w;
  w.kind = WordKind::Band;
  w.letters = std::move(t.letters);
  w.base = w.letters.front().left();
  w.anchor = t.has_anchor ? t.anchor : 0;
  w.scalar = scalar;
  w.scalar_pos = scalar_pos;
  validate_band(p, w);
  return w;
}

Word invert(const Word& w) {
  if (w.is_zero()) return w;
  Word r = w;
  r.letters.clear();
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) r.letters.push_back(it->inverted());
  if (w.is_band()) {
    r.base = r.letters.front().left();
    r.scalar = 1 / monodromy(w);
    r.scalar_pos = -1;
    for (int k = 0; k < r.size() && r.scalar_pos < 0; ++k)
      if (r.letters[k].direct()) r.scalar_pos = k;
    return r;
  }
  r.base = w.vertex(w.size());
  r.anchor = w.degree(w.size());
  return r;
}

Word shift(const Word& w, int n) {
  Word r = w;
  r.anchor -= n;
  return r;
}

Word rotate_band(const Word& b, int k) {
  if (!b.is_band()) throw Error("SyntaxError", "rotate_band expects a band");
  const int n = b.size();
  k = ((k % n) + n) % n;
  Word r = b;
  for (int i = 0; i < n; ++i) r.letters[i] = b.letters[(i + k) % n];
  r.anchor = b.degree(k);
  r.base = b.vertex(k);
  r.scalar_pos = ((b.scalar_pos - k) % n + n) % n;
  return r;
}

DegreeProfile degree_profile(const Word& w) {
  DegreeProfile d;
  for (int i = 0; i < w.num_vertices(); ++i) d[w.degree(i)].push_back(w.vertex(i));
  for (auto& [deg, vs] : d) std::sort(vs.begin(), vs.end());
  return d;
}

Rational monodromy(const Word& b) {
  if (b.letters[b.scalar_pos].direct()) return b.scalar;
  return 1 / b.scalar;
}

Word normalize_scalar(const Word& b) {
  Word r = b;
  r.scalar = monodromy(b);
  r.scalar_pos = -1;
  for (int k = 0; k < r.size() && r.scalar_pos < 0; ++k)
    if (r.letters[k].direct()) r.scalar_pos = k;
  return r;
}

bool letters_less(const Presentation& p, const std::vector<Letter>& a, const std::vector<Letter>& b) {
  const size_t n = std::min(a.size(), b.size());
  for (size_t i = 0; i < n; ++i) {
    if (a[i] == b[i]) continue;
    return letter_text(p, a[i]) < letter_text(p, b[i]);
  }
  return a.size() < b.size();
}

Word canonical(const Presentation& p, const Word& w) {
  if (w.is_zero() || w.letters.empty()) return w;
  if (!w.is_band()) {
    Word v = invert(w);
    return letters_less(p, v.letters, w.letters) ? v : w;
  }
  // A band equal to a rotation of its inverse admits both lambda and 1/lambda;
  // the smaller scalar is kept.
  Word best = normalize_scalar(w);
  Word inv = invert(w);
  for (const Word* src : std::initializer_list<const Word*>{&w, &inv}) {
    for (int k = 0; k < w.size(); ++k) {
      Word c = normalize_scalar(rotate_band(*src, k));
      if (letters_less(p, c.letters, best.letters) ||
          (c.letters == best.letters && c.scalar < best.scalar))
        best = c;
    }
  }
  return best;
}

std::string word_key(const Presentation& p, const Word& w) { return word_text(p, w, false); }

namespace {

std::vector<Letter> all_letters(const Presentation& p, int max_path) {
  std::vector<Letter> out;
  for (const Path& path : p.enumerate_paths(max_path)) {
    if (path.trivial()) continue;
    out.push_back(Letter{Dir::Direct, path});
    out.push_back(Letter{Dir::Inverse, path});
  }
  return out;
}

// Depth-first extension of letter sequences along valid junctions.
template <class Visit>
void extend_walks(const Presentation& p, const std::vector<Letter>& alphabet, std::vector<Letter>& walk,
                  int max_letters, Visit&& visit) {
  visit(walk);
  if (static_cast<int>(walk.size()) == max_letters) return;
  for (const Letter& l : alphabet) {
    if (!walk.empty() && (walk.back().right() != l.left() || !junction_ok(p, walk.back(), l))) continue;
    walk.push_back(l);
    extend_walks(p, alphabet, walk, max_letters, visit);
    walk.pop_back();
  }
}

}  // namespace

std::vector<Word> enumerate_strings(const Presentation& p, int max_letters, int max_path) {
  std::vector<Word> out;
  for (int v = 0; v < p.num_vertices(); ++v) out.push_back(trivial_string(v));
  std::set<std::string> seen;
  const auto alphabet = all_letters(p, max_path);
  std::vector<Letter> walk;
  extend_walks(p, alphabet, walk, max_letters, [&](const std::vector<Letter>& letters) {
    if (letters.empty()) return;
    Word w;
    w.letters = letters;
    w.base = letters.front().left();
    Word c = canonical(p, w);
    c.anchor = 0;
    if (seen.insert(word_key(p, c)).second) out.push_back(std::move(c));
  });
  return out;
}

std::vector<Word> enumerate_bands(const Presentation& p, int max_letters, int max_path, const Rational& scalar) {
  std::vector<Word> out;
  std::set<std::string> seen;
  const auto alphabet = all_letters(p, max_path);
  std::vector<Letter> walk;
  extend_walks(p, alphabet, walk, max_letters, [&](const std::vector<Letter>& letters) {
    if (letters.size() < 2 || letters.size() % 2) return;
    Word w;
    w.kind = WordKind::Band;
    w.letters = letters;
    w.base = letters.front().left();
    w.scalar = scalar;
    for (int k = 0; k < w.size() && w.scalar_pos < 0; ++k)
      if (w.letters[k].direct()) w.scalar_pos = k;
    try {
      validate_band(p, w);
    } catch (const Error&) {
      return;
    }
    Word c = canonical(p, w);
    c.anchor = 0;
    if (seen.insert(word_key(p, c)).second) out.push_back(std::move(c));
  });
  return out;
}

}  // namespace gentle
