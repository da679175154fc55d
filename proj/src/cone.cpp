#include "gentle/cone.hpp"

#include <algorithm>
#include <sstream>

#include "gentle/error.hpp"

namespace gentle {

namespace {

// ---------------------------------------------------------------------------
// Formal walks.  A word is expanded into arrow symbols read left to right: a
// direct letter is walked against its arrows, an inverse letter along them.
// Gaps between symbols carry the cone degree of the slot they sit on, when
// known (letter boundaries of sigma and tau pieces).

struct Sym {
  int arrow = 0;
  bool against = false;
};

struct Formal {
  std::vector<Sym> syms;
  std::vector<std::optional<int>> deg{std::nullopt};  // syms.size() + 1 entries
  int start = -1;                                      // vertex at gap 0
};

std::optional<int> merge_degree(std::optional<int> a, std::optional<int> b) {
  if (!a) return b;
  if (!b) return a;
  // Slots identified by an isomorphism component disagree by one; such gaps
  // are interior to the cone's reduction and carry no grading information.
  if (*a != *b) return std::nullopt;
  return a;
}

int vertex_before(const Presentation& P, Sym s) {
  const Arrow& a = P.arrows[s.arrow];
  return s.against ? a.target : a.source;
}
int vertex_after(const Presentation& P, Sym s) {
  const Arrow& a = P.arrows[s.arrow];
  return s.against ? a.source : a.target;
}
int end_vertex(const Presentation& P, const Formal& f) {
  return f.syms.empty() ? f.start : vertex_after(P, f.syms.back());
}

void push_letter(Formal& f, const Letter& walked) {
  const auto& arrows = walked.path.arrows;
  if (walked.direct()) {
    for (auto it = arrows.rbegin(); it != arrows.rend(); ++it) f.syms.push_back(Sym{*it, true});
  } else {
    for (int a : arrows) f.syms.push_back(Sym{a, false});
  }
  f.deg.resize(f.syms.size() + 1, std::nullopt);
}

void append(const Presentation& P, Formal& a, const Formal& b) {
  if (a.start < 0) {
    a = b;
    return;
  }
  if (end_vertex(P, a) != b.start)
    throw Error("ConeAssembly", "pieces do not meet at a common vertex");
  a.deg.back() = merge_degree(a.deg.back(), b.deg.front());
  a.syms.insert(a.syms.end(), b.syms.begin(), b.syms.end());
  a.deg.insert(a.deg.end(), b.deg.begin() + 1, b.deg.end());
}

// Walk along an oriented word between unfolded positions (bands wrap).
Formal segment(const Word& w, int from, int to, int degree_shift) {
  Walker W(w);
  Formal f;
  f.start = W.vertex(from);
  f.deg[0] = W.degree(from) + degree_shift;
  const int d = to >= from ? 1 : -1;
  for (int p = from; p != to; p += d) {
    auto l = W.step(p, d);
    if (!l) throw Error("ConeAssembly", "walk leaves the word");
    push_letter(f, *l);
    f.deg.back() = W.degree(p + d) + degree_shift;
  }
  return f;
}

// A connecting component walked from sigma to tau (direct) or tau to sigma (inverse).
Formal connector(const Path& p, bool sigma_to_tau) {
  Formal f;
  Letter l{sigma_to_tau ? Dir::Direct : Dir::Inverse, p};
  f.start = l.left();
  push_letter(f, l);
  return f;
}

bool cancels(Sym x, Sym y) { return x.arrow == y.arrow && x.against != y.against; }

// Consecutive symbols belong to one homotopy letter.
bool joins(const Presentation& P, Sym x, Sym y) {
  if (x.against != y.against) return false;
  return x.against ? !P.is_relation(x.arrow, y.arrow) : !P.is_relation(y.arrow, x.arrow);
}

Formal reduce_linear(const Formal& f) {
  Formal r;
  r.start = f.start;
  r.deg = {f.deg[0]};
  for (size_t k = 0; k < f.syms.size(); ++k) {
    if (!r.syms.empty() && cancels(r.syms.back(), f.syms[k])) {
      r.syms.pop_back();
      r.deg.pop_back();
      r.deg.back() = merge_degree(r.deg.back(), f.deg[k + 1]);
    } else {
      r.syms.push_back(f.syms[k]);
      r.deg.push_back(f.deg[k + 1]);
    }
  }
  return r;
}

Formal reduce_cyclic(const Presentation& P, const Formal& f) {
  Formal r = reduce_linear(f);
  r.deg.front() = r.deg.back() = merge_degree(r.deg.front(), r.deg.back());
  while (r.syms.size() >= 2 && cancels(r.syms.back(), r.syms.front())) {
    Formal s;
    s.syms.assign(r.syms.begin() + 1, r.syms.end() - 1);
    s.deg.assign(r.deg.begin() + 1, r.deg.end() - 1);
    s.deg.front() = s.deg.back() = merge_degree(s.deg.front(), s.deg.back());
    s.start = vertex_after(P, r.syms.front());
    r = std::move(s);
  }
  return r;
}

// Letters of a reduced linear symbol run between consecutive boundaries.
Letter letter_of(const Presentation& P, const std::vector<Sym>& run) {
  std::vector<int> arrows;
  for (const Sym& s : run) arrows.push_back(s.arrow);
  if (run.front().against) {
    std::reverse(arrows.begin(), arrows.end());
    return Letter{Dir::Direct, P.make_path(arrows)};
  }
  return Letter{Dir::Inverse, P.make_path(arrows)};
}

// Anchor from the known degrees at letter boundaries.
int anchor_from(const std::vector<int>& boundaries, const std::vector<Letter>& letters,
                const std::vector<std::optional<int>>& deg) {
  std::optional<int> anchor;
  int offset = 0;
  for (size_t t = 0; t < boundaries.size(); ++t) {
    if (t > 0) offset += letters[t - 1].step();
    const auto& d = deg[boundaries[t]];
    if (!d) continue;
    if (anchor && *anchor != *d - offset) throw Error("ConeAssembly", "inconsistent grading of a summand");
    anchor = *d - offset;
  }
  if (!anchor) throw Error("ConeAssembly", "summand has no graded slot");
  return *anchor;
}

// Reduced string of a formal walk; drop_first / drop_last remove the outermost
// letter at that end (an end whose partner slot was cancelled), if any.
Word linear_word(const Presentation& P, const Formal& raw, bool drop_first = false, bool drop_last = false) {
  Formal f = reduce_linear(raw);
  auto boundaries = [&] {
    const int n = static_cast<int>(f.syms.size());
    std::vector<int> b{0};
    for (int p = 1; p < n; ++p)
      if (!joins(P, f.syms[p - 1], f.syms[p])) b.push_back(p);
    if (n > 0) b.push_back(n);
    return b;
  };
  std::vector<int> bounds = boundaries();
  if (drop_first && bounds.size() > 1) {
    const int cut = bounds[1];
    f.start = vertex_after(P, f.syms[cut - 1]);
    f.syms.erase(f.syms.begin(), f.syms.begin() + cut);
    f.deg.erase(f.deg.begin(), f.deg.begin() + cut);
    bounds = boundaries();
  }
  if (drop_last && bounds.size() > 1) {
    const int cut = bounds[bounds.size() - 2];
    f.syms.resize(cut);
    f.deg.resize(cut + 1);
    bounds = boundaries();
  }
  Word w;
  w.kind = WordKind::String;
  w.base = f.start;
  for (size_t t = 0; t + 1 < bounds.size(); ++t)
    w.letters.push_back(letter_of(P, {f.syms.begin() + bounds[t], f.syms.begin() + bounds[t + 1]}));
  w.anchor = anchor_from(bounds, w.letters, f.deg);
  validate_string(P, w);
  return canonical(P, w);
}

Word cyclic_word(const Presentation& P, const Formal& raw, const Rational& scalar) {
  Formal f = reduce_cyclic(P, raw);
  const int n = static_cast<int>(f.syms.size());
  if (n == 0) throw Error("ConeAssembly", "band collapsed to nothing");
  int first = -1;
  for (int p = 0; p < n && first < 0; ++p)
    if (!joins(P, f.syms[(p + n - 1) % n], f.syms[p])) first = p;
  if (first < 0) throw Error("ConeAssembly", "cyclic word has no letter boundary");
  // Rotate so that gap 0 is a boundary.
  Formal g;
  g.syms.assign(f.syms.begin() + first, f.syms.end());
  g.syms.insert(g.syms.end(), f.syms.begin(), f.syms.begin() + first);
  g.deg.assign(f.deg.begin() + first, f.deg.end() - 1);
  g.deg.insert(g.deg.end(), f.deg.begin(), f.deg.begin() + first + 1);
  g.start = vertex_before(P, g.syms.front());
  std::vector<int> bounds{0};
  for (int p = 1; p < n; ++p)
    if (!joins(P, g.syms[p - 1], g.syms[p])) bounds.push_back(p);
  bounds.push_back(n);
  Word w;
  w.kind = WordKind::Band;
  w.base = g.start;
  for (size_t t = 0; t + 1 < bounds.size(); ++t)
    w.letters.push_back(letter_of(P, {g.syms.begin() + bounds[t], g.syms.begin() + bounds[t + 1]}));
  w.anchor = anchor_from(bounds, w.letters, g.deg);
  w.scalar = scalar;
  for (int k = 0; k < w.size() && w.scalar_pos < 0; ++k)
    if (w.letters[k].direct()) w.scalar_pos = k;
  validate_band(P, w);
  return canonical(P, w);
}

ConeSummand zero_summand(std::string provenance) {
  return ConeSummand{WordKind::Zero, zero_word(), std::move(provenance)};
}

ConeSummand string_summand(const Presentation& P, const Formal& f, std::string provenance, bool drop_first = false,
                           bool drop_last = false) {
  return ConeSummand{WordKind::String, linear_word(P, f, drop_first, drop_last), std::move(provenance)};
}

ConeSummand band_summand(const Presentation& P, const Formal& f, const Rational& scalar, std::string provenance) {
  return ConeSummand{WordKind::Band, cyclic_word(P, f, scalar), std::move(provenance)};
}

// Concatenation helper bound to the oriented sigma and tau.
struct Assembler {
  const Presentation& P;
  const OrientedMap& om;

  Formal S(int a, int b) const { return segment(om.sigma, a, b, -1); }
  Formal T(int a, int b) const { return segment(om.tau, a, b, 0); }
  Formal join(std::initializer_list<Formal> parts) const {
    Formal out;
    for (const auto& p : parts) append(P, out, p);
    return out;
  }
  int ns() const { return om.sigma.size(); }
  int nt() const { return om.tau.size(); }
  bool s_has(int i, int d) const { return Walker(om.sigma).step(i, d).has_value(); }
  bool t_has(int j, int d) const { return Walker(om.tau).step(j, d).has_value(); }
  Rational band_scalar(bool negate) const {
    Rational r = monodromy(om.sigma) / monodromy(om.tau);
    return negate ? Rational(-r) : r;
  }
};

std::string case_label(const char* kind, const char* part, bool s_empty, bool t_empty, const char* side) {
  std::string label = std::string(kind) + "/" + part;
  if (s_empty && t_empty) return label + " sigma_" + side + " and tau_" + side + " empty";
  if (s_empty) return label + " sigma_" + side + " empty";
  if (t_empty) return label + " tau_" + side + " empty";
  return label;
}

// ---------------------------------------------------------------------------
// Orientation

int flip_position(const Word& original, int pos) {
  const int n = original.size();
  if (original.is_band()) return ((n - pos) % n + n) % n;
  return n - pos;
}

bool has_prefix(const Path& whole, const Path& part) {
  return part.length() <= whole.length() && std::equal(part.arrows.begin(), part.arrows.end(), whole.arrows.begin());
}
bool has_suffix(const Path& whole, const Path& part) {
  return part.length() <= whole.length() &&
         std::equal(part.arrows.begin(), part.arrows.end(), whole.arrows.end() - part.arrows.size());
}

// Letter of a word to the left (d = -1) or right (d = +1) of vertex i, as written.
std::optional<Letter> written(const Word& w, int i, int d) {
  auto idx = Walker(w).letter_index(i, d);
  if (!idx) return std::nullopt;
  return w.letters[*idx];
}

// Junction of the last symbol of a walked letter with the first of the next.
bool letters_join(const Presentation& P, const Letter& first, const Letter& second) {
  Formal a, b;
  push_letter(a, first);
  push_letter(b, second);
  return joins(P, a.syms.back(), b.syms.front());
}

// One-degree graph maps: sigma_L tau_L != 0 and sigma_R tau_R != 0 wherever
// both letters exist.  Returns the number of ends where the letters join, or
// -1 if some pair fails; an orientation joining more ends is preferred.
int graph_compatibility(const Presentation& P, const OrientedMap& om) {
  const auto& ov = om.map.overlap;
  Walker S(om.sigma), T(om.tau);
  int joined = 0;
  auto sR = S.step(ov.s_start, 1), tRback = T.step(ov.t_start + 1, -1);
  if (sR && T.step(ov.t_start, 1)) {
    if (!letters_join(P, *tRback, *sR)) return -1;
    ++joined;
  }
  auto sLin = S.step(ov.s_start - 1, 1), tL = T.step(ov.t_start, -1);
  if (S.step(ov.s_start, -1) && tL) {
    if (!letters_join(P, *sLin, *tL)) return -1;
    ++joined;
  }
  return joined;
}

bool single_compatible(const PathBasis& B, const OrientedMap& om) {
  const Path& f = *om.map.f;
  const int fid = B.id_of(f);
  auto sL = written(om.sigma, om.map.u, -1), sR = written(om.sigma, om.map.u, 1);
  auto tL = written(om.tau, om.map.v, -1), tR = written(om.tau, om.map.v, 1);
  // Letters sharing their end arrow at the component's vertex with f: an
  // outgoing sigma_L ending with f or an incoming tau_L starting with f.
  if (sL && !sL->direct() && has_suffix(sL->path, f)) return false;
  if (tL && tL->direct() && has_prefix(tL->path, f)) return false;
  if (sL && sL->direct() && B.mul(B.id_of(sL->path), fid) >= 0) return false;
  if (tL && !tL->direct() && B.mul(fid, B.id_of(tL->path)) >= 0) return false;
  if (sR && !(sR->direct() && has_suffix(sR->path, f))) return false;
  if (tR && !(!tR->direct() && has_prefix(tR->path, f))) return false;
  return true;
}

bool strictly_longer(const Path& a, const Path& b) { return a.length() > b.length(); }

// One-degree quasi-graph maps: compatibly oriented on the left and on the right.
bool quasi_compatible(const PathBasis& B, const OrientedMap& om) {
  const auto& ov = om.map.overlap;
  auto sL = written(om.sigma, ov.s_start, -1), sR = written(om.sigma, ov.s_start, 1);
  auto tL = written(om.tau, ov.t_start, -1), tR = written(om.tau, ov.t_start, 1);
  auto nonzero = [&](const Letter& a, const Letter& b) { return B.mul(B.id_of(a.path), B.id_of(b.path)) >= 0; };
  bool left = false;
  if (!sL) {
    left = tL && !tL->direct();
  } else if (sL->direct()) {
    left = !tL || (!tL->direct() && nonzero(*sL, *tL)) ||
           (tL->direct() && has_prefix(tL->path, sL->path) && strictly_longer(tL->path, sL->path));
  } else {
    left = tL && !tL->direct() && has_suffix(sL->path, tL->path) && strictly_longer(sL->path, tL->path);
  }
  bool right = false;
  if (!sR) {
    right = tR && tR->direct();
  } else if (!sR->direct()) {
    right = !tR || (tR->direct() && nonzero(*sR, *tR)) ||
            (!tR->direct() && has_prefix(tR->path, sR->path) && strictly_longer(tR->path, sR->path));
  } else {
    right = tR && tR->direct() && has_suffix(sR->path, tR->path) && strictly_longer(sR->path, tR->path);
  }
  return left && right;
}

OrientedMap orient(const Word& sigma, const Word& tau, const BasisMap& m, bool flip_sigma, bool flip_tau) {
  OrientedMap om;
  om.map = m;
  om.sigma = flip_sigma ? invert(sigma) : sigma;
  om.tau = flip_tau ? invert(tau) : tau;
  om.sigma_flipped = flip_sigma;
  om.tau_flipped = flip_tau;
  auto fs = [&](int p) { return p < 0 || !flip_sigma ? p : flip_position(sigma, p); };
  auto ft = [&](int p) { return p < 0 || !flip_tau ? p : flip_position(tau, p); };
  om.map.u = fs(m.u);
  om.map.u2 = fs(m.u2);
  om.map.v = ft(m.v);
  om.map.v2 = ft(m.v2);
  return om;
}

}  // namespace

OrientedMap normalize_orientation(const PathBasis& B, const Word& sigma, const Word& tau, const BasisMap& m) {
  const Presentation& P = B.presentation();
  switch (m.kind) {
    case MapKind::Graph:
    case MapKind::QuasiGraph: {
      const auto& ov = m.overlap;
      // Sigma is read forwards; tau is flipped when rho runs backwards along it.
      auto with_dir = [&](int dir) {
        OrientedMap om = orient(sigma, tau, m, false, dir < 0);
        om.map.overlap.dir = 1;
        if (dir < 0) om.map.overlap.t_start = flip_position(tau, ov.t_start);
        return om;
      };
      // Orientation is forced unless the map lives in a single degree.
      const bool one_degree = ov.length == 0 && !ov.full && (m.kind == MapKind::QuasiGraph || m.components.size() == 1);
      if (!one_degree) return with_dir(ov.dir);
      std::optional<OrientedMap> best;
      int best_score = -1;
      for (int dir : {ov.dir, -ov.dir}) {
        OrientedMap om = with_dir(dir);
        int score = m.kind == MapKind::Graph ? graph_compatibility(P, om) : (quasi_compatible(B, om) ? 0 : -1);
        if (score > best_score) {
          best_score = score;
          best = om;
        }
      }
      if (best) return *best;
      throw Error("NotOrientable", std::string(kind_name(m.kind)) + " map supported in one degree");
    }
    case MapKind::SingletonSingle: {
      for (bool fs : {false, true})
        for (bool ft : {false, true}) {
          OrientedMap om = orient(sigma, tau, m, fs, ft);
          if (single_compatible(B, om)) return om;
        }
      throw Error("NotOrientable", "single map admits no compatible orientation");
    }
    case MapKind::SingletonDouble: {
      const bool fs = !sigma.letters[m.s_letter].direct();
      const bool ft = !tau.letters[m.t_letter].direct();
      // After flipping, the central letters run from u to u2 and v to v2 left to right.
      return orient(sigma, tau, m, fs, ft);
    }
  }
  throw Error("NotOrientable", "unknown map kind");
}

// ---------------------------------------------------------------------------
// Cone formulas

std::vector<ConeSummand> cone_of_graph_map(const PathBasis& B, const OrientedMap& om) {
  const Presentation& P = B.presentation();
  Assembler A{P, om};
  const auto& ov = om.map.overlap;
  if (ov.full) return {zero_summand("graph/isomorphism")};
  const int i = ov.s_start, j = ov.t_start, k = ov.length;
  const bool sR = A.s_has(i + k, 1), tR = A.t_has(j + k, 1);
  const bool sL = A.s_has(i, -1), tL = A.t_has(j, -1);
  const bool sb = om.sigma.is_band(), tb = om.tau.is_band();
  if (!sb && !tb) {
    std::vector<ConeSummand> out;
    const std::string l1 = case_label("graph", "c1", !sR, !tR, "R");
    if (sR && tR)
      out.push_back(string_summand(P, A.join({A.T(A.nt(), j + k), A.S(i + k, A.ns())}), l1));
    else if (!sR && !tR)
      out.push_back(zero_summand(l1));
    else if (!sR)
      out.push_back(string_summand(P, A.T(A.nt(), j + k + 1), l1));
    else
      out.push_back(string_summand(P, A.S(i + k + 1, A.ns()), l1));
    const std::string l2 = case_label("graph", "c2", !sL, !tL, "L");
    if (sL && tL)
      out.push_back(string_summand(P, A.join({A.S(0, i), A.T(j, 0)}), l2));
    else if (!sL && !tL)
      out.push_back(zero_summand(l2));
    else if (!sL)
      out.push_back(string_summand(P, A.T(j - 1, 0), l2));
    else
      out.push_back(string_summand(P, A.S(0, i - 1), l2));
    return out;
  }
  const int ms = om.sigma.size(), mt = om.tau.size();
  if (sb && tb) {
    Formal c = A.join({A.S(i + k, i + ms), A.T(j, j + k - mt)});
    return {band_summand(P, c, A.band_scalar(k % 2 == 1), k % 2 ? "graph/band-band odd overlap" : "graph/band-band even overlap")};
  }
  // One side is a band.  When rho wraps the band at least once, the cone is
  // the string with one period of the band cut out of rho.
  if (sb && k >= ms) return {string_summand(P, A.join({A.T(A.nt(), j + ms), A.T(j, 0)}), "graph/band-string wrapped")};
  if (tb && k >= mt) return {string_summand(P, A.join({A.S(0, i), A.S(i + mt, A.ns())}), "graph/string-band wrapped")};
  // Otherwise the band's complement of rho is walked between the string's
  // ends; where the string side of an end is missing, the outermost letter of
  // the reduced walk at that end is removed.
  if (sb) {
    Formal c = A.T(A.nt(), j + k);
    append(P, c, A.S(i + k, i + ms));
    append(P, c, A.T(j, 0));
    return {string_summand(P, c, case_label("graph", "band-string", false, !tR || !tL, tR ? "L" : "R"), !tR, !tL)};
  }
  Formal c = A.S(0, i);
  append(P, c, A.T(j, j + k - mt));
  append(P, c, A.S(i + k, A.ns()));
  return {string_summand(P, c, case_label("graph", "string-band", !sR || !sL, false, sR ? "L" : "R"), !sL, !sR)};
}

std::vector<ConeSummand> cone_of_single_map(const PathBasis& B, const OrientedMap& om) {
  const Presentation& P = B.presentation();
  Assembler A{P, om};
  const int u = om.map.u, v = om.map.v;
  const Path& f = *om.map.f;
  const bool sR = A.s_has(u, 1), tR = A.t_has(v, 1);
  const bool sb = om.sigma.is_band(), tb = om.tau.is_band();
  const int ms = om.sigma.size(), mt = om.tau.size();
  if (!sb && !tb) {
    std::vector<ConeSummand> out;
    out.push_back(string_summand(P, A.join({A.S(0, u), connector(f, true), A.T(v, 0)}), "single/c1"));
    const std::string l2 = case_label("single", "c2", !sR, !tR, "R");
    if (sR && tR)
      out.push_back(string_summand(P, A.join({A.T(A.nt(), v), connector(f, false), A.S(u, A.ns())}), l2));
    else if (!sR && !tR)
      out.push_back(zero_summand(l2));
    else if (!tR)
      out.push_back(string_summand(P, A.S(u + 1, A.ns()), l2));
    else
      out.push_back(string_summand(P, A.T(A.nt(), v + 1), l2));
    return out;
  }
  if (sb && tb) {
    Formal c = A.join({A.S(u, u + ms), connector(f, true), A.T(v, v - mt), connector(f, false)});
    return {band_summand(P, c, A.band_scalar(true), "single/band-band")};
  }
  if (sb) {
    Formal c = tR ? A.join({A.T(A.nt(), v), connector(f, false), A.S(u, u + ms), connector(f, true), A.T(v, 0)})
                  : A.join({A.S(u + 1, u + ms), connector(f, true), A.T(v, 0)});
    return {string_summand(P, c, tR ? "single/band-string" : "single/band-string tau_R empty")};
  }
  Formal c = sR ? A.join({A.S(0, u), connector(f, true), A.T(v, v - mt), connector(f, false), A.S(u, A.ns())})
                : A.join({A.S(0, u), connector(f, true), A.T(v, v - mt + 1)});
  return {string_summand(P, c, sR ? "single/string-band" : "single/string-band sigma_R empty")};
}

std::vector<ConeSummand> cone_of_double_map(const PathBasis& B, const OrientedMap& om) {
  const Presentation& P = B.presentation();
  Assembler A{P, om};
  const int u = om.map.u, v = om.map.v;
  const Path& fl = *om.map.f_left;
  const Path& fr = *om.map.f_right;
  const bool sb = om.sigma.is_band(), tb = om.tau.is_band();
  const int ms = om.sigma.size(), mt = om.tau.size();
  if (!sb && !tb) {
    return {string_summand(P, A.join({A.T(A.nt(), v + 1), connector(fr, false), A.S(u + 1, A.ns())}), "double/c1"),
            string_summand(P, A.join({A.S(0, u), connector(fl, true), A.T(v, 0)}), "double/c2")};
  }
  if (sb && tb) {
    Formal c = A.join({A.S(u + 1, u + ms), connector(fl, true), A.T(v, v + 1 - mt), connector(fr, false)});
    return {band_summand(P, c, A.band_scalar(true), "double/band-band")};
  }
  if (sb) {
    Formal c = A.join({A.T(A.nt(), v + 1), connector(fr, false), A.S(u + 1, u + ms), connector(fl, true), A.T(v, 0)});
    return {string_summand(P, c, "double/band-string")};
  }
  Formal c = A.join({A.S(0, u), connector(fl, true), A.T(v, v + 1 - mt), connector(fr, false), A.S(u + 1, A.ns())});
  return {string_summand(P, c, "double/string-band")};
}

std::vector<ConeSummand> cone_of_quasi_graph_map(const PathBasis& B, const OrientedMap& om) {
  const Presentation& P = B.presentation();
  Assembler A{P, om};
  const auto& ov = om.map.overlap;
  const int i = ov.s_start, j = ov.t_start, k = ov.length;
  const bool sb = om.sigma.is_band(), tb = om.tau.is_band();
  const int ms = om.sigma.size(), mt = om.tau.size();
  if (!sb && !tb) {
    return {string_summand(P, A.join({A.S(0, i + k), A.T(j + k, A.nt())}), "quasi/c1"),
            string_summand(P, A.join({A.T(0, j + k), A.S(i + k, A.ns())}), "quasi/c2")};
  }
  if (sb && tb) {
    if (ov.full) {
      // sigma = tau and lambda = mu: the class is the self-extension of the
      // band complex, whose cone is the band of multiplicity 2 on sigma[1].
      ConeSummand out{WordKind::Band, canonical(P, shift(om.sigma, 1)), "quasi/band self-extension"};
      out.multiplicity = 2;
      return {out};
    }
    Formal c = A.join({A.S(i + k, i + k + ms), A.T(j + k, j + k + mt)});
    // Both loops are walked forwards, so both monodromies enter directly.
    return {band_summand(P, c, Rational(-monodromy(om.sigma) * monodromy(om.tau)), "quasi/band-band")};
  }
  if (sb) {
    Formal c = A.join({A.T(0, j + k), A.S(i + k, i + k + ms), A.T(j + k, A.nt())});
    return {string_summand(P, c, "quasi/band-string")};
  }
  Formal c = A.join({A.S(0, i + k), A.T(j + k, j + k + mt), A.S(i + k, A.ns())});
  return {string_summand(P, c, "quasi/string-band")};
}

std::vector<ConeSummand> cone(const PathBasis& B, const Word& sigma, const Word& tau, const BasisMap& m) {
  OrientedMap om = normalize_orientation(B, sigma, tau, m);
  std::vector<ConeSummand> out;
  switch (m.kind) {
    case MapKind::Graph: out = cone_of_graph_map(B, om); break;
    case MapKind::SingletonSingle: out = cone_of_single_map(B, om); break;
    case MapKind::SingletonDouble: out = cone_of_double_map(B, om); break;
    case MapKind::QuasiGraph: out = cone_of_quasi_graph_map(B, om); break;
  }
  const Presentation& P = B.presentation();
  std::stable_sort(out.begin(), out.end(), [&](const ConeSummand& a, const ConeSummand& b) {
    if (a.is_zero() != b.is_zero()) return !a.is_zero();
    return word_text(P, a.word) < word_text(P, b.word);
  });
  return out;
}

std::string summand_text(const Presentation& P, const ConeSummand& s) {
  if (s.is_zero()) return "0";
  if (s.multiplicity > 1) return word_text(P, s.word) + " @multiplicity=" + std::to_string(s.multiplicity);
  return word_text(P, s.word);
}

nlohmann::json summand_json(const Presentation& P, const ConeSummand& s) {
  nlohmann::json j;
  j["kind"] = s.is_zero() ? "zero" : s.word.is_band() ? "band" : "string";
  j["provenance"] = s.provenance;
  if (s.is_zero()) return j;
  j["word"] = word_text(P, s.word, false);
  j["anchor"] = s.word.anchor;
  if (s.word.is_band()) {
    j["scalar"] = to_string(s.word.scalar);
    j["scalar_position"] = s.word.scalar_pos;
    j["multiplicity"] = s.multiplicity;
  }
  return j;
}

std::string unfolded_diagram(const Presentation& P, const Word& w) {
  if (w.is_zero()) return "0 (contractible)";
  std::ostringstream os;
  auto node = [&](int i) { os << "P(" << P.vertices[w.vertex(i)] << ")[" << w.degree(i) << "]"; };
  node(0);
  for (int i = 0; i < w.size(); ++i) {
    const Letter& l = w.letters[i];
    std::string name = P.path_name(l.path);
    if (w.is_band() && i == w.scalar_pos && w.scalar != 1) name = to_string(w.scalar) + "*" + name;
    os << (l.direct() ? " -" + name + "-> " : " <-" + name + "- ");
    node(w.is_band() ? (i + 1) % w.size() : i + 1);
  }
  if (w.is_band()) os << "  (cyclic)";
  return os.str();
}

}  // namespace gentle
