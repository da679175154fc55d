#include "gentle/basis.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

namespace gentle {

// ---------------------------------------------------------------------------
// Walker

int Walker::norm(int i) const {
  if (!band()) return i;
  const int n = num_vertices();
  return ((i % n) + n) % n;
}

std::optional<int> Walker::letter_index(int i, int d) const {
  const int n = w_->size();
  if (band()) return d > 0 ? norm(i) : norm(i - 1);
  int idx = d > 0 ? i : i - 1;
  if (idx < 0 || idx >= n) return std::nullopt;
  return idx;
}

std::optional<Letter> Walker::step(int i, int d) const {
  auto idx = letter_index(i, d);
  if (!idx) return std::nullopt;
  const Letter& l = w_->letters[*idx];
  return d > 0 ? l : l.inverted();
}

Rational Walker::coeff(int idx) const {
  if (band() && idx == w_->scalar_pos) return w_->scalar;
  return Rational(1);
}

int Walker::degree(int i) const { return w_->degree(norm(i)); }

const char* kind_name(MapKind k) {
  switch (k) {
    case MapKind::Graph: return "graph";
    case MapKind::SingletonSingle: return "single";
    case MapKind::SingletonDouble: return "double";
    case MapKind::QuasiGraph: return "quasi";
  }
  return "?";
}

int BasisMap::position() const {
  if (kind == MapKind::Graph || kind == MapKind::QuasiGraph) return overlap.s_start;
  return u;
}

namespace {

// Path helpers on traversal order.
bool is_suffix(const Path& whole, const Path& part) {
  if (part.length() > whole.length()) return false;
  return std::equal(part.arrows.begin(), part.arrows.end(), whole.arrows.end() - part.arrows.size());
}
bool is_prefix(const Path& whole, const Path& part) {
  if (part.length() > whole.length()) return false;
  return std::equal(part.arrows.begin(), part.arrows.end(), whole.arrows.begin());
}
Path sub_path(const Presentation& P, const Path& p, size_t from, size_t to) {
  std::vector<int> arrows(p.arrows.begin() + from, p.arrows.begin() + to);
  if (arrows.empty()) {
    int v = from == 0 ? p.source : P.arrows[p.arrows[from - 1]].target;
    return P.trivial(v);
  }
  return P.make_path(arrows);
}

// Coefficient transport across a letter walked in the given direction, from
// sigma coefficient a and tau coefficient b (graph maps: sign = +1; the
// alternating homotopy of a quasi-graph map: sign = -1).
Rational transport(const Letter& l, const Rational& c, const Rational& a, const Rational& b, int sign) {
  Rational r = l.direct() ? c * b / a : c * a / b;
  return sign > 0 ? r : Rational(-r);
}

struct EndData {
  std::optional<Letter> x, y;  // outward letters of sigma and tau
  std::optional<int> xi, yi;   // their indices
  int s_vertex = 0, t_vertex = 0;  // rho end vertices
  int s_far = 0, t_far = 0;        // vertices across x and y
};

EndData end_data(const Walker& S, const Walker& T, const Overlap& ov, bool right) {
  EndData e;
  const int sd = right ? 1 : -1;
  const int td = right ? ov.dir : -ov.dir;
  e.s_vertex = right ? ov.s_end() : ov.s_start;
  e.t_vertex = right ? ov.t_end() : ov.t_start;
  if (ov.full) return e;
  e.x = S.step(e.s_vertex, sd);
  e.xi = S.letter_index(e.s_vertex, sd);
  e.y = T.step(e.t_vertex, td);
  e.yi = T.letter_index(e.t_vertex, td);
  e.s_far = S.norm(e.s_vertex + sd);
  e.t_far = T.norm(e.t_vertex + td);
  return e;
}

// Identity-type coefficients along rho.  Returns false if a full band overlap
// does not close up (scalar mismatch).
bool rho_coefficients(const Walker& S, const Walker& T, const Overlap& ov, int sign, std::vector<Rational>& c) {
  c.assign(1, Rational(1));
  for (int t = 0; t < ov.length; ++t) {
    const int si = *S.letter_index(ov.s_start + t, 1);
    const int ti = *T.letter_index(ov.t_start + ov.dir * t, ov.dir);
    const Letter l = *S.step(ov.s_start + t, 1);
    c.push_back(transport(l, c.back(), S.coeff(si), T.coeff(ti), sign));
  }
  if (ov.full) {
    bool closes = c.back() == c.front();
    c.pop_back();
    return closes;
  }
  return true;
}

std::string end_label(const std::string& cls, bool right) {
  if (cls.empty()) return "";
  return std::string(right ? "R" : "L") + cls;
}

}  // namespace

// ---------------------------------------------------------------------------
// Overlaps

std::vector<Overlap> find_graded_overlaps(const Presentation& /*P*/, const Word& sigma, const Word& tau, int tau_raise) {
  std::vector<Overlap> out;
  if (sigma.is_zero() || tau.is_zero()) return out;
  Walker S(sigma), T(tau);
  const bool both_bands = S.band() && T.band();
  const int bound = sigma.size() + tau.size();
  auto matches = [&](int i, int j) {
    return S.vertex(i) == T.vertex(j) && S.degree(i) == T.degree(j) + tau_raise;
  };
  for (int dir : {1, -1}) {
    for (int i = 0; i < S.num_vertices(); ++i)
      for (int j = 0; j < T.num_vertices(); ++j) {
        if (!matches(i, j)) continue;
        auto ls = S.step(i, -1), lt = T.step(j, -dir);
        const bool extends_left = ls && lt && *ls == *lt;
        int k = 0;
        bool full = false;
        for (;;) {
          auto rs = S.step(i + k, 1), rt = T.step(j + dir * k, dir);
          if (!rs || !rt || *rs != *rt) break;
          ++k;
          if (both_bands && k > bound) {
            full = true;
            break;
          }
        }
        if (full) {
          // Record an everywhere-agreeing pair of bands once, from sigma vertex 0.
          if (i != 0) continue;
          out.push_back(Overlap{0, j, dir, sigma.size(), true, tau_raise});
          continue;
        }
        if (extends_left) continue;
        out.push_back(Overlap{i, j, dir, k, false, tau_raise});
      }
  }
  return out;
}

std::string classify_end(const Letter* x, const Letter* y, bool quasi) {
  const bool xd = x && x->direct(), xi = x && !x->direct();
  const bool yd = y && y->direct(), yi = y && !y->direct();
  if (!quasi) {
    if (xd && yd && y->path.length() > x->path.length() && is_suffix(y->path, x->path)) return "G1";
    if (xi && yi && x->path.length() > y->path.length() && is_prefix(x->path, y->path)) return "G2";
    if ((xd && (yi || !y)) || (!x && (yi || !y))) return "G3";
    return "";
  }
  if (xd && yd && x->path.length() > y->path.length() && is_suffix(x->path, y->path)) return "Q1";
  if (xi && yi && y->path.length() > x->path.length() && is_prefix(y->path, x->path)) return "Q2";
  if ((xi && (yd || !y)) || (!x && yd)) return "Q3";
  return "";
}

// ---------------------------------------------------------------------------
// Graph maps

std::optional<BasisMap> graph_map(const Presentation& P, const Word& sigma, const Word& tau, const Overlap& ov) {
  Walker S(sigma), T(tau);
  std::vector<Rational> c;
  if (!rho_coefficients(S, T, ov, 1, c)) return std::nullopt;
  BasisMap m;
  m.kind = MapKind::Graph;
  m.overlap = ov;
  m.representative = "graph";
  for (int t = 0; t < static_cast<int>(c.size()); ++t) {
    const int si = S.norm(ov.s_start + t), ti = T.norm(ov.t_start + ov.dir * t);
    m.components.push_back(Component{si, ti, P.trivial(S.vertex(si)), c[t]});
  }
  if (ov.full) {
    m.left_condition = "LG0";
    m.right_condition = "RG0";
    return m;
  }
  for (bool right : {false, true}) {
    EndData e = end_data(S, T, ov, right);
    const Letter* x = e.x ? &*e.x : nullptr;
    const Letter* y = e.y ? &*e.y : nullptr;
    std::string cls = classify_end(x, y, false);
    if (cls.empty()) return std::nullopt;
    (right ? m.right_condition : m.left_condition) = end_label(cls, right);
    if (cls == "G3") continue;
    const Rational& cend = right ? c.back() : c.front();
    Path fpart;
    Rational coeff;
    if (cls == "G1") {  // y = f then x
      fpart = sub_path(P, y->path, 0, y->path.length() - x->path.length());
      coeff = cend * T.coeff(*e.yi) / S.coeff(*e.xi);
    } else {  // G2: x = y then f
      fpart = sub_path(P, x->path, y->path.length(), x->path.length());
      coeff = cend * S.coeff(*e.xi) / T.coeff(*e.yi);
    }
    (right ? m.f_right : m.f_left) = fpart;
    m.components.push_back(Component{e.s_far, e.t_far, fpart, coeff});
  }
  return m;
}

// ---------------------------------------------------------------------------
// Quasi-graph maps

std::optional<BasisMap> quasi_graph_map(const PathBasis& B, const Word& sigma, const Word& tau, const Overlap& ov) {
  const Presentation& P = B.presentation();
  Walker S(sigma), T(tau);
  std::vector<Rational> c;
  if (!rho_coefficients(S, T, ov, -1, c)) return std::nullopt;
  BasisMap m;
  m.kind = MapKind::QuasiGraph;
  m.overlap = ov;

  // Terms of d h + h d at each end, where h is the alternating identity on rho.
  std::vector<Component> end_terms[2];
  if (!ov.full) {
    for (bool right : {false, true}) {
      EndData e = end_data(S, T, ov, right);
      const Letter* x = e.x ? &*e.x : nullptr;
      const Letter* y = e.y ? &*e.y : nullptr;
      std::string cls = classify_end(x, y, true);
      if (cls.empty()) return std::nullopt;
      (right ? m.right_condition : m.left_condition) = end_label(cls, right);
      const Rational& cend = right ? c.back() : c.front();
      if (x && !x->direct())  // sigma letter into the end slot
        end_terms[right].push_back(Component{e.s_far, e.t_vertex, x->path, S.coeff(*e.xi) * cend});
      if (y && y->direct())  // tau letter out of the end slot
        end_terms[right].push_back(Component{e.s_vertex, e.t_far, y->path, cend * T.coeff(*e.yi)});
      for (auto& comp : end_terms[right]) {
        comp.from = S.norm(comp.from);
        comp.to = T.norm(comp.to);
      }
    }
  } else {
    m.left_condition = "LQ0";
    m.right_condition = "RQ0";
  }

  // Candidate representatives: cuts through rho letters, the right end, minus the left end.
  struct Candidate {
    std::vector<Component> comps;
    int order;  // position along rho, left end first
  };
  std::vector<Candidate> cands;
  if (!end_terms[0].empty()) {
    std::vector<Component> neg = end_terms[0];
    for (auto& comp : neg) comp.coeff = -comp.coeff;
    cands.push_back({neg, -1});
  }
  for (int t = 0; t < ov.length; ++t) {
    const Letter l = *S.step(ov.s_start + t, 1);
    const int si = *S.letter_index(ov.s_start + t, 1);
    const int ti = *T.letter_index(ov.t_start + ov.dir * t, ov.dir);
    const int s0 = S.norm(ov.s_start + t), s1 = S.norm(ov.s_start + t + 1);
    const int t0 = T.norm(ov.t_start + ov.dir * t), t1 = T.norm(ov.t_start + ov.dir * (t + 1));
    if (l.direct())
      cands.push_back({{Component{s0, t1, l.path, c[t] * T.coeff(ti)}}, t});
    else
      cands.push_back({{Component{s1, t0, l.path, S.coeff(si) * c[t]}}, t});
  }
  if (!end_terms[1].empty()) cands.push_back({end_terms[1], ov.length});

  auto basis = std::shared_ptr<const PathBasis>(&B, [](const PathBasis*) {});
  const Candidate* best = nullptr;
  for (const auto& cand : cands) {
    if (cand.comps.size() != 1) continue;
    if (!is_chain_map(basis, sigma, tau, cand.comps)) continue;
    if (!best || cand.comps[0].path.length() < best->comps[0].path.length()) best = &cand;
  }
  if (!best) {
    for (int side : {1, 0}) {
      const Candidate* cand = nullptr;
      for (const auto& cd : cands)
        if (cd.comps.size() == 2 && cd.order == (side == 1 ? ov.length : -1)) cand = &cd;
      if (cand && is_chain_map(basis, sigma, tau, cand->comps)) {
        best = cand;
        break;
      }
    }
  }
  if (!best) return std::nullopt;
  m.components = best->comps;
  if (best->comps.size() == 1) {
    m.representative = "single";
    m.u = best->comps[0].from;
    m.v = best->comps[0].to;
    m.f = best->comps[0].path;
  } else {
    m.representative = "double";
    m.u = best->comps[0].from;
    m.v = best->comps[0].to;
    m.u2 = best->comps[1].from;
    m.v2 = best->comps[1].to;
    m.f_left = best->comps[0].path;
    m.f_right = best->comps[1].path;
  }
  (void)P;
  return m;
}

// ---------------------------------------------------------------------------
// Singleton single and double maps

namespace {

struct SlotLetter {
  int index;     // letter index in the word
  int other;     // slot at the other end
  Letter walk;   // letter walked away from the slot
  bool outgoing; // differential entry leaves the slot
};

std::vector<SlotLetter> letters_at(const Walker& W, int slot) {
  std::vector<SlotLetter> out;
  for (int d : {-1, 1}) {
    auto idx = W.letter_index(slot, d);
    if (!idx) continue;
    Letter l = *W.step(slot, d);
    out.push_back(SlotLetter{*idx, W.norm(slot + d), l, l.direct()});
  }
  // A two-letter band meets the same letter index twice only if size 1 (impossible).
  return out;
}

// True iff f = "first p then h" for some path h (p a path id).
bool factors_after(const PathBasis& B, int p, int f) {
  const Path& fp = B.path(f);
  const Path& pp = B.path(p);
  // "first p then h" is the traversal h then p: f must end with p.
  return fp.length() >= pp.length() && is_suffix(fp, pp) && fp.target == pp.target;
}
// True iff f = "first h then p".
bool factors_before(const PathBasis& B, int p, int f) {
  const Path& fp = B.path(f);
  const Path& pp = B.path(p);
  return fp.length() >= pp.length() && is_prefix(fp, pp) && fp.source == pp.source;
}

}  // namespace

std::vector<BasisMap> singleton_singles(const PathBasis& B, const Word& sigma, const Word& tau) {
  std::vector<BasisMap> out;
  if (sigma.is_zero() || tau.is_zero()) return out;
  Walker S(sigma), T(tau);
  for (int u = 0; u < S.num_vertices(); ++u)
    for (int v = 0; v < T.num_vertices(); ++v) {
      if (S.degree(u) != T.degree(v)) continue;
      auto sl = letters_at(S, u);
      auto tl = letters_at(T, v);
      for (int f : B.between(T.vertex(v), S.vertex(u))) {
        if (B.path(f).trivial()) continue;
        bool ok = true;
        for (const auto& s : sl) {
          const int sp = B.id_of(s.walk.path);
          if (!s.outgoing) {
            if (B.mul(sp, f) >= 0) ok = false;  // chain condition
          } else if (factors_after(B, sp, f)) {
            ok = false;  // homotopic through sigma
          }
        }
        for (const auto& t : tl) {
          const int tp = B.id_of(t.walk.path);
          if (t.outgoing) {
            if (B.mul(f, tp) >= 0) ok = false;
          } else if (factors_before(B, tp, f)) {
            ok = false;
          }
        }
        if (!ok) continue;
        BasisMap m;
        m.kind = MapKind::SingletonSingle;
        m.representative = "single";
        m.u = u;
        m.v = v;
        m.f = B.path(f);
        m.components.push_back(Component{u, v, B.path(f), Rational(1)});
        out.push_back(std::move(m));
      }
    }
  return out;
}

std::vector<BasisMap> singleton_doubles(const PathBasis& B, const Word& sigma, const Word& tau) {
  std::vector<BasisMap> out;
  if (sigma.is_zero() || tau.is_zero()) return out;
  Walker S(sigma), T(tau);
  for (int u = 0; u < S.num_vertices(); ++u)
    for (int v = 0; v < T.num_vertices(); ++v) {
      if (S.degree(u) != T.degree(v)) continue;
      for (const auto& sc : letters_at(S, u)) {
        if (!sc.outgoing) continue;
        for (const auto& tc : letters_at(T, v)) {
          if (!tc.outgoing) continue;
          const int u2 = sc.other, v2 = tc.other;
          const int scp = B.id_of(sc.walk.path), tcp = B.id_of(tc.walk.path);
          for (int fl : B.between(T.vertex(v), S.vertex(u))) {
            if (B.path(fl).trivial()) continue;
            for (int fr : B.between(T.vertex(v2), S.vertex(u2))) {
              if (B.path(fr).trivial()) continue;
              const int lhs = B.mul(fl, tcp), rhs = B.mul(scp, fr);
              if (lhs < 0 || lhs != rhs) continue;
              // Singleton: sigma_C = f_L f' and tau_C = f' f_R for a nontrivial f'.
              std::optional<int> mid;
              for (int fm : B.between(S.vertex(u2), T.vertex(v))) {
                if (B.path(fm).trivial()) continue;
                if (B.mul(fl, fm) == scp && B.mul(fm, fr) == tcp) mid = fm;
              }
              if (!mid) continue;
              bool ok = true;
              for (const auto& s : letters_at(S, u))
                if (!s.outgoing && B.mul(B.id_of(s.walk.path), fl) >= 0) ok = false;
              for (const auto& t : letters_at(T, v))
                if (t.outgoing && t.index != tc.index && B.mul(fl, B.id_of(t.walk.path)) >= 0) ok = false;
              for (const auto& s : letters_at(S, u2))
                if (!s.outgoing && s.index != sc.index && B.mul(B.id_of(s.walk.path), fr) >= 0) ok = false;
              for (const auto& t : letters_at(T, v2))
                if (t.outgoing && B.mul(fr, B.id_of(t.walk.path)) >= 0) ok = false;
              if (!ok) continue;
              BasisMap m;
              m.kind = MapKind::SingletonDouble;
              m.representative = "double";
              m.u = u;
              m.v = v;
              m.u2 = u2;
              m.v2 = v2;
              m.s_letter = sc.index;
              m.t_letter = tc.index;
              m.f_left = B.path(fl);
              m.f_right = B.path(fr);
              m.f_mid = B.path(*mid);
              const Rational x = T.coeff(tc.index) / S.coeff(sc.index);
              m.components.push_back(Component{u, v, B.path(fl), Rational(1)});
              m.components.push_back(Component{u2, v2, B.path(fr), x});
              out.push_back(std::move(m));
            }
          }
        }
      }
    }
  return out;
}

// ---------------------------------------------------------------------------
// Assembly

namespace {

using ComponentKey = std::vector<std::tuple<int, int, Path, std::string>>;

ComponentKey key_of(const std::vector<Component>& comps) {
  ComponentKey k;
  for (const auto& c : comps) k.emplace_back(c.from, c.to, c.path, c.coeff.get_str());
  std::sort(k.begin(), k.end());
  return k;
}

size_t max_path_length(const BasisMap& m) {
  size_t l = 0;
  for (const auto& c : m.components) l = std::max(l, c.path.length());
  return l;
}

}  // namespace

std::vector<BasisMap> standard_basis(const PathBasis& B, const Word& sigma, const Word& tau) {
  const Presentation& P = B.presentation();
  std::vector<BasisMap> graphs, singles, doubles, quasis;
  std::set<ComponentKey> seen;
  // A trivial overlap is found once per relative orientation; both describe the same map.
  std::set<std::tuple<int, int, int>> trivial_seen;
  auto fresh = [&](const BasisMap& m) {
    const auto& ov = m.overlap;
    if (ov.length == 0 && !ov.full && !trivial_seen.insert({ov.tau_raise, ov.s_start, ov.t_start}).second)
      return false;
    return seen.insert(key_of(m.components)).second;
  };
  for (const auto& ov : find_graded_overlaps(P, sigma, tau, 0)) {
    auto m = graph_map(P, sigma, tau, ov);
    if (m && fresh(*m)) graphs.push_back(std::move(*m));
  }
  for (const auto& ov : find_graded_overlaps(P, sigma, tau, 1)) {
    auto m = quasi_graph_map(B, sigma, tau, ov);
    if (m && fresh(*m)) quasis.push_back(std::move(*m));
  }
  singles = singleton_singles(B, sigma, tau);
  doubles = singleton_doubles(B, sigma, tau);
  auto by_position = [](const BasisMap& a, const BasisMap& b) {
    return std::make_pair(a.position(), max_path_length(a)) < std::make_pair(b.position(), max_path_length(b));
  };
  for (auto* group : {&graphs, &singles, &doubles, &quasis}) std::stable_sort(group->begin(), group->end(), by_position);
  std::vector<BasisMap> out;
  for (auto* group : {&graphs, &singles, &doubles, &quasis})
    for (auto& m : *group) out.push_back(std::move(m));
  return out;
}

int default_window(const Word& sigma, const Word& tau) { return sigma.size() + tau.size() + 1; }

std::vector<ShiftedBasis> basis_in_window(const PathBasis& B, const Word& sigma, const Word& tau, int window) {
  std::vector<ShiftedBasis> out;
  for (int n = -window; n <= window; ++n) {
    Word t = shift(tau, n);
    auto maps = standard_basis(B, sigma, t);
    if (!maps.empty()) out.push_back(ShiftedBasis{n, t, std::move(maps)});
  }
  return out;
}

bool is_chain_map(std::shared_ptr<const PathBasis> B, const Word& sigma, const Word& tau,
                  const std::vector<Component>& comps) {
  auto S = build_complex<Rational>(B, sigma);
  auto T = build_complex<Rational>(B, tau);
  return chain_defect(S, T, components_over<Rational>(*B, comps)).empty();
}

// ---------------------------------------------------------------------------
// Reports

nlohmann::json basis_map_json(const Presentation& P, const BasisMap& m) {
  nlohmann::json j;
  j["kind"] = kind_name(m.kind);
  if (!m.left_condition.empty()) j["left_condition"] = m.left_condition;
  if (!m.right_condition.empty()) j["right_condition"] = m.right_condition;
  if (m.kind == MapKind::Graph || m.kind == MapKind::QuasiGraph) {
    const auto& ov = m.overlap;
    j["overlap"] = {{"sigma_start", ov.s_start}, {"tau_start", ov.t_start}, {"tau_direction", ov.dir},
                    {"length", ov.length}, {"full", ov.full}};
  }
  j["representative"] = m.representative;
  nlohmann::json comps = nlohmann::json::array();
  for (const auto& c : m.components)
    comps.push_back({{"from", c.from}, {"to", c.to}, {"path", P.path_name(c.path)}, {"coeff", to_string(c.coeff)}});
  j["components"] = comps;
  return j;
}

std::string basis_map_text(const Presentation& P, const BasisMap& m) {
  std::ostringstream os;
  os << kind_name(m.kind);
  if (!m.left_condition.empty() || !m.right_condition.empty())
    os << " [" << m.left_condition << (m.left_condition.empty() ? "" : ",") << m.right_condition << "]";
  if (m.kind == MapKind::Graph || m.kind == MapKind::QuasiGraph)
    os << " rho@" << m.overlap.s_start << "~" << m.overlap.t_start << (m.overlap.dir > 0 ? "+" : "-")
       << " len " << (m.overlap.full ? std::string("full") : std::to_string(m.overlap.length));
  os << " :";
  for (const auto& c : m.components) {
    os << " " << c.from << "->" << c.to << ":";
    if (c.coeff != 1) os << to_string(c.coeff) << "*";
    os << P.path_name(c.path);
  }
  return os.str();
}

}  // namespace gentle
