#pragma once

// Independent verification by brute-force linear algebra on complexes of
// projectives: Hom spaces in the homotopy category, mapping cones, reduction
// to minimal form by Gaussian elimination, decomposition of minimal complexes
// into string and band shapes, and isomorphism testing.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <tuple>
#include <vector>

#include "gentle/complex.hpp"
#include "gentle/linalg.hpp"

namespace gentle {

// One coordinate of a graded morphism space: component from source slot
// `from` to target slot `to` carrying the path `path`.
struct Coord {
  int from = 0, to = 0, path = 0;
  bool operator<(const Coord& o) const {
    return std::tie(from, to, path) < std::tie(o.from, o.to, o.path);
  }
};

// Coordinates of degree-`shift` maps S -> T (slot of degree k to slot of degree k+shift).
template <class F>
std::vector<Coord> morphism_coords(const Complex<F>& S, const Complex<F>& T, int shift) {
  std::vector<Coord> out;
  const PathBasis& B = *S.basis;
  for (int i = 0; i < S.size(); ++i)
    for (int j = 0; j < T.size(); ++j) {
      if (T.slots[j].degree != S.slots[i].degree + shift) continue;
      for (int p : B.between(T.slots[j].vertex, S.slots[i].vertex)) out.push_back(Coord{i, j, p});
    }
  return out;
}

template <class F>
class CoordIndex {
 public:
  explicit CoordIndex(const std::vector<Coord>& coords) : coords_(coords) {
    for (size_t i = 0; i < coords.size(); ++i) ix_[coords[i]] = static_cast<int>(i);
  }
  int size() const { return static_cast<int>(coords_.size()); }
  const std::vector<Coord>& coords() const { return coords_; }
  std::vector<F> vector_of(const Components<F>& m) const {
    std::vector<F> v(coords_.size(), FieldOps<F>::zero());
    for (const auto& [k, lin] : m)
      for (const auto& [p, c] : lin) {
        auto it = ix_.find(Coord{k.first, k.second, p});
        if (it == ix_.end()) throw Error("InternalError", "component outside the morphism space");
        v[it->second] = c;
      }
    return v;
  }
  Components<F> map_of(const std::vector<F>& v) const {
    Components<F> m;
    for (size_t i = 0; i < coords_.size(); ++i) {
      if (FieldOps<F>::is_zero(v[i])) continue;
      const Coord& c = coords_[i];
      lin_add(m[{c.from, c.to}], Lin<F>{{c.path, v[i]}}, FieldOps<F>::one());
    }
    return m;
  }

 private:
  std::vector<Coord> coords_;
  std::map<Coord, int> ix_;
};

// The degree-0 morphism space S -> T with its cycle and boundary data.
template <class F>
struct HomSpace {
  CoordIndex<F> maps;        // degree 0 coordinates
  CoordIndex<F> homotopies;  // degree -1 coordinates
  Matrix<F> delta;           // f |-> d_T f - f d_S, columns indexed by `maps`
  Matrix<F> boundary;        // h |-> d_T h + h d_S, columns indexed by `homotopies`
  std::vector<std::vector<F>> cycles;  // basis of the chain maps
  int boundary_rank = 0;

  int dimension() const { return static_cast<int>(cycles.size()) - boundary_rank; }
};

namespace detail {

// Image of a single-term graded map e (component (i,j) = path p) under
// e |-> d_T e + sign * e d_S, as components.
template <class F>
Components<F> differential_image(const Complex<F>& S, const Complex<F>& T, const Coord& c, const std::type_identity_t<F>& sign) {
  Components<F> e;
  e[{c.from, c.to}] = Lin<F>{{c.path, FieldOps<F>::one()}};
  Components<F> out = compose_maps(*S.basis, e, T.d);
  add_maps(out, compose_maps(*S.basis, S.d, e), sign);
  return out;
}

template <class F>
Matrix<F> differential_matrix(const Complex<F>& S, const Complex<F>& T, const CoordIndex<F>& dom,
                              const CoordIndex<F>& cod, const std::type_identity_t<F>& sign) {
  Matrix<F> m(cod.size(), dom.size());
  for (int c = 0; c < dom.size(); ++c) {
    auto v = cod.vector_of(differential_image(S, T, dom.coords()[c], sign));
    for (int r = 0; r < cod.size(); ++r) m.at(r, c) = v[r];
  }
  return m;
}

}  // namespace detail

template <class F>
HomSpace<F> hom_space(const Complex<F>& S, const Complex<F>& T) {
  CoordIndex<F> maps(morphism_coords(S, T, 0));
  CoordIndex<F> homs(morphism_coords(S, T, -1));
  CoordIndex<F> ones(morphism_coords(S, T, 1));
  const F one = FieldOps<F>::one();
  Matrix<F> delta = detail::differential_matrix(S, T, maps, ones, -one);
  Matrix<F> boundary = detail::differential_matrix(S, T, homs, maps, one);
  auto cycles = nullspace(delta);
  int br = rank(boundary);
  return HomSpace<F>{std::move(maps), std::move(homs), std::move(delta), std::move(boundary),
                     std::move(cycles), br};
}

// dim Hom_K(S, T).
template <class F>
int hom_dimension(const Complex<F>& S, const Complex<F>& T) {
  return hom_space(S, T).dimension();
}

// Rank of the given chain maps in Hom_K(S, T), i.e. modulo null-homotopic maps.
template <class F>
int rank_modulo_homotopy(const HomSpace<F>& H, const std::vector<Components<F>>& fs) {
  std::vector<std::vector<F>> cols;
  const int n = H.maps.size();
  for (int c = 0; c < H.boundary.cols; ++c) {
    std::vector<F> v(n);
    for (int r = 0; r < n; ++r) v[r] = H.boundary.at(r, c);
    cols.push_back(std::move(v));
  }
  for (const auto& f : fs) cols.push_back(H.maps.vector_of(f));
  return rank(from_columns(n, cols)) - H.boundary_rank;
}

template <class F>
bool null_homotopic(const Complex<F>& S, const Complex<F>& T, const Components<F>& f) {
  auto H = hom_space(S, T);
  return rank_modulo_homotopy(H, {f}) == 0;
}

template <class F>
bool homotopic(const Complex<F>& S, const Complex<F>& T, const Components<F>& f, const Components<F>& g) {
  Components<F> diff = f;
  add_maps(diff, g, -FieldOps<F>::one());
  return null_homotopic(S, T, diff);
}

// Mapping cone: source slots shifted down by one with differential -d_S,
// followed by the target slots; the map supplies the off-diagonal block.
template <class F>
Complex<F> mapping_cone(const Complex<F>& S, const Complex<F>& T, const Components<F>& f) {
  if (!chain_defect(S, T, f).empty()) throw Error("NotAChainMap", "the map does not commute with the differentials");
  Complex<F> C;
  C.basis = S.basis;
  for (const auto& s : S.slots) C.slots.push_back(Slot{s.vertex, s.degree - 1});
  const int off = S.size();
  for (const auto& s : T.slots) C.slots.push_back(s);
  for (const auto& [k, v] : S.d) C.add_entry(k.first, k.second, lin_scale(v, -FieldOps<F>::one()));
  for (const auto& [k, v] : f) C.add_entry(k.first, off + k.second, v);
  for (const auto& [k, v] : T.d) C.add_entry(off + k.first, off + k.second, v);
  return C;
}

template <class F>
Complex<F> mapping_cone(const ChainMap<F>& m) {
  return mapping_cone(m.source, m.target, m.f);
}

// Inverse of a unit c*1_v + r of the local ring e_v Lambda e_v (r nilpotent).
template <class F>
Lin<F> local_inverse(const PathBasis& B, int vertex, const Lin<F>& phi) {
  const int e = B.trivial_id(vertex);
  F c = FieldOps<F>::zero();
  Lin<F> r;
  for (const auto& [p, a] : phi) {
    if (p == e)
      c = a;
    else
      r.emplace_back(p, a);
  }
  if (FieldOps<F>::is_zero(c)) throw Error("InternalError", "pivot is not invertible");
  const F cinv = FieldOps<F>::one() / c;
  // (c(1+u))^{-1} = c^{-1} sum_m (-u)^m with u = r / c.
  Lin<F> minus_u = lin_scale(r, -cinv);
  Lin<F> term{{e, FieldOps<F>::one()}};
  Lin<F> sum = term;
  for (int guard = 0; guard <= B.size(); ++guard) {
    term = lin_then(B, term, minus_u);
    if (term.empty()) break;
    lin_add(sum, term, FieldOps<F>::one());
  }
  return lin_scale(sum, cinv);
}

// Choose among candidate pivots (degree, from, to); receives the sorted list.
using PivotChooser = std::function<size_t(const std::vector<std::tuple<int, int, int>>&)>;

// Gaussian elimination of all isomorphism components; returns the minimal
// complex (every differential entry lies in the radical).  The default pivot
// order is the smallest (degree, from slot, to slot).
template <class F>
Complex<F> minimize(const Complex<F>& input, const PivotChooser& choose = nullptr) {
  const PathBasis& B = *input.basis;
  std::map<SlotPair, Lin<F>> d = input.d;
  std::vector<char> alive(input.size(), 1);
  for (;;) {
    std::vector<std::tuple<int, int, int>> cand;
    for (const auto& [k, v] : d) {
      const int vi = input.slots[k.first].vertex;
      if (vi != input.slots[k.second].vertex) continue;
      const int e = B.trivial_id(vi);
      bool unit = std::any_of(v.begin(), v.end(), [&](const auto& t) { return t.first == e; });
      if (unit) cand.emplace_back(input.slots[k.first].degree, k.first, k.second);
    }
    if (cand.empty()) break;
    std::sort(cand.begin(), cand.end());
    size_t pick = choose ? choose(cand) : 0;
    const int i = std::get<1>(cand[pick]), j = std::get<2>(cand[pick]);
    const Lin<F> phi_inv = local_inverse(B, input.slots[i].vertex, d.at({i, j}));
    std::vector<std::pair<int, Lin<F>>> into_j, out_of_i;  // x -> j, i -> y
    for (const auto& [k, v] : d) {
      if (k.second == j && k.first != i) into_j.emplace_back(k.first, v);
      if (k.first == i && k.second != j) out_of_i.emplace_back(k.second, v);
    }
    for (const auto& [x, dxj] : into_j) {
      const Lin<F> left = lin_then(B, dxj, phi_inv);
      if (left.empty()) continue;
      for (const auto& [y, diy] : out_of_i) {
        Lin<F> corr = lin_then(B, left, diy);
        if (corr.empty()) continue;
        auto& e = d[{x, y}];
        lin_add(e, corr, -FieldOps<F>::one());
        if (e.empty()) d.erase({x, y});
      }
    }
    for (auto it = d.begin(); it != d.end();) {
      const auto& k = it->first;
      if (k.first == i || k.first == j || k.second == i || k.second == j)
        it = d.erase(it);
      else
        ++it;
    }
    alive[i] = alive[j] = 0;
  }
  Complex<F> out;
  out.basis = input.basis;
  std::vector<int> newix(input.size(), -1);
  for (int s = 0; s < input.size(); ++s)
    if (alive[s]) {
      newix[s] = out.size();
      out.slots.push_back(input.slots[s]);
    }
  for (const auto& [k, v] : d) out.d[{newix[k.first], newix[k.second]}] = v;
  return out;
}

// Pivot chooser drawing uniformly from the candidates.
inline PivotChooser random_pivots(std::mt19937_64& rng) {
  return [&rng](const std::vector<std::tuple<int, int, int>>& cand) {
    return std::uniform_int_distribution<size_t>(0, cand.size() - 1)(rng);
  };
}

// Split a minimal complex whose differential is a sum of single paths with
// every slot meeting at most two of them into string and band words.  Band
// scalars are the monodromy of the cycle (over F_p: its residue).
template <class F>
std::vector<Word> decompose_minimal(const Complex<F>& C) {
  const PathBasis& B = *C.basis;
  const Presentation& P = B.presentation();
  struct Edge {
    int from, to, path;
    F coeff;
  };
  std::vector<Edge> edges;
  std::vector<std::vector<int>> inc(C.size());
  for (const auto& [k, v] : C.d)
    for (const auto& [p, c] : v) {
      if (B.path(p).trivial()) throw Error("NotAStringOrBandShape", "complex is not minimal");
      inc[k.first].push_back(static_cast<int>(edges.size()));
      inc[k.second].push_back(static_cast<int>(edges.size()));
      edges.push_back(Edge{k.first, k.second, p, c});
    }
  for (int s = 0; s < C.size(); ++s)
    if (inc[s].size() > 2) throw Error("NotAStringOrBandShape", "slot " + std::to_string(s) + " meets more than two paths");

  std::vector<char> seen(C.size(), 0), used(edges.size(), 0);
  std::vector<Word> out;
  // Walk from slot `s`, returning letters, coefficients and visited slots.
  auto walk = [&](int s, std::vector<Letter>& letters, std::vector<F>& coeffs) {
    int cur = s;
    seen[cur] = 1;
    for (;;) {
      int next_edge = -1;
      for (int e : inc[cur])
        if (!used[e]) {
          next_edge = e;
          break;
        }
      if (next_edge < 0) return cur;
      used[next_edge] = 1;
      const Edge& e = edges[next_edge];
      const Path& path = B.path(e.path);
      if (e.from == cur) {
        letters.push_back(Letter{Dir::Direct, path});
        cur = e.to;
      } else {
        letters.push_back(Letter{Dir::Inverse, path});
        cur = e.from;
      }
      coeffs.push_back(e.coeff);
      if (seen[cur]) return cur;
      seen[cur] = 1;
    }
  };
  // Strings first: start from endpoints (slots meeting fewer than two paths).
  for (int s = 0; s < C.size(); ++s) {
    if (seen[s] || inc[s].size() == 2) continue;
    std::vector<Letter> letters;
    std::vector<F> coeffs;
    walk(s, letters, coeffs);
    Word w;
    w.kind = WordKind::String;
    w.letters = letters;
    w.base = C.slots[s].vertex;
    w.anchor = C.slots[s].degree;
    try {
      validate_string(P, w);
    } catch (const Error& e) {
      throw Error("NotAStringOrBandShape", e.what());
    }
    out.push_back(canonical(P, w));
  }
  // Remaining slots lie on cycles.
  for (int s = 0; s < C.size(); ++s) {
    if (seen[s]) continue;
    std::vector<Letter> letters;
    std::vector<F> coeffs;
    int end = walk(s, letters, coeffs);
    if (end != s) throw Error("NotAStringOrBandShape", "unterminated cycle");
    F mono = FieldOps<F>::one();
    int first_direct = -1;
    for (size_t t = 0; t < letters.size(); ++t) {
      if (letters[t].direct()) {
        mono = mono * coeffs[t];
        if (first_direct < 0) first_direct = static_cast<int>(t);
      } else {
        mono = mono / coeffs[t];
      }
    }
    if (first_direct < 0) throw Error("NotAStringOrBandShape", "cycle without direct letters");
    Word w;
    w.kind = WordKind::Band;
    w.letters = letters;
    w.base = C.slots[s].vertex;
    w.anchor = C.slots[s].degree;
    w.scalar = FieldOps<F>::to_rational(mono);
    w.scalar_pos = first_direct;
    try {
      validate_band(P, w);
    } catch (const Error& e) {
      throw Error("NotAStringOrBandShape", e.what());
    }
    out.push_back(canonical(P, w));
  }
  std::sort(out.begin(), out.end(), [&](const Word& a, const Word& b) {
    return word_text(P, a) < word_text(P, b);
  });
  return out;
}

// Dimensions of the cohomology of C as a complex of vector spaces.
template <class F>
std::map<int, int> cohomology_dims(const Complex<F>& C) {
  const PathBasis& B = *C.basis;
  const int nv = B.presentation().num_vertices();
  // Basis of P(v): paths starting at v.
  std::vector<std::vector<int>> starting(nv);
  for (int v = 0; v < nv; ++v)
    for (int w = 0; w < nv; ++w)
      for (int p : B.between(v, w)) starting[v].push_back(p);
  auto by_deg = C.slots_by_degree();
  // Coordinates of the degree-n space: (slot, path).
  std::map<int, std::map<std::pair<int, int>, int>> index;
  for (const auto& [deg, ids] : by_deg) {
    auto& ix = index[deg];
    for (int s : ids)
      for (int p : starting[C.slots[s].vertex]) ix.emplace(std::make_pair(s, p), static_cast<int>(ix.size()));
  }
  std::map<int, int> rank_out;  // rank of d^n
  for (const auto& [deg, ids] : by_deg) {
    auto nit = index.find(deg + 1);
    if (nit == index.end()) {
      rank_out[deg] = 0;
      continue;
    }
    const auto& src = index[deg];
    const auto& dst = nit->second;
    Matrix<F> m(static_cast<int>(dst.size()), static_cast<int>(src.size()));
    for (const auto& [k, v] : C.d) {
      if (C.slots[k.first].degree != deg) continue;
      for (int u : starting[C.slots[k.first].vertex]) {
        const int col = src.at({k.first, u});
        for (const auto& [q, c] : v) {
          const int r = B.mul(u, q);  // "q then u"
          if (r < 0) continue;
          m.at(dst.at({k.second, r}), col) += c;
        }
      }
    }
    rank_out[deg] = rank(m);
  }
  std::map<int, int> out;
  for (const auto& [deg, ix] : index) {
    int dim = static_cast<int>(ix.size()) - rank_out[deg];
    auto prev = rank_out.find(deg - 1);
    if (prev != rank_out.end()) dim -= prev->second;
    if (dim != 0) out[deg] = dim;
  }
  return out;
}

// Isomorphism test for complexes of projectives in the homotopy category,
// assuming both are minimal: there the chain isomorphisms are exactly the
// chain maps whose trivial-path blocks are invertible, and a random element
// of the space of chain maps is one with high probability if any exists.
template <class F>
bool is_isomorphic(const Complex<F>& C, const Complex<F>& D, uint64_t seed = 0x5eed, int trials = 6) {
  auto profile = [](const Complex<F>& X) {
    std::multiset<std::pair<int, int>> m;
    for (const auto& s : X.slots) m.emplace(s.degree, s.vertex);
    return m;
  };
  if (profile(C) != profile(D)) return false;
  if (C.size() == 0) return true;
  const PathBasis& B = *C.basis;
  CoordIndex<F> maps(morphism_coords(C, D, 0));
  CoordIndex<F> ones(morphism_coords(C, D, 1));
  auto cycles = nullspace(detail::differential_matrix(C, D, maps, ones, -FieldOps<F>::one()));
  if (cycles.empty()) return false;
  // Blocks grouped by (degree, vertex).
  std::map<std::pair<int, int>, std::pair<std::vector<int>, std::vector<int>>> blocks;
  for (int i = 0; i < C.size(); ++i) blocks[{C.slots[i].degree, C.slots[i].vertex}].first.push_back(i);
  for (int j = 0; j < D.size(); ++j) blocks[{D.slots[j].degree, D.slots[j].vertex}].second.push_back(j);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int64_t> dist(1, 1000003);
  for (int t = 0; t < trials; ++t) {
    std::vector<F> v(maps.size(), FieldOps<F>::zero());
    for (const auto& z : cycles) {
      F r = FieldOps<F>::from_int(dist(rng));
      for (int c = 0; c < maps.size(); ++c)
        if (!FieldOps<F>::is_zero(z[c])) v[c] += r * z[c];
    }
    Components<F> f = maps.map_of(v);
    bool ok = true;
    for (const auto& [key, io] : blocks) {
      const auto& [rows, cols] = io;
      const int e = B.trivial_id(key.second);
      Matrix<F> m(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
      for (size_t a = 0; a < rows.size() && ok; ++a)
        for (size_t b = 0; b < cols.size(); ++b) {
          auto it = f.find({rows[a], cols[b]});
          if (it == f.end()) continue;
          for (const auto& [p, c] : it->second)
            if (p == e) m.at(static_cast<int>(a), static_cast<int>(b)) = c;
        }
      if (rank(m) != static_cast<int>(rows.size())) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

// Complex of a list of words (direct sum of string and band complexes).
template <class F>
Complex<F> complex_of_words(std::shared_ptr<const PathBasis> basis, const std::vector<Word>& words) {
  std::vector<Complex<F>> parts;
  for (const auto& w : words) parts.push_back(build_complex<F>(basis, w));
  return direct_sum(basis, parts);
}

}  // namespace gentle
