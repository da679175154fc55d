#pragma once

// Bounded complexes of indecomposable projectives P(x) with differentials of
// degree +1.  A morphism component from slot P(x) to slot P(y) is a linear
// combination of nonzero paths from y to x; composing "first u then v" is the
// path product uv.

#include <map>
#include <memory>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "json.hpp"

#include "gentle/algebra.hpp"
#include "gentle/error.hpp"
#include "gentle/field.hpp"
#include "gentle/words.hpp"

namespace gentle {

template <class F>
using Lin = std::vector<std::pair<int, F>>;  // (path id, coefficient), sorted by id, no zeros

template <class F>
void lin_add(Lin<F>& a, const Lin<F>& b, const std::type_identity_t<F>& scale) {
  Lin<F> out;
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      F c = b[j].second * scale;
      if (!FieldOps<F>::is_zero(c)) out.emplace_back(b[j].first, c);
      ++j;
    } else {
      F c = a[i].second + b[j].second * scale;
      if (!FieldOps<F>::is_zero(c)) out.emplace_back(a[i].first, c);
      ++i;
      ++j;
    }
  }
  a = std::move(out);
}

// The composite "first u then v".
template <class F>
Lin<F> lin_then(const PathBasis& B, const Lin<F>& u, const Lin<F>& v) {
  std::map<int, F> acc;
  for (const auto& [p, a] : u)
    for (const auto& [q, b] : v) {
      int r = B.mul(p, q);
      if (r < 0) continue;
      auto it = acc.find(r);
      if (it == acc.end())
        acc.emplace(r, a * b);
      else
        it->second += a * b;
    }
  Lin<F> out;
  for (auto& [r, c] : acc)
    if (!FieldOps<F>::is_zero(c)) out.emplace_back(r, c);
  return out;
}

template <class F>
Lin<F> lin_scale(const Lin<F>& u, const std::type_identity_t<F>& s) {
  Lin<F> out;
  if (FieldOps<F>::is_zero(s)) return out;
  for (const auto& [p, a] : u) out.emplace_back(p, a * s);
  return out;
}

struct Slot {
  int vertex = 0;
  int degree = 0;
};

using SlotPair = std::pair<int, int>;  // (from slot, to slot)

template <class F>
struct Complex {
  std::shared_ptr<const PathBasis> basis;
  std::vector<Slot> slots;
  std::map<SlotPair, Lin<F>> d;  // from degree k to degree k+1

  int size() const { return static_cast<int>(slots.size()); }
  void add_entry(int from, int to, const Lin<F>& value) {
    if (value.empty()) return;
    auto& e = d[{from, to}];
    lin_add(e, value, FieldOps<F>::one());
    if (e.empty()) d.erase({from, to});
  }
  std::map<int, std::vector<int>> slots_by_degree() const {
    std::map<int, std::vector<int>> out;
    for (int i = 0; i < size(); ++i) out[slots[i].degree].push_back(i);
    return out;
  }
};

// A graded map given by components (source slot, target slot) -> Lin.
template <class F>
using Components = std::map<SlotPair, Lin<F>>;

template <class F>
struct ChainMap {
  Complex<F> source;
  Complex<F> target;
  Components<F> f;
};

template <class F>
Lin<F> single_term(const PathBasis& B, const Path& p, const F& c) {
  return Lin<F>{{B.id_of(p), c}};
}

// String or band complex of a word (zero word -> zero complex).
template <class F>
Complex<F> build_complex(std::shared_ptr<const PathBasis> basis, const Word& w) {
  Complex<F> C;
  C.basis = basis;
  if (w.is_zero()) return C;
  const int nv = w.num_vertices();
  for (int i = 0; i < nv; ++i) C.slots.push_back(Slot{w.vertex(i), w.degree(i)});
  for (int i = 0; i < w.size(); ++i) {
    const Letter& l = w.letters[i];
    const int left = i, right = w.is_band() ? (i + 1) % nv : i + 1;
    F c = (w.is_band() && i == w.scalar_pos) ? FieldOps<F>::from_rational(w.scalar) : FieldOps<F>::one();
    auto entry = single_term<F>(*basis, l.path, c);
    if (l.direct())
      C.add_entry(left, right, entry);
    else
      C.add_entry(right, left, entry);
  }
  return C;
}

template <class F>
Complex<F> build_string_complex(std::shared_ptr<const PathBasis> basis, const Word& w) {
  if (w.is_band()) throw Error("SyntaxError", "expected a string");
  return build_complex<F>(basis, w);
}

template <class F>
Complex<F> build_band_complex(std::shared_ptr<const PathBasis> basis, const Word& w) {
  if (!w.is_band()) throw Error("SyntaxError", "expected a band");
  return build_complex<F>(basis, w);
}

// Band complex with multiplicity n: n copies of every slot, identity blocks
// on the plain letters and the Jordan block J_n(scalar) on the scalar letter.
template <class F>
Complex<F> build_band_complex(std::shared_ptr<const PathBasis> basis, const Word& w, int multiplicity) {
  if (!w.is_band()) throw Error("SyntaxError", "expected a band");
  if (multiplicity < 1) throw Error("SyntaxError", "band multiplicity must be positive");
  Complex<F> C;
  C.basis = basis;
  const int nv = w.num_vertices();
  auto slot = [&](int i, int copy) { return copy * nv + i; };
  for (int copy = 0; copy < multiplicity; ++copy)
    for (int i = 0; i < nv; ++i) C.slots.push_back(Slot{w.vertex(i), w.degree(i)});
  for (int i = 0; i < w.size(); ++i) {
    const Letter& l = w.letters[i];
    const int left = i, right = (i + 1) % nv;
    auto add = [&](int from_copy, int to_copy, const F& c) {
      auto entry = single_term<F>(*basis, l.path, c);
      if (l.direct())
        C.add_entry(slot(left, from_copy), slot(right, to_copy), entry);
      else
        C.add_entry(slot(right, from_copy), slot(left, to_copy), entry);
    };
    const bool scalar = i == w.scalar_pos;
    for (int copy = 0; copy < multiplicity; ++copy) {
      add(copy, copy, scalar ? FieldOps<F>::from_rational(w.scalar) : FieldOps<F>::one());
      if (scalar && copy + 1 < multiplicity) add(copy + 1, copy, FieldOps<F>::one());
    }
  }
  return C;
}

template <class F>
Complex<F> direct_sum(std::shared_ptr<const PathBasis> basis, const std::vector<Complex<F>>& parts) {
  Complex<F> S;
  S.basis = basis;
  for (const auto& P : parts) {
    const int off = S.size();
    S.slots.insert(S.slots.end(), P.slots.begin(), P.slots.end());
    for (const auto& [k, v] : P.d) S.d[{k.first + off, k.second + off}] = v;
  }
  return S;
}

// Components of the composite "first f then g" of two graded maps.
template <class F>
Components<F> compose_maps(const PathBasis& B, const Components<F>& f, const Components<F>& g) {
  std::map<int, std::vector<std::pair<int, const Lin<F>*>>> g_from;
  for (const auto& [k, v] : g) g_from[k.first].emplace_back(k.second, &v);
  Components<F> out;
  for (const auto& [k, u] : f) {
    auto it = g_from.find(k.second);
    if (it == g_from.end()) continue;
    for (const auto& [to, v] : it->second) {
      auto prod = lin_then(B, u, *v);
      if (prod.empty()) continue;
      auto& e = out[{k.first, to}];
      lin_add(e, prod, FieldOps<F>::one());
      if (e.empty()) out.erase({k.first, to});
    }
  }
  return out;
}

template <class F>
void add_maps(Components<F>& a, const Components<F>& b, const std::type_identity_t<F>& scale) {
  for (const auto& [k, v] : b) {
    auto& e = a[k];
    lin_add(e, v, scale);
    if (e.empty()) a.erase(k);
  }
}

template <class F>
bool d_squared_zero(const Complex<F>& C) {
  return compose_maps(*C.basis, C.d, C.d).empty();
}

// Commutation defect d_T f - f d_S (empty iff f is a chain map).
template <class F>
Components<F> chain_defect(const Complex<F>& S, const Complex<F>& T, const Components<F>& f) {
  Components<F> a = compose_maps(*S.basis, f, T.d);
  add_maps(a, compose_maps(*S.basis, S.d, f), -FieldOps<F>::one());
  return a;
}

template <class F>
std::string field_text(const F& c) {
  return to_string(c);
}

template <class F>
nlohmann::json lin_json(const PathBasis& B, const Lin<F>& v) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [p, c] : v)
    terms.push_back({{"coeff", field_text(c)}, {"path", B.presentation().path_name(B.path(p))}});
  return terms;
}

template <class F>
nlohmann::json complex_json(const Complex<F>& C) {
  const auto& P = C.basis->presentation();
  nlohmann::json j;
  std::vector<int> degs;
  for (const auto& [deg, ids] : C.slots_by_degree()) degs.push_back(deg);
  j["degrees"] = degs;
  nlohmann::json slots = nlohmann::json::array();
  for (int i = 0; i < C.size(); ++i)
    slots.push_back({{"id", i}, {"vertex", P.vertices[C.slots[i].vertex]}, {"degree", C.slots[i].degree}});
  j["slots"] = slots;
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& [k, v] : C.d)
    entries.push_back({{"from", k.first}, {"to", k.second}, {"terms", lin_json(*C.basis, v)}});
  j["entries"] = entries;
  return j;
}

template <class F>
Complex<F> complex_from_json(std::shared_ptr<const PathBasis> basis, const nlohmann::json& j) {
  const auto& P = basis->presentation();
  Complex<F> C;
  C.basis = basis;
  for (const auto& s : j.at("slots")) {
    int v = P.vertex_index(s.at("vertex").get<std::string>());
    if (v < 0) throw Error("UnknownVertex", s.at("vertex").get<std::string>());
    C.slots.push_back(Slot{v, s.at("degree").get<int>()});
  }
  for (const auto& e : j.at("entries")) {
    Lin<F> value;
    for (const auto& t : e.at("terms")) {
      Path path = parse_path(t.at("path").get<std::string>(), P);
      F c = FieldOps<F>::from_rational(parse_rational(t.at("coeff").get<std::string>()));
      lin_add(value, single_term<F>(*basis, path, c), FieldOps<F>::one());
    }
    C.add_entry(e.at("from").get<int>(), e.at("to").get<int>(), value);
  }
  return C;
}

}  // namespace gentle
