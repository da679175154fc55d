#pragma once

// Standard basis of Hom in the homotopy category between string and band
// complexes: graph maps, singleton single maps, singleton double maps and
// quasi-graph maps, each with an explicit chain-map representative.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "gentle/complex.hpp"
#include "gentle/words.hpp"

namespace gentle {

// Traversal helper over the unfolded diagram of a word: vertex i of a string
// lies in [0, size], band vertices are taken modulo size.
class Walker {
 public:
  explicit Walker(const Word& w) : w_(&w) {}
  const Word& word() const { return *w_; }
  bool band() const { return w_->is_band(); }
  int num_vertices() const { return w_->num_vertices(); }
  int norm(int i) const;
  bool has(int i) const { return band() || (i >= 0 && i < num_vertices()); }
  // Index of the letter between vertex i and i+d (d = +-1), if any.
  std::optional<int> letter_index(int i, int d) const;
  // The letter crossed when walking from vertex i to i+d, oriented along the walk.
  std::optional<Letter> step(int i, int d) const;
  // Differential coefficient of letter idx (the band scalar or 1).
  Rational coeff(int idx) const;
  int vertex(int i) const { return w_->vertex(norm(i)); }
  int degree(int i) const;

 private:
  const Word* w_;
};

enum class MapKind { Graph, SingletonSingle, SingletonDouble, QuasiGraph };
const char* kind_name(MapKind k);

// A maximal common substring rho of sigma and tau (tau taken with its
// degrees raised by `tau_raise`, 1 for quasi-graph maps).  sigma is walked
// forwards from vertex s_start, tau from t_start in direction dir.
struct Overlap {
  int s_start = 0;
  int t_start = 0;
  int dir = 1;
  int length = 0;
  bool full = false;  // bands agreeing everywhere (no endpoints)
  int tau_raise = 0;

  int s_end() const { return s_start + length; }
  int t_end() const { return t_start + dir * length; }
};

// One component of a chain map between the built complexes: slot indices are
// vertex indices of the (un-inverted) words.
struct Component {
  int from = 0;  // sigma slot
  int to = 0;    // tau slot
  Path path;
  Rational coeff = 1;
};

struct BasisMap {
  MapKind kind = MapKind::Graph;
  std::string left_condition, right_condition;  // e.g. "LG1", "RQ3"; empty if n/a
  Overlap overlap;                               // graph and quasi-graph maps
  // Single maps: component at (u, v).  Double maps: f_L at (u, v), f_R at (u2, v2)
  // along the sigma letter s_letter and tau letter t_letter.
  int u = -1, v = -1, u2 = -1, v2 = -1;
  int s_letter = -1, t_letter = -1;
  std::optional<Path> f, f_left, f_right, f_mid;
  // Explicit representative (for quasi-graph maps: the chosen single or double map).
  std::vector<Component> components;
  std::string representative;  // "graph", "single", "double"

  int position() const;  // sigma vertex used for ordering
};

// All maximal overlaps, both relative orientations, all band rotations.
std::vector<Overlap> find_graded_overlaps(const Presentation& P, const Word& sigma, const Word& tau,
                                          int tau_raise = 0);

// Endpoint label for the outward letters (x from sigma, y from tau) at one end:
// "G1".."G3", "Q1".."Q3" or "" (neither).
std::string classify_end(const Letter* x, const Letter* y, bool quasi);

std::optional<BasisMap> graph_map(const Presentation& P, const Word& sigma, const Word& tau, const Overlap& ov);
std::optional<BasisMap> quasi_graph_map(const PathBasis& B, const Word& sigma, const Word& tau, const Overlap& ov);
std::vector<BasisMap> singleton_singles(const PathBasis& B, const Word& sigma, const Word& tau);
std::vector<BasisMap> singleton_doubles(const PathBasis& B, const Word& sigma, const Word& tau);

// The full standard basis for fixed gradings of sigma and tau.
std::vector<BasisMap> standard_basis(const PathBasis& B, const Word& sigma, const Word& tau);

struct ShiftedBasis {
  int shift = 0;            // tau is replaced by shift(tau, shift)
  Word tau;                 // the shifted target
  std::vector<BasisMap> maps;
};
// Bases for every shift n in [-window, window] with a nonempty basis.
std::vector<ShiftedBasis> basis_in_window(const PathBasis& B, const Word& sigma, const Word& tau, int window);
int default_window(const Word& sigma, const Word& tau);

// Checks that the components commute with the differentials (over Q).
bool is_chain_map(std::shared_ptr<const PathBasis> B, const Word& sigma, const Word& tau,
                  const std::vector<Component>& comps);

template <class F>
Components<F> components_over(const PathBasis& B, const std::vector<Component>& comps) {
  Components<F> out;
  for (const auto& c : comps) {
    F coeff = FieldOps<F>::from_rational(c.coeff);
    auto& e = out[{c.from, c.to}];
    lin_add(e, Lin<F>{{B.id_of(c.path), coeff}}, FieldOps<F>::one());
    if (e.empty()) out.erase({c.from, c.to});
  }
  return out;
}

// Explicit degree-0 chain map between the built complexes; throws
// NoRepresentative if the components fail to commute with the differentials.
template <class F>
ChainMap<F> representative_chain_map(std::shared_ptr<const PathBasis> B, const Word& sigma, const Word& tau,
                                     const BasisMap& m) {
  ChainMap<F> cm{build_complex<F>(B, sigma), build_complex<F>(B, tau), components_over<F>(*B, m.components)};
  if (!chain_defect(cm.source, cm.target, cm.f).empty())
    throw Error("NoRepresentative", std::string(kind_name(m.kind)) + " components do not commute");
  return cm;
}

nlohmann::json basis_map_json(const Presentation& P, const BasisMap& m);
std::string basis_map_text(const Presentation& P, const BasisMap& m);

}  // namespace gentle
