#pragma once

// Mapping cones of standard-basis maps read off symbolically from the words:
// every cone is a direct sum of at most two string complexes or a single band
// complex, assembled from pieces of sigma and tau and the map's components.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "gentle/basis.hpp"
#include "gentle/complex.hpp"
#include "gentle/words.hpp"

namespace gentle {

struct ConeSummand {
  WordKind kind = WordKind::Zero;  // Zero, String or Band
  Word word;                       // canonical; zero_word() for Zero
  std::string provenance;          // e.g. "graph/c1 sigma_R empty"
  // Bands only: the self-extension of a band complex is the band of
  // multiplicity 2 on the same word (Jordan block on the scalar letter).
  int multiplicity = 1;

  bool is_zero() const { return kind == WordKind::Zero; }
};

// The orientation in which the cone formulas are read: sigma and tau possibly
// inverted, and the positions of the map's data in the oriented words.
struct OrientedMap {
  BasisMap map;        // positions refer to the oriented words
  Word sigma, tau;     // oriented words
  bool sigma_flipped = false;
  bool tau_flipped = false;
};

// Chooses the orientation required by the compatibility definitions; throws
// Error("NotOrientable") if none qualifies.
OrientedMap normalize_orientation(const PathBasis& B, const Word& sigma, const Word& tau, const BasisMap& m);

std::vector<ConeSummand> cone_of_graph_map(const PathBasis& B, const OrientedMap& om);
std::vector<ConeSummand> cone_of_single_map(const PathBasis& B, const OrientedMap& om);
std::vector<ConeSummand> cone_of_double_map(const PathBasis& B, const OrientedMap& om);
std::vector<ConeSummand> cone_of_quasi_graph_map(const PathBasis& B, const OrientedMap& om);

// Orientation followed by dispatch on the map kind.  String-string maps give
// exactly two summands (Zero allowed), all others exactly one.
std::vector<ConeSummand> cone(const PathBasis& B, const Word& sigma, const Word& tau, const BasisMap& m);

// Direct sum of the built complexes of the summands.
template <class F>
Complex<F> summand_complex(std::shared_ptr<const PathBasis> B, const std::vector<ConeSummand>& summands) {
  std::vector<Complex<F>> parts;
  for (const auto& s : summands) {
    if (s.is_zero()) continue;
    parts.push_back(s.multiplicity > 1 ? build_band_complex<F>(B, s.word, s.multiplicity) : build_complex<F>(B, s.word));
  }
  return direct_sum(B, parts);
}

std::string summand_text(const Presentation& P, const ConeSummand& s);
nlohmann::json summand_json(const Presentation& P, const ConeSummand& s);

// Plain-text unfolded diagram of a word: `-p->` for direct letters, `<-p-`
// for inverse ones, vertices annotated with their degrees.
std::string unfolded_diagram(const Presentation& P, const Word& w);

}  // namespace gentle
