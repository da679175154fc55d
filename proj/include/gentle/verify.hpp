#pragma once

// Oracle-backed verification of the symbolic cone calculus and of the
// standard basis: single cases and exhaustive sweeps over an algebra.

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"

#include "gentle/basis.hpp"
#include "gentle/cone.hpp"
#include "gentle/oracle.hpp"

namespace gentle {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr uint32_t kDefaultPrime = 32003;

// True iff the minimized mapping cone of the map's representative is
// isomorphic to the direct sum of the predicted summands, over the field F.
template <class F>
bool cone_matches(std::shared_ptr<const PathBasis> B, const Word& sigma, const Word& tau, const BasisMap& m,
                  const std::vector<ConeSummand>& summands, uint64_t seed) {
  auto rep = representative_chain_map<F>(B, sigma, tau, m);
  auto minimal = minimize(mapping_cone(rep));
  return is_isomorphic(minimal, summand_complex<F>(B, summands), seed);
}

struct CaseVerdict {
  bool rational = false;
  bool prime = false;
  bool agree() const { return rational == prime; }
  bool passed() const { return rational && prime; }
};

// Checks one cone over Q and over F_p (the prime field must already be set).
CaseVerdict verify_cone(std::shared_ptr<const PathBasis> B, const Word& sigma, const Word& tau, const BasisMap& m,
                        const std::vector<ConeSummand>& summands, uint64_t seed);

struct SweepConfig {
  int max_letters = 5;       // strings
  int max_path = 3;          // letter path length
  int max_band_letters = 4;  // bands
  int window = 6;            // shifts |n| <= max(window, default_window(sigma, tau))
  std::vector<Rational> source_scalars{Rational(2)};
  std::vector<Rational> target_scalars{Rational(2), Rational(-3)};
  bool check_cones = true;
  bool check_basis = true;
  bool self_test = false;  // also verify one deliberately corrupted cone, which must fail
  int jobs = 1;
  uint32_t prime = kDefaultPrime;
  uint64_t seed = 0x5eed;
};

struct SweepFailure {
  std::string sigma, tau;
  int shift = 0;
  std::string map;     // basis map text, empty for basis-count failures
  std::string check;   // "cone", "field-disagreement", "basis", "error", "self-test"
  std::string detail;
};

struct SweepStats {
  std::string algebra;
  std::string algebra_hash;
  long strings = 0, bands = 0;
  long triples = 0;          // (sigma, tau, shift) combinations examined
  long maps = 0;             // basis maps whose cones were checked
  long cones_passed = 0;     // isomorphic over both fields
  long basis_passed = 0;     // triples with |basis| = dim Hom and independent representatives
  long self_test_caught = 0;
  std::map<std::string, long> by_case;  // cone provenance -> count
  std::vector<SweepFailure> failures;
  double seconds = 0;

  bool passed() const;
};

SweepStats sweep_algebra(const Presentation& P, const SweepConfig& cfg);

nlohmann::json sweep_json(const SweepStats& s, const SweepConfig& cfg);
std::string sweep_text(const SweepStats& s);

}  // namespace gentle
