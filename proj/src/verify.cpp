#include "gentle/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <sstream>
#include <thread>

namespace gentle {

CaseVerdict verify_cone(std::shared_ptr<const PathBasis> B, const Word& sigma, const Word& tau, const BasisMap& m,
                        const std::vector<ConeSummand>& summands, uint64_t seed) {
  CaseVerdict v;
  v.rational = cone_matches<Rational>(B, sigma, tau, m, summands, seed);
  v.prime = cone_matches<Fp>(B, sigma, tau, m, summands, seed);
  return v;
}

bool SweepStats::passed() const { return failures.empty(); }

namespace {

struct Inputs {
  std::vector<Word> sources, targets;
};

Inputs sweep_inputs(const Presentation& P, const SweepConfig& cfg, long& strings, long& bands) {
  Inputs in;
  auto s = enumerate_strings(P, cfg.max_letters, cfg.max_path);
  strings = static_cast<long>(s.size());
  in.sources = s;
  in.targets = s;
  for (const auto& x : cfg.source_scalars) {
    auto b = enumerate_bands(P, cfg.max_band_letters, cfg.max_path, x);
    bands = static_cast<long>(b.size());
    in.sources.insert(in.sources.end(), b.begin(), b.end());
  }
  for (const auto& x : cfg.target_scalars) {
    auto b = enumerate_bands(P, cfg.max_band_letters, cfg.max_path, x);
    in.targets.insert(in.targets.end(), b.begin(), b.end());
  }
  return in;
}

int sweep_window(const SweepConfig& cfg, const Word& s, const Word& t) {
  return std::max(cfg.window, default_window(s, t));
}

// Everything one worker learns about one source word.
struct Partial {
  long triples = 0, maps = 0, cones_passed = 0, basis_passed = 0;
  std::map<std::string, long> by_case;
  std::vector<SweepFailure> failures;
};

void check_source(std::shared_ptr<const PathBasis> B, const SweepConfig& cfg, const Word& s,
                  const std::vector<Word>& targets, Partial& out) {
  const Presentation& P = B->presentation();
  const auto S = build_complex<Rational>(B, s);
  for (const auto& t : targets) {
    const int W = sweep_window(cfg, s, t);
    for (int n = -W; n <= W; ++n) {
      const Word tn = shift(t, n);
      ++out.triples;
      auto fail = [&](const std::string& map, const std::string& check, const std::string& detail) {
        out.failures.push_back(SweepFailure{word_text(P, s), word_text(P, tn), n, map, check, detail});
      };
      std::vector<BasisMap> maps;
      try {
        maps = standard_basis(*B, s, tn);
      } catch (const Error& e) {
        fail("", "error", e.what());
        continue;
      }
      if (cfg.check_basis) {
        const auto T = build_complex<Rational>(B, tn);
        const auto H = hom_space(S, T);
        const int dim = H.dimension();
        std::vector<Components<Rational>> reps;
        for (const auto& m : maps) reps.push_back(components_over<Rational>(*B, m.components));
        const int rank = rank_modulo_homotopy(H, reps);
        if (static_cast<int>(maps.size()) == dim && rank == dim) {
          ++out.basis_passed;
        } else {
          std::ostringstream d;
          d << "dim Hom = " << dim << ", basis size = " << maps.size() << ", rank modulo homotopy = " << rank;
          fail("", "basis", d.str());
        }
      }
      if (!cfg.check_cones) continue;
      for (const auto& m : maps) {
        ++out.maps;
        const std::string mt = basis_map_text(P, m);
        try {
          auto cs = cone(*B, s, tn, m);
          ++out.by_case[cs.front().provenance];
          const CaseVerdict v = verify_cone(B, s, tn, m, cs, cfg.seed);
          std::string words;
          for (const auto& c : cs) words += (words.empty() ? "" : " + ") + summand_text(P, c);
          if (!v.agree())
            fail(mt, "field-disagreement", "Q says " + std::to_string(v.rational) + ", F_p says " +
                                               std::to_string(v.prime) + " for " + words);
          else if (!v.passed())
            fail(mt, "cone", "predicted " + words + " is not isomorphic to the minimized cone");
          else
            ++out.cones_passed;
        } catch (const Error& e) {
          fail(mt, "error", e.what());
        }
      }
    }
  }
}

// Verifies a deliberately corrupted cone: the first band summand found with
// its scalar negated (or, lacking bands, a string summand dropped).  The
// oracle must reject it.
void self_test(std::shared_ptr<const PathBasis> B, const SweepConfig& cfg, const Inputs& in, SweepStats& stats) {
  const Presentation& P = B->presentation();
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& s : in.sources)
      for (const auto& t : in.targets) {
        const int W = sweep_window(cfg, s, t);
        for (int n = -W; n <= W; ++n) {
          const Word tn = shift(t, n);
          for (const auto& m : standard_basis(*B, s, tn)) {
            auto cs = cone(*B, s, tn, m);
            bool corrupted = false;
            for (auto& c : cs) {
              if (pass == 0 && c.word.is_band() && c.multiplicity == 1) {
                c.word.scalar = -c.word.scalar;
                corrupted = true;
                break;
              }
              if (pass == 1 && !c.is_zero()) {
                c = ConeSummand{WordKind::Zero, zero_word(), c.provenance};
                corrupted = true;
                break;
              }
            }
            if (!corrupted) continue;
            std::string words;
            for (const auto& c : cs) words += (words.empty() ? "" : " + ") + summand_text(P, c);
            const CaseVerdict v = verify_cone(B, s, tn, m, cs, cfg.seed);
            SweepFailure f{word_text(P, s), word_text(P, tn), n, basis_map_text(P, m), "self-test", ""};
            if (!v.rational && !v.prime) {
              ++stats.self_test_caught;
              f.detail = "corrupted prediction " + words + " rejected by the oracle, as intended";
            } else {
              f.detail = "corrupted prediction " + words + " was accepted: the harness is unsound";
            }
            stats.failures.push_back(std::move(f));
            return;
          }
        }
      }
  stats.failures.push_back(SweepFailure{"", "", 0, "", "self-test", "no cone available to corrupt"});
}

}  // namespace

SweepStats sweep_algebra(const Presentation& P, const SweepConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  Fp::set_modulus(cfg.prime);
  auto B = std::make_shared<const PathBasis>(P);
  SweepStats stats;
  stats.algebra = P.name;
  stats.algebra_hash = presentation_hash(P);
  const Inputs in = sweep_inputs(P, cfg, stats.strings, stats.bands);

  std::vector<Partial> parts(in.sources.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < in.sources.size(); i = next++) check_source(B, cfg, in.sources[i], in.targets, parts[i]);
  };
  const int jobs = std::max(1, cfg.jobs);
  std::vector<std::thread> pool;
  for (int k = 1; k < jobs; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  // Merge in source order so reports do not depend on scheduling.
  for (auto& p : parts) {
    stats.triples += p.triples;
    stats.maps += p.maps;
    stats.cones_passed += p.cones_passed;
    stats.basis_passed += p.basis_passed;
    for (const auto& [k, v] : p.by_case) stats.by_case[k] += v;
    for (auto& f : p.failures) stats.failures.push_back(std::move(f));
  }
  if (cfg.self_test) self_test(B, cfg, in, stats);
  stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return stats;
}

nlohmann::json sweep_json(const SweepStats& s, const SweepConfig& cfg) {
  nlohmann::json j;
  j["algebra"] = s.algebra;
  j["algebra_hash"] = s.algebra_hash;
  j["config"] = {{"max_letters", cfg.max_letters},
                 {"max_path", cfg.max_path},
                 {"max_band_letters", cfg.max_band_letters},
                 {"window", cfg.window},
                 {"prime", cfg.prime},
                 {"seed", cfg.seed},
                 {"self_test", cfg.self_test}};
  j["strings"] = s.strings;
  j["bands"] = s.bands;
  j["triples"] = s.triples;
  j["maps"] = s.maps;
  j["cones_passed"] = s.cones_passed;
  j["basis_passed"] = s.basis_passed;
  j["by_case"] = s.by_case;
  j["passed"] = s.passed();
  j["seconds"] = s.seconds;
  auto& fs = j["failures"] = nlohmann::json::array();
  for (const auto& f : s.failures)
    fs.push_back({{"sigma", f.sigma}, {"tau", f.tau}, {"shift", f.shift}, {"map", f.map}, {"check", f.check},
                  {"detail", f.detail}});
  return j;
}

std::string sweep_text(const SweepStats& s) {
  std::ostringstream o;
  o << "algebra " << s.algebra << " (" << s.algebra_hash << "): " << s.strings << " strings, " << s.bands
    << " bands per scalar\n";
  o << "  triples " << s.triples << ", basis checks passed " << s.basis_passed << "\n";
  o << "  cone checks " << s.maps << ", passed over Q and F_p " << s.cones_passed << "\n";
  for (const auto& f : s.failures) {
    o << "  FAIL [" << f.check << "] " << f.sigma << " -> " << f.tau << " (shift " << f.shift << ")";
    if (!f.map.empty()) o << " | " << f.map;
    o << "\n      " << f.detail << "\n";
  }
  o << "  " << (s.passed() ? "PASS" : "FAIL") << " in " << s.seconds << " s\n";
  return o.str();
}

}  // namespace gentle
