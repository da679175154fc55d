// Command-line front end: gentleness validation, Hom bases, symbolic mapping
// cones with oracle verification, and corpus-wide soundness sweeps.
//
// Exit codes: 0 success, 1 algebra not gentle, 2 malformed input,
// 3 map selector out of range, 4 verification mismatch.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gentle/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace gentle;

namespace {

enum Exit { kOk = 0, kNotGentle = 1, kBadInput = 2, kBadSelector = 3, kMismatch = 4 };

struct FieldChoice {
  bool rational = true;
  uint32_t prime = kDefaultPrime;
};

FieldChoice parse_field(const std::string& text) {
  FieldChoice f;
  if (text == "rat") return f;
  if (text.rfind("fp:", 0) == 0) {
    f.rational = false;
    try {
      const unsigned long p = std::stoul(text.substr(3));
      if (p < 3 || p > 2147483647UL) throw Error("SyntaxError", "prime out of range");
      for (unsigned long d = 2; d * d <= p; ++d)
        if (p % d == 0) throw Error("SyntaxError", std::to_string(p) + " is not prime");
      f.prime = static_cast<uint32_t>(p);
    } catch (const std::logic_error&) {
      throw Error("SyntaxError", "bad field '" + text + "'");
    }
    return f;
  }
  throw Error("SyntaxError", "field must be 'rat' or 'fp:<prime>'");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("IOError", "cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json provenance(const Presentation& P, uint64_t seed) {
  return {{"tool", "gentle"}, {"version", kVersion}, {"algebra", P.name}, {"algebra_hash", presentation_hash(P)},
          {"seed", seed}};
}

std::string provenance_line(const Presentation& P, uint64_t seed) {
  return std::string("gentle ") + kVersion + " | algebra " + P.name + " (" + presentation_hash(P) + ") | seed " +
         std::to_string(seed);
}

// Hom dimension over the chosen field.
int hom_dim(std::shared_ptr<const PathBasis> B, const Word& s, const Word& t, const FieldChoice& f) {
  if (f.rational) return hom_dimension(build_complex<Rational>(B, s), build_complex<Rational>(B, t));
  return hom_dimension(build_complex<Fp>(B, s), build_complex<Fp>(B, t));
}

std::string component_text(const Presentation& P, const Word& s, const Word& t, const Component& c) {
  std::ostringstream o;
  o << "P(" << P.vertices[s.vertex(c.from)] << ")@" << c.from;
  if (c.path.trivial() && c.coeff == 1)
    o << " = ";
  else
    o << " -" << (c.coeff == 1 ? "" : to_string(c.coeff) + "*") << P.path_name(c.path) << "-> ";
  o << "P(" << P.vertices[t.vertex(c.to)] << ")@" << c.to;
  return o.str();
}

// ---------------------------------------------------------------------------

struct Common {
  std::string algebra;
  std::string field = "rat";
  std::string format = "text";
  uint64_t seed = 0x5eed;
};

int cmd_validate(const Common& o) {
  Presentation P;
  try {
    P = parse_presentation_unchecked(read_file(o.algebra));
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  }
  const auto violations = check_gentle(P);
  bool finite = P.finite_dimensional();
  if (o.format == "json") {
    json j = provenance(P, o.seed);
    j["gentle"] = violations.empty();
    j["finite_dimensional"] = finite;
    j["vertices"] = P.num_vertices();
    j["arrows"] = P.num_arrows();
    j["relations"] = P.relations.size();
    auto& vs = j["violations"] = json::array();
    for (const auto& v : violations) vs.push_back({{"condition", v.condition}, {"witness", v.witness}, {"message", v.message}});
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << provenance_line(P, o.seed) << "\n";
    std::cout << P.num_vertices() << " vertices, " << P.num_arrows() << " arrows, " << P.relations.size()
              << " relations; " << (finite ? "finite dimensional" : "infinite dimensional") << "\n";
    for (const auto& v : violations)
      std::cout << "violation of condition (" << v.condition << ") at " << v.witness << ": " << v.message << "\n";
    std::cout << (violations.empty() ? "gentle" : "not gentle") << "\n";
  }
  return violations.empty() ? kOk : kNotGentle;
}

struct PairArgs {
  std::string sigma, tau;
  int window = -1;
  std::optional<int> shift;
};

int cmd_hom(const Common& o, const PairArgs& a, bool check) {
  const FieldChoice field = parse_field(o.field);
  Fp::set_modulus(field.prime);
  const Presentation P = load_presentation(o.algebra);
  auto B = std::make_shared<const PathBasis>(P);
  const Word s = parse_word(a.sigma, P), t = parse_word(a.tau, P);
  std::vector<int> shifts;
  if (a.shift) {
    shifts = {*a.shift};
  } else {
    const int W = a.window >= 0 ? a.window : default_window(s, t);
    for (int n = -W; n <= W; ++n) shifts.push_back(n);
  }
  bool mismatch = false;
  json j = provenance(P, o.seed);
  j["sigma"] = word_text(P, s);
  j["tau"] = word_text(P, t);
  j["field"] = o.field;
  auto& blocks = j["shifts"] = json::array();
  std::ostringstream text;
  text << provenance_line(P, o.seed) << "\n";
  text << "sigma: " << unfolded_diagram(P, s) << "\n";
  text << "tau:   " << unfolded_diagram(P, t) << "\n";
  long total = 0;
  for (int n : shifts) {
    const Word tn = shift(t, n);
    const auto maps = standard_basis(*B, s, tn);
    std::optional<int> dim;
    if (check) dim = hom_dim(B, s, tn, field);
    if (maps.empty() && (!dim || *dim == 0)) continue;
    total += static_cast<long>(maps.size());
    json block{{"shift", n}, {"tau", word_text(P, tn)}, {"count", maps.size()}};
    auto& arr = block["maps"] = json::array();
    text << "shift " << n << " (tau = " << word_text(P, tn) << "): " << maps.size() << " map(s)";
    if (dim) {
      block["hom_dimension"] = *dim;
      block["check"] = *dim == static_cast<int>(maps.size());
      text << ", oracle dim " << *dim << (*dim == static_cast<int>(maps.size()) ? " ok" : " MISMATCH");
      if (*dim != static_cast<int>(maps.size())) mismatch = true;
    }
    text << "\n";
    for (size_t k = 0; k < maps.size(); ++k) {
      json m = basis_map_json(P, maps[k]);
      m["index"] = k;
      arr.push_back(m);
      text << "  [" << k << "] " << basis_map_text(P, maps[k]) << "\n";
    }
    blocks.push_back(block);
  }
  j["total"] = total;
  text << "total " << total << "\n";
  if (o.format == "json")
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text.str();
  return mismatch ? kMismatch : kOk;
}

int cmd_cone(const Common& o, const PairArgs& a, int index, bool verify) {
  const FieldChoice field = parse_field(o.field);
  Fp::set_modulus(field.prime);
  const Presentation P = load_presentation(o.algebra);
  auto B = std::make_shared<const PathBasis>(P);
  const Word s = parse_word(a.sigma, P);
  const Word t = shift(parse_word(a.tau, P), a.shift.value_or(0));
  const auto maps = standard_basis(*B, s, t);
  if (index < 0 || index >= static_cast<int>(maps.size())) {
    std::cerr << "error: map index " << index << " out of range; the basis has " << maps.size() << " element(s)\n";
    return kBadSelector;
  }
  const BasisMap& m = maps[index];
  const OrientedMap om = normalize_orientation(*B, s, t, m);
  const auto cs = cone(*B, s, t, m);
  std::optional<bool> ok;
  std::vector<std::string> oracle_words;
  if (verify) {
    ok = field.rational ? cone_matches<Rational>(B, s, t, m, cs, o.seed) : cone_matches<Fp>(B, s, t, m, cs, o.seed);
    try {
      auto minimal = minimize(mapping_cone(representative_chain_map<Rational>(B, s, t, m)));
      for (const auto& w : decompose_minimal(minimal)) oracle_words.push_back(word_text(P, w));
      if (oracle_words.empty()) oracle_words.push_back("0");
    } catch (const Error& e) {
      oracle_words.push_back(std::string("(not in string/band normal form: ") + e.what() + ")");
    }
  }
  if (o.format == "json") {
    json j = provenance(P, o.seed);
    j["sigma"] = word_text(P, s);
    j["tau"] = word_text(P, t);
    j["index"] = index;
    j["map"] = basis_map_json(P, m);
    j["orientation"] = {{"sigma_inverted", om.sigma_flipped}, {"tau_inverted", om.tau_flipped}};
    auto& arr = j["summands"] = json::array();
    for (const auto& c : cs) arr.push_back(summand_json(P, c));
    if (ok) {
      j["verify"] = {{"field", o.field}, {"isomorphic", *ok}, {"oracle_summands", oracle_words}};
    }
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << provenance_line(P, o.seed) << "\n";
    std::cout << "map [" << index << "] " << basis_map_text(P, m) << "\n";
    std::cout << "sigma: " << unfolded_diagram(P, om.sigma) << (om.sigma_flipped ? "  (inverted)" : "") << "\n";
    std::cout << "tau:   " << unfolded_diagram(P, om.tau) << (om.tau_flipped ? "  (inverted)" : "") << "\n";
    for (const auto& c : m.components) std::cout << "   " << component_text(P, s, t, c) << "\n";
    std::cout << "cone:\n";
    for (const auto& c : cs) {
      std::cout << "  " << summand_text(P, c) << "    [" << c.provenance << "]\n";
      std::cout << "    " << unfolded_diagram(P, c.word) << "\n";
    }
    if (ok) {
      std::cout << "oracle (" << o.field << "): " << (*ok ? "isomorphic" : "MISMATCH") << "; minimized cone = ";
      for (size_t k = 0; k < oracle_words.size(); ++k) std::cout << (k ? " + " : "") << oracle_words[k];
      std::cout << "\n";
    }
  }
  return ok && !*ok ? kMismatch : kOk;
}

struct CorpusArgs {
  std::vector<std::string> algebras;
  std::string corpus = "corpus";
  int letters = 5, paths = 3, band_letters = 4;
  int window = 6;
  int jobs = 1;
  bool self_test = false;
  bool skip_basis = false;
};

int cmd_verify_corpus(const Common& o, const CorpusArgs& a) {
  const FieldChoice field = parse_field(o.field);
  std::vector<std::string> files = a.algebras;
  if (!o.algebra.empty()) files.push_back(o.algebra);
  if (files.empty()) {
    if (!fs::is_directory(a.corpus)) throw Error("IOError", "corpus directory '" + a.corpus + "' not found");
    for (const auto& e : fs::directory_iterator(a.corpus))
      if (e.path().extension() == ".alg") files.push_back(e.path().string());
    std::sort(files.begin(), files.end());
  }
  SweepConfig cfg;
  cfg.max_letters = a.letters;
  cfg.max_path = a.paths;
  cfg.max_band_letters = a.band_letters;
  cfg.window = a.window;
  cfg.jobs = a.jobs;
  cfg.seed = o.seed;
  cfg.prime = field.prime;
  cfg.check_basis = !a.skip_basis;
  json j{{"tool", "gentle"}, {"version", kVersion}, {"seed", o.seed}};
  auto& reports = j["algebras"] = json::array();
  if (files.empty()) std::cerr << "warning: no algebras found; nothing to verify\n";
  bool all = true;
  for (size_t k = 0; k < files.size(); ++k) {
    const Presentation P = load_presentation(files[k]);
    SweepConfig c = cfg;
    c.self_test = a.self_test;
    const SweepStats st = sweep_algebra(P, c);
    all = all && st.passed();
    json r = sweep_json(st, c);
    r["file"] = files[k];
    reports.push_back(r);
    if (o.format != "json") std::cout << sweep_text(st) << std::flush;
  }
  j["passed"] = all;
  if (o.format == "json") std::cout << j.dump(2) << "\n";
  else std::cout << (all ? "ALL PASS" : "FAILURES FOUND") << "\n";
  return all ? kOk : kMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bases of morphisms and mapping cones between string and band complexes over gentle algebras"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub, bool need_algebra) {
    auto* opt = sub->add_option("--algebra", common.algebra, "algebra file");
    if (need_algebra) opt->required()->check(CLI::ExistingFile);
    sub->add_option("--field", common.field, "rat or fp:<prime> (default rat)");
    sub->add_option("--format", common.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--seed", common.seed, "seed for randomized oracle checks");
  };

  auto* validate = app.add_subcommand("validate", "check that an algebra presentation is gentle");
  add_common(validate, false);
  validate->add_option("file", common.algebra, "algebra file (alternative to --algebra)");

  PairArgs pair;
  bool check = false, verify = false;
  int index = 0;
  auto* hom = app.add_subcommand("hom", "standard basis of Hom between two string/band complexes");
  add_common(hom, true);
  hom->add_option("--sigma", pair.sigma, "source word")->required();
  hom->add_option("--tau", pair.tau, "target word")->required();
  hom->add_option("--window", pair.window, "shifts |n| <= window (default: letters + 1)")->check(CLI::NonNegativeNumber);
  hom->add_option("--shift", pair.shift, "only this shift of tau");
  hom->add_flag("--check", check, "compare each basis size with the oracle's Hom dimension");

  auto* cone_cmd = app.add_subcommand("cone", "mapping cone of one basis map");
  add_common(cone_cmd, true);
  cone_cmd->add_option("--sigma", pair.sigma, "source word")->required();
  cone_cmd->add_option("--tau", pair.tau, "target word")->required();
  cone_cmd->add_option("--shift", pair.shift, "shift applied to tau (default 0)");
  cone_cmd->add_option("--map", index, "index of the basis map, in hom ordering (default 0)");
  cone_cmd->add_flag("--verify", verify, "check the result against the brute-force oracle");

  CorpusArgs corpus;
  auto* vc = app.add_subcommand("verify-corpus", "exhaustive oracle sweep over a corpus of algebras");
  add_common(vc, false);
  vc->add_option("--corpus", corpus.corpus, "directory of .alg files (default corpus)");
  vc->add_option("--letters", corpus.letters, "maximum string length (default 5)");
  vc->add_option("--paths", corpus.paths, "maximum letter path length (default 3)");
  vc->add_option("--band-letters", corpus.band_letters, "maximum band length (default 4)");
  vc->add_option("--window", corpus.window, "minimum shift window (default 6)");
  vc->add_option("--jobs", corpus.jobs, "worker threads (default 1)")->check(CLI::PositiveNumber);
  vc->add_flag("--self-test", corpus.self_test, "also verify a deliberately corrupted cone (must fail)");
  vc->add_flag("--skip-basis", corpus.skip_basis, "skip the basis-count checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  }
  try {
    if (*validate) {
      if (common.algebra.empty()) throw Error("SyntaxError", "no algebra file given");
      return cmd_validate(common);
    }
    if (*hom) return cmd_hom(common, pair, check);
    if (*cone_cmd) return cmd_cone(common, pair, index, verify);
    if (*vc) return cmd_verify_corpus(common, corpus);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == "NotGentle" ? kNotGentle : kBadInput;
  }
  return kOk;
}
