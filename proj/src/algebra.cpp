#include "gentle/algebra.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <regex>
#include <sstream>

#include "gentle/error.hpp"

namespace gentle {

int Presentation::vertex_index(const std::string& id) const {
  auto it = vertex_ix_.find(id);
  return it == vertex_ix_.end() ? -1 : it->second;
}

int Presentation::arrow_index(const std::string& id) const {
  auto it = arrow_ix_.find(id);
  return it == arrow_ix_.end() ? -1 : it->second;
}

void Presentation::build_index() {
  vertex_ix_.clear();
  arrow_ix_.clear();
  for (int i = 0; i < num_vertices(); ++i) vertex_ix_[vertices[i]] = i;
  for (int i = 0; i < num_arrows(); ++i) arrow_ix_[arrows[i].name] = i;
  rel_.assign(arrows.size(), std::vector<char>(arrows.size(), 0));
  for (auto [b, a] : relations) rel_[b][a] = 1;
}

bool Presentation::is_relation(int b, int a) const { return rel_[b][a] != 0; }

bool Presentation::is_nonzero(const std::vector<int>& seq) const {
  for (size_t i = 1; i < seq.size(); ++i) {
    if (arrows[seq[i - 1]].target != arrows[seq[i]].source) return false;
    if (is_relation(seq[i], seq[i - 1])) return false;
  }
  return true;
}

Path Presentation::arrow_path(int a) const { return Path{arrows[a].source, arrows[a].target, {a}}; }

Path Presentation::make_path(const std::vector<int>& traversal) const {
  if (traversal.empty()) throw Error("NotComposable", "empty arrow sequence");
  for (size_t i = 1; i < traversal.size(); ++i)
    if (arrows[traversal[i - 1]].target != arrows[traversal[i]].source)
      throw Error("NotComposable", arrows[traversal[i]].name + " cannot follow " +
                                       arrows[traversal[i - 1]].name);
  return Path{arrows[traversal.front()].source, arrows[traversal.back()].target, traversal};
}

std::optional<Path> Presentation::compose(const Path& p, const Path& q) const {
  if (q.target != p.source)
    throw Error("NotComposable", path_name(p) + " cannot follow " + path_name(q));
  if (q.trivial()) return p;
  if (p.trivial()) return q;
  if (is_relation(p.first(), q.last())) return std::nullopt;
  Path r{q.source, p.target, q.arrows};
  r.arrows.insert(r.arrows.end(), p.arrows.begin(), p.arrows.end());
  return r;
}

std::vector<Path> Presentation::enumerate_paths(int max_len) const {
  std::vector<Path> out;
  for (int v = 0; v < num_vertices(); ++v) out.push_back(trivial(v));
  std::vector<Path> frontier;
  for (int a = 0; a < num_arrows(); ++a) frontier.push_back(arrow_path(a));
  for (int len = 1; len <= max_len && !frontier.empty(); ++len) {
    auto written = [&](const Path& p) {
      std::vector<std::string> names;
      for (auto it = p.arrows.rbegin(); it != p.arrows.rend(); ++it) names.push_back(arrows[*it].name);
      return names;
    };
    std::sort(frontier.begin(), frontier.end(),
              [&](const Path& x, const Path& y) { return written(x) < written(y); });
    out.insert(out.end(), frontier.begin(), frontier.end());
    std::vector<Path> next;
    for (const auto& p : frontier)
      for (int b = 0; b < num_arrows(); ++b)
        if (arrows[b].source == p.target && !is_relation(b, p.last())) {
          Path q = p;
          q.arrows.push_back(b);
          q.target = arrows[b].target;
          next.push_back(std::move(q));
        }
    frontier = std::move(next);
  }
  return out;
}

bool Presentation::finite_dimensional() const {
  auto paths = enumerate_paths(num_arrows() + 1);
  return paths.empty() || paths.back().length() <= static_cast<size_t>(num_arrows());
}

std::string Presentation::path_name(const Path& p) const {
  if (p.trivial()) return "1_" + vertices[p.source];
  std::string s;
  for (auto it = p.arrows.rbegin(); it != p.arrows.rend(); ++it) {
    if (!s.empty()) s += '*';
    s += arrows[*it].name;
  }
  return s;
}

namespace {

std::string strip_comment(const std::string& line) {
  auto hash = line.find('#');
  std::string s = hash == std::string::npos ? line : line.substr(0, hash);
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

Presentation parse_presentation_unchecked(const std::string& text) {
  static const std::regex ident(R"([A-Za-z0-9_][A-Za-z0-9_']*)");
  static const std::regex quiver_re(R"(quiver\s+(\S+))");
  static const std::regex vertex_re(R"(vertex((\s+\S+)+))");
  static const std::regex arrow_re(R"(arrow\s+(\S+?)\s*:\s*(\S+?)\s*->\s*(\S+))");
  static const std::regex rel_re(R"(rel\s+([^\s*]+)\s*\*\s*([^\s*]+))");

  Presentation p;
  std::vector<std::pair<std::string, std::string>> rel_names;
  std::vector<int> rel_lines;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  bool named = false;
  auto fail = [&](const std::string& kind, const std::string& msg) {
    throw Error(kind, "line " + std::to_string(lineno) + ": " + msg);
  };
  std::map<std::string, int> vseen, aseen;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = strip_comment(raw);
    if (line.empty()) continue;
    std::smatch m;
    if (std::regex_match(line, m, quiver_re)) {
      if (named) fail("SyntaxError", "duplicate quiver declaration");
      p.name = m[1];
      named = true;
    } else if (std::regex_match(line, m, vertex_re)) {
      std::istringstream ids(m[1].str());
      std::string id;
      while (ids >> id) {
        if (!std::regex_match(id, ident)) fail("SyntaxError", "bad vertex id '" + id + "'");
        if (vseen.count(id)) fail("SyntaxError", "duplicate vertex '" + id + "'");
        vseen[id] = static_cast<int>(p.vertices.size());
        p.vertices.push_back(id);
      }
    } else if (std::regex_match(line, m, arrow_re)) {
      std::string name = m[1], src = m[2], tgt = m[3];
      if (!std::regex_match(name, ident)) fail("SyntaxError", "bad arrow name '" + name + "'");
      if (aseen.count(name)) fail("DuplicateArrow", "arrow '" + name + "' declared twice");
      if (!vseen.count(src)) fail("UnknownVertex", "vertex '" + src + "' is not declared");
      if (!vseen.count(tgt)) fail("UnknownVertex", "vertex '" + tgt + "' is not declared");
      aseen[name] = static_cast<int>(p.arrows.size());
      p.arrows.push_back(Arrow{name, vseen[src], vseen[tgt]});
    } else if (std::regex_match(line, m, rel_re)) {
      rel_names.emplace_back(m[1], m[2]);
      rel_lines.push_back(lineno);
    } else {
      fail("SyntaxError", "cannot parse '" + line + "'");
    }
  }
  for (size_t i = 0; i < rel_names.size(); ++i) {
    lineno = rel_lines[i];
    auto [b, a] = rel_names[i];
    if (!aseen.count(b)) fail("SyntaxError", "unknown arrow '" + b + "' in relation");
    if (!aseen.count(a)) fail("SyntaxError", "unknown arrow '" + a + "' in relation");
    std::pair<int, int> r{aseen[b], aseen[a]};
    if (std::find(p.relations.begin(), p.relations.end(), r) != p.relations.end())
      fail("SyntaxError", "duplicate relation " + b + "*" + a);
    p.relations.push_back(r);
  }
  p.build_index();
  return p;
}

std::vector<Violation> check_gentle(const Presentation& p) {
  std::vector<Violation> out;
  const int nv = p.num_vertices(), na = p.num_arrows();
  for (int v = 0; v < nv; ++v) {
    int outdeg = 0, indeg = 0;
    for (const auto& a : p.arrows) {
      outdeg += a.source == v;
      indeg += a.target == v;
    }
    if (outdeg > 2)
      out.push_back({1, p.vertices[v], std::to_string(outdeg) + " arrows start at vertex " + p.vertices[v]});
    if (indeg > 2)
      out.push_back({1, p.vertices[v], std::to_string(indeg) + " arrows end at vertex " + p.vertices[v]});
  }
  for (int a = 0; a < na; ++a) {
    const auto& A = p.arrows[a];
    int succ_free = 0, pred_free = 0, succ_rel = 0, pred_rel = 0;
    for (int b = 0; b < na; ++b) {
      const auto& B = p.arrows[b];
      if (B.source == A.target && !p.is_relation(b, a)) ++succ_free;
      if (B.target == A.source && !p.is_relation(a, b)) ++pred_free;
      if (p.is_relation(b, a)) ++succ_rel;
      if (p.is_relation(a, b)) ++pred_rel;
    }
    if (succ_free > 1)
      out.push_back({2, A.name, "arrow " + A.name + " has " + std::to_string(succ_free) +
                                    " successors outside the relations"});
    if (pred_free > 1)
      out.push_back({2, A.name, "arrow " + A.name + " has " + std::to_string(pred_free) +
                                    " predecessors outside the relations"});
    if (succ_rel > 1)
      out.push_back({3, A.name, "arrow " + A.name + " has " + std::to_string(succ_rel) +
                                    " successors inside the relations"});
    if (pred_rel > 1)
      out.push_back({3, A.name, "arrow " + A.name + " has " + std::to_string(pred_rel) +
                                    " predecessors inside the relations"});
  }
  for (auto [b, a] : p.relations)
    if (p.arrows[a].target != p.arrows[b].source) {
      std::string w = p.arrows[b].name + "*" + p.arrows[a].name;
      out.push_back({4, w, "relation " + w + " is not a composable length-two path"});
    }
  return out;
}

Presentation parse_presentation(const std::string& text) {
  Presentation p = parse_presentation_unchecked(text);
  auto v = check_gentle(p);
  if (!v.empty()) {
    std::string msg = "condition (" + std::to_string(v[0].condition) + ") fails at " + v[0].witness +
                      ": " + v[0].message;
    throw Error("NotGentle", msg);
  }
  return p;
}

Path parse_path(const std::string& text, const Presentation& p) {
  if (text.rfind("1_", 0) == 0 && p.arrow_index(text) < 0) {
    int v = p.vertex_index(text.substr(2));
    if (v < 0) throw Error("UnknownVertex", "vertex '" + text.substr(2) + "' is not declared");
    return p.trivial(v);
  }
  std::vector<int> traversal;
  std::string item;
  std::istringstream in(text);
  std::vector<std::string> written;
  while (std::getline(in, item, '*')) {
    auto b = item.find_first_not_of(" \t"), e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw Error("SyntaxError", "empty arrow in path '" + text + "'");
    written.push_back(item.substr(b, e - b + 1));
  }
  for (auto it = written.rbegin(); it != written.rend(); ++it) {
    int a = p.arrow_index(*it);
    if (a < 0) throw Error("SyntaxError", "unknown arrow '" + *it + "'");
    traversal.push_back(a);
  }
  Path path = p.make_path(traversal);
  if (!p.is_nonzero(path.arrows)) throw Error("InvalidPath", "path " + text + " is zero");
  return path;
}

Presentation load_presentation(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw Error("IOError", "cannot read '" + file + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_presentation(ss.str());
}

std::string serialize(const Presentation& p) {
  std::ostringstream out;
  out << "quiver " << p.name << "\n";
  if (!p.vertices.empty()) {
    out << "vertex";
    for (const auto& v : p.vertices) out << " " << v;
    out << "\n";
  }
  for (const auto& a : p.arrows)
    out << "arrow " << a.name << " : " << p.vertices[a.source] << " -> " << p.vertices[a.target] << "\n";
  for (auto [b, a] : p.relations) out << "rel " << p.arrows[b].name << "*" << p.arrows[a].name << "\n";
  return out.str();
}

std::string presentation_hash(const Presentation& p) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : serialize(p)) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream out;
  out << std::hex << h;
  return out.str();
}

PathBasis::PathBasis(const Presentation& p) : pres_(p) {
  if (!p.finite_dimensional())
    throw Error("InfiniteDimensional", "the algebra " + p.name + " is not finite dimensional");
  paths_ = p.enumerate_paths(p.num_arrows());
  for (int i = 0; i < size(); ++i) ids_[paths_[i]] = i;
  const size_t n = paths_.size();
  mul_.assign(n * n, -1);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (paths_[j].target != paths_[i].source) continue;
      auto r = p.compose(paths_[i], paths_[j]);
      if (r) mul_[i * n + j] = ids_.at(*r);
    }
  const int nv = p.num_vertices();
  between_.assign(nv, std::vector<std::vector<int>>(nv));
  trivial_.assign(nv, -1);
  for (int i = 0; i < size(); ++i) {
    between_[paths_[i].source][paths_[i].target].push_back(i);
    if (paths_[i].trivial()) trivial_[paths_[i].source] = i;
  }
}

int PathBasis::id_of(const Path& p) const {
  auto it = ids_.find(p);
  if (it == ids_.end()) throw Error("InvalidPath", pres_.path_name(p) + " is not a nonzero path");
  return it->second;
}

}  // namespace gentle
