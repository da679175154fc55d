#pragma once

// Gentle bound quivers and path arithmetic modulo length-two monomial relations.
//
// Conventions: a path stores its arrows in traversal order; the written form
// reads right to left, so "d*c" (written dc) means "c then d".

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gentle {

struct Arrow {
  std::string name;
  int source = 0;
  int target = 0;
};

struct Path {
  int source = 0;
  int target = 0;
  std::vector<int> arrows;  // traversal order; empty means the trivial path at source

  bool trivial() const { return arrows.empty(); }
  size_t length() const { return arrows.size(); }
  int first() const { return arrows.front(); }
  int last() const { return arrows.back(); }

  bool operator==(const Path& o) const {
    return source == o.source && target == o.target && arrows == o.arrows;
  }
  bool operator!=(const Path& o) const { return !(*this == o); }
  bool operator<(const Path& o) const {
    if (source != o.source) return source < o.source;
    if (target != o.target) return target < o.target;
    return arrows < o.arrows;
  }
};

struct Violation {
  int condition = 0;      // 1..4 as in the definition of a gentle algebra
  std::string witness;    // offending vertex, arrow or relation
  std::string message;
};

class Presentation {
 public:
  std::string name = "unnamed";
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;
  std::vector<std::pair<int, int>> relations;  // (b, a): "a then b" lies in the ideal

  int vertex_index(const std::string& id) const;  // -1 if unknown
  int arrow_index(const std::string& id) const;   // -1 if unknown
  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int num_arrows() const { return static_cast<int>(arrows.size()); }

  bool is_relation(int b, int a) const;
  // True iff the arrow sequence (traversal order) is a composable walk with no relation.
  bool is_nonzero(const std::vector<int>& arrows) const;

  Path trivial(int vertex) const { return Path{vertex, vertex, {}}; }
  Path arrow_path(int arrow) const;
  Path make_path(const std::vector<int>& traversal) const;  // throws NotComposable

  // The product pq, i.e. "q then p".  Requires target(q) == source(p).
  std::optional<Path> compose(const Path& p, const Path& q) const;

  // All nonzero paths of length <= max_len, trivial ones included; ordered by
  // length, then lexicographically on the written arrow names.
  std::vector<Path> enumerate_paths(int max_len) const;

  // True iff Lambda is finite dimensional (no nonzero path longer than #arrows).
  bool finite_dimensional() const;

  std::string path_name(const Path& p) const;  // "d*c", "a", or "1_x"

  void build_index();

 private:
  std::map<std::string, int> vertex_ix_, arrow_ix_;
  std::vector<std::vector<char>> rel_;  // rel_[b][a]
};

// Parse the line-oriented algebra format.  parse_presentation also enforces
// gentleness (throws NotGentle); the unchecked variant only checks structure.
Presentation parse_presentation_unchecked(const std::string& text);
Presentation parse_presentation(const std::string& text);
Presentation load_presentation(const std::string& file);

// Parse a written path "d*c", "a" or "1_x"; throws on zero or malformed paths.
Path parse_path(const std::string& text, const Presentation& p);

std::vector<Violation> check_gentle(const Presentation& p);
std::string serialize(const Presentation& p);
// FNV-1a hash of the serialized form, for report provenance.
std::string presentation_hash(const Presentation& p);

// Finite basis of Lambda by nonzero paths with a precomputed product table.
class PathBasis {
 public:
  explicit PathBasis(const Presentation& p);

  int size() const { return static_cast<int>(paths_.size()); }
  const Path& path(int id) const { return paths_[id]; }
  int id_of(const Path& p) const;  // throws if p is not a nonzero path
  // id of the product pq ("q then p"), or -1 if zero / not composable.
  int mul(int p, int q) const { return mul_[static_cast<size_t>(p) * paths_.size() + q]; }
  // ids of nonzero paths from vertex `from` to vertex `to`.
  const std::vector<int>& between(int from, int to) const { return between_[from][to]; }
  int trivial_id(int vertex) const { return trivial_[vertex]; }
  const Presentation& presentation() const { return pres_; }

 private:
  Presentation pres_;
  std::vector<Path> paths_;
  std::map<Path, int> ids_;
  std::vector<int> mul_;
  std::vector<std::vector<std::vector<int>>> between_;
  std::vector<int> trivial_;
};

}  // namespace gentle
