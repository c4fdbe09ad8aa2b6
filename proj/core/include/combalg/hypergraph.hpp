#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace combalg {

using Vertex = unsigned;
using Edge = std::array<Vertex, 3>;  // strictly increasing

// 3-uniform hypergraph on vertices 0..n-1.
class Hypergraph3 {
 public:
  Hypergraph3() = default;
  // Sorts each triple and the edge list; throws PreconditionError on
  // repeated vertices, out-of-range vertices or duplicate edges.
  Hypergraph3(std::size_t n, std::vector<Edge> edges);

  std::size_t vertex_count() const noexcept { return n_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  bool has_edge(Vertex u, Vertex v, Vertex w) const;
  // True when u != v lie together in some edge.
  bool share_edge(Vertex u, Vertex v) const;
  std::vector<std::size_t> edges_at(Vertex v) const;
  std::vector<Vertex> isolated_vertices() const;

  friend bool operator==(const Hypergraph3&, const Hypergraph3&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
};

// Length of the shortest cycle v1 e1 v2 ... vn en v1 with distinct vertices,
// distinct edges and n >= 2; nullopt means no cycle (a hyperforest).
std::optional<std::size_t> girth(const Hypergraph3& H);
inline bool is_hyperforest(const Hypergraph3& H) { return !girth(H).has_value(); }

// A vertex labelling by the template {a, 1}: exactly one a per edge.
enum class Label : std::uint8_t { a, one };
using Hom = std::vector<Label>;

bool is_hom(const Hypergraph3& H, const Hom& h);
std::string to_string(const Hom& h);  // e.g. "0:a 1:1 2:1"

// Lexicographically least homomorphism (a before 1, vertex 0 most
// significant) extending `forced`, found by backtracking with unit
// propagation.
std::optional<Hom> find_hom(const Hypergraph3& H,
                            const std::vector<std::pair<Vertex, Label>>& forced = {});
// Every homomorphism in lexicographic order; throws BudgetExceeded past limit.
std::vector<Hom> all_homs(const Hypergraph3& H, std::size_t limit = 1'000'000);

struct RobustnessResult {
  bool robust = true;
  // First failing pair (u < v) and labels when not robust.
  std::optional<std::pair<Vertex, Vertex>> pair;
  std::pair<Label, Label> labels{Label::a, Label::a};
};

// Every pair u < v and every labelling of it extends to a homomorphism,
// except a on both ends of a pair inside an edge.
RobustnessResult is_robustly_satisfiable(const Hypergraph3& H, unsigned jobs = 0);

// Fixed named instances: single_edge, path2, path3, star3, K5_3, fano,
// disjoint2, girth2.
const std::vector<std::pair<std::string, Hypergraph3>>& corpus();
std::optional<Hypergraph3> corpus_entry(const std::string& name);

// "n <count>" then one 0-based "u v w" per line; '#' starts a comment line.
Hypergraph3 read_hypergraph(std::istream& in);
Hypergraph3 read_hypergraph_file(const std::string& path);
std::string write_hypergraph(const Hypergraph3& H);
// "@name" selects a corpus entry, anything else is a file path.
Hypergraph3 load_hypergraph(const std::string& spec);

}  // namespace combalg
