#include "combalg/hypergraph.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <limits>
#include <mutex>
#include <queue>
#include <sstream>
#include <thread>

#include "combalg/error.hpp"

namespace combalg {

Hypergraph3::Hypergraph3(std::size_t n, std::vector<Edge> edges) : n_(n) {
  for (Edge& e : edges) {
    std::sort(e.begin(), e.end());
    if (e[0] == e[1] || e[1] == e[2])
      throw PreconditionError("hyperedge with a repeated vertex");
    if (e[2] >= n)
      throw PreconditionError("hyperedge vertex " + std::to_string(e[2]) + " out of range");
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw PreconditionError("duplicate hyperedge");
  edges_ = std::move(edges);
}

bool Hypergraph3::has_edge(Vertex u, Vertex v, Vertex w) const {
  Edge e{u, v, w};
  std::sort(e.begin(), e.end());
  return std::binary_search(edges_.begin(), edges_.end(), e);
}

bool Hypergraph3::share_edge(Vertex u, Vertex v) const {
  if (u == v) return false;
  return std::any_of(edges_.begin(), edges_.end(), [&](const Edge& e) {
    return std::count(e.begin(), e.end(), u) + std::count(e.begin(), e.end(), v) == 2;
  });
}

std::vector<std::size_t> Hypergraph3::edges_at(Vertex v) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < edges_.size(); ++i)
    if (std::find(edges_[i].begin(), edges_[i].end(), v) != edges_[i].end()) out.push_back(i);
  return out;
}

std::vector<Vertex> Hypergraph3::isolated_vertices() const {
  std::vector<bool> seen(n_, false);
  for (const Edge& e : edges_)
    for (Vertex v : e) seen[v] = true;
  std::vector<Vertex> out;
  for (Vertex v = 0; v < n_; ++v)
    if (!seen[v]) out.push_back(v);
  return out;
}

// ---------------------------------------------------------------- girth

// A hypergraph cycle of length n is a simple cycle of length 2n in the
// bipartite incidence graph; the graph has no parallel edges, so n >= 2 holds
// automatically. BFS from every node gives the exact shortest cycle.
std::optional<std::size_t> girth(const Hypergraph3& H) {
  const std::size_t n = H.vertex_count();
  const std::size_t nodes = n + H.edges().size();
  std::vector<std::vector<std::size_t>> adj(nodes);
  for (std::size_t i = 0; i < H.edges().size(); ++i)
    for (Vertex v : H.edges()[i]) {
      adj[v].push_back(n + i);
      adj[n + i].push_back(v);
    }

  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::size_t best = kNone;
  std::vector<std::size_t> dist(nodes), parent(nodes);
  for (std::size_t s = 0; s < nodes; ++s) {
    std::fill(dist.begin(), dist.end(), kNone);
    dist[s] = 0;
    parent[s] = kNone;
    std::queue<std::size_t> q;
    q.push(s);
    while (!q.empty()) {
      std::size_t u = q.front();
      q.pop();
      if (2 * dist[u] >= best) break;
      for (std::size_t w : adj[u]) {
        if (dist[w] == kNone) {
          dist[w] = dist[u] + 1;
          parent[w] = u;
          q.push(w);
        } else if (w != parent[u]) {
          best = std::min(best, dist[u] + dist[w] + 1);
        }
      }
    }
  }
  if (best == kNone) return std::nullopt;
  return best / 2;
}

// ---------------------------------------------------------------- homs

bool is_hom(const Hypergraph3& H, const Hom& h) {
  if (h.size() != H.vertex_count()) return false;
  return std::all_of(H.edges().begin(), H.edges().end(), [&](const Edge& e) {
    return std::count_if(e.begin(), e.end(), [&](Vertex v) { return h[v] == Label::a; }) == 1;
  });
}

std::string to_string(const Hom& h) {
  std::string out;
  for (std::size_t v = 0; v < h.size(); ++v) {
    if (v) out += ' ';
    out += std::to_string(v) + (h[v] == Label::a ? ":a" : ":1");
  }
  return out;
}

namespace {

constexpr std::uint8_t kFree = 2;

class HomSearch {
 public:
  explicit HomSearch(const Hypergraph3& H) : H_(H), at_(H.vertex_count()) {
    for (Vertex v = 0; v < H.vertex_count(); ++v) at_[v] = H.edges_at(v);
  }

  // Visits solutions in lexicographic order; visit returns false to stop.
  template <class Visit>
  void run(std::vector<std::uint8_t> values, Visit&& visit) {
    std::vector<Vertex> trail;
    for (Vertex v = 0; v < values.size(); ++v)
      if (values[v] != kFree && !propagate(values, v, trail)) return;
    stop_ = false;
    search(values, 0, visit);
  }

 private:
  // Assigns consequences of the value at v; false on a conflict.
  bool propagate(std::vector<std::uint8_t>& values, Vertex start, std::vector<Vertex>& trail) {
    std::vector<Vertex> stack{start};
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      for (std::size_t ei : at_[v]) {
        const Edge& e = H_.edges()[ei];
        int as = 0, ones = 0;
        for (Vertex u : e) {
          if (values[u] == static_cast<std::uint8_t>(Label::a)) ++as;
          if (values[u] == static_cast<std::uint8_t>(Label::one)) ++ones;
        }
        if (as > 1 || ones == 3) return false;
        std::uint8_t forced = kFree;
        if (as == 1) forced = static_cast<std::uint8_t>(Label::one);
        else if (ones == 2) forced = static_cast<std::uint8_t>(Label::a);
        if (forced == kFree) continue;
        for (Vertex u : e)
          if (values[u] == kFree) {
            values[u] = forced;
            trail.push_back(u);
            stack.push_back(u);
          }
      }
    }
    return true;
  }

  template <class Visit>
  void search(std::vector<std::uint8_t>& values, Vertex from, Visit& visit) {
    while (from < values.size() && values[from] != kFree) ++from;
    if (from == values.size()) {
      Hom h(values.size());
      for (std::size_t v = 0; v < values.size(); ++v) h[v] = static_cast<Label>(values[v]);
      if (!visit(h)) stop_ = true;
      return;
    }
    for (Label l : {Label::a, Label::one}) {
      std::vector<Vertex> trail{from};
      values[from] = static_cast<std::uint8_t>(l);
      if (propagate(values, from, trail)) search(values, from + 1, visit);
      for (Vertex u : trail) values[u] = kFree;
      if (stop_) return;
    }
  }

  const Hypergraph3& H_;
  std::vector<std::vector<std::size_t>> at_;
  bool stop_ = false;
};

}  // namespace

std::optional<Hom> find_hom(const Hypergraph3& H,
                            const std::vector<std::pair<Vertex, Label>>& forced) {
  std::vector<std::uint8_t> values(H.vertex_count(), kFree);
  for (auto [v, l] : forced) {
    if (v >= values.size()) throw PreconditionError("forced vertex out of range");
    auto want = static_cast<std::uint8_t>(l);
    if (values[v] != kFree && values[v] != want) return std::nullopt;
    values[v] = want;
  }
  std::optional<Hom> found;
  HomSearch(H).run(std::move(values), [&](const Hom& h) {
    found = h;
    return false;
  });
  return found;
}

std::vector<Hom> all_homs(const Hypergraph3& H, std::size_t limit) {
  std::vector<Hom> out;
  bool over = false;
  HomSearch(H).run(std::vector<std::uint8_t>(H.vertex_count(), kFree), [&](const Hom& h) {
    if (out.size() == limit) {
      over = true;
      return false;
    }
    out.push_back(h);
    return true;
  });
  if (over) throw BudgetExceeded("more than " + std::to_string(limit) + " homomorphisms");
  return out;
}

RobustnessResult is_robustly_satisfiable(const Hypergraph3& H, unsigned jobs) {
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (Vertex u = 0; u < H.vertex_count(); ++u)
    for (Vertex v = u + 1; v < H.vertex_count(); ++v) pairs.emplace_back(u, v);

  // Least failing (pair index, labelling index); workers skip pairs past it.
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::size_t fail_pair = kNone, fail_case = 0;
  static constexpr std::pair<Label, Label> kCases[4] = {
      {Label::a, Label::a}, {Label::a, Label::one}, {Label::one, Label::a}, {Label::one, Label::one}};

  auto worker = [&] {
    for (std::size_t i = next++; i < pairs.size(); i = next++) {
      {
        std::lock_guard lock(mu);
        if (i > fail_pair) return;
      }
      auto [u, v] = pairs[i];
      bool inside = H.share_edge(u, v);
      for (std::size_t c = 0; c < 4; ++c) {
        if (c == 0 && inside) continue;
        if (find_hom(H, {{u, kCases[c].first}, {v, kCases[c].second}})) continue;
        std::lock_guard lock(mu);
        if (i < fail_pair) {
          fail_pair = i;
          fail_case = c;
        }
        break;
      }
    }
  };

  unsigned n = jobs ? jobs : std::max(1U, std::thread::hardware_concurrency());
  n = static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(1, pairs.size())));
  std::vector<std::thread> threads;
  for (unsigned t = 1; t < n; ++t) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();

  RobustnessResult r;
  if (fail_pair != kNone) {
    r.robust = false;
    r.pair = pairs[fail_pair];
    r.labels = kCases[fail_case];
  }
  return r;
}

// ---------------------------------------------------------------- corpus

const std::vector<std::pair<std::string, Hypergraph3>>& corpus() {
  static const std::vector<std::pair<std::string, Hypergraph3>> entries = [] {
    std::vector<Edge> k5;
    for (Vertex a = 0; a < 5; ++a)
      for (Vertex b = a + 1; b < 5; ++b)
        for (Vertex c = b + 1; c < 5; ++c) k5.push_back({a, b, c});
    return std::vector<std::pair<std::string, Hypergraph3>>{
        {"single_edge", Hypergraph3(3, {{0, 1, 2}})},
        {"path2", Hypergraph3(5, {{0, 1, 2}, {2, 3, 4}})},
        {"path3", Hypergraph3(7, {{0, 1, 2}, {2, 3, 4}, {4, 5, 6}})},
        {"star3", Hypergraph3(7, {{0, 1, 2}, {0, 3, 4}, {0, 5, 6}})},
        {"K5_3", Hypergraph3(5, k5)},
        {"fano", Hypergraph3(7, {{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5}, {1, 4, 6},
                                 {2, 3, 6}, {2, 4, 5}})},
        {"disjoint2", Hypergraph3(6, {{0, 1, 2}, {3, 4, 5}})},
        {"girth2", Hypergraph3(4, {{0, 1, 2}, {0, 1, 3}})},
    };
  }();
  return entries;
}

std::optional<Hypergraph3> corpus_entry(const std::string& name) {
  for (const auto& [n, H] : corpus())
    if (n == name) return H;
  return std::nullopt;
}

// ---------------------------------------------------------------- files

Hypergraph3 read_hypergraph(std::istream& in) {
  std::string line;
  std::optional<std::size_t> n;
  std::vector<Edge> edges;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    auto bad = [&] { return ParseError("bad hypergraph line " + std::to_string(lineno), 0); };
    if (!n) {
      std::string key;
      long long count = -1;
      if (!(ls >> key >> count) || key != "n" || count < 0) throw bad();
      n = static_cast<std::size_t>(count);
    } else {
      long long u, v, w;
      if (!(ls >> u >> v >> w) || u < 0 || v < 0 || w < 0) throw bad();
      edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v), static_cast<Vertex>(w)});
    }
    std::string rest;
    if (ls >> rest) throw bad();
  }
  if (!n) throw ParseError("missing \"n <count>\" line", 0);
  return Hypergraph3(*n, std::move(edges));
}

Hypergraph3 read_hypergraph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open " + path);
  return read_hypergraph(in);
}

std::string write_hypergraph(const Hypergraph3& H) {
  std::string out = "n " + std::to_string(H.vertex_count()) + "\n";
  for (const Edge& e : H.edges())
    out += std::to_string(e[0]) + ' ' + std::to_string(e[1]) + ' ' + std::to_string(e[2]) + '\n';
  return out;
}

Hypergraph3 load_hypergraph(const std::string& spec) {
  if (!spec.empty() && spec[0] == '@') {
    if (auto H = corpus_entry(spec.substr(1))) return *H;
    throw PreconditionError("unknown hypergraph " + spec);
  }
  return read_hypergraph_file(spec);
}

}  // namespace combalg
