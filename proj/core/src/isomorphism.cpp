#include <algorithm>
#include <map>

#include "combalg/error.hpp"
#include "combalg/finite_algebra.hpp"

namespace combalg {

namespace {

using Colors = std::vector<int>;

// Joint colour refinement of A and B so colours are comparable across them.
std::pair<Colors, Colors> refine(const FiniteAlgebra& A, const FiniteAlgebra& B) {
  const Signature sig = A.signature();
  const std::size_t n = A.size();
  Colors ca(n, 0);
  Colors cb(n, 0);
  std::size_t classes = 0;
  for (std::size_t round = 0; round <= n + 1; ++round) {
    std::map<std::vector<int>, int> palette;
    auto signature_of_elem = [&](const FiniteAlgebra& X, const Colors& c, Elem x) {
      std::vector<int> key{c[x]};
      for (Op op : sig.ops()) {
        if (arity(op) == 0) {
          key.push_back(X.constant(op) == x);
        } else if (arity(op) == 1) {
          key.push_back(c[X.apply(op, x)]);
          key.push_back(X.apply(op, x) == x);
        } else {
          key.push_back(c[X.apply(op, x, x)]);
          key.push_back(X.apply(op, x, x) == x);
          std::vector<std::array<int, 3>> row;
          for (Elem y = 0; y < n; ++y) {
            row.push_back({c[y], c[X.apply(op, x, y)], c[X.apply(op, y, x)]});
          }
          std::sort(row.begin(), row.end());
          for (const auto& r : row) key.insert(key.end(), r.begin(), r.end());
        }
      }
      return key;
    };
    std::vector<std::vector<int>> ka(n), kb(n);
    for (Elem x = 0; x < n; ++x) {
      ka[x] = signature_of_elem(A, ca, x);
      kb[x] = signature_of_elem(B, cb, x);
      palette.emplace(ka[x], 0);
      palette.emplace(kb[x], 0);
    }
    int next = 0;
    for (auto& [key, id] : palette) id = next++;
    for (Elem x = 0; x < n; ++x) {
      ca[x] = palette[ka[x]];
      cb[x] = palette[kb[x]];
    }
    if (palette.size() == classes) break;
    classes = palette.size();
  }
  return {ca, cb};
}

class IsoSearch {
 public:
  IsoSearch(const FiniteAlgebra& A, const FiniteAlgebra& B, Colors ca, Colors cb)
      : A_(A), B_(B), n_(A.size()), ca_(std::move(ca)), cb_(std::move(cb)),
        map_(n_, kUndef), inv_(n_, kUndef) {}

  std::optional<std::vector<Elem>> run() {
    for (Op op : A_.signature().ops_of_arity(0)) {
      if (!assign(A_.constant(op), B_.constant(op))) return std::nullopt;
    }
    if (search()) return map_;
    return std::nullopt;
  }

 private:
  // Maps x to y and everything that forces; false (with the trail rolled
  // back to its entry length) on conflict.
  bool assign(Elem x, Elem y) {
    std::size_t mark = trail_.size();
    std::vector<std::pair<Elem, Elem>> queue{{x, y}};
    while (!queue.empty()) {
      auto [u, v] = queue.back();
      queue.pop_back();
      if (map_[u] != kUndef || inv_[v] != kUndef) {
        if (map_[u] == v) continue;
        undo(mark);
        return false;
      }
      if (ca_[u] != cb_[v]) {
        undo(mark);
        return false;
      }
      map_[u] = v;
      inv_[v] = u;
      trail_.push_back(u);
      for (Op op : A_.signature().ops()) {
        if (arity(op) == 1) {
          queue.emplace_back(A_.apply(op, u), B_.apply(op, v));
        } else if (arity(op) == 2) {
          for (Elem z : trail_) {
            Elem w = map_[z];
            queue.emplace_back(A_.apply(op, u, z), B_.apply(op, v, w));
            queue.emplace_back(A_.apply(op, z, u), B_.apply(op, w, v));
          }
        }
      }
    }
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      Elem u = trail_.back();
      trail_.pop_back();
      inv_[map_[u]] = kUndef;
      map_[u] = kUndef;
    }
  }

  bool search() {
    // Branch on the unmapped element with the fewest candidates.
    Elem pick = kUndef;
    std::size_t best = SIZE_MAX;
    for (Elem x = 0; x < n_; ++x) {
      if (map_[x] != kUndef) continue;
      std::size_t count = 0;
      for (Elem y = 0; y < n_; ++y) count += inv_[y] == kUndef && cb_[y] == ca_[x];
      if (count < best) {
        best = count;
        pick = x;
      }
    }
    if (pick == kUndef) return true;
    for (Elem y = 0; y < n_; ++y) {
      if (inv_[y] != kUndef || cb_[y] != ca_[pick]) continue;
      std::size_t mark = trail_.size();
      if (assign(pick, y)) {
        if (search()) return true;
        undo(mark);
      }
    }
    return false;
  }

  const FiniteAlgebra& A_;
  const FiniteAlgebra& B_;
  std::size_t n_;
  Colors ca_, cb_;
  std::vector<Elem> map_, inv_;
  std::vector<Elem> trail_;
};

}  // namespace

std::optional<std::vector<Elem>> find_isomorphism(const FiniteAlgebra& A, const FiniteAlgebra& B,
                                                  const IsoOptions& opts) {
  if (A.size() != B.size() || A.signature() != B.signature()) return std::nullopt;
  if (A.size() > opts.max_size) {
    throw BudgetExceeded("isomorphism search limited to " + std::to_string(opts.max_size) +
                         " elements, got " + std::to_string(A.size()));
  }
  A.validate();
  B.validate();
  auto [ca, cb] = refine(A, B);
  auto sa = ca;
  auto sb = cb;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (sa != sb) return std::nullopt;
  auto map = IsoSearch(A, B, std::move(ca), std::move(cb)).run();
  if (map && !verify_isomorphism(A, B, *map)) {
    throw InvariantViolation("isomorphism search returned a map that is not a homomorphism");
  }
  return map;
}

bool verify_isomorphism(const FiniteAlgebra& A, const FiniteAlgebra& B,
                        const std::vector<Elem>& map) {
  const std::size_t n = A.size();
  if (B.size() != n || map.size() != n || A.signature() != B.signature()) return false;
  std::vector<bool> hit(n, false);
  for (Elem v : map) {
    if (v >= n || hit[v]) return false;
    hit[v] = true;
  }
  for (Op op : A.signature().ops()) {
    switch (arity(op)) {
      case 0:
        if (map[A.constant(op)] != B.constant(op)) return false;
        break;
      case 1:
        for (Elem x = 0; x < n; ++x) {
          if (map[A.apply(op, x)] != B.apply(op, map[x])) return false;
        }
        break;
      default:
        for (Elem x = 0; x < n; ++x) {
          for (Elem y = 0; y < n; ++y) {
            if (map[A.apply(op, x, y)] != B.apply(op, map[x], map[y])) return false;
          }
        }
    }
  }
  return true;
}

}  // namespace combalg
