#pragma once

#include <algorithm>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "angle_rigidity/errors.hpp"
#include "angle_rigidity/graph.hpp"

namespace angle_rigidity {

// Constrains the angle at `apex` between edges (apex,j) and (apex,k); j<k.
struct Triple {
  Vertex apex = 0;
  Vertex j = 0;
  Vertex k = 0;

  friend bool operator==(const Triple&, const Triple&) = default;
  friend auto operator<=>(const Triple&, const Triple&) = default;
};

inline std::string to_string(const Triple& t) {
  return "(" + std::to_string(t.apex) + "," + std::to_string(t.j) + "," + std::to_string(t.k) + ")";
}

enum class Provenance { kFull, kAlgorithm1, kLamanMinimal, kLamanGlobal, kTriangleFormation, kExplicit };

inline std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::kFull: return "full";
    case Provenance::kAlgorithm1: return "algorithm1";
    case Provenance::kLamanMinimal: return "laman_minimal";
    case Provenance::kLamanGlobal: return "laman_global";
    case Provenance::kTriangleFormation: return "triangle_formation";
    case Provenance::kExplicit: return "explicit";
  }
  return "unknown";
}

class AngleIndexSet {
 public:
  AngleIndexSet() = default;

  // Wing order is normalized to j<k and the list sorted; duplicates and
  // triples with a repeated vertex are rejected.
  explicit AngleIndexSet(std::vector<Triple> triples, Provenance provenance = Provenance::kExplicit)
      : triples_(std::move(triples)), provenance_(provenance) {
    for (auto& t : triples_) {
      if (t.apex == t.j || t.apex == t.k || t.j == t.k) {
        throw InvalidArgument("degenerate triple " + to_string(t));
      }
      if (t.j > t.k) std::swap(t.j, t.k);
    }
    std::sort(triples_.begin(), triples_.end());
    if (auto dup = std::adjacent_find(triples_.begin(), triples_.end()); dup != triples_.end()) {
      throw InvalidArgument("duplicate triple " + to_string(*dup));
    }
  }

  const std::vector<Triple>& triples() const noexcept { return triples_; }
  Provenance provenance() const noexcept { return provenance_; }
  int size() const noexcept { return static_cast<int>(triples_.size()); }
  bool empty() const noexcept { return triples_.empty(); }

  bool contains(const Triple& t) const { return std::binary_search(triples_.begin(), triples_.end(), t); }

  auto begin() const { return triples_.begin(); }
  auto end() const { return triples_.end(); }

  // Both wings of every triple must be edges of g.
  void validate(const Graph& g) const {
    for (const auto& t : triples_) {
      g.check_vertex(t.apex);
      g.check_vertex(t.j);
      g.check_vertex(t.k);
      if (!g.has_edge(t.apex, t.j) || !g.has_edge(t.apex, t.k)) {
        throw NotAnEdge("triple " + to_string(t) + " uses a non-edge");
      }
    }
  }

  AngleIndexSet without(std::size_t index) const {
    std::vector<Triple> rest = triples_;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(index));
    return AngleIndexSet(std::move(rest), provenance_);
  }

  friend bool operator==(const AngleIndexSet& a, const AngleIndexSet& b) { return a.triples_ == b.triples_; }

 private:
  std::vector<Triple> triples_;
  Provenance provenance_ = Provenance::kExplicit;
};

}  // namespace angle_rigidity
