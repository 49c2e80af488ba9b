#pragma once

#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include "lscat/gf2.hpp"
#include "lscat/space.hpp"

namespace lscat {

// Simplicial complex with a fixed vertex order. Vertices of an order complex
// are numbered by position in the space's linear extension, so every simplex
// is a strictly increasing vertex list and front/back faces of the cup
// product formula are well defined and reproducible bit-for-bit.
struct SimplicialComplex {
  std::vector<std::string> labels;                   // vertex -> point id
  std::vector<std::vector<std::vector<int>>> cells;  // cells[d][i] = ascending vertices

  int dim() const { return static_cast<int>(cells.size()) - 1; }
  int count(int d) const {
    return (d < 0 || d > dim()) ? 0 : static_cast<int>(cells[static_cast<std::size_t>(d)].size());
  }
  long total() const {
    long t = 0;
    for (const auto& layer : cells) t += static_cast<long>(layer.size());
    return t;
  }
  int index_of(int d, const std::vector<int>& verts) const;  // -1 when absent
  int euler_characteristic() const;

  // d-th boundary matrix: rows are (d-1)-simplices, columns d-simplices.
  Gf2Matrix boundary(int d) const;

  void build_index();

 private:
  struct VecHash {
    std::size_t operator()(const std::vector<int>& v) const {
      std::size_t h = 1469598103934665603ull;
      for (int x : v) {
        h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull;
        h *= 1099511628211ull;
      }
      return h;
    }
  };
  std::vector<std::unordered_map<std::vector<int>, int, VecHash>> index_;
};

// Order complex: simplices are the nonempty chains of the space. Throws
// BudgetExceeded when the chain count passes max_simplices.
SimplicialComplex order_complex(const FiniteSpace& x, std::size_t max_simplices = 100000);

// GF(2) Betti numbers; trailing zero degrees trimmed, degree 0 always kept.
std::vector<int> betti_gf2(const SimplicialComplex& k);

struct CupOptions {
  std::size_t budget = 100000;  // cup-product evaluations
};

// Longest nonzero product of positive-degree GF(2) cohomology classes,
// searched over products of basis representatives (Alexander-Whitney front
// and back faces in the fixed vertex order). Zero when all positive Betti
// numbers vanish. Only ever used as a lower-bound witness, so searching basis
// products (rather than arbitrary sums) stays sound.
int cup_length(const SimplicialComplex& k, const CupOptions& opts = {});

// Per-degree rank of the map induced on GF(2) homology by the inclusion of
// the full subcomplex on A into the order complex of x.
std::vector<int> inclusion_induced_rank(const FiniteSpace& x, const Bitset& a,
                                        std::size_t max_simplices = 100000);

// Same computation with the ambient complex, boundary matrices and boundary
// bases built once and shared across many subset queries.
class InclusionRankCache {
 public:
  InclusionRankCache(const FiniteSpace& x, std::size_t max_simplices = 100000);
  std::vector<int> ranks(const Bitset& a) const;

 private:
  const FiniteSpace* x_;
  SimplicialComplex k_;
  std::vector<Gf2Matrix> boundary_;      // boundary_[d] = boundary(d)
  std::vector<Gf2Basis> boundary_span_;  // span of the degree-(d+1) boundaries in C_d
};

}  // namespace lscat
