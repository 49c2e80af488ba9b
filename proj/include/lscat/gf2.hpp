#pragma once

#include <vector>

#include "lscat/bitset.hpp"

namespace lscat {

// Dense GF(2) matrix, one bit-packed row per Bitset.
struct Gf2Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<Bitset> row;

  Gf2Matrix() = default;
  Gf2Matrix(int r, int c) : rows(r), cols(c), row(static_cast<std::size_t>(r), Bitset(c)) {}

  void set(int i, int j) { row[static_cast<std::size_t>(i)].set(j); }
  bool get(int i, int j) const { return row[static_cast<std::size_t>(i)].test(j); }

  int rank() const;
  Gf2Matrix transposed() const;
  // Basis of {v : Mv = 0}, vectors over the column index space.
  std::vector<Bitset> nullspace() const;
};

// Incrementally built row-echelon basis over a fixed width. add() reduces the
// vector against the basis and inserts the remainder when nonzero.
class Gf2Basis {
 public:
  explicit Gf2Basis(int width) : width_(width) {}

  int width() const { return width_; }
  int rank() const { return static_cast<int>(vecs_.size()); }

  Bitset reduce(Bitset v) const {
    for (std::size_t i = 0; i < vecs_.size(); ++i)
      if (v.test(pivots_[i])) v ^= vecs_[i];
    return v;
  }

  bool contains(const Bitset& v) const { return reduce(v).none(); }

  bool add(const Bitset& v) {
    Bitset r = reduce(v);
    int p = r.first();
    if (p < 0) return false;
    vecs_.push_back(std::move(r));
    pivots_.push_back(p);
    return true;
  }

 private:
  int width_;
  std::vector<Bitset> vecs_;
  std::vector<int> pivots_;
};

}  // namespace lscat
