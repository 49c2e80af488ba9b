#include "lscat/cohomology.hpp"

#include <algorithm>
#include <unordered_set>

#include "lscat/errors.hpp"

namespace lscat {

int Gf2Matrix::rank() const {
  std::vector<Bitset> work = row;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int pivot = -1;
    for (int i = r; i < rows; ++i)
      if (work[static_cast<std::size_t>(i)].test(c)) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    std::swap(work[static_cast<std::size_t>(pivot)], work[static_cast<std::size_t>(r)]);
    for (int i = 0; i < rows; ++i)
      if (i != r && work[static_cast<std::size_t>(i)].test(c))
        work[static_cast<std::size_t>(i)] ^= work[static_cast<std::size_t>(r)];
    ++r;
  }
  return r;
}

Gf2Matrix Gf2Matrix::transposed() const {
  Gf2Matrix t(cols, rows);
  for (int i = 0; i < rows; ++i)
    row[static_cast<std::size_t>(i)].for_each([&](int j) { t.set(j, i); });
  return t;
}

std::vector<Bitset> Gf2Matrix::nullspace() const {
  std::vector<Bitset> work = row;
  std::vector<int> pivot_col;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int pivot = -1;
    for (int i = r; i < rows; ++i)
      if (work[static_cast<std::size_t>(i)].test(c)) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    std::swap(work[static_cast<std::size_t>(pivot)], work[static_cast<std::size_t>(r)]);
    for (int i = 0; i < rows; ++i)
      if (i != r && work[static_cast<std::size_t>(i)].test(c))
        work[static_cast<std::size_t>(i)] ^= work[static_cast<std::size_t>(r)];
    pivot_col.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (int c : pivot_col) is_pivot[static_cast<std::size_t>(c)] = true;

  std::vector<Bitset> basis;
  for (int f = 0; f < cols; ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    Bitset v(cols);
    v.set(f);
    for (int i = 0; i < r; ++i)
      if (work[static_cast<std::size_t>(i)].test(f)) v.set(pivot_col[static_cast<std::size_t>(i)]);
    basis.push_back(std::move(v));
  }
  return basis;
}

void SimplicialComplex::build_index() {
  index_.clear();
  index_.resize(cells.size());
  for (std::size_t d = 0; d < cells.size(); ++d)
    for (std::size_t i = 0; i < cells[d].size(); ++i)
      index_[d].emplace(cells[d][i], static_cast<int>(i));
}

int SimplicialComplex::index_of(int d, const std::vector<int>& verts) const {
  if (d < 0 || d >= static_cast<int>(index_.size())) return -1;
  auto it = index_[static_cast<std::size_t>(d)].find(verts);
  return it == index_[static_cast<std::size_t>(d)].end() ? -1 : it->second;
}

int SimplicialComplex::euler_characteristic() const {
  int chi = 0;
  for (int d = 0; d <= dim(); ++d) chi += (d % 2 == 0 ? 1 : -1) * count(d);
  return chi;
}

Gf2Matrix SimplicialComplex::boundary(int d) const {
  Gf2Matrix m(count(d - 1), count(d));
  if (d <= 0 || d > dim()) return m;
  std::vector<int> face;
  for (int j = 0; j < count(d); ++j) {
    const auto& verts = cells[static_cast<std::size_t>(d)][static_cast<std::size_t>(j)];
    for (std::size_t omit = 0; omit < verts.size(); ++omit) {
      face.clear();
      for (std::size_t t = 0; t < verts.size(); ++t)
        if (t != omit) face.push_back(verts[t]);
      int i = index_of(d - 1, face);
      if (i < 0) throw InternalError("complex not closed under faces");
      m.set(i, j);
    }
  }
  return m;
}

SimplicialComplex order_complex(const FiniteSpace& x, std::size_t max_simplices) {
  SimplicialComplex k;
  int n = x.size();
  k.labels.resize(static_cast<std::size_t>(n));
  const auto& topo = x.linear_extension();
  for (int p = 0; p < n; ++p) k.labels[static_cast<std::size_t>(p)] = x.id_of(topo[static_cast<std::size_t>(p)]);

  std::size_t emitted = 0;
  std::vector<int> chain;
  auto extend = [&](auto&& self, int last_pos) -> void {
    if (++emitted > max_simplices)
      throw BudgetExceeded("order complex exceeded " + std::to_string(max_simplices) + " simplices");
    int d = static_cast<int>(chain.size()) - 1;
    if (d >= static_cast<int>(k.cells.size())) k.cells.resize(static_cast<std::size_t>(d) + 1);
    k.cells[static_cast<std::size_t>(d)].push_back(chain);
    for (int q = last_pos + 1; q < n; ++q) {
      if (x.leq(topo[static_cast<std::size_t>(last_pos)], topo[static_cast<std::size_t>(q)])) {
        chain.push_back(q);
        self(self, q);
        chain.pop_back();
      }
    }
  };
  for (int p = 0; p < n; ++p) {
    chain.assign(1, p);
    extend(extend, p);
  }
  k.build_index();
  return k;
}

std::vector<int> betti_gf2(const SimplicialComplex& k) {
  int top = k.dim();
  if (top < 0) return {0};
  std::vector<int> rank_d(static_cast<std::size_t>(top) + 2, 0);
  for (int d = 1; d <= top; ++d) rank_d[static_cast<std::size_t>(d)] = k.boundary(d).rank();
  std::vector<int> betti(static_cast<std::size_t>(top) + 1, 0);
  for (int d = 0; d <= top; ++d)
    betti[static_cast<std::size_t>(d)] =
        k.count(d) - rank_d[static_cast<std::size_t>(d)] - rank_d[static_cast<std::size_t>(d) + 1];
  while (betti.size() > 1 && betti.back() == 0) betti.pop_back();
  return betti;
}

namespace {

// Cochain-level cup product of cocycles of degrees p and q.
Bitset cup(const SimplicialComplex& k, const Bitset& alpha, int p, const Bitset& beta, int q) {
  int d = p + q;
  Bitset out(k.count(d));
  std::vector<int> front, back;
  for (int j = 0; j < k.count(d); ++j) {
    const auto& verts = k.cells[static_cast<std::size_t>(d)][static_cast<std::size_t>(j)];
    front.assign(verts.begin(), verts.begin() + p + 1);
    back.assign(verts.begin() + p, verts.end());
    int fi = k.index_of(p, front);
    int bi = k.index_of(q, back);
    if (fi < 0 || bi < 0) throw InternalError("complex not closed under faces");
    if (alpha.test(fi) && beta.test(bi)) out.set(j);
  }
  return out;
}

}  // namespace

int cup_length(const SimplicialComplex& k, const CupOptions& opts) {
  int top = k.dim();
  if (top < 1) return 0;

  // Coboundary basis and cohomology representatives per degree. The degree-d
  // coboundaries are spanned by the rows of boundary(d); the cocycles are the
  // nullspace of boundary(d+1) transposed.
  std::vector<Gf2Basis> cobound;
  std::vector<std::vector<Bitset>> reps(static_cast<std::size_t>(top) + 1);
  cobound.reserve(static_cast<std::size_t>(top) + 1);
  for (int d = 0; d <= top; ++d) {
    Gf2Basis cb(k.count(d));
    if (d >= 1)
      for (const auto& r : k.boundary(d).row) cb.add(r);
    Gf2Basis span = cb;
    std::vector<Bitset> cocycles;
    if (d < top) {
      Gf2Matrix delta = k.boundary(d + 1).transposed();
      cocycles = delta.nullspace();
    } else {
      for (int i = 0; i < k.count(d); ++i) {
        Bitset e(k.count(d));
        e.set(i);
        cocycles.push_back(std::move(e));
      }
    }
    for (auto& z : cocycles)
      if (span.add(z)) reps[static_cast<std::size_t>(d)].push_back(z);
    cobound.push_back(std::move(cb));
  }

  bool any_positive = false;
  for (int d = 1; d <= top; ++d)
    if (!reps[static_cast<std::size_t>(d)].empty()) any_positive = true;
  if (!any_positive) return 0;

  std::size_t spent = 0;
  int best = 0;
  // Visited coset representatives per degree, to cut repeated branches.
  std::vector<std::unordered_set<Bitset, BitsetHash>> seen(static_cast<std::size_t>(top) + 1);

  auto dfs = [&](auto&& self, const Bitset& c, int deg, int len) -> void {
    best = std::max(best, len);
    for (int d2 = 1; deg + d2 <= top; ++d2) {
      for (const auto& r : reps[static_cast<std::size_t>(d2)]) {
        if (++spent > opts.budget)
          throw BudgetExceeded("cup product search exceeded " + std::to_string(opts.budget));
        Bitset prod = cup(k, c, deg, r, d2);
        int nd = deg + d2;
        Bitset canon = cobound[static_cast<std::size_t>(nd)].reduce(prod);
        if (canon.none()) continue;
        if (!seen[static_cast<std::size_t>(nd)].insert(canon).second) continue;
        self(self, canon, nd, len + 1);
      }
    }
  };
  for (int d = 1; d <= top; ++d)
    for (const auto& r : reps[static_cast<std::size_t>(d)]) {
      Bitset canon = cobound[static_cast<std::size_t>(d)].reduce(r);
      if (canon.none()) continue;
      if (!seen[static_cast<std::size_t>(d)].insert(canon).second) continue;
      dfs(dfs, canon, d, 1);
    }
  return best;
}

InclusionRankCache::InclusionRankCache(const FiniteSpace& x, std::size_t max_simplices)
    : x_(&x), k_(order_complex(x, max_simplices)) {
  int top = k_.dim();
  for (int d = 0; d <= top; ++d) boundary_.push_back(k_.boundary(d));
  boundary_.push_back(Gf2Matrix(top >= 0 ? k_.count(top) : 0, 0));
  for (int d = 0; d <= top; ++d) {
    Gf2Basis basis(k_.count(d));
    const Gf2Matrix& bd1 = boundary_[static_cast<std::size_t>(d) + 1];
    for (int j = 0; j < bd1.cols; ++j) {
      Bitset col(k_.count(d));
      for (int i = 0; i < bd1.rows; ++i)
        if (bd1.get(i, j)) col.set(i);
      basis.add(col);
    }
    boundary_span_.push_back(std::move(basis));
  }
}

std::vector<int> InclusionRankCache::ranks(const Bitset& a) const {
  int top = k_.dim();
  if (top < 0 || a.none()) return {0};

  // Vertices of the complex are linear-extension positions.
  Bitset averts(x_->size());
  const auto& topo = x_->linear_extension();
  for (int p = 0; p < x_->size(); ++p)
    if (a.test(topo[static_cast<std::size_t>(p)])) averts.set(p);

  std::vector<int> ranks;
  for (int d = 0; d <= top; ++d) {
    std::vector<int> cols;
    for (int j = 0; j < k_.count(d); ++j) {
      const auto& verts = k_.cells[static_cast<std::size_t>(d)][static_cast<std::size_t>(j)];
      bool inside = true;
      for (int v : verts)
        if (!averts.test(v)) {
          inside = false;
          break;
        }
      if (inside) cols.push_back(j);
    }
    if (cols.empty()) {
      ranks.push_back(0);
      continue;
    }
    // Cycle basis of the subcomplex, embedded in the ambient chain group.
    std::vector<Bitset> z_embedded;
    if (d == 0) {
      for (int j : cols) {
        Bitset v(k_.count(0));
        v.set(j);
        z_embedded.push_back(std::move(v));
      }
    } else {
      const Gf2Matrix& bd = boundary_[static_cast<std::size_t>(d)];
      int m = static_cast<int>(cols.size());
      Gf2Matrix sub(k_.count(d - 1), m);
      for (int jj = 0; jj < m; ++jj)
        for (int i = 0; i < k_.count(d - 1); ++i)
          if (bd.get(i, cols[static_cast<std::size_t>(jj)])) sub.set(i, jj);
      for (const auto& vec : sub.nullspace()) {
        Bitset v(k_.count(d));
        vec.for_each([&](int jj) { v.set(cols[static_cast<std::size_t>(jj)]); });
        z_embedded.push_back(std::move(v));
      }
    }
    // Rank of the induced map = extra rank of sub cycles over ambient
    // boundaries. Sub boundaries land in ambient boundaries, so this is
    // exactly dim of the image in homology.
    Gf2Basis basis = boundary_span_[static_cast<std::size_t>(d)];
    int r = 0;
    for (const auto& z : z_embedded)
      if (basis.add(z)) ++r;
    ranks.push_back(r);
  }
  while (ranks.size() > 1 && ranks.back() == 0) ranks.pop_back();
  return ranks;
}

std::vector<int> inclusion_induced_rank(const FiniteSpace& x, const Bitset& a,
                                        std::size_t max_simplices) {
  return InclusionRankCache(x, max_simplices).ranks(a);
}

}  // namespace lscat
