#pragma once

#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gf.hpp"

namespace modp {

struct Mat {
  unsigned rows = 0, cols = 0;
  std::vector<Fe> a;
  Mat() = default;
  Mat(unsigned r, unsigned c) : rows(r), cols(c), a(size_t(r) * c, 0) {}
  Fe& operator()(unsigned i, unsigned j) { return a[size_t(i) * cols + j]; }
  Fe operator()(unsigned i, unsigned j) const { return a[size_t(i) * cols + j]; }
  static Mat identity(unsigned n);
  bool operator==(const Mat& o) const = default;
};

Mat mat_mul(const GF& F, const Mat& x, const Mat& y);
Mat mat_add(const GF& F, const Mat& x, const Mat& y);
Mat mat_scale(const GF& F, Fe c, const Mat& x);
Mat kron(const GF& F, const Mat& x, const Mat& y);
std::vector<Fe> mat_vec(const GF& F, const Mat& x, const std::vector<Fe>& v);

struct Rref {
  Mat m;
  std::vector<unsigned> pivots;  // pivot column of each nonzero row
};
Rref rref(const GF& F, Mat x);
unsigned rank(const GF& F, const Mat& x);
// Rows form a basis of {v : x v = 0}.
Mat nullspace(const GF& F, const Mat& x);
// Some solution of x v = b, if one exists.
bool solve(const GF& F, const Mat& x, const std::vector<Fe>& b, std::vector<Fe>& v);

// Sparse vectors: entries sorted by key, no zero values.
using Entry = std::pair<uint64_t, Fe>;
using SVec = std::vector<Entry>;

// Keys of ambient coordinates must stay below this bound; the range above it
// is reserved for augmented elimination.
constexpr uint64_t kKeyLimit = uint64_t(1) << 62;

void sv_axpy(const GF& F, SVec& y, Fe a, const SVec& x);
SVec sv_scale(const GF& F, Fe a, const SVec& x);
SVec sv_sub(const GF& F, const SVec& x, const SVec& y);
Fe sv_get(const SVec& x, uint64_t key);
// Sort, merge equal keys, drop zeros.
SVec sv_collect(const GF& F, std::vector<Entry> entries);

class SparseEchelon {
 public:
  explicit SparseEchelon(const GF& F) : F_(&F) {}

  // Canonical representative of v modulo the span (pivots eliminated).
  void reduce(SVec& v) const;
  // Returns true if v enlarged the span.
  bool insert(SVec v);
  bool contains(SVec v) const {
    reduce(v);
    return v.empty();
  }
  size_t dim() const { return rows_.size(); }
  const std::vector<SVec>& basis() const { return rows_; }
  bool is_pivot(uint64_t key) const { return piv_.count(key) != 0; }
  std::vector<uint64_t> pivots() const;
  const GF& field() const { return *F_; }

 private:
  const GF* F_;
  std::vector<SVec> rows_;  // leading (largest) entry normalized to 1
  std::unordered_map<uint64_t, size_t> piv_;
};

// Kernel of e_i -> images[i]; each result is a coefficient vector keyed by i.
std::vector<SVec> sparse_kernel(const GF& F, const std::vector<SVec>& images);

// Dense relabelling of sparse keys so several maps can be stacked.
class KeyCompressor {
 public:
  uint64_t operator()(uint64_t key) {
    auto it = map_.find(key);
    if (it != map_.end()) return it->second;
    uint64_t id = map_.size();
    map_.emplace(key, id);
    return id;
  }
  size_t size() const { return map_.size(); }

 private:
  std::unordered_map<uint64_t, uint64_t> map_;
};

}  // namespace modp
