#include "linalg.hpp"

#include <algorithm>

namespace modp {

Mat Mat::identity(unsigned n) {
  Mat m(n, n);
  for (unsigned i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Mat mat_mul(const GF& F, const Mat& x, const Mat& y) {
  if (x.cols != y.rows) throw InternalError("matrix shape mismatch");
  Mat r(x.rows, y.cols);
  for (unsigned i = 0; i < x.rows; ++i)
    for (unsigned k = 0; k < x.cols; ++k) {
      Fe c = x(i, k);
      if (!c) continue;
      for (unsigned j = 0; j < y.cols; ++j)
        if (Fe d = y(k, j)) r(i, j) = F.add(r(i, j), F.mul(c, d));
    }
  return r;
}

Mat mat_add(const GF& F, const Mat& x, const Mat& y) {
  Mat r = x;
  for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = F.add(x.a[i], y.a[i]);
  return r;
}

Mat mat_scale(const GF& F, Fe c, const Mat& x) {
  Mat r = x;
  for (auto& e : r.a) e = F.mul(c, e);
  return r;
}

Mat kron(const GF& F, const Mat& x, const Mat& y) {
  Mat r(x.rows * y.rows, x.cols * y.cols);
  for (unsigned i = 0; i < x.rows; ++i)
    for (unsigned j = 0; j < x.cols; ++j) {
      Fe c = x(i, j);
      if (!c) continue;
      for (unsigned k = 0; k < y.rows; ++k)
        for (unsigned l = 0; l < y.cols; ++l) r(i * y.rows + k, j * y.cols + l) = F.mul(c, y(k, l));
    }
  return r;
}

std::vector<Fe> mat_vec(const GF& F, const Mat& x, const std::vector<Fe>& v) {
  std::vector<Fe> r(x.rows, 0);
  for (unsigned i = 0; i < x.rows; ++i) {
    Fe acc = 0;
    for (unsigned j = 0; j < x.cols; ++j)
      if (v[j] && x(i, j)) acc = F.add(acc, F.mul(x(i, j), v[j]));
    r[i] = acc;
  }
  return r;
}

Rref rref(const GF& F, Mat x) {
  Rref out;
  unsigned row = 0;
  for (unsigned c = 0; c < x.cols && row < x.rows; ++c) {
    unsigned piv = row;
    while (piv < x.rows && x(piv, c) == 0) ++piv;
    if (piv == x.rows) continue;
    if (piv != row)
      for (unsigned j = 0; j < x.cols; ++j) std::swap(x(piv, j), x(row, j));
    Fe inv = F.inv(x(row, c));
    for (unsigned j = 0; j < x.cols; ++j) x(row, j) = F.mul(inv, x(row, j));
    for (unsigned i = 0; i < x.rows; ++i) {
      if (i == row || x(i, c) == 0) continue;
      Fe f = F.neg(x(i, c));
      for (unsigned j = 0; j < x.cols; ++j)
        if (x(row, j)) x(i, j) = F.add(x(i, j), F.mul(f, x(row, j)));
    }
    out.pivots.push_back(c);
    ++row;
  }
  out.m = std::move(x);
  return out;
}

unsigned rank(const GF& F, const Mat& x) { return static_cast<unsigned>(rref(F, x).pivots.size()); }

Mat nullspace(const GF& F, const Mat& x) {
  Rref r = rref(F, x);
  std::vector<char> is_piv(x.cols, 0);
  for (unsigned c : r.pivots) is_piv[c] = 1;
  unsigned nfree = x.cols - static_cast<unsigned>(r.pivots.size());
  Mat out(nfree, x.cols);
  unsigned k = 0;
  for (unsigned c = 0; c < x.cols; ++c) {
    if (is_piv[c]) continue;
    out(k, c) = 1;
    for (unsigned i = 0; i < r.pivots.size(); ++i) out(k, r.pivots[i]) = F.neg(r.m(i, c));
    ++k;
  }
  return out;
}

bool solve(const GF& F, const Mat& x, const std::vector<Fe>& b, std::vector<Fe>& v) {
  Mat aug(x.rows, x.cols + 1);
  for (unsigned i = 0; i < x.rows; ++i) {
    for (unsigned j = 0; j < x.cols; ++j) aug(i, j) = x(i, j);
    aug(i, x.cols) = b[i];
  }
  Rref r = rref(F, aug);
  v.assign(x.cols, 0);
  for (unsigned i = 0; i < r.pivots.size(); ++i) {
    if (r.pivots[i] == x.cols) return false;
    v[r.pivots[i]] = r.m(i, x.cols);
  }
  return true;
}

void sv_axpy(const GF& F, SVec& y, Fe a, const SVec& x) {
  if (a == 0 || x.empty()) return;
  SVec r;
  r.reserve(y.size() + x.size());
  size_t i = 0, j = 0;
  while (i < y.size() || j < x.size()) {
    if (j == x.size() || (i < y.size() && y[i].first < x[j].first)) {
      r.push_back(y[i++]);
    } else if (i == y.size() || x[j].first < y[i].first) {
      r.emplace_back(x[j].first, F.mul(a, x[j].second));
      ++j;
    } else {
      Fe v = F.add(y[i].second, F.mul(a, x[j].second));
      if (v) r.emplace_back(y[i].first, v);
      ++i;
      ++j;
    }
  }
  y.swap(r);
}

SVec sv_scale(const GF& F, Fe a, const SVec& x) {
  if (a == 0) return {};
  SVec r = x;
  for (auto& e : r) e.second = F.mul(a, e.second);
  return r;
}

SVec sv_sub(const GF& F, const SVec& x, const SVec& y) {
  SVec r = x;
  sv_axpy(F, r, F.neg(1), y);
  return r;
}

Fe sv_get(const SVec& x, uint64_t key) {
  auto it = std::lower_bound(x.begin(), x.end(), key,
                             [](const Entry& e, uint64_t k) { return e.first < k; });
  return (it != x.end() && it->first == key) ? it->second : 0;
}

SVec sv_collect(const GF& F, std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  SVec r;
  r.reserve(entries.size());
  for (size_t i = 0; i < entries.size();) {
    uint64_t k = entries[i].first;
    Fe acc = 0;
    for (; i < entries.size() && entries[i].first == k; ++i) acc = F.add(acc, entries[i].second);
    if (acc) r.emplace_back(k, acc);
  }
  return r;
}

void SparseEchelon::reduce(SVec& v) const {
  if (rows_.empty()) return;
  const GF& F = *F_;
  size_t idx = v.size();
  while (idx > 0) {
    uint64_t key = v[idx - 1].first;
    auto it = piv_.find(key);
    if (it == piv_.end()) {
      --idx;
      continue;
    }
    sv_axpy(F, v, F.neg(v[idx - 1].second), rows_[it->second]);
    idx = std::lower_bound(v.begin(), v.end(), key,
                           [](const Entry& e, uint64_t k) { return e.first < k; }) -
          v.begin();
  }
}

bool SparseEchelon::insert(SVec v) {
  reduce(v);
  if (v.empty()) return false;
  Fe inv = F_->inv(v.back().second);
  if (inv != 1)
    for (auto& e : v) e.second = F_->mul(inv, e.second);
  piv_.emplace(v.back().first, rows_.size());
  rows_.push_back(std::move(v));
  return true;
}

std::vector<uint64_t> SparseEchelon::pivots() const {
  std::vector<uint64_t> r;
  r.reserve(rows_.size());
  for (const auto& row : rows_) r.push_back(row.back().first);
  std::sort(r.begin(), r.end());
  return r;
}

std::vector<SVec> sparse_kernel(const GF& F, const std::vector<SVec>& images) {
  SparseEchelon E(F);
  std::vector<SVec> out;
  for (size_t i = 0; i < images.size(); ++i) {
    SVec aug;
    aug.reserve(images[i].size() + 1);
    aug.emplace_back(i, 1);
    for (const auto& e : images[i]) {
      if (e.first >= kKeyLimit) throw InternalError("sparse key out of range");
      aug.emplace_back(e.first + kKeyLimit, e.second);
    }
    E.reduce(aug);
    if (!aug.empty() && aug.back().first >= kKeyLimit) {
      E.insert(std::move(aug));
    } else {
      out.push_back(std::move(aug));
    }
  }
  return out;
}

}  // namespace modp
