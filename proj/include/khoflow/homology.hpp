#pragma once

// Exact integer linear algebra: sparse matrices, Smith normal form, homology
// of graded free complexes over Z, Q and F_p.
//
// SNF runs on int64 with overflow checks and transparently restarts the whole
// computation over arbitrary-precision integers if any step overflows.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace khoflow {

using BigInt = boost::multiprecision::cpp_int;

struct OverflowSignal {};

// int64 with checked arithmetic; overflow raises OverflowSignal so callers can
// escalate to BigInt.
struct CheckedInt {
  std::int64_t v = 0;
  CheckedInt() = default;
  CheckedInt(std::int64_t x) : v(x) {}
  friend CheckedInt operator+(CheckedInt a, CheckedInt b) {
    CheckedInt r;
    if (__builtin_add_overflow(a.v, b.v, &r.v)) throw OverflowSignal{};
    return r;
  }
  friend CheckedInt operator-(CheckedInt a, CheckedInt b) {
    CheckedInt r;
    if (__builtin_sub_overflow(a.v, b.v, &r.v)) throw OverflowSignal{};
    return r;
  }
  friend CheckedInt operator*(CheckedInt a, CheckedInt b) {
    CheckedInt r;
    if (__builtin_mul_overflow(a.v, b.v, &r.v)) throw OverflowSignal{};
    return r;
  }
  friend CheckedInt operator/(CheckedInt a, CheckedInt b) { return CheckedInt(a.v / b.v); }
  friend CheckedInt operator%(CheckedInt a, CheckedInt b) { return CheckedInt(a.v % b.v); }
  friend CheckedInt operator-(CheckedInt a) {
    if (a.v == INT64_MIN) throw OverflowSignal{};
    return CheckedInt(-a.v);
  }
  friend bool operator==(CheckedInt a, CheckedInt b) { return a.v == b.v; }
  friend bool operator!=(CheckedInt a, CheckedInt b) { return a.v != b.v; }
  friend bool operator<(CheckedInt a, CheckedInt b) { return a.v < b.v; }
};

inline BigInt abs_of(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }
inline CheckedInt abs_of(CheckedInt x) { return x.v < 0 ? -x : x; }
inline bool is_zero(const BigInt& x) { return x == 0; }
inline bool is_zero(CheckedInt x) { return x.v == 0; }

// Sparse integer matrix, entries indexed (row, col). Zero entries are absent.
class IntMat {
public:
  IntMat() = default;
  IntMat(int rows, int cols) : rows_(rows), cols_(cols) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  void set(int r, int c, std::int64_t v) {
    if (v == 0)
      entries_.erase({r, c});
    else
      entries_[{r, c}] = v;
  }
  void add(int r, int c, std::int64_t v) {
    if (v == 0) return;
    auto it = entries_.emplace(std::make_pair(r, c), 0).first;
    it->second += v;
    if (it->second == 0) entries_.erase(it);
  }
  std::int64_t get(int r, int c) const {
    auto it = entries_.find({r, c});
    return it == entries_.end() ? 0 : it->second;
  }
  const std::map<std::pair<int, int>, std::int64_t>& entries() const { return entries_; }
  std::size_t nnz() const { return entries_.size(); }

  friend bool operator==(const IntMat& a, const IntMat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

  IntMat transpose() const {
    IntMat t(cols_, rows_);
    for (auto& [rc, v] : entries_) t.set(rc.second, rc.first, v);
    return t;
  }

  static IntMat identity(int n) {
    IntMat m(n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
  }

  friend IntMat operator*(const IntMat& a, const IntMat& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("IntMat: shape mismatch");
    // b indexed by row for the traversal
    std::vector<std::vector<std::pair<int, std::int64_t>>> brows(b.rows_);
    for (auto& [rc, v] : b.entries_) brows[rc.first].push_back({rc.second, v});
    IntMat r(a.rows_, b.cols_);
    for (auto& [rc, v] : a.entries_)
      for (auto& [c, w] : brows[rc.second]) r.add(rc.first, c, v * w);
    return r;
  }

  // Horizontal concatenation [a | b].
  static IntMat hconcat(const IntMat& a, const IntMat& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("IntMat: hconcat shape");
    IntMat r(a.rows(), a.cols() + b.cols());
    for (auto& [rc, v] : a.entries()) r.set(rc.first, rc.second, v);
    for (auto& [rc, v] : b.entries()) r.set(rc.first, rc.second + a.cols(), v);
    return r;
  }

private:
  int rows_ = 0, cols_ = 0;
  std::map<std::pair<int, int>, std::int64_t> entries_;
};

namespace detail {

// Working sparse form with row and column indices for pivot selection.
template <typename T>
struct SparseWork {
  int nrows, ncols;
  std::vector<std::map<int, T>> row;  // row -> (col -> value)
  std::vector<std::set<int>> colidx;  // col -> set of rows with nonzero

  SparseWork(int r, int c) : nrows(r), ncols(c), row(r), colidx(c) {}
  explicit SparseWork(const IntMat& m) : nrows(m.rows()), ncols(m.cols()), row(m.rows()), colidx(m.cols()) {
    for (auto& [rc, v] : m.entries()) {
      row[rc.first][rc.second] = T(v);
      colidx[rc.second].insert(rc.first);
    }
  }

  void set(int r, int c, const T& v) {
    if (is_zero(v)) {
      row[r].erase(c);
      colidx[c].erase(r);
    } else {
      row[r][c] = v;
      colidx[c].insert(r);
    }
  }
  T get(int r, int c) const {
    auto it = row[r].find(c);
    return it == row[r].end() ? T(0) : it->second;
  }

  // row[dst] += q * row[src]
  void row_axpy(int dst, int src, const T& q) {
    if (is_zero(q)) return;
    for (auto& [c, v] : row[src]) {
      T nv = get(dst, c) + q * v;
      set(dst, c, nv);
    }
  }
  // col[dst] += q * col[src]
  void col_axpy(int dst, int src, const T& q) {
    if (is_zero(q)) return;
    auto rows_of_src = colidx[src];  // copy; mutation below
    for (int r : rows_of_src) {
      T nv = get(r, dst) + q * get(r, src);
      set(r, dst, nv);
    }
  }
  void swap_rows(int a, int b) {
    if (a == b) return;
    for (auto& [c, v] : row[a]) colidx[c].erase(a);
    for (auto& [c, v] : row[b]) colidx[c].erase(b);
    std::swap(row[a], row[b]);
    for (auto& [c, v] : row[a]) colidx[c].insert(a);
    for (auto& [c, v] : row[b]) colidx[c].insert(b);
  }
  void swap_cols(int a, int b) {
    if (a == b) return;
    auto ra = colidx[a], rb = colidx[b];
    std::set<int> touched = ra;
    touched.insert(rb.begin(), rb.end());
    for (int r : touched) {
      T va = get(r, a), vb = get(r, b);
      set(r, a, vb);
      set(r, b, va);
    }
  }
  void negate_row(int r) {
    for (auto& [c, v] : row[r]) v = -v;
  }
};

// Dense unimodular transform accumulator (only materialized when requested).
template <typename T>
struct Transform {
  bool active = false;
  std::vector<std::vector<T>> m;
  void init(int n) {
    active = true;
    m.assign(n, std::vector<T>(n, T(0)));
    for (int i = 0; i < n; ++i) m[i][i] = T(1);
  }
  void row_axpy(int dst, int src, const T& q) {
    if (!active) return;
    for (std::size_t j = 0; j < m[dst].size(); ++j) m[dst][j] = m[dst][j] + q * m[src][j];
  }
  void col_axpy(int dst, int src, const T& q) {
    if (!active) return;
    for (std::size_t i = 0; i < m.size(); ++i) m[i][dst] = m[i][dst] + q * m[i][src];
  }
  void swap_rows(int a, int b) {
    if (active && a != b) std::swap(m[a], m[b]);
  }
  void swap_cols(int a, int b) {
    if (!active || a == b) return;
    for (auto& r : m) std::swap(r[a], r[b]);
  }
  void negate_row(int r) {
    if (!active) return;
    for (auto& v : m[r]) v = -v;
  }
};

template <typename T>
struct SnfCore {
  std::vector<T> divisors;
  Transform<T> U, V;  // U * M * V = diag(divisors)
};

// Smith normal form by pivoting elimination. Pivot choice: minimal absolute
// value, Markowitz fill-in tiebreak.
template <typename T>
SnfCore<T> snf_impl(SparseWork<T> w, bool with_transforms) {
  SnfCore<T> out;
  if (with_transforms) {
    out.U.init(w.nrows);
    out.V.init(w.ncols);
  }
  int t = 0;
  const int tmax = std::min(w.nrows, w.ncols);
  while (t < tmax) {
    // pivot search over the active submatrix
    int pr = -1, pc = -1;
    T pv(0);
    long best_fill = 0;
    for (int r = t; r < w.nrows; ++r) {
      for (auto& [c, v] : w.row[r]) {
        if (c < t) continue;
        long fill = (long)(w.row[r].size() - 1) * (long)(w.colidx[c].size() - 1);
        T a = abs_of(v);
        if (pr < 0 || a < pv || (a == pv && fill < best_fill)) {
          pr = r;
          pc = c;
          pv = a;
          best_fill = fill;
        }
      }
    }
    if (pr < 0) break;  // submatrix is zero
    w.swap_rows(t, pr);
    out.U.swap_rows(t, pr);
    w.swap_cols(t, pc);
    out.V.swap_cols(t, pc);

    for (;;) {
      // clear column t below/above pivot
      bool again = false;
      auto rows_in_col = w.colidx[t];
      for (int r : rows_in_col) {
        if (r == t) continue;
        T q = w.get(r, t) / w.get(t, t);
        w.row_axpy(r, t, -q);
        out.U.row_axpy(r, t, -q);
        if (!is_zero(w.get(r, t))) {
          // remainder smaller than pivot; promote it
          w.swap_rows(t, r);
          out.U.swap_rows(t, r);
          again = true;
          break;
        }
      }
      if (again) continue;
      // clear row t
      auto cols_in_row = w.row[t];
      for (auto& [c, v] : cols_in_row) {
        if (c == t) continue;
        T q = v / w.get(t, t);
        w.col_axpy(c, t, -q);
        out.V.col_axpy(c, t, -q);
        if (!is_zero(w.get(t, c))) {
          w.swap_cols(t, c);
          out.V.swap_cols(t, c);
          again = true;
          break;
        }
      }
      if (again) continue;
      // pivot must divide the remaining submatrix for the divisor chain
      bool fixed = true;
      for (int r = t + 1; r < w.nrows && fixed; ++r) {
        for (auto& [c, v] : w.row[r]) {
          if (c <= t) continue;
          if (!is_zero(v % w.get(t, t))) {
            w.row_axpy(t, r, T(1));
            out.U.row_axpy(t, r, T(1));
            fixed = false;
            break;
          }
        }
      }
      if (fixed) break;
    }
    if (w.get(t, t) < T(0)) {
      w.negate_row(t);
      out.U.negate_row(t);
    }
    ++t;
  }
  for (int i = 0; i < t; ++i) out.divisors.push_back(w.get(i, i));
  return out;
}

inline std::int64_t to_int64(const BigInt& x) {
  if (x > BigInt(INT64_MAX) || x < BigInt(INT64_MIN))
    throw std::overflow_error("SNF divisor exceeds int64");
  return static_cast<std::int64_t>(x);
}
inline std::int64_t to_int64(CheckedInt x) { return x.v; }

}  // namespace detail

struct SnfResult {
  std::vector<BigInt> divisors;  // d1 | d2 | ..., all > 0
  std::optional<IntMat> U, V;    // U * M * V = diag(divisors)
  int rank() const { return (int)divisors.size(); }
  std::vector<std::int64_t> divisors_i64() const {
    std::vector<std::int64_t> out;
    for (auto& d : divisors) out.push_back(detail::to_int64(d));
    return out;
  }
};

namespace detail {

// Fast elimination of +-1 pivots (always legal for the divisor chain: a unit
// divides everything). Pivots favor short rows and columns to limit fill-in.
// Returns the number of unit pivots and the compacted residual submatrix.
template <typename T>
std::pair<int, SparseWork<T>> eliminate_units(const IntMat& input) {
  SparseWork<T> w(input);
  std::vector<bool> row_done(w.nrows, false), col_done(w.ncols, false);
  std::vector<std::set<int>> by_size(1);  // rows bucketed by nnz
  auto row_size = [&](int r) { return w.row[r].size(); };
  auto place = [&](int r) {
    std::size_t s = row_size(r);
    if (s >= by_size.size()) by_size.resize(s + 1);
    if (s > 0 && !row_done[r]) by_size[s].insert(r);
  };
  auto displace = [&](int r, std::size_t s) {
    if (s < by_size.size()) by_size[s].erase(r);
  };
  for (int r = 0; r < w.nrows; ++r) place(r);

  int units = 0;
  for (;;) {
    int pr = -1, pc = -1;
    for (std::size_t s = 1; s < by_size.size() && pr < 0; ++s) {
      for (int r : by_size[s]) {
        std::size_t best_col = SIZE_MAX;
        for (auto& [c, v] : w.row[r]) {
          if (col_done[c]) continue;
          if (abs_of(v) == T(1) && w.colidx[c].size() < best_col) {
            best_col = w.colidx[c].size();
            pr = r;
            pc = c;
          }
        }
        if (pr >= 0) break;
      }
    }
    if (pr < 0) break;
    T piv = w.get(pr, pc);
    auto rows_in_col = w.colidx[pc];
    for (int r : rows_in_col) {
      if (r == pr) continue;
      T q = w.get(r, pc) / piv;
      displace(r, row_size(r));
      w.row_axpy(r, pr, -q);
      place(r);
    }
    // retire the pivot row and column; the column is already clear, so
    // clearing the row costs nothing further
    displace(pr, row_size(pr));
    for (auto& [c, v] : w.row[pr]) w.colidx[c].erase(pr);
    w.row[pr].clear();
    row_done[pr] = true;
    col_done[pc] = true;
    ++units;
  }
  // compact the residual
  std::vector<int> rmap(w.nrows, -1), cmap(w.ncols, -1);
  int rr = 0, cc = 0;
  for (int r = 0; r < w.nrows; ++r)
    if (!row_done[r]) rmap[r] = rr++;
  for (int c = 0; c < w.ncols; ++c)
    if (!col_done[c]) cmap[c] = cc++;
  SparseWork<T> rest(rr, cc);
  for (int r = 0; r < w.nrows; ++r) {
    if (row_done[r]) continue;
    for (auto& [c, v] : w.row[r]) rest.set(rmap[r], cmap[c], v);
  }
  return {units, std::move(rest)};
}

}  // namespace detail

inline SnfResult smith_normal_form(const IntMat& m, bool with_transforms = false) {
  auto pack = [&](auto&& core, int units) {
    SnfResult r;
    for (int i = 0; i < units; ++i) r.divisors.push_back(1);
    for (auto& d : core.divisors) {
      BigInt v(0);
      if constexpr (std::is_same_v<std::decay_t<decltype(d)>, CheckedInt>)
        v = d.v;
      else
        v = d;
      if (v != 0) r.divisors.push_back(v);
    }
    if (with_transforms) {
      IntMat U(m.rows(), m.rows()), V(m.cols(), m.cols());
      for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.rows(); ++j) U.set(i, j, detail::to_int64(core.U.m[i][j]));
      for (int i = 0; i < m.cols(); ++i)
        for (int j = 0; j < m.cols(); ++j) V.set(i, j, detail::to_int64(core.V.m[i][j]));
      r.U = std::move(U);
      r.V = std::move(V);
    }
    return r;
  };
  if (with_transforms) {
    // transform tracking stays on the single-phase path
    try {
      return pack(detail::snf_impl<CheckedInt>(detail::SparseWork<CheckedInt>(m), true), 0);
    } catch (const OverflowSignal&) {
      return pack(detail::snf_impl<BigInt>(detail::SparseWork<BigInt>(m), true), 0);
    }
  }
  try {
    auto [units, rest] = detail::eliminate_units<CheckedInt>(m);
    return pack(detail::snf_impl<CheckedInt>(std::move(rest), false), units);
  } catch (const OverflowSignal&) {
    auto [units, rest] = detail::eliminate_units<BigInt>(m);
    return pack(detail::snf_impl<BigInt>(std::move(rest), false), units);
  }
}

inline int rank_z(const IntMat& m) { return smith_normal_form(m).rank(); }

// Rank over the prime field F_p (Gaussian elimination).
inline int rank_mod_p(const IntMat& m, std::int64_t p) {
  std::vector<std::map<int, std::int64_t>> rows(m.rows());
  for (auto& [rc, v] : m.entries()) {
    std::int64_t x = v % p;
    if (x < 0) x += p;
    if (x) rows[rc.first][rc.second] = x;
  }
  auto inv_mod = [&](std::int64_t a) {
    std::int64_t r = 1, b = a % p, e = p - 2;  // p prime
    while (e) {
      if (e & 1) r = (__int128)r * b % p;
      b = (__int128)b * b % p;
      e >>= 1;
    }
    return r;
  };
  int rank = 0;
  std::vector<bool> used(m.rows(), false);
  for (int c = 0; c < m.cols(); ++c) {
    int pr = -1;
    for (int r = 0; r < m.rows(); ++r)
      if (!used[r] && rows[r].count(c)) {
        pr = r;
        break;
      }
    if (pr < 0) continue;
    used[pr] = true;
    ++rank;
    std::int64_t inv = inv_mod(rows[pr][c]);
    for (int r = 0; r < m.rows(); ++r) {
      if (r == pr || !rows[r].count(c)) continue;
      std::int64_t f = (__int128)rows[r][c] * inv % p;
      for (auto& [cc, vv] : rows[pr]) {
        std::int64_t nv = (rows[r].count(cc) ? rows[r][cc] : 0) - (__int128)f * vv % p;
        nv %= p;
        if (nv < 0) nv += p;
        if (nv)
          rows[r][cc] = nv;
        else
          rows[r].erase(cc);
      }
    }
  }
  return rank;
}

// Columns spanning ker(M) over Q, as integer vectors (from the SNF transform).
inline IntMat kernel_basis(const IntMat& m) {
  auto snf = smith_normal_form(m, true);
  int r = snf.rank();
  IntMat k(m.cols(), m.cols() - r);
  const IntMat& V = *snf.V;
  for (int j = r; j < m.cols(); ++j)
    for (int i = 0; i < m.cols(); ++i) k.set(i, j - r, V.get(i, j));
  return k;
}

struct HomologyGroup {
  std::int64_t free_rank = 0;
  std::vector<std::int64_t> torsion;  // invariant factors >= 2, each dividing the next

  bool trivial() const { return free_rank == 0 && torsion.empty(); }
  friend bool operator==(const HomologyGroup& a, const HomologyGroup& b) {
    return a.free_rank == b.free_rank && a.torsion == b.torsion;
  }
  std::string str() const {
    if (trivial()) return "0";
    std::string s;
    for (std::int64_t i = 0; i < free_rank; ++i) s += (s.empty() ? "Z" : " + Z");
    for (auto t : torsion) s += (s.empty() ? "" : " + ") + std::string("Z/") + std::to_string(t);
    return s;
  }
};

// Free graded cochain complex over Z: d[k] maps degree k to k+1,
// d[k] has dim(k+1) rows and dim(k) cols.
struct IntChainComplex {
  std::map<int, int> dim;
  std::map<int, IntMat> d;

  int dim_at(int k) const {
    auto it = dim.find(k);
    return it == dim.end() ? 0 : it->second;
  }
  const IntMat* d_at(int k) const {
    auto it = d.find(k);
    return it == d.end() ? nullptr : &it->second;
  }
  bool differentials_square_to_zero() const {
    for (auto& [k, dk] : d) {
      auto it = d.find(k + 1);
      if (it == d.end()) continue;
      if ((it->second * dk).nnz() != 0) return false;
    }
    return true;
  }
};

enum class Ring { Z, Q, Fp };

struct RingSpec {
  Ring ring = Ring::Z;
  std::int64_t p = 0;  // prime, for Fp
  static RingSpec integers() { return {Ring::Z, 0}; }
  static RingSpec rationals() { return {Ring::Q, 0}; }
  static RingSpec field(std::int64_t p) { return {Ring::Fp, p}; }
};

// All homology groups of a graded complex, decomposing each differential
// only once.
inline std::map<int, HomologyGroup> graded_homology(const IntChainComplex& cx,
                                                    RingSpec ring = RingSpec::integers()) {
  std::map<int, int> rank;
  std::map<int, std::vector<std::int64_t>> tors;
  for (auto& [k, dk] : cx.d) {
    if (dk.nnz() == 0) {
      rank[k] = 0;
      continue;
    }
    if (ring.ring == Ring::Fp) {
      rank[k] = rank_mod_p(dk, ring.p);
    } else {
      auto snf = smith_normal_form(dk);
      rank[k] = snf.rank();
      if (ring.ring == Ring::Z)
        for (auto& d : snf.divisors)
          if (d >= 2) tors[k + 1].push_back(detail::to_int64(d));
    }
  }
  std::map<int, HomologyGroup> out;
  auto rank_at = [&](int k) {
    auto it = rank.find(k);
    return it == rank.end() ? 0 : it->second;
  };
  for (auto& [k, n] : cx.dim) {
    if (n == 0) continue;
    HomologyGroup g;
    g.free_rank = n - rank_at(k) - rank_at(k - 1);
    if (tors.count(k)) g.torsion = tors[k];
    if (!g.trivial()) out[k] = g;
  }
  return out;
}

// Homology of the complex in degree k. Over Q / F_p the result is reported as
// a free rank (dimension) with no torsion.
inline HomologyGroup homology_at(const IntChainComplex& cx, int k, RingSpec ring = RingSpec::integers()) {
  int n = cx.dim_at(k);
  HomologyGroup h;
  if (n == 0) return h;
  const IntMat* dout = cx.d_at(k);
  const IntMat* din = cx.d_at(k - 1);
  auto rank_of = [&](const IntMat& m) {
    switch (ring.ring) {
      case Ring::Fp: return rank_mod_p(m, ring.p);
      default: return rank_z(m);
    }
  };
  int rout = dout ? rank_of(*dout) : 0;
  int rin = din ? rank_of(*din) : 0;
  h.free_rank = n - rout - rin;
  if (ring.ring == Ring::Z && din) {
    auto snf = smith_normal_form(*din);
    for (auto& dval : snf.divisors)
      if (dval >= 2) h.torsion.push_back(detail::to_int64(dval));
  }
  return h;
}

// ---------------------------------------------------------------------------
// Bigraded tables and the Moore-space decomposition for thin homology.

using Bigrading = std::pair<int, int>;  // (homological, quantum)
using BigradedTable = std::map<Bigrading, HomologyGroup>;

struct NotThin : std::runtime_error {
  explicit NotThin(const std::string& what) : std::runtime_error(what) {}
};

// Formal wedge summand: a (de)suspended sphere or mod-m Moore space. The Moore
// space M(Z/m) carries its torsion in cohomological degree 2, so a torsion
// group Z/m at (i, j) contributes sigma^(i-2) M(Z/m)_j.
struct WedgeSummand {
  int suspension;        // formal suspension exponent
  int quantum;           // quantum subscript
  std::int64_t torsion;  // 0 for a sphere, m for M(Z/m)
  std::string str() const {
    std::string s;
    if (torsion == 0) {
      if (suspension >= 0)
        s = "S^" + std::to_string(suspension) + "_" + std::to_string(quantum);
      else
        s = "Sigma^" + std::to_string(suspension) + " S^0_" + std::to_string(quantum);
    } else {
      s = "Sigma^" + std::to_string(suspension) + " M(Z/" + std::to_string(torsion) + ")_" +
          std::to_string(quantum);
    }
    return s;
  }
};

struct WedgeDecomposition {
  int sigma = 0;
  std::vector<WedgeSummand> summands;
  std::string str() const {
    if (summands.empty()) return "pt";
    std::string s;
    for (auto& w : summands) {
      if (!s.empty()) s += " v ";
      s += w.str();
    }
    return s;
  }
};

// Decompose a thin table (supported on 2i - j = sigma +/- 1, torsion only on
// sigma + 1) into a wedge of spheres and Moore spaces. Refuses non-thin input.
inline WedgeDecomposition moore_decomposition(const BigradedTable& table,
                                              std::optional<int> sigma_arg = std::nullopt) {
  std::set<int> diagonals, torsion_diagonals;
  for (auto& [ij, g] : table) {
    if (g.trivial()) continue;
    int diag = 2 * ij.first - ij.second;
    diagonals.insert(diag);
    if (!g.torsion.empty()) torsion_diagonals.insert(diag);
  }
  WedgeDecomposition out;
  if (diagonals.empty()) return out;

  int sigma;
  if (sigma_arg) {
    sigma = *sigma_arg;
  } else if (!torsion_diagonals.empty()) {
    sigma = *torsion_diagonals.begin() - 1;
  } else if (diagonals.size() == 2) {
    int lo = *diagonals.begin(), hi = *diagonals.rbegin();
    if (hi - lo != 2) throw NotThin("support diagonals are not sigma +/- 1");
    sigma = lo + 1;
  } else if (diagonals.size() == 1) {
    sigma = *diagonals.begin() + 1;  // all free on one diagonal: call it sigma - 1
  } else {
    throw NotThin("support spans more than two diagonals");
  }
  out.sigma = sigma;

  for (int diag : diagonals)
    if (diag != sigma - 1 && diag != sigma + 1)
      throw NotThin("group off the sigma +/- 1 diagonals at 2i-j=" + std::to_string(diag));
  for (int diag : torsion_diagonals)
    if (diag != sigma + 1) throw NotThin("torsion off the sigma + 1 diagonal");

  for (auto& [ij, g] : table) {
    if (g.trivial()) continue;
    for (std::int64_t r = 0; r < g.free_rank; ++r)
      out.summands.push_back({ij.first, ij.second, 0});
    for (auto t : g.torsion) out.summands.push_back({ij.first - 2, ij.second, t});
  }
  return out;
}

}  // namespace khoflow
