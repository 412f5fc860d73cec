#pragma once

// The cube {0,1}^n: vertices, sign assignments (1-cochains s with delta s =
// 1_2), gauge transformations, and the associated free cochain complex.

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "khoflow/homology.hpp"

namespace khoflow {

using CubeVertex = std::uint32_t;  // bit i = coordinate i (0-based)

inline int weight(CubeVertex v) { return __builtin_popcount(v); }

// Edges are keyed by (lower vertex, flipped axis).
class SignAssignment {
public:
  SignAssignment() = default;
  SignAssignment(int n, std::vector<std::uint8_t> values) : n_(n), values_(std::move(values)) {}

  int n() const { return n_; }

  // value on the edge from v to v | (1 << axis); v must have that bit clear
  int edge(CubeVertex v, int axis) const { return values_[(std::size_t)v * n_ + axis]; }

  static SignAssignment standard(int n) {
    SignAssignment s;
    s.n_ = n;
    s.values_.assign((std::size_t(1) << n) * n, 0);
    for (CubeVertex v = 0; v < (CubeVertex(1) << n); ++v)
      for (int i = 0; i < n; ++i)
        s.values_[(std::size_t)v * n + i] = __builtin_popcount(v & ((CubeVertex(1) << i) - 1)) & 1;
    return s;
  }

  // s + delta t for a vertex 0-cochain t
  SignAssignment gauged(const std::vector<std::uint8_t>& t) const {
    if (t.size() != (std::size_t(1) << n_)) throw std::invalid_argument("gauge cochain size");
    SignAssignment s = *this;
    for (CubeVertex v = 0; v < (CubeVertex(1) << n_); ++v)
      for (int i = 0; i < n_; ++i)
        if (!(v >> i & 1)) s.values_[(std::size_t)v * n_ + i] ^= t[v] ^ t[v | (CubeVertex(1) << i)];
    return s;
  }

  SignAssignment gauged_random(std::uint64_t seed) const {
    std::mt19937_64 rng(seed);
    std::vector<std::uint8_t> t(std::size_t(1) << n_);
    for (auto& x : t) x = rng() & 1;
    return gauged(t);
  }

  void set_edge(CubeVertex v, int axis, int val) { values_[(std::size_t)v * n_ + axis] = val & 1; }

private:
  int n_ = 0;
  std::vector<std::uint8_t> values_;
};

inline SignAssignment standard_sign(int n) { return SignAssignment::standard(n); }

// delta s = 1_2: every 2-cell's four boundary edges sum to 1 mod 2.
inline bool verify_sign(const SignAssignment& s) {
  int n = s.n();
  for (CubeVertex v = 0; v < (CubeVertex(1) << n); ++v)
    for (int i = 0; i < n; ++i) {
      if (v >> i & 1) continue;
      for (int j = i + 1; j < n; ++j) {
        if (v >> j & 1) continue;
        CubeVertex vi = v | (CubeVertex(1) << i), vj = v | (CubeVertex(1) << j);
        int sum = s.edge(v, i) + s.edge(v, j) + s.edge(vi, j) + s.edge(vj, i);
        if (sum % 2 != 1) return false;
      }
    }
  return true;
}

// Free complex on the vertices, graded by weight; delta v = sum over up-edges
// of (-1)^s u.
inline IntChainComplex cube_complex(int n, const SignAssignment& s) {
  if (s.n() != n) throw std::invalid_argument("sign assignment dimension mismatch");
  IntChainComplex cx;
  std::vector<std::vector<CubeVertex>> by_weight(n + 1);
  std::vector<int> pos(std::size_t(1) << n);
  for (CubeVertex v = 0; v < (CubeVertex(1) << n); ++v) {
    pos[v] = (int)by_weight[weight(v)].size();
    by_weight[weight(v)].push_back(v);
  }
  for (int k = 0; k <= n; ++k) cx.dim[k] = (int)by_weight[k].size();
  for (int k = 0; k < n; ++k) {
    IntMat d((int)by_weight[k + 1].size(), (int)by_weight[k].size());
    for (CubeVertex v : by_weight[k])
      for (int i = 0; i < n; ++i) {
        if (v >> i & 1) continue;
        CubeVertex u = v | (CubeVertex(1) << i);
        d.set(pos[u], pos[v], s.edge(v, i) ? -1 : 1);
      }
    cx.d[k] = std::move(d);
  }
  return cx;
}

// Number of maximal chains from bottom to top (n!), by explicit count.
inline std::uint64_t maximal_chain_count(int n) {
  std::vector<std::uint64_t> cnt(std::size_t(1) << n, 0);
  cnt[0] = 1;
  for (CubeVertex v = 1; v < (CubeVertex(1) << n); ++v)
    for (int i = 0; i < n; ++i)
      if (v >> i & 1) cnt[v] += cnt[v & ~(CubeVertex(1) << i)];
  return cnt[(std::size_t(1) << n) - 1];
}

}  // namespace khoflow
