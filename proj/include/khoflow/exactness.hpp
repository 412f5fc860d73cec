#pragma once

// Rank-level exactness of the long exact sequence induced by a short exact
// sequence of complexes 0 -> S -> T -> Q -> 0, checked over Q. The inclusion
// and projection are generator-level (S and Q partition T's generators), so
// the chain maps are coordinate inclusions/projections.

#include <sstream>
#include <string>

#include "khoflow/khcomplex.hpp"

namespace khoflow {

namespace les_detail {

// matrix of the map sending each generator of `from` to the same generator of
// `to` (zero if absent)
inline IntMat coincidence_map(const KhBlock& from, const KhBlock& to, int h) {
  auto fit = from.gens.find(h);
  auto tit = to.gens.find(h);
  int fc = fit == from.gens.end() ? 0 : (int)fit->second.size();
  int tc = tit == to.gens.end() ? 0 : (int)tit->second.size();
  IntMat m(tc, fc);
  if (fc == 0 || tc == 0) return m;
  std::map<std::pair<CubeVertex, std::uint32_t>, int> pos;
  for (int i = 0; i < tc; ++i) pos[{tit->second[i].vertex, tit->second[i].plus_mask}] = i;
  for (int j = 0; j < fc; ++j) {
    auto it = pos.find({fit->second[j].vertex, fit->second[j].plus_mask});
    if (it != pos.end()) m.set(it->second, j, 1);
  }
  return m;
}

inline int dim_hq(const KhBlock& b, int h) {
  int n = b.cx.dim_at(h);
  if (n == 0) return 0;
  const IntMat* dout = b.cx.d_at(h);
  const IntMat* din = b.cx.d_at(h - 1);
  return n - (dout ? rank_z(*dout) : 0) - (din ? rank_z(*din) : 0);
}

// rank of the induced map on rational homology at level h
inline int induced_rank(const KhBlock& from, const KhBlock& to, int h) {
  int nfrom = from.cx.dim_at(h);
  if (nfrom == 0 || to.cx.dim_at(h) == 0) return 0;
  const IntMat* dfrom = from.cx.d_at(h);
  IntMat kernels = dfrom ? kernel_basis(*dfrom) : IntMat::identity(nfrom);
  IntMat f = coincidence_map(from, to, h);
  IntMat mapped = f * kernels;
  const IntMat* din = to.cx.d_at(h - 1);
  if (!din || din->nnz() == 0) return rank_z(mapped);
  return rank_z(IntMat::hconcat(mapped, *din)) - rank_z(*din);
}

}  // namespace les_detail

struct LesReport {
  bool exact = true;
  std::string detail;
};

// S -> T -> Q -> S[1] -> ...: verify rank exactness at every node.
inline LesReport les_rank_exact(const KhBlock& sub, const KhBlock& total, const KhBlock& quot) {
  using namespace les_detail;
  int lo = INT32_MAX, hi = INT32_MIN;
  for (auto* b : {&sub, &total, &quot})
    for (auto& [h, dim] : b->cx.dim)
      if (dim) {
        lo = std::min(lo, h);
        hi = std::max(hi, h);
      }
  LesReport rep;
  if (lo > hi) return rep;
  std::ostringstream bad;
  for (int h = lo - 1; h <= hi + 1; ++h) {
    // chain level: generators partition and the maps are chain maps
    if (sub.cx.dim_at(h) + quot.cx.dim_at(h) != total.cx.dim_at(h)) {
      rep.exact = false;
      bad << " h=" << h << "(chain groups do not partition)";
      continue;
    }
    if (total.cx.d_at(h)) {
      IntMat fh = coincidence_map(sub, total, h);
      IntMat fh1 = coincidence_map(sub, total, h + 1);
      const IntMat* dS_h = sub.cx.d_at(h);
      IntMat lhs = *total.cx.d_at(h) * fh;
      IntMat rhs = dS_h ? fh1 * *dS_h : IntMat(lhs.rows(), lhs.cols());
      if (!(lhs == rhs)) {
        rep.exact = false;
        bad << " h=" << h << "(inclusion is not a chain map)";
        continue;
      }
    }
    int dS = dim_hq(sub, h), dT = dim_hq(total, h), dQ = dim_hq(quot, h);
    int rf = induced_rank(sub, total, h);
    int rg = induced_rank(total, quot, h);
    int rf1 = induced_rank(sub, total, h + 1);
    int dS1 = dim_hq(sub, h + 1);
    int rdel = dS1 - rf1;  // rank of the connecting map out of H^h(Q)
    if (rdel < 0 || rf + rg != dT || rg + rdel != dQ) {
      rep.exact = false;
      bad << " h=" << h << "(dims " << dS << "," << dT << "," << dQ << "; ranks f=" << rf
          << " g=" << rg << " del=" << rdel << ")";
    }
  }
  rep.detail = rep.exact ? "exact" : ("rank exactness fails at" + bad.str());
  return rep;
}

}  // namespace khoflow
