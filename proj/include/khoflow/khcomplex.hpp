#pragma once

// The Khovanov chain complex of an oriented link diagram: generators are
// labeled Kauffman-state circles over the cube of resolutions, the
// differential applies the merge/split label rules edge by edge with signs
// from a sign assignment.
//
// Generators are enumerated lazily per quantum grading: the differential
// preserves gr_q, so each quantum grading is an independent block. Building a
// block is a pure function of the (immutable) complex context; callers may
// build blocks from several threads.

#include <array>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <thread>
#include <vector>

#include "khoflow/cube.hpp"
#include "khoflow/homology.hpp"
#include "khoflow/laurent.hpp"
#include "khoflow/pd.hpp"
#include "khoflow/resolution.hpp"

namespace khoflow {

struct KhGenerator {
  CubeVertex vertex = 0;
  std::uint32_t plus_mask = 0;  // bit c set = circle c of this resolution labeled x_plus
};

// One quantum grading worth of chain complex, plus its generator lists.
struct KhBlock {
  int quantum = 0;
  std::map<int, std::vector<KhGenerator>> gens;  // homological grading -> generators
  IntChainComplex cx;                            // graded by gr_h
};

class KhComplex {
public:
  KhComplex(LinkDiagram diagram, SignAssignment sign)
      : dia_(std::move(diagram)), sign_(std::move(sign)) {
    if (sign_.n() != dia_.num_crossings()) throw LengthMismatch("sign assignment size");
    if (!verify_sign_or_trivial()) throw KhError("invalid sign assignment");
    int n = dia_.num_crossings();
    vertex_.resize(std::size_t(1) << n);
    for (CubeVertex v = 0; v < (CubeVertex(1) << n); ++v) {
      std::vector<int> bits(n);
      for (int i = 0; i < n; ++i) bits[i] = v >> i & 1;
      auto res = resolve_with_edges(dia_, bits);
      vertex_[v].circle_of_edge = std::move(res.circle_of_edge);
      vertex_[v].circles = (int)res.circle_edges.size();
    }
    // correspondence along every cube edge
    edge_corr_.resize(std::size_t(1) << n);
    for (CubeVertex v = 0; v < (CubeVertex(1) << n); ++v) {
      for (int i = 0; i < n; ++i) {
        if (v >> i & 1) continue;
        edge_corr_[v].push_back(make_corr(v, v | (CubeVertex(1) << i)));
      }
    }
  }

  const LinkDiagram& diagram() const { return dia_; }
  const SignAssignment& sign() const { return sign_; }
  int crossings() const { return dia_.num_crossings(); }
  int circles_at(CubeVertex v) const { return vertex_[v].circles; }
  int circle_of_edge(CubeVertex v, int edge) const { return vertex_[v].circle_of_edge[edge]; }

  int gr_h(CubeVertex v) const { return -dia_.n_minus + weight(v); }
  int gr_q(const KhGenerator& g) const {
    int c = vertex_[g.vertex].circles;
    int plus = __builtin_popcount(g.plus_mask);
    return dia_.n_plus - 2 * dia_.n_minus + weight(g.vertex) + plus - (c - plus);
  }

  std::pair<int, int> quantum_range() const {
    int n = dia_.num_crossings();
    int base = dia_.n_plus - 2 * dia_.n_minus;
    int lo = INT32_MAX, hi = INT32_MIN;
    for (CubeVertex v = 0; v < (CubeVertex(1) << n); ++v) {
      int c = vertex_[v].circles;
      lo = std::min(lo, base + weight(v) - c);
      hi = std::max(hi, base + weight(v) + c);
    }
    return {lo, hi};
  }
  std::pair<int, int> homological_range() const { return {-dia_.n_minus, dia_.n_plus}; }

  // Generator filters carve out subquotient blocks (reduced and skein
  // splits): `keep` restricts the generators, and differential targets
  // falling outside are dropped. Subcomplexes are genuinely closed, so for
  // them nothing is ever dropped; quotients get the projected differential.
  using Filter = std::function<bool(CubeVertex, std::uint32_t)>;

  KhBlock block(int quantum, const Filter& keep = {}) const {
    KhBlock b;
    b.quantum = quantum;
    int n = dia_.num_crossings();
    // enumerate generators
    std::map<int, std::map<std::pair<CubeVertex, std::uint32_t>, int>> index;
    for (CubeVertex v = 0; v < (CubeVertex(1) << n); ++v) {
      int c = vertex_[v].circles;
      int t = quantum - (dia_.n_plus - 2 * dia_.n_minus + weight(v));  // #plus - #minus
      if ((c + t) % 2 != 0) continue;
      int k = (c + t) / 2;
      if (k < 0 || k > c) continue;
      int h = gr_h(v);
      for (std::uint32_t mask = 0; mask < (1u << c); ++mask) {
        if (__builtin_popcount(mask) != k) continue;
        if (keep && !keep(v, mask)) continue;
        auto& level = index[h];
        int id = (int)level.size();
        level[{v, mask}] = id;
        b.gens[h].push_back({v, mask});
      }
    }
    for (auto& [h, gens] : b.gens) b.cx.dim[h] = (int)gens.size();
    // differential
    for (auto& [h, gens] : b.gens) {
      auto up = index.find(h + 1);
      if (up == index.end()) continue;
      IntMat d((int)up->second.size(), (int)gens.size());
      for (int col = 0; col < (int)gens.size(); ++col) {
        auto& g = gens[col];
        int axis_rank = 0;
        for (int i = 0; i < n; ++i) {
          if (g.vertex >> i & 1) continue;
          auto& corr = edge_corr_[g.vertex][axis_rank++];
          int sgn = sign_.edge(g.vertex, i) ? -1 : 1;
          for (auto target : targets(g, corr)) {
            if (keep && !keep(corr.to, target)) continue;  // quotient projection
            auto it = up->second.find({corr.to, target});
            if (it == up->second.end()) {
              // every same-quantum generator is enumerated, so a miss can
              // only mean the label rules broke the quantum grading
              if (!keep) throw KhError("differential left its quantum block");
              continue;
            }
            d.add(it->second, col, sgn);
          }
        }
      }
      b.cx.d[h] = std::move(d);
    }
    return b;
  }

  // Bigraded homology table over the requested ring. Quantum blocks run
  // concurrently, capped by `threads` (0 = hardware concurrency).
  BigradedTable homology_table(RingSpec ring = RingSpec::integers(), unsigned threads = 0,
                               const Filter& keep = {}, int quantum_shift = 0) const {
    auto [qlo, qhi] = quantum_range();
    std::vector<int> qs;
    for (int q = qlo; q <= qhi; ++q)
      if (((q - qlo) % 2) == 0) qs.push_back(q);  // gr_q parity is constant
    std::vector<BigradedTable> partial(qs.size());
    run_parallel(qs.size(), threads, [&](std::size_t qi) {
      auto b = block(qs[qi], keep);
      for (auto& [h, dim] : b.cx.dim) {
        if (dim == 0) continue;
        auto g = homology_at(b.cx, h, ring);
        if (!g.trivial()) partial[qi][{h, qs[qi] + quantum_shift}] = g;
      }
    });
    BigradedTable out;
    for (auto& p : partial) out.insert(p.begin(), p.end());
    return out;
  }

  // Graded Euler characteristic of the chain groups (equals that of
  // homology): sum (-1)^i q^j rank KC^{i,j}.
  Laurent graded_euler() const {
    Laurent chi;
    int n = dia_.num_crossings();
    for (CubeVertex v = 0; v < (CubeVertex(1) << n); ++v) {
      int c = vertex_[v].circles;
      int h = gr_h(v);
      int base = dia_.n_plus - 2 * dia_.n_minus + weight(v);
      std::int64_t sgn = (h % 2 == 0) ? 1 : -1;
      // binomial expansion over labelings: sum over k of C(c,k) q^(2k-c)
      std::int64_t binom = 1;
      for (int k = 0; k <= c; ++k) {
        chi.add_term(base + 2 * k - c, sgn * binom);
        binom = binom * (c - k) / (k + 1);
      }
    }
    return chi;
  }

  Laurent jones_polynomial() const {
    Laurent qq;
    qq.add_term(1, 1);
    qq.add_term(-1, 1);
    return graded_euler().divide_exact(qq);
  }

  static void run_parallel(std::size_t jobs, unsigned threads, const std::function<void(std::size_t)>& fn) {
    unsigned hw = threads ? threads : default_threads();
    if (hw <= 1 || jobs <= 1) {
      for (std::size_t i = 0; i < jobs; ++i) fn(i);
      return;
    }
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    for (unsigned t = 0; t < std::min<std::size_t>(hw, jobs); ++t)
      pool.emplace_back([&] {
        for (;;) {
          std::size_t i = next.fetch_add(1);
          if (i >= jobs) return;
          fn(i);
        }
      });
    for (auto& th : pool) th.join();
  }

  static unsigned default_threads() {
    if (const char* env = std::getenv("KHOFLOW_THREADS")) {
      int v = std::atoi(env);
      if (v > 0) return (unsigned)v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
  }

private:
  struct VertexInfo {
    int circles = 0;
    std::vector<int> circle_of_edge;
  };
  // circle correspondence along a cube edge v -> u
  struct EdgeCorr {
    CubeVertex to = 0;
    bool is_merge = false;
    std::array<int, 2> from_circles{};  // merge: the two merging; split: {splitting, -1}
    std::array<int, 2> to_circles{};    // merge: {merged, -1}; split: the two results
    std::vector<int> remap;             // untouched circle index mapping (from -> to), -1 on from_circles
  };

  bool verify_sign_or_trivial() const { return dia_.num_crossings() == 0 || verify_sign(sign_); }

  EdgeCorr make_corr(CubeVertex v, CubeVertex u) const {
    EdgeCorr c;
    c.to = u;
    auto& cv = vertex_[v];
    auto& cu = vertex_[u];
    int ncv = cv.circles, ncu = cu.circles;
    c.remap.assign(ncv, -1);
    std::vector<int> hits(ncv, 0);
    std::vector<int> image(ncv, -1);
    for (int e = 0; e < (int)cv.circle_of_edge.size(); ++e) image[cv.circle_of_edge[e]] = cu.circle_of_edge[e];
    if (ncu == ncv - 1) {
      c.is_merge = true;
      // the two v-circles sharing an image merge
      std::vector<std::vector<int>> pre(ncu);
      for (int k = 0; k < ncv; ++k) pre[image[k]].push_back(k);
      for (int m = 0; m < ncu; ++m) {
        if (pre[m].size() == 2) {
          c.from_circles = {pre[m][0], pre[m][1]};
          c.to_circles = {m, -1};
        } else {
          c.remap[pre[m][0]] = m;
        }
      }
    } else if (ncu == ncv + 1) {
      c.is_merge = false;
      std::vector<std::vector<int>> post(ncv);
      for (int e = 0; e < (int)cu.circle_of_edge.size(); ++e) {
        int from = cv.circle_of_edge[e], to = cu.circle_of_edge[e];
        auto& lst = post[from];
        if (std::find(lst.begin(), lst.end(), to) == lst.end()) lst.push_back(to);
      }
      for (int k = 0; k < ncv; ++k) {
        if (post[k].size() == 2) {
          c.from_circles = {k, -1};
          c.to_circles = {post[k][0], post[k][1]};
        } else {
          c.remap[k] = post[k][0];
        }
      }
    } else {
      throw KhError("resolution circle counts differ by more than one");
    }
    return c;
  }

  // label transitions across an edge (merge/split rules)
  std::vector<std::uint32_t> targets(const KhGenerator& g, const EdgeCorr& corr) const {
    std::uint32_t base = 0;
    for (int k = 0; k < (int)corr.remap.size(); ++k)
      if (corr.remap[k] >= 0 && (g.plus_mask >> k & 1)) base |= 1u << corr.remap[k];
    if (corr.is_merge) {
      bool pa = g.plus_mask >> corr.from_circles[0] & 1;
      bool pb = g.plus_mask >> corr.from_circles[1] & 1;
      if (pa && pb) return {base | (1u << corr.to_circles[0])};  // (+,+) -> +
      if (pa || pb) return {base};                               // (+,-) -> -
      return {};                                                 // (-,-) -> 0
    }
    bool p = g.plus_mask >> corr.from_circles[0] & 1;
    if (!p) return {base};  // - -> (-,-)
    return {base | (1u << corr.to_circles[0]), base | (1u << corr.to_circles[1])};
  }

  LinkDiagram dia_;
  SignAssignment sign_;
  std::vector<VertexInfo> vertex_;
  std::vector<std::vector<EdgeCorr>> edge_corr_;
};

inline KhComplex build_complex(LinkDiagram diagram, std::optional<SignAssignment> sign = std::nullopt) {
  int n = diagram.num_crossings();
  return KhComplex(std::move(diagram), sign ? *sign : standard_sign(n));
}

// ---------------------------------------------------------------------------
// Reduced theory. Fix a basepoint edge p; the generators labeling the circle
// through p by x_minus span a subcomplex, those labeling it x_plus its
// quotient, and flipping that one label identifies sub^{i,j-1} with
// quot^{i,j+1}. The reduced complex KC~^{i,j} is the sub part at quantum j-1.

struct ReducedSplit {
  int basepoint_edge_index;  // internal edge index
  KhComplex::Filter sub;     // basepoint circle labeled x_minus
  KhComplex::Filter quot;    // basepoint circle labeled x_plus
};

inline ReducedSplit reduced_split(const KhComplex& cx, int basepoint_label) {
  int e = cx.diagram().edge_index_of_label(basepoint_label);
  ReducedSplit r;
  r.basepoint_edge_index = e;
  r.sub = [&cx, e](CubeVertex v, std::uint32_t mask) {
    return (mask >> cx.circle_of_edge(v, e) & 1) == 0;
  };
  r.quot = [&cx, e](CubeVertex v, std::uint32_t mask) {
    return (mask >> cx.circle_of_edge(v, e) & 1) == 1;
  };
  return r;
}

inline BigradedTable reduced_homology_table(const KhComplex& cx, int basepoint_label,
                                            RingSpec ring = RingSpec::integers(),
                                            unsigned threads = 0) {
  auto split = reduced_split(cx, basepoint_label);
  return cx.homology_table(ring, threads, split.sub, +1);
}

// ---------------------------------------------------------------------------
// Skein split at a crossing c: generators with the c-th cube coordinate 1
// form a subcomplex (the 1-resolution side), those with 0 its quotient. The
// pieces compute the resolved diagrams' homology up to the grading shifts
// reported here (they depend on how the resolved diagrams were reoriented).

struct SkeinSplit {
  int crossing = 0;
  KhComplex::Filter sub;   // bit = 1 side (subcomplex), computes L1
  KhComplex::Filter quot;  // bit = 0 side (quotient), computes L0
  LinkDiagram l0, l1;
  // gr(total) = gr(resolved) + shift
  int dh_sub = 0, dq_sub = 0, dh_quot = 0, dq_quot = 0;
};

inline SkeinSplit skein_split(const KhComplex& cx, int crossing) {
  if (crossing < 0 || crossing >= cx.crossings()) throw LengthMismatch("crossing index out of range");
  SkeinSplit s;
  s.crossing = crossing;
  s.sub = [crossing](CubeVertex v, std::uint32_t) { return (v >> crossing & 1) == 1; };
  s.quot = [crossing](CubeVertex v, std::uint32_t) { return (v >> crossing & 1) == 0; };
  s.l0 = smooth_crossing(cx.diagram(), crossing, 0);
  s.l1 = smooth_crossing(cx.diagram(), crossing, 1);
  auto& dia = cx.diagram();
  s.dh_sub = s.l1.n_minus - dia.n_minus + 1;
  s.dq_sub = (dia.n_plus - 2 * dia.n_minus) - (s.l1.n_plus - 2 * s.l1.n_minus) + 1;
  s.dh_quot = s.l0.n_minus - dia.n_minus;
  s.dq_quot = (dia.n_plus - 2 * dia.n_minus) - (s.l0.n_plus - 2 * s.l0.n_minus);
  return s;
}

// ---------------------------------------------------------------------------
// The covering relation on labeled resolution configurations (the edge maps
// of the Khovanov cube) and its transitive closure. Configurations must live
// in a common picture so circle identities line up.

namespace prec_detail {

inline std::map<std::string, int> labels_by_identity(const LabeledConfig& lc) {
  std::map<std::string, int> m;
  for (int c = 0; c < lc.config.num_circles(); ++c) m[circle_identity(lc.config, c)] = lc.labels[c];
  return m;
}

}  // namespace prec_detail

// Does (a) -> (b) in one surgery step with an allowed label transition?
inline bool prec_covers(const LabeledConfig& a, const LabeledConfig& b) {
  a.validate();
  b.validate();
  if (b.config.index() != a.config.index() - 1) return false;
  auto blab = prec_detail::labels_by_identity(b);
  for (int arc : a.config.arcs) {
    SurgeryTrace tr;
    auto s = surger_one(a.config, arc, &tr);
    // does s match b as a picture?
    bool same = true;
    std::vector<int> s_label(s.num_circles(), 0);
    for (int c = 0; c < s.num_circles() && same; ++c) {
      auto it = blab.find(circle_identity(s, c));
      if (it == blab.end())
        same = false;
      else
        s_label[c] = it->second;
    }
    if (!same || s.num_circles() != b.config.num_circles()) continue;
    if (s.arcs != b.config.arcs) continue;
    // untouched circles keep labels
    bool ok = true;
    for (int c = 0; c < a.config.num_circles(); ++c) {
      if (tr.carried[c] < 0) continue;
      if (a.labels[c] != s_label[tr.carried[c]]) ok = false;
    }
    if (!ok) continue;
    if (tr.consumed.size() == 2) {  // merge
      int ya = a.labels[tr.consumed[0]], yb = a.labels[tr.consumed[1]];
      int xk = s_label[tr.created[0]];
      ok = (ya == x_plus && yb == x_plus && xk == x_plus) ||
           (ya != yb && xk == x_minus);
    } else {  // split
      int yi = a.labels[tr.consumed[0]];
      if (tr.created.size() != 2) continue;  // non-planar mixed split
      int xj = s_label[tr.created[0]], xk = s_label[tr.created[1]];
      ok = (yi == x_minus && xj == x_minus && xk == x_minus) ||
           (yi == x_plus && xj != xk);
    }
    if (ok) return true;
  }
  return false;
}

// Transitive closure of the covering relation: (a) strictly precedes (b).
inline bool prec(const LabeledConfig& a, const LabeledConfig& b) {
  a.validate();
  b.validate();
  int steps = a.config.index() - b.config.index();
  if (steps <= 0) return false;
  if (steps == 1) return prec_covers(a, b);
  std::vector<LabeledConfig> frontier{a};
  for (int s = 0; s < steps; ++s) {
    std::vector<LabeledConfig> next;
    for (auto& lc : frontier)
      for (int arc : lc.config.arcs) {
        SurgeryTrace tr;
        auto cfg = surger_one(lc.config, arc, &tr);
        // all allowed label transitions for this step
        for (std::uint32_t bits = 0; bits < 4; ++bits) {
          std::vector<int> labels(cfg.num_circles(), 0);
          for (std::size_t c = 0; c < tr.carried.size(); ++c)
            if (tr.carried[c] >= 0) labels[tr.carried[c]] = lc.labels[c];
          bool valid = false;
          if (tr.consumed.size() == 2 && tr.created.size() == 1) {
            if (bits != 0) continue;  // merge target label is forced
            int ya = lc.labels[tr.consumed[0]], yb = lc.labels[tr.consumed[1]];
            if (ya == x_plus && yb == x_plus) {
              labels[tr.created[0]] = x_plus;
              valid = true;
            } else if (ya != yb) {
              labels[tr.created[0]] = x_minus;
              valid = true;
            }
          } else if (tr.created.size() == 2) {
            if (bits >= 2) continue;
            int yi = lc.labels[tr.consumed[0]];
            if (yi == x_plus) {
              labels[tr.created[0]] = bits ? x_minus : x_plus;
              labels[tr.created[1]] = bits ? x_plus : x_minus;
              valid = true;
            } else if (bits == 0) {
              labels[tr.created[0]] = labels[tr.created[1]] = x_minus;
              valid = true;
            }
          }
          if (valid) next.push_back({cfg, labels});
        }
      }
    frontier = std::move(next);
  }
  auto want = prec_detail::labels_by_identity(b);
  for (auto& lc : frontier) {
    if (lc.config.arcs != b.config.arcs) continue;
    bool same = lc.config.num_circles() == b.config.num_circles();
    for (int c = 0; same && c < lc.config.num_circles(); ++c) {
      auto it = want.find(circle_identity(lc.config, c));
      same = it != want.end() && it->second == lc.labels[c];
    }
    if (same) return true;
  }
  return false;
}

}  // namespace khoflow
