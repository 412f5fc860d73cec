#pragma once

// Resolution configurations: circles in S^2 plus ordered surgery arcs.
//
// Planar data is combinatorial: each circle is a cyclic token sequence (the
// arc endpoints sitting on it, in order, with a per-circle choice of
// traversal direction), and each arc endpoint carries one handedness bit:
// whether a right turn, taken on arrival along the arc, continues the circle
// in the stored forward direction. This is the rotation system of the
// configuration, and is exactly the data the ladybug right-pair rule needs.
//
// Surgery cuts circles at the two endpoints of an arc and rejoins them along
// the two sides of a band around it. The rejoining leaves two "scar" tokens
// on the result; scars are what the dual configuration attaches its arcs to,
// and they keep circles identifiable across iterated surgeries. Scars are
// bookkeeping, not part of the configuration in the mathematical sense:
// isomorphism ignores them.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "khoflow/pd.hpp"

namespace khoflow {

struct CircleToken {
  enum Kind : std::uint8_t { site = 0, scar = 1 };
  Kind kind = site;
  int arc = -1;        // arc id (scar: the arc whose surgery produced it)
  int which = 0;       // site: endpoint 0/1; scar: band side 0/1
  bool right_fwd = false;

  friend bool operator==(const CircleToken&, const CircleToken&) = default;
  friend auto operator<=>(const CircleToken&, const CircleToken&) = default;
};

inline CircleToken site_token(int arc, int which, bool right_fwd) {
  return {CircleToken::site, arc, which, right_fwd};
}

struct SurgeryTrace {
  std::vector<int> consumed;  // circle indices of the input
  std::vector<int> created;   // circle indices of the output
  std::vector<int> carried;   // output index of each untouched input circle (-1 if consumed)
};

class ResolutionConfig {
public:
  std::vector<std::vector<CircleToken>> circles;
  std::vector<std::set<int>> origins;  // identity support, one set per circle
  std::vector<int> arcs;               // live arc ids, ascending (the total order)

  int index() const { return (int)arcs.size(); }
  int num_circles() const { return (int)circles.size(); }

  bool has_arc(int a) const { return std::binary_search(arcs.begin(), arcs.end(), a); }
  int arc_rank(int a) const {
    auto it = std::lower_bound(arcs.begin(), arcs.end(), a);
    if (it == arcs.end() || *it != a) throw KhError("arc not in configuration");
    return (int)(it - arcs.begin());
  }

  // Position of an arc endpoint: (circle, token position).
  std::pair<int, int> locate(int arc, int which) const {
    for (int c = 0; c < (int)circles.size(); ++c)
      for (int p = 0; p < (int)circles[c].size(); ++p) {
        auto& t = circles[c][p];
        if (t.kind == CircleToken::site && t.arc == arc && t.which == which) return {c, p};
      }
    throw KhError("arc endpoint not found");
  }

  int sites_on(int circle) const {
    int n = 0;
    for (auto& t : circles[circle])
      if (t.kind == CircleToken::site) ++n;
    return n;
  }

  void validate() const {
    std::map<int, int> ends;
    for (auto& c : circles)
      for (auto& t : c)
        if (t.kind == CircleToken::site) ends[t.arc]++;
    for (int a : arcs)
      if (ends[a] != 2) throw KhError("arc " + std::to_string(a) + " lacks two endpoints");
    for (auto& [a, n] : ends)
      if (!has_arc(a)) throw KhError("site of dead arc " + std::to_string(a));
    if (origins.size() != circles.size()) throw KhError("origin bookkeeping out of sync");
  }
};

// Explicit constructor for fixtures: circles given as (arc, endpoint, bit)
// site lists in cyclic order.
inline ResolutionConfig make_config(const std::vector<std::vector<std::array<int, 3>>>& circle_specs) {
  ResolutionConfig d;
  std::set<int> arc_ids;
  for (int c = 0; c < (int)circle_specs.size(); ++c) {
    std::vector<CircleToken> toks;
    for (auto& s : circle_specs[c]) {
      toks.push_back(site_token(s[0], s[1], s[2] != 0));
      arc_ids.insert(s[0]);
    }
    d.circles.push_back(std::move(toks));
    d.origins.push_back({c});
  }
  d.arcs.assign(arc_ids.begin(), arc_ids.end());
  d.validate();
  return d;
}

namespace res_detail {

inline std::vector<CircleToken> flipped(std::vector<CircleToken> v) {
  std::reverse(v.begin(), v.end());
  for (auto& t : v) t.right_fwd = !t.right_fwd;
  return v;
}

// canonical cyclic form over rotations and direction flips
inline std::vector<CircleToken> canonical_cycle(const std::vector<CircleToken>& in) {
  if (in.empty()) return in;
  auto best = in;
  bool first = true;
  for (auto base : {in, flipped(in)}) {
    for (std::size_t r = 0; r < base.size(); ++r) {
      std::vector<CircleToken> rot(base.begin() + r, base.end());
      rot.insert(rot.end(), base.begin(), base.begin() + r);
      if (first || rot < best) {
        best = rot;
        first = false;
      }
    }
  }
  return best;
}

}  // namespace res_detail

// Canonical isomorphism key. Arcs correspond by order (rank), circles are
// anonymous, per-circle traversal direction is free, scars and origins are
// ignored. Optional labels ride along with their circles.
inline std::string canonical_key(const ResolutionConfig& d, const std::vector<int>* labels = nullptr) {
  std::vector<std::string> encs;
  for (int c = 0; c < (int)d.circles.size(); ++c) {
    std::vector<CircleToken> toks;
    for (auto& t : d.circles[c])
      if (t.kind == CircleToken::site) toks.push_back(site_token(d.arc_rank(t.arc), 0, t.right_fwd));
    toks = res_detail::canonical_cycle(toks);
    std::ostringstream os;
    if (labels) os << ((*labels)[c] > 0 ? "+" : "-") << "|";
    for (auto& t : toks) os << t.arc << (t.right_fwd ? "R" : "L") << ".";
    encs.push_back(os.str());
  }
  std::sort(encs.begin(), encs.end());
  std::ostringstream os;
  os << "arcs:" << d.arcs.size() << ";";
  for (auto& e : encs) os << "(" << e << ")";
  return os.str();
}

inline bool isomorphic(const ResolutionConfig& a, const ResolutionConfig& b) {
  return canonical_key(a) == canonical_key(b);
}

// Identity of one circle within a fixed picture, used to match circles
// across surgery paths and set operations. Origins plus surgery scars pin the
// curve down: every merge or split leaves fresh scars on exactly the circles
// it creates. Site tokens are excluded deliberately (set operations forget
// arcs without changing the underlying curves).
inline std::string circle_identity(const ResolutionConfig& d, int c) {
  std::vector<std::pair<int, int>> scars;
  for (auto& t : d.circles[c])
    if (t.kind == CircleToken::scar) scars.push_back({t.arc, t.which});
  std::sort(scars.begin(), scars.end());
  std::ostringstream os;
  for (int o : d.origins[c]) os << o << ",";
  os << "|";
  for (auto& [a, w] : scars) os << a << "." << w << ";";
  return os.str();
}

// ---------------------------------------------------------------------------
// Surgery.

// Surger a single arc. The splice follows the band picture: with both
// handedness bits equal the strands rejoin preserving direction; with unequal
// bits one strand is traversed backwards afterwards (cannot happen for
// configurations drawn in the plane, but the operation stays well-defined).
inline ResolutionConfig surger_one(const ResolutionConfig& d, int arc, SurgeryTrace* trace = nullptr) {
  auto [c1, p1] = d.locate(arc, 0);
  auto [c2, p2] = d.locate(arc, 1);
  bool h1 = d.circles[c1][p1].right_fwd;
  bool h2 = d.circles[c2][p2].right_fwd;

  ResolutionConfig out;
  out.arcs = d.arcs;
  out.arcs.erase(std::find(out.arcs.begin(), out.arcs.end(), arc));

  CircleToken jP{CircleToken::scar, arc, 0, false};
  CircleToken jM{CircleToken::scar, arc, 1, false};

  auto after = [&](int c, int p) {  // tokens after position p, cyclically, excluding p
    std::vector<CircleToken> v;
    int n = (int)d.circles[c].size();
    for (int i = 1; i < n; ++i) v.push_back(d.circles[c][(p + i) % n]);
    return v;
  };

  std::vector<std::vector<CircleToken>> made;
  std::vector<std::set<int>> made_origins;
  if (c1 != c2) {
    auto sigma = after(c1, p1);
    auto tau = after(c2, p2);
    std::vector<CircleToken> z;
    if (h1 == h2) {
      bool bits = !h1;  // (T,T): scar bits false; (F,F): true
      jP.right_fwd = jM.right_fwd = bits;
      z = sigma;
      z.push_back(h1 ? jP : jM);
      z.insert(z.end(), tau.begin(), tau.end());
      z.push_back(h1 ? jM : jP);
    } else {
      auto tr = res_detail::flipped(tau);
      if (h1) {  // (T,F)
        z = sigma;
        z.push_back(jP);
        z.insert(z.end(), tr.begin(), tr.end());
        z.push_back(jM);
      } else {  // (F,T): keep tau forward, reverse sigma
        auto sr = res_detail::flipped(sigma);
        z = tau;
        z.push_back(jM);
        z.insert(z.end(), sr.begin(), sr.end());
        z.push_back(jP);
      }
    }
    made.push_back(std::move(z));
    auto orig = d.origins[c1];
    orig.insert(d.origins[c2].begin(), d.origins[c2].end());
    made_origins.push_back(std::move(orig));
  } else {
    // split: walk from p1; S-list up to p2, T-list after p2
    int n = (int)d.circles[c1].size();
    std::vector<CircleToken> S, T;
    bool before_q = true;
    for (int i = 1; i < n; ++i) {
      int pos = (p1 + i) % n;
      if (pos == p2) {
        before_q = false;
        continue;
      }
      (before_q ? S : T).push_back(d.circles[c1][pos]);
    }
    if (h1 == h2) {
      bool bits = !h1;
      jP.right_fwd = jM.right_fwd = bits;
      auto z1 = T;
      z1.push_back(h1 ? jP : jM);
      auto z2 = S;
      z2.push_back(h1 ? jM : jP);
      made.push_back(std::move(z1));
      made.push_back(std::move(z2));
      made_origins.push_back(d.origins[c1]);
      made_origins.push_back(d.origins[c1]);
    } else {
      // mixed handedness: single circle (non-planar input)
      auto sr = res_detail::flipped(S);
      auto z = T;
      z.push_back(jP);
      z.insert(z.end(), sr.begin(), sr.end());
      z.push_back(jM);
      made.push_back(std::move(z));
      made_origins.push_back(d.origins[c1]);
    }
  }

  if (trace) *trace = SurgeryTrace{};
  for (int c = 0; c < (int)d.circles.size(); ++c) {
    if (c == c1 || c == c2) {
      if (trace) {
        trace->consumed.push_back(c);
        trace->carried.push_back(-1);
      }
      continue;
    }
    if (trace) trace->carried.push_back((int)out.circles.size());
    out.circles.push_back(d.circles[c]);
    out.origins.push_back(d.origins[c]);
  }
  for (std::size_t i = 0; i < made.size(); ++i) {
    if (trace) trace->created.push_back((int)out.circles.size());
    out.circles.push_back(std::move(made[i]));
    out.origins.push_back(std::move(made_origins[i]));
  }
  return out;
}

inline ResolutionConfig surgery(const ResolutionConfig& d, const std::vector<int>& arcs_to_cut) {
  for (int a : arcs_to_cut)
    if (!d.has_arc(a)) throw KhError("surgery: arc not in configuration");
  ResolutionConfig cur = d;
  for (int a : arcs_to_cut) cur = surger_one(cur, a);
  return cur;
}

inline ResolutionConfig full_surgery(const ResolutionConfig& d) { return surgery(d, d.arcs); }

// ---------------------------------------------------------------------------
// Set operations, core, leaves.

inline ResolutionConfig diff(const ResolutionConfig& d, const ResolutionConfig& e) {
  std::set<std::string> e_keys;
  for (int c = 0; c < e.num_circles(); ++c) e_keys.insert(circle_identity(e, c));
  ResolutionConfig out;
  for (int c = 0; c < d.num_circles(); ++c) {
    if (e_keys.count(circle_identity(d, c))) continue;
    out.circles.push_back(d.circles[c]);
    out.origins.push_back(d.origins[c]);
  }
  // arcs whose boundary misses every circle of E. An endpoint lies on a
  // circle of E exactly when its site token still appears there (configs are
  // compared within a common picture, so tokens are global names of points).
  std::set<std::pair<int, int>> e_sites;
  for (auto& circ : e.circles)
    for (auto& t : circ)
      if (t.kind == CircleToken::site) e_sites.insert({t.arc, t.which});
  for (int a : d.arcs) {
    if (e_sites.count({a, 0}) || e_sites.count({a, 1})) continue;
    out.arcs.push_back(a);
  }
  // drop site tokens of dropped arcs
  for (auto& circ : out.circles) {
    std::vector<CircleToken> keep;
    for (auto& t : circ)
      if (t.kind != CircleToken::site || std::binary_search(out.arcs.begin(), out.arcs.end(), t.arc))
        keep.push_back(t);
    circ = std::move(keep);
  }
  return out;
}

inline ResolutionConfig intersect(const ResolutionConfig& d, const ResolutionConfig& e) {
  return diff(d, diff(d, e));
}

// Keep only the given arcs (sites of the others are forgotten).
inline ResolutionConfig restrict_to_arcs(const ResolutionConfig& d, const std::vector<int>& keep) {
  ResolutionConfig out = d;
  out.arcs.clear();
  for (int a : keep)
    if (!d.has_arc(a))
      throw KhError("restrict: arc not live");
    else
      out.arcs.push_back(a);
  std::sort(out.arcs.begin(), out.arcs.end());
  for (auto& circ : out.circles) {
    std::vector<CircleToken> kept;
    for (auto& t : circ)
      if (t.kind != CircleToken::site || std::binary_search(out.arcs.begin(), out.arcs.end(), t.arc))
        kept.push_back(t);
    circ = std::move(kept);
  }
  return out;
}

inline ResolutionConfig core(const ResolutionConfig& d) {
  ResolutionConfig out = d;
  out.circles.clear();
  out.origins.clear();
  for (int c = 0; c < d.num_circles(); ++c)
    if (d.sites_on(c) > 0) {
      out.circles.push_back(d.circles[c]);
      out.origins.push_back(d.origins[c]);
    }
  return out;
}

inline bool is_basic(const ResolutionConfig& d) {
  for (int c = 0; c < d.num_circles(); ++c)
    if (d.sites_on(c) == 0) return false;
  return true;
}

// Leaves: circles meeting exactly one arc endpoint.
inline std::vector<int> leaves(const ResolutionConfig& d) {
  std::vector<int> out;
  for (int c = 0; c < d.num_circles(); ++c)
    if (d.sites_on(c) == 1) out.push_back(c);
  return out;
}

// ---------------------------------------------------------------------------
// Dual configuration.
//
// Circles of D* are the circles of the full surgery s(D); the dual arc of A
// connects the two scars that surgering A left behind, and the dual arc
// ordering is reversed.
inline ResolutionConfig dual(const ResolutionConfig& d) {
  ResolutionConfig s = full_surgery(d);
  int n = d.index();
  // old arc id -> dual arc id, reversing the order
  std::map<int, int> dual_id;
  for (int r = 0; r < n; ++r) dual_id[d.arcs[r]] = n - 1 - r;

  ResolutionConfig out;
  out.origins.assign(s.num_circles(), {});
  for (int c = 0; c < s.num_circles(); ++c) {
    out.origins[c] = {c};
    std::vector<CircleToken> toks;
    for (auto& t : s.circles[c]) {
      if (t.kind == CircleToken::scar && dual_id.count(t.arc))
        toks.push_back(site_token(dual_id[t.arc], t.which, t.right_fwd));
      // pre-existing scars (from earlier surgeries) are dropped: the dual is a
      // fresh configuration
    }
    out.circles.push_back(std::move(toks));
  }
  for (int r = 0; r < n; ++r) out.arcs.push_back(r);
  out.validate();
  return out;
}

// Co-leaves: arcs whose dual arc has an endpoint on a leaf of the dual.
inline std::vector<int> coleaves(const ResolutionConfig& d) {
  ResolutionConfig dd = dual(d);
  std::set<int> dual_leaf_arcs;
  for (int c : leaves(dd))
    for (auto& t : dd.circles[c])
      if (t.kind == CircleToken::site) dual_leaf_arcs.insert(t.arc);
  int n = d.index();
  std::vector<int> out;
  for (int r = 0; r < n; ++r)
    if (dual_leaf_arcs.count(n - 1 - r)) out.push_back(d.arcs[r]);
  return out;
}

// ---------------------------------------------------------------------------
// Labeled and decorated configurations.

constexpr int x_plus = +1;
constexpr int x_minus = -1;

struct LabeledConfig {
  ResolutionConfig config;
  std::vector<int> labels;  // x_plus / x_minus per circle index

  void validate() const {
    if (labels.size() != config.circles.size()) throw KhError("one label per circle required");
    for (int l : labels)
      if (l != x_plus && l != x_minus) throw KhError("labels must be x_plus or x_minus");
  }
};

// (D, x, y): y labels Z(D), x labels Z(s(D)). The poset machinery checks
// (D,y) <= (s(D),x) on construction; see make_decorated in moduli.hpp.
struct DecoratedConfig {
  ResolutionConfig config;       // D
  ResolutionConfig full;         // s(D), with scars traced
  std::vector<int> x;            // labels on full.circles
  std::vector<int> y;            // labels on config.circles
};

// ---------------------------------------------------------------------------
// Resolutions of a link diagram.

struct DiagramResolution {
  ResolutionConfig config;
  std::vector<std::vector<int>> circle_edges;  // diagram edges on each circle
  std::vector<int> circle_of_edge;             // edge -> circle index
};

// Kauffman resolution of the diagram at v (one bit per crossing; 0 puts an
// arc at the crossing). Circles are traced through the smoothing junctions;
// each 0-crossing's arc connects its a-b junction (endpoint 0) to its c-d
// junction (endpoint 1). Arcs are numbered by crossing order.
inline DiagramResolution resolve_with_edges(const LinkDiagram& dia, const std::vector<int>& bits) {
  if ((int)bits.size() != dia.num_crossings())
    throw LengthMismatch("resolution vector length != crossing count");
  DiagramResolution out;
  out.circle_of_edge.assign(dia.num_edges(), -1);

  int nc = dia.num_crossings();
  // arc ids: 0-crossings in crossing order
  std::vector<int> arc_of_crossing(nc, -1);
  int arcs = 0;
  for (int k = 0; k < nc; ++k)
    if (bits[k] == 0) arc_of_crossing[k] = arcs++;

  // junction wiring per crossing: partner[pos], junction id (0: contains a, 1: contains c),
  // and the port a right turn leads toward when arriving along the arc
  auto partner = [&](int k, int pos) {
    static const int j0[4] = {1, 0, 3, 2};  // 0-res: a-b, c-d
    static const int j1[4] = {3, 2, 1, 0};  // 1-res: a-d, b-c
    return bits[k] == 0 ? j0[pos] : j1[pos];
  };
  auto junction_of = [&](int pos) { return (pos == 0 || pos == 1) ? 0 : 1; };  // for 0-res
  // right-turn target: 0-res junction {a,b} -> a, {c,d} -> c
  auto right_target = [&](int pos) { return junction_of(pos) == 0 ? 0 : 2; };

  auto other_port = [&](int e, Port p) {
    return dia.edge_ports[e][0] == p ? dia.edge_ports[e][1] : dia.edge_ports[e][0];
  };

  std::vector<bool> edge_done(dia.num_edges(), false);
  for (int e0 = 0; e0 < dia.num_edges(); ++e0) {
    if (edge_done[e0]) continue;
    if (dia.edge_ports[e0][0].crossing < 0) {
      // crossingless unknot component
      edge_done[e0] = true;
      out.circle_of_edge[e0] = (int)out.config.circles.size();
      out.config.circles.push_back({});
      out.config.origins.push_back({(int)out.config.circles.size() - 1});
      out.circle_edges.push_back({e0});
      continue;
    }
    int cid = (int)out.config.circles.size();
    std::vector<CircleToken> toks;
    std::vector<int> edges_here;
    int e = e0;
    Port at = dia.edge_ports[e0][1];  // traverse edge toward its head first
    do {
      edge_done[e] = true;
      edges_here.push_back(e);
      out.circle_of_edge[e] = cid;
      int exit_pos = partner(at.crossing, at.pos);
      if (bits[at.crossing] == 0) {
        bool rf = exit_pos == right_target(at.pos);
        toks.push_back(site_token(arc_of_crossing[at.crossing], junction_of(at.pos), rf));
      }
      Port exit{at.crossing, exit_pos};
      e = dia.edge_at(exit);
      at = other_port(e, exit);
    } while (e != e0);
    out.config.circles.push_back(std::move(toks));
    out.config.origins.push_back({cid});
    out.circle_edges.push_back(std::move(edges_here));
  }
  for (int a = 0; a < arcs; ++a) out.config.arcs.push_back(a);
  out.config.validate();
  return out;
}

inline ResolutionConfig resolve(const LinkDiagram& dia, const std::vector<int>& bits) {
  return resolve_with_edges(dia, bits).config;
}

// Debug serialization for golden tests.
inline std::string debug_json(const ResolutionConfig& d) {
  std::ostringstream os;
  os << "{\"arcs\":[";
  for (std::size_t i = 0; i < d.arcs.size(); ++i) os << (i ? "," : "") << d.arcs[i];
  os << "],\"circles\":[";
  for (std::size_t c = 0; c < d.circles.size(); ++c) {
    os << (c ? "," : "") << "[";
    for (std::size_t p = 0; p < d.circles[c].size(); ++p) {
      auto& t = d.circles[c][p];
      os << (p ? "," : "") << "{\"" << (t.kind == CircleToken::site ? "site" : "scar") << "\":[" << t.arc
         << "," << t.which << "]," << "\"right_fwd\":" << (t.right_fwd ? "true" : "false") << "}";
    }
    os << "]";
  }
  os << "]}";
  return os.str();
}

}  // namespace khoflow
