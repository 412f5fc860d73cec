#pragma once

// Planar diagram (PD) codes and oriented link diagrams.
//
// A crossing X[a,b,c,d] lists the four incident edge ends counterclockwise
// starting at the incoming under-strand edge a; the under-strand exits at c.
// With the page oriented the usual way the four listing positions sit at
// S, E, N, W around the crossing. The over-strand occupies positions b and d;
// the crossing is positive when the over-strand enters at d and negative when
// it enters at b.
//
// Orientations are inferred from the edge numbering (labels increase along
// each strand, wrapping once per component); explicit X+ / X- overrides win.
// The statement "O" adds a crossingless unknot component.

#include <array>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace khoflow {

struct KhError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct MalformedToken : KhError {
  using KhError::KhError;
};
struct EdgeCountError : KhError {
  using KhError::KhError;
};
struct OpenStrand : KhError {
  using KhError::KhError;
};
struct AmbiguousOrientation : KhError {
  using KhError::KhError;
};
struct LengthMismatch : KhError {
  using KhError::KhError;
};

struct PdCrossing {
  std::array<int, 4> e;         // edge labels at positions a,b,c,d
  std::optional<int> sign_override;  // +1 / -1
};

struct PdCode {
  std::vector<PdCrossing> crossings;
  int unknot_components = 0;

  std::size_t size() const { return crossings.size(); }
  std::set<int> edge_labels() const {
    std::set<int> s;
    for (auto& x : crossings) s.insert(x.e.begin(), x.e.end());
    return s;
  }
};

namespace pd_detail {

inline void validate(const PdCode& code) {
  std::map<int, int> uses;
  for (auto& x : code.crossings)
    for (int e : x.e) {
      if (e <= 0) throw MalformedToken("edge labels must be positive");
      ++uses[e];
    }
  for (auto& [label, n] : uses)
    if (n != 2)
      throw EdgeCountError("edge " + std::to_string(label) + " used " + std::to_string(n) +
                           " times (expected 2)");
  // strands close up: follow under (a->c) and over (b->d) passages
  if (code.crossings.empty()) return;
  // occurrence list per label
  std::map<int, std::vector<std::pair<int, int>>> occ;  // label -> [(crossing,pos)]
  for (std::size_t k = 0; k < code.crossings.size(); ++k)
    for (int p = 0; p < 4; ++p) occ[code.crossings[k].e[p]].push_back({(int)k, p});
  // walk: at (crossing,pos) the strand continues at the partner position
  auto partner_pos = [](int p) { return p ^ 2; };  // a<->c, b<->d
  std::set<std::pair<int, int>> seen;
  for (auto& [label, where] : occ) {
    (void)label;
    for (auto start : where) {
      if (seen.count(start)) continue;
      auto cur = start;
      std::size_t steps = 0, limit = 8 * code.crossings.size() + 8;
      do {
        seen.insert(cur);
        int exit_pos = partner_pos(cur.second);
        int exit_label = code.crossings[cur.first].e[exit_pos];
        // other occurrence of exit_label
        auto& both = occ[exit_label];
        std::pair<int, int> nxt = both[0];
        if (nxt == std::make_pair(cur.first, exit_pos)) nxt = both[1];
        cur = nxt;
        if (++steps > limit) throw OpenStrand("strand walk does not close");
      } while (cur != start);
    }
  }
}

}  // namespace pd_detail

// Parse a PD listing. Accepts "X a b c d" statements separated by ';' or
// newlines, optional X+/X- sign overrides, "O" unknot components, comments
// starting with '#', and the bracketed form PD[X[a,b,c,d],...].
inline PdCode parse_pd(const std::string& text) {
  // strip comments, normalize separators
  std::string clean;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      clean += '\n';
      continue;
    }
    char ch = text[i];
    if (ch == '[' || ch == ']' || ch == '(' || ch == ')' || ch == ',') ch = ' ';
    if (ch == '\n' || ch == ';') ch = ';';
    clean += ch;
  }

  PdCode code;
  std::stringstream lines(clean);
  std::string stmt;
  while (std::getline(lines, stmt, ';')) {
    std::stringstream ss(stmt);
    std::string tok;
    while (ss >> tok) {
      if (tok == "PD") continue;
      if (tok == "O" || tok == "o") {
        code.unknot_components++;
        continue;
      }
      std::optional<int> override_sign;
      if (tok == "X" || tok == "x") {
        // fallthrough
      } else if (tok == "X+" || tok == "x+") {
        override_sign = 1;
      } else if (tok == "X-" || tok == "x-") {
        override_sign = -1;
      } else {
        throw MalformedToken("unexpected token '" + tok + "'");
      }
      PdCrossing x;
      x.sign_override = override_sign;
      for (int p = 0; p < 4; ++p) {
        std::string num;
        if (!(ss >> num)) throw MalformedToken("crossing needs 4 edge labels");
        try {
          std::size_t used = 0;
          x.e[p] = std::stoi(num, &used);
          if (used != num.size()) throw std::invalid_argument(num);
        } catch (const std::exception&) {
          throw MalformedToken("not an edge label: '" + num + "'");
        }
      }
      code.crossings.push_back(x);
    }
  }
  pd_detail::validate(code);
  return code;
}

inline std::string serialize(const PdCode& code) {
  std::ostringstream os;
  for (auto& x : code.crossings) {
    os << "X";
    if (x.sign_override) os << (*x.sign_override > 0 ? "+" : "-");
    for (int p = 0; p < 4; ++p) os << " " << x.e[p];
    os << ";\n";
  }
  for (int i = 0; i < code.unknot_components; ++i) os << "O;\n";
  return os.str();
}

// ---------------------------------------------------------------------------

struct Port {
  int crossing = -1;
  int pos = -1;  // 0..3 = a..d
  friend bool operator==(const Port& x, const Port& y) {
    return x.crossing == y.crossing && x.pos == y.pos;
  }
  friend auto operator<=>(const Port&, const Port&) = default;
};

struct Crossing {
  std::array<int, 4> edge;  // internal edge index at positions a,b,c,d
  int sign = 0;             // +1 or -1
};

// Oriented link diagram with the rotation data needed downstream. Edges are
// internally 0-based and directed (tail -> head); original PD labels are kept
// for reporting and basepoint lookup. Crossingless unknot components are
// represented as synthetic closed edges with no ports.
struct LinkDiagram {
  std::vector<Crossing> crossings;
  std::vector<int> edge_label;              // internal index -> original label
  std::vector<std::array<Port, 2>> edge_ports;  // [tail, head]; {-1,-1} for free loops
  std::vector<std::vector<int>> components;     // edges in strand order
  int n_plus = 0, n_minus = 0;

  int num_crossings() const { return (int)crossings.size(); }
  int num_edges() const { return (int)edge_label.size(); }

  int edge_index_of_label(int label) const {
    for (int i = 0; i < (int)edge_label.size(); ++i)
      if (edge_label[i] == label) return i;
    throw KhError("no edge labeled " + std::to_string(label));
  }

  // Port -> edge occupancy helpers.
  int edge_at(Port p) const { return crossings[p.crossing].edge[p.pos]; }
  bool is_head(Port p) const { return edge_ports[edge_at(p)][1] == p; }
};

namespace pd_detail {

// Build the diagram: trace strands, orient, and sign crossings.
inline LinkDiagram orient_impl(const PdCode& code) {
  LinkDiagram dia;
  std::map<int, int> label_to_idx;
  for (auto& x : code.crossings)
    for (int e : x.e)
      if (!label_to_idx.count(e)) {
        int idx = (int)label_to_idx.size();
        label_to_idx[e] = idx;
      }
  dia.edge_label.resize(label_to_idx.size());
  for (auto& [label, idx] : label_to_idx) dia.edge_label[idx] = label;

  for (auto& x : code.crossings) {
    Crossing c;
    for (int p = 0; p < 4; ++p) c.edge[p] = label_to_idx[x.e[p]];
    dia.crossings.push_back(c);
  }

  int ne = (int)dia.edge_label.size();
  // occurrences of each edge
  std::vector<std::vector<Port>> occ(ne);
  for (int k = 0; k < (int)dia.crossings.size(); ++k)
    for (int p = 0; p < 4; ++p) occ[dia.crossings[k].edge[p]].push_back({k, p});

  // components (ignoring orientation): walk through crossings a<->c, b<->d
  std::vector<int> comp_of(ne, -1);
  std::vector<std::vector<int>> comp_edges;
  for (int e = 0; e < ne; ++e) {
    if (comp_of[e] >= 0) continue;
    int cid = (int)comp_edges.size();
    comp_edges.push_back({});
    int cur = e;
    Port at = occ[e][0];
    do {
      comp_of[cur] = cid;
      comp_edges[cid].push_back(cur);
      Port exit{at.crossing, at.pos ^ 2};
      int nxt = dia.crossings[exit.crossing].edge[exit.pos];
      Port other = occ[nxt][0] == exit ? occ[nxt][1] : occ[nxt][0];
      cur = nxt;
      at = other;
    } while (cur != e || !(at == occ[e][0]));
  }

  // head/tail assignment: head[e] in {0,1} indexes occ[e]
  std::vector<int> head(ne, -1);
  auto set_head = [&](int e, Port p) {
    int which = occ[e][0] == p ? 0 : 1;
    if (head[e] >= 0 && head[e] != which)
      throw AmbiguousOrientation("conflicting orientation at edge label " +
                                 std::to_string(dia.edge_label[e]));
    head[e] = which;
  };
  auto set_tail = [&](int e, Port p) {
    int which = occ[e][0] == p ? 0 : 1;
    if (head[e] >= 0 && head[e] == which)
      throw AmbiguousOrientation("conflicting orientation at edge label " +
                                 std::to_string(dia.edge_label[e]));
    head[e] = 1 - which;
  };

  // pass 1: under-strand anchors and overrides
  for (int k = 0; k < (int)dia.crossings.size(); ++k) {
    auto& c = dia.crossings[k];
    set_head(c.edge[0], {k, 0});
    set_tail(c.edge[2], {k, 2});
    if (code.crossings[k].sign_override) {
      // positive: over enters at d; negative: at b
      if (*code.crossings[k].sign_override > 0) {
        set_head(c.edge[3], {k, 3});
        set_tail(c.edge[1], {k, 1});
      } else {
        set_head(c.edge[1], {k, 1});
        set_tail(c.edge[3], {k, 3});
      }
    }
  }
  // pass 2: propagate (each edge: one head, one tail; over pairs: one in, one out)
  bool changed = true;
  while (changed) {
    changed = false;
    for (int k = 0; k < (int)dia.crossings.size(); ++k) {
      auto& c = dia.crossings[k];
      int eb = c.edge[1], ed = c.edge[3];
      Port pb{k, 1}, pd{k, 3};
      auto role_at = [&](int e, Port p) -> int {  // 1 head, 0 tail, -1 unknown
        if (head[e] < 0) return -1;
        int which = occ[e][0] == p ? 0 : 1;
        return head[e] == which ? 1 : 0;
      };
      int rb = role_at(eb, pb), rd = role_at(ed, pd);
      if (rb < 0 && rd < 0) continue;
      if (rb < 0) {
        if (rd == 1)
          set_tail(eb, pb);
        else
          set_head(eb, pb);
        changed = true;
      } else if (rd < 0) {
        if (rb == 1)
          set_tail(ed, pd);
        else
          set_head(ed, pd);
        changed = true;
      } else if (rb == rd) {
        throw AmbiguousOrientation("over-strand at crossing " + std::to_string(k) +
                                   " has two heads or two tails");
      }
    }
  }
  // pass 3: label heuristic for remaining over pairs (labels ascend, one wrap)
  for (int k = 0; k < (int)dia.crossings.size(); ++k) {
    auto& c = dia.crossings[k];
    int eb = c.edge[1], ed = c.edge[3];
    if (head[eb] >= 0 && head[ed] >= 0) continue;
    int lb = dia.edge_label[eb], ld = dia.edge_label[ed];
    auto& comp = comp_edges[comp_of[eb]];
    int lmin = INT32_MAX, lmax = INT32_MIN;
    for (int e : comp) {
      lmin = std::min(lmin, dia.edge_label[e]);
      lmax = std::max(lmax, dia.edge_label[e]);
    }
    Port pb{k, 1}, pd{k, 3};
    if (ld == lb + 1 || (lb == lmax && ld == lmin)) {
      set_head(eb, pb);  // strand passes b -> d
      set_tail(ed, pd);
    } else if (lb == ld + 1 || (ld == lmax && lb == lmin)) {
      set_head(ed, pd);
      set_tail(eb, pb);
    } else {
      throw AmbiguousOrientation("cannot orient over-strand {" + std::to_string(lb) + "," +
                                 std::to_string(ld) + "} at crossing " + std::to_string(k));
    }
  }

  dia.edge_ports.resize(ne);
  for (int e = 0; e < ne; ++e) {
    if (head[e] < 0) throw AmbiguousOrientation("undetermined edge orientation");
    dia.edge_ports[e][1] = occ[e][head[e]];
    dia.edge_ports[e][0] = occ[e][1 - head[e]];
  }

  // signs: positive iff the over-strand enters (has its head) at position d
  for (int k = 0; k < (int)dia.crossings.size(); ++k) {
    auto& c = dia.crossings[k];
    bool d_is_head = dia.edge_ports[c.edge[3]][1] == Port{k, 3};
    c.sign = d_is_head ? 1 : -1;
    if (code.crossings[k].sign_override && *code.crossings[k].sign_override != c.sign)
      throw AmbiguousOrientation("sign override contradicts traced orientation at crossing " +
                                 std::to_string(k));
    (c.sign > 0 ? dia.n_plus : dia.n_minus)++;
  }

  // components in strand order (follow orientation: head port, exit at partner)
  dia.components.clear();
  std::vector<bool> placed(ne, false);
  for (int e0 = 0; e0 < ne; ++e0) {
    if (placed[e0]) continue;
    std::vector<int> comp;
    int cur = e0;
    do {
      placed[cur] = true;
      comp.push_back(cur);
      Port h = dia.edge_ports[cur][1];
      Port exit{h.crossing, h.pos ^ 2};
      cur = dia.crossings[exit.crossing].edge[exit.pos];
    } while (cur != e0);
    dia.components.push_back(comp);
  }

  // crossingless unknot components: synthetic closed edges
  for (int i = 0; i < code.unknot_components; ++i) {
    int e = (int)dia.edge_label.size();
    int fresh = 1;
    for (int l : dia.edge_label) fresh = std::max(fresh, l + 1);
    dia.edge_label.push_back(fresh);
    dia.edge_ports.push_back({Port{-1, -1}, Port{-1, -1}});
    dia.components.push_back({e});
  }
  return dia;
}

}  // namespace pd_detail

inline LinkDiagram orient_and_sign(const PdCode& code) { return pd_detail::orient_impl(code); }

inline LinkDiagram parse_diagram(const std::string& text) { return orient_and_sign(parse_pd(text)); }

// Mirror image: reverses every crossing (b and d swap), flipping all signs.
inline LinkDiagram mirror(const LinkDiagram& dia) {
  LinkDiagram m = dia;
  auto flip = [](Port p) {
    if (p.crossing >= 0 && (p.pos == 1 || p.pos == 3)) p.pos ^= 2;
    return p;
  };
  for (auto& c : m.crossings) {
    std::swap(c.edge[1], c.edge[3]);
    c.sign = -c.sign;
  }
  for (auto& ep : m.edge_ports) {
    ep[0] = flip(ep[0]);
    ep[1] = flip(ep[1]);
  }
  std::swap(m.n_plus, m.n_minus);
  return m;
}

// Resolve one crossing away, producing the diagram of the 0- or 1-smoothing.
// The result is rebuilt from scratch: strands are rewalked, edges relabeled
// in strand order, and tuples rotated so position a is again the under-in;
// orientations of the smoothed diagram are thus chosen fresh (a smoothing
// need not respect the old orientation). Components that lose all crossings
// become crossingless unknot components.
inline LinkDiagram smooth_crossing(const LinkDiagram& dia, int k, int bit) {
  if (k < 0 || k >= dia.num_crossings()) throw LengthMismatch("crossing index out of range");

  auto other_port = [&](int e, Port p) {
    return dia.edge_ports[e][0] == p ? dia.edge_ports[e][1] : dia.edge_ports[e][0];
  };
  auto junction_partner = [&](Port p) {
    // 0-smoothing joins a-b and c-d; 1-smoothing joins a-d and b-c
    static const int j0[4] = {1, 0, 3, 2};
    static const int j1[4] = {3, 2, 1, 0};
    return Port{p.crossing, bit == 0 ? j0[p.pos] : j1[p.pos]};
  };
  // follow the strand from an outgoing port to the next surviving crossing,
  // hopping through the smoothed junctions; returns arrival port (or a loop)
  auto follow = [&](Port out) -> std::optional<Port> {
    Port p = out;
    for (;;) {
      int e = dia.edge_at(p);
      Port q = other_port(e, p);
      if (q.crossing != k) return q;
      p = junction_partner(q);
      if (p == out) return std::nullopt;  // closed loop through the smoothing
    }
  };

  int old_n = dia.num_crossings();
  std::vector<int> new_index(old_n, -1);
  int nn = 0;
  for (int j = 0; j < old_n; ++j)
    if (j != k) new_index[j] = nn++;

  PdCode out;
  out.crossings.resize(nn);
  out.unknot_components = 0;
  for (auto& comp : dia.components)
    if (comp.size() == 1 && dia.edge_ports[comp[0]][0].crossing < 0) out.unknot_components++;

  std::vector<std::array<int, 4>> port_newedge(old_n, {-1, -1, -1, -1});
  std::vector<std::array<bool, 4>> port_is_arrival(old_n, {false, false, false, false});
  int next_label = 1;
  for (int j0 = 0; j0 < old_n; ++j0) {
    if (j0 == k) continue;
    for (int p0 = 0; p0 < 4; ++p0) {
      if (port_newedge[j0][p0] >= 0) continue;
      // start a strand: treat {j0,p0} as an arrival, walk until back
      Port arrive{j0, p0};
      do {
        port_is_arrival[arrive.crossing][arrive.pos] = true;
        Port depart{arrive.crossing, arrive.pos ^ 2};
        auto next = follow(depart);
        if (!next) throw KhError("internal: strand lost in smoothing");
        int lbl = next_label++;
        port_newedge[depart.crossing][depart.pos] = lbl;
        port_newedge[next->crossing][next->pos] = lbl;
        arrive = *next;
      } while (!(arrive == Port{j0, p0}));
    }
  }
  // closed loops living entirely at the smoothed crossing
  {
    std::set<int> seen_ports;
    for (int p0 = 0; p0 < 4; ++p0) {
      if (seen_ports.count(p0)) continue;
      // does this port's strand segment stay away from surviving crossings?
      Port p{k, p0};
      bool loop = true;
      std::vector<int> trail{p0};
      Port cur = junction_partner(p);
      for (;;) {
        trail.push_back(cur.pos);
        int e = dia.edge_at(cur);
        Port q = other_port(e, cur);
        if (q.crossing != k) {
          loop = false;
          break;
        }
        trail.push_back(q.pos);
        if (q.pos == p0) break;
        cur = junction_partner(q);
      }
      if (loop) {
        for (int t : trail) seen_ports.insert(t);
        out.unknot_components++;
      } else {
        seen_ports.insert(p0);
      }
    }
    // each loop was traced from both of its junction sides; halve
    // (a loop covers an even number of ports and was counted twice only if
    // discovered from two distinct start ports -- the seen_ports set prevents that)
  }

  for (int j = 0; j < old_n; ++j) {
    if (j == k) continue;
    // rotate so the under-in (arrival on the under pair) sits first
    int rot = port_is_arrival[j][0] ? 0 : 2;
    if (!port_is_arrival[j][rot]) throw KhError("internal: under strand lost in smoothing");
    PdCrossing x;
    for (int p = 0; p < 4; ++p) x.e[p] = port_newedge[j][(p + rot) & 3];
    out.crossings[new_index[j]] = x;
  }
  pd_detail::validate(out);
  return orient_and_sign(out);
}

// Genus of the surface determined by the rotation system, summed over
// connected components; a diagram drawn in the plane yields 0.
inline int rotation_genus(const LinkDiagram& dia) {
  int nc = dia.num_crossings();
  if (nc == 0) return 0;
  // connected components of the 4-valent graph
  std::vector<int> comp(nc, -1);
  int ncomp = 0;
  for (int s = 0; s < nc; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> stack{s};
    comp[s] = ncomp;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int p = 0; p < 4; ++p) {
        int e = dia.crossings[x].edge[p];
        for (auto port : dia.edge_ports[e]) {
          if (port.crossing >= 0 && comp[port.crossing] < 0) {
            comp[port.crossing] = ncomp;
            stack.push_back(port.crossing);
          }
        }
      }
    }
    ++ncomp;
  }
  // faces: orbits of sigma∘alpha on darts; sigma = ccw rotation (a,b,c,d)
  auto dart_id = [&](Port p) { return 4 * p.crossing + p.pos; };
  std::vector<int> alpha(4 * nc, -1);
  for (int e = 0; e < dia.num_edges(); ++e) {
    auto [t, h] = std::pair{dia.edge_ports[e][0], dia.edge_ports[e][1]};
    if (t.crossing < 0) continue;
    alpha[dart_id(t)] = dart_id(h);
    alpha[dart_id(h)] = dart_id(t);
  }
  std::vector<int> edges_in(ncomp, 0), verts_in(ncomp, 0), faces_in(ncomp, 0);
  for (int x = 0; x < nc; ++x) verts_in[comp[x]]++;
  for (int e = 0; e < dia.num_edges(); ++e)
    if (dia.edge_ports[e][0].crossing >= 0) edges_in[comp[dia.edge_ports[e][0].crossing]]++;
  std::vector<bool> seen(4 * nc, false);
  for (int d0 = 0; d0 < 4 * nc; ++d0) {
    if (seen[d0]) continue;
    int d = d0;
    do {
      seen[d] = true;
      int a = alpha[d];
      d = (a & ~3) | (((a & 3) + 1) & 3);  // sigma: next position ccw
    } while (d != d0);
    faces_in[comp[d0 / 4]]++;
  }
  int genus = 0;
  for (int i = 0; i < ncomp; ++i) {
    int chi = verts_in[i] - edges_in[i] + faces_in[i];
    genus += (2 - chi) / 2;
  }
  return genus;
}

}  // namespace khoflow
