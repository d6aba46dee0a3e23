#pragma once

// Decorated 4-valent plane graphs: the diagrams Reidemeister moves act on.
//
// Each crossing has four dart slots in counterclockwise rotation order
// 0,1,2,3.  One strand runs through slots {0,2}, the other through {1,3}.
// Darts are numbered 4*crossing + slot; `mate` is the edge involution.
// Decorations: which strand is the over-strand, and the direction of each
// strand (which of its two slots is the exit).  Crossing-free components are
// a bare count of free loops.

#include "gridforge/grid.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

namespace gridforge {

struct PlanarError : std::runtime_error {
  std::string code;
  PlanarError(std::string c, const std::string& msg)
      : std::runtime_error(c + ": " + msg), code(std::move(c)) {}
};

struct PCrossing {
  bool over02 = false;  // strand through slots {0,2} is the over-strand
  bool out0 = true;     // strand {0,2} exits at slot 0
  bool out1 = true;     // strand {1,3} exits at slot 1

  bool operator==(const PCrossing&) const = default;
};

struct PlanarDiagram {
  std::vector<PCrossing> cr;
  std::vector<int> mate;  // dart -> dart, involution without fixed points
  long free_loops = 0;

  int crossings() const { return int(cr.size()); }
  int darts() const { return int(mate.size()); }

  static int vtx(int d) { return d >> 2; }
  static int slot(int d) { return d & 3; }
  static int dart(int v, int s) { return 4 * v + s; }
  static int through(int d) { return d ^ 2; }             // same strand, opposite slot
  static int rot(int d) { return (d & ~3) | ((d + 1) & 3); }  // next CCW slot

  int face_next(int d) const { return rot(mate[d]); }     // walk with face on one side

  bool dart_is_over(int d) const {
    bool s02 = (slot(d) & 1) == 0;
    return cr[vtx(d)].over02 == s02;
  }
  bool dart_is_out(int d) const {
    const PCrossing& c = cr[vtx(d)];
    switch (slot(d)) {
      case 0: return c.out0;
      case 2: return !c.out0;
      case 1: return c.out1;
      default: return !c.out1;
    }
  }
  int out_slot02(int v) const { return cr[v].out0 ? 0 : 2; }
  int out_slot13(int v) const { return cr[v].out1 ? 1 : 3; }

  int sign(int v) const {
    int po = cr[v].over02 ? out_slot02(v) : out_slot13(v);
    int pu = cr[v].over02 ? out_slot13(v) : out_slot02(v);
    return ((po - pu) & 3) == 1 ? 1 : -1;
  }

  int writhe() const {
    int w = 0;
    for (int v = 0; v < crossings(); ++v) w += sign(v);
    return w;
  }
};

// --- structural validation ----------------------------------------------------

inline void check_planar(const PlanarDiagram& d) {
  int nd = d.darts();
  if (nd != 4 * d.crossings()) throw PlanarError("invalid-diagram", "bad mate array size");
  if (d.free_loops < 0) throw PlanarError("invalid-diagram", "negative free loop count");
  for (int i = 0; i < nd; ++i) {
    int m = d.mate[i];
    if (m < 0 || m >= nd || m == i || d.mate[m] != i)
      throw PlanarError("invalid-diagram", "mate is not a fixed-point-free involution");
  }
  // Euler formula per connected shadow component: V - E + F = 2.
  if (d.crossings() == 0) return;
  std::vector<int> comp(d.crossings(), -1);
  int ncomp = 0;
  for (int v0 = 0; v0 < d.crossings(); ++v0) {
    if (comp[v0] >= 0) continue;
    int id = ncomp++;
    std::vector<int> stack{v0};
    comp[v0] = id;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int s = 0; s < 4; ++s) {
        int w = PlanarDiagram::vtx(d.mate[PlanarDiagram::dart(v, s)]);
        if (comp[w] < 0) {
          comp[w] = id;
          stack.push_back(w);
        }
      }
    }
  }
  std::vector<int> nv(ncomp, 0), nf(ncomp, 0);
  for (int v = 0; v < d.crossings(); ++v) nv[comp[v]]++;
  std::vector<bool> seen(nd, false);
  for (int s = 0; s < nd; ++s) {
    if (seen[s]) continue;
    nf[comp[PlanarDiagram::vtx(s)]]++;
    int t = s;
    do {
      seen[t] = true;
      t = d.face_next(t);
    } while (t != s);
  }
  for (int i = 0; i < ncomp; ++i)
    if (nv[i] - 2 * nv[i] + nf[i] != 2)
      throw PlanarError("inconsistent-embedding",
                        "rotation system is not planar (Euler check failed)");
}

// --- strand components and link summary ---------------------------------------

// Orbits of the forward strand walk mate(d)^2; each closed strand gives two
// orbits (one per direction).
inline std::vector<int> strand_orbit_of_dart(const PlanarDiagram& d) {
  std::vector<int> orbit(d.darts(), -1);
  int next_id = 0;
  for (int s = 0; s < d.darts(); ++s) {
    if (orbit[s] >= 0) continue;
    int id = next_id++;
    int t = s;
    do {
      orbit[t] = id;
      t = PlanarDiagram::through(d.mate[t]);
    } while (t != s);
  }
  return orbit;
}

// Link components: strand orbits with direction quotiented out.
// comp[dart] is stable under both direction and relabeling-free traversal.
inline std::vector<int> strand_component_of_dart(const PlanarDiagram& d) {
  std::vector<int> comp(d.darts(), -1);
  int next_id = 0;
  for (int s = 0; s < d.darts(); ++s) {
    if (comp[s] >= 0) continue;
    int id = next_id++;
    // walk both directions' darts: follow the strand and mark all darts on it
    std::vector<int> stack{s};
    comp[s] = id;
    while (!stack.empty()) {
      int t = stack.back();
      stack.pop_back();
      for (int u : {d.mate[t], PlanarDiagram::through(t)}) {
        if (comp[u] < 0) {
          comp[u] = id;
          stack.push_back(u);
        }
      }
    }
  }
  return comp;
}

struct LinkSummary {
  int component_count = 0;
  int writhe = 0;
  std::vector<std::vector<int>> linking_matrix;  // symmetric, diagonal zero

  bool operator==(const LinkSummary&) const = default;
};

inline LinkSummary summarize(const PlanarDiagram& d) {
  check_planar(d);
  LinkSummary s;
  std::vector<int> comp = strand_component_of_dart(d);
  int ncomp = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
  s.component_count = ncomp + int(d.free_loops);
  s.writhe = d.writhe();
  s.linking_matrix.assign(s.component_count, std::vector<int>(s.component_count, 0));
  std::vector<std::vector<int>> twice(s.component_count, std::vector<int>(s.component_count, 0));
  for (int v = 0; v < d.crossings(); ++v) {
    int ca = comp[PlanarDiagram::dart(v, 0)];
    int cb = comp[PlanarDiagram::dart(v, 1)];
    if (ca != cb) {
      twice[ca][cb] += d.sign(v);
      twice[cb][ca] += d.sign(v);
    }
  }
  for (int i = 0; i < s.component_count; ++i)
    for (int j = 0; j < s.component_count; ++j)
      s.linking_matrix[i][j] = twice[i][j] / 2;
  return s;
}

// --- canonical form -------------------------------------------------------------
//
// Equal strings exactly when the diagrams are isomorphic as decorated maps on
// the sphere: rotation system + over/under + signs (strand directions up to
// global reversal are pinned by the signs) + free-loop count.  Computed by
// minimizing a deterministic traversal code over all starting darts of each
// shadow component; component codes are sorted.

namespace canon_detail {

struct TraversalCode {
  std::vector<int32_t> code;
  std::vector<int> order;       // order[i] = internal dart for canonical dart i
  bool operator<(const TraversalCode& o) const { return code < o.code; }
};

inline TraversalCode traverse_from(const PlanarDiagram& d, int start,
                                   const std::vector<int>& comp_of_vtx, int comp_id) {
  TraversalCode out;
  std::vector<int> idx(d.crossings(), -1);   // discovery index per vertex
  std::vector<int> entry(d.crossings(), 0);  // entry slot per vertex
  std::vector<int> verts;
  idx[PlanarDiagram::vtx(start)] = 0;
  entry[PlanarDiagram::vtx(start)] = PlanarDiagram::slot(start);
  verts.push_back(PlanarDiagram::vtx(start));
  for (size_t k = 0; k < verts.size(); ++k) {
    int v = verts[k];
    for (int rel = 0; rel < 4; ++rel) {
      int dd = PlanarDiagram::dart(v, (entry[v] + rel) & 3);
      int m = d.mate[dd];
      int w = PlanarDiagram::vtx(m);
      if (idx[w] < 0) {
        idx[w] = int(verts.size());
        entry[w] = PlanarDiagram::slot(m);
        verts.push_back(w);
      }
      out.code.push_back(idx[w]);
      out.code.push_back((PlanarDiagram::slot(m) - entry[w]) & 3);
    }
    // decorations, all relative to the entry slot
    const PCrossing& c = d.cr[v];
    bool entry02 = (entry[v] & 1) == 0;
    bool over_entry_strand = (c.over02 == entry02);
    int out_entry = entry02 ? d.out_slot02(v) : d.out_slot13(v);
    int out_other = entry02 ? d.out_slot13(v) : d.out_slot02(v);
    out.code.push_back(over_entry_strand ? 1 : 0);
    out.code.push_back((out_entry - entry[v]) & 3);   // 0 or 2
    out.code.push_back((out_other - entry[v]) & 3);   // 1 or 3
    out.code.push_back(d.sign(v) > 0 ? 1 : 0);
  }
  out.order.reserve(verts.size() * 4);
  for (int v : verts)
    for (int rel = 0; rel < 4; ++rel)
      out.order.push_back(PlanarDiagram::dart(v, (entry[v] + rel) & 3));
  (void)comp_of_vtx;
  (void)comp_id;
  return out;
}

}  // namespace canon_detail

struct CanonicalForm {
  std::string text;
  // canonical dart index -> internal dart id, concatenated over sorted components
  std::vector<int> dart_of_canonical;
  std::vector<int> canonical_of_dart;
};

inline CanonicalForm canonical_form_full(const PlanarDiagram& d) {
  // shadow components of crossings
  std::vector<int> comp(d.crossings(), -1);
  int ncomp = 0;
  for (int v0 = 0; v0 < d.crossings(); ++v0) {
    if (comp[v0] >= 0) continue;
    std::vector<int> stack{v0};
    comp[v0] = ncomp;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int s = 0; s < 4; ++s) {
        int w = PlanarDiagram::vtx(d.mate[PlanarDiagram::dart(v, s)]);
        if (comp[w] < 0) {
          comp[w] = comp[v0];
          stack.push_back(w);
        }
      }
    }
    ++ncomp;
  }
  std::vector<canon_detail::TraversalCode> best(ncomp);
  std::vector<bool> have(ncomp, false);
  for (int s = 0; s < d.darts(); ++s) {
    int c = comp[PlanarDiagram::vtx(s)];
    auto t = canon_detail::traverse_from(d, s, comp, c);
    if (!have[c] || t < best[c]) {
      best[c] = std::move(t);
      have[c] = true;
    }
  }
  std::sort(best.begin(), best.end());
  CanonicalForm out;
  std::ostringstream os;
  os << "pd1:loops=" << d.free_loops << ":components=" << ncomp;
  out.canonical_of_dart.assign(d.darts(), -1);
  for (const auto& b : best) {
    os << "[";
    for (size_t i = 0; i < b.code.size(); ++i) {
      if (i) os << ",";
      os << b.code[i];
    }
    os << "]";
    for (int internal : b.order) {
      out.canonical_of_dart[internal] = int(out.dart_of_canonical.size());
      out.dart_of_canonical.push_back(internal);
    }
  }
  out.text = os.str();
  return out;
}

inline std::string canonical_form(const PlanarDiagram& d) { return canonical_form_full(d).text; }

// Reflect the diagram across a horizontal axis: rotation reverses
// (slots 1 and 3 swap), over/under is preserved, every sign flips.
inline PlanarDiagram mirror_planar(const PlanarDiagram& d) {
  auto pslot = [](int s) { return s == 1 ? 3 : (s == 3 ? 1 : s); };
  PlanarDiagram r;
  r.free_loops = d.free_loops;
  r.cr.resize(d.cr.size());
  r.mate.assign(d.mate.size(), -1);
  for (int v = 0; v < d.crossings(); ++v) {
    r.cr[v].over02 = d.cr[v].over02;
    r.cr[v].out0 = d.cr[v].out0;
    r.cr[v].out1 = !d.cr[v].out1;
    for (int s = 0; s < 4; ++s) {
      int m = d.mate[PlanarDiagram::dart(v, s)];
      r.mate[PlanarDiagram::dart(v, pslot(s))] =
          PlanarDiagram::dart(PlanarDiagram::vtx(m), pslot(PlanarDiagram::slot(m)));
    }
  }
  return r;
}

// --- PD text format -------------------------------------------------------------
//
//   PD[X(a,b,c,d;sign;over_slot), ...] LOOPS <k>
//
// a..d are positive edge labels in counterclockwise slot order, sign is the
// crossing sign, over_slot selects the over pair: 0 for slots {0,2}, 1 for
// slots {1,3}.

inline std::string emit_pd(const PlanarDiagram& d) {
  // deterministic edge labels: walk strands from the lowest unvisited dart
  std::vector<int> label(d.darts(), 0);
  int next = 1;
  for (int s = 0; s < d.darts(); ++s) {
    if (label[s]) continue;
    int t = s;
    do {
      label[t] = next;
      label[d.mate[t]] = next;
      ++next;
      t = PlanarDiagram::through(d.mate[t]);
    } while (!label[t]);
  }
  std::ostringstream os;
  os << "PD[";
  for (int v = 0; v < d.crossings(); ++v) {
    if (v) os << ", ";
    os << "X(" << label[PlanarDiagram::dart(v, 0)] << "," << label[PlanarDiagram::dart(v, 1)]
       << "," << label[PlanarDiagram::dart(v, 2)] << "," << label[PlanarDiagram::dart(v, 3)]
       << ";" << (d.sign(v) > 0 ? '+' : '-') << ";" << (d.cr[v].over02 ? 0 : 1) << ")";
  }
  os << "] LOOPS " << d.free_loops;
  return os.str();
}

struct PdParseError : std::runtime_error {
  size_t pos;
  PdParseError(size_t p, const std::string& msg)
      : std::runtime_error("syntax-error at offset " + std::to_string(p) + ": " + msg), pos(p) {}
};

PlanarDiagram parse_pd(const std::string& text);

namespace pd_detail {

struct Tok {
  const std::string& s;
  size_t i = 0;
  void ws() {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\n' || s[i] == '\r')) ++i;
  }
  bool lit(const char* t) {
    ws();
    size_t n = std::string(t).size();
    if (s.compare(i, n, t) == 0) {
      i += n;
      return true;
    }
    return false;
  }
  void expect(const char* t) {
    if (!lit(t)) throw PdParseError(i, std::string("expected '") + t + "'");
  }
  long integer() {
    ws();
    size_t j = i;
    bool neg = j < s.size() && s[j] == '-';
    if (neg) ++j;
    size_t k = j;
    while (k < s.size() && isdigit((unsigned char)s[k])) ++k;
    if (k == j) throw PdParseError(i, "expected integer");
    long v = std::stol(s.substr(j, k - j));
    i = k;
    return neg ? -v : v;
  }
  bool done() {
    ws();
    return i >= s.size();
  }
};

}  // namespace pd_detail

inline PlanarDiagram parse_pd(const std::string& text) {
  pd_detail::Tok tk{text};
  tk.expect("PD[");
  struct RawX {
    long e[4];
    int sign;
    int over_slot;
  };
  std::vector<RawX> xs;
  tk.ws();
  if (!tk.lit("]")) {
    while (true) {
      tk.expect("X(");
      RawX x{};
      for (int k = 0; k < 4; ++k) {
        x.e[k] = tk.integer();
        if (x.e[k] <= 0) throw PdParseError(tk.i, "edge labels are positive");
        tk.expect(k < 3 ? "," : ";");
      }
      if (tk.lit("+"))
        x.sign = 1;
      else if (tk.lit("-"))
        x.sign = -1;
      else
        throw PdParseError(tk.i, "expected sign + or -");
      tk.expect(";");
      long ov = tk.integer();
      if (ov != 0 && ov != 1) throw PdParseError(tk.i, "over_slot must be 0 or 1");
      x.over_slot = int(ov);
      tk.expect(")");
      xs.push_back(x);
      if (tk.lit("]")) break;
      tk.expect(",");
    }
  }
  long loops = 0;
  if (tk.lit("LOOPS")) {
    loops = tk.integer();
    if (loops < 0) throw PdParseError(tk.i, "LOOPS count must be nonnegative");
  }
  if (!tk.done()) throw PdParseError(tk.i, "trailing input");

  PlanarDiagram d;
  d.free_loops = loops;
  d.cr.resize(xs.size());
  d.mate.assign(4 * xs.size(), -1);
  std::map<long, std::vector<int>> by_label;
  for (size_t v = 0; v < xs.size(); ++v) {
    d.cr[v].over02 = (xs[v].over_slot == 0);
    for (int s = 0; s < 4; ++s) by_label[xs[v].e[s]].push_back(PlanarDiagram::dart(int(v), s));
  }
  for (const auto& [lab, ds] : by_label) {
    if (ds.size() != 2)
      throw PdParseError(0, "edge label " + std::to_string(lab) + " must occur exactly twice");
    d.mate[ds[0]] = ds[1];
    d.mate[ds[1]] = ds[0];
  }
  for (int i = 0; i < d.darts(); ++i)
    if (d.mate[i] == i)
      throw PdParseError(0, "edge label used twice in the same slot");

  // Orient strands so that every given sign is realized.
  // Within one link component the signs of self-crossings are forced; between
  // components each crossing pins the relative direction parity.
  std::vector<int> comp = strand_component_of_dart(d);
  int ncomp = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
  std::vector<int> flip(ncomp, -1);  // -1 unknown, else 0/1

  // First give every crossing a provisional orientation from a forward walk.
  std::vector<int> orbit = strand_orbit_of_dart(d);
  std::vector<char> fwd(d.darts(), 0);  // dart traversed forward in chosen orbit
  {
    std::vector<char> comp_seeded(ncomp, 0);
    for (int s = 0; s < d.darts(); ++s) {
      int c = comp[s];
      if (comp_seeded[c]) continue;
      comp_seeded[c] = 1;
      int t = s;
      do {
        fwd[t] = 1;  // dart t points forward (away from its crossing)
        t = PlanarDiagram::through(d.mate[t]);
      } while (t != s);
    }
  }
  for (int v = 0; v < int(xs.size()); ++v) {
    d.cr[v].out0 = fwd[PlanarDiagram::dart(v, 0)];
    d.cr[v].out1 = fwd[PlanarDiagram::dart(v, 1)];
  }
  // Now solve the parity constraints against the requested signs.
  std::vector<std::vector<std::pair<int, int>>> adj(ncomp);  // (other comp, parity)
  for (int v = 0; v < int(xs.size()); ++v) {
    int ca = comp[PlanarDiagram::dart(v, 0)];
    int cb = comp[PlanarDiagram::dart(v, 1)];
    int provisional = d.sign(v);
    int need_flip = (provisional == xs[v].sign) ? 0 : 1;
    if (ca == cb) {
      if (need_flip)
        throw PlanarError("inconsistent-signs",
                          "self-crossing sign is not realizable by any orientation");
    } else {
      adj[ca].push_back({cb, need_flip});
      adj[cb].push_back({ca, need_flip});
    }
  }
  for (int c0 = 0; c0 < ncomp; ++c0) {
    if (flip[c0] >= 0) continue;
    flip[c0] = 0;
    std::vector<int> stack{c0};
    while (!stack.empty()) {
      int c = stack.back();
      stack.pop_back();
      for (auto [o, par] : adj[c]) {
        int want = flip[c] ^ par;
        if (flip[o] < 0) {
          flip[o] = want;
          stack.push_back(o);
        } else if (flip[o] != want) {
          throw PlanarError("inconsistent-signs", "crossing signs admit no orientation");
        }
      }
    }
  }
  for (int v = 0; v < int(xs.size()); ++v) {
    if (flip[comp[PlanarDiagram::dart(v, 0)]]) d.cr[v].out0 = !d.cr[v].out0;
    if (flip[comp[PlanarDiagram::dart(v, 1)]]) d.cr[v].out1 = !d.cr[v].out1;
  }
  for (int v = 0; v < int(xs.size()); ++v)
    if (d.sign(v) != xs[v].sign)
      throw PlanarError("inconsistent-signs", "crossing signs admit no orientation");
  check_planar(d);
  return d;
}

}  // namespace gridforge
