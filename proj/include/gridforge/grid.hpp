#pragma once

// Rectangular (grid) diagrams: n horizontal arcs, n vertical arcs, one per
// row and column, vertical always crossing over horizontal, no two arcs
// collinear.  Rows and columns are stored as index spans; all moves are
// span arithmetic.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace gridforge {

struct GridError : std::runtime_error {
  std::string code;
  GridError(std::string c, const std::string& msg)
      : std::runtime_error(c + ": " + msg), code(std::move(c)) {}
};

struct Span {
  int lo = 0, hi = 0;  // lo < hi in a valid diagram

  Span() = default;
  Span(int a, int b) : lo(std::min(a, b)), hi(std::max(a, b)) {}

  bool contains_strictly(int x) const { return lo < x && x < hi; }
  bool has_end(int x) const { return lo == x || hi == x; }
  int other_end(int x) const { return lo == x ? hi : lo; }
  bool operator==(const Span&) const = default;
};

// Exactly one of {c,d} strictly inside (a,b); nested and disjoint pairs are
// non-interleaved.
inline bool interleaved(const Span& s, const Span& t) {
  int k = (s.contains_strictly(t.lo) ? 1 : 0) + (s.contains_strictly(t.hi) ? 1 : 0);
  return k == 1;
}

struct Violation {
  std::string code;
  std::string message;
  int row = -1, col = -1;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

struct RectangularDiagram {
  int n = 0;
  std::vector<Span> rows;  // rows[r]: column span of the horizontal arc in row r
  std::vector<Span> cols;  // cols[c]: row span of the vertical arc in column c

  bool operator==(const RectangularDiagram&) const = default;
};

inline ValidationReport validate(const RectangularDiagram& d) {
  ValidationReport rep;
  auto add = [&](const char* code, const std::string& msg, int r, int c) {
    rep.violations.push_back({code, msg, r, c});
  };
  if (d.n <= 0 || int(d.rows.size()) != d.n || int(d.cols.size()) != d.n) {
    add("shape", "need n rows and n columns with n >= 1", -1, -1);
    return rep;
  }
  for (int r = 0; r < d.n; ++r) {
    const Span& s = d.rows[r];
    if (s.lo < 0 || s.hi >= d.n)
      add("range", "row span out of range", r, -1);
    else if (s.lo == s.hi)
      add("degenerate", "row arc must join distinct columns", r, -1);
  }
  for (int c = 0; c < d.n; ++c) {
    const Span& s = d.cols[c];
    if (s.lo < 0 || s.hi >= d.n)
      add("range", "column span out of range", -1, c);
    else if (s.lo == s.hi)
      add("degenerate", "column arc must join distinct rows", -1, c);
  }
  if (!rep.ok()) return rep;
  // Endpoint duality: (r,c) ends the row-r arc iff it ends the column-c arc.
  for (int r = 0; r < d.n; ++r)
    for (int end : {d.rows[r].lo, d.rows[r].hi})
      if (!d.cols[end].has_end(r))
        add("endpoint duality", "row endpoint not matched by column arc", r, end);
  for (int c = 0; c < d.n; ++c)
    for (int end : {d.cols[c].lo, d.cols[c].hi})
      if (!d.rows[end].has_end(c))
        add("endpoint duality", "column endpoint not matched by row arc", end, c);
  return rep;
}

inline void require_valid(const RectangularDiagram& d) {
  auto rep = validate(d);
  if (!rep.ok())
    throw GridError("invalid-diagram", rep.violations.front().code + " (" +
                                           rep.violations.front().message + ")");
}

// Grid vertices (arc corners) as (row, col), each shared by one row arc and
// one column arc.
inline std::vector<std::pair<int, int>> vertices_of(const RectangularDiagram& d) {
  std::vector<std::pair<int, int>> v;
  for (int r = 0; r < d.n; ++r) {
    v.push_back({r, d.rows[r].lo});
    v.push_back({r, d.rows[r].hi});
  }
  std::sort(v.begin(), v.end());
  return v;
}

// Connected components of the arc structure; returns one representative
// vertex per component (lexicographically least) and a component id per row.
struct GridComponents {
  int count = 0;
  std::vector<int> row_comp;  // per row index
  std::vector<int> col_comp;  // per column index
};

inline GridComponents grid_components(const RectangularDiagram& d) {
  GridComponents g;
  g.row_comp.assign(d.n, -1);
  g.col_comp.assign(d.n, -1);
  for (int r0 = 0; r0 < d.n; ++r0) {
    if (g.row_comp[r0] >= 0) continue;
    int id = g.count++;
    // walk the cycle: row -> column (at hi end) -> row -> ...
    int r = r0, enter_col = d.rows[r0].lo;
    do {
      g.row_comp[r] = id;
      int c = (d.rows[r].lo == enter_col) ? d.rows[r].hi : d.rows[r].lo;
      g.col_comp[c] = id;
      int r2 = d.cols[c].other_end(r);
      enter_col = c;
      r = r2;
    } while (r != r0 || enter_col != d.rows[r0].lo);
  }
  return g;
}

inline RectangularDiagram transpose(const RectangularDiagram& d) {
  RectangularDiagram t;
  t.n = d.n;
  t.rows = d.cols;
  t.cols = d.rows;
  return t;
}

// Reflect left-right: column c -> n-1-c.  Flips every crossing.
inline RectangularDiagram mirror(const RectangularDiagram& d) {
  RectangularDiagram m;
  m.n = d.n;
  m.rows.resize(d.n);
  m.cols.resize(d.n);
  for (int r = 0; r < d.n; ++r)
    m.rows[r] = Span(d.n - 1 - d.rows[r].lo, d.n - 1 - d.rows[r].hi);
  for (int c = 0; c < d.n; ++c) m.cols[d.n - 1 - c] = d.cols[c];
  return m;
}

// --- text format -------------------------------------------------------------
//
//   GRID <n>
//   R <r> <c1> <c2>     (n lines, r = 0..n-1)
//   C <c> <r1> <r2>     (n lines, c = 0..n-1)

inline std::string emit_grid(const RectangularDiagram& d) {
  std::ostringstream os;
  os << "GRID " << d.n << "\n";
  for (int r = 0; r < d.n; ++r)
    os << "R " << r << " " << d.rows[r].lo << " " << d.rows[r].hi << "\n";
  for (int c = 0; c < d.n; ++c)
    os << "C " << c << " " << d.cols[c].lo << " " << d.cols[c].hi << "\n";
  return os.str();
}

struct ParseError : std::runtime_error {
  int line;
  ParseError(int ln, const std::string& msg)
      : std::runtime_error("syntax-error at line " + std::to_string(ln) + ": " + msg), line(ln) {}
};

inline RectangularDiagram parse_grid(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(is, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) return true;
    }
    return false;
  };
  if (!next_line()) throw ParseError(1, "empty input");
  std::istringstream hd(line);
  std::string tag;
  int n = 0;
  if (!(hd >> tag >> n) || tag != "GRID" || n <= 0)
    throw ParseError(lineno, "expected 'GRID <n>'");
  RectangularDiagram d;
  d.n = n;
  d.rows.assign(n, Span());
  d.cols.assign(n, Span());
  std::vector<bool> seen_r(n, false), seen_c(n, false);
  for (int i = 0; i < 2 * n; ++i) {
    if (!next_line()) throw ParseError(lineno + 1, "unexpected end of input");
    std::istringstream ls(line);
    std::string kind;
    int idx, a, b;
    if (!(ls >> kind >> idx >> a >> b) || (kind != "R" && kind != "C"))
      throw ParseError(lineno, "expected 'R <r> <c1> <c2>' or 'C <c> <r1> <r2>'");
    std::string extra;
    if (ls >> extra) throw ParseError(lineno, "trailing tokens");
    if (idx < 0 || idx >= n) throw ParseError(lineno, "index out of range");
    if (kind == "R") {
      if (seen_r[idx]) throw ParseError(lineno, "duplicate row");
      seen_r[idx] = true;
      d.rows[idx] = Span(a, b);
    } else {
      if (seen_c[idx]) throw ParseError(lineno, "duplicate column");
      seen_c[idx] = true;
      d.cols[idx] = Span(a, b);
    }
  }
  return d;
}

// --- standard families -------------------------------------------------------

// Marker-pair constructor: row r joins columns (x[r], o[r]); the columns are
// recovered from the same markers.
inline RectangularDiagram grid_from_markers(const std::vector<int>& xcol,
                                            const std::vector<int>& ocol) {
  int n = int(xcol.size());
  RectangularDiagram d;
  d.n = n;
  d.rows.resize(n);
  std::vector<std::vector<int>> colrows(n);
  for (int r = 0; r < n; ++r) {
    d.rows[r] = Span(xcol[r], ocol[r]);
    colrows[xcol[r]].push_back(r);
    colrows[ocol[r]].push_back(r);
  }
  d.cols.resize(n);
  for (int c = 0; c < n; ++c) {
    if (colrows[c].size() != 2)
      throw GridError("invalid-parameters", "markers must hit each column twice");
    d.cols[c] = Span(colrows[c][0], colrows[c][1]);
  }
  return d;
}

// Standard torus link grid: arc index |p| + q, with exactly q(|p|-1)
// crossings, all of one sign.  p < 0 gives the mirror.
inline RectangularDiagram torus_knot_grid(int p, int q) {
  if (p == 0 || q < std::abs(p))
    throw GridError("invalid-parameters", "need p != 0 and q >= |p|");
  int ap = std::abs(p);
  int n = ap + q;
  std::vector<int> xcol(n), ocol(n);
  for (int r = 0; r < n; ++r) {
    ocol[r] = r;
    xcol[r] = (r + ap) % n;
  }
  RectangularDiagram d = grid_from_markers(xcol, ocol);
  return p > 0 ? d : mirror(d);
}

// The standard alternating 4-crossing diagram on a 6x6 grid.
inline RectangularDiagram figure_eight_grid() {
  // verified against the bundled 4-crossing alternating planar diagram
  return grid_from_markers({0, 2, 1, 4, 3, 5}, {4, 5, 3, 2, 0, 1});
}

// Smallest grid: a 2x2 square, the 0-crossing unknot.
inline RectangularDiagram square_grid() {
  return grid_from_markers({0, 0}, {1, 1});
}

}  // namespace gridforge
