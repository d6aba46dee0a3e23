#pragma once

// The move calculus on rectangular diagrams: cyclic permutation,
// stabilisation, destabilisation, exchange, and generalised exchange.

#include "gridforge/grid.hpp"

#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace gridforge {

struct MoveError : std::runtime_error {
  std::string code;
  MoveError(std::string c, const std::string& msg)
      : std::runtime_error(c + ": " + msg), code(std::move(c)) {}
};

enum class MoveKind {
  CyclicPermRows,
  CyclicPermCols,
  Stabilize,
  Destabilize,
  Exchange,
  GeneralizedExchange,
};

// Stabilisation variants: compass placement of the inserted row/column
// around the chosen vertex.  N = new row above, S = below; E = new column
// to the right, W = to the left.
enum class StabVariant { NE, NW, SW, SE };

inline const char* stab_variant_name(StabVariant v) {
  switch (v) {
    case StabVariant::NE: return "NE";
    case StabVariant::NW: return "NW";
    case StabVariant::SW: return "SW";
    default: return "SE";
  }
}

struct GridMove {
  MoveKind kind = MoveKind::Exchange;
  bool on_rows = true;               // Exchange / CyclicPerm axis
  int shift = 0;                     // CyclicPerm
  int index = 0;                     // Exchange: swaps index, index+1
  int r = 0, c = 0;                  // Stabilize vertex / Destabilize block corner
  StabVariant variant = StabVariant::NE;
  int s1 = 0, s2 = 0, s3 = 0, t1 = 0, t2 = 0;  // GeneralizedExchange cuts

  bool operator==(const GridMove&) const = default;
};

inline GridMove exchange_rows(int i) { return {MoveKind::Exchange, true, 0, i}; }
inline GridMove exchange_cols(int i) { return {MoveKind::Exchange, false, 0, i}; }
inline GridMove cyclic_rows(int k) { return {MoveKind::CyclicPermRows, true, k}; }
inline GridMove cyclic_cols(int k) { return {MoveKind::CyclicPermCols, false, k}; }

inline GridMove stabilize_at(int r, int c, StabVariant v) {
  GridMove m;
  m.kind = MoveKind::Stabilize;
  m.r = r;
  m.c = c;
  m.variant = v;
  return m;
}

inline GridMove destabilize_at(int r, int c) {
  GridMove m;
  m.kind = MoveKind::Destabilize;
  m.r = r;
  m.c = c;
  return m;
}

inline GridMove generalized_exchange(int s1, int s2, int s3, int t1, int t2) {
  GridMove m;
  m.kind = MoveKind::GeneralizedExchange;
  m.s1 = s1;
  m.s2 = s2;
  m.s3 = s3;
  m.t1 = t1;
  m.t2 = t2;
  return m;
}

// --- move text format ---------------------------------------------------------
//   X R 3        exchange rows 3,4
//   X C 0        exchange columns 0,1
//   CP R 2       cyclic shift of rows by 2
//   CP C -1
//   S NE 4 2     stabilize at vertex (4,2), new row above / new column right
//   D 1 3        destabilize the 2x2 block with lower-left gap corner (1,3)
//   GX 1 2 4 0 3 generalized exchange with column cuts 1,2,4 and row cuts 0,3

inline std::string emit_move(const GridMove& m) {
  std::ostringstream os;
  switch (m.kind) {
    case MoveKind::Exchange: os << "X " << (m.on_rows ? "R" : "C") << " " << m.index; break;
    case MoveKind::CyclicPermRows: os << "CP R " << m.shift; break;
    case MoveKind::CyclicPermCols: os << "CP C " << m.shift; break;
    case MoveKind::Stabilize:
      os << "S " << stab_variant_name(m.variant) << " " << m.r << " " << m.c;
      break;
    case MoveKind::Destabilize: os << "D " << m.r << " " << m.c; break;
    case MoveKind::GeneralizedExchange:
      os << "GX " << m.s1 << " " << m.s2 << " " << m.s3 << " " << m.t1 << " " << m.t2;
      break;
  }
  return os.str();
}

inline GridMove parse_move(const std::string& line) {
  std::istringstream is(line);
  std::string tag;
  if (!(is >> tag)) throw MoveError("syntax-error", "empty move line");
  auto want_int = [&](const char* what) {
    int v;
    if (!(is >> v)) throw MoveError("syntax-error", std::string("expected ") + what);
    return v;
  };
  auto axis = [&]() {
    std::string a;
    if (!(is >> a) || (a != "R" && a != "C")) throw MoveError("syntax-error", "expected R or C");
    return a == "R";
  };
  GridMove m;
  if (tag == "X") {
    m.kind = MoveKind::Exchange;
    m.on_rows = axis();
    m.index = want_int("index");
  } else if (tag == "CP") {
    bool rows = axis();
    m.kind = rows ? MoveKind::CyclicPermRows : MoveKind::CyclicPermCols;
    m.on_rows = rows;
    m.shift = want_int("shift");
  } else if (tag == "S") {
    std::string v;
    if (!(is >> v)) throw MoveError("syntax-error", "expected variant");
    if (v == "NE") m.variant = StabVariant::NE;
    else if (v == "NW") m.variant = StabVariant::NW;
    else if (v == "SW") m.variant = StabVariant::SW;
    else if (v == "SE") m.variant = StabVariant::SE;
    else throw MoveError("syntax-error", "unknown stabilization variant " + v);
    m.kind = MoveKind::Stabilize;
    m.r = want_int("row");
    m.c = want_int("col");
  } else if (tag == "D") {
    m.kind = MoveKind::Destabilize;
    m.r = want_int("row");
    m.c = want_int("col");
  } else if (tag == "GX") {
    m.kind = MoveKind::GeneralizedExchange;
    m.s1 = want_int("s1");
    m.s2 = want_int("s2");
    m.s3 = want_int("s3");
    m.t1 = want_int("t1");
    m.t2 = want_int("t2");
  } else {
    throw MoveError("syntax-error", "unknown move tag " + tag);
  }
  std::string extra;
  if (is >> extra) throw MoveError("syntax-error", "trailing tokens");
  return m;
}

// --- apply ----------------------------------------------------------------------

namespace move_detail {

inline RectangularDiagram apply_exchange(const RectangularDiagram& d, bool on_rows, int i) {
  const RectangularDiagram& v = d;
  if (i < 0 || i + 1 >= v.n)
    throw MoveError("precondition-violated", "exchange index out of range");
  const Span& a = on_rows ? v.rows[i] : v.cols[i];
  const Span& b = on_rows ? v.rows[i + 1] : v.cols[i + 1];
  if (interleaved(a, b))
    throw MoveError("precondition-violated", "exchanged arcs must not be interleaved");
  RectangularDiagram out = v;
  auto remap = [&](int x) { return x == i ? i + 1 : (x == i + 1 ? i : x); };
  if (on_rows) {
    std::swap(out.rows[i], out.rows[i + 1]);
    for (int c = 0; c < v.n; ++c) out.cols[c] = Span(remap(v.cols[c].lo), remap(v.cols[c].hi));
  } else {
    std::swap(out.cols[i], out.cols[i + 1]);
    for (int r = 0; r < v.n; ++r) out.rows[r] = Span(remap(v.rows[r].lo), remap(v.rows[r].hi));
  }
  return out;
}

inline RectangularDiagram apply_cyclic(const RectangularDiagram& d, bool on_rows, int k) {
  int n = d.n;
  int kk = ((k % n) + n) % n;
  RectangularDiagram out;
  out.n = n;
  out.rows.resize(n);
  out.cols.resize(n);
  if (on_rows) {
    for (int r = 0; r < n; ++r) out.rows[(r + kk) % n] = d.rows[r];
    for (int c = 0; c < n; ++c)
      out.cols[c] = Span((d.cols[c].lo + kk) % n, (d.cols[c].hi + kk) % n);
  } else {
    for (int c = 0; c < n; ++c) out.cols[(c + kk) % n] = d.cols[c];
    for (int r = 0; r < n; ++r)
      out.rows[r] = Span((d.rows[r].lo + kk) % n, (d.rows[r].hi + kk) % n);
  }
  return out;
}

inline RectangularDiagram apply_stabilize(const RectangularDiagram& d, int r, int c,
                                          StabVariant variant) {
  if (r < 0 || r >= d.n || c < 0 || c >= d.n)
    throw MoveError("precondition-violated", "vertex out of range");
  if (!d.rows[r].has_end(c) || !d.cols[c].has_end(r))
    throw MoveError("precondition-violated", "(r,c) is not a vertex of the diagram");
  bool above = variant == StabVariant::NE || variant == StabVariant::NW;
  bool right = variant == StabVariant::NE || variant == StabVariant::SE;
  int n = d.n;
  // new row slot: above -> r+1, below -> r; new column: right -> c+1, left -> c
  int nr = above ? r + 1 : r;
  int nc = right ? c + 1 : c;
  auto rmap = [&](int x) { return x >= nr ? x + 1 : x; };
  auto cmap = [&](int x) { return x >= nc ? x + 1 : x; };
  RectangularDiagram out;
  out.n = n + 1;
  out.rows.resize(n + 1);
  out.cols.resize(n + 1);
  for (int i = 0; i < n; ++i)
    out.rows[rmap(i)] = Span(cmap(d.rows[i].lo), cmap(d.rows[i].hi));
  for (int j = 0; j < n; ++j)
    out.cols[cmap(j)] = Span(rmap(d.cols[j].lo), rmap(d.cols[j].hi));
  int R = rmap(r), C = cmap(c);      // old vertex position in the larger grid
  int TR = above ? R + 1 : R - 1;    // inserted row
  int TC = right ? C + 1 : C - 1;    // inserted column
  // reroute the corner: row arc now ends at TC, column arc at TR, and the
  // inserted tiny arcs bridge them
  Span& row = out.rows[R];
  row = (row.lo == C) ? Span(TC, row.hi) : Span(row.lo, TC);
  Span& col = out.cols[C];
  col = (col.lo == R) ? Span(TR, col.hi) : Span(col.lo, TR);
  out.rows[TR] = Span(TC, C);
  out.cols[TC] = Span(TR, R);
  return out;
}

// The four corners of the 2x2 block rows {r,r+1} x cols {c,c+1} hold a tiny
// row arc and a tiny column arc exactly when the block came from a
// stabilisation; collapse it.
inline RectangularDiagram apply_destabilize(const RectangularDiagram& d, int r, int c) {
  if (r < 0 || r + 1 >= d.n || c < 0 || c + 1 >= d.n)
    throw MoveError("precondition-violated", "block out of range");
  if (d.n <= 2) throw MoveError("precondition-violated", "arc index would drop below 2");
  int tiny_row = -1, tiny_col = -1;
  for (int rr : {r, r + 1})
    if (d.rows[rr] == Span(c, c + 1)) tiny_row = rr;
  for (int cc : {c, c + 1})
    if (d.cols[cc] == Span(r, r + 1)) tiny_col = cc;
  if (tiny_row < 0 || tiny_col < 0)
    throw MoveError("destabilize-pattern-absent", "no stabilisation pattern in this block");
  // the long arcs attached to the pattern
  int long_row = (tiny_row == r) ? r + 1 : r;        // row whose arc ends at tiny_col
  int long_col = (tiny_col == c) ? c + 1 : c;        // column whose arc ends at tiny_row
  if (!d.rows[long_row].has_end(tiny_col) || !d.cols[long_col].has_end(tiny_row))
    throw MoveError("destabilize-pattern-absent", "block corners do not close up");
  RectangularDiagram out;
  int n = d.n;
  auto rmap = [&](int x) { return x > tiny_row ? x - 1 : x; };
  auto cmap = [&](int x) { return x > tiny_col ? x - 1 : x; };
  out.n = n - 1;
  out.rows.resize(n - 1);
  out.cols.resize(n - 1);
  for (int i = 0; i < n; ++i) {
    if (i == tiny_row) continue;
    Span s = d.rows[i];
    if (i == long_row) s = (s.lo == tiny_col) ? Span(long_col, s.hi) : Span(s.lo, long_col);
    out.rows[rmap(i)] = Span(cmap(s.lo), cmap(s.hi));
  }
  for (int j = 0; j < n; ++j) {
    if (j == tiny_col) continue;
    Span s = d.cols[j];
    if (j == long_col) s = (s.lo == tiny_row) ? Span(long_row, s.hi) : Span(s.lo, long_row);
    out.cols[cmap(j)] = Span(rmap(s.lo), rmap(s.hi));
  }
  if (!validate(out).ok())
    throw MoveError("destabilize-pattern-absent", "collapse does not yield a valid grid");
  return out;
}

// Column-block swap with the angular-cut legality conditions.
inline void check_generalized(const RectangularDiagram& d, const GridMove& m) {
  int n = d.n;
  if (!(0 < m.s1 && m.s1 <= m.s2 && m.s2 <= m.s3 && m.s3 < n))
    throw MoveError("precondition-violated", "need column cuts 0 < s1 <= s2 <= s3 < n");
  if (!(0 <= m.t1 && m.t1 < m.t2 && m.t2 < n))
    throw MoveError("precondition-violated", "need row cuts 0 <= t1 < t2 < n");
  auto inside = [](int x, int a, int b) { return a <= x && x < b; };  // vertex in cut range
  for (int r = 0; r < n; ++r) {
    bool in_band = inside(r, m.t1, m.t2);
    int a = in_band ? m.s2 : m.s1;
    int b = in_band ? m.s3 : m.s2;
    int cnt = (inside(d.rows[r].lo, a, b) ? 1 : 0) + (inside(d.rows[r].hi, a, b) ? 1 : 0);
    if (cnt == 1)
      throw MoveError("precondition-violated",
                      "row " + std::to_string(r) + " interleaves the " +
                          (in_band ? std::string("{s2,s3}") : std::string("{s1,s2}")) + " cuts");
  }
}

inline std::vector<int> generalized_perm(int n, const GridMove& m) {
  std::vector<int> perm(n);  // old column index -> new column index
  int q = m.s3 - m.s2;       // size of the second block
  for (int cc = 0; cc < n; ++cc) {
    if (cc < m.s1 || cc >= m.s3) perm[cc] = cc;
    else if (cc < m.s2) perm[cc] = cc + q;        // first block shifts right
    else perm[cc] = cc - (m.s2 - m.s1);           // second block shifts left
  }
  return perm;
}

inline RectangularDiagram apply_generalized(const RectangularDiagram& d, const GridMove& m) {
  check_generalized(d, m);
  std::vector<int> perm = generalized_perm(d.n, m);
  RectangularDiagram out;
  out.n = d.n;
  out.rows.resize(d.n);
  out.cols.resize(d.n);
  for (int c = 0; c < d.n; ++c) out.cols[perm[c]] = d.cols[c];
  for (int r = 0; r < d.n; ++r)
    out.rows[r] = Span(perm[d.rows[r].lo], perm[d.rows[r].hi]);
  return out;
}

}  // namespace move_detail

inline RectangularDiagram apply(const RectangularDiagram& d, const GridMove& m) {
  require_valid(d);
  RectangularDiagram out;
  switch (m.kind) {
    case MoveKind::Exchange:
      out = move_detail::apply_exchange(d, m.on_rows, m.index);
      break;
    case MoveKind::CyclicPermRows:
      out = move_detail::apply_cyclic(d, true, m.shift);
      break;
    case MoveKind::CyclicPermCols:
      out = move_detail::apply_cyclic(d, false, m.shift);
      break;
    case MoveKind::Stabilize:
      out = move_detail::apply_stabilize(d, m.r, m.c, m.variant);
      break;
    case MoveKind::Destabilize:
      out = move_detail::apply_destabilize(d, m.r, m.c);
      break;
    case MoveKind::GeneralizedExchange:
      out = move_detail::apply_generalized(d, m);
      break;
  }
  require_valid(out);
  return out;
}

// --- legal move enumeration ------------------------------------------------------

struct LegalMoves {
  std::vector<GridMove> moves;   // exchanges, destabilizations, unit cyclic shifts
  int stabilize_count = 0;       // always-legal stabilizations, 4 per vertex
};

inline LegalMoves legal_moves(const RectangularDiagram& d) {
  require_valid(d);
  LegalMoves out;
  for (int i = 0; i + 1 < d.n; ++i) {
    if (!interleaved(d.rows[i], d.rows[i + 1])) out.moves.push_back(exchange_rows(i));
    if (!interleaved(d.cols[i], d.cols[i + 1])) out.moves.push_back(exchange_cols(i));
  }
  if (d.n >= 3) {
    for (int r = 0; r + 1 < d.n; ++r)
      for (int c = 0; c + 1 < d.n; ++c) {
        try {
          move_detail::apply_destabilize(d, r, c);
          out.moves.push_back(destabilize_at(r, c));
        } catch (const MoveError&) {
        }
      }
  }
  out.moves.push_back(cyclic_rows(1));
  out.moves.push_back(cyclic_cols(1));
  if (d.n > 2) {
    out.moves.push_back(cyclic_rows(-1));
    out.moves.push_back(cyclic_cols(-1));
  }
  out.stabilize_count = 8 * d.n;  // 2n vertices, 4 variants each
  return out;
}

// --- generalized exchange decomposition ------------------------------------------

namespace move_detail {

// Working state for the decomposition: the evolving grid, the original
// identity of the column at each position, and the row permutation incurred
// by assisting row exchanges (undone before the route finishes).
struct ColTracker {
  RectangularDiagram g;
  std::vector<int> ident;   // ident[pos] = original column index
  std::vector<int> rident;  // rident[pos] = original row index
  std::vector<GridMove> out;

  explicit ColTracker(const RectangularDiagram& d) : g(d), ident(d.n), rident(d.n) {
    for (int i = 0; i < d.n; ++i) ident[i] = rident[i] = i;
  }

  int position_of(int orig) const {
    for (int i = 0; i < g.n; ++i)
      if (ident[i] == orig) return i;
    return -1;
  }

  void do_row_exchange(int k) {
    g = apply(g, exchange_rows(k));
    out.push_back(exchange_rows(k));
    std::swap(rident[k], rident[k + 1]);
  }

  void do_col_exchange(int j) {
    g = apply(g, exchange_cols(j));
    out.push_back(exchange_cols(j));
    std::swap(ident[j], ident[j + 1]);
  }

  // Exchange columns j, j+1; when blocked, apply a short sequence of
  // assisting row exchanges found by breadth-first search.  Assists stay in
  // force and are unwound by restore_rows() at the end of the route.
  bool col_exchange(int j) {
    if (!interleaved(g.cols[j], g.cols[j + 1])) {
      do_col_exchange(j);
      return true;
    }
    struct Node {
      RectangularDiagram g;
      std::vector<int> seq;
    };
    std::vector<Node> frontier{{g, {}}};
    std::vector<std::string> seen{emit_grid(g)};
    for (int depth = 1; depth <= 4; ++depth) {
      std::vector<Node> next;
      for (const auto& node : frontier) {
        for (int k = 0; k + 1 < g.n; ++k) {
          if (interleaved(node.g.rows[k], node.g.rows[k + 1])) continue;
          Node cand{apply(node.g, exchange_rows(k)), node.seq};
          cand.seq.push_back(k);
          std::string key = emit_grid(cand.g);
          if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
          seen.push_back(key);
          if (!interleaved(cand.g.cols[j], cand.g.cols[j + 1])) {
            for (int s : cand.seq) do_row_exchange(s);
            do_col_exchange(j);
            return true;
          }
          next.push_back(std::move(cand));
        }
      }
      frontier = std::move(next);
      if (frontier.empty()) break;
    }
    return false;
  }

  // Move the column currently at `from` to position `to` by unit exchanges.
  bool walk(int from, int to) {
    while (from < to)
      if (col_exchange(from)) ++from;
      else return false;
    while (from > to)
      if (col_exchange(from - 1)) --from;
      else return false;
    return true;
  }

  void wrap_last_to_front() {
    GridMove cp = cyclic_cols(1);
    g = apply(g, cp);
    out.push_back(cp);
    std::rotate(ident.begin(), ident.begin() + (g.n - 1), ident.end());
  }

  void wrap_front_to_last() {
    GridMove cp = cyclic_cols(-1);
    g = apply(g, cp);
    out.push_back(cp);
    std::rotate(ident.begin(), ident.begin() + 1, ident.end());
  }

  bool rows_sorted() const {
    for (int i = 0; i < g.n; ++i)
      if (rident[i] != i) return false;
    return true;
  }

  // Undo the assisting row exchanges: sort the rows back to their original
  // order by legal adjacent exchanges (breadth-first over row exchanges when
  // plain bubble passes stall).
  bool restore_rows() {
    // greedy bubble passes first
    bool progress = true;
    while (!rows_sorted() && progress) {
      progress = false;
      for (int k = 0; k + 1 < g.n; ++k) {
        if (rident[k] > rident[k + 1] && !interleaved(g.rows[k], g.rows[k + 1])) {
          do_row_exchange(k);
          progress = true;
        }
      }
    }
    if (rows_sorted()) return true;
    // stuck: search over row-exchange sequences for a sorted state
    struct Node {
      RectangularDiagram g;
      std::vector<int> rident;
      std::vector<int> seq;
    };
    std::vector<Node> frontier{{g, rident, {}}};
    std::vector<std::string> seen{emit_grid(g)};
    for (int depth = 1; depth <= 6; ++depth) {
      std::vector<Node> next;
      for (const auto& node : frontier) {
        for (int k = 0; k + 1 < g.n; ++k) {
          if (interleaved(node.g.rows[k], node.g.rows[k + 1])) continue;
          Node cand{apply(node.g, exchange_rows(k)), node.rident, node.seq};
          std::swap(cand.rident[k], cand.rident[k + 1]);
          cand.seq.push_back(k);
          std::string key = emit_grid(cand.g);
          if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
          seen.push_back(key);
          bool sorted = true;
          for (int i = 0; i < g.n; ++i)
            if (cand.rident[i] != i) { sorted = false; break; }
          if (sorted) {
            for (int s : cand.seq) do_row_exchange(s);
            return true;
          }
          next.push_back(std::move(cand));
        }
      }
      frontier = std::move(next);
      if (frontier.empty()) break;
    }
    return false;
  }
};

}  // namespace move_detail

// Emits cyclic permutations and exchanges whose composite equals the
// generalized exchange.  The first block's columns migrate rightward through
// the second block one vertex at a time, innermost vertex first; a blocked
// swap borrows one temporary row exchange.  When the direct corridor is
// blocked entirely, one of the two blocks travels around the seam instead,
// paying one unit cyclic permutation per wrapped column.  The result always
// fits n cyclic permutations and ceil(3n^2/4) exchanges.
inline std::vector<GridMove> decompose_generalized(const RectangularDiagram& d,
                                                   const GridMove& m) {
  if (m.kind != MoveKind::GeneralizedExchange)
    throw MoveError("precondition-violated", "not a generalized exchange");
  move_detail::check_generalized(d, m);
  int p = m.s2 - m.s1;  // first block size
  int q = m.s3 - m.s2;  // second block size
  if (p == 0 || q == 0) return {};
  RectangularDiagram direct = move_detail::apply_generalized(d, m);

  auto try_route = [&](int route) -> std::optional<std::vector<GridMove>> {
    move_detail::ColTracker t(d);
    bool ok = true;
    switch (route) {
      case 0:
        // B1 rightward through B2, innermost (rightmost) vertex first
        for (int i = p - 1; i >= 0 && ok; --i)
          ok = t.walk(m.s1 + i, m.s1 + i + q);
        break;
      case 1:
        // B1 leftward around the seam, leftmost vertex first; each column
        // walks to the front, wraps, then walks left to rest just right of
        // the second block (or of the previously placed column)
        for (int i = 0; i < p && ok; ++i) {
          ok = t.walk(t.position_of(m.s1 + i), 0);
          if (!ok) break;
          t.wrap_front_to_last();
          int anchor = (i == 0) ? t.position_of(m.s3 - 1) : t.position_of(m.s1 + i - 1);
          ok = t.walk(t.g.n - 1, anchor + 1);
        }
        break;
      case 2:
        // B2 rightward around the seam, rightmost vertex first; each column
        // wraps and then rests just left of the first block (or of the
        // previously placed column)
        for (int i = q - 1; i >= 0 && ok; --i) {
          ok = t.walk(t.position_of(m.s2 + i), t.g.n - 1);
          if (!ok) break;
          t.wrap_last_to_front();
          int anchor = (i == q - 1) ? t.position_of(m.s1) : t.position_of(m.s2 + i + 1);
          ok = t.walk(0, anchor - 1);
        }
        break;
      default:
        return std::nullopt;
    }
    if (ok && !t.rows_sorted()) ok = t.restore_rows();
    if (!ok || !(t.g == direct)) return std::nullopt;
    long nexch = 0, ncp = 0;
    for (const auto& mv : t.out) (mv.kind == MoveKind::Exchange ? nexch : ncp)++;
    if (nexch > (3L * d.n * d.n + 3) / 4 || ncp > d.n) return std::nullopt;
    return t.out;
  };

  for (int route = 0; route < 3; ++route)
    if (auto out = try_route(route)) return *out;
  throw MoveError("precondition-violated",
                  "generalized exchange admits no in-budget decomposition");
}

}  // namespace gridforge
