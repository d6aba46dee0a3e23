#pragma once

// Grid -> planar diagram conversion.  Slot compass: 0 = east, 1 = north,
// 2 = west, 3 = south (counterclockwise), rows increase northward, columns
// eastward.  The horizontal strand always occupies slots {0,2}; the vertical
// strand occupies {1,3} and is the over-strand.

#include "gridforge/grid.hpp"
#include "gridforge/planar.hpp"

#include <map>
#include <utility>

namespace gridforge {

struct GridPlanar {
  PlanarDiagram pd;
  std::map<std::pair<int, int>, int> crossing_id;  // (row, col) -> crossing index
};

inline GridPlanar to_planar_full(const RectangularDiagram& d) {
  require_valid(d);
  GridPlanar out;
  // crossings: column arc passes strictly through the interior of a row arc
  for (int r = 0; r < d.n; ++r)
    for (int c = d.rows[r].lo + 1; c < d.rows[r].hi; ++c)
      if (d.cols[c].contains_strictly(r)) {
        int id = int(out.crossing_id.size());
        out.crossing_id[{r, c}] = id;
      }
  PlanarDiagram& pd = out.pd;
  pd.cr.resize(out.crossing_id.size());
  pd.mate.assign(4 * out.crossing_id.size(), -1);

  std::vector<bool> row_done(d.n, false);
  for (int r0 = 0; r0 < d.n; ++r0) {
    if (row_done[r0]) continue;
    // walk this component, rows first, starting from the lex-least vertex
    int start_r = r0, start_c = d.rows[r0].lo;
    std::vector<int> stubs;  // alternating departure, arrival darts
    int r = start_r, c_from = start_c;
    do {
      row_done[r] = true;
      int c_to = d.rows[r].other_end(c_from);
      int step = c_to > c_from ? 1 : -1;
      for (int c = c_from + step; c != c_to; c += step) {
        auto it = out.crossing_id.find({r, c});
        if (it == out.crossing_id.end()) continue;
        int v = it->second;
        pd.cr[v].over02 = false;        // vertical over
        pd.cr[v].out0 = (step > 0);     // horizontal exits east when moving east
        stubs.push_back(PlanarDiagram::dart(v, step > 0 ? 2 : 0));  // arrival
        stubs.push_back(PlanarDiagram::dart(v, step > 0 ? 0 : 2));  // departure
      }
      // switch to the column arc at (r, c_to)
      int r_to = d.cols[c_to].other_end(r);
      int vstep = r_to > r ? 1 : -1;
      for (int rr = r + vstep; rr != r_to; rr += vstep) {
        auto it = out.crossing_id.find({rr, c_to});
        if (it == out.crossing_id.end()) continue;
        int v = it->second;
        pd.cr[v].out1 = (vstep > 0);    // vertical exits north when moving north
        stubs.push_back(PlanarDiagram::dart(v, vstep > 0 ? 3 : 1));  // arrival
        stubs.push_back(PlanarDiagram::dart(v, vstep > 0 ? 1 : 3));  // departure
      }
      c_from = c_to;
      r = r_to;
    } while (r != start_r || c_from != start_c);

    if (stubs.empty()) {
      pd.free_loops++;
      continue;
    }
    // stubs = arr0, dep0, arr1, dep1, ...; edge joins dep_i with arr_{i+1}
    for (size_t i = 1; i + 1 < stubs.size(); i += 2) {
      pd.mate[stubs[i]] = stubs[i + 1];
      pd.mate[stubs[i + 1]] = stubs[i];
    }
    pd.mate[stubs.back()] = stubs.front();
    pd.mate[stubs.front()] = stubs.back();
  }
  check_planar(pd);
  return out;
}

inline PlanarDiagram to_planar(const RectangularDiagram& d) { return to_planar_full(d).pd; }

inline LinkSummary summarize(const RectangularDiagram& d) { return summarize(to_planar(d)); }

}  // namespace gridforge
