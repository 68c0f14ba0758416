#pragma once

#include <set>
#include <vector>

#include "sixv/height.hpp"

namespace sixv {

// Fully packed oriented loops and boundary-to-boundary paths obtained by
// splitting every vertex into noncrossing turns; c-vertices take the
// left-turning split, all other types split uniquely.
struct LoopDecomposition {
  struct Path {
    std::vector<int> edges;  // in traversal order, following the arrows
    bool starts_bottom = false;
    bool ends_bottom = false;
    int start_col = -1;  // column of the entry stub
    int end_col = -1;
    bool is_loop = false;
    bool upward_crossing() const { return !is_loop && starts_bottom && !ends_bottom; }
    bool downward_crossing() const { return !is_loop && !starts_bottom && ends_bottom; }
    // Column of the bottom endpoint of a vertical crossing.
    int bottom_col() const { return starts_bottom ? start_col : end_col; }
  };
  std::vector<Path> paths;  // boundary-to-boundary
  std::vector<Path> loops;
};

LoopDecomposition loop_decompose(const Domain& cylinder, const Arrows& a);

// The weight-controlled injection from flux-2L cylinder configurations into
// balanced configurations carrying a pair of constant-height vertical
// x-crossings at levels 0 and L.
struct MapTResult {
  Arrows out;
  std::vector<int> gamma_low;   // edges of the reversed crossing
  std::vector<int> gamma_high;  // edges of the untouched partner crossing
  int i_star = -1;
  std::vector<std::uint8_t> region;  // faces whose loops were reversed
};

MapTResult map_t(const Domain& cylinder, const Arrows& a, int flux_l);

// Inverse step: re-reverses the region determined by the two stored paths.
Arrows map_t_reconstruct(const Domain& cylinder, const Arrows& image,
                         const std::vector<int>& gamma_low, const std::vector<int>& gamma_high);

// Heights at which a bottom-to-top x-crossing of constant level exists.
std::set<int> vertical_level_crossings(const Domain& cylinder, const Heights& h);

// Event B(L): some representative has vertical x-crossings at levels 0 and L
// simultaneously, i.e. two crossing levels exactly L apart.
bool has_level_pair(const Domain& cylinder, const Arrows& balanced, int level_gap);

}  // namespace sixv
