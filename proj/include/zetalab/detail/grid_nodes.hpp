#ifndef ZETALAB_DETAIL_GRID_NODES_HPP
#define ZETALAB_DETAIL_GRID_NODES_HPP

#include <cstddef>

#include "zetalab/hamiltonian.hpp"

namespace zetalab::detail {

// Nodes of `fine` that are also nodes of `coarse` at least `margin` cells in,
// when the grids nest; otherwise every node of `fine` `margin` cells in.
struct NodeSelection {
  std::size_t first = 1;
  std::size_t stride = 1;
};

inline NodeSelection shared_nodes(const GridSpec& coarse, const GridSpec& fine, std::size_t margin) {
  const bool same_window = coarse.x_min == fine.x_min && coarse.x_max == fine.x_max && coarse.y_min == fine.y_min &&
                           coarse.y_max == fine.y_max;
  const NodeSelection all{margin, 1};
  if (!same_window || (fine.nx - 1) % (coarse.nx - 1) != 0 || (fine.ny - 1) % (coarse.ny - 1) != 0) return all;
  const std::size_t sx = (fine.nx - 1) / (coarse.nx - 1), sy = (fine.ny - 1) / (coarse.ny - 1);
  if (sx != sy) return all;
  return NodeSelection{margin * sx, sx};
}

}  // namespace zetalab::detail

#endif  // ZETALAB_DETAIL_GRID_NODES_HPP
