#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lsskit/space.hpp"

namespace lsskit {

/// Path 0..n-1 with the walk metric; labels "0", "1", ...
InfMetric path_metric(std::size_t n);

/// Disjoint groups at infinite distance, unit distance within a group.
/// Labels "a1", "a2", ..., "b1", ... in group order.
InfMetric components_metric(const std::vector<std::size_t>& sizes);

/// {0..side-1}^dim with the coordinatewise max metric; labels like "2_0_1".
InfMetric grid_metric(std::size_t side, std::size_t dim);

/// Truncated product of blocks, block i being {0..side-1}^i for
/// i = 1..blocks, with the sum over blocks of the per-block max metric.
/// Covering numbers between consecutive ball radii grow with the number of
/// blocks, which is what this family is for.
InfMetric product_metric(std::size_t side, std::size_t blocks);

}  // namespace lsskit
