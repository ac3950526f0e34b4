#include "lsskit/fixtures.hpp"

#include <cstdlib>

namespace lsskit {

InfMetric path_metric(std::size_t n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  auto ground = make_ground(std::move(labels));
  std::vector<std::vector<std::uint64_t>> d(n, std::vector<std::uint64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d[i][j] = i > j ? i - j : j - i;
  return InfMetric(ground, std::move(d));
}

InfMetric components_metric(const std::vector<std::size_t>& sizes) {
  if (sizes.empty()) throw InvariantError("components fixture needs at least one group");
  if (sizes.size() > 26) throw InvariantError("components fixture supports at most 26 groups");
  std::vector<std::string> labels;
  std::vector<std::size_t> group_of;
  for (std::size_t g = 0; g < sizes.size(); ++g) {
    if (sizes[g] == 0) throw InvariantError("components fixture groups must be nonempty");
    for (std::size_t i = 1; i <= sizes[g]; ++i) {
      labels.push_back(std::string(1, static_cast<char>('a' + g)) + std::to_string(i));
      group_of.push_back(g);
    }
  }
  auto ground = make_ground(std::move(labels));
  const std::size_t n = ground->size();
  std::vector<std::vector<std::uint64_t>> d(n, std::vector<std::uint64_t>(n, kInfDist));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) {
        d[i][j] = 0;
      } else if (group_of[i] == group_of[j]) {
        d[i][j] = 1;
      }
    }
  return InfMetric(ground, std::move(d));
}

namespace {

std::vector<std::vector<std::uint32_t>> tuples(std::size_t side, std::size_t len) {
  std::vector<std::vector<std::uint32_t>> out{{}};
  for (std::size_t pos = 0; pos < len; ++pos) {
    std::vector<std::vector<std::uint32_t>> next;
    next.reserve(out.size() * side);
    for (const auto& t : out) {
      for (std::uint32_t v = 0; v < side; ++v) {
        auto copy = t;
        copy.push_back(v);
        next.push_back(std::move(copy));
      }
    }
    out = std::move(next);
  }
  return out;
}

std::string join_coords(const std::vector<std::uint32_t>& t) {
  std::string s;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) s += '_';
    s += std::to_string(t[i]);
  }
  return s;
}

std::uint64_t max_abs_diff(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b,
                           std::size_t from, std::size_t to) {
  std::uint64_t best = 0;
  for (std::size_t i = from; i < to; ++i) {
    std::uint64_t d = a[i] > b[i] ? a[i] - b[i] : b[i] - a[i];
    best = std::max(best, d);
  }
  return best;
}

}  // namespace

InfMetric grid_metric(std::size_t side, std::size_t dim) {
  if (side == 0 || dim == 0) throw InvariantError("grid fixture needs side and dim at least one");
  auto pts = tuples(side, dim);
  std::vector<std::string> labels;
  labels.reserve(pts.size());
  for (const auto& p : pts) labels.push_back(join_coords(p));
  auto ground = make_ground(std::move(labels));
  const std::size_t n = pts.size();
  std::vector<std::vector<std::uint64_t>> d(n, std::vector<std::uint64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d[i][j] = max_abs_diff(pts[i], pts[j], 0, dim);
  return InfMetric(ground, std::move(d));
}

InfMetric product_metric(std::size_t side, std::size_t blocks) {
  if (side == 0 || blocks == 0) {
    throw InvariantError("product fixture needs side and blocks at least one");
  }
  std::size_t total_len = blocks * (blocks + 1) / 2;
  double size_estimate = 1;
  for (std::size_t i = 0; i < total_len; ++i) {
    size_estimate *= static_cast<double>(side);
    if (size_estimate > 4096) {
      throw InvariantError("product fixture would exceed 4096 points; shrink side or blocks");
    }
  }
  auto pts = tuples(side, total_len);
  std::vector<std::string> labels;
  labels.reserve(pts.size());
  for (const auto& p : pts) labels.push_back(join_coords(p));
  auto ground = make_ground(std::move(labels));
  const std::size_t n = pts.size();
  std::vector<std::vector<std::uint64_t>> d(n, std::vector<std::uint64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::uint64_t total = 0;
      std::size_t off = 0;
      for (std::size_t b = 1; b <= blocks; ++b) {
        total += max_abs_diff(pts[i], pts[j], off, off + b);
        off += b;
      }
      d[i][j] = total;
    }
  }
  return InfMetric(ground, std::move(d));
}

}  // namespace lsskit
