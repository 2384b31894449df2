// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "metriq/extreal.hpp"

namespace metriq {

// Finite pseudometric space: named points plus a symmetric distance matrix
// with zero diagonal satisfying the triangle inequality.  Distinct points
// may sit at distance zero (and at inf; spaces are extended metrics).
struct FinPseudoMetric {
  std::vector<std::string> points;
  std::vector<std::vector<ExtReal>> dist;

  size_t size() const { return points.size(); }
  const ExtReal &at(size_t i, size_t j) const { return dist[i][j]; }
  std::optional<size_t> index_of(const std::string &p) const {
    for (size_t i = 0; i < points.size(); ++i)
      if (points[i] == p) return i;
    return std::nullopt;
  }

  // Throws std::invalid_argument on any axiom violation.
  void validate(bool require_separation = false) const;
};

// As above but separated: distinct points at strictly positive distance.
struct FinMetric : FinPseudoMetric {
  FinMetric() = default;
  static FinMetric checked(std::vector<std::string> points,
                           std::vector<std::vector<ExtReal>> dist);
  // All distinct points at infinite distance (the discrete refinement A^d).
  static FinMetric discrete(std::vector<std::string> points);
};

bool isometric_by_name(const FinPseudoMetric &a, const FinPseudoMetric &b);

// Least pseudometric on `points` below the given constraints: initialize
// d(x,x)=0, d=inf elsewhere, chop to the constraint bounds, then close
// under the triangle inequality (all-pairs shortest path).
FinPseudoMetric closure(const std::vector<std::string> &points,
                        const std::vector<std::tuple<std::string, std::string, ExtReal>> &constraints);

// Identify points at distance zero.  Returns the quotient metric plus the
// class index of every input point; class names are the first member.
struct QuotientResult {
  FinMetric space;
  std::vector<size_t> class_of;
};
QuotientResult metric_quotient(const FinPseudoMetric &m);

// m^a: all nonexpansive maps a -> m under the sup metric.  Point names
// record the value tuple in a-point order.
struct PowerSpace {
  FinMetric space;
  std::vector<std::vector<size_t>> maps;  // maps[k][i] = value of a.points[i]
};
PowerSpace power_space(const FinMetric &m, const FinMetric &a);

}  // namespace metriq
