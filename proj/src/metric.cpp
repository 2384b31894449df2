// SPDX-License-Identifier: Apache-2.0
#include "metriq/metric.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace metriq {

void FinPseudoMetric::validate(bool require_separation) const {
  if (dist.size() != points.size())
    throw std::invalid_argument("distance matrix size mismatch");
  for (size_t i = 0; i < size(); ++i) {
    if (dist[i].size() != size())
      throw std::invalid_argument("distance matrix row size mismatch");
    if (!dist[i][i].is_zero())
      throw std::invalid_argument("nonzero self-distance at " + points[i]);
    for (size_t j = 0; j < size(); ++j) {
      if (dist[i][j] != dist[j][i])
        throw std::invalid_argument("asymmetric distance " + points[i] + "," + points[j]);
      if (require_separation && i != j && dist[i][j].is_zero())
        throw std::invalid_argument("zero distance between distinct points " + points[i] +
                                    "," + points[j]);
      for (size_t k = 0; k < size(); ++k)
        if (dist[i][k] + dist[k][j] < dist[i][j])
          throw std::invalid_argument("triangle violation at " + points[i] + "," +
                                      points[k] + "," + points[j]);
    }
  }
  for (size_t i = 0; i < size(); ++i)
    for (size_t j = i + 1; j < size(); ++j)
      if (points[i] == points[j]) throw std::invalid_argument("duplicate point " + points[i]);
}

FinMetric FinMetric::checked(std::vector<std::string> points,
                             std::vector<std::vector<ExtReal>> dist) {
  FinMetric m;
  m.points = std::move(points);
  m.dist = std::move(dist);
  m.validate(true);
  return m;
}

FinMetric FinMetric::discrete(std::vector<std::string> points) {
  FinMetric m;
  m.points = std::move(points);
  m.dist.assign(m.points.size(), std::vector<ExtReal>(m.points.size(), ExtReal::inf()));
  for (size_t i = 0; i < m.points.size(); ++i) m.dist[i][i] = ExtReal(0);
  return m;
}

bool isometric_by_name(const FinPseudoMetric &a, const FinPseudoMetric &b) {
  if (a.size() != b.size()) return false;
  std::vector<size_t> to_b(a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    auto j = b.index_of(a.points[i]);
    if (!j) return false;
    to_b[i] = *j;
  }
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a.size(); ++j)
      if (a.at(i, j) != b.at(to_b[i], to_b[j])) return false;
  return true;
}

FinPseudoMetric closure(
    const std::vector<std::string> &points,
    const std::vector<std::tuple<std::string, std::string, ExtReal>> &constraints) {
  FinPseudoMetric m;
  m.points = points;
  size_t n = points.size();
  m.dist.assign(n, std::vector<ExtReal>(n, ExtReal::inf()));
  for (size_t i = 0; i < n; ++i) m.dist[i][i] = ExtReal(0);
  for (const auto &[x, y, e] : constraints) {
    auto i = m.index_of(x), j = m.index_of(y);
    if (!i || !j) throw std::invalid_argument("constraint over unknown point");
    m.dist[*i][*j] = min(m.dist[*i][*j], e);
    m.dist[*j][*i] = m.dist[*i][*j];
  }
  // Relax edge sums until stable.  Deliberately not the textbook k-outer
  // loop; the test suite carries an independent Floyd-Warshall oracle.
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j) {
        ExtReal best = m.dist[i][j];
        for (size_t k = 0; k < n; ++k) {
          if (m.dist[i][k].is_inf() || m.dist[k][j].is_inf()) continue;
          best = min(best, m.dist[i][k] + m.dist[k][j]);
        }
        if (best < m.dist[i][j]) {
          m.dist[i][j] = m.dist[j][i] = best;
          changed = true;
        }
      }
  }
  return m;
}

QuotientResult metric_quotient(const FinPseudoMetric &m) {
  size_t n = m.size();
  std::vector<size_t> cls(n, SIZE_MAX);
  std::vector<size_t> rep;
  for (size_t i = 0; i < n; ++i) {
    if (cls[i] != SIZE_MAX) continue;
    cls[i] = rep.size();
    for (size_t j = i + 1; j < n; ++j)
      if (cls[j] == SIZE_MAX && m.at(i, j).is_zero()) cls[j] = rep.size();
    rep.push_back(i);
  }
  FinMetric q;
  for (size_t c : rep) q.points.push_back(m.points[c]);
  q.dist.assign(rep.size(), std::vector<ExtReal>(rep.size(), ExtReal(0)));
  for (size_t a = 0; a < rep.size(); ++a)
    for (size_t b = 0; b < rep.size(); ++b) q.dist[a][b] = m.at(rep[a], rep[b]);
  return {std::move(q), std::move(cls)};
}

PowerSpace power_space(const FinMetric &m, const FinMetric &a) {
  PowerSpace out;
  size_t k = a.size();
  std::vector<size_t> cur(k, 0);
  if (k == 0) {
    out.maps.push_back({});
  } else {
    bool done = false;
    while (!done) {
      bool ok = true;
      for (size_t i = 0; i < k && ok; ++i)
        for (size_t j = i + 1; j < k && ok; ++j)
          if (a.at(i, j) < m.at(cur[i], cur[j])) ok = false;
      if (ok) out.maps.push_back(cur);
      for (size_t pos = k;; --pos) {
        if (pos == 0) {
          done = true;
          break;
        }
        if (++cur[pos - 1] < m.size()) break;
        cur[pos - 1] = 0;
      }
    }
  }
  for (const auto &f : out.maps) {
    std::string name = "(";
    for (size_t i = 0; i < f.size(); ++i) {
      if (i) name += ",";
      name += m.points[f[i]];
    }
    name += ")";
    out.space.points.push_back(name);
  }
  size_t cnt = out.maps.size();
  out.space.dist.assign(cnt, std::vector<ExtReal>(cnt, ExtReal(0)));
  for (size_t p = 0; p < cnt; ++p)
    for (size_t q = p + 1; q < cnt; ++q) {
      ExtReal d(0);
      for (size_t i = 0; i < k; ++i) d = max(d, m.at(out.maps[p][i], out.maps[q][i]));
      out.space.dist[p][q] = out.space.dist[q][p] = d;
    }
  return out;
}

}  // namespace metriq
