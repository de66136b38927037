#pragma once

// Brute-force cascade oracle. Works straight off raw (id, month) and edge
// lists with linear scans and std::set -- no sorted adjacency, no shared
// window arithmetic -- so agreement with the engine is meaningful.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "citelens/rng.hpp"

namespace oracle {

struct RawGraph {
  std::vector<std::pair<std::string, int>> docs;            // id, pub month
  std::vector<std::pair<std::string, std::string>> edges;   // citing, cited
};

inline int month_of(const RawGraph& g, const std::string& id) {
  for (const auto& [doc, month] : g.docs)
    if (doc == id) return month;
  return std::numeric_limits<int>::min();
}

inline int max_month(const RawGraph& g) {
  int m = std::numeric_limits<int>::min();
  for (const auto& [doc, month] : g.docs) m = std::max(m, month);
  return m;
}

struct Counts {
  long references = 0;
  long initial_citations = 0;
  long exposures = 0;
  long distraction_total = 0;
  long infections = 0;
  double distraction_mean = std::numeric_limits<double>::quiet_NaN();
  bool censored = false;
};

inline Counts cascade(const RawGraph& g, const std::string& id, int latency, int exposure,
                      int infection, int horizon, bool distinct_exposures = false) {
  const int t1 = month_of(g, id);
  const int t2 = t1 + latency;
  const int t3 = t2 + exposure;
  const int t4 = t2 + infection;

  Counts c;
  c.censored = t1 + latency + infection > horizon;

  std::set<std::string> citers;  // distinct citing documents of `id`
  for (const auto& [citing, cited] : g.edges) {
    if (citing == id) ++c.references;
    if (cited == id) citers.insert(citing);
  }

  std::set<std::string> reds;
  for (const auto& u : citers) {
    const int m = month_of(g, u);
    if (m >= t1 && m < t2) reds.insert(u);
  }
  c.initial_citations = static_cast<long>(reds.size());

  std::set<std::string> distinct_greens;
  for (const auto& [citing, cited] : g.edges) {
    if (!reds.count(cited)) continue;
    const int m = month_of(g, citing);
    if (m >= t2 && m < t3) {
      if (distinct_exposures)
        distinct_greens.insert(citing);
      else
        ++c.exposures;
    }
  }
  if (distinct_exposures) c.exposures = static_cast<long>(distinct_greens.size());

  for (const auto& r : reds) {
    long refs = 0;
    for (const auto& [citing, cited] : g.edges) {
      (void)cited;
      if (citing == r) ++refs;
    }
    c.distraction_total += refs - 1;
  }
  if (!reds.empty())
    c.distraction_mean =
        static_cast<double>(c.distraction_total) / static_cast<double>(reds.size());

  for (const auto& v : citers) {
    const int m = month_of(g, v);
    if (m >= t2 && m < t4 && !reds.count(v)) ++c.infections;
  }
  return c;
}

// Distinct citers of `id` with pub month in [from, to), sorted (month, id).
inline std::vector<std::string> citers_in_window(const RawGraph& g, const std::string& id,
                                                 int from, int to) {
  std::set<std::string> seen;
  std::vector<std::pair<std::pair<int, std::string>, std::string>> hits;
  for (const auto& [citing, cited] : g.edges) {
    if (cited != id || seen.count(citing)) continue;
    const int m = month_of(g, citing);
    if (m >= from && m < to) {
      seen.insert(citing);
      hits.push_back({{m, citing}, citing});
    }
  }
  std::sort(hits.begin(), hits.end());
  std::vector<std::string> out;
  for (auto& h : hits) out.push_back(std::move(h.second));
  return out;
}

// Seeded random graph: ids deliberately out of month order, duplicate-free
// backward edges, month ties included.
inline RawGraph random_graph(std::uint64_t seed, int max_nodes = 50, int max_edges = 300) {
  auto eng = citelens::rng::make_engine(0xacce57, seed);
  RawGraph g;
  const auto n = 2 + citelens::rng::uniform_below(eng, static_cast<std::uint64_t>(max_nodes - 1));
  for (std::uint64_t i = 0; i < n; ++i) {
    g.docs.push_back({"n" + std::to_string(i),
                      static_cast<int>(citelens::rng::uniform_below(eng, 60))});
  }
  const auto want = citelens::rng::uniform_below(eng, static_cast<std::uint64_t>(max_edges + 1));
  std::set<std::pair<std::string, std::string>> used;
  for (std::uint64_t attempts = 0; attempts < 4 * want + 16 && used.size() < want; ++attempts) {
    auto a = citelens::rng::uniform_below(eng, n);
    auto b = citelens::rng::uniform_below(eng, n);
    if (a == b) continue;
    if (g.docs[a].second < g.docs[b].second) std::swap(a, b);  // citing never earlier
    used.insert({g.docs[a].first, g.docs[b].first});
  }
  g.edges.assign(used.begin(), used.end());
  return g;
}

}  // namespace oracle
