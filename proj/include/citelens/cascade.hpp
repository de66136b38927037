#pragma once

// Windowed discovery-cascade counts around a single document.
//
// For a document published at t1 with windows (latency, exposure, infection):
//   t2 = t1 + latency, t3 = t2 + exposure, t4 = t2 + infection.
// All windows are half-open [lo, hi).
//   IC      citers with pub_month in [t1, t2)           -- the "red" set
//   E_C     edges green -> red with green pub in [t2, t3)
//   I       citers with pub_month in [t2, t4), red set excluded
//   R       the document's own reference count
//   D_total sum over red citers of (their reference count - 1)
//   D_mean  D_total / IC, undefined (NaN) when IC = 0
// A document only yields counts when t1 + latency + infection <= the graph
// horizon; otherwise its window is censored and compute_cascade throws.

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "citelens/corpus.hpp"

namespace citelens::cascade {

struct CascadeWindows {
  int latency_months = 24;
  int exposure_months = 12;
  int infection_months = 24;
  void validate() const;  // all positive, infection >= exposure
};

enum class ExposureCounting {
  per_edge,            // each green->red edge counts once
  distinct_documents,  // each green document counts once
};

struct CascadeCounts {
  corpus::DocId doc;
  corpus::DocIndex doc_index = 0;
  corpus::MonthIndex t1 = 0;
  std::uint32_t references = 0;          // R
  std::uint32_t initial_citations = 0;   // IC
  std::uint32_t exposures = 0;           // E_C
  std::uint32_t distraction_total = 0;   // D_total
  double distraction_mean = 0.0;         // D_mean, NaN when IC = 0
  std::uint32_t infections = 0;          // I
};

CascadeCounts compute_cascade(const corpus::CitationGraph& g, corpus::DocIndex doc,
                              const CascadeWindows& w,
                              ExposureCounting counting = ExposureCounting::per_edge);
CascadeCounts compute_cascade(const corpus::CitationGraph& g, std::string_view id,
                              const CascadeWindows& w,
                              ExposureCounting counting = ExposureCounting::per_edge);

struct CascadeTable {
  std::vector<CascadeCounts> rows;  // canonical (pub_month, id) order
  CascadeWindows windows;
  std::size_t censored = 0;      // matched the filter but horizon cut them off
  std::size_t filtered_out = 0;
};

// One row per non-censored document passing the filter. DataError when the
// result would be empty. Output is identical at any thread count.
CascadeTable compute_all(const corpus::CitationGraph& g, const CascadeWindows& w,
                         const corpus::CohortFilter& filter = {},
                         ExposureCounting counting = ExposureCounting::per_edge,
                         unsigned threads = 1);

// Infections per exposure; exposures shifted by one so unexposed documents
// still produce a rate.
inline double infection_rate(const CascadeCounts& c) {
  return static_cast<double>(c.infections) / (static_cast<double>(c.exposures) + 1.0);
}

// doc_id,t1,R,IC,E_C,D_total,D_mean,I (D_mean empty when IC = 0)
void write_table_csv(std::ostream& out, const CascadeTable& table);

}  // namespace citelens::cascade
