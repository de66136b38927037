#include "citelens/cascade.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <unordered_set>

#include "citelens/csv.hpp"
#include "citelens/error.hpp"
#include "citelens/parallel.hpp"

namespace citelens::cascade {

void CascadeWindows::validate() const {
  if (latency_months <= 0 || exposure_months <= 0 || infection_months <= 0) {
    throw DataError("cascade windows must be positive");
  }
  if (infection_months < exposure_months) {
    throw DataError("infection window shorter than exposure window");
  }
}

namespace {

CascadeCounts compute_unchecked(const corpus::CitationGraph& g, corpus::DocIndex doc,
                                const CascadeWindows& w, ExposureCounting counting) {
  const auto& d = g.document(doc);
  const corpus::MonthIndex t1 = d.pub_month;
  const corpus::MonthIndex t2 = t1 + w.latency_months;
  const corpus::MonthIndex t3 = t2 + w.exposure_months;
  const corpus::MonthIndex t4 = t2 + w.infection_months;

  CascadeCounts c;
  c.doc = d.id;
  c.doc_index = doc;
  c.t1 = t1;
  c.references = static_cast<std::uint32_t>(g.references(doc).size());

  const auto red = g.citations_in_window(doc, t1, t2);
  c.initial_citations = static_cast<std::uint32_t>(red.size());

  std::uint64_t distraction = 0;
  if (counting == ExposureCounting::per_edge) {
    std::uint64_t exposures = 0;
    for (corpus::DocIndex r : red) {
      exposures += g.citations_in_window(r, t2, t3).size();
      distraction += g.references(r).size() - 1;  // r cites doc, so >= 1 reference
    }
    c.exposures = static_cast<std::uint32_t>(exposures);
  } else {
    std::unordered_set<corpus::DocIndex> greens;
    for (corpus::DocIndex r : red) {
      for (corpus::DocIndex gdoc : g.citations_in_window(r, t2, t3)) greens.insert(gdoc);
      distraction += g.references(r).size() - 1;
    }
    c.exposures = static_cast<std::uint32_t>(greens.size());
  }
  c.distraction_total = static_cast<std::uint32_t>(distraction);
  c.distraction_mean = red.empty() ? std::numeric_limits<double>::quiet_NaN()
                                   : static_cast<double>(distraction) / red.size();

  // red pub months live in [t1, t2) and this window starts at t2, so the
  // red set can never re-enter; the exclusion is kept explicit anyway.
  std::uint64_t infections = 0;
  const std::unordered_set<corpus::DocIndex> red_set(red.begin(), red.end());
  for (corpus::DocIndex citer : g.citations_in_window(doc, t2, t4)) {
    if (!red_set.contains(citer)) ++infections;
  }
  c.infections = static_cast<std::uint32_t>(infections);
  return c;
}

}  // namespace

CascadeCounts compute_cascade(const corpus::CitationGraph& g, corpus::DocIndex doc,
                              const CascadeWindows& w, ExposureCounting counting) {
  w.validate();
  const auto& d = g.document(doc);
  const auto needed = static_cast<std::int64_t>(d.pub_month) + w.latency_months + w.infection_months;
  if (needed > g.horizon_month()) {
    throw CensoredError("document '" + d.id + "' is censored: window ends at month " +
                        std::to_string(needed) + ", horizon is " +
                        std::to_string(g.horizon_month()));
  }
  return compute_unchecked(g, doc, w, counting);
}

CascadeCounts compute_cascade(const corpus::CitationGraph& g, std::string_view id,
                              const CascadeWindows& w, ExposureCounting counting) {
  return compute_cascade(g, g.require(id), w, counting);
}

CascadeTable compute_all(const corpus::CitationGraph& g, const CascadeWindows& w,
                         const corpus::CohortFilter& filter, ExposureCounting counting,
                         unsigned threads) {
  w.validate();
  CascadeTable table;
  table.windows = w;

  std::vector<corpus::DocIndex> keep;
  for (corpus::DocIndex i = 0; i < g.num_documents(); ++i) {
    const auto& d = g.document(i);
    if (!filter.matches(d)) {
      ++table.filtered_out;
      continue;
    }
    const auto needed = static_cast<std::int64_t>(d.pub_month) + w.latency_months + w.infection_months;
    if (needed > g.horizon_month()) {
      ++table.censored;
      continue;
    }
    keep.push_back(i);
  }
  if (keep.empty()) {
    throw DataError("compute_all: no document clears the horizon (censored " +
                    std::to_string(table.censored) + ", filtered out " +
                    std::to_string(table.filtered_out) + ")");
  }

  table.rows.resize(keep.size());
  parallel_for(keep.size(), threads, [&](std::size_t i) {
    table.rows[i] = compute_unchecked(g, keep[i], w, counting);
  });
  return table;
}

void write_table_csv(std::ostream& out, const CascadeTable& table) {
  csv::write_row(out, std::vector<std::string>{"doc_id", "t1", "R", "IC", "E_C",
                                               "D_total", "D_mean", "I"});
  for (const auto& r : table.rows) {
    csv::write_row(out, std::vector<std::string>{
                            r.doc,
                            std::to_string(r.t1),
                            std::to_string(r.references),
                            std::to_string(r.initial_citations),
                            std::to_string(r.exposures),
                            std::to_string(r.distraction_total),
                            csv::format_number(r.distraction_mean),
                            std::to_string(r.infections),
                        });
  }
}

}  // namespace citelens::cascade
