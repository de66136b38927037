#pragma once

// Corpus-level longitudinal statistics: activity, citation-count
// distributions, citation aging, and power-law tail fits. Series are plain
// binned vectors; a NaN value marks a missing bin (e.g. a normalization
// denominator of zero) and serializes as an empty CSV field.

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "citelens/corpus.hpp"

namespace citelens::temporal {

enum class Normalization { raw_count, probability, per_total_citations };

struct BinnedSeries {
  std::vector<double> bin_edges;  // size values.size() + 1, strictly increasing
  std::vector<double> values;     // NaN = missing
  Normalization normalization = Normalization::raw_count;
  std::size_t size() const { return values.size(); }
};

// bin_lo,bin_hi,value rows; missing values write an empty third field.
void write_series_csv(std::ostream& out, const BinnedSeries& s);

struct ActivitySeries {
  BinnedSeries nodes;  // documents published per bin
  BinnedSeries edges;  // citations made per bin (by citing pub_month)
};

// Bins of `bin_width_months` months starting at the earliest pub_month.
// DataError on an empty graph or non-positive width.
ActivitySeries activity_series(const corpus::CitationGraph& g, int bin_width_months);

struct CitationCountDistribution {
  BinnedSeries histogram;    // frequency per total in-degree 0..max
  double fraction_below_ten = 0.0;
  std::size_t documents = 0;
};

CitationCountDistribution citation_count_distribution(
    const corpus::CitationGraph& g, const corpus::CohortFilter& filter = {});

// Mean in-degree per out-degree 0..max; out-degrees with no documents are
// missing bins.
BinnedSeries citations_vs_references(const corpus::CitationGraph& g);

struct FirstCitationStats {
  BinnedSeries distribution;  // count per delta-t (months to first citation)
  std::size_t uncited = 0;    // never cited; reported, never binned
  std::size_t cohort_size = 0;
};

FirstCitationStats time_to_first_citation(const corpus::CitationGraph& g,
                                          const corpus::CohortFilter& filter = {});

// Citations received by the pub_month == cohort_month cohort, by age delta-t.
// normalize=true divides by the total citations made that month by anyone
// (zero denominator -> missing bin). DataError if the cohort is empty.
BinnedSeries citation_age_curve(const corpus::CitationGraph& g,
                                corpus::MonthIndex cohort_month, bool normalize);

struct LastCitationStats {
  BinnedSeries age_at_last;       // pub -> last citation, cited docs only
  BinnedSeries time_since_last;   // last citation -> horizon
  std::size_t uncited = 0;
};

// DataError if horizon_month < max pub_month.
LastCitationStats last_citation_stats(const corpus::CitationGraph& g,
                                      corpus::MonthIndex horizon_month);

struct TailFit {
  double exponent = 0.0;   // slope of log(value) vs log(x); decay is negative
  double intercept = 0.0;  // log-space intercept
  double fit_lo = 0.0, fit_hi = 0.0;
  double r_squared = 0.0;
  std::size_t points = 0;
};

// Plain least squares on (log x, log value) over bins whose lower edge lies
// in [fit_lo, fit_hi] with positive x and positive value. Needs >= 3 such
// bins. A constant series fits exponent 0 with r_squared 1.
TailFit fit_tail(const BinnedSeries& s, double fit_lo, double fit_hi);

// Rebin onto base-2 logarithmic edges (bin b covers [2^b - 1, 2^(b+1) - 1)).
// density=true divides each bin total by its width.
BinnedSeries log2_rebin(const BinnedSeries& s, bool density = true);

}  // namespace citelens::temporal
