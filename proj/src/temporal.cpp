#include "citelens/temporal.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "citelens/csv.hpp"
#include "citelens/error.hpp"

namespace citelens::temporal {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

BinnedSeries unit_bins(std::int64_t lo, std::int64_t hi_inclusive,
                       Normalization norm = Normalization::raw_count) {
  BinnedSeries s;
  s.normalization = norm;
  if (hi_inclusive < lo) hi_inclusive = lo;
  s.values.assign(static_cast<std::size_t>(hi_inclusive - lo + 1), 0.0);
  s.bin_edges.resize(s.values.size() + 1);
  for (std::size_t i = 0; i < s.bin_edges.size(); ++i) {
    s.bin_edges[i] = static_cast<double>(lo + static_cast<std::int64_t>(i));
  }
  return s;
}

}  // namespace

void write_series_csv(std::ostream& out, const BinnedSeries& s) {
  csv::write_row(out, std::vector<std::string>{"bin_lo", "bin_hi", "value"});
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    csv::write_row(out, std::vector<std::string>{csv::format_number(s.bin_edges[i]),
                                                 csv::format_number(s.bin_edges[i + 1]),
                                                 csv::format_number(s.values[i])});
  }
}

ActivitySeries activity_series(const corpus::CitationGraph& g, int bin_width_months) {
  if (g.num_documents() == 0) throw DataError("activity_series: empty graph");
  if (bin_width_months <= 0) throw DataError("activity_series: bin width must be positive");

  const auto lo = g.min_pub_month();
  const auto span = static_cast<std::int64_t>(g.max_pub_month()) - lo;
  const std::size_t bins = static_cast<std::size_t>(span / bin_width_months) + 1;

  ActivitySeries out;
  out.nodes.values.assign(bins, 0.0);
  out.edges.values.assign(bins, 0.0);
  out.nodes.bin_edges.resize(bins + 1);
  for (std::size_t i = 0; i <= bins; ++i) {
    out.nodes.bin_edges[i] = static_cast<double>(lo) + static_cast<double>(i) * bin_width_months;
  }
  out.edges.bin_edges = out.nodes.bin_edges;

  for (corpus::DocIndex i = 0; i < g.num_documents(); ++i) {
    const auto& d = g.document(i);
    const auto b = static_cast<std::size_t>((d.pub_month - lo) / bin_width_months);
    out.nodes.values[b] += 1.0;
    out.edges.values[b] += static_cast<double>(g.references(i).size());
  }
  return out;
}

CitationCountDistribution citation_count_distribution(const corpus::CitationGraph& g,
                                                      const corpus::CohortFilter& filter) {
  std::vector<std::size_t> indegs;
  for (corpus::DocIndex i = 0; i < g.num_documents(); ++i) {
    if (!filter.matches(g.document(i))) continue;
    indegs.push_back(g.citations(i).size());
  }
  if (indegs.empty()) throw DataError("citation_count_distribution: no documents match the filter");

  CitationCountDistribution out;
  out.documents = indegs.size();
  const std::size_t max_deg = *std::max_element(indegs.begin(), indegs.end());
  out.histogram = unit_bins(0, static_cast<std::int64_t>(max_deg));
  std::size_t below = 0;
  for (std::size_t d : indegs) {
    out.histogram.values[d] += 1.0;
    if (d < 10) ++below;
  }
  out.fraction_below_ten = static_cast<double>(below) / static_cast<double>(indegs.size());
  return out;
}

BinnedSeries citations_vs_references(const corpus::CitationGraph& g) {
  if (g.num_documents() == 0) return BinnedSeries{{0.0}, {}, Normalization::raw_count};
  std::size_t max_out = 0;
  for (corpus::DocIndex i = 0; i < g.num_documents(); ++i) {
    max_out = std::max(max_out, g.references(i).size());
  }
  std::vector<double> sums(max_out + 1, 0.0);
  std::vector<std::size_t> counts(max_out + 1, 0);
  for (corpus::DocIndex i = 0; i < g.num_documents(); ++i) {
    const std::size_t k = g.references(i).size();
    sums[k] += static_cast<double>(g.citations(i).size());
    ++counts[k];
  }
  BinnedSeries s = unit_bins(0, static_cast<std::int64_t>(max_out));
  for (std::size_t k = 0; k <= max_out; ++k) {
    s.values[k] = counts[k] ? sums[k] / static_cast<double>(counts[k]) : kNaN;
  }
  return s;
}

FirstCitationStats time_to_first_citation(const corpus::CitationGraph& g,
                                          const corpus::CohortFilter& filter) {
  std::vector<std::int64_t> deltas;
  FirstCitationStats out;
  for (corpus::DocIndex i = 0; i < g.num_documents(); ++i) {
    const auto& d = g.document(i);
    if (!filter.matches(d)) continue;
    ++out.cohort_size;
    auto in = g.citations(i);
    if (in.empty()) {
      ++out.uncited;
      continue;
    }
    deltas.push_back(static_cast<std::int64_t>(g.document(in.front()).pub_month) - d.pub_month);
  }
  if (out.cohort_size == 0) {
    throw DataError("time_to_first_citation: no documents match the filter");
  }
  if (deltas.empty()) {
    out.distribution = unit_bins(0, 0);
    return out;
  }
  const auto [mn, mx] = std::minmax_element(deltas.begin(), deltas.end());
  out.distribution = unit_bins(*mn, *mx);
  for (auto dt : deltas) {
    out.distribution.values[static_cast<std::size_t>(dt - *mn)] += 1.0;
  }
  return out;
}

BinnedSeries citation_age_curve(const corpus::CitationGraph& g,
                                corpus::MonthIndex cohort_month, bool normalize) {
  std::vector<corpus::DocIndex> cohort;
  for (corpus::DocIndex i = 0; i < g.num_documents(); ++i) {
    if (g.document(i).pub_month == cohort_month) cohort.push_back(i);
  }
  if (cohort.empty()) {
    throw DataError("citation_age_curve: no documents published in month " +
                    corpus::format_pub_month(cohort_month));
  }
  const auto span = static_cast<std::int64_t>(g.horizon_month()) - cohort_month;
  BinnedSeries s = unit_bins(0, span < 0 ? 0 : span,
                             normalize ? Normalization::per_total_citations
                                       : Normalization::raw_count);
  for (corpus::DocIndex i : cohort) {
    for (corpus::DocIndex citer : g.citations(i)) {
      const auto dt = static_cast<std::int64_t>(g.document(citer).pub_month) - cohort_month;
      if (dt >= 0 && dt < static_cast<std::int64_t>(s.values.size())) s.values[dt] += 1.0;
    }
  }
  if (normalize) {
    // citations made per month, across the whole corpus
    std::vector<double> made(s.values.size(), 0.0);
    for (corpus::DocIndex i = 0; i < g.num_documents(); ++i) {
      const auto dt = static_cast<std::int64_t>(g.document(i).pub_month) - cohort_month;
      if (dt >= 0 && dt < static_cast<std::int64_t>(made.size())) {
        made[dt] += static_cast<double>(g.references(i).size());
      }
    }
    for (std::size_t i = 0; i < s.values.size(); ++i) {
      s.values[i] = made[i] > 0.0 ? s.values[i] / made[i] : kNaN;
    }
  }
  return s;
}

LastCitationStats last_citation_stats(const corpus::CitationGraph& g,
                                      corpus::MonthIndex horizon_month) {
  if (g.num_documents() > 0 && horizon_month < g.max_pub_month()) {
    throw DataError("last_citation_stats: horizon precedes latest publication month");
  }
  std::vector<std::int64_t> ages, sinces;
  LastCitationStats out;
  for (corpus::DocIndex i = 0; i < g.num_documents(); ++i) {
    auto in = g.citations(i);
    if (in.empty()) {
      ++out.uncited;
      continue;
    }
    const auto last = g.document(in.back()).pub_month;
    ages.push_back(static_cast<std::int64_t>(last) - g.document(i).pub_month);
    sinces.push_back(static_cast<std::int64_t>(horizon_month) - last);
  }
  if (ages.empty()) {
    out.age_at_last = unit_bins(0, 0);
    out.time_since_last = unit_bins(0, 0);
    return out;
  }
  auto histogram = [](const std::vector<std::int64_t>& xs) {
    const auto [mn, mx] = std::minmax_element(xs.begin(), xs.end());
    BinnedSeries s = unit_bins(*mn, *mx);
    for (auto x : xs) s.values[static_cast<std::size_t>(x - *mn)] += 1.0;
    return s;
  };
  out.age_at_last = histogram(ages);
  out.time_since_last = histogram(sinces);
  return out;
}

TailFit fit_tail(const BinnedSeries& s, double fit_lo, double fit_hi) {
  if (!(fit_lo < fit_hi)) throw DataError("fit_tail: fit range is empty");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    const double x = s.bin_edges[i];
    const double y = s.values[i];
    if (x < fit_lo || x > fit_hi) continue;
    if (!(x > 0.0) || std::isnan(y) || !(y > 0.0)) continue;  // zero/missing bins skipped
    lx.push_back(std::log(x));
    ly.push_back(std::log(y));
  }
  if (lx.size() < 3) {
    throw DataError("fit_tail: need at least 3 positive bins in the fit range, have " +
                    std::to_string(lx.size()));
  }

  const auto n = static_cast<Eigen::Index>(lx.size());
  Eigen::MatrixX2d X(n, 2);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    X(i, 0) = lx[static_cast<std::size_t>(i)];
    X(i, 1) = 1.0;
    y(i) = ly[static_cast<std::size_t>(i)];
  }
  Eigen::Vector2d beta = X.colPivHouseholderQr().solve(y);

  TailFit fit;
  fit.exponent = beta(0);
  fit.intercept = beta(1);
  fit.fit_lo = fit_lo;
  fit.fit_hi = fit_hi;
  fit.points = lx.size();
  const double mean_y = y.mean();
  const double ss_tot = (y.array() - mean_y).square().sum();
  const double ss_res = (y - X * beta).array().square().sum();
  // a constant series is a perfect fit with slope 0, not an undefined one
  fit.r_squared = ss_tot > 1e-30 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

BinnedSeries log2_rebin(const BinnedSeries& s, bool density) {
  int b_min = std::numeric_limits<int>::max();
  int b_max = std::numeric_limits<int>::min();
  auto log_bin = [](double lo) { return static_cast<int>(std::floor(std::log2(lo + 1.0))); };
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    if (s.bin_edges[i] < 0.0 || std::isnan(s.values[i])) continue;
    const int b = log_bin(s.bin_edges[i]);
    b_min = std::min(b_min, b);
    b_max = std::max(b_max, b);
  }
  if (b_min > b_max) throw DataError("log2_rebin: no non-negative bins");

  BinnedSeries out;
  out.normalization = s.normalization;
  out.values.assign(static_cast<std::size_t>(b_max - b_min + 1), 0.0);
  out.bin_edges.resize(out.values.size() + 1);
  for (std::size_t i = 0; i < out.bin_edges.size(); ++i) {
    out.bin_edges[i] = std::exp2(static_cast<double>(b_min + static_cast<int>(i))) - 1.0;
  }
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    if (s.bin_edges[i] < 0.0 || std::isnan(s.values[i])) continue;
    out.values[static_cast<std::size_t>(log_bin(s.bin_edges[i]) - b_min)] += s.values[i];
  }
  if (density) {
    for (std::size_t i = 0; i < out.values.size(); ++i) {
      out.values[i] /= out.bin_edges[i + 1] - out.bin_edges[i];
    }
  }
  return out;
}

}  // namespace citelens::temporal
