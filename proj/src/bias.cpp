#include "citelens/bias.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "citelens/error.hpp"
#include "citelens/infotheory.hpp"

namespace citelens::bias {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double value_of(const Row& r, Variable v) {
  switch (v) {
    case Variable::initial_citations: return r.counts.initial_citations;
    case Variable::exposures: return r.counts.exposures;
    case Variable::distraction_mean: return r.counts.distraction_mean;
    case Variable::total_citations: return r.total_citations;
  }
  return kNaN;
}

Table drop_ic_zero(const Table& table, std::size_t* excluded) {
  Table sub;
  sub.rows.reserve(table.rows.size());
  for (const auto& r : table.rows) {
    if (r.counts.initial_citations == 0) {
      ++*excluded;
    } else {
      sub.rows.push_back(r);
    }
  }
  return sub;
}

double median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  if (n % 2 == 1) return xs[n / 2];
  return 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

}  // namespace

std::string variable_name(Variable v) {
  switch (v) {
    case Variable::initial_citations: return "initial_citations";
    case Variable::exposures: return "exposures";
    case Variable::distraction_mean: return "distraction_mean";
    case Variable::total_citations: return "total_citations";
  }
  return "?";
}

void ClassSpec::validate() const {
  for (std::size_t i = 1; i < boundaries.size(); ++i) {
    if (!(boundaries[i - 1] < boundaries[i])) {
      throw DataError("class boundaries must be strictly increasing");
    }
  }
  if (labels.size() != boundaries.size() + 1) {
    throw DataError("class spec needs exactly " + std::to_string(boundaries.size() + 1) +
                    " labels, has " + std::to_string(labels.size()));
  }
}

std::size_t ClassSpec::classify(double value) const {
  return static_cast<std::size_t>(
      std::upper_bound(boundaries.begin(), boundaries.end(), value) - boundaries.begin());
}

ClassSpec ClassSpec::ic_default() {
  return {Variable::initial_citations, {3.0, 11.0}, {"1-2", "3-10", ">10"}};
}
ClassSpec ClassSpec::exposure_default() {
  return {Variable::exposures, {3.0, 11.0}, {"low", "medium", "high"}};
}
ClassSpec ClassSpec::distraction_default() {
  return {Variable::distraction_mean, {10.0, 30.0}, {"<10", "10-30", ">30"}};
}
ClassSpec ClassSpec::quality_default() {
  return {Variable::total_citations, {10.0, 100.0}, {"<10", "10-100", ">100"}};
}

Table Table::from(const corpus::CitationGraph& g, const cascade::CascadeTable& t) {
  Table table;
  table.rows.reserve(t.rows.size());
  for (const auto& c : t.rows) {
    table.rows.push_back(Row{c, static_cast<std::uint32_t>(g.citations(c.doc_index).size())});
  }
  return table;
}

std::vector<ResponseCurve> exposure_response(const Table& table, Variable x,
                                             const std::optional<ClassSpec>& class_spec) {
  if (table.rows.empty()) throw DataError("exposure_response: empty counts table");
  if (class_spec) class_spec->validate();

  const std::size_t n_classes = class_spec ? class_spec->labels.size() : 1;
  // per class: log2 bin -> (sum I, n)
  std::vector<std::map<std::int32_t, std::pair<double, std::size_t>>> acc(n_classes);
  for (const auto& r : table.rows) {
    std::size_t cls = 0;
    if (class_spec) {
      const double cv = value_of(r, class_spec->variable);
      if (std::isnan(cv)) continue;  // undefined class variable (IC = 0 rows)
      cls = class_spec->classify(cv);
    }
    const double xv = value_of(r, x);
    if (std::isnan(xv)) continue;
    auto& cell = acc[cls][infotheory::log2_bin(xv)];
    cell.first += static_cast<double>(r.counts.infections);
    cell.second += 1;
  }

  std::vector<ResponseCurve> out;
  for (std::size_t cls = 0; cls < n_classes; ++cls) {
    if (acc[cls].empty()) continue;  // empty classes are omitted
    ResponseCurve curve;
    curve.class_label = class_spec ? class_spec->labels[cls] : "";
    for (const auto& [bin, cell] : acc[cls]) {
      curve.x_lo.push_back(std::exp2(static_cast<double>(bin)) - 1.0);
      curve.x_hi.push_back(std::exp2(static_cast<double>(bin) + 1.0) - 1.0);
      curve.mean_y.push_back(cell.first / static_cast<double>(cell.second));
      curve.n_per_bin.push_back(cell.second);
    }
    out.push_back(std::move(curve));
  }
  return out;
}

double weighted_slope(const ResponseCurve& curve, std::size_t min_bin_n) {
  std::vector<double> xs, ys, ws;
  for (std::size_t i = 0; i < curve.mean_y.size(); ++i) {
    if (curve.n_per_bin[i] < min_bin_n) continue;
    xs.push_back(std::log2(curve.x_lo[i] + 1.0));  // recover the bin index
    ys.push_back(curve.mean_y[i]);
    ws.push_back(static_cast<double>(curve.n_per_bin[i]));
  }
  if (xs.size() < 2) return 0.0;
  double W = 0.0, mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    W += ws[i];
    mx += ws[i] * xs[i];
    my += ws[i] * ys[i];
  }
  mx /= W;
  my /= W;
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    num += ws[i] * (xs[i] - mx) * (ys[i] - my);
    den += ws[i] * (xs[i] - mx) * (xs[i] - mx);
  }
  return den > 0.0 ? num / den : 0.0;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.empty()) throw DataError("pearson: mismatched samples");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);  // NaN when either variance is zero
}

VisibilityStats visibility_stats(const Table& table) {
  const std::size_t n = table.rows.size();
  if (n < 3) throw DataError("visibility_stats: need at least 3 rows, have " + std::to_string(n));

  std::vector<double> ic(n), ec(n), inf(n);
  for (std::size_t i = 0; i < n; ++i) {
    ic[i] = table.rows[i].counts.initial_citations;
    ec[i] = table.rows[i].counts.exposures;
    inf[i] = table.rows[i].counts.infections;
  }
  auto variance_ok = [n](const std::vector<double>& v, const char* name) {
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(n);
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    if (!(ss > 0.0)) throw DataError(std::string("visibility_stats: ") + name + " has zero variance");
  };
  variance_ok(ic, "IC");
  variance_ok(ec, "E_C");
  variance_ok(inf, "I");

  VisibilityStats s;
  s.n = n;
  s.r_ic = pearson(ic, inf);
  s.r_ec = pearson(ec, inf);

  Eigen::MatrixX3d X(static_cast<Eigen::Index>(n), 3);
  Eigen::VectorXd y(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    X(r, 0) = ic[i];
    X(r, 1) = ec[i];
    X(r, 2) = 1.0;
    y(r) = inf[i];
  }
  Eigen::Vector3d beta = X.colPivHouseholderQr().solve(y);
  s.a = beta(0);
  s.b = beta(1);
  s.c = beta(2);

  Eigen::VectorXd fitted = X * beta;
  std::vector<double> fv(fitted.data(), fitted.data() + fitted.size());
  const double rc = pearson(fv, inf);
  s.r_combined = std::isnan(rc) ? 0.0 : rc;
  return s;
}

std::vector<NoveltyPoint> novelty_curve(const corpus::CitationGraph& g,
                                        std::span<const int> latencies, int exposure_months,
                                        int infection_months, const corpus::CohortFilter& filter,
                                        unsigned threads) {
  if (latencies.empty()) throw DataError("novelty_curve: no latencies given");
  std::vector<NoveltyPoint> out;
  for (int latency : latencies) {
    cascade::CascadeWindows w{latency, exposure_months, infection_months};
    cascade::CascadeTable table;
    try {
      table = cascade::compute_all(g, w, filter, cascade::ExposureCounting::per_edge, threads);
    } catch (const DataError& e) {
      throw DataError("novelty_curve: latency " + std::to_string(latency) + " months: " + e.what());
    }
    std::vector<double> rates;
    rates.reserve(table.rows.size());
    for (const auto& r : table.rows) rates.push_back(cascade::infection_rate(r));
    out.push_back(NoveltyPoint{latency, median(std::move(rates)), table.rows.size()});
  }
  return out;
}

namespace {

// log2-binned (E_C, I | Z) information decomposition shared by the
// popularity and divided-attention analyses. Popularity treats a single
// occupied bin as an error; divided attention tolerates it (a one-row table
// is a legitimate, if trivial, result there).
MiRow mi_decomposition(const Table& table, Variable z_variable, infotheory::Estimator est,
                       bool require_nondegenerate) {
  std::vector<std::int32_t> x, y, z;
  x.reserve(table.rows.size());
  for (const auto& r : table.rows) {
    x.push_back(infotheory::log2_bin(r.counts.exposures));
    y.push_back(infotheory::log2_bin(r.counts.infections));
    z.push_back(infotheory::log2_bin(value_of(r, z_variable)));
  }
  if (require_nondegenerate) {
    auto t = infotheory::JointTable::from_samples(x, y);
    if (t.distinct_bins(0) < 2 || t.distinct_bins(1) < 2) {
      throw DataError("degenerate binning: exposures or infections fall in a single bin");
    }
  }
  MiRow row;
  row.mi = infotheory::mutual_information(x, y, est);
  row.cmi = infotheory::conditional_mi(x, y, z, est);
  row.ii = row.cmi - row.mi;
  return row;
}

}  // namespace

PopularityAnalysis popularity_analysis(const Table& table, const ClassSpec& ic_classes,
                                       infotheory::Estimator est) {
  PopularityAnalysis out;
  Table sub = drop_ic_zero(table, &out.excluded_ic_zero);
  if (sub.rows.empty()) throw DataError("popularity_analysis: every row has IC = 0");
  out.curves = exposure_response(sub, Variable::exposures, ic_classes);
  if (out.curves.size() < 2) {
    throw DataError("popularity_analysis: need at least 2 nonempty classes, have " +
                    std::to_string(out.curves.size()));
  }
  out.mi = mi_decomposition(sub, Variable::initial_citations, est, true);
  return out;
}

HaloAnalysis halo_analysis(const Table& table, const ClassSpec& exposure_classes) {
  HaloAnalysis out;
  Table sub = drop_ic_zero(table, &out.excluded_ic_zero);
  if (sub.rows.empty()) throw DataError("halo_analysis: every row has IC = 0");
  out.curves = exposure_response(sub, Variable::initial_citations, exposure_classes);
  return out;
}

DividedAttentionAnalysis divided_attention_analysis(const Table& table,
                                                    const ClassSpec& distraction_classes,
                                                    const ClassSpec& quality_classes,
                                                    infotheory::Estimator est) {
  DividedAttentionAnalysis out;
  Table sub = drop_ic_zero(table, &out.excluded_ic_zero);
  if (sub.rows.empty()) throw DataError("divided_attention_analysis: every row has IC = 0");
  out.by_distraction = exposure_response(sub, Variable::exposures, distraction_classes);
  out.by_quality = exposure_response(sub, Variable::distraction_mean, quality_classes);
  out.mi = mi_decomposition(sub, Variable::distraction_mean, est, false);
  return out;
}

}  // namespace citelens::bias
