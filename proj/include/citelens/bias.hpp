#pragma once

// Bias analyses over cascade count tables: response curves stratified by
// document classes, correlation/regression visibility stats, novelty decay,
// and MI decompositions. Rows with IC = 0 have no defined class variables
// (D_mean is undefined, popularity classes start at one citation), so the
// popularity/halo/divided-attention analyses drop them and report how many;
// visibility and novelty keep every row.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "citelens/cascade.hpp"
#include "citelens/corpus.hpp"
#include "citelens/infotheory.hpp"

namespace citelens::bias {

enum class Variable {
  initial_citations,  // IC
  exposures,          // E_C
  distraction_mean,   // D_mean
  total_citations,    // whole-corpus in-degree
};

std::string variable_name(Variable v);

// Half-open classes over one variable: boundaries b1 < b2 < ... define
// (-inf, b1), [b1, b2), ..., [b_last, inf). labels has boundaries.size()+1
// entries.
struct ClassSpec {
  Variable variable = Variable::initial_citations;
  std::vector<double> boundaries;
  std::vector<std::string> labels;
  void validate() const;
  std::size_t classify(double value) const;

  static ClassSpec ic_default();           // 1-2 / 3-10 / >10 citations
  static ClassSpec exposure_default();     // same breaks over E_C
  static ClassSpec distraction_default();  // <10 / 10-30 / >30 references
  static ClassSpec quality_default();      // <10 / 10-100 / >100 citations
};

// Cascade counts annotated with whole-corpus citation totals.
struct Row {
  cascade::CascadeCounts counts;
  std::uint32_t total_citations = 0;
};

struct Table {
  std::vector<Row> rows;
  static Table from(const corpus::CitationGraph& g, const cascade::CascadeTable& t);
};

// Mean infections per base-2 logarithmic bin of the x variable.
struct ResponseCurve {
  std::string class_label;  // empty when the curve covers the whole table
  std::vector<double> x_lo, x_hi;        // log2 bin edges, [2^b-1, 2^(b+1)-1)
  std::vector<double> mean_y;
  std::vector<std::size_t> n_per_bin;    // always >= 1; empty bins are omitted
};

// One curve per class (classes with no rows are omitted), or a single
// unlabeled curve when class_spec is absent. DataError on an empty table.
std::vector<ResponseCurve> exposure_response(const Table& table, Variable x,
                                             const std::optional<ClassSpec>& class_spec = {});

// Weighted least-squares slope of mean_y against bin index (weights
// n_per_bin, bins with n >= min_bin_n). Trend detector for curves.
double weighted_slope(const ResponseCurve& curve, std::size_t min_bin_n = 1);

struct VisibilityStats {
  double r_ic = 0.0;        // Pearson r(IC, I)
  double r_ec = 0.0;        // Pearson r(E_C, I)
  double r_combined = 0.0;  // Pearson r(fitted, I) for I ~ a IC + b E_C + c
  double a = 0.0, b = 0.0, c = 0.0;
  std::size_t n = 0;
};

// Needs n >= 3 and nonzero variance in IC, E_C and I (DataError names the
// flat variable otherwise).
VisibilityStats visibility_stats(const Table& table);

double pearson(std::span<const double> x, std::span<const double> y);

struct NoveltyPoint {
  int latency_months = 0;
  double median_infection_rate = 0.0;
  std::size_t n = 0;
};

// Median infection rate per latency, at fixed exposure/infection windows.
// DataError (naming the latency) when censoring empties a population.
std::vector<NoveltyPoint> novelty_curve(const corpus::CitationGraph& g,
                                        std::span<const int> latencies, int exposure_months,
                                        int infection_months,
                                        const corpus::CohortFilter& filter = {},
                                        unsigned threads = 1);

struct MiRow {
  double mi = 0.0;   // I(E_C; I)
  double cmi = 0.0;  // I(E_C; I | Z)
  double ii = 0.0;   // cmi - mi
};

struct PopularityAnalysis {
  std::vector<ResponseCurve> curves;  // mean I vs E_C, one per IC class
  MiRow mi;                           // Z = log2-binned IC
  std::size_t excluded_ic_zero = 0;
};

PopularityAnalysis popularity_analysis(
    const Table& table, const ClassSpec& ic_classes = ClassSpec::ic_default(),
    infotheory::Estimator est = infotheory::Estimator::plug_in);

struct HaloAnalysis {
  std::vector<ResponseCurve> curves;  // mean I vs IC, one per E_C class
  std::size_t excluded_ic_zero = 0;
};

HaloAnalysis halo_analysis(const Table& table,
                           const ClassSpec& exposure_classes = ClassSpec::exposure_default());

struct DividedAttentionAnalysis {
  std::vector<ResponseCurve> by_distraction;  // mean I vs E_C, per D_mean class
  std::vector<ResponseCurve> by_quality;      // mean I vs D_mean, per quality class
  MiRow mi;                                   // Z = log2-binned D_mean
  std::size_t excluded_ic_zero = 0;
};

DividedAttentionAnalysis divided_attention_analysis(
    const Table& table, const ClassSpec& distraction_classes = ClassSpec::distraction_default(),
    const ClassSpec& quality_classes = ClassSpec::quality_default(),
    infotheory::Estimator est = infotheory::Estimator::plug_in);

}  // namespace citelens::bias
