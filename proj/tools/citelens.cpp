// citelens: batch analyses over timestamped citation graphs.
//
// Every subcommand writes into an --out directory: analysis tables (CSV by
// default, JSON with --format json), a JSON sidecar with run metadata, and a
// manifest.json recording the command line, input digests, tool version and
// seed. A directory holding a manifest is a completed run; reruns need
// --force. Failures remove whatever partial outputs this run created.
//
// Exit codes: 0 success, 1 usage error, 2 data error.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "citelens/bias.hpp"
#include "citelens/cascade.hpp"
#include "citelens/corpus.hpp"
#include "citelens/csv.hpp"
#include "citelens/error.hpp"
#include "citelens/infotheory.hpp"
#include "citelens/manifest.hpp"
#include "citelens/synth.hpp"
#include "citelens/temporal.hpp"
#include "citelens/version.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace citelens;

namespace {

std::string join_command_line(int argc, char** argv) {
  std::string out;
  for (int i = 0; i < argc; ++i) {
    if (i) out += ' ';
    const std::string arg = argv[i];
    if (arg.find_first_of(" \t\"") == std::string::npos) {
      out += arg;
      continue;
    }
    out += '"';
    for (char c : arg) {
      if (c == '"' || c == '\\') out += '\\';
      out += c;
    }
    out += '"';
  }
  return out;
}

// --- shared option bundles -------------------------------------------------

struct InputOptions {
  std::string documents_path;
  std::string citations_path;
  std::string on_anomaly = "drop";
  std::optional<int> horizon;

  corpus::AnomalyPolicy policy() const {
    if (on_anomaly == "drop") return corpus::AnomalyPolicy::drop;
    if (on_anomaly == "keep") return corpus::AnomalyPolicy::keep;
    return corpus::AnomalyPolicy::fail;
  }

  void attach(CLI::App* cmd) {
    cmd->add_option("--documents", documents_path, "documents CSV (doc_id,pub_date[,kind])")
        ->required();
    cmd->add_option("--citations", citations_path, "citations CSV (citing_id,cited_id)")
        ->required();
    cmd->add_option("--on-anomaly", on_anomaly,
                    "forward-in-time citation policy (default drop)")
        ->check(CLI::IsMember({"drop", "keep", "fail"}));
    cmd->add_option("--horizon-month", horizon,
                    "observation horizon as months since 1800-01 (default: last pub month)");
  }

  corpus::IngestResult load() const {
    std::ifstream docs(documents_path, std::ios::binary);
    if (!docs) throw DataError("cannot open " + documents_path);
    std::ifstream cits(citations_path, std::ios::binary);
    if (!cits) throw DataError("cannot open " + citations_path);
    std::optional<corpus::MonthIndex> h;
    if (horizon) h = static_cast<corpus::MonthIndex>(*horizon);
    return corpus::ingest(docs, cits, policy(), h, documents_path, citations_path);
  }

  ordered_json params() const {
    ordered_json j;
    j["documents"] = documents_path;
    j["citations"] = citations_path;
    j["on_anomaly"] = on_anomaly;
    if (horizon)
      j["horizon_month"] = *horizon;
    else
      j["horizon_month"] = nullptr;
    return j;
  }

  std::map<std::string, std::string> digests() const {
    return {{documents_path, manifest::sha256_file(documents_path)},
            {citations_path, manifest::sha256_file(citations_path)}};
  }
};

struct CohortOptions {
  std::string kind;
  std::optional<int> pub_from;
  std::optional<int> pub_to;

  void attach(CLI::App* cmd) {
    cmd->add_option("--kind", kind, "restrict to documents of this kind");
    cmd->add_option("--pub-from", pub_from, "earliest pub month, inclusive");
    cmd->add_option("--pub-to", pub_to, "pub month upper bound, exclusive");
  }

  bool any() const { return !kind.empty() || pub_from || pub_to; }

  corpus::CohortFilter filter() const {
    corpus::CohortFilter f;
    if (!kind.empty()) f.kind = kind;
    if (pub_from) f.pub_from = static_cast<corpus::MonthIndex>(*pub_from);
    if (pub_to) f.pub_to = static_cast<corpus::MonthIndex>(*pub_to);
    return f;
  }

  void params(ordered_json& j) const {
    j["kind"] = kind.empty() ? ordered_json(nullptr) : ordered_json(kind);
    j["pub_from"] = pub_from ? ordered_json(*pub_from) : ordered_json(nullptr);
    j["pub_to"] = pub_to ? ordered_json(*pub_to) : ordered_json(nullptr);
  }
};

struct WindowOptions {
  int latency = 24;
  int exposure = 12;
  int infection = 24;
  bool distinct = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--latency-months", latency, "latency window length (default 24)");
    cmd->add_option("--exposure-months", exposure, "exposure window length (default 12)");
    cmd->add_option("--infection-months", infection, "infection window length (default 24)");
    cmd->add_flag("--distinct-exposures", distinct,
                  "count exposing documents once instead of per edge");
  }

  cascade::CascadeWindows windows() const { return {latency, exposure, infection}; }
  cascade::ExposureCounting counting() const {
    return distinct ? cascade::ExposureCounting::distinct_documents
                    : cascade::ExposureCounting::per_edge;
  }

  void params(ordered_json& j) const {
    j["latency_months"] = latency;
    j["exposure_months"] = exposure;
    j["infection_months"] = infection;
    j["exposure_counting"] = distinct ? "distinct_documents" : "per_edge";
  }
};

struct OutputOptions {
  std::string out_dir;
  bool force = false;
  unsigned threads = 0;

  void attach(CLI::App* cmd, bool with_threads = true) {
    cmd->add_option("--out", out_dir, "output directory")->required();
    cmd->add_flag("--force", force, "overwrite a directory that already holds a run");
    if (with_threads)
      cmd->add_option("--threads", threads, "worker count, 0 = available parallelism");
  }
};

// Collects files written by this run so a failure can remove exactly them.
class RunOutput {
 public:
  RunOutput(const std::string& dir, bool force) : dir_(dir), force_(force) {}

  void prepare() {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw DataError("cannot create " + dir_.string() + ": " + ec.message());
    const auto m = dir_ / "manifest.json";
    if (fs::exists(m)) {
      if (!force_)
        throw UsageError(dir_.string() +
                         " already contains a completed run (manifest.json); pass --force to overwrite");
      fs::remove(m);  // a rerun must never leave a stale manifest behind
    }
  }

  void write_text(const std::string& name, const std::string& contents) {
    const auto p = dir_ / name;
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write " + p.string());
    out << contents;
    if (!out.flush()) throw DataError("cannot write " + p.string());
    written_.push_back(p);
  }

  void write_json(const std::string& name, const ordered_json& j) {
    write_text(name, j.dump(2) + "\n");
  }

  void finish(const manifest::RunManifest& m) {
    manifest::write_manifest_atomic(dir_ / "manifest.json", m);
  }

  void discard() noexcept {
    for (const auto& p : written_) {
      std::error_code ec;
      fs::remove(p, ec);
    }
  }

 private:
  fs::path dir_;
  bool force_ = false;
  std::vector<fs::path> written_;
};

struct RunContext {
  std::string command_line;
  std::string started;
};

manifest::RunManifest make_manifest(const RunContext& ctx, const ordered_json& params,
                                    std::map<std::string, std::string> digests,
                                    std::optional<std::uint64_t> seed = std::nullopt) {
  manifest::RunManifest m;
  m.command_line = ctx.command_line;
  m.config_hash = manifest::sha256_hex(params.dump());
  m.input_digests = std::move(digests);
  m.tool_version = std::string(kVersion);
  m.seed = seed;
  m.started = ctx.started;
  m.finished = manifest::iso8601_utc_now();
  return m;
}

// --- table rendering ---------------------------------------------------------

enum class Format { csv, json };

std::string table_file(const std::string& stem, Format f) {
  return stem + (f == Format::csv ? ".csv" : ".json");
}

std::string render_series_csv(const temporal::BinnedSeries& s) {
  std::ostringstream ss;
  temporal::write_series_csv(ss, s);
  return ss.str();
}

ordered_json series_json(const temporal::BinnedSeries& s) {
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    ordered_json r;
    r["bin_lo"] = s.bin_edges[i];
    r["bin_hi"] = s.bin_edges[i + 1];
    r["value"] = s.values[i];  // NaN serializes as null
    rows.push_back(std::move(r));
  }
  return rows;
}

void emit_series(RunOutput& out, Format f, const std::string& stem,
                 const temporal::BinnedSeries& s) {
  if (f == Format::csv)
    out.write_text(table_file(stem, f), render_series_csv(s));
  else
    out.write_json(table_file(stem, f), series_json(s));
}

const char* normalization_name(temporal::Normalization n) {
  switch (n) {
    case temporal::Normalization::raw_count: return "raw_count";
    case temporal::Normalization::probability: return "probability";
    case temporal::Normalization::per_total_citations: return "per_total_citations";
  }
  return "?";
}

std::string render_curve_csv(const bias::ResponseCurve& c) {
  std::ostringstream ss;
  csv::write_row(ss, std::vector<std::string>{"x_lo", "x_hi", "mean_infections", "n"});
  for (std::size_t i = 0; i < c.mean_y.size(); ++i) {
    csv::write_row(ss, std::vector<std::string>{
                           csv::format_number(c.x_lo[i]), csv::format_number(c.x_hi[i]),
                           csv::format_number(c.mean_y[i]), std::to_string(c.n_per_bin[i])});
  }
  return ss.str();
}

ordered_json curve_json(const bias::ResponseCurve& c) {
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < c.mean_y.size(); ++i) {
    ordered_json r;
    r["x_lo"] = c.x_lo[i];
    r["x_hi"] = c.x_hi[i];
    r["mean_infections"] = c.mean_y[i];
    r["n"] = c.n_per_bin[i];
    rows.push_back(std::move(r));
  }
  return rows;
}

// One file per curve; returns sidecar entries {label, file, n bins}.
ordered_json emit_curves(RunOutput& out, Format f, const std::string& prefix,
                         const std::vector<bias::ResponseCurve>& curves) {
  ordered_json files = ordered_json::array();
  for (std::size_t i = 0; i < curves.size(); ++i) {
    const std::string stem = prefix + "_c" + std::to_string(i);
    if (f == Format::csv)
      out.write_text(table_file(stem, f), render_curve_csv(curves[i]));
    else
      out.write_json(table_file(stem, f), curve_json(curves[i]));
    ordered_json entry;
    entry["class"] = curves[i].class_label;
    entry["file"] = table_file(stem, f);
    entry["bins"] = curves[i].mean_y.size();
    files.push_back(std::move(entry));
  }
  return files;
}

ordered_json report_json(const corpus::IngestReport& r) {
  ordered_json j;
  j["documents"] = r.documents;
  j["edges"] = r.edges;
  j["dropped_unknown_edges"] = r.dropped_unknown_edges;
  j["dropped_self_citations"] = r.dropped_self_citations;
  j["dropped_duplicate_edges"] = r.dropped_duplicate_edges;
  j["dropped_anomalies"] = r.dropped_anomalies;
  j["kept_anomalies"] = r.kept_anomalies;
  return j;
}

ordered_json mi_json(const bias::MiRow& row, infotheory::Estimator est) {
  ordered_json j;
  j["mi_nats"] = row.mi;
  j["cmi_nats"] = row.cmi;
  j["interaction_nats"] = row.ii;
  j["units"] = "nats";
  j["binning"] = "log2_bins";
  j["estimator"] = est == infotheory::Estimator::miller_madow ? "miller_madow" : "plug_in";
  return j;
}

// Spec for a --*-classes override: comma-separated ascending boundaries.
bias::ClassSpec parse_classes(const std::string& text, bias::Variable var,
                              const bias::ClassSpec& fallback) {
  if (text.empty()) return fallback;
  bias::ClassSpec spec;
  spec.variable = var;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      spec.boundaries.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw UsageError("bad class boundary '" + item + "'");
    }
  }
  if (spec.boundaries.empty()) throw UsageError("class boundary list is empty");
  for (std::size_t i = 0; i <= spec.boundaries.size(); ++i) {
    std::string label;
    if (i == 0)
      label = "<" + csv::format_number(spec.boundaries[0]);
    else if (i == spec.boundaries.size())
      label = ">=" + csv::format_number(spec.boundaries.back());
    else
      label = "[" + csv::format_number(spec.boundaries[i - 1]) + "," +
              csv::format_number(spec.boundaries[i]) + ")";
    spec.labels.push_back(label);
  }
  spec.validate();
  return spec;
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw UsageError(std::string("bad ") + what + " '" + item + "'");
    }
  }
  if (out.empty()) throw UsageError(std::string("empty ") + what + " list");
  return out;
}

// --- subcommands -------------------------------------------------------------

struct IngestCmd {
  InputOptions input;
  OutputOptions output;

  void attach(CLI::App* cmd) {
    input.attach(cmd);
    output.attach(cmd, /*with_threads=*/false);
  }

  int run(const RunContext& ctx) {
    auto [graph, report] = input.load();

    RunOutput out(output.out_dir, output.force);
    out.prepare();
    try {
      std::ostringstream docs, cits;
      graph.write_documents_csv(docs);
      graph.write_citations_csv(cits);
      out.write_text("documents.csv", docs.str());
      out.write_text("citations.csv", cits.str());

      ordered_json rep = report_json(report);
      rep["horizon_month"] = graph.horizon_month();
      rep["min_pub_month"] = graph.min_pub_month();
      rep["max_pub_month"] = graph.max_pub_month();
      out.write_json("report.json", rep);

      ordered_json params = input.params();
      params["subcommand"] = "ingest";
      out.finish(make_manifest(ctx, params, input.digests()));
    } catch (...) {
      out.discard();
      throw;
    }
    return 0;
  }
};

struct StatsCmd {
  InputOptions input;
  CohortOptions cohort;
  OutputOptions output;
  std::string analysis;
  int bin_months = 12;
  std::optional<int> cohort_month;
  bool normalize = false;
  bool rebin_log2 = false;
  std::optional<double> fit_lo, fit_hi;
  Format format = Format::csv;

  void attach(CLI::App* cmd) {
    input.attach(cmd);
    cohort.attach(cmd);
    output.attach(cmd);
    cmd->add_option("--analysis", analysis, "which statistic to compute")
        ->required()
        ->check(CLI::IsMember({"activity", "citation-distribution", "citations-vs-references",
                               "first-citation", "age-curve", "last-citation"}));
    cmd->add_option("--bin-months", bin_months, "bin width for activity (default 12)");
    cmd->add_option("--cohort-month", cohort_month, "cohort pub month for age-curve");
    cmd->add_flag("--normalize", normalize,
                  "age-curve: divide by total citations made that month");
    cmd->add_flag("--rebin-log2", rebin_log2, "rebin the series onto base-2 bins (density)");
    cmd->add_option("--fit-lo", fit_lo, "tail fit range lower edge");
    cmd->add_option("--fit-hi", fit_hi, "tail fit range upper edge");
    cmd->add_option("--format", format, "table format (default csv)")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, Format>{{"csv", Format::csv}, {"json", Format::json}}));
  }

  int run(const RunContext& ctx) {
    if (fit_lo.has_value() != fit_hi.has_value())
      throw UsageError("--fit-lo and --fit-hi must be given together");
    const bool filtered_analysis =
        analysis == "citation-distribution" || analysis == "first-citation";
    if (cohort.any() && !filtered_analysis)
      throw UsageError("--kind/--pub-from/--pub-to only apply to citation-distribution "
                       "and first-citation");
    if (analysis == "age-curve" && !cohort_month)
      throw UsageError("age-curve requires --cohort-month");

    auto [graph, report] = input.load();

    RunOutput out(output.out_dir, output.force);
    out.prepare();
    try {
      ordered_json sidecar;
      sidecar["analysis"] = analysis;

      // single-series analyses flow through `series` for rebin/fit
      std::optional<temporal::BinnedSeries> series;
      std::string stem;

      if (analysis == "activity") {
        auto act = temporal::activity_series(graph, bin_months);
        emit_series(out, format, "activity_documents", act.nodes);
        emit_series(out, format, "activity_edges", act.edges);
        sidecar["bin_months"] = bin_months;
        sidecar["normalization"] = normalization_name(act.nodes.normalization);
      } else if (analysis == "citation-distribution") {
        auto dist = temporal::citation_count_distribution(graph, cohort.filter());
        series = dist.histogram;
        stem = "citation_distribution";
        sidecar["documents"] = dist.documents;
        sidecar["fraction_below_ten"] = dist.fraction_below_ten;
      } else if (analysis == "citations-vs-references") {
        series = temporal::citations_vs_references(graph);
        stem = "citations_vs_references";
      } else if (analysis == "first-citation") {
        auto first = temporal::time_to_first_citation(graph, cohort.filter());
        series = first.distribution;
        stem = "first_citation";
        sidecar["uncited"] = first.uncited;
        sidecar["cohort_size"] = first.cohort_size;
      } else if (analysis == "age-curve") {
        series = temporal::citation_age_curve(
            graph, static_cast<corpus::MonthIndex>(*cohort_month), normalize);
        stem = "age_curve";
        sidecar["cohort_month"] = *cohort_month;
        sidecar["normalize"] = normalize;
      } else {  // last-citation
        auto last = temporal::last_citation_stats(graph, graph.horizon_month());
        emit_series(out, format, "age_at_last", last.age_at_last);
        emit_series(out, format, "time_since_last", last.time_since_last);
        sidecar["uncited"] = last.uncited;
        sidecar["horizon_month"] = graph.horizon_month();
      }

      if (series) {
        if (rebin_log2) *series = temporal::log2_rebin(*series, /*density=*/true);
        emit_series(out, format, stem, *series);
        sidecar["normalization"] = normalization_name(series->normalization);
        sidecar["rebin_log2"] = rebin_log2;
        if (fit_lo) {
          auto fit = temporal::fit_tail(*series, *fit_lo, *fit_hi);
          ordered_json fj;
          fj["exponent"] = fit.exponent;
          fj["intercept"] = fit.intercept;
          fj["fit_lo"] = fit.fit_lo;
          fj["fit_hi"] = fit.fit_hi;
          fj["r_squared"] = fit.r_squared;
          fj["points"] = fit.points;
          sidecar["fit"] = std::move(fj);
        }
      } else if (rebin_log2 || fit_lo) {
        throw UsageError("--rebin-log2/--fit-lo apply to single-series analyses only");
      }

      sidecar["ingest"] = report_json(report);
      out.write_json("stats.json", sidecar);

      ordered_json params = input.params();
      params["subcommand"] = "stats";
      params["analysis"] = analysis;
      cohort.params(params);
      params["bin_months"] = bin_months;
      params["cohort_month"] = cohort_month ? ordered_json(*cohort_month) : ordered_json(nullptr);
      params["normalize"] = normalize;
      params["rebin_log2"] = rebin_log2;
      params["fit_lo"] = fit_lo ? ordered_json(*fit_lo) : ordered_json(nullptr);
      params["fit_hi"] = fit_hi ? ordered_json(*fit_hi) : ordered_json(nullptr);
      params["format"] = format == Format::csv ? "csv" : "json";
      out.finish(make_manifest(ctx, params, input.digests()));
    } catch (...) {
      out.discard();
      throw;
    }
    return 0;
  }
};

struct CascadeCmd {
  InputOptions input;
  CohortOptions cohort;
  WindowOptions windows;
  OutputOptions output;
  Format format = Format::csv;

  void attach(CLI::App* cmd) {
    input.attach(cmd);
    cohort.attach(cmd);
    windows.attach(cmd);
    output.attach(cmd);
    cmd->add_option("--format", format, "table format (default csv)")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, Format>{{"csv", Format::csv}, {"json", Format::json}}));
  }

  int run(const RunContext& ctx) {
    auto [graph, report] = input.load();
    auto table = cascade::compute_all(graph, windows.windows(), cohort.filter(),
                                      windows.counting(), output.threads);

    RunOutput out(output.out_dir, output.force);
    out.prepare();
    try {
      if (format == Format::csv) {
        std::ostringstream ss;
        cascade::write_table_csv(ss, table);
        out.write_text("cascade.csv", ss.str());
      } else {
        ordered_json rows = ordered_json::array();
        for (const auto& r : table.rows) {
          ordered_json j;
          j["doc_id"] = r.doc;
          j["t1"] = r.t1;
          j["R"] = r.references;
          j["IC"] = r.initial_citations;
          j["E_C"] = r.exposures;
          j["D_total"] = r.distraction_total;
          j["D_mean"] = r.distraction_mean;  // null when IC = 0
          j["I"] = r.infections;
          rows.push_back(std::move(j));
        }
        out.write_json("cascade.json", rows);
      }

      ordered_json side;
      windows.params(side);
      side["rows"] = table.rows.size();
      side["censored"] = table.censored;
      side["filtered_out"] = table.filtered_out;
      side["horizon_month"] = graph.horizon_month();
      side["ingest"] = report_json(report);
      out.write_json("summary.json", side);

      ordered_json params = input.params();
      params["subcommand"] = "cascade";
      cohort.params(params);
      windows.params(params);
      params["format"] = format == Format::csv ? "csv" : "json";
      params["threads_note"] = "thread count does not affect output";
      out.finish(make_manifest(ctx, params, input.digests()));
    } catch (...) {
      out.discard();
      throw;
    }
    return 0;
  }
};

struct BiasCmd {
  InputOptions input;
  CohortOptions cohort;
  WindowOptions windows;
  OutputOptions output;
  std::string analysis;
  std::string latency_list = "12,24,36,48";
  std::string ic_classes, exposure_classes, distraction_classes, quality_classes;
  bool miller_madow = false;
  Format format = Format::csv;

  void attach(CLI::App* cmd) {
    input.attach(cmd);
    cohort.attach(cmd);
    windows.attach(cmd);
    output.attach(cmd);
    cmd->add_option("--analysis", analysis, "which bias analysis to run")
        ->required()
        ->check(CLI::IsMember({"visibility", "novelty", "popularity", "halo", "divided"}));
    cmd->add_option("--latency-list", latency_list,
                    "novelty: comma-separated latencies in months (default 12,24,36,48)");
    cmd->add_option("--ic-classes", ic_classes,
                    "popularity: initial-citation class boundaries, e.g. 3,11");
    cmd->add_option("--exposure-classes", exposure_classes,
                    "halo: exposure class boundaries");
    cmd->add_option("--distraction-classes", distraction_classes,
                    "divided: mean-distraction class boundaries");
    cmd->add_option("--quality-classes", quality_classes,
                    "divided: total-citation class boundaries");
    cmd->add_flag("--miller-madow", miller_madow,
                  "Miller-Madow entropy correction for the MI rows");
    cmd->add_option("--format", format, "table format (default csv)")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, Format>{{"csv", Format::csv}, {"json", Format::json}}));
  }

  int run(const RunContext& ctx) {
    auto [graph, report] = input.load();
    const auto est =
        miller_madow ? infotheory::Estimator::miller_madow : infotheory::Estimator::plug_in;

    RunOutput out(output.out_dir, output.force);
    out.prepare();
    try {
      ordered_json side;
      side["analysis"] = analysis;
      windows.params(side);

      if (analysis == "novelty") {
        const auto latencies = parse_int_list(latency_list, "latency");
        auto points = bias::novelty_curve(graph, latencies, windows.exposure,
                                          windows.infection, cohort.filter(), output.threads);
        if (format == Format::csv) {
          std::ostringstream ss;
          csv::write_row(ss, std::vector<std::string>{"latency_months",
                                                      "median_infection_rate", "n"});
          for (const auto& p : points) {
            csv::write_row(ss, std::vector<std::string>{
                                   std::to_string(p.latency_months),
                                   csv::format_number(p.median_infection_rate),
                                   std::to_string(p.n)});
          }
          out.write_text("novelty.csv", ss.str());
        } else {
          ordered_json rows = ordered_json::array();
          for (const auto& p : points) {
            ordered_json r;
            r["latency_months"] = p.latency_months;
            r["median_infection_rate"] = p.median_infection_rate;
            r["n"] = p.n;
            rows.push_back(std::move(r));
          }
          out.write_json("novelty.json", rows);
        }
        side["latencies"] = latencies;
      } else {
        auto counts = cascade::compute_all(graph, windows.windows(), cohort.filter(),
                                           windows.counting(), output.threads);
        auto table = bias::Table::from(graph, counts);
        side["rows"] = table.rows.size();
        side["censored"] = counts.censored;
        side["filtered_out"] = counts.filtered_out;

        if (analysis == "visibility") {
          auto v = bias::visibility_stats(table);
          ordered_json vj;
          vj["n"] = v.n;
          vj["r_ic"] = v.r_ic;
          vj["r_ec"] = v.r_ec;
          vj["r_combined"] = v.r_combined;
          vj["a"] = v.a;
          vj["b"] = v.b;
          vj["c"] = v.c;
          side["visibility"] = std::move(vj);
        } else if (analysis == "popularity") {
          auto spec = parse_classes(ic_classes, bias::Variable::initial_citations,
                                    bias::ClassSpec::ic_default());
          auto pop = bias::popularity_analysis(table, spec, est);
          side["curves"] = emit_curves(out, format, "popularity", pop.curves);
          side["mi"] = mi_json(pop.mi, est);
          side["excluded_ic_zero"] = pop.excluded_ic_zero;
        } else if (analysis == "halo") {
          auto spec = parse_classes(exposure_classes, bias::Variable::exposures,
                                    bias::ClassSpec::exposure_default());
          auto halo = bias::halo_analysis(table, spec);
          side["curves"] = emit_curves(out, format, "halo", halo.curves);
          side["excluded_ic_zero"] = halo.excluded_ic_zero;
        } else {  // divided
          auto dspec = parse_classes(distraction_classes, bias::Variable::distraction_mean,
                                     bias::ClassSpec::distraction_default());
          auto qspec = parse_classes(quality_classes, bias::Variable::total_citations,
                                     bias::ClassSpec::quality_default());
          auto div = bias::divided_attention_analysis(table, dspec, qspec, est);
          side["curves_by_distraction"] =
              emit_curves(out, format, "divided_distraction", div.by_distraction);
          side["curves_by_quality"] = emit_curves(out, format, "divided_quality", div.by_quality);
          side["mi"] = mi_json(div.mi, est);
          side["excluded_ic_zero"] = div.excluded_ic_zero;
        }
      }

      side["ingest"] = report_json(report);
      out.write_json("stats.json", side);

      ordered_json params = input.params();
      params["subcommand"] = "bias";
      params["analysis"] = analysis;
      cohort.params(params);
      windows.params(params);
      params["latency_list"] = latency_list;
      params["ic_classes"] = ic_classes;
      params["exposure_classes"] = exposure_classes;
      params["distraction_classes"] = distraction_classes;
      params["quality_classes"] = quality_classes;
      params["miller_madow"] = miller_madow;
      params["format"] = format == Format::csv ? "csv" : "json";
      out.finish(make_manifest(ctx, params, input.digests()));
    } catch (...) {
      out.discard();
      throw;
    }
    return 0;
  }
};

struct SimulateCmd {
  std::string config_path;
  std::optional<int> months, docs_per_month, refs_per_doc;
  std::optional<double> recency, attachment, copy_prob, fitness_spread, refs_spread;
  std::optional<std::uint64_t> seed;
  double halo_weight = 0.0;
  OutputOptions output;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "key=value generator config file");
    cmd->add_option("--months", months, "months to simulate");
    cmd->add_option("--docs-per-month", docs_per_month, "documents per month");
    cmd->add_option("--refs-per-doc", refs_per_doc, "references per document");
    cmd->add_option("--recency-exponent", recency, "age kernel exponent (gamma)");
    cmd->add_option("--attachment-exponent", attachment, "in-degree kernel exponent (alpha)");
    cmd->add_option("--copy-prob", copy_prob, "per-slot reference copy probability");
    cmd->add_option("--fitness-spread", fitness_spread, "lognormal sigma of document fitness");
    cmd->add_option("--refs-spread", refs_spread, "lognormal sigma of bibliography size");
    cmd->add_option("--seed", seed, "random seed");
    cmd->add_option("--halo-weight", halo_weight,
                    "extra attachment weight from high-in-degree citers (default 0)");
    output.attach(cmd);
  }

  int run(const RunContext& ctx) {
    synth::GeneratorConfig cfg;
    std::map<std::string, std::string> digests;
    if (!config_path.empty()) {
      std::ifstream in(config_path, std::ios::binary);
      if (!in) throw DataError("cannot open " + config_path);
      cfg = synth::load_config(in);
      digests[config_path] = manifest::sha256_file(config_path);
    }
    if (months) cfg.months = *months;
    if (docs_per_month) cfg.docs_per_month = *docs_per_month;
    if (refs_per_doc) cfg.refs_per_doc = *refs_per_doc;
    if (recency) cfg.recency_exponent = *recency;
    if (attachment) cfg.attachment_exponent = *attachment;
    if (copy_prob) cfg.copy_prob = *copy_prob;
    if (fitness_spread) cfg.fitness_spread = *fitness_spread;
    if (refs_spread) cfg.refs_spread = *refs_spread;
    if (seed) cfg.seed = *seed;

    synth::GenerationStats stats;
    auto graph = synth::generate_with_halo(cfg, halo_weight, output.threads, &stats);
    if (stats.clamped_draws > 0) {
      std::cerr << "warning: " << stats.clamped_draws
                << " bibliographies clamped to the candidate pool\n";
    }

    RunOutput out(output.out_dir, output.force);
    out.prepare();
    try {
      std::ostringstream docs, cits;
      graph.write_documents_csv(docs);
      graph.write_citations_csv(cits);
      out.write_text("documents.csv", docs.str());
      out.write_text("citations.csv", cits.str());

      ordered_json cfg_json;
      cfg_json["months"] = cfg.months;
      cfg_json["docs_per_month"] = cfg.docs_per_month;
      cfg_json["refs_per_doc"] = cfg.refs_per_doc;
      cfg_json["recency_exponent"] = cfg.recency_exponent;
      cfg_json["attachment_exponent"] = cfg.attachment_exponent;
      cfg_json["copy_prob"] = cfg.copy_prob;
      cfg_json["fitness_spread"] = cfg.fitness_spread;
      cfg_json["refs_spread"] = cfg.refs_spread;
      cfg_json["seed"] = cfg.seed;
      cfg_json["halo_weight"] = halo_weight;

      ordered_json side;
      side["config"] = cfg_json;
      side["documents"] = stats.documents;
      side["edges"] = stats.edges;
      side["copy_edges"] = stats.copy_edges;
      side["clamped_draws"] = stats.clamped_draws;
      out.write_json("summary.json", side);

      ordered_json params = cfg_json;
      params["subcommand"] = "simulate";
      out.finish(make_manifest(ctx, params, std::move(digests), cfg.seed));
    } catch (...) {
      out.discard();
      throw;
    }
    return 0;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"temporal citation-network analysis"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  IngestCmd ingest_cmd;
  ingest_cmd.attach(app.add_subcommand(
      "ingest", "validate a corpus and write its canonical CSV form"));

  StatsCmd stats_cmd;
  stats_cmd.attach(app.add_subcommand("stats", "longitudinal corpus statistics"));

  CascadeCmd cascade_cmd;
  cascade_cmd.attach(app.add_subcommand("cascade", "windowed discovery-cascade counts"));

  BiasCmd bias_cmd;
  bias_cmd.attach(app.add_subcommand("bias", "bias analyses over cascade counts"));

  SimulateCmd simulate_cmd;
  simulate_cmd.attach(app.add_subcommand("simulate", "generate a synthetic citation network"));

  RunContext ctx;
  ctx.command_line = join_command_line(argc, argv);
  ctx.started = manifest::iso8601_utc_now();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the message
    return 1;
  }

  try {
    if (app.got_subcommand("ingest")) return ingest_cmd.run(ctx);
    if (app.got_subcommand("stats")) return stats_cmd.run(ctx);
    if (app.got_subcommand("cascade")) return cascade_cmd.run(ctx);
    if (app.got_subcommand("bias")) return bias_cmd.run(ctx);
    if (app.got_subcommand("simulate")) return simulate_cmd.run(ctx);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
