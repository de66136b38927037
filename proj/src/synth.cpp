#include "citelens/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "citelens/error.hpp"
#include "citelens/parallel.hpp"
#include "citelens/rng.hpp"

namespace citelens::synth {

namespace {

std::string doc_id(std::uint32_t number) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "d%07u", number);
  return buf;
}

// Weighted draw by binary search on the cumulative weights; rejects picks
// already in `chosen`. After too many rejections (tiny remaining mass)
// falls back to one exact pass over the pool.
std::uint32_t draw_direct(std::mt19937_64& eng, const std::vector<double>& cum,
                          const std::vector<std::uint32_t>& chosen) {
  const auto pool = static_cast<std::uint32_t>(cum.size());
  const double total = cum.back();
  auto taken = [&](std::uint32_t c) {
    return std::find(chosen.begin(), chosen.end(), c) != chosen.end();
  };
  for (int attempt = 0; attempt < 256; ++attempt) {
    const double u = rng::uniform01(eng) * total;
    auto idx = static_cast<std::uint32_t>(
        std::upper_bound(cum.begin(), cum.end(), u) - cum.begin());
    if (idx >= pool) idx = pool - 1;
    if (!taken(idx)) return idx;
  }
  // Exact conditional draw over the remaining candidates.
  double remaining = total;
  for (std::uint32_t c : chosen) remaining -= cum[c] - (c ? cum[c - 1] : 0.0);
  double u = rng::uniform01(eng) * std::max(remaining, 0.0);
  std::uint32_t last_free = 0;
  for (std::uint32_t c = 0; c < pool; ++c) {
    if (taken(c)) continue;
    last_free = c;
    u -= cum[c] - (c ? cum[c - 1] : 0.0);
    if (u < 0.0) return c;
  }
  return last_free;
}

}  // namespace

void GeneratorConfig::validate() const {
  if (months < 2) throw DataError("generator: months must be >= 2");
  if (docs_per_month < 1) throw DataError("generator: docs_per_month must be >= 1");
  if (refs_per_doc < 1) throw DataError("generator: refs_per_doc must be >= 1");
  if (!(recency_exponent >= 0.0)) throw DataError("generator: recency_exponent must be >= 0");
  if (!(attachment_exponent >= 0.0))
    throw DataError("generator: attachment_exponent must be >= 0");
  if (!(copy_prob >= 0.0 && copy_prob <= 1.0))
    throw DataError("generator: copy_prob must be in [0, 1]");
  if (!(fitness_spread >= 0.0)) throw DataError("generator: fitness_spread must be >= 0");
  if (!(refs_spread >= 0.0)) throw DataError("generator: refs_spread must be >= 0");
}

corpus::CitationGraph generate(const GeneratorConfig& cfg, unsigned threads,
                               GenerationStats* stats) {
  return generate_with_halo(cfg, 0.0, threads, stats);
}

corpus::CitationGraph generate_with_halo(const GeneratorConfig& cfg, double halo_weight,
                                         unsigned threads, GenerationStats* stats) {
  cfg.validate();
  if (!(halo_weight >= 0.0)) throw DataError("generator: halo_weight must be >= 0");

  const auto dpm = static_cast<std::uint32_t>(cfg.docs_per_month);
  const auto total_docs = static_cast<std::uint32_t>(cfg.months) * dpm;

  std::vector<double> fitness(total_docs, 1.0);
  std::vector<std::uint32_t> indeg(total_docs, 0);
  std::vector<std::vector<std::uint32_t>> refs(total_docs);
  std::vector<std::vector<std::uint32_t>> citers;  // only tracked for the halo term
  if (halo_weight > 0.0) citers.resize(total_docs);

  GenerationStats st;
  std::vector<double> cum;
  std::vector<std::uint8_t> clamped(dpm);
  std::vector<std::size_t> copied(dpm);

  for (int month = 0; month < cfg.months; ++month) {
    const std::uint32_t pool = static_cast<std::uint32_t>(month) * dpm;
    const std::uint32_t base = pool;  // first doc number of this month

    // Candidate weights, frozen at the month boundary.
    cum.resize(pool);
    double acc = 0.0;
    for (std::uint32_t c = 0; c < pool; ++c) {
      const int age = month - static_cast<int>(c / dpm);
      double w = fitness[c] * std::pow(static_cast<double>(age) + 1.0, -cfg.recency_exponent);
      if (cfg.attachment_exponent != 0.0)
        w *= std::pow(static_cast<double>(indeg[c]) + 1.0, cfg.attachment_exponent);
      if (halo_weight > 0.0) {
        std::uint32_t hmax = 0;
        for (std::uint32_t u : citers[c]) hmax = std::max(hmax, indeg[u]);
        w *= 1.0 + halo_weight * static_cast<double>(hmax);
      }
      acc += w;
      cum[c] = acc;
    }

    std::fill(clamped.begin(), clamped.end(), 0);
    std::fill(copied.begin(), copied.end(), 0);

    parallel_for(dpm, threads, [&](std::size_t i) {
      const std::uint32_t d = base + static_cast<std::uint32_t>(i);
      auto eng = rng::make_engine(cfg.seed, static_cast<std::uint64_t>(month), i);

      if (cfg.fitness_spread > 0.0) {
        const double s = cfg.fitness_spread;
        fitness[d] = std::exp(s * rng::normal01(eng) - 0.5 * s * s);
      }
      if (pool == 0) return;  // the first month has nothing to cite

      std::uint64_t k = static_cast<std::uint64_t>(cfg.refs_per_doc);
      if (cfg.refs_spread > 0.0) {
        const double s = cfg.refs_spread;
        const double scaled = cfg.refs_per_doc * std::exp(s * rng::normal01(eng) - 0.5 * s * s);
        k = static_cast<std::uint64_t>(std::max<long long>(1, std::llround(scaled)));
      }
      if (k > pool) {
        k = pool;
        clamped[i] = 1;
      }

      auto& chosen = refs[d];
      chosen.reserve(k);
      for (std::uint64_t slot = 0; slot < k; ++slot) {
        if (slot > 0 && cfg.copy_prob > 0.0 && rng::uniform01(eng) < cfg.copy_prob) {
          const std::uint32_t parent = chosen[rng::uniform_below(eng, slot)];
          const auto& prefs = refs[parent];
          if (!prefs.empty()) {
            const std::uint32_t pick = prefs[rng::uniform_below(eng, prefs.size())];
            if (std::find(chosen.begin(), chosen.end(), pick) == chosen.end()) {
              chosen.push_back(pick);
              ++copied[i];
              continue;
            }
          }
          // fall through to a direct draw
        }
        chosen.push_back(draw_direct(eng, cum, chosen));
      }
    });

    for (std::uint32_t i = 0; i < dpm; ++i) {
      st.clamped_draws += clamped[i];
      st.copy_edges += copied[i];
      for (std::uint32_t t : refs[base + i]) {
        ++indeg[t];
        if (halo_weight > 0.0) citers[t].push_back(base + i);
      }
    }
  }

  corpus::GraphBuilder builder;
  for (std::uint32_t d = 0; d < total_docs; ++d) {
    builder.add_document(
        {doc_id(d), static_cast<corpus::MonthIndex>(d / dpm), std::string{}});
  }
  for (std::uint32_t d = 0; d < total_docs; ++d) {
    for (std::uint32_t t : refs[d]) builder.add_citation(doc_id(d), doc_id(t));
  }

  st.documents = total_docs;
  st.edges = 0;
  for (const auto& r : refs) st.edges += r.size();
  if (stats) *stats = st;

  // The generator can produce no self-loops, duplicates or forward edges;
  // fail loudly if that invariant ever breaks.
  corpus::IngestReport report;
  auto g = builder.build(corpus::AnomalyPolicy::fail, &report);
  if (report.edges != st.edges) throw DataError("generator: graph build lost edges");
  return g;
}

GeneratorConfig load_config(std::istream& in) {
  GeneratorConfig cfg;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw DataError("config line " + std::to_string(lineno) + ": expected key=value");
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "months") cfg.months = std::stoi(value);
      else if (key == "docs_per_month") cfg.docs_per_month = std::stoi(value);
      else if (key == "refs_per_doc") cfg.refs_per_doc = std::stoi(value);
      else if (key == "recency_exponent") cfg.recency_exponent = std::stod(value);
      else if (key == "attachment_exponent") cfg.attachment_exponent = std::stod(value);
      else if (key == "copy_prob") cfg.copy_prob = std::stod(value);
      else if (key == "fitness_spread") cfg.fitness_spread = std::stod(value);
      else if (key == "refs_spread") cfg.refs_spread = std::stod(value);
      else if (key == "seed") cfg.seed = std::stoull(value);
      else throw DataError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    } catch (const std::invalid_argument&) {
      throw DataError("config line " + std::to_string(lineno) + ": bad value for '" + key + "'");
    } catch (const std::out_of_range&) {
      throw DataError("config line " + std::to_string(lineno) + ": bad value for '" + key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

}  // namespace citelens::synth
