#pragma once

// Synthetic citation-network generator.
//
// Documents appear in monthly batches; each new document cites a fixed (or
// lognormally spread) number of strictly older documents. Candidate weights
// are frozen at the start of the month:
//
//   w(c) = fitness(c) * (indeg(c) + 1)^attachment * (age(c) + 1)^-recency
//          * (1 + halo_weight * max_citer_indeg(c))
//
// where indeg, age and max_citer_indeg are measured at the month boundary.
// After the first slot, each reference slot copies with probability
// copy_prob: pick one already-chosen reference uniformly, then one of its
// references uniformly; an empty or duplicate pick falls back to a direct
// weighted draw. All draws come from a per-(seed, month, doc) stream, so
// output is byte-identical regardless of thread count.

#include <cstdint>
#include <iosfwd>

#include "citelens/corpus.hpp"

namespace citelens::synth {

struct GeneratorConfig {
  int months = 120;
  int docs_per_month = 50;
  int refs_per_doc = 20;
  double recency_exponent = 1.5;     // gamma >= 0
  double attachment_exponent = 0.0;  // alpha >= 0
  double copy_prob = 0.0;            // in [0, 1]
  double fitness_spread = 0.0;       // lognormal sigma of per-doc fitness
  double refs_spread = 0.0;          // lognormal sigma of per-doc bib size
  std::uint64_t seed = 1;
  void validate() const;  // DataError on out-of-range values
};

struct GenerationStats {
  std::size_t documents = 0;
  std::size_t edges = 0;
  std::size_t copy_edges = 0;    // edges produced by the copy mechanism
  std::size_t clamped_draws = 0; // bib sizes clamped to the candidate pool
};

// Document ids are zero-padded creation numbers ("d0000042"), so canonical
// graph order equals creation order and index c was published in month
// c / docs_per_month.
corpus::CitationGraph generate(const GeneratorConfig& cfg, unsigned threads = 1,
                               GenerationStats* stats = nullptr);
corpus::CitationGraph generate_with_halo(const GeneratorConfig& cfg, double halo_weight,
                                         unsigned threads = 1, GenerationStats* stats = nullptr);

// Flat key=value config (comments start with '#'); unknown keys are errors.
GeneratorConfig load_config(std::istream& in);

}  // namespace citelens::synth
