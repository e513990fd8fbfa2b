#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "occlang/corpus.hpp"

namespace occlang {

/// One job archetype for the synthetic generator: a skill distribution, a
/// term distribution for posts (entries may be multi-word phrases) and Big
/// Five trait means.
struct Archetype {
  std::string name;
  std::vector<std::pair<std::string, double>> skills;
  std::vector<std::pair<std::string, double>> terms;
  std::map<std::string, double> trait_means;
};

struct SynthSpec {
  std::vector<Archetype> archetypes;
  std::vector<std::pair<std::string, double>> background_terms;
  int users_per_archetype = 40;
  int tweets_per_user = 20;
  int tokens_per_tweet = 10;
  double background_mix = 0.5;  // probability a token comes from the background
  int skills_per_user = 5;
  int endorsements_per_user = 40;
  double trait_noise = 0.05;
  bool emit_traits = true;

  void validate() const;
  static SynthSpec load(const std::string& path);
  /// Built-in eight-archetype fixture with distinct skill and language pools.
  static SynthSpec jobs8();
};

struct SynthResult {
  Corpus corpus;
  std::map<std::string, std::string> truth;  // user_id -> archetype name
};

/// Deterministic for a fixed seed, byte-identical JSONL via write_synthetic.
SynthResult generate_synthetic(const SynthSpec& spec, std::uint64_t seed);

void write_synthetic(const SynthResult& result, const std::string& corpus_path,
                     const std::string& truth_path);

}  // namespace occlang
