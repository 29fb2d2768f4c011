#pragma once

#include <cstdint>
#include <vector>

#include "gzsl/corpus.hpp"

namespace gzsl {

// Deterministic synthetic intent-detection corpus. Utterances are assembled
// from dialogue-style prefixes and per-intent topic vocabulary, so they share
// words with their intent label but are not template echoes.
struct DemoCorpusConfig {
  std::size_t n_intents = 20;
  std::size_t utterances_per_intent = 40;
  std::uint64_t seed = 7;
};

Dataset make_demo_corpus(const DemoCorpusConfig& config = {});

// A small dialogue file exercising the ingest path: multi-turn dialogues
// with intent changes plus short acknowledgment turns.
std::vector<Dialogue> make_demo_dialogues(std::uint64_t seed = 7);

}  // namespace gzsl
