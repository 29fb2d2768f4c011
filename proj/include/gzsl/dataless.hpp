#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "gzsl/corpus.hpp"
#include "gzsl/lexicalize.hpp"

namespace gzsl {

struct SyntheticUtterance {
  std::string text;
  std::string source_intent_id;
  std::string generator_id;  // paraphrase rule family
  std::uint64_t seed = 0;
};

// Rule families standing in for distinct paraphrase generators.
//   prefix_swap: third-person desire prefixes <-> first-person ones
//   synonym:     verb substitution from a built-in thesaurus
//   question:    declarative <-> question rewording
enum class ParaphraseFamily { kPrefixSwap, kSynonym, kQuestion };

ParaphraseFamily parse_family(const std::string& name);
std::string family_name(ParaphraseFamily family);
const std::vector<ParaphraseFamily>& all_families();

// Deterministic variant set; the input sentence is always included.
std::vector<std::string> paraphrase(const std::string& sentence,
                                    ParaphraseFamily family, std::uint64_t seed);

// Lexicalizes every seen intent with every template, paraphrases with every
// family, merges, deduplicates, and caps at n_per_intent per intent.
std::vector<SyntheticUtterance> build_synthetic_trainset(
    const Dataset& dataset, const std::vector<std::string>& seen_intents,
    const std::vector<Template>& templates,
    const std::vector<ParaphraseFamily>& families, std::size_t n_per_intent,
    std::uint64_t seed);

// Swaps real train data for the synthetic set: returns a dataset+split pair
// whose train utterances are all synthetic and whose test set is untouched.
std::pair<Dataset, GzslSplit> dataless_view(
    const Dataset& dataset, const GzslSplit& split,
    const std::vector<SyntheticUtterance>& synthetic);

// JSONL {"text","intent","generator","seed"}.
void save_synthetic(const std::vector<SyntheticUtterance>& synthetic,
                    const std::filesystem::path& path);

}  // namespace gzsl
