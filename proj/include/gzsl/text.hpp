#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace gzsl {

// Tokens are maximal runs of ASCII letters and digits, lowercased.
// Everything else (punctuation, underscores, whitespace) separates.
std::vector<std::string> tokenize(std::string_view text);

std::vector<std::string> tokenize_and_truncate(std::string_view text,
                                               std::size_t max_len_tokens);

// Lowercased, punctuation stripped, single-spaced. Used for stoplist matching.
std::string normalize_text(std::string_view text);

std::string to_lower(std::string_view text);

// Light stemmer for shared-word checks: drops a trailing 's' on tokens
// longer than three characters, so "trains" and "train" compare equal.
std::string stem_light(std::string_view token);

// Number of distinct stems shared by the two token lists.
std::size_t count_stem_overlap(const std::vector<std::string>& a,
                               const std::vector<std::string>& b);

std::string join(const std::vector<std::string>& tokens, std::string_view sep = " ");

}  // namespace gzsl
