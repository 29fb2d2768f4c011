#include "gzsl/text.hpp"

#include <cctype>
#include <set>

namespace gzsl {

namespace {

bool is_word_char(unsigned char c) { return std::isalnum(c) != 0; }

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string cur;
  for (unsigned char c : text) {
    if (is_word_char(c)) {
      cur.push_back(static_cast<char>(std::tolower(c)));
    } else if (!cur.empty()) {
      tokens.push_back(cur);
      cur.clear();
    }
  }
  if (!cur.empty()) tokens.push_back(cur);
  return tokens;
}

std::vector<std::string> tokenize_and_truncate(std::string_view text,
                                               std::size_t max_len_tokens) {
  std::vector<std::string> tokens = tokenize(text);
  if (tokens.size() > max_len_tokens) tokens.resize(max_len_tokens);
  return tokens;
}

std::string normalize_text(std::string_view text) {
  return join(tokenize(text));
}

std::string to_lower(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (unsigned char c : text) out.push_back(static_cast<char>(std::tolower(c)));
  return out;
}

std::string stem_light(std::string_view token) {
  if (token.size() > 3 && token.back() == 's') {
    return std::string(token.substr(0, token.size() - 1));
  }
  return std::string(token);
}

std::size_t count_stem_overlap(const std::vector<std::string>& a,
                               const std::vector<std::string>& b) {
  std::set<std::string> sa;
  for (const auto& t : a) sa.insert(stem_light(t));
  std::set<std::string> sb;
  for (const auto& t : b) sb.insert(stem_light(t));
  std::size_t n = 0;
  for (const auto& s : sa) n += sb.count(s);
  return n;
}

std::string join(const std::vector<std::string>& tokens, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.append(sep);
    out.append(tokens[i]);
  }
  return out;
}

}  // namespace gzsl
