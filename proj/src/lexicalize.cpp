#include "gzsl/lexicalize.hpp"

#include <cctype>
#include <unordered_set>

#include "gzsl/error.hpp"
#include "gzsl/jsonl.hpp"
#include "gzsl/text.hpp"

namespace gzsl {

namespace {

// Frequent verbs of dialogue-assistant intent labels.
const std::unordered_set<std::string>& verb_lexicon() {
  static const std::unordered_set<std::string> verbs = {
      "accept",   "activate", "add",      "adjust",  "answer",   "apply",
      "ask",      "book",     "browse",   "buy",     "calculate", "call",
      "cancel",   "change",   "check",    "close",   "compare",  "confirm",
      "connect",  "convert",  "create",   "deactivate", "delete", "dial",
      "disable",  "download", "enable",   "exchange", "explain",  "find",
      "get",      "give",     "hold",     "increase", "invite",   "list",
      "locate",   "lock",     "log",      "lookup",   "lower",    "make",
      "move",     "mute",     "open",     "order",    "pause",    "pay",
      "plan",     "play",     "print",    "purchase", "raise",    "read",
      "redeem",   "remind",   "remove",   "rename",   "rent",     "repeat",
      "report",   "request",  "reserve",  "reset",    "resume",   "retrieve",
      "schedule", "search",   "sell",     "send",     "set",      "share",
      "show",     "skip",     "start",    "stop",     "switch",   "sync",
      "tell",     "track",    "transfer", "translate", "turn",    "unlock",
      "update",   "verify",   "watch",    "withdraw"};
  return verbs;
}

bool ends_with(const std::string& s, const char* suffix) {
  std::string suf(suffix);
  return s.size() >= suf.size() && s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
}

bool is_vowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

// "settings" and "alarms" are plural; "status", "analysis", "address" are not.
bool is_plural_noun(const std::string& token) {
  if (token.size() < 2 || token.back() != 's') return false;
  return !(ends_with(token, "ss") || ends_with(token, "us") || ends_with(token, "is"));
}

TemplateKind parse_kind(const std::string& kind) {
  if (kind == "declarative") return TemplateKind::kDeclarative;
  if (kind == "question") return TemplateKind::kQuestion;
  if (kind == "imperative") return TemplateKind::kImperative;
  throw Error("unknown template kind: " + kind);
}

}  // namespace

std::vector<std::string> tokenize_label(const std::string& label) {
  // Insert breaks at lower->upper camel-case boundaries, then reuse the
  // standard tokenizer for the separator handling.
  std::string spaced;
  spaced.reserve(label.size() + 8);
  for (std::size_t i = 0; i < label.size(); ++i) {
    unsigned char c = static_cast<unsigned char>(label[i]);
    if (i > 0 && std::isupper(c) && std::islower(static_cast<unsigned char>(label[i - 1])))
      spaced.push_back(' ');
    spaced.push_back(static_cast<char>(c));
  }
  std::vector<std::string> tokens = tokenize(spaced);
  if (tokens.empty()) throw Error("label yields no tokens: \"" + label + "\"");
  return tokens;
}

std::vector<Tag> pos_tag(const std::vector<std::string>& tokens) {
  std::vector<Tag> tags;
  tags.reserve(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string& t = tokens[i];
    bool verb = verb_lexicon().count(t) > 0;
    if (!verb && i == 0 && (ends_with(t, "ing") || ends_with(t, "ify"))) verb = true;
    tags.push_back(verb ? Tag::kVerb : Tag::kNoun);
  }
  return tags;
}

PhraseKind classify_phrase(const std::vector<Tag>& tags) {
  if (tags.empty()) throw Error("classify_phrase: empty tag list");
  return tags.front() == Tag::kVerb ? PhraseKind::kVerbPhrase : PhraseKind::kNounPhrase;
}

std::string choose_article(const std::vector<std::string>& noun_tokens) {
  if (noun_tokens.empty()) throw Error("choose_article: empty noun list");
  // Head noun of a compound is the final token: "alarm settings" is plural.
  if (is_plural_noun(noun_tokens.back())) return "";
  return is_vowel(noun_tokens.front().front()) ? "an" : "a";
}

LexicalizedIntent apply_template(const std::string& intent_id,
                                 const std::string& label, const Template& tmpl,
                                 const LexicalizeOptions& options) {
  std::vector<std::string> tokens = tokenize_label(label);
  std::vector<Tag> tags = pos_tag(tokens);

  std::string verb;
  std::vector<std::string> nouns;
  if (classify_phrase(tags) == PhraseKind::kVerbPhrase) {
    verb = tokens.front();
    nouns.assign(tokens.begin() + 1, tokens.end());
  } else {
    verb = "get";
    nouns = tokens;
  }

  std::vector<std::string> words = tokenize(tmpl.prefix);
  words.push_back(verb);
  if (!nouns.empty()) {
    std::string article = choose_article(nouns);
    if (!article.empty()) words.push_back(article);
    for (auto& n : nouns) words.push_back(std::move(n));
  }

  std::string sentence = join(words);
  if (options.capitalize_first && !sentence.empty())
    sentence[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(sentence[0])));
  if (options.question_mark && tmpl.kind == TemplateKind::kQuestion) sentence += "?";
  return {intent_id, tmpl.id, sentence};
}

std::string lexicalize_label(const std::string& label, const Template& tmpl,
                             const LexicalizeOptions& options) {
  return apply_template("", label, tmpl, options).sentence;
}

const std::vector<Template>& builtin_templates() {
  static const std::vector<Template> templates = {
      {"d1", TemplateKind::kDeclarative, "the user wants to"},
      {"d2", TemplateKind::kDeclarative, "the user would like to"},
      {"q1", TemplateKind::kQuestion, "does the user want to"},
      {"q2", TemplateKind::kQuestion, "can the user"},
      {"tell", TemplateKind::kImperative, "tell the user how to"},
  };
  return templates;
}

const Template& find_template(const std::vector<Template>& templates,
                              const std::string& id) {
  for (const auto& t : templates)
    if (t.id == id) return t;
  throw Error("unknown template id: " + id);
}

const Template& find_template(const std::string& id) {
  return find_template(builtin_templates(), id);
}

std::vector<Template> load_templates(const std::filesystem::path& path) {
  std::vector<Template> out;
  for (const auto& rec : read_jsonl(path)) {
    Template t;
    t.id = rec.at("id").get<std::string>();
    t.kind = parse_kind(rec.at("kind").get<std::string>());
    t.prefix = rec.at("prefix").get<std::string>();
    if (t.prefix.empty()) throw Error("template " + t.id + ": empty prefix");
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace gzsl
