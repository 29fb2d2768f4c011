#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace gzsl {

enum class Tag { kVerb, kNoun, kOther };

enum class PhraseKind { kVerbPhrase, kNounPhrase };

enum class TemplateKind { kDeclarative, kQuestion, kImperative };

struct Template {
  std::string id;
  TemplateKind kind = TemplateKind::kDeclarative;
  std::string prefix;  // e.g. "the user wants to"
};

struct LexicalizedIntent {
  std::string intent_id;
  std::string template_id;
  std::string sentence;
};

struct LexicalizeOptions {
  bool capitalize_first = false;
  bool question_mark = false;  // append "?" on question templates
};

// Splits on underscores, spaces, hyphens and camel-case boundaries; lowercases.
std::vector<std::string> tokenize_label(const std::string& label);

// Rule-based tagger: built-in verb lexicon, -ing/-ify suffix rule on the
// leading token, everything else defaults to NOUN.
std::vector<Tag> pos_tag(const std::vector<std::string>& tokens);

// Verb phrase iff the first tag is VERB.
PhraseKind classify_phrase(const std::vector<Tag>& tags);

// "" for plural head nouns, otherwise "an"/"a" by the first noun's initial.
std::string choose_article(const std::vector<std::string>& noun_tokens);

// prefix + verb + article + nouns; noun phrases get the auxiliary "get".
LexicalizedIntent apply_template(const std::string& intent_id,
                                 const std::string& label, const Template& tmpl,
                                 const LexicalizeOptions& options = {});

std::string lexicalize_label(const std::string& label, const Template& tmpl,
                             const LexicalizeOptions& options = {});

// d1/d2 declaratives, q1/q2 questions, plus the imperative "tell" form.
const std::vector<Template>& builtin_templates();
const Template& find_template(const std::string& id);
const Template& find_template(const std::vector<Template>& templates,
                              const std::string& id);

// Template file: JSONL {"id","kind","prefix"}.
std::vector<Template> load_templates(const std::filesystem::path& path);

}  // namespace gzsl
