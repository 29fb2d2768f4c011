#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <filesystem>

#include "gzsl/error.hpp"
#include "gzsl/jsonl.hpp"
#include "gzsl/lexicalize.hpp"
#include "gzsl/text.hpp"

using namespace gzsl;

TEST_CASE("golden lexicalizations") {
  CHECK(lexicalize_label("book_hotel", find_template("d1")) ==
        "the user wants to book a hotel");
  CHECK(lexicalize_label("flight_status", find_template("q1")) ==
        "does the user want to get a flight status");
  CHECK(lexicalize_label("reset_settings", find_template("d1")) ==
        "the user wants to reset settings");
  CHECK(lexicalize_label("get_alarms", find_template("tell")) ==
        "tell the user how to get alarms");
}

TEST_CASE("label tokenization handles separators and camel case") {
  CHECK(tokenize_label("book_hotel") == std::vector<std::string>{"book", "hotel"});
  CHECK(tokenize_label("GetRide") == std::vector<std::string>{"get", "ride"});
  CHECK(tokenize_label("flight_status") == std::vector<std::string>{"flight", "status"});
  CHECK(tokenize_label("find-home by_area") ==
        std::vector<std::string>{"find", "home", "by", "area"});
  CHECK_THROWS_AS(tokenize_label("_-_"), Error);
}

TEST_CASE("rule tagger distinguishes verb and noun phrases") {
  CHECK(pos_tag({"book", "hotel"}) == std::vector<Tag>{Tag::kVerb, Tag::kNoun});
  CHECK(pos_tag({"flight", "status"}) == std::vector<Tag>{Tag::kNoun, Tag::kNoun});
  CHECK(pos_tag({"reset", "settings"}) == std::vector<Tag>{Tag::kVerb, Tag::kNoun});
  CHECK(pos_tag({"pinging", "server"})[0] == Tag::kVerb);  // -ing suffix when leading

  CHECK(classify_phrase(pos_tag({"book", "hotel"})) == PhraseKind::kVerbPhrase);
  CHECK(classify_phrase(pos_tag({"flight", "status"})) == PhraseKind::kNounPhrase);
  CHECK(classify_phrase({Tag::kNoun}) == PhraseKind::kNounPhrase);
}

TEST_CASE("article selection") {
  CHECK(choose_article({"hotel"}) == "a");
  CHECK(choose_article({"flight", "status"}) == "a");
  CHECK(choose_article({"settings"}) == "");
  CHECK(choose_article({"alarm"}) == "an");
  CHECK(choose_article({"alarm", "settings"}) == "");  // plural head noun
  CHECK(choose_article({"status"}) == "a");            // -us is not plural
}

TEST_CASE("single-token non-verb labels get the auxiliary verb") {
  CHECK(lexicalize_label("weather", find_template("d1")) ==
        "the user wants to get a weather");
  CHECK(lexicalize_label("alarms", find_template("d1")) ==
        "the user wants to get alarms");
}

TEST_CASE("every label token appears in output in order") {
  const std::vector<std::string> labels = {
      "book_hotel", "flight_status", "reset_settings", "get_alarms",
      "transfer_money", "play_media", "find_home_by_area", "CheckBalance"};
  for (const auto& label : labels) {
    std::vector<std::string> tokens = tokenize_label(label);
    for (const auto& tmpl : builtin_templates()) {
      std::vector<std::string> words = tokenize(lexicalize_label(label, tmpl));
      // label tokens must appear as a subsequence of the sentence words
      std::size_t pos = 0;
      for (const auto& t : tokens) {
        auto it = std::find(words.begin() + static_cast<std::ptrdiff_t>(pos),
                            words.end(), t);
        REQUIRE(it != words.end());
        pos = static_cast<std::size_t>(it - words.begin()) + 1;
      }
    }
  }
}

TEST_CASE("apply_template is deterministic") {
  const Template& d1 = find_template("d1");
  CHECK(apply_template("x", "book_hotel", d1).sentence ==
        apply_template("x", "book_hotel", d1).sentence);
  CHECK(apply_template("x", "book_hotel", d1).template_id == "d1");
  CHECK(apply_template("x", "book_hotel", d1).intent_id == "x");
}

TEST_CASE("casing and question-mark options") {
  LexicalizeOptions opts;
  opts.capitalize_first = true;
  CHECK(lexicalize_label("reset_settings", find_template("d1"), opts) ==
        "The user wants to reset settings");
  LexicalizeOptions q;
  q.question_mark = true;
  CHECK(lexicalize_label("book_hotel", find_template("q1"), q) ==
        "does the user want to book a hotel?");
  CHECK(lexicalize_label("book_hotel", find_template("d1"), q) ==
        "the user wants to book a hotel");  // only question templates
}

TEST_CASE("template files load and unknown ids are rejected") {
  auto dir = std::filesystem::temp_directory_path() / "gzsl_lex_test";
  std::filesystem::create_directories(dir);
  write_jsonl(dir / "templates.jsonl",
              {Json{{"id", "x1"}, {"kind", "declarative"}, {"prefix", "i want to"}},
               Json{{"id", "x2"}, {"kind", "question"}, {"prefix", "could the user"}}});
  auto templates = load_templates(dir / "templates.jsonl");
  REQUIRE(templates.size() == 2);
  CHECK(templates[0].prefix == "i want to");
  CHECK(lexicalize_label("book_hotel", templates[0]) == "i want to book a hotel");
  CHECK_THROWS_AS(find_template(templates, "zzz"), Error);
  CHECK_THROWS_AS(find_template("zzz"), Error);
}
