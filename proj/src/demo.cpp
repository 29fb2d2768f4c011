#include "gzsl/demo.hpp"

#include <array>

#include "gzsl/error.hpp"
#include "gzsl/rng.hpp"
#include "gzsl/text.hpp"

namespace gzsl {

namespace {

struct Topic {
  const char* label;
  const char* verb;       // spoken verb, "" for noun-phrase labels
  const char* object;     // object words as spoken, e.g. "a hotel"
  const char* alt_verb;   // occasional verb variant
  const char* context[4]; // topic words mixed into utterances
};

// 20 handcrafted intents with mixed verb/noun-phrase labels; a few pairs
// intentionally share a word (book_*, *_flight) to keep confusions realistic.
constexpr std::array<Topic, 20> kTopics = {{
    {"book_hotel", "book", "a hotel", "reserve",
     {"room", "tonight", "downtown", "stay"}},
    {"book_flight", "book", "a flight", "reserve",
     {"paris", "airline", "departure", "seat"}},
    {"find_restaurant", "find", "a restaurant", "search for",
     {"dinner", "italian", "table", "nearby"}},
    {"get_weather", "get", "the weather", "check",
     {"forecast", "rain", "temperature", "weekend"}},
    {"check_balance", "check", "my balance", "show",
     {"account", "savings", "funds", "bank"}},
    {"reset_password", "reset", "my password", "change",
     {"login", "account", "forgot", "email"}},
    {"cancel_subscription", "cancel", "my subscription", "stop",
     {"plan", "membership", "renewal", "service"}},
    {"order_pizza", "order", "a pizza", "get",
     {"cheese", "large", "delivery", "pepperoni"}},
    {"rent_car", "rent", "a car", "hire",
     {"airport", "compact", "pickup", "week"}},
    {"schedule_meeting", "schedule", "a meeting", "arrange",
     {"calendar", "monday", "team", "afternoon"}},
    {"find_doctor", "find", "a doctor", "look for",
     {"appointment", "clinic", "checkup", "nearby"}},
    {"buy_tickets", "buy", "tickets", "purchase",
     {"concert", "show", "seats", "saturday"}},
    {"get_directions", "get", "directions", "show",
     {"route", "museum", "drive", "station"}},
    {"set_alarm", "set", "an alarm", "create",
     {"morning", "clock", "wake", "early"}},
    {"send_message", "send", "a message", "text",
     {"mom", "reply", "phone", "quick"}},
    {"track_package", "track", "my package", "follow",
     {"shipment", "arrive", "courier", "status"}},
    {"pay_bill", "pay", "my bill", "settle",
     {"electricity", "invoice", "due", "online"}},
    {"search_recipes", "search", "recipes", "look up",
     {"cooking", "pasta", "dessert", "easy"}},
    {"play_music", "play", "some music", "start",
     {"song", "jazz", "playlist", "volume"}},
    {"flight_status", "", "the flight status", "check",
     {"delayed", "arrival", "gate", "airport"}},
}};

constexpr std::array<const char*, 8> kDeclarativePrefixes = {
    "i want to", "i would like to", "i need to", "please",
    "could you", "can you", "help me", "i am trying to"};

constexpr std::array<const char*, 4> kQuestionPrefixes = {
    "can you", "how do i", "is there a way to", "would you"};

constexpr std::array<const char*, 7> kSuffixes = {
    "", "for me", "right now", "today", "tomorrow", "this evening", "as soon as possible"};

constexpr std::array<const char*, 4> kDigitSuffixes = {
    "at 5", "for 2 people", "by 10 am", "in 3 days"};

constexpr std::array<const char*, 18> kExtraVerbs = {
    "book", "find", "get", "check", "cancel", "order", "rent", "schedule",
    "buy",  "send", "track", "pay", "search", "play", "update", "show",
    "reserve", "confirm"};

constexpr std::array<const char*, 24> kExtraNouns = {
    "movie",   "train",  "bus",     "taxi",     "coffee", "laptop",
    "insurance", "loan", "transfer", "contact", "event",  "reminder",
    "invoice", "report", "trip",    "tour",     "gift",   "card",
    "plan",    "quote",  "booking", "delivery", "ticket", "room"};

std::string article_for(const std::string& noun) {
  if (noun.size() > 3 && noun.back() == 's') return "";
  switch (noun.front()) {
    case 'a': case 'e': case 'i': case 'o': case 'u': return "an";
    default: return "a";
  }
}

std::string make_utterance(const Topic& topic, Rng& rng, bool paraphrase_only) {
  std::string verb = topic.verb[0] ? topic.verb : "check";
  if (rng.next_double() < 0.25) verb = topic.alt_verb;
  std::string body = verb + std::string(" ") + topic.object;

  std::string context = topic.context[rng.next_below(4)];
  std::string text;
  double form = rng.next_double();
  if (paraphrase_only) {
    // A harder variant that avoids the label object words.
    text = "i could use some help with the " + context + " situation";
  } else if (form < 0.15) {
    std::string q(kQuestionPrefixes[rng.next_below(kQuestionPrefixes.size())]);
    text = q + " " + body + " " + context + "?";
  } else if (form < 0.3) {
    text = body + " " + context;  // imperative
  } else {
    std::string p(kDeclarativePrefixes[rng.next_below(kDeclarativePrefixes.size())]);
    text = p + " " + body + " " + context;
  }

  double tail = rng.next_double();
  if (tail < 0.15) {
    text += " " + std::string(kDigitSuffixes[rng.next_below(kDigitSuffixes.size())]);
  } else if (tail < 0.5) {
    std::string s(kSuffixes[rng.next_below(kSuffixes.size())]);
    if (!s.empty()) text += " " + s;
  }
  if (rng.next_double() < 0.05) text = "no not that one " + text;
  return text;
}

}  // namespace

Dataset make_demo_corpus(const DemoCorpusConfig& config) {
  if (config.n_intents == 0) throw Error("demo corpus: n_intents must be positive");
  if (config.n_intents > kTopics.size() + kExtraVerbs.size() * kExtraNouns.size())
    throw Error("demo corpus: too many intents requested");

  Dataset out;
  out.provenance = "demo-corpus";

  std::vector<Topic> topics;
  for (std::size_t i = 0; i < config.n_intents && i < kTopics.size(); ++i)
    topics.push_back(kTopics[i]);
  // Combinatorial labels beyond the handcrafted set.
  std::vector<std::string> extra_labels;
  extra_labels.reserve(config.n_intents);  // keeps c_str() pointers stable
  for (std::size_t i = kTopics.size(); i < config.n_intents; ++i) {
    std::size_t j = i - kTopics.size();
    std::string verb = kExtraVerbs[j % kExtraVerbs.size()];
    std::string noun = kExtraNouns[(j / kExtraVerbs.size()) % kExtraNouns.size()];
    extra_labels.push_back(verb + "_" + noun);
    Topic t{};
    t.label = extra_labels.back().c_str();
    t.verb = "";
    t.object = "";
    t.alt_verb = "";
    t.context[0] = "service";
    t.context[1] = "request";
    t.context[2] = "option";
    t.context[3] = "details";
    topics.push_back(t);
  }

  Rng base(config.seed);
  std::size_t utt_counter = 0;
  for (std::size_t i = 0; i < topics.size(); ++i) {
    const Topic& topic = topics[i];
    std::string label = topic.label;
    Intent intent;
    intent.id = label;
    intent.label = label;
    intent.description = "the user asks to " + join(tokenize(label));
    out.intents.push_back(intent);

    Rng rng = base.child("intent:" + label);
    bool handcrafted = i < kTopics.size();
    for (std::size_t u = 0; u < config.utterances_per_intent; ++u) {
      std::string text;
      if (handcrafted) {
        bool hard = rng.next_double() < 0.05;
        text = make_utterance(topic, rng, hard);
      } else {
        // Generated labels: spoken form derived from the label tokens.
        std::vector<std::string> tokens = tokenize(label);
        std::string noun = tokens.size() > 1 ? tokens[1] : tokens[0];
        std::string art = article_for(noun);
        std::string body = tokens[0] + (art.empty() ? " " : " " + art + " ") + noun;
        std::string p(kDeclarativePrefixes[rng.next_below(kDeclarativePrefixes.size())]);
        text = p + " " + body + " " + topic.context[rng.next_below(4)];
      }
      Utterance utt;
      utt.id = "u" + std::to_string(utt_counter++);
      utt.text = text;
      utt.intent_id = label;
      out.utterances.push_back(std::move(utt));
    }
  }
  out.validate();
  return out;
}

std::vector<Dialogue> make_demo_dialogues(std::uint64_t seed) {
  Dataset corpus = make_demo_corpus({6, 4, seed});
  std::vector<Dialogue> dialogues;
  Rng rng = Rng(seed).child("dialogues");
  std::size_t cursor = 0;
  for (int d = 0; d < 4; ++d) {
    Dialogue dlg;
    dlg.id = "demo-dlg-" + std::to_string(d);
    std::size_t turns = 2 + rng.next_below(3);
    for (std::size_t t = 0; t < turns && cursor < corpus.utterances.size(); ++t) {
      const Utterance& u = corpus.utterances[cursor];
      cursor += 1 + rng.next_below(3);
      dlg.turns.push_back({u.text, u.intent_id});
      if (rng.next_double() < 0.4)
        dlg.turns.push_back({"thanks", u.intent_id});  // same intent, dropped by ingest
    }
    if (!dlg.turns.empty()) dialogues.push_back(std::move(dlg));
  }
  return dialogues;
}

}  // namespace gzsl
