// Copyright 2026 The kgplot Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "kgplot/lexicon.h"

#include <array>
#include <cctype>
#include <string>
#include <unordered_map>
#include <unordered_set>

namespace kgplot::lexicon {
namespace {

struct IrregularVerb {
  const char *base;
  const char *past;
  const char *participle;
  const char *third;  // nullptr for regular -s/-es
};

constexpr IrregularVerb kIrregular[] = {
    {"be", "was", "been", "is"},         {"have", "had", "had", "has"},
    {"do", "did", "done", "does"},       {"go", "went", "gone", "goes"},
    {"get", "got", "gotten", nullptr},   {"swim", "swam", "swum", nullptr},
    {"eat", "ate", "eaten", nullptr},    {"make", "made", "made", nullptr},
    {"take", "took", "taken", nullptr},  {"come", "came", "come", nullptr},
    {"see", "saw", "seen", nullptr},     {"buy", "bought", "bought", nullptr},
    {"bring", "brought", "brought", nullptr},
    {"think", "thought", "thought", nullptr},
    {"give", "gave", "given", nullptr},  {"find", "found", "found", nullptr},
    {"feel", "felt", "felt", nullptr},   {"leave", "left", "left", nullptr},
    {"meet", "met", "met", nullptr},     {"run", "ran", "run", nullptr},
    {"sit", "sat", "sat", nullptr},      {"sleep", "slept", "slept", nullptr},
    {"win", "won", "won", nullptr},      {"lose", "lost", "lost", nullptr},
    {"tell", "told", "told", nullptr},   {"say", "said", "said", nullptr},
    {"know", "knew", "known", nullptr},  {"grow", "grew", "grown", nullptr},
    {"drive", "drove", "driven", nullptr},
    {"ride", "rode", "ridden", nullptr}, {"write", "wrote", "written", nullptr},
    {"fall", "fell", "fallen", nullptr}, {"sell", "sold", "sold", nullptr},
    {"send", "sent", "sent", nullptr},   {"spend", "spent", "spent", nullptr},
    {"build", "built", "built", nullptr},
    {"catch", "caught", "caught", nullptr},
    {"teach", "taught", "taught", nullptr},
    {"fight", "fought", "fought", nullptr},
    {"hold", "held", "held", nullptr},   {"keep", "kept", "kept", nullptr},
    {"stand", "stood", "stood", nullptr},
    {"begin", "began", "begun", nullptr},
    {"drink", "drank", "drunk", nullptr},
    {"sing", "sang", "sung", nullptr},   {"break", "broke", "broken", nullptr},
    {"choose", "chose", "chosen", nullptr},
    {"speak", "spoke", "spoken", nullptr},
    {"wake", "woke", "woken", nullptr},  {"wear", "wore", "worn", nullptr},
    {"throw", "threw", "thrown", nullptr},
    {"fly", "flew", "flown", nullptr},   {"draw", "drew", "drawn", nullptr},
    {"forget", "forgot", "forgotten", nullptr},
    {"hide", "hid", "hidden", nullptr},  {"hit", "hit", "hit", nullptr},
    {"put", "put", "put", nullptr},      {"cut", "cut", "cut", nullptr},
    {"let", "let", "let", nullptr},      {"set", "set", "set", nullptr},
    {"hurt", "hurt", "hurt", nullptr},   {"become", "became", "become", nullptr},
    {"pay", "paid", "paid", nullptr},    {"hear", "heard", "heard", nullptr},
    {"lend", "lent", "lent", nullptr},   {"feed", "fed", "fed", nullptr},
    {"read", "read", "read", nullptr},   {"shoot", "shot", "shot", nullptr},
    {"steal", "stole", "stolen", nullptr},
    {"freeze", "froze", "frozen", nullptr},
    {"understand", "understood", "understood", nullptr},
    {"lead", "led", "led", nullptr},     {"light", "lit", "lit", nullptr},
    {"dig", "dug", "dug", nullptr},      {"blow", "blew", "blown", nullptr},
    {"shake", "shook", "shaken", nullptr},
    {"bite", "bit", "bitten", nullptr},  {"forgive", "forgave", "forgiven", nullptr},
    {"agree", "agreed", "agreed", nullptr},
    {"free", "freed", "freed", nullptr},
};

const std::unordered_set<std::string> &closed_class() {
  static const std::unordered_set<std::string> kWords = {
      "a", "an", "the", "this", "that", "these", "those", "some", "any",
      "each", "every", "no", "all", "both", "either", "neither", "much",
      "many", "few", "several", "lot", "lots", "of", "to", "in", "on", "at",
      "by", "for", "with", "from", "into", "onto", "about", "over", "under",
      "after", "before", "up", "down", "out", "off", "through", "around",
      "near", "behind", "between", "across", "along", "during", "without",
      "within", "against", "toward", "towards", "upon", "i", "me", "my",
      "mine", "myself", "you", "your", "yours", "yourself", "he", "him",
      "his", "himself", "she", "her", "hers", "herself", "it", "its",
      "itself", "we", "us", "our", "ours", "ourselves", "they", "them",
      "their", "theirs", "themselves", "someone", "somebody", "something",
      "anyone", "anything", "everyone", "everything", "personx", "persony",
      "and", "or", "but", "so", "because", "if", "then", "than", "when",
      "while", "as", "although", "though", "not", "be", "is", "am", "are",
      "was", "were", "been", "being", "do", "does", "did", "will", "would",
      "shall", "should", "can", "could", "may", "might", "must", "very",
      "too", "also", "just", "really", "there", "here", "what", "which",
      "who", "whom", "whose", "how", "why", "where"};
  return kWords;
}

const std::unordered_set<std::string> &verbs() {
  static const std::unordered_set<std::string> kWords = [] {
    std::unordered_set<std::string> words = {
        "live", "enjoy", "want", "need", "like", "love", "hate", "play",
        "work", "walk", "talk", "cook", "bake", "clean", "wash", "watch",
        "look", "help", "call", "ask", "answer", "open", "close", "start",
        "finish", "try", "cry", "smile", "laugh", "dance", "jump", "climb",
        "visit", "travel", "move", "stay", "wait", "stop", "plan", "learn",
        "study", "practice", "order", "decide", "celebrate", "relax", "rest",
        "shop", "pack", "carry", "fix", "paint", "pick", "drop", "kick",
        "push", "pull", "hug", "kiss", "marry", "date", "invite", "thank",
        "apologize", "borrow", "return", "save", "earn", "spend", "rent",
        "book", "arrive", "prepare", "serve", "taste", "smell", "listen",
        "hope", "wish", "worry", "fail", "pass", "graduate", "apply", "hire",
        "quit", "train", "exercise", "lift", "sunbathe", "surf", "fish",
        "hike", "camp", "explore", "discover", "notice", "remember", "forget",
        "believe", "feel", "touch", "share", "join", "meet", "greet", "thank",
        "adopt", "feed", "pet", "walk", "change", "use", "own", "miss",
        "receive", "deliver", "check", "turn", "fill", "pour", "mix", "boil",
        "fry", "grill", "chop", "slice", "drown", "burn", "scream", "shout",
        "yell", "complain", "argue", "fight", "win", "lose", "score", "kick",
        "race", "compete", "perform", "sing", "write", "draw", "read", "tan",
        "sweat", "splash", "float", "dive", "sail", "row", "paddle", "ski",
        "skate", "jog", "drive", "ride", "park", "crash", "repair", "gain",
        "grow", "shrink", "diet", "weigh", "wear", "dress", "shower", "bathe",
        "brush", "comb", "shave", "wake", "sleep", "nap", "dream", "rain",
        "snow", "shine", "die", "kill", "attack", "protect", "rescue",
        "escape", "hide", "search", "seek", "find", "lose", "steal", "rob",
        "catch", "chase", "follow", "lead", "guide", "teach", "show",
        "explain", "describe", "tell", "say", "speak", "reply", "text",
        "email", "mail", "post", "print", "type", "code", "program", "build",
        "create", "design", "invent", "test", "measure", "count", "add",
        "divide", "cut", "sew", "knit", "plant", "water", "harvest", "pray",
        "kneel", "sit", "stand", "lie", "lay", "sneeze", "cough", "vomit",
        "recover", "heal", "cure", "treat", "eat", "drink", "swim"};
    for (const auto &v : kIrregular) words.insert(v.base);
    return words;
  }();
  return kWords;
}

const std::unordered_set<std::string> &adjectives() {
  static const std::unordered_set<std::string> kWords = {
      "fat", "thin", "happy", "sad", "hungry", "thirsty", "angry", "mad",
      "tired", "sleepy", "sick", "ill", "rich", "poor", "big", "small",
      "large", "little", "tiny", "huge", "new", "old", "young", "good",
      "bad", "great", "hot", "cold", "warm", "cool", "nice", "beautiful",
      "pretty", "ugly", "excited", "scared", "afraid", "healthy", "strong",
      "weak", "late", "early", "busy", "free", "full", "empty", "clean",
      "dirty", "wet", "dry", "bored", "lonely", "proud", "upset", "nervous",
      "calm", "quiet", "loud", "fast", "slow", "safe", "dangerous", "sunny",
      "rainy", "windy", "cloudy", "tan", "tanned", "sunburned", "relaxed",
      "famous", "popular", "smart", "funny", "kind", "mean", "brave",
      "fit", "lazy", "delicious", "sweet", "sour", "salty", "spicy",
      "fresh", "ready", "sorry", "glad", "worried", "jealous", "embarrassed",
      "grateful", "thankful", "hopeful", "successful", "famous", "ashamed",
      "red", "blue", "green", "yellow", "black", "white", "brown", "pink"};
  return kWords;
}

const std::unordered_set<std::string> &nouns() {
  static const std::unordered_set<std::string> kWords = {
      "beach", "sunshine", "sun", "gift", "present", "birthday", "party",
      "dinner", "lunch", "breakfast", "food", "pizza", "spaghetti", "ice",
      "cream", "cake", "water", "sand", "ocean", "sea", "wave", "surf",
      "swim", "walk", "run", "drink", "play", "dance", "job", "degree",
      "college", "school", "house", "home", "car", "boat", "dog", "cat",
      "friend", "family", "mom", "dad", "money", "store", "shop", "park",
      "city", "town", "book", "game", "movie", "music", "song", "phone",
      "weather", "rain", "snow", "time", "day", "night", "morning",
      "evening", "vacation", "trip", "holiday", "work", "office", "test",
      "exam", "class", "teacher", "doctor", "hospital", "restaurant",
      "kitchen", "garden", "tree", "flower", "fish", "lake", "river",
      "mountain", "hill", "towel", "umbrella", "sunscreen", "swimsuit",
      "shell", "boyfriend", "girlfriend", "wife", "husband", "baby", "kid",
      "child", "brother", "sister", "team", "ball", "bike", "bus", "train",
      "plane", "ticket", "hotel", "room", "bed", "door", "window", "table",
      "chair", "computer", "letter", "email", "photo", "picture", "camera",
      "dish", "dishes", "plate", "cup", "glass", "bottle", "bag", "box",
      "coat", "shirt", "shoe", "hat", "ring", "race", "prize", "medal",
      "rest", "nap", "sleep", "tan", "heat", "light", "fun"};
  return kWords;
}

const std::unordered_map<std::string, Gender> &names() {
  static const std::unordered_map<std::string, Gender> kNames = [] {
    std::unordered_map<std::string, Gender> table;
    for (const char *n :
         {"jenny", "amy", "sarah", "anna", "ann", "mary", "kate", "katie",
          "lisa", "emma", "olivia", "sophia", "mia", "emily", "jessica",
          "jane", "sue", "susan", "linda", "karen", "nancy", "betty", "helen",
          "alice", "ella", "grace", "lucy", "lily", "chloe", "zoe", "hannah",
          "rachel", "rebecca", "laura", "julia", "maria", "gina", "tina",
          "kim", "kelly", "megan", "ashley", "beth", "gail", "ivy", "jill",
          "ruth", "sally", "tara", "wendy", "amelia", "ava", "ellie",
          "eva", "fiona", "holly", "iris", "june", "nora", "rose"}) {
      table.emplace(n, Gender::kFemale);
    }
    for (const char *n :
         {"bob", "tom", "john", "james", "justin", "mike", "michael",
          "david", "dan", "daniel", "joe", "jim", "jack", "sam", "ben", "tim",
          "nick", "peter", "paul", "mark", "steve", "kevin", "brian", "chris",
          "eric", "greg", "fred", "frank", "george", "harry", "henry",
          "jake", "jason", "jeff", "josh", "kyle", "larry", "luke", "matt",
          "max", "neil", "ryan", "scott", "ted", "tony", "will", "adam",
          "alex", "andy", "bill", "carl", "dave", "gary", "ian", "ken",
          "leo", "noah", "oliver", "owen", "ray", "roger", "simon", "zack"}) {
      table.emplace(n, Gender::kMale);
    }
    return table;
  }();
  return kNames;
}

bool is_vowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

int vowel_groups(std::string_view w) {
  int groups = 0;
  bool in_group = false;
  for (char c : w) {
    const bool v = is_vowel(c);
    if (v && !in_group) ++groups;
    in_group = v;
  }
  return groups;
}

// Single-syllable consonant-vowel-consonant ending, e.g. "stop", "plan".
bool short_cvc(std::string_view w) {
  if (w.size() < 3) return false;
  const char a = w[w.size() - 3], b = w[w.size() - 2], c = w[w.size() - 1];
  return !is_vowel(a) && is_vowel(b) && !is_vowel(c) && c != 'w' &&
         c != 'x' && c != 'y' && vowel_groups(w) == 1;
}

const IrregularVerb *find_base(std::string_view base) {
  for (const auto &v : kIrregular) {
    if (base == v.base) return &v;
  }
  return nullptr;
}

}  // namespace

bool is_closed_class(std::string_view w) {
  return closed_class().count(std::string(w)) > 0;
}

bool is_known_verb(std::string_view base) {
  return verbs().count(std::string(base)) > 0;
}

bool is_known_adjective(std::string_view w) {
  return adjectives().count(std::string(w)) > 0;
}

bool is_known_noun(std::string_view w) {
  return nouns().count(std::string(w)) > 0;
}

std::optional<std::string> irregular_base(std::string_view w) {
  for (const auto &v : kIrregular) {
    if (w == v.past || w == v.participle || (v.third && w == v.third)) {
      if (w == v.base) return std::nullopt;
      return std::string(v.base);
    }
  }
  return std::nullopt;
}

std::string past_tense(std::string_view base) {
  if (const auto *v = find_base(base)) return v->past;
  std::string b(base);
  if (b.empty()) return b;
  if (b.back() == 'e') return b + "d";
  if (b.size() >= 2 && b.back() == 'y' && !is_vowel(b[b.size() - 2])) {
    return b.substr(0, b.size() - 1) + "ied";
  }
  if (short_cvc(b)) return b + b.back() + "ed";
  return b + "ed";
}

std::string third_person(std::string_view base) {
  if (const auto *v = find_base(base); v && v->third) return v->third;
  std::string b(base);
  if (b.empty()) return b;
  auto ends = [&](std::string_view suf) {
    return b.size() >= suf.size() &&
           b.compare(b.size() - suf.size(), suf.size(), suf) == 0;
  };
  if (ends("s") || ends("x") || ends("z") || ends("ch") || ends("sh") ||
      ends("o")) {
    return b + "es";
  }
  if (b.size() >= 2 && b.back() == 'y' && !is_vowel(b[b.size() - 2])) {
    return b.substr(0, b.size() - 1) + "ies";
  }
  return b + "s";
}

bool looks_past(std::string_view w) {
  for (const auto &v : kIrregular) {
    if (w == v.past && w != v.base) return true;
  }
  if (w.size() > 3 && w.substr(w.size() - 2) == "ed") {
    // "need", "feed", "seed" are base forms.
    return w.substr(w.size() - 3) != "eed" || irregular_base(w).has_value();
  }
  return false;
}

std::optional<Gender> name_gender(std::string_view name) {
  std::string lower;
  for (char c : name) lower.push_back(static_cast<char>(std::tolower(c)));
  auto it = names().find(lower);
  if (it == names().end()) return std::nullopt;
  return it->second;
}

bool is_third_person_pronoun(std::string_view w) {
  static const std::unordered_set<std::string> kPronouns = {
      "he", "him", "his", "himself", "she", "her", "hers", "herself", "it",
      "its", "itself", "they", "them", "their", "theirs", "themselves"};
  return kPronouns.count(std::string(w)) > 0;
}

}  // namespace kgplot::lexicon
