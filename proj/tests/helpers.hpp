#pragma once

#include <cstdlib>
#include <filesystem>
#include <string>

#include "fabler/pipeline.hpp"

namespace th {

inline std::filesystem::path data_dir() { return fabler::default_data_dir(); }

inline const fabler::Lexicon& lexicon() {
  static fabler::Lexicon lex = fabler::load_lexicon_dir(data_dir() / "lexicon");
  return lex;
}

inline const fabler::ModelSet& models() {
  static fabler::ModelSet ms = fabler::load_models_dir(data_dir() / "models");
  return ms;
}

inline fabler::StoryGraph load_story(const std::string& name) {
  return fabler::load_story_file(data_dir() / "stories" / (name + ".story"), lexicon());
}

inline std::vector<fabler::UtterancePlan> plans_for(const std::string& name) {
  fabler::StoryGraph g = load_story(name);
  fabler::Translator tr(g, lexicon());
  return tr.translate_story();
}

inline std::string golden(const std::string& name) {
  return fabler::read_file((data_dir() / "golden" / name).string());
}

// Deterministic xorshift for property tests; independent of the library's RNG.
struct Rng {
  unsigned long long s = 0x9e3779b97f4a7c15ull;
  unsigned long long next() {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return s;
  }
  int below(int n) { return static_cast<int>(next() % static_cast<unsigned long long>(n)); }
};

inline std::string random_word(Rng& rng, int min_len, int max_len, const char* alphabet) {
  int span = max_len - min_len + 1;
  int len = min_len + rng.below(span);
  std::string w;
  int n = 0;
  while (alphabet[n]) ++n;
  for (int i = 0; i < len; ++i) w.push_back(alphabet[rng.below(n)]);
  return w;
}

}  // namespace th
