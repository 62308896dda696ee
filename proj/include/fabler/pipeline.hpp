#pragma once

// End-to-end glue: data directory resolution, asset loading, and the
// single-pass parse -> translate -> style -> realize path shared by the
// command-line tool and the test suites.

#include <cstdlib>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "fabler/dsynts.hpp"
#include "fabler/lexicon.hpp"
#include "fabler/metrics.hpp"
#include "fabler/persona.hpp"
#include "fabler/realize.hpp"
#include "fabler/story.hpp"
#include "fabler/translate.hpp"
#include "fabler/util.hpp"

namespace fabler {

inline std::filesystem::path default_data_dir() {
  if (const char* env = std::getenv("FABLER_DATA"); env && *env) return env;
  return "data";
}

// --- asset loading -----------------------------------------------------

inline Lexicon load_lexicon_dir(const std::filesystem::path& dir) {
  return Lexicon::load((dir / "frames.tsv").string(), (dir / "morph.tsv").string());
}

struct ModelSet {
  std::map<std::string, PersonalityModel> models;

  const PersonalityModel& get(const std::string& name) const {
    auto it = models.find(name);
    if (it == models.end()) throw Error("pipeline", "unknown model: " + name);
    return it->second;
  }

  bool contains(const std::string& name) const { return models.count(name) > 0; }
};

inline ModelSet load_models_dir(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir))
    throw Error("pipeline", "model directory not found: " + dir.string());
  ModelSet set;
  std::vector<fs::path> paths;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.path().extension() == ".model") paths.push_back(entry.path());
  std::sort(paths.begin(), paths.end());
  for (const auto& p : paths) {
    PersonalityModel m = load_model(p.string());
    set.models[m.name] = std::move(m);
  }
  if (set.models.empty()) throw Error("pipeline", "no models in " + dir.string());
  return set;
}

// Story arguments may be a path or a bare corpus name resolved against
// <data>/stories/<name>.story.
inline std::filesystem::path resolve_story_path(const std::string& arg,
                                                const std::filesystem::path& data_dir) {
  namespace fs = std::filesystem;
  if (fs::is_regular_file(arg)) return arg;
  fs::path named = data_dir / "stories" / (arg + ".story");
  if (fs::is_regular_file(named)) return named;
  throw Error("pipeline", "story not found: " + arg);
}

inline StoryGraph load_story_file(const std::filesystem::path& path, const Lexicon& lexicon) {
  StoryGraph graph = parse_story(read_file(path.string()));
  auto violations = validate_story(graph, lexicon);
  if (!violations.empty()) {
    std::string msg = "invalid story " + path.filename().string();
    for (const auto& v : violations) msg += "\n  " + v.invariant + " at " + v.where + ": " + v.detail;
    throw Error("pipeline", msg);
  }
  return graph;
}

// --- styling + rendering -------------------------------------------------

using VoiceMap = std::map<std::string, PersonalityModel>;

// One line per plan: narration styled by the narrator model, quotes by
// the speaker's model. Every speaker must have a voice-map entry.
inline std::vector<std::string> render_story_lines(const std::vector<UtterancePlan>& plans,
                                                   const VoiceMap& voice_map,
                                                   const PersonalityModel& narrator_model,
                                                   std::uint64_t seed, const Lexicon& lexicon,
                                                   RealizationOptions opts = {}) {
  Realizer realizer(lexicon, opts);
  std::vector<std::string> lines;
  lines.reserve(plans.size());
  for (const auto& plan : plans) {
    UtterancePlan styled = plan;
    if (plan.direct()) {
      auto it = voice_map.find(plan.speaker);
      if (it == voice_map.end())
        throw Error("realize", "no voice model for speaker: " + plan.speaker);
      styled = apply_model(styled, it->second, seed);
    } else {
      styled = apply_model(styled, narrator_model, seed);
    }
    lines.push_back(realizer.realize(styled));
  }
  return lines;
}

inline std::string render_story_text(const std::vector<UtterancePlan>& plans,
                                     const VoiceMap& voice_map,
                                     const PersonalityModel& narrator_model,
                                     std::uint64_t seed, const Lexicon& lexicon,
                                     RealizationOptions opts = {}) {
  std::string out;
  for (const auto& line : render_story_lines(plans, voice_map, narrator_model, seed, lexicon, opts))
    out += line + "\n";
  return out;
}

// Full path from a story graph. voices maps entity id -> model name.
inline std::string render_graph(const StoryGraph& graph, const Lexicon& lexicon,
                                const ModelSet& models,
                                const std::map<std::string, std::string>& voices,
                                const std::string& narrator_model, std::uint64_t seed,
                                RealizationOptions opts = {}) {
  Translator translator(graph, lexicon);
  auto plans = translator.translate_story();
  VoiceMap voice_map;
  for (const auto& [entity, model] : voices) {
    if (!graph.find_entity(entity))
      throw Error("pipeline", "voice for undeclared entity: " + entity);
    voice_map[entity] = models.get(model);
  }
  const PersonalityModel& narrator =
      narrator_model.empty() ? models.get("neutral") : models.get(narrator_model);
  return render_story_text(plans, voice_map, narrator, seed, lexicon, opts);
}

// --- evaluation ----------------------------------------------------------

struct EvalReport {
  SimilarityReport similarity;
  double bleu = 0.0;
  std::size_t candidate_lines = 0;
  std::size_t reference_lines = 0;
};

inline std::vector<std::string> nonempty_lines(const std::string& text) {
  std::vector<std::string> out;
  for (const auto& line : str::split(text, '\n'))
    if (!str::trim(line).empty()) out.push_back(line);
  return out;
}

inline EvalReport evaluate_texts(const std::string& candidate, const std::string& reference) {
  EvalReport r;
  auto cand = nonempty_lines(candidate);
  auto ref = nonempty_lines(reference);
  r.candidate_lines = cand.size();
  r.reference_lines = ref.size();
  r.similarity = compare_lines(cand, ref);
  if (cand.empty() || ref.empty()) return r;
  if (cand.size() == ref.size()) {
    std::vector<std::vector<std::string>> c, f;
    for (const auto& l : cand) c.push_back(tokenize(l));
    for (const auto& l : ref) f.push_back(tokenize(l));
    r.bleu = bleu(c, f);
  } else {
    // line counts differ: score the whole texts as single segments
    r.bleu = bleu({tokenize(candidate)}, {tokenize(reference)});
  }
  return r;
}

}  // namespace fabler
