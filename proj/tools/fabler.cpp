// fabler: story graph -> styled English, plus evaluation utilities.
//
// Subcommands: render, translate, eval, swap, validate. Artifact output
// goes to stdout, diagnostics to stderr; exit status 0 iff no error.

#include <cstdint>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fabler/pipeline.hpp"

namespace {

struct Options {
  std::string story;
  std::vector<std::string> voice;  // entity=model
  std::string narrator = "neutral";
  std::uint64_t seed = 0;
  std::string genitive = "of";
  std::string output = "plain";
  std::string models_dir;
  std::string lexicon_dir;
  std::string config;
};

void add_data_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--models-dir", o.models_dir, "personality model directory");
  cmd->add_option("--lexicon-dir", o.lexicon_dir, "frames/morphology directory");
  cmd->add_option("--config", o.config, "read defaults from an ini file; flags override");
}

// CLI11 only reads config files on the root app, and the root never sees a
// --config that follows the subcommand name, so the ini is applied by hand:
// each key fills its option only when the command line left it untouched.
void apply_config(CLI::App* cmd, const std::string& path) {
  if (path.empty()) return;
  std::vector<CLI::ConfigItem> items;
  try {
    items = CLI::ConfigINI{}.from_file(path);
  } catch (const CLI::Error& e) {
    throw fabler::Error("cli", std::string("config: ") + e.what());
  }
  for (const auto& item : items) {
    bool sectioned = item.parents.size() == 1 && item.parents.front() == cmd->get_name();
    if (!item.parents.empty() && !sectioned)
      throw fabler::Error("cli", "config: unknown section for key: " + item.fullname());
    CLI::Option* op = cmd->get_option_no_throw("--" + item.name);
    if (op == nullptr || item.name == "config")
      throw fabler::Error("cli", "config: unknown key: " + item.fullname());
    if (op->count() > 0) continue;  // explicit flag wins
    op->add_result(item.inputs);
    op->run_callback();
  }
}

void add_render_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--voice", o.voice, "speaker voice as <entity>=<model> (repeatable)");
  cmd->add_option("--narrator", o.narrator, "model styling narration")->capture_default_str();
  cmd->add_option("--seed", o.seed, "random stream seed")->capture_default_str();
  cmd->add_option("--genitive", o.genitive, "possessive style")
      ->check(CLI::IsMember({"of", "s"}))
      ->capture_default_str();
  cmd->add_option("--output", o.output, "output form")
      ->check(CLI::IsMember({"plain", "annotated", "xml"}))
      ->capture_default_str();
  add_data_flags(cmd, o);
}

std::map<std::string, std::string> parse_voices(const std::vector<std::string>& specs) {
  std::map<std::string, std::string> voices;
  for (const auto& s : specs) {
    size_t eq = s.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == s.size())
      throw fabler::Error("cli", "bad --voice, want <entity>=<model>: " + s);
    voices[s.substr(0, eq)] = s.substr(eq + 1);
  }
  return voices;
}

fabler::RealizationOptions realization_options(const Options& o) {
  fabler::RealizationOptions opts;
  opts.genitive = o.genitive == "s" ? fabler::RealizationOptions::Genitive::s_genitive
                                    : fabler::RealizationOptions::Genitive::of_genitive;
  if (o.output == "annotated") opts.style = fabler::RealizationOptions::Style::annotated;
  return opts;
}

struct Assets {
  fabler::Lexicon lexicon;
  fabler::ModelSet models;
  fabler::StoryGraph graph;
};

Assets load_assets(const Options& o, bool with_models = true) {
  auto data = fabler::default_data_dir();
  std::filesystem::path lex_dir = o.lexicon_dir.empty() ? data / "lexicon" : std::filesystem::path(o.lexicon_dir);
  Assets a;
  a.lexicon = fabler::load_lexicon_dir(lex_dir);
  if (with_models) {
    std::filesystem::path models_dir = o.models_dir.empty() ? data / "models" : std::filesystem::path(o.models_dir);
    a.models = fabler::load_models_dir(models_dir);
  }
  a.graph = fabler::load_story_file(fabler::resolve_story_path(o.story, data), a.lexicon);
  return a;
}

int cmd_render(const Options& o) {
  Assets a = load_assets(o);
  if (o.output == "xml") {
    fabler::Translator tr(a.graph, a.lexicon);
    auto plans = tr.translate_story();
    auto voices = parse_voices(o.voice);
    const auto& narrator = a.models.get(o.narrator);
    for (auto& plan : plans) {
      if (plan.direct()) {
        auto it = voices.find(plan.speaker);
        if (it == voices.end())
          throw fabler::Error("realize", "no voice model for speaker: " + plan.speaker);
        plan = fabler::apply_model(plan, a.models.get(it->second), o.seed);
      } else {
        plan = fabler::apply_model(plan, narrator, o.seed);
      }
    }
    std::cout << fabler::emit_dsynts(plans);
    return 0;
  }
  std::cout << fabler::render_graph(a.graph, a.lexicon, a.models, parse_voices(o.voice),
                                    o.narrator, o.seed, realization_options(o));
  return 0;
}

int cmd_translate(const Options& o) {
  Assets a = load_assets(o, /*with_models=*/false);
  fabler::Translator tr(a.graph, a.lexicon);
  std::cout << fabler::emit_dsynts(tr.translate_story());
  return 0;
}

int cmd_swap(const Options& o, const std::string& from, const std::string& to) {
  Assets a = load_assets(o);
  fabler::Translator tr(a.graph, a.lexicon);
  auto plans = tr.substitute_speaker(tr.translate_story(), from, to);
  fabler::VoiceMap voice_map;
  for (const auto& [entity, model] : parse_voices(o.voice))
    voice_map[entity] = a.models.get(model);
  std::cout << fabler::render_story_text(plans, voice_map, a.models.get(o.narrator), o.seed,
                                         a.lexicon, realization_options(o));
  return 0;
}

int cmd_eval(const std::string& candidate, const std::string& reference,
             const std::string& format) {
  auto report =
      fabler::evaluate_texts(fabler::read_file(candidate), fabler::read_file(reference));
  if (format == "kv") {
    std::cout << "lines " << report.candidate_lines << "\n";
    std::cout << "reference_lines " << report.reference_lines << "\n";
    for (size_t i = 0; i < report.similarity.per_line.size(); ++i)
      std::cout << "similarity " << i + 1 << " " << report.similarity.per_line[i] << "\n";
    std::cout << "similarity_mean " << report.similarity.mean << "\n";
    std::cout << "similarity_min " << report.similarity.min << "\n";
    std::cout << "bleu " << report.bleu << "\n";
    return 0;
  }
  std::cout << "candidate: " << report.candidate_lines << " lines, reference: "
            << report.reference_lines << " lines\n";
  for (size_t i = 0; i < report.similarity.per_line.size(); ++i)
    std::cout << "  line " << i + 1 << ": similarity " << report.similarity.per_line[i] << "\n";
  std::cout << "mean similarity: " << report.similarity.mean << "\n";
  std::cout << "min similarity: " << report.similarity.min << "\n";
  std::cout << "corpus BLEU: " << report.bleu << "\n";
  return 0;
}

int cmd_validate(const Options& o) {
  auto data = fabler::default_data_dir();
  std::filesystem::path lex_dir = o.lexicon_dir.empty() ? data / "lexicon" : std::filesystem::path(o.lexicon_dir);
  auto lexicon = fabler::load_lexicon_dir(lex_dir);
  auto graph = fabler::parse_story(fabler::read_file(
      fabler::resolve_story_path(o.story, data).string()));
  auto violations = fabler::validate_story(graph, lexicon);
  if (violations.empty()) {
    std::cout << "ok: " << graph.title << "\n";
    return 0;
  }
  for (const auto& v : violations)
    std::cerr << "story: " << v.invariant << " at " << v.where << ": " << v.detail << "\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"story graph to styled English"};
  app.require_subcommand(1);

  Options o;
  std::string eval_candidate, eval_reference, eval_format = "text";
  std::string swap_from, swap_to;

  auto* render = app.add_subcommand("render", "realize a story as text");
  render->add_option("story", o.story, "story name or path")->required();
  add_render_flags(render, o);

  auto* translate = app.add_subcommand("translate", "emit deep-syntax XML for a story");
  translate->add_option("story", o.story, "story name or path")->required();
  add_data_flags(translate, o);

  auto* eval = app.add_subcommand("eval", "compare a rendering against a reference");
  eval->add_option("candidate", eval_candidate, "candidate text file")->required();
  eval->add_option("reference", eval_reference, "reference text file")->required();
  eval->add_option("--format", eval_format, "report form")
      ->check(CLI::IsMember({"text", "kv"}))
      ->capture_default_str();

  auto* swap = app.add_subcommand("swap", "recast a speaker and render");
  swap->add_option("story", o.story, "story name or path")->required();
  swap->add_option("from", swap_from, "speaker to replace")->required();
  swap->add_option("to", swap_to, "replacement entity")->required();
  add_render_flags(swap, o);

  auto* validate = app.add_subcommand("validate", "check story invariants");
  validate->add_option("story", o.story, "story name or path")->required();
  add_data_flags(validate, o);

  CLI11_PARSE(app, argc, argv);

  try {
    for (CLI::App* cmd : {render, translate, swap, validate})
      if (cmd->parsed()) apply_config(cmd, o.config);
    if (render->parsed()) return cmd_render(o);
    if (translate->parsed()) return cmd_translate(o);
    if (eval->parsed()) return cmd_eval(eval_candidate, eval_reference, eval_format);
    if (swap->parsed()) return cmd_swap(o, swap_from, swap_to);
    if (validate->parsed()) return cmd_validate(o);
  } catch (const fabler::Error& e) {
    std::cerr << e.what() << "\n";  // already module-qualified
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
