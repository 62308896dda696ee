#pragma once

// Personality models: probabilistic insertion of pragmatic markers into
// utterance plans. Each parameter has an activation in [0,1]; at every
// eligible insertion site a marker fires with probability equal to the
// activation, drawn from a stream keyed by (seed, source span,
// parameter), so sentences are styled independently and runs are
// reproducible. Content is never deleted or reordered; inserted nodes
// are flagged so strip_markers can restore the original plan exactly.
//
// Site inventory and pass order (docs/markers.md):
//   acknowledgment (quote-initial) -> filled pause (quote-initial,
//   after acknowledgment) -> softener (phrasal item clause-initial /
//   adverbial item pre-adjective, else pre-verb) -> emphasizer
//   (pre-adjective, else pre-verb) -> expletive (pre-adjective only) ->
//   stuttering (first adjective phrase, else first plain noun) ->
//   in-group marker (quote-final) -> tag question (quote-final) ->
//   exclamation (terminal punctuation override).

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fabler/rng.hpp"
#include "fabler/syntax.hpp"
#include "fabler/util.hpp"

namespace fabler {

enum class ParameterId {
  softener_hedges,
  emphasizer_hedges,
  stuttering,
  filled_pauses,
  exclamation,
  expletives,
  tag_question,
  in_group_marker,
  acknowledgment,
};
inline constexpr size_t kParameterCount = 9;
// Stream key reserved for attribution-verb choice (not an insertion
// parameter, but it needs its own independent draw sequence).
inline constexpr uint64_t kAttributionKey = 9;

inline const char* parameter_name(ParameterId p) {
  switch (p) {
    case ParameterId::softener_hedges: return "softener_hedges";
    case ParameterId::emphasizer_hedges: return "emphasizer_hedges";
    case ParameterId::stuttering: return "stuttering";
    case ParameterId::filled_pauses: return "filled_pauses";
    case ParameterId::exclamation: return "exclamation";
    case ParameterId::expletives: return "expletives";
    case ParameterId::tag_question: return "tag_question";
    case ParameterId::in_group_marker: return "in_group_marker";
    case ParameterId::acknowledgment: return "acknowledgment";
  }
  return "";
}

enum class TagStyle { literal, echo };

struct PersonalityModel {
  std::string name;
  std::array<double, kParameterCount> params{};  // activations, all 0 by default
  std::vector<std::string> softeners;      // "…that" items prepose, others are adverbial
  std::vector<std::string> emphasizers;
  std::vector<std::string> expletives;
  std::vector<std::string> filled_pauses;
  std::vector<std::string> acknowledgments;
  std::vector<std::string> in_group;
  std::vector<std::string> tags;  // literal tag words ("alright" -> ", alright?")
  TagStyle tag_style = TagStyle::literal;
  std::vector<std::pair<std::string, double>> attribution;  // verb, weight

  double activation(ParameterId p) const { return params[static_cast<size_t>(p)]; }

  bool neutral() const {
    for (double a : params)
      if (a != 0.0) return false;
    return true;
  }
};

// "so-somewhat": duplicate the first two characters of a content word.
// Words shorter than three characters are left alone.
inline std::string stutter(const std::string& word) {
  if (word.size() < 3) return word;
  return word.substr(0, 2) + "-" + word;
}

// ---------------------------------------------------------------------
// Model files

// Line-oriented format (docs/model-format.md):
//   model <name>
//   param <parameter_id> <activation>
//   lexicon <softener|emphasizer|expletive|filled_pause|acknowledgment|in_group|tag> items, comma, separated
//   tag_style <literal|echo>
//   attribution <verb> <weight>, <verb> <weight>, ...
inline PersonalityModel load_model(const std::string& path) {
  PersonalityModel m;
  int line_no = 0;
  for (const auto& raw : str::split(read_file(path), '\n')) {
    ++line_no;
    auto line = str::trim(raw);
    if (line.empty() || line[0] == '#') continue;
    auto where = [&] { return path + ":" + std::to_string(line_no) + ": "; };
    size_t sp = line.find(' ');
    std::string directive = line.substr(0, sp);
    std::string rest = sp == std::string::npos ? "" : str::trim(line.substr(sp + 1));
    if (directive == "model") {
      m.name = rest;
    } else if (directive == "param") {
      size_t sp2 = rest.find(' ');
      if (sp2 == std::string::npos) throw Error("persona", where() + "param needs a value");
      std::string id = rest.substr(0, sp2);
      double value = std::stod(rest.substr(sp2 + 1));
      bool found = false;
      for (size_t i = 0; i < kParameterCount; ++i) {
        if (id == parameter_name(static_cast<ParameterId>(i))) {
          m.params[i] = value;
          found = true;
          break;
        }
      }
      if (!found) throw Error("persona", where() + "unknown parameter id: " + id);
      if (value < 0.0 || value > 1.0)
        throw Error("persona", where() + "activation out of range [0,1]: " + id);
    } else if (directive == "lexicon") {
      size_t sp2 = rest.find(' ');
      if (sp2 == std::string::npos) throw Error("persona", where() + "lexicon needs items");
      std::string kind = rest.substr(0, sp2);
      auto items = str::split_list(rest.substr(sp2 + 1), ',');
      if (kind == "softener")
        m.softeners = items;
      else if (kind == "emphasizer")
        m.emphasizers = items;
      else if (kind == "expletive")
        m.expletives = items;
      else if (kind == "filled_pause")
        m.filled_pauses = items;
      else if (kind == "acknowledgment")
        m.acknowledgments = items;
      else if (kind == "in_group")
        m.in_group = items;
      else if (kind == "tag")
        m.tags = items;
      else
        throw Error("persona", where() + "unknown lexicon kind: " + kind);
    } else if (directive == "tag_style") {
      if (rest == "literal")
        m.tag_style = TagStyle::literal;
      else if (rest == "echo")
        m.tag_style = TagStyle::echo;
      else
        throw Error("persona", where() + "bad tag_style: " + rest);
    } else if (directive == "attribution") {
      for (const auto& item : str::split_list(rest, ',')) {
        size_t sp2 = item.find(' ');
        if (sp2 == std::string::npos)
          throw Error("persona", where() + "attribution needs 'verb weight' pairs");
        m.attribution.emplace_back(str::trim(item.substr(0, sp2)),
                                   std::stod(item.substr(sp2 + 1)));
      }
    } else {
      throw Error("persona", where() + "unknown directive: " + directive);
    }
  }
  if (m.name.empty()) throw Error("persona", path + ": missing 'model <name>' line");

  auto require_list = [&](ParameterId p, const std::vector<std::string>& list) {
    if (m.activation(p) > 0.0 && list.empty())
      throw Error("persona", path + ": parameter " + parameter_name(p) +
                                 " is active but its marker list is empty");
  };
  require_list(ParameterId::softener_hedges, m.softeners);
  require_list(ParameterId::emphasizer_hedges, m.emphasizers);
  require_list(ParameterId::expletives, m.expletives);
  require_list(ParameterId::filled_pauses, m.filled_pauses);
  require_list(ParameterId::acknowledgment, m.acknowledgments);
  require_list(ParameterId::in_group_marker, m.in_group);
  if (m.tag_style == TagStyle::literal) require_list(ParameterId::tag_question, m.tags);
  return m;
}

// ---------------------------------------------------------------------
// Marker insertion

namespace detail {

inline SyntaxNode marker_node(MarkerKind kind, WordClass cls, Slot slot, std::string lexeme) {
  SyntaxNode n;
  n.lexeme = std::move(lexeme);
  n.cls = cls;
  n.rel = Relation::adjunct;
  n.marker = kind;
  n.slot = slot;
  return n;
}

// Phrasal softeners prepose to the clause; adverbial ones sit before an
// adjective. Phrasal items are the complementizer-taking ones ("it seems
// that", "I think that"), so the trailing "that" is the tell.
inline bool phrasal_item(const std::string& item) { return str::ends_with(item, "that"); }

inline size_t leading_initial_markers(const SyntaxNode& clause) {
  size_t i = 0;
  while (i < clause.children.size() && clause.children[i].is_marker() &&
         clause.children[i].slot == Slot::clause_initial)
    ++i;
  return i;
}

inline size_t leading_markers(const SyntaxNode& node) {
  size_t i = 0;
  while (i < node.children.size() && node.children[i].is_marker()) ++i;
  return i;
}

// First adjective belonging to this clause: descends noun phrases and
// non-finite verb groups, stops at nested finite clauses (those are
// their own insertion sites).
inline SyntaxNode* clause_adjective(SyntaxNode& clause) {
  for (auto& c : clause.children) {
    if (c.is_finite() || c.is_marker()) continue;
    if (c.cls == WordClass::adjective) return &c;
    if (SyntaxNode* r = clause_adjective(c)) return r;
  }
  return nullptr;
}

inline void collect_preorder(SyntaxNode& n, std::vector<SyntaxNode*>& out) {
  out.push_back(&n);
  for (auto& c : n.children) collect_preorder(c, out);
}

// Stutter target: first adjective phrase of the whole quote (an
// inserted pre-adjective marker counts as the phrase-initial word), or
// the first plain third-person noun when no adjective exists.
// Depth-first child order matches surface order for the trees we build.
inline SyntaxNode* stutter_target(SyntaxNode& root) {
  SyntaxNode* adjective = nullptr;
  SyntaxNode* noun = nullptr;
  std::vector<SyntaxNode*> order;
  collect_preorder(root, order);
  for (SyntaxNode* n : order) {
    if (!adjective && n->cls == WordClass::adjective && !n->is_marker()) adjective = n;
    if (!noun && n->cls == WordClass::noun && !n->is_marker() && !n->pronominal &&
        n->person == 3)
      noun = n;
  }
  if (adjective) {
    size_t lead = leading_markers(*adjective);
    return lead > 0 ? &adjective->children[0] : adjective;
  }
  return noun;
}

// Echo tag ("won't I?") computed from the clause's auxiliary shape.
inline std::string echo_tag(const SyntaxNode& clause) {
  const SyntaxNode* subj = clause.child_with_rel(Relation::subject);
  std::string pron = subj ? pronoun_form(subj->person, subj->gender, subj->number,
                                         PronCase::nominative)
                          : "it";
  bool positive = clause.negated;  // negated clause takes a positive tag
  Tense tense = clause.tense.value_or(Tense::present);
  bool plural_ish = subj && (subj->number == Number::pl || subj->person != 3);
  std::string aux;
  if (tense == Tense::future) {
    aux = positive ? "will" : "won't";
  } else if (clause.lexeme == "be") {
    if (tense == Tense::past)
      aux = plural_ish ? (positive ? "were" : "weren't") : (positive ? "was" : "wasn't");
    else
      aux = plural_ish ? (positive ? "are" : "aren't") : (positive ? "is" : "isn't");
  } else if (tense == Tense::past) {
    aux = positive ? "did" : "didn't";
  } else {
    bool third_sg = subj && subj->person == 3 && subj->number == Number::sg;
    aux = third_sg ? (positive ? "does" : "doesn't") : (positive ? "do" : "don't");
  }
  return aux + " " + pron;
}

struct Inserter {
  const PersonalityModel& model;
  uint64_t seed;
  SourceSpan span;

  RandomStream stream(ParameterId p) const {
    return RandomStream::keyed(seed, static_cast<uint64_t>(span.timespan),
                               static_cast<uint64_t>(span.action),
                               static_cast<uint64_t>(p));
  }

  static const std::string& pick(RandomStream& rs, const std::vector<std::string>& items) {
    return items[rs.next_index(items.size())];
  }

  // Visits every finite clause in pre-order, applying `fn` parent-first
  // (insertions into a clause precede the descent into it).
  template <typename Fn>
  static void for_each_clause(SyntaxNode& node, Fn&& fn) {
    if (node.is_finite()) fn(node);
    for (size_t i = 0; i < node.children.size(); ++i) for_each_clause(node.children[i], fn);
  }

  void acknowledgment(SyntaxNode& root) {
    double act = model.activation(ParameterId::acknowledgment);
    if (act <= 0.0) return;
    RandomStream rs = stream(ParameterId::acknowledgment);
    if (rs.next_unit() >= act) return;
    const std::string& item = pick(rs, model.acknowledgments);
    root.children.insert(root.children.begin() + leading_initial_markers(root),
                         marker_node(MarkerKind::acknowledgment, WordClass::functional,
                                     Slot::clause_initial, item));
  }

  void filled_pause(SyntaxNode& root) {
    double act = model.activation(ParameterId::filled_pauses);
    if (act <= 0.0) return;
    RandomStream rs = stream(ParameterId::filled_pauses);
    if (rs.next_unit() >= act) return;
    const std::string& item = pick(rs, model.filled_pauses);
    root.children.insert(root.children.begin() + leading_initial_markers(root),
                         marker_node(MarkerKind::filled_pause, WordClass::functional,
                                     Slot::clause_initial, item));
  }

  void softeners(SyntaxNode& root) {
    double act = model.activation(ParameterId::softener_hedges);
    if (act <= 0.0) return;
    RandomStream rs = stream(ParameterId::softener_hedges);
    for_each_clause(root, [&](SyntaxNode& clause) {
      if (rs.next_unit() >= act) return;
      const std::string& item = pick(rs, model.softeners);
      if (phrasal_item(item)) {
        clause.children.insert(clause.children.begin() + leading_initial_markers(clause),
                               marker_node(MarkerKind::softener, WordClass::functional,
                                           Slot::clause_initial, item));
      } else if (SyntaxNode* adj = clause_adjective(clause)) {
        adj->children.insert(adj->children.begin() + leading_markers(*adj),
                             marker_node(MarkerKind::softener, WordClass::adverb, Slot::core,
                                         item));
      } else {
        clause.children.push_back(
            marker_node(MarkerKind::softener, WordClass::adverb, Slot::pre_verb, item));
      }
    });
  }

  void emphasizers(SyntaxNode& root) {
    double act = model.activation(ParameterId::emphasizer_hedges);
    if (act <= 0.0) return;
    RandomStream rs = stream(ParameterId::emphasizer_hedges);
    for_each_clause(root, [&](SyntaxNode& clause) {
      if (rs.next_unit() >= act) return;
      const std::string& item = pick(rs, model.emphasizers);
      if (SyntaxNode* adj = clause_adjective(clause)) {
        adj->children.insert(adj->children.begin() + leading_markers(*adj),
                             marker_node(MarkerKind::emphasizer, WordClass::adverb, Slot::core,
                                         item));
      } else {
        clause.children.push_back(
            marker_node(MarkerKind::emphasizer, WordClass::adverb, Slot::pre_verb, item));
      }
    });
  }

  void expletives(SyntaxNode& root) {
    double act = model.activation(ParameterId::expletives);
    if (act <= 0.0) return;
    RandomStream rs = stream(ParameterId::expletives);
    for_each_clause(root, [&](SyntaxNode& clause) {
      SyntaxNode* adj = clause_adjective(clause);
      if (!adj) return;  // pre-adjective is the only expletive site
      if (rs.next_unit() >= act) return;
      const std::string& item = pick(rs, model.expletives);
      adj->children.insert(
          adj->children.begin() + leading_markers(*adj),
          marker_node(MarkerKind::expletive, WordClass::adverb, Slot::core, item));
    });
  }

  void stuttering(SyntaxNode& root) {
    double act = model.activation(ParameterId::stuttering);
    if (act <= 0.0) return;
    if (SyntaxNode* target = stutter_target(root)) {
      RandomStream rs = stream(ParameterId::stuttering);
      if (rs.next_unit() >= act) return;
      target->stutter = true;
    }
  }

  void in_group_marker(SyntaxNode& root) {
    double act = model.activation(ParameterId::in_group_marker);
    if (act <= 0.0) return;
    RandomStream rs = stream(ParameterId::in_group_marker);
    if (rs.next_unit() >= act) return;
    const std::string& item = pick(rs, model.in_group);
    root.children.push_back(
        marker_node(MarkerKind::in_group, WordClass::functional, Slot::clause_final, item));
  }

  // Tag question and exclamation contend for the terminal; the higher
  // activation wins, exclamation on ties.
  void terminal(SyntaxNode& root, bool& exclaim) {
    double tag_act = model.activation(ParameterId::tag_question);
    double exc_act = model.activation(ParameterId::exclamation);
    bool tag_fired = false;
    std::string tag_text;
    if (tag_act > 0.0) {
      RandomStream rs = stream(ParameterId::tag_question);
      if (rs.next_unit() < tag_act) {
        tag_fired = true;
        tag_text = model.tag_style == TagStyle::echo ? echo_tag(root) : pick(rs, model.tags);
      }
    }
    bool exc_fired = false;
    if (exc_act > 0.0) {
      RandomStream rs = stream(ParameterId::exclamation);
      exc_fired = rs.next_unit() < exc_act;
    }
    if (tag_fired && exc_fired) {
      if (exc_act >= tag_act)
        tag_fired = false;
      else
        exc_fired = false;
    }
    if (tag_fired)
      root.children.push_back(marker_node(MarkerKind::tag_question, WordClass::functional,
                                          Slot::clause_final, tag_text));
    if (exc_fired) exclaim = true;
  }
};

inline void strip_tree(SyntaxNode& n) {
  std::vector<SyntaxNode> kept;
  kept.reserve(n.children.size());
  for (auto& c : n.children)
    if (!c.is_marker()) kept.push_back(std::move(c));
  n.children = std::move(kept);
  n.stutter = false;
  n.alt_lexeme.clear();
  for (auto& c : n.children) strip_tree(c);
}

}  // namespace detail

inline UtterancePlan apply_model(const UtterancePlan& plan, const PersonalityModel& model,
                                 uint64_t seed) {
  UtterancePlan out = plan;

  // Attribution-verb choice: communication matrices only; thoughts keep
  // their own verb.
  if (out.mode == Mode::direct_speech && !out.matrix.empty() && !model.attribution.empty()) {
    RandomStream rs = RandomStream::keyed(seed, static_cast<uint64_t>(out.span.timespan),
                                          static_cast<uint64_t>(out.span.action),
                                          kAttributionKey);
    double total = 0.0;
    for (const auto& [verb, weight] : model.attribution) total += weight;
    double x = rs.next_unit() * total;
    for (const auto& [verb, weight] : model.attribution) {
      x -= weight;
      if (x < 0.0) {
        if (verb != out.matrix.front().lexeme) out.matrix.front().alt_lexeme = verb;
        break;
      }
    }
  }

  detail::Inserter ins{model, seed, out.span};
  ins.acknowledgment(out.tree);
  ins.filled_pause(out.tree);
  ins.softeners(out.tree);
  ins.emphasizers(out.tree);
  ins.expletives(out.tree);
  ins.stuttering(out.tree);
  ins.in_group_marker(out.tree);
  ins.terminal(out.tree, out.exclaim);
  return out;
}

inline UtterancePlan strip_markers(const UtterancePlan& plan) {
  UtterancePlan out = plan;
  detail::strip_tree(out.tree);
  for (auto& m : out.matrix) detail::strip_tree(m);
  out.exclaim = false;
  return out;
}

}  // namespace fabler
