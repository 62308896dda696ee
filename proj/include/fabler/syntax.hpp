#pragma once

// Deep syntactic structures: lexicalized dependency trees that the
// realizer linearizes. Nodes carry a closed feature set; everything is
// a value type with deep equality so transformations can be checked
// for exact structural identity.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fabler/story.hpp"  // Gender, Number

namespace fabler {

enum class WordClass { noun, verb, adverb, adjective, functional };
enum class Relation { subject, object, indirect_object, attribute, adjunct };
enum class Tense { past, present, future };
enum class Article { def, indef, some, every, bare };

// Marker kinds cover the stylistic insertions; content nodes are `plain`.
enum class MarkerKind {
  plain,
  softener,
  emphasizer,
  expletive,
  filled_pause,
  acknowledgment,
  in_group,
  tag_question,
};

// Linear position of a child relative to its clause. Content children
// default to `core` (position decided by relation + word class); marker
// nodes and fronted material carry an explicit slot.
enum class Slot { core, clause_initial, pre_verb, clause_final };

struct SyntaxNode {
  std::string lexeme;
  WordClass cls = WordClass::noun;
  std::optional<Relation> rel;      // absent on a sentence root
  std::optional<Tense> tense;       // finite verbs only; infinitives carry none
  int person = 3;                   // 1 | 2 | 3
  Number number = Number::sg;
  std::optional<Article> article;   // nouns
  Gender gender = Gender::unspecified;
  std::string entity;               // source entity id, "" for non-referential nodes
  bool pronominal = false;          // realize as a pronoun
  bool negated = false;             // verbs
  MarkerKind marker = MarkerKind::plain;
  Slot slot = Slot::core;
  bool stutter = false;             // realize first word with a stutter
  std::string alt_lexeme;           // voice-substituted lexeme; "" keeps lexeme
  std::vector<SyntaxNode> children;

  bool operator==(const SyntaxNode&) const = default;

  bool is_verb() const { return cls == WordClass::verb; }
  bool is_finite() const { return is_verb() && tense.has_value(); }
  bool is_marker() const { return marker != MarkerKind::plain; }
  const std::string& surface_lexeme() const { return alt_lexeme.empty() ? lexeme : alt_lexeme; }

  const SyntaxNode* child_with_rel(Relation r) const {
    for (const auto& c : children)
      if (c.rel == r && !c.is_marker()) return &c;
    return nullptr;
  }
};

enum class Mode { narration, direct_speech, direct_thought };

// Identifies the proposition a sentence came from: timespan index plus
// the 1-based position of the action within it. Keys the deterministic
// random streams, so styling one sentence never disturbs another.
struct SourceSpan {
  int timespan = 0;
  int action = 0;
  bool operator==(const SourceSpan&) const = default;
};

struct UtterancePlan {
  SyntaxNode tree;  // narration clause, or the quoted clause for direct modes
  Mode mode = Mode::narration;
  std::string speaker;                // entity id; "" for narration
  std::vector<SyntaxNode> matrix;     // attribution clause (direct modes; single element)
  SourceSpan span;
  bool exclaim = false;               // terminal "!" instead of "."

  bool operator==(const UtterancePlan&) const = default;
  bool direct() const { return mode != Mode::narration; }
};

// Depth-first walk over a tree, mutable and const flavors.
template <typename Fn>
void walk(SyntaxNode& n, Fn&& fn) {
  fn(n);
  for (auto& c : n.children) walk(c, fn);
}

template <typename Fn>
void walk(const SyntaxNode& n, Fn&& fn) {
  fn(n);
  for (const auto& c : n.children) walk(c, fn);
}

enum class PronCase { nominative, objective, possessive };

// English personal pronoun table, shared by the realizer and the echo
// tag builder. Unspecified-gender third person falls back to they/them.
inline std::string pronoun_form(int person, Gender gender, Number number, PronCase c) {
  if (person == 1) {
    if (number == Number::pl)
      return c == PronCase::nominative ? "we" : c == PronCase::objective ? "us" : "our";
    return c == PronCase::nominative ? "I" : c == PronCase::objective ? "me" : "my";
  }
  if (person == 2) return c == PronCase::possessive ? "your" : "you";
  if (number == Number::pl)
    return c == PronCase::nominative ? "they" : c == PronCase::objective ? "them" : "their";
  switch (gender) {
    case Gender::masculine:
      return c == PronCase::nominative ? "he" : c == PronCase::objective ? "him" : "his";
    case Gender::feminine:
      return c == PronCase::nominative ? "she" : c == PronCase::objective ? "her" : "her";
    case Gender::neuter:
      return c == PronCase::possessive ? "its" : "it";
    case Gender::unspecified:
      return c == PronCase::nominative ? "they" : c == PronCase::objective ? "them" : "their";
  }
  return "it";
}

}  // namespace fabler
