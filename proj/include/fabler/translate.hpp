#pragma once

// Translation from the story's timeline layer to deep syntactic trees.
//
// Narration is realized entirely in the past tense. A proposition
// carrying `directly` becomes a direct-speech (or direct-thought) plan:
// an attribution matrix clause plus a quoted clause whose tense is
// shifted to present — future when the event is marked as intended or
// planned (future / try_to embeddings) — and whose person features are
// rebound: speaker references to first person, addressee/interlocutor
// references to second person.

#include <string>
#include <vector>

#include "fabler/lexicon.hpp"
#include "fabler/story.hpp"
#include "fabler/syntax.hpp"

namespace fabler {

class Translator {
 public:
  Translator(const StoryGraph& graph, const Lexicon& lexicon) : g_(graph), lex_(lexicon) {}

  // Narration tree for one proposition (past tense throughout).
  SyntaxNode build_syntax_tree(const Proposition& p) const {
    SyntaxNode root = clause(p, Ctx::narration, /*finite=*/true);
    guard_narration(root);
    return root;
  }

  // Adjuncts only, in source order (they live in their own collection
  // on the proposition, so they get their own mapping pass).
  std::vector<SyntaxNode> collect_adjuncts(const Proposition& p) const {
    return collect_adjuncts(p, Ctx::narration);
  }

  UtterancePlan apply_direct_speech(const Proposition& p, const std::string& speaker,
                                    SourceSpan span = {}) const {
    const Frame& f = lex_.frame(p.pred);
    if (!p.directly || !f.reporting())
      throw Error("translate",
                  "direct address requires a communication or cognition frame: " + p.pred);
    if (p.args.size() < 2 || p.args[1].kind != Arg::Kind::prop)
      throw Error("translate", "direct address reports a proposition: " + p.pred);
    if (p.args[0].kind != Arg::Kind::noun)
      throw Error("translate", "direct address needs an entity speaker: " + p.pred);

    UtterancePlan plan;
    plan.mode =
        f.category == FrameCategory::cognition ? Mode::direct_thought : Mode::direct_speech;
    plan.speaker = speaker;
    plan.span = span;
    plan.tree = clause(p.args[1].prop.front(), Ctx::quote, /*finite=*/true);
    bind_persons(plan.tree, speaker, p.addressee);

    SyntaxNode matrix;
    matrix.lexeme = f.lexeme;
    matrix.cls = WordClass::verb;
    matrix.tense = Tense::past;
    matrix.children.push_back(noun_phrase(p.args[0].noun, Relation::subject));
    plan.matrix.push_back(std::move(matrix));
    return plan;
  }

  std::vector<UtterancePlan> translate_story() const {
    std::vector<UtterancePlan> plans;
    for (const auto& ts : g_.timeline) {
      int action = 0;
      for (const auto& p : ts.actions) {
        ++action;
        SourceSpan span{ts.index, action};
        if (p.directly) {
          if (p.args.empty() || p.args[0].kind != Arg::Kind::noun)
            throw Error("translate", "direct address needs an entity speaker: " + p.pred);
          plans.push_back(apply_direct_speech(p, p.args[0].noun.entity, span));
        } else {
          UtterancePlan plan;
          plan.mode = Mode::narration;
          plan.span = span;
          plan.tree = build_syntax_tree(p);
          plans.push_back(std::move(plan));
        }
      }
    }
    return plans;
  }

  // Rebinds who speaks: matrix subject and in-quote self-references move
  // from `old_id` to `new_id`; person features are re-derived so the new
  // speaker's self-references stay first person. Quoted content is not
  // otherwise touched.
  std::vector<UtterancePlan> substitute_speaker(std::vector<UtterancePlan> plans,
                                                const std::string& old_id,
                                                const std::string& new_id) const {
    const Entity& ne = g_.entity(new_id);
    g_.entity(old_id);  // both must be declared
    for (auto& plan : plans) {
      if (plan.speaker != old_id) continue;
      plan.speaker = new_id;
      for (auto& m : plan.matrix)
        walk(m, [&](SyntaxNode& n) {
          if (n.entity == old_id) rebind_entity(n, ne);
        });
      walk(plan.tree, [&](SyntaxNode& n) {
        if (n.entity == old_id) rebind_entity(n, ne);
        if (n.entity == new_id) n.person = 1;
      });
    }
    return plans;
  }

 private:
  enum class Ctx { narration, quote };

  static void rebind_entity(SyntaxNode& n, const Entity& e) {
    n.entity = e.id;
    n.lexeme = e.lexeme;
    n.gender = e.gender;
    n.number = e.number;
    if (n.article == Article::def || n.article == Article::indef || n.article == Article::bare)
      n.article = default_article(e);
  }

  static Article default_article(const Entity& e) {
    if (e.proper) return Article::bare;
    return e.definite ? Article::def : Article::indef;
  }

  Tense finite_tense(const Proposition& p, Ctx ctx) const {
    if (ctx == Ctx::narration) return Tense::past;
    bool planned = p.embedding == Embedding::future || p.embedding == Embedding::try_to;
    return planned ? Tense::future : Tense::present;
  }

  // Builds the clause for a proposition. `finite` is false for
  // infinitival contexts (purpose clauses, complements of try/able).
  SyntaxNode clause(const Proposition& p, Ctx ctx, bool finite) const {
    const Frame& f = lex_.frame(p.pred);
    if (p.embedding == Embedding::future && ctx == Ctx::narration)
      throw Error("translate", "future embedding requires direct address: " + p.pred);

    switch (p.embedding) {
      case Embedding::able_to: return able_clause(p, f, ctx, finite);
      case Embedding::try_to: return try_clause(p, f, ctx, finite);
      default: break;
    }

    SyntaxNode v = core_clause(p, f, ctx, finite, /*include_subject=*/true);
    if (p.embedding == Embedding::if_then) {
      SyntaxNode cond;
      cond.lexeme = "if";
      cond.cls = WordClass::functional;
      cond.rel = Relation::adjunct;
      cond.slot = Slot::clause_initial;
      cond.children.push_back(clause(p.condition.front(), ctx, /*finite=*/true));
      v.children.insert(v.children.begin(), std::move(cond));
    }
    return v;
  }

  // "X is able to <verb> ..." — copula, adjective "able", infinitival
  // complement under the adjective. The subject, manner, negation and
  // adjuncts of the proposition lift to the copular clause.
  SyntaxNode able_clause(const Proposition& p, const Frame& f, Ctx ctx, bool finite) const {
    SyntaxNode be;
    be.lexeme = "be";
    be.cls = WordClass::verb;
    if (finite) be.tense = finite_tense(p, ctx);
    be.negated = p.negated;

    attach_subject(be, p, f);
    attach_manner(be, p);

    SyntaxNode able;
    able.lexeme = "able";
    able.cls = WordClass::adjective;
    able.rel = Relation::attribute;
    able.children.push_back(core_clause(p, f, ctx, /*finite=*/false, /*include_subject=*/false,
                                        Relation::object));
    be.children.push_back(std::move(able));

    for (auto& a : collect_adjuncts(p, ctx)) be.children.push_back(std::move(a));
    return be;
  }

  // "X tries to <verb> ..." — matrix "try" with infinitival complement.
  SyntaxNode try_clause(const Proposition& p, const Frame& f, Ctx ctx, bool finite) const {
    SyntaxNode tryv;
    tryv.lexeme = "try";
    tryv.cls = WordClass::verb;
    if (finite) tryv.tense = finite_tense(p, ctx);
    tryv.negated = p.negated;

    attach_subject(tryv, p, f);
    attach_manner(tryv, p);
    tryv.children.push_back(core_clause(p, f, ctx, /*finite=*/false, /*include_subject=*/false,
                                        Relation::object));
    for (auto& a : collect_adjuncts(p, ctx)) tryv.children.push_back(std::move(a));
    return tryv;
  }

  // The plain verb-rooted clause: subject, manner adverb, indirect
  // object, object/complement, attribute, adjuncts — in that order, so
  // tree order mirrors English linearization.
  SyntaxNode core_clause(const Proposition& p, const Frame& f, Ctx ctx, bool finite,
                         bool include_subject,
                         std::optional<Relation> as_rel = std::nullopt) const {
    SyntaxNode v;
    v.lexeme = f.lexeme;
    v.cls = WordClass::verb;
    v.rel = as_rel;
    if (finite) v.tense = finite_tense(p, ctx);
    v.negated = p.negated;

    if (include_subject) attach_subject(v, p, f);
    if (include_subject) attach_manner(v, p);

    for (size_t i = 0; i < p.args.size() && i < f.roles.size(); ++i) {
      const std::string& role = f.roles[i];
      const Arg& a = p.args[i];
      if (role == "agent" || a.kind == Arg::Kind::omitted) continue;
      if (role == "recipient") {
        if (a.kind != Arg::Kind::noun)
          throw Error("translate", "recipient must be a noun phrase: " + p.pred);
        v.children.push_back(noun_phrase(a.noun, Relation::indirect_object));
      } else if (role == "theme") {
        if (a.kind == Arg::Kind::noun) {
          v.children.push_back(noun_phrase(a.noun, Relation::object));
        } else if (a.kind == Arg::Kind::prop) {
          v.children.push_back(complement_clause(a.prop.front(), f, ctx));
        } else {
          throw Error("translate", "theme has no syntactic mapping in frame: " + p.pred);
        }
      } else if (role == "attribute") {
        if (a.kind == Arg::Kind::adjective) {
          SyntaxNode adj;
          adj.lexeme = a.adjective;
          adj.cls = WordClass::adjective;
          adj.rel = Relation::attribute;
          v.children.push_back(std::move(adj));
        } else if (a.kind == Arg::Kind::noun) {
          v.children.push_back(noun_phrase(a.noun, Relation::attribute));
        } else {
          throw Error("translate", "attribute has no syntactic mapping in frame: " + p.pred);
        }
      } else {
        throw Error("translate", "role has no syntactic mapping: " + role + " in " + p.pred);
      }
    }
    if (include_subject)
      for (auto& a : collect_adjuncts(p, ctx)) v.children.push_back(std::move(a));
    return v;
  }

  SyntaxNode complement_clause(const Proposition& inner, const Frame& host, Ctx ctx) const {
    // Sentential-complement hosts take a finite clause; nominal hosts
    // still accept one (validation flags the mismatch upstream).
    (void)host;
    SyntaxNode c = clause(inner, ctx, /*finite=*/true);
    c.rel = Relation::object;
    return c;
  }

  void attach_subject(SyntaxNode& v, const Proposition& p, const Frame& f) const {
    if (f.roles.empty() || f.roles.front() != "agent") return;
    if (p.args.empty() || p.args.front().kind == Arg::Kind::omitted) return;
    const Arg& a = p.args.front();
    if (a.kind != Arg::Kind::noun)
      throw Error("translate", "agent must be a noun phrase: " + p.pred);
    v.children.push_back(noun_phrase(a.noun, Relation::subject));
  }

  void attach_manner(SyntaxNode& v, const Proposition& p) const {
    if (p.manner.empty()) return;
    SyntaxNode adv;
    adv.lexeme = p.manner;
    adv.cls = WordClass::adverb;
    adv.rel = Relation::adjunct;
    adv.slot = Slot::pre_verb;
    v.children.push_back(std::move(adv));
  }

  std::vector<SyntaxNode> collect_adjuncts(const Proposition& p, Ctx ctx) const {
    std::vector<SyntaxNode> out;
    for (const auto& a : p.adjuncts) {
      SyntaxNode fn;
      fn.lexeme = a.marker;
      fn.cls = WordClass::functional;
      fn.rel = Relation::adjunct;
      if (a.value.kind == Arg::Kind::noun) {
        fn.children.push_back(noun_phrase(a.value.noun, Relation::object));
      } else if (a.value.kind == Arg::Kind::prop) {
        const Proposition& inner = a.value.prop.front();
        if (a.marker == "because") {
          fn.children.push_back(clause(inner, ctx, /*finite=*/true));
        } else if (a.marker == "to" || a.marker == "in_order_to") {
          fn.children.push_back(clause(inner, ctx, /*finite=*/false));
        } else {
          throw Error("translate", "adjunct marker does not take a clause: " + a.marker);
        }
      } else {
        throw Error("translate", "adjunct has no syntactic mapping: " + a.marker);
      }
      out.push_back(std::move(fn));
    }
    return out;
  }

  SyntaxNode noun_phrase(const NounRef& n, Relation rel) const {
    const Entity& e = g_.entity(n.entity);
    SyntaxNode node;
    node.lexeme = e.lexeme;
    node.cls = WordClass::noun;
    node.rel = rel;
    node.entity = e.id;
    node.gender = e.gender;
    node.number = e.number;
    node.pronominal = n.pronoun;
    switch (n.det) {
      case Determiner::entity_default: node.article = default_article(e); break;
      case Determiner::def: node.article = Article::def; break;
      case Determiner::indef: node.article = Article::indef; break;
      case Determiner::some: node.article = Article::some; break;
      case Determiner::every: node.article = Article::every; break;
      case Determiner::bare: node.article = Article::bare; break;
    }
    for (const auto& adj : n.adjectives) {
      SyntaxNode a;
      a.lexeme = adj;
      a.cls = WordClass::adjective;
      a.rel = Relation::attribute;
      node.children.push_back(std::move(a));
    }
    if (!n.possessor.empty())
      node.children.push_back(noun_phrase(n.possessor.front(), Relation::attribute));
    return node;
  }

  void bind_persons(SyntaxNode& tree, const std::string& speaker,
                    const std::string& addressee) const {
    walk(tree, [&](SyntaxNode& n) {
      if (n.entity.empty()) return;
      if (n.entity == speaker) {
        n.person = 1;
      } else if ((!addressee.empty() && n.entity == addressee) ||
                 g_.entity(n.entity).kind == EntityKind::interlocutor) {
        n.person = 2;
      }
    });
  }

  void guard_narration(const SyntaxNode& tree) const {
    walk(tree, [&](const SyntaxNode& n) {
      if (!n.entity.empty() && g_.entity(n.entity).kind == EntityKind::interlocutor)
        throw Error("translate", "interlocutor referenced outside direct address: " + n.entity);
    });
  }

  const StoryGraph& g_;
  const Lexicon& lex_;
};

}  // namespace fabler
