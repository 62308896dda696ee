#pragma once

// Surface realization: linearizes utterance plans into English.
//
// Scope is deliberately narrow — the constructions the story corpora
// need: copula, transitives, sentential complements, "be able to",
// future "will", conditionals, purpose clauses, negation, possessive
// chains in either genitive style, personal pronouns, and quoting.

#include <cctype>
#include <string>
#include <vector>

#include "fabler/lexicon.hpp"
#include "fabler/syntax.hpp"
#include "fabler/util.hpp"

namespace fabler {

struct RealizationOptions {
  enum class Genitive { of_genitive, s_genitive };
  enum class Style { plain, annotated };  // annotated wraps quotes in [q speaker=...]...[/q]
  Genitive genitive = Genitive::of_genitive;
  Style style = Style::plain;
};

class Realizer {
 public:
  Realizer(const Lexicon& lexicon, RealizationOptions opts = {})
      : lex_(lexicon), opts_(opts) {}

  std::string realize(const UtterancePlan& plan) const {
    if (!plan.direct()) {
      std::string tag = tag_text(plan.tree);
      std::string body = str::join(clause_tokens(plan.tree, true), " ");
      return capitalize(body) + terminal(tag, plan.exclaim);
    }
    if (plan.matrix.empty()) throw Error("realize", "direct plan without attribution clause");
    std::string matrix = str::join(clause_tokens(plan.matrix.front(), true), " ");
    std::string tag = tag_text(plan.tree);
    std::string quote =
        str::join(clause_tokens(plan.tree, true), " ") + terminal(tag, plan.exclaim);
    std::string line = capitalize(matrix) + " ";
    if (opts_.style == RealizationOptions::Style::annotated)
      line += "[q speaker=" + plan.speaker + "]\"" + quote + "\"[/q]";
    else
      line += "\"" + quote + "\"";
    return line;
  }

  // Noun-phrase sub-realization, exposed for tests and tooling.
  std::string render_np(const SyntaxNode& n, PronCase c = PronCase::nominative) const {
    return str::join(np_tokens(n, c), " ");
  }

 private:
  // --- assembly helpers ----------------------------------------------

  static std::string capitalize(std::string s) {
    if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
    return s;
  }

  static std::string terminal(const std::string& tag, bool exclaim) {
    if (!tag.empty()) return ", " + tag + "?";
    return exclaim ? "!" : ".";
  }

  static std::string tag_text(const SyntaxNode& clause) {
    for (const auto& c : clause.children)
      if (c.marker == MarkerKind::tag_question) return c.lexeme;
    return "";
  }

  static std::string stutter_first_word(const std::string& phrase) {
    size_t sp = phrase.find(' ');
    std::string head = sp == std::string::npos ? phrase : phrase.substr(0, sp);
    std::string rest = sp == std::string::npos ? "" : phrase.substr(sp);
    if (head.size() < 3) return phrase;
    return head.substr(0, 2) + "-" + head + rest;
  }

  static bool vowel_initial(const std::string& w) {
    if (w.empty()) return false;
    char c = static_cast<char>(std::tolower(static_cast<unsigned char>(w[0])));
    return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
  }

  NegStyle neg_style(const std::string& lexeme) const {
    const Frame* f = lex_.find_frame(lexeme);
    return f ? f->neg : NegStyle::do_not;
  }

  // --- clause ---------------------------------------------------------

  std::vector<std::string> clause_tokens(const SyntaxNode& v, bool include_subject) const {
    std::vector<std::string> initial, preverb, core, final_toks;
    const SyntaxNode* subj = nullptr;
    for (const auto& c : v.children) {
      if (c.slot == Slot::clause_initial) {
        append(initial, initial_tokens(c));
      } else if (c.slot == Slot::pre_verb) {
        preverb.push_back(c.lexeme);
      } else if (c.slot == Slot::clause_final) {
        if (c.marker == MarkerKind::in_group) final_toks.push_back(c.lexeme);
        // tag questions are folded into the terminal punctuation
      } else if (c.rel == Relation::subject && !c.is_marker()) {
        subj = &c;
      } else {
        append(core, child_tokens(c));
      }
    }
    std::vector<std::string> out;
    append(out, initial);
    if (subj && include_subject) append(out, np_tokens(*subj, PronCase::nominative));
    append(out, preverb);
    append(out, verb_complex(v, subj));
    append(out, core);
    append(out, final_toks);
    return out;
  }

  std::vector<std::string> initial_tokens(const SyntaxNode& c) const {
    if (c.is_marker()) {
      std::string item = c.stutter ? stutter_first_word(c.lexeme) : c.lexeme;
      if (c.marker == MarkerKind::filled_pause) item += ",";
      return {item};
    }
    if (c.cls == WordClass::functional && !c.children.empty()) {
      std::vector<std::string> out{c.lexeme};  // "if"
      append(out, clause_tokens(c.children.front(), true));
      return out;
    }
    return {c.lexeme};
  }

  std::vector<std::string> child_tokens(const SyntaxNode& c) const {
    if (c.cls == WordClass::noun) {
      PronCase pc = c.rel == Relation::subject ? PronCase::nominative : PronCase::objective;
      return np_tokens(c, pc);
    }
    if (c.cls == WordClass::adjective) return adjective_tokens(c);
    if (c.cls == WordClass::verb) {
      if (c.is_finite()) return clause_tokens(c, true);  // sentential complement
      std::vector<std::string> out{"to"};
      append(out, clause_tokens(c, true));  // infinitives carry no subject child
      return out;
    }
    if (c.cls == WordClass::functional) return adjunct_tokens(c);
    return {c.lexeme};  // bare adverb in an unexpected slot
  }

  std::vector<std::string> adjunct_tokens(const SyntaxNode& fn) const {
    if (fn.children.empty()) return {fn.lexeme};
    const SyntaxNode& child = fn.children.front();
    if (child.cls == WordClass::noun) {
      std::vector<std::string> out{fn.lexeme};
      append(out, np_tokens(child, PronCase::objective));
      return out;
    }
    if (fn.lexeme == "because") {
      std::vector<std::string> out{"because"};
      append(out, clause_tokens(child, true));
      return out;
    }
    if (fn.lexeme == "in_order_to") {
      std::vector<std::string> out{"in", "order", "for"};
      const SyntaxNode* subj = child.child_with_rel(Relation::subject);
      if (!subj) throw Error("realize", "purpose clause needs a subject");
      append(out, np_tokens(*subj, PronCase::objective));
      out.push_back("to");
      append(out, clause_tokens(child, false));
      return out;
    }
    if (fn.lexeme == "to") {
      std::vector<std::string> out{"to"};
      append(out, clause_tokens(child, false));
      return out;
    }
    throw Error("realize", "no linearization for adjunct marker: " + fn.lexeme);
  }

  // --- verb morphology -------------------------------------------------

  std::vector<std::string> verb_complex(const SyntaxNode& v, const SyntaxNode* subj) const {
    std::string base = v.surface_lexeme();
    if (!v.tense) {
      // infinitival: bare base form (the governing construction adds "to")
      if (v.negated) return {"not", base};
      return {base};
    }
    int person = subj ? subj->person : 3;
    Number number = subj ? subj->number : Number::sg;
    bool third_sg = person == 3 && number == Number::sg;
    Tense t = *v.tense;

    if (base == "be") {
      std::string form = be_form(t, person, number);
      if (t == Tense::future) return v.negated ? std::vector<std::string>{"will", "not", "be"}
                                               : std::vector<std::string>{"will", "be"};
      return v.negated ? std::vector<std::string>{form, "not"} : std::vector<std::string>{form};
    }
    if (v.negated) {
      if (neg_style(base) == NegStyle::fail_to) {
        switch (t) {
          case Tense::past: return {lex_.past("fail"), "to", base};
          case Tense::present: return {third_sg ? lex_.third_sg("fail") : "fail", "to", base};
          case Tense::future: return {"will", "fail", "to", base};
        }
      }
      switch (t) {
        case Tense::past: return {"did", "not", base};
        case Tense::present: return {third_sg ? "does" : "do", "not", base};
        case Tense::future: return {"will", "not", base};
      }
    }
    switch (t) {
      case Tense::past: return {lex_.past(base)};
      case Tense::present: return {third_sg ? lex_.third_sg(base) : base};
      case Tense::future: return {"will", base};
    }
    return {base};
  }

  static std::string be_form(Tense t, int person, Number number) {
    bool sg = number == Number::sg;
    switch (t) {
      case Tense::past:
        if (person == 2) return "were";
        return sg ? "was" : "were";
      case Tense::present:
        if (person == 1 && sg) return "am";
        if (person == 2) return "are";
        return sg ? "is" : "are";
      case Tense::future: return "be";
    }
    return "be";
  }

  // --- noun phrases ----------------------------------------------------

  std::vector<std::string> np_tokens(const SyntaxNode& n, PronCase c) const {
    if (n.pronominal || n.person != 3)
      return {pronoun_form(n.person, n.gender, n.number, c)};

    const SyntaxNode* possessor = nullptr;
    std::vector<const SyntaxNode*> adjectives;
    for (const auto& ch : n.children) {
      if (ch.is_marker()) continue;  // pre-adjective markers live under the adjective
      if (ch.cls == WordClass::noun && ch.rel == Relation::attribute && !possessor)
        possessor = &ch;
      else if (ch.cls == WordClass::adjective)
        adjectives.push_back(&ch);
    }

    std::vector<std::string> out;
    bool possessive_determiner =
        possessor && (possessor->pronominal || possessor->person != 3);
    bool s_style = opts_.genitive == RealizationOptions::Genitive::s_genitive;
    if (possessive_determiner) {
      out.push_back(pronoun_form(possessor->person, possessor->gender, possessor->number,
                                 PronCase::possessive));
    } else if (possessor && s_style) {
      append(out, possessive_chain(*possessor));
    } else {
      append(out, article_tokens(n, adjectives));
    }
    for (const auto* adj : adjectives) append(out, adjective_tokens(*adj));
    out.push_back(head_word(n));
    if (possessor && !possessive_determiner && !s_style) {
      out.push_back("of");
      append(out, np_tokens(*possessor, PronCase::objective));
    }
    return out;
  }

  // "the tree's", "your feather's": possessor rendered with its own
  // determiner (or its possessor's), head word carrying the clitic.
  std::vector<std::string> possessive_chain(const SyntaxNode& p) const {
    if (p.pronominal || p.person != 3)
      return {pronoun_form(p.person, p.gender, p.number, PronCase::possessive)};
    std::vector<std::string> out = np_tokens(p, PronCase::objective);
    if (!out.empty()) out.back() += "'s";
    return out;
  }

  std::vector<std::string> article_tokens(const SyntaxNode& n,
                                          const std::vector<const SyntaxNode*>& adjs) const {
    if (!n.article) return {};
    switch (*n.article) {
      case Article::def: return {"the"};
      case Article::indef: {
        std::string next = adjs.empty() ? head_word(n) : first_adj_word(*adjs.front());
        return {vowel_initial(next) ? "an" : "a"};
      }
      case Article::some: return {"some"};
      case Article::every: return {"every"};
      case Article::bare: return {};
    }
    return {};
  }

  std::string first_adj_word(const SyntaxNode& adj) const {
    for (const auto& m : adj.children)
      if (m.is_marker()) return m.lexeme;
    return adj.lexeme;
  }

  std::string head_word(const SyntaxNode& n) const {
    std::string w = n.number == Number::pl ? lex_.plural(n.surface_lexeme())
                                           : n.surface_lexeme();
    return n.stutter ? stutter_first_word(w) : w;
  }

  // Adjective phrase: leading markers, the adjective itself, then any
  // infinitival complement ("able to sing").
  std::vector<std::string> adjective_tokens(const SyntaxNode& adj) const {
    std::vector<std::string> out;
    for (const auto& m : adj.children)
      if (m.is_marker()) out.push_back(m.stutter ? stutter_first_word(m.lexeme) : m.lexeme);
    out.push_back(adj.stutter ? stutter_first_word(adj.lexeme) : adj.lexeme);
    for (const auto& c : adj.children) {
      if (c.is_marker()) continue;
      if (c.cls == WordClass::verb && !c.is_finite()) {
        out.push_back("to");
        append(out, clause_tokens(c, true));
      } else {
        append(out, child_tokens(c));
      }
    }
    return out;
  }

  static void append(std::vector<std::string>& out, std::vector<std::string> more) {
    for (auto& t : more) out.push_back(std::move(t));
  }

  const Lexicon& lex_;
  RealizationOptions opts_;
};

}  // namespace fabler
