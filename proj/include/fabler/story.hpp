#pragma once

// Story graph: the timeline layer of a story as an ordered sequence of
// predicate-argument propositions over declared entities.
//
// A plain-text format ships with the library (see docs/story-format.md).
// Parsing is permissive about semantics: it only enforces syntax and
// reference/declaration integrity. Semantic well-formedness (frame
// existence, role arity, reporting-frame rules, nesting depth) is the
// validator's job, so graphs built or mutated programmatically get the
// same diagnostics as parsed ones.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fabler/lexicon.hpp"
#include "fabler/util.hpp"

namespace fabler {

enum class EntityKind { character, object, interlocutor, narrator };
enum class Gender { feminine, masculine, neuter, unspecified };
enum class Number { sg, pl };
enum class Determiner { entity_default, def, indef, some, every, bare };
enum class Embedding { none, able_to, try_to, future, if_then };

struct Entity {
  std::string id;
  std::string lexeme;
  EntityKind kind = EntityKind::object;
  Gender gender = Gender::unspecified;
  Number number = Number::sg;
  bool definite = true;
  bool proper = false;
  bool operator==(const Entity&) const = default;
};

struct NounRef {
  std::string entity;  // declared entity id
  bool pronoun = false;
  Determiner det = Determiner::entity_default;
  std::vector<std::string> adjectives;
  std::vector<NounRef> possessor;  // empty or one ("of:" modifier)
  bool operator==(const NounRef&) const = default;
};

struct Proposition;

struct Arg {
  enum class Kind { omitted, noun, prop, adjective };
  Kind kind = Kind::omitted;
  NounRef noun;                      // kind == noun
  std::vector<Proposition> prop;     // kind == prop (single element)
  std::string adjective;             // kind == adjective

  static Arg omitted() { return Arg{}; }
  static Arg of_noun(NounRef n) {
    Arg a;
    a.kind = Kind::noun;
    a.noun = std::move(n);
    return a;
  }
  static Arg of_prop(Proposition p);
  static Arg of_adjective(std::string w) {
    Arg a;
    a.kind = Kind::adjective;
    a.adjective = std::move(w);
    return a;
  }
  bool operator==(const Arg&) const = default;
};

struct Adjunct {
  std::string marker;  // on, in, under, toward, from, with, to, because, in_order_to
  Arg value;           // noun or prop
  bool operator==(const Adjunct&) const = default;
};

struct Proposition {
  std::string pred;  // frame id
  std::vector<Arg> args;
  Embedding embedding = Embedding::none;
  std::vector<Proposition> condition;  // if_then: single condition proposition
  bool directly = false;
  std::string addressee;  // entity spoken to in a `directly` act ("" if none)
  bool negated = false;
  std::string manner;  // adverb lexeme, "" if absent
  std::vector<Adjunct> adjuncts;
  bool operator==(const Proposition&) const = default;
};

inline Arg Arg::of_prop(Proposition p) {
  Arg a;
  a.kind = Kind::prop;
  a.prop.push_back(std::move(p));
  return a;
}

struct Timespan {
  int index = 0;
  std::vector<Proposition> actions;
  bool operator==(const Timespan&) const = default;
};

struct StoryGraph {
  std::string title;
  std::vector<Entity> entities;  // declaration order
  std::vector<Timespan> timeline;

  const Entity* find_entity(const std::string& id) const {
    for (const auto& e : entities)
      if (e.id == id) return &e;
    return nullptr;
  }
  const Entity& entity(const std::string& id) const {
    if (const Entity* e = find_entity(id)) return *e;
    throw Error("story", "unknown entity: " + id);
  }
  bool operator==(const StoryGraph&) const = default;
};

// ---------------------------------------------------------------------
// Parsing

namespace detail {

struct Token {
  enum class Kind { ident, string, integer, punct, eof };
  Kind kind = Kind::eof;
  std::string text;
  int line = 0;
};

class StoryTokenizer {
 public:
  explicit StoryTokenizer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return cur_; }
  Token take() {
    Token t = cur_;
    advance();
    return t;
  }

 private:
  void advance() {
    skip_ws();
    cur_.line = line_;
    if (pos_ >= src_.size()) {
      cur_ = Token{Token::Kind::eof, "", line_};
      return;
    }
    char c = src_[pos_];
    if (c == '"') {
      size_t end = src_.find('"', pos_ + 1);
      if (end == std::string_view::npos)
        throw Error("story", "line " + std::to_string(line_) + ": unterminated string");
      cur_ = Token{Token::Kind::string, std::string(src_.substr(pos_ + 1, end - pos_ - 1)), line_};
      pos_ = end + 1;
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      cur_ = Token{Token::Kind::integer, std::string(src_.substr(start, pos_ - start)), line_};
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        ++pos_;
      cur_ = Token{Token::Kind::ident, std::string(src_.substr(start, pos_ - start)), line_};
      return;
    }
    if (std::string("()[]:,=").find(c) != std::string::npos) {
      cur_ = Token{Token::Kind::punct, std::string(1, c), line_};
      ++pos_;
      return;
    }
    throw Error("story", "line " + std::to_string(line_) + ": unexpected character '" +
                             std::string(1, c) + "'");
  }

  void skip_ws() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '\n') {
        ++line_;
        ++pos_;
      } else if (str::is_space(c)) {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  size_t pos_ = 0;
  int line_ = 1;
  Token cur_;
};

class StoryParser {
 public:
  explicit StoryParser(std::string_view src) : tok_(src) {}

  StoryGraph parse() {
    StoryGraph g;
    expect_ident("story");
    g.title = expect(Token::Kind::string).text;
    while (peek_is_ident("entity")) parse_entity(g);
    while (peek_is_ident("timespan")) parse_timespan(g);
    if (tok_.peek().kind != Token::Kind::eof)
      throw err("expected 'timespan' or end of story, got '" + tok_.peek().text + "'");
    return g;
  }

 private:
  using Kind = Token::Kind;

  void parse_entity(StoryGraph& g) {
    expect_ident("entity");
    Entity e;
    e.id = expect(Kind::ident).text;
    if (g.find_entity(e.id)) throw err("duplicate entity id: " + e.id);
    expect_punct(":");
    e.lexeme = e.id;
    bool more = true;
    while (more && tok_.peek().kind == Kind::ident) {
      const std::string& word = tok_.peek().text;
      if (word == "lexeme" || word == "kind" || word == "gender" || word == "number") {
        std::string key = tok_.take().text;
        expect_punct("=");
        std::string value = expect(Kind::ident).text;
        if (key == "lexeme")
          e.lexeme = value;
        else if (key == "kind")
          e.kind = parse_kind(value);
        else if (key == "gender")
          e.gender = parse_gender(value);
        else
          e.number = parse_number(value);
      } else if (word == "def") {
        tok_.take();
        e.definite = true;
      } else if (word == "indef") {
        tok_.take();
        e.definite = false;
      } else if (word == "proper") {
        tok_.take();
        e.proper = true;
      } else {
        more = false;  // start of next declaration or timespan
      }
    }
    g.entities.push_back(std::move(e));
  }

  void parse_timespan(StoryGraph& g) {
    expect_ident("timespan");
    Timespan ts;
    ts.index = std::stoi(expect(Kind::integer).text);
    while (tok_.peek().kind == Kind::ident && !peek_is_ident("timespan") &&
           !peek_is_ident("entity"))
      ts.actions.push_back(parse_prop_with_adjuncts(g));
    g.timeline.push_back(std::move(ts));
  }

  Proposition parse_prop_with_adjuncts(const StoryGraph& g) {
    Proposition p = parse_prop(g);
    while (tok_.peek().kind == Kind::punct && tok_.peek().text == "[")
      p.adjuncts.push_back(parse_adjunct(g));
    return p;
  }

  Proposition parse_prop(const StoryGraph& g) {
    std::string head = expect(Kind::ident).text;
    if (head == "able_to" || head == "try_to" || head == "future") {
      expect_punct("(");
      Proposition inner = parse_prop_with_adjuncts(g);
      expect_punct(")");
      if (inner.embedding != Embedding::none)
        throw err("proposition already carries an embedding");
      inner.embedding = head == "able_to"  ? Embedding::able_to
                        : head == "try_to" ? Embedding::try_to
                                           : Embedding::future;
      return inner;
    }
    if (head == "if_then") {
      expect_punct("(");
      Proposition cond = parse_prop_with_adjuncts(g);
      expect_punct(",");
      Proposition main = parse_prop_with_adjuncts(g);
      expect_punct(")");
      if (main.embedding != Embedding::none)
        throw err("proposition already carries an embedding");
      main.embedding = Embedding::if_then;
      main.condition.push_back(std::move(cond));
      return main;
    }
    Proposition p;
    p.pred = head;
    expect_punct("(");
    if (!(tok_.peek().kind == Kind::punct && tok_.peek().text == ")")) {
      parse_item(g, p);
      while (tok_.peek().kind == Kind::punct && tok_.peek().text == ",") {
        tok_.take();
        parse_item(g, p);
      }
    }
    expect_punct(")");
    return p;
  }

  void parse_item(const StoryGraph& g, Proposition& p) {
    const Token& t = tok_.peek();
    if (t.kind == Kind::ident && t.text == "directly") {
      tok_.take();
      p.directly = true;
      return;
    }
    if (t.kind == Kind::ident && t.text == "negated") {
      tok_.take();
      p.negated = true;
      return;
    }
    if (t.kind == Kind::ident && t.text == "manner") {
      tok_.take();
      expect_punct(":");
      p.manner = expect(Kind::ident).text;
      return;
    }
    if (t.kind == Kind::ident && t.text == "addressee") {
      tok_.take();
      expect_punct(":");
      std::string id = expect(Kind::ident).text;
      if (!g.find_entity(id)) throw err("addressee refers to undeclared entity: " + id);
      p.addressee = id;
      return;
    }
    p.args.push_back(parse_arg(g));
  }

  Arg parse_arg(const StoryGraph& g) {
    const Token& t = tok_.peek();
    if (t.kind == Kind::punct && t.text == "(") throw err("expected argument");
    if (t.kind != Kind::ident) throw err("expected argument, got '" + t.text + "'");
    if (t.text == "_") {
      tok_.take();
      return Arg::omitted();
    }
    if (t.text == "pron") {
      tok_.take();
      expect_punct("(");
      std::string id = expect(Kind::ident).text;
      expect_punct(")");
      if (!g.find_entity(id)) throw err("pron refers to undeclared entity: " + id);
      NounRef n;
      n.entity = id;
      n.pronoun = true;
      return Arg::of_noun(std::move(n));
    }
    if (t.text == "able_to" || t.text == "try_to" || t.text == "future" || t.text == "if_then")
      return Arg::of_prop(parse_prop_with_adjuncts(g));

    std::string head = tok_.take().text;
    if (tok_.peek().kind == Kind::punct && tok_.peek().text == "(") {
      if (next_is_noun_modifier()) return Arg::of_noun(parse_noun_mods(g, head));
      // predicate call: rewind is not possible, so parse the call here
      Proposition p;
      p.pred = head;
      expect_punct("(");
      if (!(tok_.peek().kind == Kind::punct && tok_.peek().text == ")")) {
        parse_item(g, p);
        while (tok_.peek().kind == Kind::punct && tok_.peek().text == ",") {
          tok_.take();
          parse_item(g, p);
        }
      }
      expect_punct(")");
      while (tok_.peek().kind == Kind::punct && tok_.peek().text == "[")
        p.adjuncts.push_back(parse_adjunct(g));
      return Arg::of_prop(std::move(p));
    }
    if (g.find_entity(head)) {
      NounRef n;
      n.entity = head;
      return Arg::of_noun(std::move(n));
    }
    return Arg::of_adjective(head);  // bare word with no declaration
  }

  // distinguishes "way(det: some)" from "get(_, cheese)" after the head
  // identifier: noun modifiers always start with of/adj/det followed by ':'
  bool next_is_noun_modifier() {
    StoryTokenizer probe = tok_;  // tokenizer is cheaply copyable
    probe.take();                 // '('
    const Token& first = probe.peek();
    if (first.kind != Kind::ident) return false;
    if (first.text != "of" && first.text != "adj" && first.text != "det") return false;
    probe.take();
    return probe.peek().kind == Kind::punct && probe.peek().text == ":";
  }

  NounRef parse_noun_mods(const StoryGraph& g, const std::string& head) {
    if (!g.find_entity(head)) throw err("noun phrase head is not a declared entity: " + head);
    NounRef n;
    n.entity = head;
    expect_punct("(");
    bool first = true;
    while (!(tok_.peek().kind == Kind::punct && tok_.peek().text == ")")) {
      if (!first) expect_punct(",");
      first = false;
      std::string key = expect(Kind::ident).text;
      expect_punct(":");
      if (key == "of") {
        n.possessor.clear();
        n.possessor.push_back(parse_noun(g));
      } else if (key == "adj") {
        n.adjectives.push_back(expect(Kind::ident).text);
      } else if (key == "det") {
        n.det = parse_det(expect(Kind::ident).text);
      } else {
        throw err("unknown noun modifier: " + key);
      }
    }
    expect_punct(")");
    return n;
  }

  NounRef parse_noun(const StoryGraph& g) {
    const Token& t = tok_.peek();
    if (t.kind == Kind::ident && t.text == "pron") {
      tok_.take();
      expect_punct("(");
      std::string id = expect(Kind::ident).text;
      expect_punct(")");
      if (!g.find_entity(id)) throw err("pron refers to undeclared entity: " + id);
      NounRef n;
      n.entity = id;
      n.pronoun = true;
      return n;
    }
    std::string head = expect(Kind::ident).text;
    if (tok_.peek().kind == Kind::punct && tok_.peek().text == "(")
      return parse_noun_mods(g, head);
    if (!g.find_entity(head)) throw err("noun phrase head is not a declared entity: " + head);
    NounRef n;
    n.entity = head;
    return n;
  }

  Adjunct parse_adjunct(const StoryGraph& g) {
    expect_punct("[");
    Adjunct a;
    a.marker = expect(Kind::ident).text;
    expect_punct(":");
    // adjunct value: a noun phrase or a proposition
    const Token& t = tok_.peek();
    if (t.kind != Kind::ident) throw err("expected adjunct value");
    if (t.text == "pron") {
      a.value = Arg::of_noun(parse_noun(g));
    } else if (t.text == "able_to" || t.text == "try_to" || t.text == "future" ||
               t.text == "if_then") {
      a.value = Arg::of_prop(parse_prop_with_adjuncts(g));
    } else {
      std::string head = tok_.take().text;
      if (tok_.peek().kind == Kind::punct && tok_.peek().text == "(") {
        if (next_is_noun_modifier()) {
          a.value = Arg::of_noun(parse_noun_mods(g, head));
        } else {
          Proposition p;
          p.pred = head;
          expect_punct("(");
          if (!(tok_.peek().kind == Kind::punct && tok_.peek().text == ")")) {
            parse_item(g, p);
            while (tok_.peek().kind == Kind::punct && tok_.peek().text == ",") {
              tok_.take();
              parse_item(g, p);
            }
          }
          expect_punct(")");
          while (tok_.peek().kind == Kind::punct && tok_.peek().text == "[")
            p.adjuncts.push_back(parse_adjunct(g));
          a.value = Arg::of_prop(std::move(p));
        }
      } else {
        if (!g.find_entity(head))
          throw err("noun phrase head is not a declared entity: " + head);
        NounRef n;
        n.entity = head;
        a.value = Arg::of_noun(std::move(n));
      }
    }
    expect_punct("]");
    return a;
  }

  static EntityKind parse_kind(const std::string& s) {
    if (s == "character") return EntityKind::character;
    if (s == "object") return EntityKind::object;
    if (s == "interlocutor") return EntityKind::interlocutor;
    if (s == "narrator") return EntityKind::narrator;
    throw Error("story", "bad entity kind: " + s);
  }
  static Gender parse_gender(const std::string& s) {
    if (s == "feminine") return Gender::feminine;
    if (s == "masculine") return Gender::masculine;
    if (s == "neuter") return Gender::neuter;
    if (s == "unspecified") return Gender::unspecified;
    throw Error("story", "bad gender: " + s);
  }
  static Number parse_number(const std::string& s) {
    if (s == "sg") return Number::sg;
    if (s == "pl") return Number::pl;
    throw Error("story", "bad number: " + s);
  }
  static Determiner parse_det(const std::string& s) {
    if (s == "def") return Determiner::def;
    if (s == "indef") return Determiner::indef;
    if (s == "some") return Determiner::some;
    if (s == "every") return Determiner::every;
    if (s == "bare") return Determiner::bare;
    throw Error("story", "bad determiner: " + s);
  }

  bool peek_is_ident(std::string_view word) const {
    return tok_.peek().kind == Kind::ident && tok_.peek().text == word;
  }
  void expect_ident(std::string_view word) {
    Token t = tok_.take();
    if (t.kind != Kind::ident || t.text != word)
      throw Error("story",
                  "line " + std::to_string(t.line) + ": expected '" + std::string(word) + "'");
  }
  void expect_punct(std::string_view p) {
    Token t = tok_.take();
    if (t.kind != Kind::punct || t.text != p)
      throw Error("story", "line " + std::to_string(t.line) + ": expected '" + std::string(p) +
                               "', got '" + t.text + "'");
  }
  Token expect(Kind k) {
    Token t = tok_.take();
    if (t.kind != k) throw err("unexpected token '" + t.text + "'");
    return t;
  }
  Error err(const std::string& msg) const {
    return Error("story", "line " + std::to_string(tok_.peek().line) + ": " + msg);
  }

  StoryTokenizer tok_;
};

}  // namespace detail

inline StoryGraph parse_story(std::string_view text) {
  return detail::StoryParser(text).parse();
}

// ---------------------------------------------------------------------
// Serialization (canonical form; parse(serialize(g)) == g)

namespace detail {

inline std::string det_word(Determiner d) {
  switch (d) {
    case Determiner::def: return "def";
    case Determiner::indef: return "indef";
    case Determiner::some: return "some";
    case Determiner::every: return "every";
    case Determiner::bare: return "bare";
    default: return "";
  }
}

inline std::string serialize_noun(const NounRef& n) {
  if (n.pronoun) return "pron(" + n.entity + ")";
  std::vector<std::string> mods;
  if (n.det != Determiner::entity_default) mods.push_back("det: " + det_word(n.det));
  for (const auto& a : n.adjectives) mods.push_back("adj: " + a);
  if (!n.possessor.empty()) mods.push_back("of: " + serialize_noun(n.possessor.front()));
  if (mods.empty()) return n.entity;
  return n.entity + "(" + str::join(mods, ", ") + ")";
}

inline std::string serialize_prop(const Proposition& p);

inline std::string serialize_arg(const Arg& a) {
  switch (a.kind) {
    case Arg::Kind::omitted: return "_";
    case Arg::Kind::noun: return serialize_noun(a.noun);
    case Arg::Kind::prop: return serialize_prop(a.prop.front());
    case Arg::Kind::adjective: return a.adjective;
  }
  return "_";
}

inline std::string serialize_prop(const Proposition& p) {
  std::vector<std::string> items;
  if (p.directly) items.push_back("directly");
  if (!p.addressee.empty()) items.push_back("addressee: " + p.addressee);
  if (p.negated) items.push_back("negated");
  if (!p.manner.empty()) items.push_back("manner: " + p.manner);
  for (const auto& a : p.args) items.push_back(serialize_arg(a));
  std::string core = p.pred + "(" + str::join(items, ", ") + ")";
  for (const auto& adj : p.adjuncts)
    core += " [" + adj.marker + ": " + serialize_arg(adj.value) + "]";
  switch (p.embedding) {
    case Embedding::none: break;
    case Embedding::able_to: core = "able_to(" + core + ")"; break;
    case Embedding::try_to: core = "try_to(" + core + ")"; break;
    case Embedding::future: core = "future(" + core + ")"; break;
    case Embedding::if_then:
      core = "if_then(" + serialize_prop(p.condition.front()) + ", " + core + ")";
      break;
  }
  return core;
}

}  // namespace detail

inline std::string serialize_story(const StoryGraph& g) {
  std::string out = "story \"" + g.title + "\"\n\n";
  for (const auto& e : g.entities) {
    out += "entity " + e.id + " : lexeme=" + e.lexeme;
    out += " kind=";
    switch (e.kind) {
      case EntityKind::character: out += "character"; break;
      case EntityKind::object: out += "object"; break;
      case EntityKind::interlocutor: out += "interlocutor"; break;
      case EntityKind::narrator: out += "narrator"; break;
    }
    if (e.gender != Gender::unspecified) {
      out += " gender=";
      out += e.gender == Gender::feminine    ? "feminine"
             : e.gender == Gender::masculine ? "masculine"
                                             : "neuter";
    }
    if (e.number == Number::pl) out += " number=pl";
    out += e.definite ? " def" : " indef";
    if (e.proper) out += " proper";
    out += "\n";
  }
  for (const auto& ts : g.timeline) {
    out += "\ntimespan " + std::to_string(ts.index) + "\n";
    // serialize_prop wraps the embedding around adjuncts in source order,
    // but an if_then/wrap serialization re-reads identically
    for (const auto& p : ts.actions) out += "  " + detail::serialize_prop(p) + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------
// Validation

struct Violation {
  std::string invariant;
  std::string where;
  std::string detail;
};

namespace detail {

struct Validator {
  const StoryGraph& g;
  const Lexicon& lex;
  std::vector<Violation>& out;

  void flag(std::string inv, std::string where, std::string detail) {
    out.push_back({std::move(inv), std::move(where), std::move(detail)});
  }

  void run() {
    if (g.title.empty()) flag("story has a title", "story", "title is empty");
    std::map<std::string, int> seen;
    int narrators = 0, interlocutors = 0;
    for (const auto& e : g.entities) {
      if (++seen[e.id] == 2) flag("entity ids are unique", "entity " + e.id, "declared twice");
      if (e.kind == EntityKind::narrator) ++narrators;
      if (e.kind == EntityKind::interlocutor) ++interlocutors;
      if (e.lexeme.empty()) flag("entity has a lexeme", "entity " + e.id, "lexeme is empty");
    }
    if (narrators > 1)
      flag("at most one narrator", "story", std::to_string(narrators) + " narrator entities");
    if (interlocutors > 1)
      flag("at most one interlocutor", "story",
           std::to_string(interlocutors) + " interlocutor entities");
    if (g.timeline.empty()) flag("timeline is non-empty", "story", "no timespans");
    int prev = 0;
    bool first = true;
    for (const auto& ts : g.timeline) {
      std::string where = "timespan " + std::to_string(ts.index);
      if (!first && ts.index <= prev)
        flag("timespan indices strictly increase", where,
             "follows timespan " + std::to_string(prev));
      prev = ts.index;
      first = false;
      if (ts.actions.empty()) flag("timespan has at least one action", where, "empty");
      for (size_t i = 0; i < ts.actions.size(); ++i)
        check_prop(ts.actions[i], where + " action " + std::to_string(i + 1), 1, false);
    }
  }

  void check_noun(const NounRef& n, const std::string& where, bool in_quote) {
    const Entity* e = g.find_entity(n.entity);
    if (!e) {
      flag("noun references a declared entity", where, "unknown entity: " + n.entity);
      return;
    }
    if (e->kind == EntityKind::interlocutor && !in_quote)
      flag("interlocutor appears only inside direct address", where, n.entity);
    if (!n.possessor.empty()) check_noun(n.possessor.front(), where, in_quote);
  }

  void check_prop(const Proposition& p, const std::string& where, int depth, bool in_quote) {
    if (depth > 4) {
      flag("proposition nesting depth is at most 4", where, "predicate " + p.pred);
      return;
    }
    const Frame* f = lex.find_frame(p.pred);
    if (!f) {
      flag("predicate has a frame", where, p.pred);
      return;
    }
    if (p.args.size() != f->roles.size())
      flag("argument count matches frame roles", where,
           p.pred + " takes " + std::to_string(f->roles.size()) + " arguments, got " +
               std::to_string(p.args.size()));
    bool quote_below = in_quote || p.directly;
    for (size_t i = 0; i < p.args.size() && i < f->roles.size(); ++i) {
      const Arg& a = p.args[i];
      const std::string& role = f->roles[i];
      std::string aw = where + " " + p.pred + "." + role;
      switch (a.kind) {
        case Arg::Kind::omitted: break;
        case Arg::Kind::noun: check_noun(a.noun, aw, quote_below); break;
        case Arg::Kind::adjective:
          if (role != "attribute")
            flag("adjective argument fills only the attribute role", aw, a.adjective);
          break;
        case Arg::Kind::prop:
          if (role != "theme" && role != "attribute")
            flag("proposition argument fills only the theme role", aw, a.prop.front().pred);
          check_prop(a.prop.front(), aw, depth + 1, quote_below);
          break;
      }
    }
    if (p.directly) {
      if (!f->reporting())
        flag("direct address requires a communication or cognition frame", where, p.pred);
      if (f->roles.size() < 2 || p.args.size() < 2 || p.args[1].kind != Arg::Kind::prop)
        flag("direct address reports a proposition", where, p.pred);
      if (p.args.empty() || p.args[0].kind != Arg::Kind::noun)
        flag("direct address has an entity speaker", where, p.pred);
    }
    if (!p.addressee.empty()) {
      if (!p.directly) flag("addressee requires direct address", where, p.pred);
      if (!g.find_entity(p.addressee))
        flag("addressee references a declared entity", where, p.addressee);
    }
    for (const auto& adj : p.adjuncts) {
      std::string aw = where + " [" + adj.marker + "]";
      if (adj.value.kind == Arg::Kind::noun)
        check_noun(adj.value.noun, aw, quote_below);
      else if (adj.value.kind == Arg::Kind::prop)
        check_prop(adj.value.prop.front(), aw, depth + 1, quote_below);
      else
        flag("adjunct value is a noun phrase or proposition", aw, adj.marker);
    }
    if (!p.condition.empty()) check_prop(p.condition.front(), where + " if", depth + 1, in_quote);
  }
};

}  // namespace detail

inline std::vector<Violation> validate_story(const StoryGraph& g, const Lexicon& lex) {
  std::vector<Violation> out;
  detail::Validator{g, lex, out}.run();
  return out;
}

}  // namespace fabler
