#pragma once

// XML interchange for deep syntactic structures.
//
// One <sentence> element per plan, one <unit> element per tree node,
// children nested under their governor in tree order. Only non-default
// features are written, so emit/parse round-trips to structural
// equality. See docs/dsynts.md for the schema.

#include <map>
#include <string>
#include <vector>

#include "fabler/syntax.hpp"
#include "fabler/util.hpp"

namespace fabler {

namespace detail {

inline std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string xml_unescape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '&') {
      out += s[i];
      continue;
    }
    auto take = [&](std::string_view ent, char ch) {
      if (s.compare(i, ent.size(), ent) == 0) {
        out += ch;
        i += ent.size() - 1;
        return true;
      }
      return false;
    };
    if (!take("&amp;", '&') && !take("&lt;", '<') && !take("&gt;", '>') &&
        !take("&quot;", '"'))
      throw Error("dsynts", "bad entity reference in XML");
  }
  return out;
}

inline const char* cls_name(WordClass c) {
  switch (c) {
    case WordClass::noun: return "noun";
    case WordClass::verb: return "verb";
    case WordClass::adverb: return "adverb";
    case WordClass::adjective: return "adjective";
    case WordClass::functional: return "functional";
  }
  return "";
}

inline const char* rel_name(Relation r) {
  switch (r) {
    case Relation::subject: return "subject";
    case Relation::object: return "object";
    case Relation::indirect_object: return "indirect-object";
    case Relation::attribute: return "attribute";
    case Relation::adjunct: return "adjunct";
  }
  return "";
}

inline const char* tense_name(Tense t) {
  switch (t) {
    case Tense::past: return "past";
    case Tense::present: return "present";
    case Tense::future: return "future";
  }
  return "";
}

inline const char* article_name(Article a) {
  switch (a) {
    case Article::def: return "def";
    case Article::indef: return "indef";
    case Article::some: return "some";
    case Article::every: return "every";
    case Article::bare: return "bare";
  }
  return "";
}

inline const char* gender_name(Gender g) {
  switch (g) {
    case Gender::feminine: return "feminine";
    case Gender::masculine: return "masculine";
    case Gender::neuter: return "neuter";
    case Gender::unspecified: return "unspecified";
  }
  return "";
}

inline const char* marker_name(MarkerKind m) {
  switch (m) {
    case MarkerKind::plain: return "plain";
    case MarkerKind::softener: return "softener";
    case MarkerKind::emphasizer: return "emphasizer";
    case MarkerKind::expletive: return "expletive";
    case MarkerKind::filled_pause: return "filled_pause";
    case MarkerKind::acknowledgment: return "acknowledgment";
    case MarkerKind::in_group: return "in_group";
    case MarkerKind::tag_question: return "tag_question";
  }
  return "";
}

inline const char* slot_name(Slot s) {
  switch (s) {
    case Slot::core: return "core";
    case Slot::clause_initial: return "clause_initial";
    case Slot::pre_verb: return "pre_verb";
    case Slot::clause_final: return "clause_final";
  }
  return "";
}

inline const char* mode_name(Mode m) {
  switch (m) {
    case Mode::narration: return "narration";
    case Mode::direct_speech: return "direct_speech";
    case Mode::direct_thought: return "direct_thought";
  }
  return "";
}

inline void emit_unit(const SyntaxNode& n, std::string& out, int depth) {
  std::string pad(static_cast<size_t>(depth) * 2, ' ');
  out += pad + "<unit class=\"" + cls_name(n.cls) + "\" lexeme=\"" + xml_escape(n.lexeme) + "\"";
  if (n.rel) out += std::string(" rel=\"") + rel_name(*n.rel) + "\"";
  if (n.tense) out += std::string(" tense=\"") + tense_name(*n.tense) + "\"";
  if (n.person != 3) out += " person=\"" + std::to_string(n.person) + "\"";
  if (n.number == Number::pl) out += " number=\"pl\"";
  if (n.article) out += std::string(" article=\"") + article_name(*n.article) + "\"";
  if (n.gender != Gender::unspecified)
    out += std::string(" gender=\"") + gender_name(n.gender) + "\"";
  if (!n.entity.empty()) out += " entity=\"" + xml_escape(n.entity) + "\"";
  if (n.pronominal) out += " pron=\"true\"";
  if (n.negated) out += " neg=\"true\"";
  if (n.marker != MarkerKind::plain)
    out += std::string(" marker=\"") + marker_name(n.marker) + "\"";
  if (n.slot != Slot::core) out += std::string(" slot=\"") + slot_name(n.slot) + "\"";
  if (n.stutter) out += " stutter=\"true\"";
  if (!n.alt_lexeme.empty()) out += " alt=\"" + xml_escape(n.alt_lexeme) + "\"";
  if (n.children.empty()) {
    out += "/>\n";
    return;
  }
  out += ">\n";
  for (const auto& c : n.children) emit_unit(c, out, depth + 1);
  out += pad + "</unit>\n";
}

}  // namespace detail

inline std::string emit_dsynts(const std::vector<UtterancePlan>& plans) {
  std::string out = "<dsynts>\n";
  for (const auto& plan : plans) {
    out += std::string("  <sentence mode=\"") + detail::mode_name(plan.mode) + "\"";
    if (!plan.speaker.empty()) out += " speaker=\"" + detail::xml_escape(plan.speaker) + "\"";
    out += " timespan=\"" + std::to_string(plan.span.timespan) + "\"";
    out += " action=\"" + std::to_string(plan.span.action) + "\"";
    if (plan.exclaim) out += " exclaim=\"true\"";
    out += ">\n";
    if (!plan.matrix.empty()) {
      out += "    <matrix>\n";
      detail::emit_unit(plan.matrix.front(), out, 3);
      out += "    </matrix>\n";
    }
    detail::emit_unit(plan.tree, out, 2);
    out += "  </sentence>\n";
  }
  out += "</dsynts>\n";
  return out;
}

// ---------------------------------------------------------------------
// Parsing

namespace detail {

struct XmlTag {
  std::string name;
  std::map<std::string, std::string> attrs;
  bool closing = false;      // </name>
  bool self_closing = false; // <name ... />
};

class XmlScanner {
 public:
  explicit XmlScanner(std::string_view src) : src_(src) {}

  bool next(XmlTag& tag) {
    while (pos_ < src_.size() && src_[pos_] != '<') ++pos_;
    if (pos_ >= src_.size()) return false;
    size_t end = src_.find('>', pos_);
    if (end == std::string_view::npos) throw Error("dsynts", "unterminated tag");
    std::string body(src_.substr(pos_ + 1, end - pos_ - 1));
    pos_ = end + 1;
    tag = XmlTag{};
    size_t i = 0;
    if (!body.empty() && body[0] == '?') return next(tag);  // declaration
    if (!body.empty() && body[0] == '/') {
      tag.closing = true;
      i = 1;
    }
    if (!body.empty() && body.back() == '/') {
      tag.self_closing = true;
      body.pop_back();
    }
    size_t name_start = i;
    while (i < body.size() && !str::is_space(body[i])) ++i;
    tag.name = body.substr(name_start, i - name_start);
    while (i < body.size()) {
      while (i < body.size() && str::is_space(body[i])) ++i;
      if (i >= body.size()) break;
      size_t key_start = i;
      while (i < body.size() && body[i] != '=' && !str::is_space(body[i])) ++i;
      std::string key = body.substr(key_start, i - key_start);
      if (i >= body.size() || body[i] != '=')
        throw Error("dsynts", "attribute without value: " + key);
      ++i;
      if (i >= body.size() || body[i] != '"')
        throw Error("dsynts", "attribute value must be quoted: " + key);
      ++i;
      size_t val_start = i;
      while (i < body.size() && body[i] != '"') ++i;
      if (i >= body.size()) throw Error("dsynts", "unterminated attribute value: " + key);
      tag.attrs[key] = xml_unescape(body.substr(val_start, i - val_start));
      ++i;
    }
    return true;
  }

 private:
  std::string_view src_;
  size_t pos_ = 0;
};

template <typename Enum, size_t N>
Enum parse_enum(const std::string& value, const char* what,
                const std::pair<const char*, Enum> (&table)[N]) {
  for (const auto& [name, v] : table)
    if (value == name) return v;
  throw Error("dsynts", std::string("bad ") + what + " value: " + value);
}

inline SyntaxNode node_from_tag(const XmlTag& tag) {
  SyntaxNode n;
  bool saw_class = false;
  for (const auto& [key, value] : tag.attrs) {
    if (key == "class") {
      static constexpr std::pair<const char*, WordClass> table[] = {
          {"noun", WordClass::noun},
          {"verb", WordClass::verb},
          {"adverb", WordClass::adverb},
          {"adjective", WordClass::adjective},
          {"functional", WordClass::functional}};
      n.cls = parse_enum(value, "class", table);
      saw_class = true;
    } else if (key == "lexeme") {
      n.lexeme = value;
    } else if (key == "rel") {
      static constexpr std::pair<const char*, Relation> table[] = {
          {"subject", Relation::subject},
          {"object", Relation::object},
          {"indirect-object", Relation::indirect_object},
          {"attribute", Relation::attribute},
          {"adjunct", Relation::adjunct}};
      n.rel = parse_enum(value, "rel", table);
    } else if (key == "tense") {
      static constexpr std::pair<const char*, Tense> table[] = {
          {"past", Tense::past}, {"present", Tense::present}, {"future", Tense::future}};
      n.tense = parse_enum(value, "tense", table);
    } else if (key == "person") {
      if (value != "1" && value != "2" && value != "3")
        throw Error("dsynts", "bad person value: " + value);
      n.person = value[0] - '0';
    } else if (key == "number") {
      static constexpr std::pair<const char*, Number> table[] = {{"sg", Number::sg},
                                                                 {"pl", Number::pl}};
      n.number = parse_enum(value, "number", table);
    } else if (key == "article") {
      static constexpr std::pair<const char*, Article> table[] = {{"def", Article::def},
                                                                  {"indef", Article::indef},
                                                                  {"some", Article::some},
                                                                  {"every", Article::every},
                                                                  {"bare", Article::bare}};
      n.article = parse_enum(value, "article", table);
    } else if (key == "gender") {
      static constexpr std::pair<const char*, Gender> table[] = {
          {"feminine", Gender::feminine},
          {"masculine", Gender::masculine},
          {"neuter", Gender::neuter},
          {"unspecified", Gender::unspecified}};
      n.gender = parse_enum(value, "gender", table);
    } else if (key == "entity") {
      n.entity = value;
    } else if (key == "pron") {
      n.pronominal = value == "true";
    } else if (key == "neg") {
      n.negated = value == "true";
    } else if (key == "marker") {
      static constexpr std::pair<const char*, MarkerKind> table[] = {
          {"plain", MarkerKind::plain},
          {"softener", MarkerKind::softener},
          {"emphasizer", MarkerKind::emphasizer},
          {"expletive", MarkerKind::expletive},
          {"filled_pause", MarkerKind::filled_pause},
          {"acknowledgment", MarkerKind::acknowledgment},
          {"in_group", MarkerKind::in_group},
          {"tag_question", MarkerKind::tag_question}};
      n.marker = parse_enum(value, "marker", table);
    } else if (key == "slot") {
      static constexpr std::pair<const char*, Slot> table[] = {
          {"core", Slot::core},
          {"clause_initial", Slot::clause_initial},
          {"pre_verb", Slot::pre_verb},
          {"clause_final", Slot::clause_final}};
      n.slot = parse_enum(value, "slot", table);
    } else if (key == "stutter") {
      n.stutter = value == "true";
    } else if (key == "alt") {
      n.alt_lexeme = value;
    } else {
      throw Error("dsynts", "unknown unit attribute: " + key);
    }
  }
  if (!saw_class) throw Error("dsynts", "unit without class attribute");
  return n;
}

}  // namespace detail

inline std::vector<UtterancePlan> parse_dsynts(std::string_view xml) {
  detail::XmlScanner scan(xml);
  detail::XmlTag tag;
  if (!scan.next(tag) || tag.name != "dsynts" || tag.closing)
    throw Error("dsynts", "document must start with <dsynts>");

  std::vector<UtterancePlan> plans;
  // Explicit stack of open <unit> elements; `sentence` collects results.
  UtterancePlan cur;
  bool in_sentence = false, in_matrix = false;
  std::vector<SyntaxNode> stack;

  auto attach = [&](SyntaxNode&& node) {
    if (!stack.empty()) {
      stack.back().children.push_back(std::move(node));
    } else if (in_matrix) {
      cur.matrix.push_back(std::move(node));
    } else {
      if (!in_sentence) throw Error("dsynts", "unit outside <sentence>");
      cur.tree = std::move(node);
    }
  };

  while (scan.next(tag)) {
    if (tag.name == "dsynts") {
      if (!tag.closing) throw Error("dsynts", "nested <dsynts>");
      return plans;
    }
    if (tag.name == "sentence") {
      if (tag.closing) {
        if (!stack.empty()) throw Error("dsynts", "unclosed <unit> in sentence");
        plans.push_back(std::move(cur));
        in_sentence = false;
        continue;
      }
      if (in_sentence) throw Error("dsynts", "nested <sentence>");
      cur = UtterancePlan{};
      in_sentence = true;
      for (const auto& [key, value] : tag.attrs) {
        if (key == "mode") {
          static constexpr std::pair<const char*, Mode> table[] = {
              {"narration", Mode::narration},
              {"direct_speech", Mode::direct_speech},
              {"direct_thought", Mode::direct_thought}};
          cur.mode = detail::parse_enum(value, "mode", table);
        } else if (key == "speaker") {
          cur.speaker = value;
        } else if (key == "timespan") {
          cur.span.timespan = std::stoi(value);
        } else if (key == "action") {
          cur.span.action = std::stoi(value);
        } else if (key == "exclaim") {
          cur.exclaim = value == "true";
        } else {
          throw Error("dsynts", "unknown sentence attribute: " + key);
        }
      }
      continue;
    }
    if (tag.name == "matrix") {
      if (!in_sentence) throw Error("dsynts", "<matrix> outside <sentence>");
      in_matrix = !tag.closing;
      continue;
    }
    if (tag.name == "unit") {
      if (tag.closing) {
        if (stack.empty()) throw Error("dsynts", "unmatched </unit>");
        SyntaxNode done = std::move(stack.back());
        stack.pop_back();
        attach(std::move(done));
        continue;
      }
      SyntaxNode node = detail::node_from_tag(tag);
      if (tag.self_closing)
        attach(std::move(node));
      else
        stack.push_back(std::move(node));
      continue;
    }
    throw Error("dsynts", "unknown element: " + tag.name);
  }
  throw Error("dsynts", "missing </dsynts>");
}

}  // namespace fabler
