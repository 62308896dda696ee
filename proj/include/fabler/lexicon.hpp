#pragma once

// Verb frame lexicon and English morphology.
//
// Frames declare, per predicate: the role list, the complement type a
// theme argument realizes as, whether the verb can introduce direct
// speech or thought, and which negation surface form it takes.
// Morphology is a small irregular table plus regular suffix rules.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fabler/util.hpp"

namespace fabler {

enum class Complement { none, nominal, sentential };
enum class FrameCategory { plain, communication, cognition };
enum class NegStyle { do_not, fail_to };

struct Frame {
  std::string id;
  std::string lexeme;
  std::vector<std::string> roles;  // subset of {agent, theme, recipient, attribute}
  Complement complement = Complement::none;
  FrameCategory category = FrameCategory::plain;
  NegStyle neg = NegStyle::do_not;

  bool reporting() const { return category != FrameCategory::plain; }
};

struct MorphEntry {
  std::string past;
  std::string third_sg;
  std::string plural;  // for nouns; "-" when absent
};

class Lexicon {
 public:
  void add_frame(Frame f) { frames_[f.id] = std::move(f); }
  void add_morph(const std::string& lexeme, MorphEntry e) { morph_[lexeme] = std::move(e); }

  const Frame* find_frame(const std::string& id) const {
    auto it = frames_.find(id);
    return it == frames_.end() ? nullptr : &it->second;
  }

  const Frame& frame(const std::string& id) const {
    if (const Frame* f = find_frame(id)) return *f;
    throw Error("lexicon", "unknown frame: " + id);
  }

  size_t frame_count() const { return frames_.size(); }

  // --- inflection ---------------------------------------------------

  // "be" is handled by the realizer's person/number table; past() of it
  // is only a fallback.
  std::string past(const std::string& verb) const {
    if (auto* e = find_morph(verb); e && e->past != "-") return e->past;
    return regular_past(verb);
  }

  std::string third_sg(const std::string& verb) const {
    if (auto* e = find_morph(verb); e && e->third_sg != "-") return e->third_sg;
    return regular_third_sg(verb);
  }

  std::string plural(const std::string& noun) const {
    if (auto* e = find_morph(noun); e && e->plural != "-") return e->plural;
    return regular_plural(noun);
  }

  static std::string regular_past(const std::string& w) {
    if (w.empty()) return w;
    if (str::ends_with(w, "e")) return w + "d";
    if (w.size() >= 2 && w.back() == 'y' && !is_vowel(w[w.size() - 2]))
      return w.substr(0, w.size() - 1) + "ied";
    return w + "ed";
  }

  static std::string regular_third_sg(const std::string& w) {
    if (w.empty()) return w;
    if (str::ends_with(w, "s") || str::ends_with(w, "sh") || str::ends_with(w, "ch") ||
        str::ends_with(w, "x") || str::ends_with(w, "z") || str::ends_with(w, "o"))
      return w + "es";
    if (w.size() >= 2 && w.back() == 'y' && !is_vowel(w[w.size() - 2]))
      return w.substr(0, w.size() - 1) + "ies";
    return w + "s";
  }

  static std::string regular_plural(const std::string& w) { return regular_third_sg(w); }

  // --- loading ------------------------------------------------------

  // frames.tsv: id  lexeme  roles(comma list)  complement  category  negation
  static void load_frames(Lexicon& lex, const std::string& path) {
    int line_no = 0;
    bool header = true;  // first data-looking line is the column header
    for (const auto& raw : str::split(read_file(path), '\n')) {
      ++line_no;
      auto line = str::trim(raw);
      if (line.empty() || line[0] == '#') continue;
      if (header) {
        header = false;
        continue;
      }
      auto cols = str::split(line, '\t');
      if (cols.size() != 6)
        throw Error("lexicon", path + ":" + std::to_string(line_no) +
                                   ": expected 6 tab-separated columns, got " +
                                   std::to_string(cols.size()));
      Frame f;
      f.id = str::trim(cols[0]);
      f.lexeme = str::trim(cols[1]);
      f.roles = str::split_list(cols[2], ',');
      f.complement = parse_complement(str::trim(cols[3]), path, line_no);
      f.category = parse_category(str::trim(cols[4]), path, line_no);
      f.neg = parse_neg(str::trim(cols[5]), path, line_no);
      lex.add_frame(std::move(f));
    }
  }

  // morph.tsv: lexeme  past  third_sg  plural   ("-" marks an absent form)
  static void load_morph(Lexicon& lex, const std::string& path) {
    int line_no = 0;
    bool header = true;
    for (const auto& raw : str::split(read_file(path), '\n')) {
      ++line_no;
      auto line = str::trim(raw);
      if (line.empty() || line[0] == '#') continue;
      if (header) {
        header = false;
        continue;
      }
      auto cols = str::split(line, '\t');
      if (cols.size() != 4)
        throw Error("lexicon", path + ":" + std::to_string(line_no) +
                                   ": expected 4 tab-separated columns, got " +
                                   std::to_string(cols.size()));
      lex.add_morph(str::trim(cols[0]),
                    MorphEntry{str::trim(cols[1]), str::trim(cols[2]), str::trim(cols[3])});
    }
  }

  static Lexicon load(const std::string& frames_path, const std::string& morph_path) {
    Lexicon lex;
    load_frames(lex, frames_path);
    load_morph(lex, morph_path);
    return lex;
  }

 private:
  static bool is_vowel(char c) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
  }

  const MorphEntry* find_morph(const std::string& lexeme) const {
    auto it = morph_.find(lexeme);
    return it == morph_.end() ? nullptr : &it->second;
  }

  static Complement parse_complement(const std::string& s, const std::string& path, int line) {
    if (s == "none") return Complement::none;
    if (s == "nominal") return Complement::nominal;
    if (s == "sentential") return Complement::sentential;
    throw Error("lexicon", path + ":" + std::to_string(line) + ": bad complement type: " + s);
  }

  static FrameCategory parse_category(const std::string& s, const std::string& path, int line) {
    if (s == "plain") return FrameCategory::plain;
    if (s == "communication") return FrameCategory::communication;
    if (s == "cognition") return FrameCategory::cognition;
    throw Error("lexicon", path + ":" + std::to_string(line) + ": bad frame category: " + s);
  }

  static NegStyle parse_neg(const std::string& s, const std::string& path, int line) {
    if (s == "do_not") return NegStyle::do_not;
    if (s == "fail_to") return NegStyle::fail_to;
    throw Error("lexicon", path + ":" + std::to_string(line) + ": bad negation style: " + s);
  }

  std::map<std::string, Frame> frames_;
  std::map<std::string, MorphEntry> morph_;
};

}  // namespace fabler
