#include <algorithm>
#include <catch2/catch_amalgamated.hpp>
#include <filesystem>
#include <fstream>
#include <set>

#include "fabler/persona.hpp"
#include "fabler/realize.hpp"
#include "helpers.hpp"

using fabler::apply_model;
using fabler::MarkerKind;
using fabler::ParameterId;
using fabler::PersonalityModel;
using fabler::strip_markers;
using fabler::stutter;
using fabler::SyntaxNode;
using fabler::UtterancePlan;
using fabler::walk;

TEST_CASE("stutter duplicates the first two characters") {
  CHECK(stutter("somewhat") == "so-somewhat");
  CHECK(stutter("trellis") == "tr-trellis");
  CHECK(stutter("beautiful") == "be-beautiful");
  CHECK(stutter("ox") == "ox");
  CHECK(stutter("a") == "a");
  CHECK(stutter("") == "");
}

TEST_CASE("stutter law: ends with the word, exactly one hyphen") {
  th::Rng rng;
  for (int i = 0; i < 200; ++i) {
    std::string w = th::random_word(rng, 3, 12, "abcdefghijklmnopqrstuvwxyz");
    std::string s = stutter(w);
    CHECK(s.size() == w.size() + 3);
    CHECK(s.substr(3) == w);
    CHECK(s.substr(0, 2) == w.substr(0, 2));
    CHECK(std::count(s.begin(), s.end(), '-') == 1);
  }
}

TEST_CASE("bundled models load with the documented shape") {
  const auto& ms = th::models();
  CHECK(ms.get("neutral").neutral());
  CHECK(ms.get("neutral").attribution.empty());

  const PersonalityModel& shy = ms.get("shy");
  CHECK(shy.activation(ParameterId::softener_hedges) == 1.0);
  CHECK(shy.activation(ParameterId::stuttering) == 1.0);
  CHECK(shy.activation(ParameterId::filled_pauses) == 1.0);
  CHECK(shy.activation(ParameterId::exclamation) == 0.0);
  CHECK(shy.softeners.size() == 9);
  CHECK(shy.filled_pauses.size() == 5);

  const PersonalityModel& lb = ms.get("laid_back");
  CHECK(lb.activation(ParameterId::emphasizer_hedges) == 1.0);
  CHECK(lb.activation(ParameterId::expletives) == 1.0);
  CHECK(lb.activation(ParameterId::tag_question) == 1.0);
  CHECK(lb.activation(ParameterId::exclamation) > 0.0);
  // tag must outrank exclamation so tags survive the exclusivity rule
  CHECK(lb.activation(ParameterId::tag_question) > lb.activation(ParameterId::exclamation));
  CHECK(lb.attribution == shy.attribution);

  CHECK_THROWS_AS(ms.get("bogus"), fabler::Error);
}

static std::vector<UtterancePlan> corpus_plans() {
  auto all = th::plans_for("fox_crow_monologic");
  for (auto& p : th::plans_for("fox_crow_dialogic")) all.push_back(p);
  for (auto& p : th::plans_for("party_member")) all.push_back(p);
  return all;
}

TEST_CASE("neutral model is the identity") {
  const PersonalityModel& neutral = th::models().get("neutral");
  for (const auto& p : corpus_plans())
    for (uint64_t seed : {0ull, 1ull, 7ull, 99ull, 12345ull})
      CHECK(apply_model(p, neutral, seed) == p);
}

TEST_CASE("strip_markers undoes apply_model across models and seeds") {
  auto plans = corpus_plans();
  const auto& ms = th::models();
  for (const char* name : {"neutral", "shy", "laid_back", "openness", "marion", "vincent",
                           "otter"}) {
    const PersonalityModel& m = ms.get(name);
    for (uint64_t seed = 0; seed < 100; ++seed)
      for (const auto& p : plans) {
        UtterancePlan styled = apply_model(p, m, seed);
        if (!(strip_markers(styled) == p)) {
          INFO(name << " seed " << seed << " span " << p.span.timespan);
          REQUIRE(strip_markers(styled) == p);
        }
      }
  }
}

TEST_CASE("apply_model is deterministic") {
  const PersonalityModel& shy = th::models().get("shy");
  for (const auto& p : corpus_plans()) {
    CHECK(apply_model(p, shy, 42) == apply_model(p, shy, 42));
  }
}

static const UtterancePlan& first_direct(const std::vector<UtterancePlan>& plans) {
  for (const auto& p : plans)
    if (p.direct()) return p;
  FAIL("no direct plan");
  return plans.front();
}

static int count_markers(const SyntaxNode& tree, MarkerKind kind) {
  int n = 0;
  walk(tree, [&](const SyntaxNode& x) {
    if (x.marker == kind) ++n;
  });
  return n;
}

TEST_CASE("activation 0 inserts nothing even with items available") {
  PersonalityModel m;
  m.name = "silent";
  m.softeners = {"quite"};
  m.emphasizers = {"really"};
  m.expletives = {"damn"};
  m.filled_pauses = {"err"};
  m.acknowledgments = {"I see"};
  m.in_group = {"pal"};
  m.tags = {"alright"};
  auto plans = th::plans_for("fox_crow_dialogic");
  for (const auto& p : plans)
    for (uint64_t seed : {0ull, 3ull, 17ull}) CHECK(apply_model(p, m, seed) == p);
}

TEST_CASE("activation 1 inserts at every eligible site") {
  PersonalityModel m;
  m.name = "soft";
  m.params[static_cast<size_t>(ParameterId::softener_hedges)] = 1.0;
  m.softeners = {"quite"};
  auto dia = th::plans_for("fox_crow_dialogic");
  for (uint64_t seed : {0ull, 11ull, 77ull})
    for (const auto& p : dia) {
      if (!p.direct()) continue;
      UtterancePlan styled = apply_model(p, m, seed);
      int clauses = 0;
      walk(p.tree, [&](const SyntaxNode& n) {
        if (n.is_finite()) ++clauses;
      });
      CHECK(count_markers(styled.tree, MarkerKind::softener) == clauses);
    }
}

TEST_CASE("phrasal softeners go clause-initial, adverbial ones attach before words") {
  // openness carries only phrasal ("... that") softeners
  const PersonalityModel& open = th::models().get("openness");
  for (const auto& item : open.softeners) CHECK(fabler::str::ends_with(item, "that"));

  auto party = th::plans_for("party_member");
  UtterancePlan styled = apply_model(first_direct(party), open, 0);
  bool initial_phrasal = false;
  for (const auto& c : styled.tree.children)
    if (c.marker == MarkerKind::softener && c.slot == fabler::Slot::clause_initial)
      initial_phrasal = true;
  CHECK(initial_phrasal);

  // an adverbial softener on a copular clause lands on the adjective
  PersonalityModel adv;
  adv.params[static_cast<size_t>(ParameterId::softener_hedges)] = 1.0;
  adv.softeners = {"quite"};
  auto dia = th::plans_for("fox_crow_dialogic");
  for (const auto& p : dia) {
    if (p.span.timespan != 10) continue;  // "your beauty is incomparable"
    UtterancePlan styled2 = apply_model(p, adv, 5);
    bool on_adjective = false;
    walk(styled2.tree, [&](const SyntaxNode& n) {
      if (n.cls != fabler::WordClass::adjective) return;
      for (const auto& c : n.children)
        if (c.marker == MarkerKind::softener && c.lexeme == "quite") on_adjective = true;
    });
    CHECK(on_adjective);
  }
}

TEST_CASE("expletives attach only before adjectives") {
  const PersonalityModel& lb = th::models().get("laid_back");
  auto dia = th::plans_for("fox_crow_dialogic");
  for (const auto& p : dia) {
    if (!p.direct()) continue;
    UtterancePlan styled = apply_model(p, lb, 0);
    walk(styled.tree, [&](const SyntaxNode& n) {
      for (const auto& c : n.children)
        if (c.marker == MarkerKind::expletive) {
          CHECK(n.cls == fabler::WordClass::adjective);
          CHECK(c.lexeme == "damn");
        }
    });
    bool has_adjective = false;
    walk(p.tree, [&](const SyntaxNode& n) {
      if (n.cls == fabler::WordClass::adjective) has_adjective = true;
    });
    if (has_adjective) CHECK(count_markers(styled.tree, MarkerKind::expletive) >= 1);
    else CHECK(count_markers(styled.tree, MarkerKind::expletive) == 0);
  }
}

TEST_CASE("stutter targets the first adjective, else a content noun") {
  const PersonalityModel& shy = th::models().get("shy");
  auto dia = th::plans_for("fox_crow_dialogic");
  for (uint64_t seed = 0; seed < 20; ++seed)
    for (const auto& p : dia) {
      if (p.speaker != "crow") continue;
      UtterancePlan styled = apply_model(p, shy, seed);
      int stutters = 0;
      walk(styled.tree, [&](const SyntaxNode& n) {
        if (n.stutter) ++stutters;
      });
      CHECK(stutters == 1);
    }
}

TEST_CASE("tag question and exclamation never both fire") {
  PersonalityModel both;
  both.params[static_cast<size_t>(ParameterId::tag_question)] = 1.0;
  both.params[static_cast<size_t>(ParameterId::exclamation)] = 1.0;
  both.tags = {"alright"};
  auto party = th::plans_for("party_member");
  const UtterancePlan& base = first_direct(party);
  for (uint64_t seed = 0; seed < 50; ++seed) {
    UtterancePlan styled = apply_model(base, both, seed);
    bool tagged = count_markers(styled.tree, MarkerKind::tag_question) > 0;
    // equal activation: exclamation wins, tags never materialize
    CHECK(styled.exclaim);
    CHECK_FALSE(tagged);
  }

  PersonalityModel tag_only = both;
  tag_only.params[static_cast<size_t>(ParameterId::exclamation)] = 0.0;
  UtterancePlan styled = apply_model(base, tag_only, 0);
  CHECK(count_markers(styled.tree, MarkerKind::tag_question) == 1);
  CHECK_FALSE(styled.exclaim);

  const PersonalityModel& lb = th::models().get("laid_back");
  auto dia = th::plans_for("fox_crow_dialogic");
  for (uint64_t seed = 0; seed < 100; ++seed)
    for (const auto& p : dia) {
      if (p.speaker != "fox") continue;
      UtterancePlan s = apply_model(p, lb, seed);
      bool tagged = count_markers(s.tree, MarkerKind::tag_question) > 0;
      CHECK_FALSE((tagged && s.exclaim));
      CHECK((tagged || s.exclaim));  // one of them always fires at these activations
    }
}

TEST_CASE("attribution substitutes the matrix verb for speech only") {
  const PersonalityModel& shy = th::models().get("shy");
  auto dia = th::plans_for("fox_crow_dialogic");
  std::set<std::string> seen;
  for (uint64_t seed = 0; seed < 30; ++seed)
    for (const auto& p : dia) {
      if (!p.direct()) continue;
      UtterancePlan styled = apply_model(p, shy, seed);
      const SyntaxNode& m = styled.matrix.front();
      if (p.mode == fabler::Mode::direct_thought) {
        CHECK(m.alt_lexeme.empty());  // thoughts keep their own verb
      } else {
        std::string verb = m.alt_lexeme.empty() ? m.lexeme : m.alt_lexeme;
        seen.insert(verb);
      }
    }
  CHECK(seen == std::set<std::string>{"say", "allege", "aver"});
}

TEST_CASE("markers use only the documented site inventory") {
  const auto& ms = th::models();
  auto plans = corpus_plans();
  for (const char* name : {"shy", "laid_back", "openness", "marion", "vincent", "otter"})
    for (uint64_t seed = 0; seed < 10; ++seed)
      for (const auto& p : plans) {
        UtterancePlan styled = apply_model(p, ms.get(name), seed);
        walk(styled.tree, [&](const SyntaxNode& n) {
          if (!n.is_marker()) return;
          bool ok = n.slot == fabler::Slot::clause_initial || n.slot == fabler::Slot::pre_verb ||
                    n.slot == fabler::Slot::clause_final || n.slot == fabler::Slot::core;
          CHECK(ok);
        });
      }
}

TEST_CASE("model files reject unknown keys and missing files") {
  CHECK_THROWS_AS(fabler::load_model("/nonexistent/x.model"), fabler::Error);
  auto path = std::filesystem::temp_directory_path() / "bad.model";
  {
    std::ofstream out(path);
    out << "model bad\nparam sideways 1.0\n";
  }
  CHECK_THROWS_AS(fabler::load_model(path.string()), fabler::Error);
}
