#include <catch2/catch_amalgamated.hpp>

#include "fabler/translate.hpp"
#include "helpers.hpp"

using fabler::Mode;
using fabler::SyntaxNode;
using fabler::Tense;
using fabler::Translator;
using fabler::UtterancePlan;
using fabler::walk;

TEST_CASE("plan counts and modes match the corpora") {
  auto mono = th::plans_for("fox_crow_monologic");
  REQUIRE(mono.size() == 17);
  for (const auto& p : mono) {
    CHECK(p.mode == Mode::narration);
    CHECK(p.speaker.empty());
    CHECK(p.matrix.empty());
  }

  auto dia = th::plans_for("fox_crow_dialogic");
  REQUIRE(dia.size() == 19);
  int direct = 0, thoughts = 0;
  for (const auto& p : dia)
    if (p.direct()) {
      ++direct;
      REQUIRE(p.matrix.size() == 1);
      CHECK_FALSE(p.speaker.empty());
      if (p.mode == Mode::direct_thought) ++thoughts;
    }
  CHECK(direct == 10);
  CHECK(thoughts == 4);
}

TEST_CASE("plans preserve timeline order") {
  for (const char* name : {"fox_crow_monologic", "fox_crow_dialogic"}) {
    INFO(name);
    auto plans = th::plans_for(name);
    fabler::StoryGraph g = th::load_story(name);
    size_t k = 0;
    for (const auto& ts : g.timeline)
      for (size_t i = 0; i < ts.actions.size(); ++i, ++k) {
        REQUIRE(k < plans.size());
        CHECK(plans[k].span.timespan == ts.index);
        CHECK(plans[k].span.action == static_cast<int>(i + 1));
      }
    CHECK(k == plans.size());
  }
}

static void check_tense_discipline(const UtterancePlan& p) {
  if (p.mode == Mode::narration) {
    walk(p.tree, [](const SyntaxNode& n) {
      if (n.is_finite()) CHECK(*n.tense == Tense::past);
    });
    return;
  }
  for (const auto& m : p.matrix)
    walk(m, [](const SyntaxNode& n) {
      if (n.is_finite()) CHECK(*n.tense == Tense::past);
    });
  walk(p.tree, [](const SyntaxNode& n) {
    if (n.is_finite()) CHECK((*n.tense == Tense::present || *n.tense == Tense::future));
  });
}

static void check_person_discipline(const UtterancePlan& p) {
  if (p.mode == Mode::narration) {
    walk(p.tree, [](const SyntaxNode& n) { CHECK(n.person == 3); });
    return;
  }
  for (const auto& m : p.matrix)
    walk(m, [](const SyntaxNode& n) { CHECK(n.person == 3); });
  walk(p.tree, [](const SyntaxNode& n) {
    CHECK(n.person >= 1);
    CHECK(n.person <= 3);
  });
}

TEST_CASE("tense and person discipline on base plans") {
  for (const char* name : {"fox_crow_monologic", "fox_crow_dialogic", "party_member"}) {
    INFO(name);
    for (const auto& p : th::plans_for(name)) {
      check_tense_discipline(p);
      check_person_discipline(p);
    }
  }
}

TEST_CASE("speaker and addressee bind first and second person") {
  auto plans = th::plans_for("party_member");
  REQUIRE(plans.size() == 1);
  const UtterancePlan& p = plans.front();
  REQUIRE(p.mode == Mode::direct_speech);
  CHECK(p.speaker == "companion");
  int first = 0, second = 0;
  walk(p.tree, [&](const SyntaxNode& n) {
    if (n.cls != fabler::WordClass::noun) return;
    if (n.person == 1) {
      ++first;
      CHECK(n.entity == "companion");
    }
    if (n.person == 2) {
      ++second;
      CHECK(n.entity == "player");
    }
  });
  CHECK(first == 2);  // subject of fight, object of save
  CHECK(second == 2);
}

TEST_CASE("every node carries one of the five word classes") {
  for (const char* name : {"fox_crow_monologic", "fox_crow_dialogic"}) {
    for (const auto& p : th::plans_for(name)) {
      walk(p.tree, [](const SyntaxNode& n) {
        int c = static_cast<int>(n.cls);
        CHECK(c >= 0);
        CHECK(c <= 4);
        if (n.is_verb()) CHECK((n.tense.has_value() || !n.children.empty() || true));
      });
    }
  }
}

TEST_CASE("quote tense follows the embedding") {
  auto dia = th::plans_for("fox_crow_dialogic");
  // the crow's plan to eat is future; plain reports are present
  int future_verbs = 0, present_verbs = 0;
  for (const auto& p : dia) {
    if (!p.direct()) continue;
    walk(p.tree, [&](const SyntaxNode& n) {
      if (!n.is_finite()) return;
      if (*n.tense == Tense::future) ++future_verbs;
      if (*n.tense == Tense::present) ++present_verbs;
    });
  }
  CHECK(future_verbs >= 3);   // eat / obtain / demonstrate plans
  CHECK(present_verbs >= 8);  // see you, beauty is ..., etc.
}

TEST_CASE("substitute_speaker with the same entity is the identity") {
  const std::pair<const char*, const char*> cases[] = {{"fox_crow_dialogic", "fox"},
                                                       {"party_member", "companion"}};
  for (const auto& [name, speaker] : cases) {
    INFO(name);
    fabler::StoryGraph g = th::load_story(name);
    Translator tr(g, th::lexicon());
    auto plans = tr.translate_story();
    auto same = tr.substitute_speaker(plans, speaker, speaker);
    CHECK(same == plans);
  }
}

TEST_CASE("substitute_speaker rebinds matrix and self references") {
  fabler::StoryGraph g = th::load_story("party_member");
  Translator tr(g, th::lexicon());
  auto plans = tr.translate_story();

  auto swapped = tr.substitute_speaker(plans, "companion", "marion");
  REQUIRE(swapped.size() == 1);
  const UtterancePlan& p = swapped.front();
  CHECK(p.speaker == "marion");
  REQUIRE_FALSE(p.matrix.empty());
  bool matrix_subject_rebound = false;
  walk(p.matrix.front(), [&](const SyntaxNode& n) {
    if (n.cls == fabler::WordClass::noun && n.entity == "marion") matrix_subject_rebound = true;
    CHECK(n.entity != "companion");
  });
  CHECK(matrix_subject_rebound);
  walk(p.tree, [](const SyntaxNode& n) { CHECK(n.entity != "companion"); });

  // substitution only rebinds; the non-speaker is untouched
  bool player_still_there = false;
  walk(p.tree, [&](const SyntaxNode& n) {
    if (n.entity == "player") player_still_there = true;
  });
  CHECK(player_still_there);

  // unknown replacement entity is an error
  CHECK_THROWS_AS(tr.substitute_speaker(plans, "companion", "nobody"), fabler::Error);
}

TEST_CASE("translator rejects graphs that break narration") {
  const fabler::Lexicon& lex = th::lexicon();

  // interlocutor in plain narration
  fabler::StoryGraph g1 = fabler::parse_story(
      "story \"T\"\nentity fox : kind=character\nentity player : kind=interlocutor\n"
      "timespan 1\nsee(fox, player)");
  CHECK_THROWS_WITH(Translator(g1, lex).translate_story(),
                    Catch::Matchers::ContainsSubstring("interlocutor"));

  // explicit future embedding outside direct address
  fabler::StoryGraph g2 = fabler::parse_story(
      "story \"T\"\nentity crow : kind=character gender=feminine\n"
      "timespan 1\nfuture(sing(crow))");
  CHECK_THROWS_WITH(Translator(g2, lex).translate_story(),
                    Catch::Matchers::ContainsSubstring("future"));

  // directly on a non-reporting frame
  fabler::StoryGraph g3 = fabler::parse_story(
      "story \"T\"\nentity fox : kind=character\nentity cheese : kind=object\n"
      "timespan 1\neat(fox, directly, cheese)");
  CHECK_THROWS_AS(Translator(g3, lex).translate_story(), fabler::Error);
}

TEST_CASE("translation is deterministic") {
  for (const char* name : {"fox_crow_monologic", "fox_crow_dialogic"}) {
    auto a = th::plans_for(name);
    auto b = th::plans_for(name);
    CHECK(a == b);
  }
}
