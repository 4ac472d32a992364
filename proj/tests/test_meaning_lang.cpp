#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "exigraph/meaning_lang.hpp"
#include "generators.hpp"

#include <fstream>
#include <random>
#include <set>

using namespace exigraph;

namespace {

std::vector<std::string> corpus_lines()
{
  std::ifstream in(EXIGRAPH_TEST_DATA "/grammar_corpus.txt");
  REQUIRE(in.good());
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);)
    if (!strip_comment(line).empty())
      out.push_back(line);
  return out;
}

template <typename Ast>
std::size_t parse_error_offset(std::string_view text, Ast (*parse)(std::string_view, const Lexicon&))
{
  try {
    parse(text, Lexicon{});
  } catch (const ParseError& e) {
    return e.offset();
  }
  FAIL("no parse error for: " << text);
  return 0;
}

} // namespace

TEST_CASE("statement examples")
{
  CHECK(parse_statement("All astronauts are people.") == StatementAst{CategoricalStmt{Form::A, "astronauts", "people"}});
  CHECK(parse_statement("Socrates is a man.") == StatementAst{MembershipStmt{"socrates", "man"}});
  CHECK(parse_statement("American astronauts flew to the Moon.") ==
        StatementAst{SpoStmt{"american astronauts", "flew to", "moon"}});
  CHECK(parse_statement("No men are immortal.") == StatementAst{CategoricalStmt{Form::E, "men", "immortal"}});
  CHECK(parse_statement("Some Greeks are not philosophers.") ==
        StatementAst{CategoricalStmt{Form::O, "greeks", "philosophers"}});
  CHECK(parse_statement("A man sees an apple.") == StatementAst{SpoStmt{"man", "sees", "apple"}});
  CHECK(parse_statement("The artist has painted the photo.") == StatementAst{SpoStmt{"artist", "has painted", "photo"}});
  CHECK(parse_statement("Driver sees tractor.") == StatementAst{SpoStmt{"driver", "sees", "tractor"}});
  CHECK(parse_statement("lexicon: been to = was at.") == StatementAst{LexiconStmt{"been to", "was at"}});
  CHECK(parse_statement("  All men are mortal.   # comment") == StatementAst{CategoricalStmt{Form::A, "men", "mortal"}});

  auto rule = std::get<RuleStmt>(parse_statement("rule: X flew to Y => X was at Y."));
  CHECK(rule.rule == DefeasibleRule::make({"X", "flew to", "Y"}, {"X", "was at", "Y"}));

  auto trigger = std::get<TriggerStmt>(parse_statement("trigger: when * asked * then \"Answer question\"."));
  CHECK(trigger.pattern == TriggerPattern{TriggerPattern::Kind::Spo, "*", "asked", "*"});
  CHECK(trigger.aim == "answer question");
}

TEST_CASE("statements go through the lexicon")
{
  Lexicon lex;
  lex.add("people", "person");
  CHECK(parse_statement("All astronauts are people.", lex) == StatementAst{CategoricalStmt{Form::A, "astronauts", "person"}});
  auto english = Lexicon::english();
  CHECK(parse_statement("All men are mortal.", english) == StatementAst{CategoricalStmt{Form::A, "man", "mortal"}});
}

TEST_CASE("question examples")
{
  Lexicon lex;
  lex.add("been to", "was at");
  CHECK(parse_question("Have people been to the Moon?", lex) == QuestionAst{DidSpoQuestion{"people", "was at", "moon"}});
  lex.add("people", "person");
  CHECK(parse_question("Have people been to the Moon?", lex) == QuestionAst{DidSpoQuestion{"person", "was at", "moon"}});
  CHECK(parse_question("Is Socrates a man?") == QuestionAst{IsAQuestion{"socrates", "man"}});
  CHECK(parse_question("Are all men mortal?") == QuestionAst{AreAllQuestion{"men", "mortal"}});
  CHECK(parse_question("Are any astronauts people?") == QuestionAst{AreAnyQuestion{"astronauts", "people"}});
  CHECK(parse_question("Did American astronauts fly to the Moon?") ==
        QuestionAst{DidSpoQuestion{"american astronauts", "fly to", "moon"}});
}

TEST_CASE("unsupported questions are refused")
{
  CHECK_THROWS_AS(parse_question("Have you stopped drinking cognac in the morning?"), UnsupportedFormError);
  CHECK_THROWS_AS(parse_question("Has Socrates stopped teaching in Athens?"), UnsupportedFormError);
  CHECK_THROWS_AS(parse_question("Why is the sky blue?"), UnsupportedFormError);
  CHECK_THROWS_AS(parse_question("Are men mortal?"), UnsupportedFormError);
  try {
    parse_question("Have you stopped drinking cognac in the morning?");
  } catch (const UnsupportedFormError& e) {
    CHECK(e.offset() == 5); // "you"
  }
  try {
    parse_question("Why is the sky blue?");
  } catch (const UnsupportedFormError& e) {
    CHECK(std::string(e.what()).find("Are all") != std::string::npos);
  }
}

TEST_CASE("parse errors carry byte offsets and expected tokens")
{
  CHECK(parse_error_offset("Socrates is a man", &parse_statement) == 17);
  CHECK(parse_error_offset("Socrates is a man!.", &parse_statement) == 17);
  CHECK(parse_error_offset("All men are .", &parse_statement) == 12);
  CHECK(parse_error_offset("Cats dogs birds fish.", &parse_statement) == 0);
  CHECK(parse_error_offset("rule: X flew to Y.", &parse_statement) == 17);
  CHECK(parse_error_offset("rule: X flew to moon => X was at Y.", &parse_statement) == 23);
  CHECK(parse_error_offset("Is Socrates man?", &parse_statement) == 16);
  CHECK(parse_error_offset("Is Socrates man?", &parse_question) == 12);
  CHECK(parse_error_offset("", &parse_statement) == 0);

  try {
    parse_statement("Socrates is a man");
  } catch (const ParseError& e) {
    REQUIRE(e.expected().size() == 1);
    CHECK(e.expected()[0] == "'.'");
    CHECK(std::string(e.what()).find("at byte 17") != std::string::npos);
  }
}

TEST_CASE("render examples")
{
  CHECK(render(StatementAst{CategoricalStmt{Form::A, "men", "mortal"}}) == "All men are mortal.");
  CHECK(render(StatementAst{MembershipStmt{"socrates", "man"}}) == "Socrates is a man.");
  CHECK(render(StatementAst{MembershipStmt{"ann", "engineer"}}) == "Ann is an engineer.");
  CHECK(render(StatementAst{SpoStmt{"american astronauts", "flew to", "moon"}}) ==
        "American astronauts flew to moon.");
  CHECK(render(StatementAst{SpoStmt{"man", "sees", "apple"}}) == "Man sees the apple.");
  CHECK(render(StatementAst{RuleStmt{DefeasibleRule::make({"X", "flew to", "Y"}, {"X", "was at", "Y"})}}) ==
        "rule: X flew to Y => X was at Y.");
  CHECK(render(StatementAst{LexiconStmt{"people", "person"}}) == "lexicon: people = person.");
  CHECK(render(QuestionAst{DidSpoQuestion{"people", "was at", "moon"}}) == "Did people was at moon?");
  CHECK(render(QuestionAst{IsAQuestion{"socrates", "man"}}) == "Is Socrates a man?");
}

TEST_CASE("every grammar production is covered by the corpus")
{
  std::set<std::string> seen;
  for (const auto& line : corpus_lines()) {
    CAPTURE(line);
    if (is_question(line)) {
      auto q = parse_question(line);
      seen.insert("question/" + std::to_string(q.index()));
      seen.insert("head/" + normalize_term(line.substr(0, line.find(' '))));
    } else {
      auto s = parse_statement(line);
      seen.insert("statement/" + std::to_string(s.index()));
      if (auto* c = std::get_if<CategoricalStmt>(&s))
        seen.insert(std::string("form/") + to_char(c->form));
      if (auto* t = std::get_if<TriggerStmt>(&s))
        seen.insert("trigger/" + std::to_string(static_cast<int>(t->pattern.kind)));
    }
  }
  std::set<std::string> required;
  for (int i = 0; i < int(std::variant_size_v<StatementAst>); ++i)
    required.insert("statement/" + std::to_string(i));
  for (int i = 0; i < int(std::variant_size_v<QuestionAst>); ++i)
    required.insert("question/" + std::to_string(i));
  for (const char* f : {"A", "E", "I", "O"})
    required.insert(std::string("form/") + f);
  for (const char* h : {"is", "are", "did", "have"})
    required.insert(std::string("head/") + h);
  required.insert("trigger/0");
  required.insert("trigger/1");
  for (const auto& r : required) {
    CAPTURE(r);
    CHECK(seen.contains(r));
  }
}

TEST_CASE("render after parse is idempotent on the corpus")
{
  for (const auto& line : corpus_lines()) {
    CAPTURE(line);
    if (is_question(line)) {
      auto q = parse_question(line);
      const auto once = render(q);
      CHECK(parse_question(once) == q);
      CHECK(render(parse_question(once)) == once);
    } else {
      auto s = parse_statement(line);
      const auto once = render(s);
      CHECK(parse_statement(once) == s);
      CHECK(render(parse_statement(once)) == once);
    }
  }
}

TEST_CASE("parse after render is the identity on random ASTs")
{
  std::mt19937_64 rng(42);
  for (int i = 0; i < 2000; ++i) {
    auto s = gen::statement(rng);
    const auto text = render(s);
    CAPTURE(text);
    CHECK(parse_statement(text) == s);
    auto q = gen::question(rng);
    const auto qtext = render(q);
    CAPTURE(qtext);
    CHECK(parse_question(qtext) == q);
  }
}

TEST_CASE("lexicon")
{
  Lexicon lex;
  lex.add("people", "person");
  lex.add("been to", "was at");
  CHECK(lex.canonical("People") == "person");
  CHECK(lex.canonical("the people") == "person");
  CHECK(lex.canonical("american people") == "american person");
  CHECK(lex.canonical("been to") == "was at");
  CHECK_THROWS_AS(lex.add("person", "people"), LexiconError);
  CHECK_THROWS_AS(lex.add("a", "a"), LexiconError);
  CHECK_THROWS_AS(lex.add("x", "x"), LexiconError);
  // Word-level rewrites that would never settle.
  CHECK_THROWS_AS(lex.add("socrates", "socrates garden"), LexiconError);
  lex.add("w", "p q");
  CHECK_THROWS_AS(lex.add("p q", "w"), LexiconError);
  CHECK(lex.canonical("w") == "p q");
  lex.add("human", "people"); // chains resolve to the end
  CHECK(lex.canonical("human") == "person");
  CHECK(lex.entries().size() == 4);

  auto english = Lexicon::english();
  CHECK(english.canonical("men") == "man");
  CHECK(english.entries().empty());
  english.add("men", "males"); // user entries shadow the built-in table
  CHECK(english.canonical("men") == "males");
}

TEST_CASE("lexicon canonicalization is idempotent")
{
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    Lexicon lex = Lexicon::english();
    for (int i = 0; i < 6; ++i) {
      try {
        lex.add(gen::noun_phrase(rng), gen::noun_phrase(rng));
      } catch (const LexiconError&) {
        // cycles and self-maps are rejected; keep going
      }
    }
    for (int i = 0; i < 10; ++i) {
      const auto term = gen::noun_phrase(rng);
      const auto once = lex.canonical(term);
      CHECK(lex.canonical(once) == once);
    }
  }
}

TEST_CASE("helpers")
{
  CHECK(normalize_term("  The  Moon ") == "moon");
  CHECK(is_question("Is Socrates a man?  # why not"));
  CHECK_FALSE(is_question("Socrates is a man."));
  CHECK(strip_comment("  All men are mortal.  # note ") == "All men are mortal.");
  CHECK(strip_comment("trigger: when * asked * then \"# 1\".") == "trigger: when * asked * then \"# 1\".");
}
