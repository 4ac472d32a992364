#pragma once

// Random ASTs for round-trip property tests. Vocabulary avoids the grammar's
// function words so every generated AST has exactly one reading.

#include "exigraph/meaning_lang.hpp"

#include <array>
#include <random>
#include <string>

namespace gen {

using namespace exigraph;

inline constexpr std::array<const char*, 16> kNouns = {"socrates", "plato",  "moon",  "athens", "apple",   "garden",
                                                       "tractor",  "driver", "pilot", "greek",  "engineer", "photo",
                                                       "fleet",    "earth",  "cat",   "user"};
inline constexpr std::array<const char*, 8> kVerbs = {"flew", "sees", "lives", "sailed", "painted", "visited", "likes", "owns"};
inline constexpr std::array<const char*, 5> kPrepositions = {"to", "at", "in", "on", "with"};
inline constexpr std::array<const char*, 4> kAuxiliaries = {"has", "was", "have", "will"};

template <typename Array>
std::string pick(std::mt19937_64& rng, const Array& words)
{
  return words[std::uniform_int_distribution<std::size_t>(0, words.size() - 1)(rng)];
}

inline bool coin(std::mt19937_64& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

inline std::string noun_phrase(std::mt19937_64& rng, int max_words = 2)
{
  std::string out = pick(rng, kNouns);
  for (int i = 1; i < max_words && coin(rng, 0.4); ++i)
    out += " " + pick(rng, kNouns);
  return out;
}

inline std::string verb_phrase(std::mt19937_64& rng)
{
  std::string out = coin(rng, 0.3) ? pick(rng, kAuxiliaries) + " " : "";
  out += pick(rng, kVerbs);
  if (coin(rng, 0.6))
    out += " " + pick(rng, kPrepositions);
  return out;
}

inline SpoTemplate rule_side(std::mt19937_64& rng, bool variables_only)
{
  auto slot = [&](std::string_view var) { return variables_only || coin(rng, 0.7) ? std::string(var) : noun_phrase(rng); };
  return {slot(kVarX), verb_phrase(rng), slot(kVarY)};
}

inline StatementAst statement(std::mt19937_64& rng)
{
  switch (std::uniform_int_distribution<int>(0, 5)(rng)) {
  case 0:
    return MembershipStmt{noun_phrase(rng), noun_phrase(rng)};
  case 1: {
    std::string s = noun_phrase(rng), p = noun_phrase(rng);
    return CategoricalStmt{static_cast<Form>(std::uniform_int_distribution<int>(0, 3)(rng)), s, p};
  }
  case 2: {
    std::string s = noun_phrase(rng), v = verb_phrase(rng);
    return SpoStmt{s, v, noun_phrase(rng)};
  }
  case 3: {
    SpoTemplate premise = rule_side(rng, false);
    SpoTemplate conclusion = rule_side(rng, false);
    // Conclusion variables must be bound by the premise.
    if (is_variable(conclusion.subject) && conclusion.subject != premise.subject && conclusion.subject != premise.object)
      conclusion.subject = noun_phrase(rng);
    if (is_variable(conclusion.object) && conclusion.object != premise.subject && conclusion.object != premise.object)
      conclusion.object = noun_phrase(rng);
    return RuleStmt{DefeasibleRule::make(premise, conclusion)};
  }
  case 4: {
    std::string s = noun_phrase(rng), c = noun_phrase(rng);
    while (c == s)
      c = noun_phrase(rng);
    return LexiconStmt{s, c};
  }
  default: {
    TriggerStmt t;
    if (coin(rng)) {
      t.pattern.kind = TriggerPattern::Kind::Membership;
      t.pattern.subject = coin(rng) ? std::string(kWildcard) : noun_phrase(rng);
      t.pattern.object = noun_phrase(rng);
    } else {
      t.pattern.subject = coin(rng) ? std::string(kWildcard) : noun_phrase(rng);
      t.pattern.verb = verb_phrase(rng);
      t.pattern.object = coin(rng) ? std::string(kWildcard) : noun_phrase(rng);
    }
    t.aim = pick(rng, kVerbs) + " " + (coin(rng) ? std::string("{subject}") : noun_phrase(rng));
    return t;
  }
  }
}

inline QuestionAst question(std::mt19937_64& rng)
{
  switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
  case 0: {
    std::string e = noun_phrase(rng);
    return IsAQuestion{e, noun_phrase(rng)};
  }
  case 1: {
    std::string s = noun_phrase(rng);
    return AreAllQuestion{s, pick(rng, kNouns)};
  }
  case 2: {
    std::string s = noun_phrase(rng);
    return AreAnyQuestion{s, pick(rng, kNouns)};
  }
  default: {
    std::string s = noun_phrase(rng), v = verb_phrase(rng);
    return DidSpoQuestion{s, v, noun_phrase(rng)};
  }
  }
}

} // namespace gen
