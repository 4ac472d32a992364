#pragma once

// Controlled-language front end: statements, rules, lexicon entries,
// triggers and questions, parsed into ASTs and rendered back to canonical
// text.
//
//   <Proper> is a <Noun>.                       membership
//   All|No|Some <Noun> are [not] <Noun>.        A / E / I / O
//   <NounPhrase> <VerbPhrase> <NounPhrase>.     relation edge
//   rule: X <VerbPhrase> Y => X <VerbPhrase> Y.
//   lexicon: <surface> = <canonical>.
//   trigger: when <pattern> then "<aim text>".
//   Is <Proper> a <Noun>?   Are all <Noun> <Noun>?   Are any <Noun> <Noun>?
//   Did|Have <NounPhrase> <VerbPhrase> <NounPhrase>?
//
// Verb phrases end at the first of the prepositions to/at/in/on/with and may
// start with auxiliaries; without a preposition the verb is the word before
// an article, or the middle word of a three-word sentence.

#include "exigraph/abduction.hpp"
#include "exigraph/agency.hpp"
#include "exigraph/kb.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace exigraph {

struct MembershipStmt
{
  std::string element;
  std::string set;
  friend bool operator==(const MembershipStmt&, const MembershipStmt&) = default;
};

struct CategoricalStmt
{
  Form form = Form::A;
  std::string subject;
  std::string predicate;
  friend bool operator==(const CategoricalStmt&, const CategoricalStmt&) = default;
};

struct SpoStmt
{
  std::string subject;
  std::string verb;
  std::string object;
  friend bool operator==(const SpoStmt&, const SpoStmt&) = default;
};

struct RuleStmt
{
  DefeasibleRule rule;
  friend bool operator==(const RuleStmt&, const RuleStmt&) = default;
};

struct LexiconStmt
{
  std::string surface;
  std::string canonical;
  friend bool operator==(const LexiconStmt&, const LexiconStmt&) = default;
};

struct TriggerStmt
{
  TriggerPattern pattern;
  std::string aim;
  friend bool operator==(const TriggerStmt&, const TriggerStmt&) = default;
};

using StatementAst = std::variant<MembershipStmt, CategoricalStmt, SpoStmt, RuleStmt, LexiconStmt, TriggerStmt>;

struct IsAQuestion
{
  std::string element;
  std::string set;
  friend bool operator==(const IsAQuestion&, const IsAQuestion&) = default;
};

struct AreAllQuestion
{
  std::string subject;
  std::string predicate;
  friend bool operator==(const AreAllQuestion&, const AreAllQuestion&) = default;
};

struct AreAnyQuestion
{
  std::string subject;
  std::string predicate;
  friend bool operator==(const AreAnyQuestion&, const AreAnyQuestion&) = default;
};

struct DidSpoQuestion
{
  std::string subject;
  std::string verb;
  std::string object;
  friend bool operator==(const DidSpoQuestion&, const DidSpoQuestion&) = default;
};

using QuestionAst = std::variant<IsAQuestion, AreAllQuestion, AreAnyQuestion, DidSpoQuestion>;

class ParseError : public std::runtime_error
{
public:
  ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& message);

  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

/// A question outside the four supported shapes (or one carrying a
/// presupposition) is refused rather than answered.
class UnsupportedFormError : public ParseError
{
public:
  UnsupportedFormError(std::size_t offset, const std::string& why);
};

class LexiconError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// Surface form -> canonical form. Whole phrases are looked up first, then
/// single words; lookups chase chains to a fixpoint. User entries shadow the
/// optional built-in table of irregular English plurals.
class Lexicon
{
public:
  Lexicon() = default;
  /// Empty user map over the irregular-plural table (men = man, ...).
  static Lexicon english();

  /// Throws LexiconError if the entry would create a cycle.
  void add(std::string_view surface, std::string_view canonical);
  std::string canonical(std::string_view term) const;
  /// User entries only.
  const std::map<std::string, std::string>& entries() const noexcept { return map_; }
  bool empty() const noexcept { return map_.empty() && base_.empty(); }

private:
  const std::string* lookup(const std::string& phrase) const;
  std::string resolve(const std::string& phrase) const;
  bool has_rewrite_cycle() const;
  std::map<std::string, std::string> map_;
  std::map<std::string, std::string> base_;
};

/// Lowercase, collapse spaces, drop articles. No lexicon.
std::string normalize_term(std::string_view text);

bool is_question(std::string_view line);

/// Strips a `#` comment (outside double quotes) and surrounding blanks.
std::string strip_comment(std::string_view line);

StatementAst parse_statement(std::string_view text, const Lexicon& lexicon = {});
QuestionAst parse_question(std::string_view text, const Lexicon& lexicon = {});

std::string render(const StatementAst& ast);
std::string render(const QuestionAst& ast);

} // namespace exigraph
