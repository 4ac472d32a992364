#pragma once

// Question answering over a session: direct lookup, then syllogistic
// closure, then abduction. Definite verdicts come only from asserted or
// deduced support; abductive support yields Unknown with a Plausible
// modality and the suggested answer in the trace.

#include "exigraph/abduction.hpp"
#include "exigraph/agency.hpp"
#include "exigraph/kb.hpp"
#include "exigraph/meaning_lang.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace exigraph {

struct SessionFlags
{
  bool existential_import = false;
  std::uint64_t seed = 0;
  bool trace = false;
};

/// Everything a dialogue owns: the KB plus lexicon, rules and triggers.
class Session
{
public:
  KnowledgeBase kb;
  Lexicon lexicon = Lexicon::english();
  std::vector<DefeasibleRule> rules;
  std::vector<Trigger> triggers;
  SessionFlags flags;
  std::vector<std::string> history;

  struct Applied
  {
    std::uint64_t revision = 0;
    std::vector<Aim> aims;
  };

  /// Records a parsed statement; throws KbError / LexiconError on rejection.
  Applied apply(const StatementAst& statement);
  /// Parses then applies one statement line.
  Applied apply_line(std::string_view line);

  /// Counts statements that changed the session.
  std::uint64_t revision() const noexcept { return revision_; }

private:
  std::uint64_t revision_ = 0;
};

enum class Modality { Proven, Plausible, None };

std::string_view to_string(Modality m) noexcept;

struct TraceStep
{
  std::string operation;
  std::string inputs;
  std::string output;
  ProvenanceKind provenance = ProvenanceKind::Asserted;
  friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

struct Answer
{
  Value3 verdict = Value3::Unknown;
  Modality modality = Modality::None;
  std::vector<TraceStep> trace;
  friend bool operator==(const Answer&, const Answer&) = default;
};

/// Answers against a private copy of the session KB; the session is not
/// modified. When `workspace` is given it receives the final working KB.
Answer answer(const QuestionAst& question, const Session& session, KnowledgeBase* workspace = nullptr);

/// Answers independent questions concurrently over one snapshot.
std::vector<Answer> answer_all(const std::vector<QuestionAst>& questions, const Session& session);

/// "yes (proven)", "unknown (plausible)", "unknown"; then numbered trace
/// lines when `with_trace`.
std::string format_answer(const Answer& a, bool with_trace);

/// Human-readable rendering of any KB item.
std::string describe_item(const KnowledgeBase& kb, ItemId id);

} // namespace exigraph
