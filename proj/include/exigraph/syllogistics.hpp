#pragma once

// Categorical propositions, the valid-mood table and forward-chaining
// closure over the propositions stored in a KnowledgeBase.

#include "exigraph/kb.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace exigraph {

/// The three terms of a syllogism.
enum class Term { Subject, Middle, Predicate };

struct Mood
{
  /// 1: M-P, S-M   2: P-M, S-M   3: M-P, M-S   4: P-M, M-S
  int figure = 1;
  /// major premise, minor premise, conclusion
  std::array<Form, 3> forms{Form::A, Form::A, Form::A};
  bool requires_import = false;
  /// Term whose non-emptiness makes an import-requiring mood valid.
  std::optional<Term> restricted_term;

  /// e.g. "AAA-1"
  std::string name() const;
  friend bool operator==(const Mood&, const Mood&) = default;
};

class InvalidMoodError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// True when the syllogism (figure, forms) is valid. With `existential_import`
/// every term is assumed non-empty. Decided by enumerating which of the eight
/// Venn regions of S, M, P are inhabited.
bool mood_is_valid(int figure, const std::array<Form, 3>& forms, bool existential_import);

/// The moods that are valid without import (15), or the valid moods under
/// existential import (24; those needing import are flagged).
const std::vector<Mood>& valid_moods(bool existential_import);

std::string render_proposition(const KnowledgeBase& kb, const CategoricalProposition& p);

/// True if stored; False if a counterexample or a contradicting stored
/// proposition exists (checked first); Unknown otherwise.
Value3 eval_proposition(const KnowledgeBase& kb, const CategoricalProposition& p);

/// Why eval_proposition returned False, as the ids of the items involved.
std::vector<ItemId> counterexample(const KnowledgeBase& kb, const CategoricalProposition& p);

/// Applies one mood to two premises. Returns nullopt when the premises do not
/// fit the mood's figure or when an import-requiring mood's restricted term
/// has no known-True member. Throws InvalidMoodError for a mood that is not
/// in the table.
std::optional<CategoricalProposition> infer_syllogism(const KnowledgeBase& kb, const CategoricalProposition& major,
                                                      const CategoricalProposition& minor, const Mood& mood);

/// Saturates the stored propositions under the valid moods. Each derived
/// proposition is stored as Deduced (sources: both premises). Returns the
/// number of propositions added.
std::size_t closure(KnowledgeBase& kb, bool existential_import = false);

struct Contradiction
{
  CategoricalProposition proposition;
  std::vector<ItemId> evidence;
};

/// Stored propositions that are also refuted by a counterexample.
std::vector<Contradiction> contradictions(const KnowledgeBase& kb);

} // namespace exigraph
