#pragma once

// Membership conjecture from common properties, defeasible SPO rules and
// set generalization. Nothing here ever writes a definite value: every
// abduced item carries Unknown and Abduced provenance.

#include "exigraph/kb.hpp"

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace exigraph {

inline constexpr std::string_view kVarX = "X";
inline constexpr std::string_view kVarY = "Y";

inline bool is_variable(std::string_view slot) { return slot == kVarX || slot == kVarY; }

/// Subject / verb phrase / object. Subject and object slots hold either a
/// canonical label or a variable ("X", "Y").
struct SpoTemplate
{
  std::string subject;
  std::string verb;
  std::string object;
  friend auto operator<=>(const SpoTemplate&, const SpoTemplate&) = default;
};

struct DefeasibleRule
{
  std::string name;
  SpoTemplate premise;
  SpoTemplate conclusion;
  bool defeasible = true;

  /// Throws std::invalid_argument when the conclusion uses a variable that
  /// the premise does not bind.
  static DefeasibleRule make(SpoTemplate premise, SpoTemplate conclusion);
  friend bool operator==(const DefeasibleRule&, const DefeasibleRule&) = default;
};

struct MembershipClaim
{
  EntityId element;
  EntityId set;
  friend auto operator<=>(const MembershipClaim&, const MembershipClaim&) = default;
};

/// Lexicographic: shared properties first, then supporting members.
struct HypothesisScore
{
  int shared_property_count = 0;
  int supporting_member_count = 0;
  friend auto operator<=>(const HypothesisScore&, const HypothesisScore&) = default;
};

struct Hypothesis
{
  std::variant<MembershipClaim, CategoricalProposition> claim;
  std::vector<ItemId> evidence;
  HypothesisScore score;

  static constexpr Value3 value() noexcept { return Value3::Unknown; }
};

/// A property an entity can hold: an outgoing True edge (verb, object) or a
/// True membership (empty verb, set).
struct Property
{
  std::string verb;
  EntityId object;
  friend auto operator<=>(const Property&, const Property&) = default;
};

std::string describe(const KnowledgeBase& kb, const Property& p);

/// Every property `x` holds, with the id of the item that carries it.
std::vector<std::pair<Property, ItemId>> properties_of(const KnowledgeBase& kb, EntityId x);

/// Membership conjectures for `x`, best first (score descending, then set
/// label).
std::vector<Hypothesis> abduce_membership(EntityId x, const KnowledgeBase& kb);

/// Adds the conclusion of every rule for every matching True or Abduced
/// premise edge, iterating until nothing new appears. Returns the number of
/// edges added.
std::size_t apply_rules(const std::vector<DefeasibleRule>& rules, KnowledgeBase& kb);

struct Generalization
{
  std::string set_label;
  EntityId set;
  std::vector<Hypothesis> memberships;
  std::vector<Property> shared;
};

class TooFewElementsError : public std::invalid_argument
{
public:
  TooFewElementsError() : std::invalid_argument("generalize needs at least two elements") {}
};

/// Proposes a set for elements sharing at least one property and records an
/// Unknown membership for each. Label comes from the first shared property.
std::optional<Generalization> generalize(const std::vector<EntityId>& elements, KnowledgeBase& kb);

} // namespace exigraph
