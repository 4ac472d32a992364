#pragma once

// The existence graph: entities, three-valued membership assertions,
// directed relation edges and stored categorical propositions, each tagged
// with provenance.

#include "exigraph/value3.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

namespace exigraph {

struct EntityId
{
  std::uint32_t value = 0;
  friend auto operator<=>(EntityId, EntityId) = default;
};

struct ItemId
{
  std::uint64_t value = 0;
  friend auto operator<=>(ItemId, ItemId) = default;
};

/// Label of the entity whose existence is axiomatic.
inline constexpr std::string_view kUniverseLabel = "universe";

enum class ProvenanceKind { Asserted, Deduced, Abduced };

std::string_view to_string(ProvenanceKind kind) noexcept;

/// Override rank: Asserted > Deduced > Abduced.
constexpr int rank(ProvenanceKind kind) noexcept
{
  switch (kind) {
  case ProvenanceKind::Asserted:
    return 2;
  case ProvenanceKind::Deduced:
    return 1;
  default:
    return 0;
  }
}

struct Provenance
{
  ProvenanceKind kind = ProvenanceKind::Asserted;
  std::vector<ItemId> sources;

  static Provenance asserted() { return {}; }
  static Provenance deduced(std::vector<ItemId> sources) { return {ProvenanceKind::Deduced, std::move(sources)}; }
  static Provenance abduced(std::vector<ItemId> sources) { return {ProvenanceKind::Abduced, std::move(sources)}; }

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

/// Ground facts are data, a single rule is a meaning, a named collection of
/// rules is knowledge.
enum class RepresentationKind { Datum, Meaning, Knowledge };

struct Entity
{
  EntityId id;
  std::string label;
};

struct MembershipAssertion
{
  ItemId id;
  EntityId element;
  EntityId set;
  Value3 value = Value3::Unknown;
  Provenance provenance;
};

struct RelationEdge
{
  ItemId id;
  std::string name;
  EntityId from; // perceiver / actor
  EntityId to;   // perceived / acted on
  Value3 value = Value3::Unknown;
  Provenance provenance;
};

/// A = all S are P, E = no S are P, I = some S are P, O = some S are not P.
enum class Form { A, E, I, O };

char to_char(Form form) noexcept;

struct CategoricalProposition
{
  Form form = Form::A;
  EntityId subject;
  EntityId predicate;
  friend auto operator<=>(const CategoricalProposition&, const CategoricalProposition&) = default;
};

struct PropositionRecord
{
  ItemId id;
  CategoricalProposition proposition;
  Provenance provenance;
  /// How a deduced proposition was obtained, e.g. a mood name like "AAA-1".
  std::string justification;
};

struct MeaningRecord
{
  ItemId id;
  std::string name;
  RepresentationKind kind = RepresentationKind::Meaning;
};

class KbError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

class EmptyLabelError : public KbError
{
public:
  EmptyLabelError() : KbError("entity label is empty after canonicalization") {}
};

class OverrideConflictError : public KbError
{
public:
  using KbError::KbError;
};

class InvalidPropositionError : public KbError
{
public:
  using KbError::KbError;
};

/// Lowercase (ASCII), trim and collapse internal whitespace.
std::string canonical_label(std::string_view text);

/// In-memory KB. A value type: copies are independent snapshots. Mutation
/// is single-writer; a `const` KB (or a snapshot()) may be read from any
/// number of threads.
class KnowledgeBase
{
public:
  Entity upsert_entity(std::string_view label);
  std::optional<Entity> find_entity(std::string_view label) const;
  const Entity& entity(EntityId id) const;
  const std::vector<Entity>& entities() const noexcept { return entities_; }
  const std::string& label(EntityId id) const { return entity(id).label; }

  ItemId assert_membership(EntityId element, EntityId set, Value3 value, Provenance provenance);
  ItemId assert_edge(std::string_view name, EntityId from, EntityId to, Value3 value, Provenance provenance);
  /// Stores a proposition known to hold. Throws InvalidPropositionError when
  /// subject equals predicate.
  ItemId assert_proposition(const CategoricalProposition& prop, Provenance provenance, std::string justification = {});
  /// Returns the id of the named meaning, registering it if new.
  ItemId register_meaning(std::string_view name, RepresentationKind kind = RepresentationKind::Meaning);

  const MembershipAssertion* membership(EntityId element, EntityId set) const;
  const RelationEdge* edge(std::string_view name, EntityId from, EntityId to) const;
  const PropositionRecord* proposition(const CategoricalProposition& prop) const;
  const MeaningRecord* meaning(std::string_view name) const;

  std::vector<const MembershipAssertion*> memberships() const;
  std::vector<const RelationEdge*> edges() const;
  std::vector<const PropositionRecord*> propositions() const;
  std::vector<const MeaningRecord*> meanings() const;

  /// Known-True members of `set`, in label order.
  std::vector<EntityId> members_of(EntityId set) const;

  Value3 exists(EntityId element, EntityId context_set) const;
  /// Or over all membership chains element -> ... -> root of the and along
  /// each chain; root itself exists axiomatically. A walk that revisits an
  /// entity contributes Unknown.
  Value3 existence_degree(EntityId element, EntityId root) const;
  Value3 perceives(EntityId observer, EntityId object) const;
  /// Sets that have a non-False member which itself has non-False members.
  std::vector<Entity> meta_sets() const;

  bool contains_item(ItemId id) const;
  std::optional<ProvenanceKind> item_kind(ItemId id) const;
  std::optional<RepresentationKind> representation(ItemId id) const;
  /// Removes an item and, transitively, every derived item citing it.
  /// Returns the number of items removed.
  std::size_t retract(ItemId id);

  std::uint64_t revision() const noexcept { return revision_; }
  std::shared_ptr<const KnowledgeBase> snapshot() const { return std::make_shared<const KnowledgeBase>(*this); }
  bool empty() const noexcept { return entities_.empty(); }

private:
  ItemId next_item() { return ItemId{++last_item_}; }
  // Returns true when a write with `incoming` kind may replace `existing`.
  static bool may_replace(ProvenanceKind existing, ProvenanceKind incoming, std::string_view what);
  std::optional<Value3> degree_walk(EntityId node, EntityId root, std::vector<bool>& on_path) const;
  bool reaches_cycle(EntityId element, EntityId root) const;

  std::vector<Entity> entities_;
  std::map<std::string, EntityId, std::less<>> by_label_;
  std::map<std::pair<EntityId, EntityId>, MembershipAssertion> memberships_;
  std::map<std::tuple<std::string, EntityId, EntityId>, RelationEdge, std::less<>> edges_;
  std::map<CategoricalProposition, PropositionRecord> propositions_;
  std::map<std::string, MeaningRecord, std::less<>> meanings_;
  std::uint64_t last_item_ = 0;
  std::uint64_t revision_ = 0;
};

} // namespace exigraph
