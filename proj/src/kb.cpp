#include "exigraph/kb.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>

namespace exigraph {

std::string_view to_string(ProvenanceKind kind) noexcept
{
  switch (kind) {
  case ProvenanceKind::Asserted:
    return "asserted";
  case ProvenanceKind::Deduced:
    return "deduced";
  default:
    return "abduced";
  }
}

char to_char(Form form) noexcept
{
  static constexpr char kLetters[] = {'A', 'E', 'I', 'O'};
  return kLetters[static_cast<int>(form)];
}

std::string canonical_label(std::string_view text)
{
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

Entity KnowledgeBase::upsert_entity(std::string_view label)
{
  std::string canon = canonical_label(label);
  if (canon.empty())
    throw EmptyLabelError();
  if (auto it = by_label_.find(canon); it != by_label_.end())
    return entities_[it->second.value];
  Entity e{EntityId{static_cast<std::uint32_t>(entities_.size())}, canon};
  entities_.push_back(e);
  by_label_.emplace(std::move(canon), e.id);
  ++revision_;
  return e;
}

std::optional<Entity> KnowledgeBase::find_entity(std::string_view label) const
{
  auto it = by_label_.find(canonical_label(label));
  if (it == by_label_.end())
    return std::nullopt;
  return entities_[it->second.value];
}

const Entity& KnowledgeBase::entity(EntityId id) const
{
  if (id.value >= entities_.size())
    throw KbError("unknown entity id " + std::to_string(id.value));
  return entities_[id.value];
}

bool KnowledgeBase::may_replace(ProvenanceKind existing, ProvenanceKind incoming, std::string_view what)
{
  if (existing == ProvenanceKind::Asserted && incoming == ProvenanceKind::Abduced)
    throw OverrideConflictError("abduced write cannot override asserted " + std::string(what));
  return rank(incoming) >= rank(existing);
}

ItemId KnowledgeBase::assert_membership(EntityId element, EntityId set, Value3 value, Provenance provenance)
{
  entity(element);
  entity(set);
  auto key = std::pair{element, set};
  if (auto it = memberships_.find(key); it != memberships_.end()) {
    auto& old = it->second;
    if (!may_replace(old.provenance.kind, provenance.kind, "membership " + label(element) + " in " + label(set)))
      return old.id;
    if (old.value == value && old.provenance == provenance)
      return old.id;
    old.value = value;
    old.provenance = std::move(provenance);
    ++revision_;
    return old.id;
  }
  ItemId id = next_item();
  memberships_.emplace(key, MembershipAssertion{id, element, set, value, std::move(provenance)});
  ++revision_;
  return id;
}

ItemId KnowledgeBase::assert_edge(std::string_view name, EntityId from, EntityId to, Value3 value, Provenance provenance)
{
  entity(from);
  entity(to);
  std::string canon = canonical_label(name);
  if (canon.empty())
    throw EmptyLabelError();
  auto key = std::tuple{canon, from, to};
  if (auto it = edges_.find(key); it != edges_.end()) {
    auto& old = it->second;
    if (!may_replace(old.provenance.kind, provenance.kind, "edge " + label(from) + " " + canon + " " + label(to)))
      return old.id;
    if (old.value == value && old.provenance == provenance)
      return old.id;
    old.value = value;
    old.provenance = std::move(provenance);
    ++revision_;
    return old.id;
  }
  ItemId id = next_item();
  edges_.emplace(std::move(key), RelationEdge{id, canon, from, to, value, std::move(provenance)});
  ++revision_;
  return id;
}

ItemId KnowledgeBase::assert_proposition(const CategoricalProposition& prop, Provenance provenance,
                                         std::string justification)
{
  entity(prop.subject);
  entity(prop.predicate);
  if (prop.subject == prop.predicate)
    throw InvalidPropositionError("proposition subject and predicate are both '" + label(prop.subject) + "'");
  if (auto it = propositions_.find(prop); it != propositions_.end()) {
    auto& old = it->second;
    if (!may_replace(old.provenance.kind, provenance.kind, "proposition"))
      return old.id;
    if (old.provenance == provenance && old.justification == justification)
      return old.id;
    old.provenance = std::move(provenance);
    old.justification = std::move(justification);
    ++revision_;
    return old.id;
  }
  ItemId id = next_item();
  propositions_.emplace(prop, PropositionRecord{id, prop, std::move(provenance), std::move(justification)});
  ++revision_;
  return id;
}

ItemId KnowledgeBase::register_meaning(std::string_view name, RepresentationKind kind)
{
  if (auto it = meanings_.find(name); it != meanings_.end())
    return it->second.id;
  ItemId id = next_item();
  meanings_.emplace(std::string(name), MeaningRecord{id, std::string(name), kind});
  ++revision_;
  return id;
}

const MembershipAssertion* KnowledgeBase::membership(EntityId element, EntityId set) const
{
  auto it = memberships_.find(std::pair{element, set});
  return it == memberships_.end() ? nullptr : &it->second;
}

const RelationEdge* KnowledgeBase::edge(std::string_view name, EntityId from, EntityId to) const
{
  auto it = edges_.find(std::tuple{canonical_label(name), from, to});
  return it == edges_.end() ? nullptr : &it->second;
}

const PropositionRecord* KnowledgeBase::proposition(const CategoricalProposition& prop) const
{
  auto it = propositions_.find(prop);
  return it == propositions_.end() ? nullptr : &it->second;
}

const MeaningRecord* KnowledgeBase::meaning(std::string_view name) const
{
  auto it = meanings_.find(name);
  return it == meanings_.end() ? nullptr : &it->second;
}

std::vector<const MembershipAssertion*> KnowledgeBase::memberships() const
{
  std::vector<const MembershipAssertion*> out;
  for (const auto& [_, m] : memberships_)
    out.push_back(&m);
  return out;
}

std::vector<const RelationEdge*> KnowledgeBase::edges() const
{
  std::vector<const RelationEdge*> out;
  for (const auto& [_, e] : edges_)
    out.push_back(&e);
  return out;
}

std::vector<const PropositionRecord*> KnowledgeBase::propositions() const
{
  std::vector<const PropositionRecord*> out;
  for (const auto& [_, p] : propositions_)
    out.push_back(&p);
  return out;
}

std::vector<const MeaningRecord*> KnowledgeBase::meanings() const
{
  std::vector<const MeaningRecord*> out;
  for (const auto& [_, m] : meanings_)
    out.push_back(&m);
  return out;
}

std::vector<EntityId> KnowledgeBase::members_of(EntityId set) const
{
  std::vector<EntityId> out;
  for (const auto& [key, m] : memberships_)
    if (key.second == set && m.value == Value3::True)
      out.push_back(key.first);
  std::sort(out.begin(), out.end(), [this](EntityId a, EntityId b) { return label(a) < label(b); });
  return out;
}

Value3 KnowledgeBase::exists(EntityId element, EntityId context_set) const
{
  const auto* m = membership(element, context_set);
  return m ? m->value : Value3::Unknown;
}

std::optional<Value3> KnowledgeBase::degree_walk(EntityId node, EntityId root, std::vector<bool>& on_path) const
{
  // nullopt while no chain to the root has been seen.
  std::optional<Value3> acc;
  auto fold = [&acc](Value3 v) { acc = acc ? or3(*acc, v) : v; };

  on_path[node.value] = true;
  auto first = memberships_.lower_bound(std::pair{node, EntityId{0}});
  for (auto it = first; it != memberships_.end() && it->first.first == node; ++it) {
    const auto& m = it->second;
    if (m.set == root)
      fold(m.value);
    else if (!on_path[m.set.value])
      if (auto rest = degree_walk(m.set, root, on_path))
        fold(and3(m.value, *rest));
    if (acc == Value3::True)
      break;
  }
  on_path[node.value] = false;
  return acc;
}

bool KnowledgeBase::reaches_cycle(EntityId element, EntityId root) const
{
  // Some walk from element revisits a node iff a cycle that avoids the root
  // is reachable from it.
  enum Mark : char { None, Open, Done };
  std::vector<Mark> mark(entities_.size(), None);
  std::function<bool(EntityId)> visit = [&](EntityId node) {
    mark[node.value] = Open;
    auto first = memberships_.lower_bound(std::pair{node, EntityId{0}});
    for (auto it = first; it != memberships_.end() && it->first.first == node; ++it) {
      const EntityId next = it->second.set;
      if (next == root)
        continue;
      if (mark[next.value] == Open || (mark[next.value] == None && visit(next)))
        return true;
    }
    mark[node.value] = Done;
    return false;
  };
  return visit(element);
}

Value3 KnowledgeBase::existence_degree(EntityId element, EntityId root) const
{
  entity(element);
  entity(root);
  if (element == root)
    return Value3::True;
  std::vector<bool> on_path(entities_.size(), false);
  auto chains = degree_walk(element, root, on_path);
  if (chains == Value3::True)
    return Value3::True;
  if (reaches_cycle(element, root))
    return Value3::Unknown; // or3 of anything short of True with Unknown
  return chains.value_or(Value3::Unknown);
}

Value3 KnowledgeBase::perceives(EntityId observer, EntityId object) const
{
  std::optional<Value3> acc;
  for (const auto& [key, e] : edges_)
    if (e.from == observer && e.to == object)
      acc = acc ? or3(*acc, e.value) : e.value;
  return acc.value_or(Value3::Unknown);
}

std::vector<Entity> KnowledgeBase::meta_sets() const
{
  std::set<EntityId> has_members;
  for (const auto& [key, m] : memberships_)
    if (m.value != Value3::False)
      has_members.insert(key.second);

  std::set<EntityId> result;
  for (const auto& [key, m] : memberships_)
    if (m.value != Value3::False && has_members.contains(key.first))
      result.insert(key.second);

  std::vector<Entity> out;
  for (EntityId id : result)
    out.push_back(entity(id));
  std::sort(out.begin(), out.end(), [](const Entity& a, const Entity& b) { return a.label < b.label; });
  return out;
}

std::optional<ProvenanceKind> KnowledgeBase::item_kind(ItemId id) const
{
  for (const auto& [_, m] : memberships_)
    if (m.id == id)
      return m.provenance.kind;
  for (const auto& [_, e] : edges_)
    if (e.id == id)
      return e.provenance.kind;
  for (const auto& [_, p] : propositions_)
    if (p.id == id)
      return p.provenance.kind;
  for (const auto& [_, m] : meanings_)
    if (m.id == id)
      return ProvenanceKind::Asserted;
  return std::nullopt;
}

std::optional<RepresentationKind> KnowledgeBase::representation(ItemId id) const
{
  for (const auto& [_, m] : meanings_)
    if (m.id == id)
      return m.kind;
  if (item_kind(id))
    return RepresentationKind::Datum;
  return std::nullopt;
}

bool KnowledgeBase::contains_item(ItemId id) const { return item_kind(id).has_value(); }

std::size_t KnowledgeBase::retract(ItemId id)
{
  std::set<ItemId> removed{id};
  auto cites_removed = [&removed](const Provenance& p) {
    return std::any_of(p.sources.begin(), p.sources.end(), [&](ItemId s) { return removed.contains(s); });
  };

  std::size_t count = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    auto sweep = [&](auto& container, auto&& get_prov, auto&& get_id) {
      for (auto it = container.begin(); it != container.end();) {
        const ItemId item = get_id(it->second);
        if (removed.contains(item) || cites_removed(get_prov(it->second))) {
          removed.insert(item);
          it = container.erase(it);
          ++count;
          changed = true;
        } else {
          ++it;
        }
      }
    };
    auto prov = [](const auto& x) -> const Provenance& { return x.provenance; };
    auto ident = [](const auto& x) { return x.id; };
    sweep(memberships_, prov, ident);
    sweep(edges_, prov, ident);
    sweep(propositions_, prov, ident);
    static const Provenance kNone;
    sweep(meanings_, [](const auto&) -> const Provenance& { return kNone; }, ident);
  }
  if (count > 0)
    ++revision_;
  return count;
}

} // namespace exigraph
