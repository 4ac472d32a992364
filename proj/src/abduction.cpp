#include "exigraph/abduction.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace exigraph {

namespace {

std::set<Property> property_set(const KnowledgeBase& kb, EntityId x)
{
  std::set<Property> out;
  for (const auto& [p, _] : properties_of(kb, x))
    out.insert(p);
  return out;
}

std::string slug(std::string_view text)
{
  std::string out(text);
  std::replace(out.begin(), out.end(), ' ', '-');
  return out;
}

} // namespace

DefeasibleRule DefeasibleRule::make(SpoTemplate premise, SpoTemplate conclusion)
{
  auto binds = [&premise](const std::string& slot) {
    return !is_variable(slot) || slot == premise.subject || slot == premise.object;
  };
  if (!binds(conclusion.subject) || !binds(conclusion.object))
    throw std::invalid_argument("rule conclusion uses a variable not bound by its premise");
  auto side = [](const SpoTemplate& t) { return t.subject + " " + t.verb + " " + t.object; };
  std::string name = side(premise) + " => " + side(conclusion);
  return DefeasibleRule{std::move(name), std::move(premise), std::move(conclusion), true};
}

std::string describe(const KnowledgeBase& kb, const Property& p)
{
  if (p.verb.empty())
    return "is a " + kb.label(p.object);
  return p.verb + " " + kb.label(p.object);
}

std::vector<std::pair<Property, ItemId>> properties_of(const KnowledgeBase& kb, EntityId x)
{
  std::vector<std::pair<Property, ItemId>> out;
  for (const auto* e : kb.edges())
    if (e->from == x && e->value == Value3::True)
      out.push_back({Property{e->name, e->to}, e->id});
  for (const auto* m : kb.memberships())
    if (m->element == x && m->value == Value3::True)
      out.push_back({Property{{}, m->set}, m->id});
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Hypothesis> abduce_membership(EntityId x, const KnowledgeBase& kb)
{
  const auto own = properties_of(kb, x);
  std::vector<Hypothesis> out;
  for (const Entity& set : kb.entities()) {
    if (set.id == x || is_definite(kb.exists(x, set.id)))
      continue;
    const auto members = kb.members_of(set.id);
    if (members.empty())
      continue;

    std::set<Property> common = property_set(kb, members.front());
    for (std::size_t i = 1; i < members.size() && !common.empty(); ++i) {
      std::set<Property> next;
      const auto theirs = property_set(kb, members[i]);
      std::set_intersection(common.begin(), common.end(), theirs.begin(), theirs.end(),
                            std::inserter(next, next.begin()));
      common = std::move(next);
    }

    std::set<Property> shared;
    std::set<ItemId> evidence;
    for (const auto& [p, id] : own)
      if (common.contains(p)) {
        shared.insert(p);
        evidence.insert(id);
      }
    if (shared.empty())
      continue;
    for (EntityId member : members)
      for (const auto& [p, id] : properties_of(kb, member))
        if (shared.contains(p))
          evidence.insert(id);

    out.push_back(Hypothesis{MembershipClaim{x, set.id},
                             {evidence.begin(), evidence.end()},
                             {static_cast<int>(shared.size()), static_cast<int>(members.size())}});
  }
  std::stable_sort(out.begin(), out.end(), [&kb](const Hypothesis& a, const Hypothesis& b) {
    if (a.score != b.score)
      return a.score > b.score;
    return kb.label(std::get<MembershipClaim>(a.claim).set) < kb.label(std::get<MembershipClaim>(b.claim).set);
  });
  return out;
}

std::size_t apply_rules(const std::vector<DefeasibleRule>& rules, KnowledgeBase& kb)
{
  std::size_t added = 0;
  for (;;) {
    struct Pending
    {
      std::string subject, verb, object;
      std::vector<ItemId> sources;
    };
    std::vector<Pending> pending;
    for (const auto& rule : rules) {
      const ItemId rule_id = kb.register_meaning(rule.name);
      for (const auto* e : kb.edges()) {
        if (e->name != rule.premise.verb)
          continue;
        if (e->value != Value3::True && e->provenance.kind != ProvenanceKind::Abduced)
          continue;
        std::map<std::string, std::string, std::less<>> binding;
        auto match = [&](const std::string& slot, EntityId id) {
          const std::string& label = kb.label(id);
          if (!is_variable(slot))
            return slot == label;
          auto [it, inserted] = binding.emplace(slot, label);
          return inserted || it->second == label;
        };
        if (!match(rule.premise.subject, e->from) || !match(rule.premise.object, e->to))
          continue;
        auto fill = [&](const std::string& slot) { return is_variable(slot) ? binding.at(slot) : slot; };
        pending.push_back({fill(rule.conclusion.subject), rule.conclusion.verb, fill(rule.conclusion.object),
                           {rule_id, e->id}});
      }
    }

    std::size_t round = 0;
    for (auto& p : pending) {
      const EntityId from = kb.upsert_entity(p.subject).id;
      const EntityId to = kb.upsert_entity(p.object).id;
      if (kb.edge(p.verb, from, to))
        continue;
      kb.assert_edge(p.verb, from, to, Value3::Unknown, Provenance::abduced(std::move(p.sources)));
      ++round;
    }
    if (round == 0)
      return added;
    added += round;
  }
}

std::optional<Generalization> generalize(const std::vector<EntityId>& elements, KnowledgeBase& kb)
{
  if (elements.size() < 2)
    throw TooFewElementsError();

  std::set<Property> common = property_set(kb, elements.front());
  for (std::size_t i = 1; i < elements.size(); ++i) {
    std::set<Property> next;
    const auto theirs = property_set(kb, elements[i]);
    std::set_intersection(common.begin(), common.end(), theirs.begin(), theirs.end(), std::inserter(next, next.begin()));
    common = std::move(next);
  }
  if (common.empty())
    return std::nullopt;

  std::vector<Property> shared(common.begin(), common.end());
  // Edges before memberships, then by text, so the label is id-independent.
  std::sort(shared.begin(), shared.end(), [&kb](const Property& a, const Property& b) {
    if (a.verb.empty() != b.verb.empty())
      return !a.verb.empty();
    return describe(kb, a) < describe(kb, b);
  });
  const Property& first = shared.front();
  std::string label = first.verb.empty() ? "member-of-" + slug(kb.label(first.object))
                                         : slug(first.verb) + "-" + slug(kb.label(first.object));

  Generalization g;
  g.set_label = label;
  g.set = kb.upsert_entity(label).id;
  g.shared = shared;
  const HypothesisScore score{static_cast<int>(shared.size()), static_cast<int>(elements.size())};
  for (EntityId e : elements) {
    std::vector<ItemId> evidence;
    for (const auto& [p, id] : properties_of(kb, e))
      if (common.contains(p))
        evidence.push_back(id);
    try {
      kb.assert_membership(e, g.set, Value3::Unknown, Provenance::abduced(evidence));
    } catch (const OverrideConflictError&) {
      continue;
    }
    g.memberships.push_back(Hypothesis{MembershipClaim{e, g.set}, std::move(evidence), score});
  }
  return g;
}

} // namespace exigraph
