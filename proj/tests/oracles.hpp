#pragma once

// Brute-force reference implementations used only by tests. Each one works
// from definitions (explicit models, explicit enumeration of sequences)
// rather than from the library's algorithms.

#include "exigraph/abduction.hpp"
#include "exigraph/kb.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using namespace exigraph;

// --- categorical syllogisms over explicit universes -------------------------

// An element is described by which of the sets it belongs to (bit i = set i).
inline bool holds(const std::vector<unsigned>& universe, Form form, int s, int p)
{
  bool some_sp = false, some_s_not_p = false;
  for (unsigned e : universe) {
    if (!(e >> s & 1u))
      continue;
    if (e >> p & 1u)
      some_sp = true;
    else
      some_s_not_p = true;
  }
  switch (form) {
  case Form::A:
    return !some_s_not_p;
  case Form::E:
    return !some_sp;
  case Form::I:
    return some_sp;
  default:
    return some_s_not_p;
  }
}

// Calls visit(universe) for every universe of exactly n elements over k sets
// (elements are unordered, so multisets of types suffice).
template <typename Visit>
bool for_each_universe(int n, int k, Visit&& visit)
{
  const unsigned types = 1u << k;
  std::vector<unsigned> universe(n, 0);
  // Non-decreasing sequences enumerate multisets.
  std::function<bool(int, unsigned)> rec = [&](int i, unsigned min_type) -> bool {
    if (i == n)
      return visit(universe);
    for (unsigned t = min_type; t < types; ++t) {
      universe[i] = t;
      if (!rec(i + 1, t))
        return false;
    }
    return true;
  };
  return rec(0, 0);
}

enum : int { S = 0, M = 1, P = 2 };

struct Premises
{
  int major_s, major_p, minor_s, minor_p;
};

inline Premises figure_terms(int figure)
{
  switch (figure) {
  case 1:
    return {M, P, S, M};
  case 2:
    return {P, M, S, M};
  case 3:
    return {M, P, M, S};
  default:
    return {P, M, M, S};
  }
}

/// Size of the smallest countermodel with at most `max_size` elements, or
/// nullopt if none exists. With `import`, every term must be non-empty.
inline std::optional<int> smallest_countermodel(int figure, const std::array<Form, 3>& forms, bool import,
                                                int max_size = 4)
{
  const Premises t = figure_terms(figure);
  for (int n = 0; n <= max_size; ++n) {
    bool found = false;
    for_each_universe(n, 3, [&](const std::vector<unsigned>& u) {
      if (import)
        for (int term : {S, M, P})
          if (std::none_of(u.begin(), u.end(), [term](unsigned e) { return e >> term & 1u; }))
            return true;
      if (holds(u, forms[0], t.major_s, t.major_p) && holds(u, forms[1], t.minor_s, t.minor_p) &&
          !holds(u, forms[2], S, P)) {
        found = true;
        return false;
      }
      return true;
    });
    if (found)
      return n;
  }
  return std::nullopt;
}

struct MoodKey
{
  int figure;
  std::array<Form, 3> forms;
  friend auto operator<=>(const MoodKey&, const MoodKey&) = default;
};

inline std::set<MoodKey> oracle_valid_moods(bool import)
{
  std::set<MoodKey> out;
  constexpr std::array<Form, 4> forms = {Form::A, Form::E, Form::I, Form::O};
  for (int figure = 1; figure <= 4; ++figure)
    for (Form a : forms)
      for (Form b : forms)
        for (Form c : forms)
          if (!smallest_countermodel(figure, {a, b, c}, import))
            out.insert({figure, {a, b, c}});
  return out;
}

/// A categorical sentence over set indices.
struct Sentence
{
  Form form;
  int s;
  int p;
};

/// True when `conclusion` holds in every universe of up to `max_size`
/// elements (over `k` sets) satisfying the premises and the non-emptiness
/// constraints.
inline bool entails(int k, const std::vector<Sentence>& premises, const Sentence& conclusion,
                    const std::vector<int>& nonempty = {}, int max_size = 3)
{
  for (int n = 0; n <= max_size; ++n) {
    bool ok = for_each_universe(n, k, [&](const std::vector<unsigned>& u) {
      for (int set : nonempty)
        if (std::none_of(u.begin(), u.end(), [set](unsigned e) { return e >> set & 1u; }))
          return true;
      for (const auto& s : premises)
        if (!holds(u, s.form, s.s, s.p))
          return true;
      return holds(u, conclusion.form, conclusion.s, conclusion.p);
    });
    if (!ok)
      return false;
  }
  return true;
}

// --- existence degree -------------------------------------------------------

/// Enumerates every membership walk from `element`: those ending at the
/// root through distinct non-root nodes are chains; those of distinct
/// non-root nodes whose last node has a membership back into the sequence are
/// revisiting walks, each worth Unknown whatever its prefix. No
/// contribution at all is Unknown.
inline Value3 brute_existence(const KnowledgeBase& kb, EntityId element, EntityId root)
{
  if (element == root)
    return Value3::True;
  const auto n = static_cast<std::uint32_t>(kb.entities().size());
  std::optional<Value3> acc;
  auto fold = [&acc](Value3 v) { acc = acc ? or3(*acc, v) : v; };

  // Every sequence of distinct non-root nodes starting at element whose
  // consecutive pairs are memberships, with the and of those links.
  std::vector<std::uint32_t> seq{element.value};
  std::function<void(Value3)> extend = [&](Value3 chain) {
    const EntityId last{seq.back()};
    if (const auto* m = kb.membership(last, root))
      fold(and3(chain, m->value));
    for (std::uint32_t j : seq)
      if (kb.membership(last, EntityId{j}))
        fold(Value3::Unknown);
    for (std::uint32_t next = 0; next < n; ++next) {
      if (next == root.value || std::find(seq.begin(), seq.end(), next) != seq.end())
        continue;
      if (const auto* m = kb.membership(last, EntityId{next})) {
        seq.push_back(next);
        extend(and3(chain, m->value));
        seq.pop_back();
      }
    }
  };
  extend(Value3::True);
  return acc.value_or(Value3::Unknown);
}

// --- abduction --------------------------------------------------------------

struct AbducedClaim
{
  std::string set;
  int shared;
  int members;
  std::set<std::uint64_t> evidence;
  friend bool operator==(const AbducedClaim&, const AbducedClaim&) = default;
};

/// Every (set, property) pair checked explicitly, including all verbs seen
/// anywhere in the KB against all objects.
inline std::vector<AbducedClaim> brute_abduce(const KnowledgeBase& kb, EntityId x)
{
  std::set<std::string> verbs;
  for (const auto* e : kb.edges())
    verbs.insert(e->name);

  auto holds_edge = [&](EntityId who, const std::string& verb, EntityId obj) -> const RelationEdge* {
    const auto* e = kb.edge(verb, who, obj);
    return e && e->value == Value3::True ? e : nullptr;
  };
  auto holds_member = [&](EntityId who, EntityId set) -> const MembershipAssertion* {
    const auto* m = kb.membership(who, set);
    return m && m->value == Value3::True ? m : nullptr;
  };

  std::vector<AbducedClaim> out;
  for (const auto& set : kb.entities()) {
    if (set.id == x || is_definite(kb.exists(x, set.id)))
      continue;
    std::vector<EntityId> members;
    for (const auto& y : kb.entities())
      if (holds_member(y.id, set.id))
        members.push_back(y.id);
    if (members.empty())
      continue;

    AbducedClaim claim{set.label, 0, static_cast<int>(members.size()), {}};
    for (const auto& obj : kb.entities()) {
      for (const auto& verb : verbs) {
        const auto* own = holds_edge(x, verb, obj.id);
        if (!own || !std::all_of(members.begin(), members.end(), [&](EntityId y) { return holds_edge(y, verb, obj.id); }))
          continue;
        ++claim.shared;
        claim.evidence.insert(own->id.value);
        for (EntityId y : members)
          claim.evidence.insert(holds_edge(y, verb, obj.id)->id.value);
      }
      const auto* own = holds_member(x, obj.id);
      if (own && std::all_of(members.begin(), members.end(), [&](EntityId y) { return holds_member(y, obj.id); })) {
        ++claim.shared;
        claim.evidence.insert(own->id.value);
        for (EntityId y : members)
          claim.evidence.insert(holds_member(y, obj.id)->id.value);
      }
    }
    if (claim.shared > 0)
      out.push_back(claim);
  }
  std::sort(out.begin(), out.end(), [](const AbducedClaim& a, const AbducedClaim& b) {
    if (a.shared != b.shared)
      return a.shared > b.shared;
    if (a.members != b.members)
      return a.members > b.members;
    return a.set < b.set;
  });
  return out;
}

// --- random KBs -------------------------------------------------------------

/// A KB of `n` entities named e0.. with random memberships (any value).
inline KnowledgeBase random_membership_graph(std::mt19937_64& rng, int n, double density)
{
  KnowledgeBase kb;
  for (int i = 0; i < n; ++i)
    kb.upsert_entity("e" + std::to_string(i));
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<int> value(0, 2);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (coin(rng) < density)
        kb.assert_membership(EntityId{std::uint32_t(a)}, EntityId{std::uint32_t(b)},
                             kAllValues3[static_cast<std::size_t>(value(rng))], Provenance::asserted());
  return kb;
}

} // namespace oracle
