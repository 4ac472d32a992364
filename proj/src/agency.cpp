#include "exigraph/agency.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <set>

namespace exigraph {

namespace {

bool slot_matches(const std::string& pattern, const std::string& value)
{
  return pattern == kWildcard || pattern == value;
}

void replace_all(std::string& text, std::string_view from, std::string_view to)
{
  for (std::size_t pos = text.find(from); pos != std::string::npos; pos = text.find(from, pos + to.size()))
    text.replace(pos, from.size(), to);
}

} // namespace

std::string_view to_string(AimClass c) noexcept
{
  switch (c) {
  case AimClass::Task:
    return "task";
  case AimClass::Goal:
    return "goal";
  case AimClass::Dream:
    return "dream";
  default:
    return "undetermined";
  }
}

Trigger Trigger::make(int id, TriggerPattern pattern, std::string reaction)
{
  const bool concrete = pattern.subject != kWildcard || pattern.object != kWildcard ||
                        (pattern.kind == TriggerPattern::Kind::Spo && pattern.verb != kWildcard);
  if (!concrete)
    throw std::invalid_argument("trigger pattern needs at least one concrete slot");
  return Trigger{id, std::move(pattern), std::move(reaction)};
}

bool matches(const TriggerPattern& pattern, const ObservedItem& item)
{
  if (pattern.kind != item.kind)
    return false;
  if (!slot_matches(pattern.subject, item.subject) || !slot_matches(pattern.object, item.object))
    return false;
  return pattern.kind == TriggerPattern::Kind::Membership || slot_matches(pattern.verb, item.verb);
}

std::vector<Aim> fire_triggers(const ObservedItem& item, const std::vector<Trigger>& triggers)
{
  std::vector<const Trigger*> ordered;
  for (const auto& t : triggers)
    ordered.push_back(&t);
  std::stable_sort(ordered.begin(), ordered.end(), [](const Trigger* a, const Trigger* b) { return a->id < b->id; });

  std::vector<Aim> out;
  for (const Trigger* t : ordered) {
    if (!matches(t->pattern, item))
      continue;
    std::string text = t->reaction;
    replace_all(text, "{subject}", item.subject);
    replace_all(text, "{verb}", item.verb);
    replace_all(text, "{object}", item.object);
    out.push_back(Aim{std::move(text), Value3::Unknown, Value3::Unknown});
  }
  return out;
}

MotivationRanking::MotivationRanking(std::vector<std::string> preferences) : order_(std::move(preferences))
{
  std::set<std::string> seen;
  for (const auto& p : order_)
    if (!seen.insert(p).second)
      throw std::invalid_argument("duplicate label in motivation ranking: " + p);
}

std::uint64_t seeded_index(std::uint64_t seed, std::uint64_t bound)
{
  if (bound == 0)
    throw std::invalid_argument("seeded_index bound must be positive");
  std::mt19937_64 engine(seed);
  // Largest multiple of bound representable; draws at or above it are rejected.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t draw = engine();
  while (draw >= limit)
    draw = engine();
  return draw % bound;
}

std::string choose(const std::vector<std::string>& alternatives, const std::optional<MotivationRanking>& ranking,
                   std::uint64_t seed)
{
  if (alternatives.empty())
    throw EmptyAlternativesError();
  if (ranking)
    for (const auto& preferred : ranking->preferences())
      if (std::find(alternatives.begin(), alternatives.end(), preferred) != alternatives.end())
        return preferred;
  return alternatives[seeded_index(seed, alternatives.size())];
}

} // namespace exigraph
