#pragma once

// Perception-triggered aims, the Task/Goal/Dream classifier and seeded
// free choice among alternatives.

#include "exigraph/value3.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace exigraph {

enum class AimClass { Task, Goal, Dream, Undetermined };

std::string_view to_string(AimClass c) noexcept;

/// (yes, yes) Task; (yes, no) Goal; (no, any) Dream; any unknown input
/// Undetermined.
constexpr AimClass classify_aim(Value3 actions_clear, Value3 resourced) noexcept
{
  if (!is_definite(actions_clear) || !is_definite(resourced))
    return AimClass::Undetermined;
  if (actions_clear == Value3::False)
    return AimClass::Dream;
  return resourced == Value3::True ? AimClass::Task : AimClass::Goal;
}

struct Aim
{
  std::string description;
  Value3 actions_clear = Value3::Unknown;
  Value3 resourced = Value3::Unknown;

  AimClass classification() const noexcept { return classify_aim(actions_clear, resourced); }
  friend bool operator==(const Aim&, const Aim&) = default;
};

inline constexpr std::string_view kWildcard = "*";

/// Slots hold canonical labels or "*". For memberships `verb` is empty,
/// `subject` is the element and `object` the set.
struct TriggerPattern
{
  enum class Kind { Spo, Membership };
  Kind kind = Kind::Spo;
  std::string subject{kWildcard};
  std::string verb;
  std::string object{kWildcard};
  friend bool operator==(const TriggerPattern&, const TriggerPattern&) = default;
};

/// Reaction templates may use {subject}, {verb} and {object}.
struct Trigger
{
  int id = 0;
  TriggerPattern pattern;
  std::string reaction;

  /// Throws std::invalid_argument for an all-wildcard pattern.
  static Trigger make(int id, TriggerPattern pattern, std::string reaction);
  friend bool operator==(const Trigger&, const Trigger&) = default;
};

/// A newly perceived membership or edge, by label.
struct ObservedItem
{
  TriggerPattern::Kind kind = TriggerPattern::Kind::Spo;
  std::string subject;
  std::string verb;
  std::string object;
};

bool matches(const TriggerPattern& pattern, const ObservedItem& item);

/// One Aim per matching trigger, in trigger-id order; both aim fields start
/// Unknown.
std::vector<Aim> fire_triggers(const ObservedItem& item, const std::vector<Trigger>& triggers);

class MotivationRanking
{
public:
  MotivationRanking() = default;
  /// Most preferred first. Throws std::invalid_argument on duplicates.
  explicit MotivationRanking(std::vector<std::string> preferences);
  const std::vector<std::string>& preferences() const noexcept { return order_; }

private:
  std::vector<std::string> order_;
};

class EmptyAlternativesError : public std::invalid_argument
{
public:
  EmptyAlternativesError() : std::invalid_argument("choose needs at least one alternative") {}
};

/// Uniform integer in [0, bound) from a mt19937_64 stream seeded with `seed`,
/// by rejection sampling (portable across standard libraries).
std::uint64_t seeded_index(std::uint64_t seed, std::uint64_t bound);

/// Highest-ranked alternative present in the ranking; otherwise a uniform
/// seeded pick.
std::string choose(const std::vector<std::string>& alternatives, const std::optional<MotivationRanking>& ranking,
                   std::uint64_t seed);

} // namespace exigraph
