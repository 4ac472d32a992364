#pragma once

// Three-valued truth (strong Kleene).

#include <array>
#include <optional>
#include <ostream>
#include <string_view>

namespace exigraph {

enum class Value3 : unsigned char { Unknown, False, True };

inline constexpr std::array<Value3, 3> kAllValues3 = {Value3::True, Value3::False, Value3::Unknown};

constexpr bool is_definite(Value3 v) noexcept { return v != Value3::Unknown; }

constexpr Value3 from_bool(bool b) noexcept { return b ? Value3::True : Value3::False; }

constexpr Value3 and3(Value3 a, Value3 b) noexcept
{
  if (a == Value3::False || b == Value3::False)
    return Value3::False;
  if (a == Value3::True && b == Value3::True)
    return Value3::True;
  return Value3::Unknown;
}

constexpr Value3 or3(Value3 a, Value3 b) noexcept
{
  if (a == Value3::True || b == Value3::True)
    return Value3::True;
  if (a == Value3::False && b == Value3::False)
    return Value3::False;
  return Value3::Unknown;
}

constexpr Value3 not3(Value3 a) noexcept
{
  switch (a) {
  case Value3::True:
    return Value3::False;
  case Value3::False:
    return Value3::True;
  default:
    return Value3::Unknown;
  }
}

constexpr Value3 implies3(Value3 a, Value3 b) noexcept { return or3(not3(a), b); }

/// Information order: Unknown is below both definite values, which are
/// incomparable with each other.
constexpr bool refines(Value3 coarse, Value3 fine) noexcept
{
  return coarse == Value3::Unknown || coarse == fine;
}

/// `yes`, `no` or `unknown`.
constexpr std::string_view to_string(Value3 v) noexcept
{
  switch (v) {
  case Value3::True:
    return "yes";
  case Value3::False:
    return "no";
  default:
    return "unknown";
  }
}

constexpr std::optional<Value3> parse_value3(std::string_view text) noexcept
{
  if (text == "yes")
    return Value3::True;
  if (text == "no")
    return Value3::False;
  if (text == "unknown")
    return Value3::Unknown;
  return std::nullopt;
}

inline std::ostream& operator<<(std::ostream& out, Value3 v) { return out << to_string(v); }

} // namespace exigraph
