#pragma once

// KB files are written in the controlled language itself, one statement per
// line, grouped as lexicon, rules, triggers, memberships, categoricals,
// relation edges, each group sorted. Only asserted facts are written;
// derived items are recomputed on demand.

#include "exigraph/qa.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

namespace exigraph {

class IoError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

class LoadError : public std::runtime_error
{
public:
  LoadError(std::size_t line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line)
  {
  }
  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// Thrown for asserted facts the grammar cannot express (non-True values).
class SerializationError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

std::string serialize_kb(const Session& session);
void save_kb(const Session& session, const std::filesystem::path& path);

/// Loads statements into `session`. All-or-nothing: on error the session is
/// untouched. Lexicon lines take effect before any other line. Returns the
/// session revision afterwards.
std::uint64_t load_kb_text(Session& session, std::string_view text);
std::uint64_t load_kb(Session& session, const std::filesystem::path& path);

} // namespace exigraph
