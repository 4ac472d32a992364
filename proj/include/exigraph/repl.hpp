#pragma once

#include "exigraph/qa.hpp"

#include <iosfwd>
#include <string_view>

namespace exigraph {

/// Line-oriented dialogue. Statements are asserted and echoed as
/// `ok #<revision>`; questions are answered; `:`-commands are
/// :load FILE, :save FILE, :closure, :abduce ENTITY, :classify CLEAR RESOURCED,
/// :choose A | B | ..., :trace on|off, :quit.
/// Errors are reported per line and the session continues.
class Repl
{
public:
  Repl(Session& session, std::istream& in, std::ostream& out) : session_(session), in_(in), out_(out) {}

  /// Runs until :quit or end of input. Returns the process exit code.
  int run();
  /// Handles one line; returns false on :quit.
  bool handle(std::string_view line);

private:
  void command(std::string_view line);

  Session& session_;
  std::istream& in_;
  std::ostream& out_;
  bool quit_ = false;
};

} // namespace exigraph
