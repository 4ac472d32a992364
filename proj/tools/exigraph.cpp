// exigraph command line: repl, ask, check.
//
// Exit codes: 0 ok, 1 parse or I/O error, 2 contradiction found by `check`.

#include "exigraph/persistence.hpp"
#include "exigraph/qa.hpp"
#include "exigraph/repl.hpp"
#include "exigraph/syllogistics.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

using namespace exigraph;

int load_into(Session& session, const std::string& path)
{
  if (path.empty())
    return 0;
  try {
    load_kb(session, path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << path << ": " << e.what() << '\n';
    return 1;
  }
  return 0;
}

int run_check(Session& session)
{
  KnowledgeBase work = session.kb;
  const std::size_t added = closure(work, session.flags.existential_import);
  std::cout << "closure: " << added << " deduced\n";
  const auto found = contradictions(work);
  for (const auto& c : found) {
    std::cout << "contradiction: " << render_proposition(work, c.proposition) << " refuted by ";
    for (std::size_t i = 0; i < c.evidence.size(); ++i)
      std::cout << (i ? "; " : "") << describe_item(work, c.evidence[i]);
    std::cout << '\n';
  }
  if (found.empty()) {
    std::cout << "consistent\n";
    return 0;
  }
  return 2;
}

} // namespace

int main(int argc, char** argv)
{
  std::ios::sync_with_stdio(false);
  std::cout << std::unitbuf;

  CLI::App app{"Three-valued set-theoretic knowledge engine"};
  app.require_subcommand(1);

  Session session;
  std::string kb_path;
  std::string import = "off";
  auto add_flags = [&](CLI::App* cmd) {
    cmd->add_option("--existential-import", import, "Assume set terms are non-empty")
        ->check(CLI::IsMember({"on", "off"}));
    cmd->add_option("--seed", session.flags.seed, "Seed for free choice");
  };

  auto* repl = app.add_subcommand("repl", "Interactive dialogue");
  repl->add_option("--kb", kb_path, "Knowledge base file to load first");
  add_flags(repl);

  std::string question;
  auto* ask = app.add_subcommand("ask", "Answer one question");
  ask->add_option("question", question, "Question ending in '?'")->required();
  ask->add_option("--kb", kb_path, "Knowledge base file")->required();
  ask->add_flag("--trace", session.flags.trace, "Print the proof / evidence trace");
  add_flags(ask);

  auto* check = app.add_subcommand("check", "Run closure and report contradictions");
  check->add_option("--kb", kb_path, "Knowledge base file")->required();
  add_flags(check);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }
  session.flags.existential_import = import == "on";

  if (int rc = load_into(session, kb_path))
    return rc;

  if (*repl)
    return Repl(session, std::cin, std::cout).run();

  if (*check)
    return run_check(session);

  try {
    const Answer a = answer(parse_question(question, session.lexicon), session);
    std::cout << format_answer(a, session.flags.trace);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
