#include "exigraph/repl.hpp"

#include "exigraph/persistence.hpp"
#include "exigraph/syllogistics.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace exigraph {

namespace {

std::string trim(std::string_view s)
{
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos)
    return {};
  const auto last = s.find_last_not_of(" \t");
  return std::string(s.substr(first, last - first + 1));
}

} // namespace

int Repl::run()
{
  std::string line;
  while (!quit_ && std::getline(in_, line)) {
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    handle(line);
    out_.flush();
  }
  return 0;
}

bool Repl::handle(std::string_view raw)
{
  const std::string line = strip_comment(raw);
  if (line.empty())
    return true;
  try {
    if (line.front() == ':') {
      command(line);
      return !quit_;
    }
    session_.history.emplace_back(line);
    if (is_question(line)) {
      const Answer a = answer(parse_question(line, session_.lexicon), session_);
      out_ << format_answer(a, session_.flags.trace);
      return true;
    }
    const auto applied = session_.apply(parse_statement(line, session_.lexicon));
    out_ << "ok #" << applied.revision << '\n';
    for (const auto& aim : applied.aims)
      out_ << "aim: " << aim.description << " (" << to_string(aim.classification()) << ")\n";
  } catch (const std::exception& e) {
    out_ << "error: " << e.what() << '\n';
  }
  return true;
}

void Repl::command(std::string_view line)
{
  const auto space = line.find(' ');
  const std::string name(line.substr(0, space));
  const std::string arg = space == std::string_view::npos ? std::string() : trim(line.substr(space + 1));

  if (name == ":quit") {
    quit_ = true;
  } else if (name == ":load") {
    if (arg.empty())
      throw std::invalid_argument(":load needs a file name");
    const auto revision = load_kb(session_, arg);
    out_ << "loaded #" << revision << '\n';
  } else if (name == ":save") {
    if (arg.empty())
      throw std::invalid_argument(":save needs a file name");
    save_kb(session_, arg);
    out_ << "saved " << arg << '\n';
  } else if (name == ":closure") {
    const auto added = closure(session_.kb, session_.flags.existential_import);
    out_ << "closure: " << added << " new\n";
  } else if (name == ":abduce") {
    auto x = session_.kb.find_entity(normalize_term(arg));
    if (!x)
      throw std::invalid_argument("unknown entity '" + arg + "'");
    KnowledgeBase work = session_.kb;
    apply_rules(session_.rules, work);
    const auto hyps = abduce_membership(x->id, work);
    if (hyps.empty())
      out_ << "no hypotheses\n";
    for (const auto& h : hyps) {
      const auto& claim = std::get<MembershipClaim>(h.claim);
      out_ << "hypothesis: " << work.label(claim.element) << " is a " << work.label(claim.set) << " (score "
           << h.score.shared_property_count << "/" << h.score.supporting_member_count << ")\n";
    }
  } else if (name == ":classify") {
    std::istringstream args(arg);
    std::string clear, resourced;
    args >> clear >> resourced;
    auto c = parse_value3(clear);
    auto r = parse_value3(resourced);
    if (!c || !r)
      throw std::invalid_argument(":classify takes two of yes|no|unknown");
    out_ << to_string(classify_aim(*c, *r)) << '\n';
  } else if (name == ":choose") {
    std::vector<std::string> alternatives;
    std::istringstream args(arg);
    for (std::string part; std::getline(args, part, '|');)
      if (auto t = trim(part); !t.empty())
        alternatives.push_back(t);
    const auto chosen = choose(alternatives, std::nullopt, session_.flags.seed);
    out_ << chosen << '\n';
  } else if (name == ":trace") {
    if (arg != "on" && arg != "off")
      throw std::invalid_argument(":trace takes on|off");
    session_.flags.trace = arg == "on";
    out_ << "trace " << arg << '\n';
  } else {
    throw std::invalid_argument("unknown command '" + name + "'");
  }
}

} // namespace exigraph
