#include "exigraph/persistence.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace exigraph {

namespace {

std::string lowered_prefix(std::string_view s, std::size_t n)
{
  std::string out(s.substr(0, std::min(n, s.size())));
  for (char& c : out)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

void append_sorted(std::ostringstream& out, std::vector<std::string> lines)
{
  std::sort(lines.begin(), lines.end());
  lines.erase(std::unique(lines.begin(), lines.end()), lines.end());
  for (const auto& line : lines)
    out << line << '\n';
}

} // namespace

std::string serialize_kb(const Session& session)
{
  const KnowledgeBase& kb = session.kb;
  auto term = [&](EntityId id) { return session.lexicon.canonical(kb.label(id)); };

  std::ostringstream out;

  std::vector<std::string> lines;
  for (const auto& [surface, canonical] : session.lexicon.entries())
    lines.push_back(render(StatementAst{LexiconStmt{surface, canonical}}));
  append_sorted(out, std::move(lines));

  lines.clear();
  for (const auto& rule : session.rules)
    lines.push_back(render(StatementAst{RuleStmt{rule}}));
  append_sorted(out, std::move(lines));

  lines.clear();
  for (const auto& trigger : session.triggers)
    lines.push_back(render(StatementAst{TriggerStmt{trigger.pattern, trigger.reaction}}));
  append_sorted(out, std::move(lines));

  lines.clear();
  for (const auto* m : kb.memberships()) {
    if (m->provenance.kind != ProvenanceKind::Asserted)
      continue;
    if (m->value != Value3::True)
      throw SerializationError("cannot write membership '" + kb.label(m->element) + " in " + kb.label(m->set) +
                               "' with value " + std::string(to_string(m->value)));
    lines.push_back(render(StatementAst{MembershipStmt{term(m->element), term(m->set)}}));
  }
  append_sorted(out, std::move(lines));

  lines.clear();
  for (const auto* r : kb.propositions())
    if (r->provenance.kind == ProvenanceKind::Asserted)
      lines.push_back(render(StatementAst{
          CategoricalStmt{r->proposition.form, term(r->proposition.subject), term(r->proposition.predicate)}}));
  append_sorted(out, std::move(lines));

  lines.clear();
  for (const auto* e : kb.edges()) {
    if (e->provenance.kind != ProvenanceKind::Asserted)
      continue;
    if (e->value != Value3::True)
      throw SerializationError("cannot write edge '" + kb.label(e->from) + " " + e->name + " " + kb.label(e->to) +
                               "' with value " + std::string(to_string(e->value)));
    lines.push_back(render(StatementAst{SpoStmt{term(e->from), session.lexicon.canonical(e->name), term(e->to)}}));
  }
  append_sorted(out, std::move(lines));
  return out.str();
}

void save_kb(const Session& session, const std::filesystem::path& path)
{
  const std::string text = serialize_kb(session);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out.flush())
    throw IoError("write to '" + path.string() + "' failed");
}

std::uint64_t load_kb_text(Session& session, std::string_view text)
{
  struct Line
  {
    std::size_t number;
    std::string text;
  };
  std::vector<Line> lexicon_lines, other_lines;
  std::istringstream in{std::string(text)};
  std::string raw;
  for (std::size_t number = 1; std::getline(in, raw); ++number) {
    if (!raw.empty() && raw.back() == '\r')
      raw.pop_back();
    std::string body = strip_comment(raw);
    if (body.empty())
      continue;
    if (lowered_prefix(body, 8) == "lexicon:")
      lexicon_lines.push_back({number, raw});
    else
      other_lines.push_back({number, raw});
  }

  Session staged = session;
  for (const auto* group : {&lexicon_lines, &other_lines})
    for (const auto& line : *group) {
      try {
        if (is_question(line.text))
          throw LoadError(line.number, "questions are not allowed in a knowledge base file");
        staged.apply(parse_statement(line.text, staged.lexicon));
      } catch (const LoadError&) {
        throw;
      } catch (const std::exception& e) {
        throw LoadError(line.number, e.what());
      }
    }
  session = std::move(staged);
  return session.revision();
}

std::uint64_t load_kb(Session& session, const std::filesystem::path& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream text;
  text << in.rdbuf();
  return load_kb_text(session, text.str());
}

} // namespace exigraph
