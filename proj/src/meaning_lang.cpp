#include "exigraph/meaning_lang.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <functional>
#include <iterator>
#include <sstream>

namespace exigraph {

namespace {

constexpr std::array<std::string_view, 3> kArticles = {"a", "an", "the"};
constexpr std::array<std::string_view, 5> kPrepositions = {"to", "at", "in", "on", "with"};
constexpr std::array<std::string_view, 14> kAuxiliaries = {"is",  "are",  "was", "were", "be",   "been", "being",
                                                           "has", "have", "had", "do",   "does", "did",  "will"};
constexpr std::array<std::string_view, 12> kPronouns = {"i",  "you", "he", "she",  "it",  "we",
                                                        "me", "him", "her", "us", "they", "them"};
// Change-of-state verbs presuppose a prior state the KB cannot vouch for.
constexpr std::array<std::string_view, 13> kPresupposing = {"stop",    "stopped", "quit",    "ceased",  "cease",
                                                            "start",   "started", "began",   "begun",   "resumed",
                                                            "continue", "still",  "anymore"};

constexpr std::string_view kSupportedShapes =
    "supported questions: 'Is <proper> a <noun>?', 'Are all <noun> <noun>?', 'Are any <noun> <noun>?', "
    "'Did|Have <noun phrase> <verb phrase> <noun phrase>?'";

template <std::size_t N>
bool one_of(const std::array<std::string_view, N>& words, std::string_view w)
{
  return std::find(words.begin(), words.end(), w) != words.end();
}

bool is_article(std::string_view w) { return one_of(kArticles, w); }
bool is_preposition(std::string_view w) { return one_of(kPrepositions, w); }
bool is_auxiliary(std::string_view w) { return one_of(kAuxiliaries, w); }

std::string lower(std::string_view s)
{
  std::string out(s);
  for (char& c : out)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool word_char(unsigned char c)
{
  return std::isalnum(c) || c == '-' || c == '\'' || c == '_' || c == '*' || c >= 0x80;
}

struct Token
{
  std::string text; // lowercased
  std::size_t offset;
};

using Tokens = std::vector<Token>;

// Tokenizes text[begin, end). Any byte that is neither blank nor a word
// character is a parse error.
Tokens tokenize(std::string_view text, std::size_t begin, std::size_t end)
{
  Tokens out;
  std::size_t i = begin;
  while (i < end) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    if (!word_char(c))
      throw ParseError(i, {"word"}, "unexpected character '" + std::string(1, text[i]) + "'");
    std::size_t j = i;
    while (j < end && word_char(static_cast<unsigned char>(text[j])))
      ++j;
    out.push_back({lower(text.substr(i, j - i)), i});
    i = j;
  }
  return out;
}

std::string join(const Tokens& tokens, std::size_t from, std::size_t to, bool drop_articles)
{
  std::string out;
  for (std::size_t i = from; i < to; ++i) {
    if (drop_articles && is_article(tokens[i].text))
      continue;
    if (!out.empty())
      out += ' ';
    out += tokens[i].text;
  }
  return out;
}

std::size_t offset_at(const Tokens& t, std::size_t i, std::size_t fallback)
{
  return i < t.size() ? t[i].offset : fallback;
}

// Noun slot tokens[from, to), articles dropped, lexicon applied.
std::string noun(const Tokens& t, std::size_t from, std::size_t to, std::size_t end_offset, const Lexicon& lex,
                 std::string_view slot_name)
{
  std::string raw = join(t, from, to, true);
  if (raw.empty())
    throw ParseError(offset_at(t, from, end_offset), {std::string(slot_name)},
                     "missing " + std::string(slot_name));
  return lex.canonical(raw);
}

struct SpoSplit
{
  std::size_t verb_begin;
  std::size_t verb_end; // one past the verb phrase
};

// Locates the verb phrase of a subject-verb-object token run.
SpoSplit split_spo(const Tokens& t, std::size_t end_offset)
{
  auto widen = [&t](std::size_t start) {
    while (start >= 2 && is_auxiliary(t[start - 1].text))
      --start;
    return start;
  };
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!is_preposition(t[i].text))
      continue;
    if (i < 2)
      throw ParseError(t[i].offset, {"subject", "verb"}, "preposition '" + t[i].text + "' before any verb");
    return {widen(i - 1), i + 1};
  }
  for (std::size_t j = 2; j < t.size(); ++j)
    if (is_article(t[j].text))
      return {widen(j - 1), j};
  if (t.size() == 3)
    return {1, 2};
  throw ParseError(offset_at(t, 0, end_offset), {"preposition (to, at, in, on, with)", "article before object"},
                   "cannot locate the verb phrase");
}

struct Spo
{
  std::string subject, verb, object;
};

Spo parse_spo(const Tokens& t, std::size_t end_offset, const Lexicon& lex)
{
  if (t.empty())
    throw ParseError(end_offset, {"subject"}, "empty sentence");
  SpoSplit s = split_spo(t, end_offset);
  Spo out;
  out.subject = noun(t, 0, s.verb_begin, end_offset, lex, "subject");
  out.verb = lex.canonical(join(t, s.verb_begin, s.verb_end, false));
  out.object = noun(t, s.verb_end, t.size(), end_offset, lex, "object");
  return out;
}

// Position of "is a|an" in t, if any.
std::optional<std::size_t> find_is_a(const Tokens& t)
{
  for (std::size_t i = 1; i + 1 < t.size(); ++i)
    if (t[i].text == "is" && (t[i + 1].text == "a" || t[i + 1].text == "an"))
      return i;
  return std::nullopt;
}

// Start of the comment, ignoring '#' inside double quotes.
std::size_t comment_start(std::string_view line)
{
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"')
      quoted = !quoted;
    else if (line[i] == '#' && !quoted)
      return i;
  }
  return line.size();
}

// [begin, end) with trailing blanks removed; end is the terminator position.
struct Body
{
  std::size_t begin;
  std::size_t end;
};

Body body_before(std::string_view text, char terminator)
{
  std::size_t end = comment_start(text);
  while (end > 0 && std::isspace(static_cast<unsigned char>(text[end - 1])))
    --end;
  std::size_t begin = 0;
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin])))
    ++begin;
  if (end == begin)
    throw ParseError(begin, {"statement"}, "empty line");
  if (text[end - 1] != terminator)
    throw ParseError(end, {std::string("'") + terminator + "'"},
                     std::string("line must end with '") + terminator + "'");
  return {begin, end - 1};
}

bool has_prefix_ci(std::string_view text, std::size_t at, std::string_view prefix)
{
  return text.size() >= at + prefix.size() && lower(text.substr(at, prefix.size())) == prefix;
}

std::string pattern_slot(const Tokens& t, std::size_t from, std::size_t to, std::size_t end_offset,
                         const Lexicon& lex, std::string_view name)
{
  std::string s = noun(t, from, to, end_offset, lex, name);
  return s == "x" ? std::string(kVarX) : s == "y" ? std::string(kVarY) : s;
}

SpoTemplate parse_template(std::string_view text, std::size_t begin, std::size_t end, const Lexicon& lex)
{
  Tokens t = tokenize(text, begin, end);
  if (t.empty())
    throw ParseError(begin, {"X"}, "empty rule side");
  SpoSplit s = split_spo(t, end);
  SpoTemplate out;
  out.subject = pattern_slot(t, 0, s.verb_begin, end, lex, "subject");
  out.verb = lex.canonical(join(t, s.verb_begin, s.verb_end, false));
  out.object = pattern_slot(t, s.verb_end, t.size(), end, lex, "object");
  return out;
}

StatementAst parse_rule(std::string_view text, std::size_t begin, std::size_t end, const Lexicon& lex)
{
  const std::size_t arrow = text.substr(0, end).find("=>", begin);
  if (arrow == std::string_view::npos)
    throw ParseError(end, {"'=>'"}, "rule needs '=>'");
  SpoTemplate premise = parse_template(text, begin, arrow, lex);
  SpoTemplate conclusion = parse_template(text, arrow + 2, end, lex);
  try {
    return RuleStmt{DefeasibleRule::make(std::move(premise), std::move(conclusion))};
  } catch (const std::invalid_argument& e) {
    throw ParseError(arrow + 2, {"X", "Y"}, e.what());
  }
}

StatementAst parse_lexicon(std::string_view text, std::size_t begin, std::size_t end)
{
  const std::size_t eq = text.substr(0, end).find('=', begin);
  if (eq == std::string_view::npos)
    throw ParseError(end, {"'='"}, "lexicon entry needs '='");
  Tokens lhs = tokenize(text, begin, eq);
  Tokens rhs = tokenize(text, eq + 1, end);
  LexiconStmt out{join(lhs, 0, lhs.size(), true), join(rhs, 0, rhs.size(), true)};
  if (out.surface.empty())
    throw ParseError(begin, {"surface form"}, "missing surface form");
  if (out.canonical.empty())
    throw ParseError(eq + 1, {"canonical form"}, "missing canonical form");
  return out;
}

TriggerPattern parse_trigger_pattern(const Tokens& t, std::size_t end_offset, const Lexicon& lex)
{
  TriggerPattern p;
  if (auto k = find_is_a(t)) {
    p.kind = TriggerPattern::Kind::Membership;
    p.subject = noun(t, 0, *k, end_offset, lex, "element");
    p.object = noun(t, *k + 2, t.size(), end_offset, lex, "set");
    return p;
  }
  Spo spo = parse_spo(t, end_offset, lex);
  p.subject = std::move(spo.subject);
  p.verb = std::move(spo.verb);
  p.object = std::move(spo.object);
  return p;
}

StatementAst parse_trigger(std::string_view text, std::size_t begin, std::size_t end, const Lexicon& lex)
{
  const std::size_t open = text.substr(0, end).find('"', begin);
  if (open == std::string_view::npos)
    throw ParseError(end, {"'\"'"}, "trigger needs a quoted aim");
  const std::size_t close = text.substr(0, end).find('"', open + 1);
  if (close == std::string_view::npos)
    throw ParseError(end, {"'\"'"}, "unterminated aim text");
  for (std::size_t i = close + 1; i < end; ++i)
    if (!std::isspace(static_cast<unsigned char>(text[i])))
      throw ParseError(i, {"'.'"}, "unexpected text after aim");

  Tokens t = tokenize(text, begin, open);
  if (t.empty() || t.front().text != "when")
    throw ParseError(offset_at(t, 0, open), {"'when'"}, "trigger must start with 'when'");
  if (t.size() < 2 || t.back().text != "then")
    throw ParseError(open, {"'then'"}, "trigger pattern must end with 'then'");
  Tokens pattern(t.begin() + 1, t.end() - 1);

  TriggerStmt out;
  out.pattern = parse_trigger_pattern(pattern, t.back().offset, lex);
  std::string aim(text.substr(open + 1, close - open - 1));
  out.aim = canonical_label(aim);
  if (out.aim.empty())
    throw ParseError(open + 1, {"aim text"}, "empty aim text");
  try {
    Trigger::make(0, out.pattern, out.aim);
  } catch (const std::invalid_argument& e) {
    throw ParseError(t.front().offset, {"concrete slot"}, e.what());
  }
  return out;
}

std::string capitalize(std::string s)
{
  if (!s.empty())
    s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s;
}

std::string with_article(const std::string& noun)
{
  const bool vowel = !noun.empty() && std::string_view("aeiou").find(noun[0]) != std::string_view::npos;
  return (vowel ? "an " : "a ") + noun;
}

bool ends_with_preposition(std::string_view verb)
{
  const std::size_t space = verb.rfind(' ');
  return is_preposition(space == std::string_view::npos ? verb : verb.substr(space + 1));
}

// "<subject> <verb> [the] <object>"
std::string spo_text(std::string_view subject, std::string_view verb, std::string_view object)
{
  std::string out;
  out.append(subject).append(" ").append(verb).append(" ");
  if (!ends_with_preposition(verb))
    out += "the ";
  out.append(object);
  return out;
}

std::string form_text(Form form, const std::string& s, const std::string& p)
{
  switch (form) {
  case Form::A:
    return "All " + s + " are " + p;
  case Form::E:
    return "No " + s + " are " + p;
  case Form::I:
    return "Some " + s + " are " + p;
  default:
    return "Some " + s + " are not " + p;
  }
}

} // namespace

ParseError::ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& message)
  : std::runtime_error([&] {
      std::ostringstream os;
      os << "at byte " << offset << ": " << message;
      if (!expected.empty()) {
        os << " (expected ";
        for (std::size_t i = 0; i < expected.size(); ++i)
          os << (i ? " | " : "") << expected[i];
        os << ")";
      }
      return os.str();
    }()),
    offset_(offset), expected_(std::move(expected))
{
}

UnsupportedFormError::UnsupportedFormError(std::size_t offset, const std::string& why)
  : ParseError(offset, {}, "unsupported question form: " + why + "; " + std::string(kSupportedShapes))
{
}

std::string normalize_term(std::string_view text)
{
  std::istringstream in{std::string(text)};
  std::string word, out;
  while (in >> word) {
    word = lower(word);
    if (is_article(word))
      continue;
    if (!out.empty())
      out += ' ';
    out += word;
  }
  return out;
}

Lexicon Lexicon::english()
{
  Lexicon lex;
  lex.base_ = {{"men", "man"},     {"women", "woman"}, {"people", "person"}, {"children", "child"},
               {"mice", "mouse"},  {"geese", "goose"}, {"feet", "foot"},     {"teeth", "tooth"},
               {"oxen", "ox"},     {"lice", "louse"}};
  return lex;
}

const std::string* Lexicon::lookup(const std::string& phrase) const
{
  if (auto it = map_.find(phrase); it != map_.end())
    return &it->second;
  if (auto it = base_.find(phrase); it != base_.end())
    return &it->second;
  return nullptr;
}

void Lexicon::add(std::string_view surface, std::string_view canonical)
{
  const std::string s = normalize_term(surface);
  const std::string c = normalize_term(canonical);
  if (s.empty() || c.empty())
    throw LexiconError("lexicon entries need both a surface and a canonical form");
  if (s == c)
    throw LexiconError("lexicon entry maps '" + s + "' to itself");
  auto previous = map_.find(s);
  std::optional<std::string> old;
  if (previous != map_.end())
    old = previous->second;
  map_[s] = c;
  if (has_rewrite_cycle()) {
    if (old)
      map_[s] = *old;
    else
      map_.erase(s);
    throw LexiconError("lexicon entry '" + s + "' = '" + c + "' creates a cycle");
  }
}

// Rewriting acts on whole phrases and on single words, so a term may turn
// into a canonical form, into any word of it, or (word by word) into any
// multi-word surface. A cycle in that graph means canonical() cannot settle.
bool Lexicon::has_rewrite_cycle() const
{
  std::map<std::string, std::vector<std::string>> next;
  auto words = [](const std::string& phrase) {
    std::istringstream in(phrase);
    return std::vector<std::string>(std::istream_iterator<std::string>(in), std::istream_iterator<std::string>());
  };
  auto add_entry = [&](const std::string& s, const std::string& c) {
    next[s].push_back(c);
    const auto cw = words(c);
    if (cw.size() > 1)
      next[s].insert(next[s].end(), cw.begin(), cw.end());
    const auto sw = words(s);
    if (sw.size() > 1)
      for (const auto& w : sw)
        next[w].push_back(s);
  };
  for (const auto& [s, c] : map_)
    add_entry(s, c);
  for (const auto& [s, c] : base_)
    if (!map_.contains(s))
      add_entry(s, c);

  enum class Mark { Open, Done };
  std::map<std::string, Mark> marks;
  std::function<bool(const std::string&)> visit = [&](const std::string& node) {
    if (auto it = marks.find(node); it != marks.end())
      return it->second == Mark::Open;
    marks[node] = Mark::Open;
    if (auto it = next.find(node); it != next.end())
      for (const auto& to : it->second)
        if (visit(to))
          return true;
    marks[node] = Mark::Done;
    return false;
  };
  for (const auto& [node, _] : next)
    if (visit(node))
      return true;
  return false;
}

std::string Lexicon::resolve(const std::string& phrase) const
{
  std::string cur = phrase;
  for (std::size_t steps = 0; steps <= map_.size() + base_.size(); ++steps) {
    const std::string* next = lookup(cur);
    if (!next)
      break;
    cur = *next;
  }
  return cur;
}

std::string Lexicon::canonical(std::string_view term) const
{
  std::string cur = normalize_term(term);
  if (empty())
    return cur;
  for (std::size_t round = 0; round <= map_.size() + base_.size() + 1; ++round) {
    std::string next = resolve(cur);
    if (next == cur && cur.find(' ') != std::string::npos) {
      std::istringstream in(cur);
      std::string word;
      next.clear();
      while (in >> word) {
        if (!next.empty())
          next += ' ';
        next += resolve(word);
      }
      next = normalize_term(next);
    }
    if (next == cur)
      break;
    cur = std::move(next);
  }
  return cur;
}

bool is_question(std::string_view line)
{
  std::size_t end = comment_start(line);
  while (end > 0 && std::isspace(static_cast<unsigned char>(line[end - 1])))
    --end;
  return end > 0 && line[end - 1] == '?';
}

std::string strip_comment(std::string_view line)
{
  std::size_t end = comment_start(line);
  std::size_t begin = 0;
  while (begin < end && std::isspace(static_cast<unsigned char>(line[begin])))
    ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(line[end - 1])))
    --end;
  return std::string(line.substr(begin, end - begin));
}

StatementAst parse_statement(std::string_view text, const Lexicon& lexicon)
{
  const Body body = body_before(text, '.');
  if (has_prefix_ci(text, body.begin, "rule:"))
    return parse_rule(text, body.begin + 5, body.end, lexicon);
  if (has_prefix_ci(text, body.begin, "lexicon:"))
    return parse_lexicon(text, body.begin + 8, body.end);
  if (has_prefix_ci(text, body.begin, "trigger:"))
    return parse_trigger(text, body.begin + 8, body.end, lexicon);

  const Tokens t = tokenize(text, body.begin, body.end);
  if (t.empty())
    throw ParseError(body.begin, {"statement"}, "empty statement");

  const std::string& head = t.front().text;
  if (head == "all" || head == "no" || head == "some") {
    auto are = std::find_if(t.begin() + 1, t.end(), [](const Token& tok) { return tok.text == "are"; });
    if (are != t.end()) {
      const std::size_t k = static_cast<std::size_t>(are - t.begin());
      Form form = head == "all" ? Form::A : head == "no" ? Form::E : Form::I;
      std::size_t pred_begin = k + 1;
      if (form == Form::I && pred_begin < t.size() && t[pred_begin].text == "not") {
        form = Form::O;
        ++pred_begin;
      }
      return CategoricalStmt{form, noun(t, 1, k, body.end, lexicon, "subject"),
                             noun(t, pred_begin, t.size(), body.end, lexicon, "predicate")};
    }
  }
  if (auto k = find_is_a(t))
    return MembershipStmt{noun(t, 0, *k, body.end, lexicon, "element"),
                          noun(t, *k + 2, t.size(), body.end, lexicon, "set")};

  Spo spo = parse_spo(t, body.end, lexicon);
  return SpoStmt{std::move(spo.subject), std::move(spo.verb), std::move(spo.object)};
}

QuestionAst parse_question(std::string_view text, const Lexicon& lexicon)
{
  const Body body = body_before(text, '?');
  const Tokens t = tokenize(text, body.begin, body.end);
  if (t.empty())
    throw ParseError(body.begin, {"question"}, "empty question");

  for (const auto& tok : t) {
    if (one_of(kPronouns, tok.text))
      throw UnsupportedFormError(tok.offset, "pronoun '" + tok.text + "' has no referent in the knowledge base");
    if (one_of(kPresupposing, tok.text))
      throw UnsupportedFormError(tok.offset, "'" + tok.text + "' presupposes a prior state");
  }

  const std::string& head = t.front().text;
  if (head == "is") {
    for (std::size_t k = 2; k < t.size(); ++k)
      if (t[k].text == "a" || t[k].text == "an")
        return IsAQuestion{noun(t, 1, k, body.end, lexicon, "element"),
                           noun(t, k + 1, t.size(), body.end, lexicon, "set")};
    throw ParseError(offset_at(t, 2, body.end), {"'a'", "'an'"}, "expected 'Is <proper> a <noun>?'");
  }
  if (head == "are") {
    if (t.size() < 2 || (t[1].text != "all" && t[1].text != "any"))
      throw UnsupportedFormError(offset_at(t, 1, body.end), "'Are' must be followed by 'all' or 'any'");
    if (t.size() < 4)
      throw ParseError(offset_at(t, t.size(), body.end), {"noun"}, "expected two nouns");
    std::string s = noun(t, 2, t.size() - 1, body.end, lexicon, "subject");
    std::string p = noun(t, t.size() - 1, t.size(), body.end, lexicon, "predicate");
    if (t[1].text == "all")
      return AreAllQuestion{std::move(s), std::move(p)};
    return AreAnyQuestion{std::move(s), std::move(p)};
  }
  if (head == "did" || head == "have" || head == "has" || head == "do" || head == "does") {
    Tokens rest(t.begin() + 1, t.end());
    Spo spo = parse_spo(rest, body.end, lexicon);
    return DidSpoQuestion{std::move(spo.subject), std::move(spo.verb), std::move(spo.object)};
  }
  throw UnsupportedFormError(t.front().offset, "question starts with '" + head + "'");
}

std::string render(const StatementAst& ast)
{
  struct Visitor
  {
    std::string operator()(const MembershipStmt& m) const
    {
      return capitalize(m.element) + " is " + with_article(m.set) + ".";
    }
    std::string operator()(const CategoricalStmt& c) const { return form_text(c.form, c.subject, c.predicate) + "."; }
    std::string operator()(const SpoStmt& s) const { return capitalize(spo_text(s.subject, s.verb, s.object)) + "."; }
    std::string operator()(const RuleStmt& r) const
    {
      const auto& p = r.rule.premise;
      const auto& c = r.rule.conclusion;
      return "rule: " + spo_text(p.subject, p.verb, p.object) + " => " + spo_text(c.subject, c.verb, c.object) + ".";
    }
    std::string operator()(const LexiconStmt& l) const { return "lexicon: " + l.surface + " = " + l.canonical + "."; }
    std::string operator()(const TriggerStmt& t) const
    {
      const auto& p = t.pattern;
      std::string pattern = p.kind == TriggerPattern::Kind::Membership ? p.subject + " is " + with_article(p.object)
                                                                       : spo_text(p.subject, p.verb, p.object);
      return "trigger: when " + pattern + " then \"" + t.aim + "\".";
    }
  };
  return std::visit(Visitor{}, ast);
}

std::string render(const QuestionAst& ast)
{
  struct Visitor
  {
    std::string operator()(const IsAQuestion& q) const
    {
      return "Is " + capitalize(q.element) + " " + with_article(q.set) + "?";
    }
    std::string operator()(const AreAllQuestion& q) const { return "Are all " + q.subject + " " + q.predicate + "?"; }
    std::string operator()(const AreAnyQuestion& q) const { return "Are any " + q.subject + " " + q.predicate + "?"; }
    std::string operator()(const DidSpoQuestion& q) const { return "Did " + spo_text(q.subject, q.verb, q.object) + "?"; }
  };
  return std::visit(Visitor{}, ast);
}

} // namespace exigraph
