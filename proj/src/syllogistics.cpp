#include "exigraph/syllogistics.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace exigraph {

namespace {

constexpr std::array<Form, 4> kForms = {Form::A, Form::E, Form::I, Form::O};

// Term slots are bit positions in a Venn region index: S=1, M=2, P=4.
constexpr int bit(Term t) { return 1 << static_cast<int>(t); }

struct Arrangement
{
  Term major_subject, major_predicate, minor_subject, minor_predicate;
};

constexpr Arrangement arrangement(int figure)
{
  switch (figure) {
  case 1:
    return {Term::Middle, Term::Predicate, Term::Subject, Term::Middle};
  case 2:
    return {Term::Predicate, Term::Middle, Term::Subject, Term::Middle};
  case 3:
    return {Term::Middle, Term::Predicate, Term::Middle, Term::Subject};
  default:
    return {Term::Predicate, Term::Middle, Term::Middle, Term::Subject};
  }
}

// `inhabited` is a bitmask over the eight regions.
bool holds(unsigned inhabited, Form form, Term x, Term y)
{
  bool some_x_y = false, some_x_not_y = false;
  for (int region = 0; region < 8; ++region) {
    if (!(inhabited & (1u << region)) || !(region & bit(x)))
      continue;
    if (region & bit(y))
      some_x_y = true;
    else
      some_x_not_y = true;
  }
  switch (form) {
  case Form::A:
    return !some_x_not_y;
  case Form::E:
    return !some_x_y;
  case Form::I:
    return some_x_y;
  default:
    return some_x_not_y;
  }
}

bool nonempty(unsigned inhabited, Term t)
{
  for (int region = 0; region < 8; ++region)
    if ((inhabited & (1u << region)) && (region & bit(t)))
      return true;
  return false;
}

// Valid when every region pattern satisfying the premises, and making the
// `required` terms non-empty, satisfies the conclusion.
bool valid_given(int figure, const std::array<Form, 3>& forms, std::initializer_list<Term> required)
{
  const Arrangement a = arrangement(figure);
  for (unsigned inhabited = 0; inhabited < 256; ++inhabited) {
    if (!std::all_of(required.begin(), required.end(), [&](Term t) { return nonempty(inhabited, t); }))
      continue;
    if (!holds(inhabited, forms[0], a.major_subject, a.major_predicate))
      continue;
    if (!holds(inhabited, forms[1], a.minor_subject, a.minor_predicate))
      continue;
    if (!holds(inhabited, forms[2], Term::Subject, Term::Predicate))
      return false;
  }
  return true;
}

std::vector<Mood> build_table(bool existential_import)
{
  std::vector<Mood> out;
  for (int figure = 1; figure <= 4; ++figure)
    for (Form major : kForms)
      for (Form minor : kForms)
        for (Form concl : kForms) {
          std::array<Form, 3> forms{major, minor, concl};
          if (valid_given(figure, forms, {})) {
            out.push_back(Mood{figure, forms, false, std::nullopt});
            continue;
          }
          if (!existential_import || !mood_is_valid(figure, forms, true))
            continue;
          Mood mood{figure, forms, true, std::nullopt};
          for (Term t : {Term::Subject, Term::Middle, Term::Predicate})
            if (valid_given(figure, forms, {t})) {
              mood.restricted_term = t;
              break;
            }
          out.push_back(mood);
        }
  return out;
}

bool usable(const PropositionRecord& r) { return r.provenance.kind != ProvenanceKind::Abduced; }

const PropositionRecord* stored(const KnowledgeBase& kb, Form form, EntityId s, EntityId p)
{
  const auto* r = kb.proposition({form, s, p});
  return r && usable(*r) ? r : nullptr;
}

// x in s True and x in p with value `in_p`.
std::vector<ItemId> membership_witness(const KnowledgeBase& kb, EntityId s, EntityId p, Value3 in_p)
{
  for (EntityId x : kb.members_of(s)) {
    const auto* mp = kb.membership(x, p);
    if (mp && mp->value == in_p)
      return {kb.membership(x, s)->id, mp->id};
  }
  return {};
}

} // namespace

std::string Mood::name() const
{
  std::string out;
  for (Form f : forms)
    out.push_back(to_char(f));
  out += '-';
  out += std::to_string(figure);
  return out;
}

bool mood_is_valid(int figure, const std::array<Form, 3>& forms, bool existential_import)
{
  if (figure < 1 || figure > 4)
    return false;
  if (existential_import)
    return valid_given(figure, forms, {Term::Subject, Term::Middle, Term::Predicate});
  return valid_given(figure, forms, {});
}

const std::vector<Mood>& valid_moods(bool existential_import)
{
  static const std::vector<Mood> without = build_table(false);
  static const std::vector<Mood> with = build_table(true);
  return existential_import ? with : without;
}

std::string render_proposition(const KnowledgeBase& kb, const CategoricalProposition& p)
{
  const std::string& s = kb.label(p.subject);
  const std::string& q = kb.label(p.predicate);
  switch (p.form) {
  case Form::A:
    return "All " + s + " are " + q;
  case Form::E:
    return "No " + s + " are " + q;
  case Form::I:
    return "Some " + s + " are " + q;
  default:
    return "Some " + s + " are not " + q;
  }
}

std::vector<ItemId> counterexample(const KnowledgeBase& kb, const CategoricalProposition& p)
{
  const EntityId s = p.subject, q = p.predicate;
  switch (p.form) {
  case Form::A:
    if (const auto* r = stored(kb, Form::O, s, q))
      return {r->id};
    return membership_witness(kb, s, q, Value3::False);
  case Form::E:
    if (const auto* r = stored(kb, Form::I, s, q))
      return {r->id};
    if (const auto* r = stored(kb, Form::I, q, s))
      return {r->id};
    return membership_witness(kb, s, q, Value3::True);
  case Form::I:
    if (const auto* r = stored(kb, Form::E, s, q))
      return {r->id};
    if (const auto* r = stored(kb, Form::E, q, s))
      return {r->id};
    return {};
  default:
    if (const auto* r = stored(kb, Form::A, s, q))
      return {r->id};
    return {};
  }
}

Value3 eval_proposition(const KnowledgeBase& kb, const CategoricalProposition& p)
{
  if (!counterexample(kb, p).empty())
    return Value3::False;
  if (stored(kb, p.form, p.subject, p.predicate))
    return Value3::True;
  switch (p.form) {
  case Form::E:
    if (stored(kb, Form::E, p.predicate, p.subject))
      return Value3::True;
    break;
  case Form::I:
    if (stored(kb, Form::I, p.predicate, p.subject) || !membership_witness(kb, p.subject, p.predicate, Value3::True).empty())
      return Value3::True;
    break;
  case Form::O:
    if (!membership_witness(kb, p.subject, p.predicate, Value3::False).empty())
      return Value3::True;
    break;
  default:
    break;
  }
  return Value3::Unknown;
}

std::optional<CategoricalProposition> infer_syllogism(const KnowledgeBase& kb, const CategoricalProposition& major,
                                                      const CategoricalProposition& minor, const Mood& mood)
{
  const auto& table = valid_moods(true);
  auto entry = std::find_if(table.begin(), table.end(), [&](const Mood& m) {
    return m.figure == mood.figure && m.forms == mood.forms;
  });
  if (entry == table.end())
    throw InvalidMoodError("mood " + mood.name() + " is not valid");

  if (major.form != entry->forms[0] || minor.form != entry->forms[1])
    return std::nullopt;

  const Arrangement a = arrangement(entry->figure);
  std::array<std::optional<EntityId>, 3> terms;
  auto bind = [&terms](Term t, EntityId e) {
    auto& slot = terms[static_cast<int>(t)];
    if (slot && *slot != e)
      return false;
    slot = e;
    return true;
  };
  if (!bind(a.major_subject, major.subject) || !bind(a.major_predicate, major.predicate) ||
      !bind(a.minor_subject, minor.subject) || !bind(a.minor_predicate, minor.predicate))
    return std::nullopt;

  const EntityId s = *terms[0], m = *terms[1], p = *terms[2];
  if (s == m || m == p || s == p)
    return std::nullopt;

  if (entry->requires_import) {
    const EntityId restricted = *terms[static_cast<int>(entry->restricted_term.value_or(Term::Middle))];
    if (kb.members_of(restricted).empty())
      return std::nullopt;
  }
  return CategoricalProposition{entry->forms[2], s, p};
}

std::size_t closure(KnowledgeBase& kb, bool existential_import)
{
  const auto& moods = valid_moods(existential_import);
  std::map<std::pair<Form, Form>, std::vector<const Mood*>> by_premises;
  for (const auto& m : moods)
    by_premises[{m.forms[0], m.forms[1]}].push_back(&m);

  std::size_t added = 0;
  for (;;) {
    // Label order, so derivations do not depend on the order facts arrived in.
    std::vector<const PropositionRecord*> premises;
    for (const auto* r : kb.propositions())
      if (usable(*r))
        premises.push_back(r);
    auto key = [&kb](const PropositionRecord* r) {
      return std::tuple(r->proposition.form, kb.label(r->proposition.subject), kb.label(r->proposition.predicate));
    };
    std::sort(premises.begin(), premises.end(), [&](auto* a, auto* b) { return key(a) < key(b); });
    std::map<EntityId, std::vector<const PropositionRecord*>> by_term;
    for (const auto* r : premises) {
      by_term[r->proposition.subject].push_back(r);
      by_term[r->proposition.predicate].push_back(r);
    }

    struct Derivation
    {
      std::vector<ItemId> sources;
      std::string mood;
    };
    std::map<CategoricalProposition, Derivation> fresh;

    for (const auto* major : premises) {
      for (EntityId shared : {major->proposition.subject, major->proposition.predicate}) {
        for (const auto* minor : by_term[shared]) {
          if (minor == major)
            continue;
          auto it = by_premises.find({major->proposition.form, minor->proposition.form});
          if (it == by_premises.end())
            continue;
          for (const Mood* mood : it->second) {
            auto concl = infer_syllogism(kb, major->proposition, minor->proposition, *mood);
            if (!concl || stored(kb, concl->form, concl->subject, concl->predicate) || fresh.contains(*concl))
              continue;
            fresh.emplace(*concl, Derivation{{major->id, minor->id}, mood->name()});
          }
        }
      }
    }
    if (fresh.empty())
      return added;
    for (auto& [prop, d] : fresh) {
      kb.assert_proposition(prop, Provenance::deduced(std::move(d.sources)), std::move(d.mood));
      ++added;
    }
  }
}

std::vector<Contradiction> contradictions(const KnowledgeBase& kb)
{
  std::vector<Contradiction> out;
  for (const auto* r : kb.propositions()) {
    if (!usable(*r))
      continue;
    auto ev = counterexample(kb, r->proposition);
    if (!ev.empty())
      out.push_back({r->proposition, std::move(ev)});
  }
  return out;
}

} // namespace exigraph
