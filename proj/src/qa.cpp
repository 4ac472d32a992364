#include "exigraph/qa.hpp"

#include "exigraph/syllogistics.hpp"

#include <algorithm>
#include <future>
#include <set>
#include <sstream>

namespace exigraph {

namespace {

constexpr std::string_view kSingletonJustification = "singleton";
constexpr std::string_view kHeadNounJustification = "head noun";

std::string singleton_label(const std::string& label) { return "{" + label + "}"; }

const PropositionRecord* proposition_by_id(const KnowledgeBase& kb, ItemId id)
{
  for (const auto* r : kb.propositions())
    if (r->id == id)
      return r;
  return nullptr;
}

const MembershipAssertion* membership_by_id(const KnowledgeBase& kb, ItemId id)
{
  for (const auto* m : kb.memberships())
    if (m->id == id)
      return m;
  return nullptr;
}

const RelationEdge* edge_by_id(const KnowledgeBase& kb, ItemId id)
{
  for (const auto* e : kb.edges())
    if (e->id == id)
      return e;
  return nullptr;
}

const PropositionRecord* usable_record(const KnowledgeBase& kb, const CategoricalProposition& p)
{
  const auto* r = kb.proposition(p);
  return r && r->provenance.kind != ProvenanceKind::Abduced ? r : nullptr;
}

class Pipeline
{
public:
  explicit Pipeline(const Session& session) : session_(session), work_(session.kb) {}

  Answer run(const QuestionAst& q)
  {
    if (session_.kb.empty())
      return {};
    return std::visit([this](const auto& question) { return ask(question); }, q);
  }

  KnowledgeBase& work() { return work_; }

private:
  std::optional<EntityId> find(const std::string& label) const
  {
    auto e = work_.find_entity(label);
    return e ? std::optional<EntityId>(e->id) : std::nullopt;
  }

  // --- trace construction -------------------------------------------------

  TraceStep lookup_step(ItemId id) const
  {
    std::string value = "yes";
    ProvenanceKind kind = work_.item_kind(id).value_or(ProvenanceKind::Asserted);
    if (const auto* m = membership_by_id(work_, id))
      value = std::string(to_string(m->value));
    else if (const auto* e = edge_by_id(work_, id))
      value = std::string(to_string(e->value));
    return {"lookup", describe_item(work_, id), value, kind};
  }

  void explain(ItemId id)
  {
    if (!explained_.insert(id).second)
      return;
    if (const auto* r = proposition_by_id(work_, id)) {
      if (r->provenance.kind == ProvenanceKind::Asserted)
        return;
      if (r->justification == kSingletonJustification) {
        for (ItemId src : r->provenance.sources)
          if (explained_.insert(src).second)
            trace_.push_back(lookup_step(src));
        return;
      }
      if (r->justification == kHeadNounJustification) {
        trace_.push_back({std::string(kHeadNounJustification), work_.label(r->proposition.subject),
                          render_proposition(work_, r->proposition), r->provenance.kind});
        return;
      }
      std::string inputs;
      for (ItemId src : r->provenance.sources) {
        explain(src);
        inputs += (inputs.empty() ? "" : "; ") + describe_item(work_, src);
      }
      trace_.push_back({"syllogism " + r->justification, inputs, render_proposition(work_, r->proposition),
                        r->provenance.kind});
      return;
    }
    const auto kind = work_.item_kind(id);
    if (!kind)
      return;
    if (*kind == ProvenanceKind::Asserted) {
      if (!work_.representation(id) || *work_.representation(id) == RepresentationKind::Datum)
        trace_.push_back(lookup_step(id));
      return;
    }
    if (const auto* m = membership_by_id(work_, id); m && *kind == ProvenanceKind::Deduced) {
      if (work_.label(m->set).front() == '{')
        return;
      std::string inputs;
      for (ItemId src : m->provenance.sources) {
        explain(src);
        inputs += (inputs.empty() ? "" : "; ") + describe_item(work_, src);
      }
      trace_.push_back({"instantiate", inputs, describe_item(work_, id), ProvenanceKind::Deduced});
      return;
    }
    if (const auto* e = edge_by_id(work_, id); e && *kind == ProvenanceKind::Abduced) {
      std::string inputs;
      for (ItemId src : e->provenance.sources) {
        explain(src);
        inputs += (inputs.empty() ? "" : "; ") + describe_item(work_, src);
      }
      trace_.push_back({"apply_rules", inputs, describe_item(work_, id), ProvenanceKind::Abduced});
    }
  }

  // Steps supporting a proposition that evaluates True.
  bool support(const CategoricalProposition& p)
  {
    const PropositionRecord* r = usable_record(work_, p);
    if (!r && (p.form == Form::E || p.form == Form::I))
      r = usable_record(work_, {p.form, p.predicate, p.subject});
    if (r) {
      if (r->provenance.kind == ProvenanceKind::Asserted)
        trace_.push_back(lookup_step(r->id));
      else
        explain(r->id);
      return true;
    }
    if (p.form != Form::I && p.form != Form::O)
      return false;
    const Value3 wanted = p.form == Form::I ? Value3::True : Value3::False;
    for (EntityId x : work_.members_of(p.subject)) {
      const auto* in_p = work_.membership(x, p.predicate);
      if (!in_p || in_p->value != wanted)
        continue;
      const auto* in_s = work_.membership(x, p.subject);
      cite(in_s->id);
      cite(in_p->id);
      trace_.push_back({"witness", describe_item(work_, in_s->id) + "; " + describe_item(work_, in_p->id),
                        render_proposition(work_, p), ProvenanceKind::Deduced});
      return true;
    }
    return false;
  }

  // A lookup for asserted items, the derivation for deduced ones.
  void cite(ItemId id)
  {
    if (work_.item_kind(id) == ProvenanceKind::Asserted) {
      if (explained_.insert(id).second)
        trace_.push_back(lookup_step(id));
    } else {
      explain(id);
    }
  }

  void refute(const CategoricalProposition& p)
  {
    std::string inputs;
    for (ItemId id : counterexample(work_, p)) {
      cite(id);
      inputs += (inputs.empty() ? "" : "; ") + describe_item(work_, id);
    }
    trace_.push_back({"counterexample", inputs, "not: " + render_proposition(work_, p), ProvenanceKind::Deduced});
  }

  Answer conclude(Value3 verdict)
  {
    const bool abduced = std::any_of(trace_.begin(), trace_.end(),
                                     [](const TraceStep& s) { return s.provenance == ProvenanceKind::Abduced; });
    if (is_definite(verdict) && !abduced)
      return {verdict, Modality::Proven, std::move(trace_)};
    // A definite verdict may never rest on an abduced step.
    if (!abduced)
      return {};
    return {Value3::Unknown, Modality::Plausible, std::move(trace_)};
  }

  Answer suggest(std::string claim)
  {
    trace_.push_back({"suggest", std::move(claim), "yes", ProvenanceKind::Abduced});
    return conclude(Value3::Unknown);
  }

  void hypothesis_step(const Hypothesis& h)
  {
    const auto& claim = std::get<MembershipClaim>(h.claim);
    std::vector<std::string> evidence;
    for (ItemId id : h.evidence)
      evidence.push_back(describe_item(work_, id));
    std::sort(evidence.begin(), evidence.end());
    std::string inputs;
    for (const auto& e : evidence)
      inputs += (inputs.empty() ? "" : "; ") + e;
    std::ostringstream out;
    out << work_.label(claim.element) << " is a " << work_.label(claim.set) << " (score "
        << h.score.shared_property_count << "/" << h.score.supporting_member_count << ")";
    trace_.push_back({"abduce_membership", inputs, out.str(), ProvenanceKind::Abduced});
    try {
      work_.assert_membership(claim.element, claim.set, Value3::Unknown, Provenance::abduced(h.evidence));
    } catch (const OverrideConflictError&) {
    }
  }

  // --- stages ---------------------------------------------------------------

  // Multi-word terms are subsets of their head noun when the head is itself
  // a known term ("american astronauts" of "astronauts").
  void subsume_compounds()
  {
    const std::vector<Entity> entities = work_.entities();
    for (const Entity& e : entities) {
      if (e.label.front() == '{')
        continue;
      const std::size_t space = e.label.rfind(' ');
      if (space == std::string::npos)
        continue;
      auto head = find(e.label.substr(space + 1));
      if (!head || usable_record(work_, {Form::A, e.id, *head}))
        continue;
      std::optional<ItemId> source;
      for (const auto* edge : work_.edges())
        if (!source && (edge->from == e.id || edge->to == e.id))
          source = edge->id;
      for (const auto* m : work_.memberships())
        if (!source && (m->element == e.id || m->set == e.id))
          source = m->id;
      for (const auto* r : work_.propositions())
        if (!source && (r->proposition.subject == e.id || r->proposition.predicate == e.id))
          source = r->id;
      if (source)
        work_.assert_proposition({Form::A, e.id, *head}, Provenance::deduced({*source}),
                                 std::string(kHeadNounJustification));
    }
  }

  std::optional<EntityId> promote(EntityId x)
  {
    std::vector<const MembershipAssertion*> sets;
    for (const auto* m : work_.memberships())
      if (m->element == x && m->value == Value3::True)
        sets.push_back(m);
    if (sets.empty())
      return std::nullopt;
    const EntityId single = work_.upsert_entity(singleton_label(work_.label(x))).id;
    work_.assert_membership(x, single, Value3::True, Provenance::deduced({sets.front()->id}));
    for (const auto* m : sets)
      work_.assert_proposition({Form::A, single, m->set}, Provenance::deduced({m->id}),
                               std::string(kSingletonJustification));
    return single;
  }

  void deduce()
  {
    subsume_compounds();
    closure(work_, session_.flags.existential_import);
  }

  // Every individual as a singleton set, then closure, then the singleton
  // conclusions read back as memberships: All {x} are P gives x in P, No {x}
  // are P gives x not in P.
  void deduce_with_individuals()
  {
    std::set<EntityId> sets;
    for (const auto* m : work_.memberships())
      sets.insert(m->set);
    std::vector<std::pair<EntityId, EntityId>> singles;
    for (const Entity& e : std::vector<Entity>(work_.entities()))
      if (e.label.front() != '{' && !sets.contains(e.id))
        if (auto single = promote(e.id))
          singles.emplace_back(e.id, *single);
    deduce();
    for (auto [x, single] : singles)
      for (const auto* r : work_.propositions()) {
        const auto& p = r->proposition;
        if (p.subject != single || r->provenance.kind == ProvenanceKind::Abduced ||
            r->justification == kSingletonJustification || work_.membership(x, p.predicate))
          continue;
        if (p.form == Form::A || p.form == Form::E)
          work_.assert_membership(x, p.predicate, p.form == Form::A ? Value3::True : Value3::False,
                                  Provenance::deduced({r->id}));
      }
  }

  Answer ask(const IsAQuestion& q)
  {
    auto x = find(q.element);
    auto s = find(q.set);
    if (x && s)
      if (const auto* m = work_.membership(*x, *s); m && is_definite(m->value)) {
        trace_.push_back(lookup_step(m->id));
        return conclude(m->value);
      }

    std::optional<EntityId> single = x ? promote(*x) : std::nullopt;
    deduce();
    if (single && s) {
      if (eval_proposition(work_, {Form::A, *single, *s}) == Value3::True && support({Form::A, *single, *s}))
        return conclude(Value3::True);
      if (eval_proposition(work_, {Form::E, *single, *s}) == Value3::True && support({Form::E, *single, *s}))
        return conclude(Value3::False);
    }

    apply_rules(session_.rules, work_);
    x = find(q.element);
    s = find(q.set);
    if (!x || !s)
      return conclude(Value3::Unknown);
    const auto hyps = abduce_membership(*x, work_);
    for (const auto& h : hyps)
      if (std::get<MembershipClaim>(h.claim).set == *s) {
        hypothesis_step(h);
        return suggest(q.element + " is a " + q.set);
      }
    for (const auto& h : hyps) {
      const EntityId via = std::get<MembershipClaim>(h.claim).set;
      if (via == *s || eval_proposition(work_, {Form::A, via, *s}) != Value3::True)
        continue;
      hypothesis_step(h);
      support({Form::A, via, *s});
      return suggest(q.element + " is a " + q.set);
    }
    return conclude(Value3::Unknown);
  }

  template <typename Q>
  Answer ask_categorical(const Q& q, Form form)
  {
    auto decide = [&](EntityId s, EntityId p) -> std::optional<Answer> {
      const CategoricalProposition prop{form, s, p};
      const Value3 v = eval_proposition(work_, prop);
      if (v == Value3::True && support(prop))
        return conclude(Value3::True);
      if (v == Value3::False) {
        refute(prop);
        return conclude(Value3::False);
      }
      return std::nullopt;
    };

    auto s = find(q.subject);
    auto p = find(q.predicate);
    if (s && p && s != p)
      if (auto a = decide(*s, *p))
        return *a;
    deduce_with_individuals();
    if (s && p && s != p)
      if (auto a = decide(*s, *p))
        return *a;

    apply_rules(session_.rules, work_);
    s = find(q.subject);
    p = find(q.predicate);
    if (!s || !p || s == p)
      return conclude(Value3::Unknown);

    auto hypothesized = [&](EntityId y, EntityId set) -> std::optional<Hypothesis> {
      for (auto& h : abduce_membership(y, work_))
        if (std::get<MembershipClaim>(h.claim).set == set)
          return h;
      return std::nullopt;
    };

    const auto members = work_.members_of(*s);
    if (form == Form::A) {
      std::vector<Hypothesis> used;
      for (EntityId y : members) {
        if (work_.exists(y, *p) == Value3::True)
          continue;
        auto h = hypothesized(y, *p);
        if (!h)
          return conclude(Value3::Unknown);
        used.push_back(*h);
      }
      if (members.empty() || used.empty())
        return conclude(Value3::Unknown);
      for (const auto& h : used)
        hypothesis_step(h);
      return suggest("all " + q.subject + " are " + q.predicate);
    }

    for (auto [from, to] : {std::pair{*s, *p}, std::pair{*p, *s}})
      for (EntityId y : work_.members_of(from))
        if (auto h = hypothesized(y, to)) {
          hypothesis_step(*h);
          return suggest("some " + q.subject + " are " + q.predicate);
        }
    return conclude(Value3::Unknown);
  }

  Answer ask(const AreAllQuestion& q) { return ask_categorical(q, Form::A); }
  Answer ask(const AreAnyQuestion& q) { return ask_categorical(q, Form::I); }

  enum class Link { Same, Member, Subset };

  // How edge subject `z` falls under question subject `x`.
  std::optional<Link> link(EntityId z, EntityId x) const
  {
    if (z == x)
      return Link::Same;
    if (work_.exists(z, x) == Value3::True)
      return Link::Member;
    if (eval_proposition(work_, {Form::A, z, x}) == Value3::True)
      return Link::Subset;
    return std::nullopt;
  }

  void link_steps(EntityId z, EntityId x, Link how)
  {
    if (how == Link::Member)
      trace_.push_back(lookup_step(work_.membership(z, x)->id));
    else if (how == Link::Subset)
      support({Form::A, z, x});
  }

  Answer ask(const DidSpoQuestion& q)
  {
    auto x = find(q.subject);
    auto o = find(q.object);
    if (x && o)
      if (const auto* e = work_.edge(q.verb, *x, *o); e && is_definite(e->value)) {
        trace_.push_back(lookup_step(e->id));
        return conclude(e->value);
      }

    deduce();
    if (x && o)
      for (const auto* e : work_.edges()) {
        if (e->name != q.verb || e->to != *o || e->value != Value3::True)
          continue;
        auto how = link(e->from, *x);
        if (!how)
          continue;
        trace_.push_back(lookup_step(e->id));
        link_steps(e->from, *x, *how);
        trace_.push_back({"conclude", describe_item(work_, e->id), q.subject + " " + q.verb + " " + q.object,
                          ProvenanceKind::Deduced});
        return conclude(Value3::True);
      }

    apply_rules(session_.rules, work_);
    x = find(q.subject);
    o = find(q.object);
    if (!x || !o)
      return conclude(Value3::Unknown);
    for (const auto* e : work_.edges()) {
      if (e->name != q.verb || e->to != *o || e->provenance.kind != ProvenanceKind::Abduced)
        continue;
      auto how = link(e->from, *x);
      if (!how)
        continue;
      explain(e->id);
      link_steps(e->from, *x, *how);
      if (*how == Link::Subset) {
        const CategoricalProposition conjecture{Form::I, *x, e->from};
        trace_.push_back({"conjecture",
                          render_proposition(work_, {Form::A, e->from, *x}) + "; " + describe_item(work_, e->id),
                          render_proposition(work_, conjecture), ProvenanceKind::Abduced});
      }
      return suggest(q.subject + " " + q.verb + " " + q.object);
    }
    return conclude(Value3::Unknown);
  }

  const Session& session_;
  KnowledgeBase work_;
  std::vector<TraceStep> trace_;
  std::set<ItemId> explained_;
};

} // namespace

Session::Applied Session::apply(const StatementAst& statement)
{
  const std::uint64_t kb_before = kb.revision();
  bool changed = false;
  Applied out;

  auto observe = [&](ObservedItem item) {
    auto aims = fire_triggers(item, triggers);
    out.aims.insert(out.aims.end(), aims.begin(), aims.end());
  };

  struct Visitor
  {
    Session& self;
    bool& changed;
    decltype(observe)& notify;

    void operator()(const MembershipStmt& m)
    {
      const EntityId e = self.kb.upsert_entity(m.element).id;
      const EntityId s = self.kb.upsert_entity(m.set).id;
      self.kb.assert_membership(e, s, Value3::True, Provenance::asserted());
      notify({TriggerPattern::Kind::Membership, m.element, {}, m.set});
    }
    void operator()(const CategoricalStmt& c)
    {
      if (canonical_label(c.subject) == canonical_label(c.predicate))
        throw InvalidPropositionError("proposition subject and predicate are both '" + c.subject + "'");
      const EntityId s = self.kb.upsert_entity(c.subject).id;
      const EntityId p = self.kb.upsert_entity(c.predicate).id;
      self.kb.assert_proposition({c.form, s, p}, Provenance::asserted());
    }
    void operator()(const SpoStmt& spo)
    {
      const EntityId s = self.kb.upsert_entity(spo.subject).id;
      const EntityId o = self.kb.upsert_entity(spo.object).id;
      self.kb.assert_edge(spo.verb, s, o, Value3::True, Provenance::asserted());
      notify({TriggerPattern::Kind::Spo, spo.subject, spo.verb, spo.object});
    }
    void operator()(const RuleStmt& r)
    {
      self.kb.register_meaning(r.rule.name, RepresentationKind::Meaning);
      if (std::find(self.rules.begin(), self.rules.end(), r.rule) == self.rules.end()) {
        self.rules.push_back(r.rule);
        changed = true;
      }
    }
    void operator()(const LexiconStmt& l)
    {
      auto it = self.lexicon.entries().find(l.surface);
      if (it != self.lexicon.entries().end() && it->second == l.canonical)
        return;
      self.lexicon.add(l.surface, l.canonical);
      changed = true;
    }
    void operator()(const TriggerStmt& t)
    {
      for (const auto& existing : self.triggers)
        if (existing.pattern == t.pattern && existing.reaction == t.aim)
          return;
      self.triggers.push_back(Trigger::make(static_cast<int>(self.triggers.size()) + 1, t.pattern, t.aim));
      changed = true;
    }
  };
  std::visit(Visitor{*this, changed, observe}, statement);

  if (changed || kb.revision() != kb_before)
    ++revision_;
  out.revision = revision_;
  return out;
}

Session::Applied Session::apply_line(std::string_view line) { return apply(parse_statement(line, lexicon)); }

std::string_view to_string(Modality m) noexcept
{
  switch (m) {
  case Modality::Proven:
    return "proven";
  case Modality::Plausible:
    return "plausible";
  default:
    return "none";
  }
}

std::string describe_item(const KnowledgeBase& kb, ItemId id)
{
  if (const auto* m = membership_by_id(kb, id))
    return kb.label(m->element) + " is a " + kb.label(m->set);
  if (const auto* e = edge_by_id(kb, id))
    return kb.label(e->from) + " " + e->name + " " + kb.label(e->to);
  if (const auto* r = proposition_by_id(kb, id))
    return render_proposition(kb, r->proposition);
  for (const auto* m : kb.meanings())
    if (m->id == id)
      return m->name;
  return "#" + std::to_string(id.value);
}

Answer answer(const QuestionAst& question, const Session& session, KnowledgeBase* workspace)
{
  Pipeline pipeline(session);
  Answer a = pipeline.run(question);
  if (workspace)
    *workspace = std::move(pipeline.work());
  return a;
}

std::vector<Answer> answer_all(const std::vector<QuestionAst>& questions, const Session& session)
{
  std::vector<std::future<Answer>> pending;
  pending.reserve(questions.size());
  for (const auto& q : questions)
    pending.push_back(std::async(std::launch::async, [&session, &q] { return answer(q, session); }));
  std::vector<Answer> out;
  out.reserve(pending.size());
  for (auto& f : pending)
    out.push_back(f.get());
  return out;
}

std::string format_answer(const Answer& a, bool with_trace)
{
  std::ostringstream out;
  out << to_string(a.verdict);
  if (a.modality != Modality::None)
    out << " (" << to_string(a.modality) << ")";
  out << '\n';
  if (with_trace)
    for (std::size_t i = 0; i < a.trace.size(); ++i) {
      const auto& s = a.trace[i];
      out << "  " << (i + 1) << ". " << s.operation << ": " << s.inputs << " => " << s.output << " ["
          << to_string(s.provenance) << "]\n";
    }
  return out.str();
}

} // namespace exigraph
