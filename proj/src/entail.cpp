#include "relkit/entail.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

namespace relkit::entail {

Truth and3(Truth a, Truth b) { return a < b ? a : b; }
Truth or3(Truth a, Truth b) { return a > b ? a : b; }
Truth not3(Truth a) {
  return static_cast<Truth>(2 - static_cast<int>(a));
}

std::string to_string(const Verdict& v) {
  switch (v.truth) {
    case Truth::yes: return "true";
    case Truth::no: return "false";
    case Truth::unknown:
      return v.reason == UnknownReason::no_witness
                 ? "unknown (no-witness)"
                 : "unknown (budget-exhausted)";
  }
  return "unknown";
}

SchemaTerm SchemaTerm::meta(std::string name) {
  SchemaTerm t;
  t.is_meta_ = true;
  t.meta_name_ = std::move(name);
  return t;
}

SchemaTerm SchemaTerm::leaf(Sym constant) {
  SchemaTerm t;
  t.sym_ = std::move(constant);
  return t;
}

SchemaTerm SchemaTerm::app(Sym function, std::vector<SchemaTerm> args) {
  SchemaTerm t;
  t.sym_ = std::move(function);
  t.args_ = std::move(args);
  return t;
}

GroundTerm SchemaTerm::substitute(
    const std::map<std::string, GroundTerm>& env) const {
  if (is_meta_) {
    auto it = env.find(meta_name_);
    if (it == env.end())
      throw Error(ErrorCode::unknown_symbol,
                  "metavariable '" + meta_name_ + "' not bound");
    return it->second;
  }
  if (args_.empty()) return GroundTerm(sym_);
  std::vector<GroundTerm> args;
  args.reserve(args_.size());
  for (const auto& a : args_) args.push_back(a.substitute(env));
  return GroundTerm(sym_, std::move(args));
}

void SchemaTerm::collect_metas(std::set<std::string>& out) const {
  if (is_meta_) {
    out.insert(meta_name_);
    return;
  }
  for (const auto& a : args_) a.collect_metas(out);
}

SchemaSentence SchemaSentence::equation(std::vector<std::string> metavars,
                                        SchemaTerm lhs, SchemaTerm rhs) {
  SchemaSentence s;
  s.metavars_ = std::move(metavars);
  s.is_equation_ = true;
  s.lhs_ = std::move(lhs);
  s.rhs_ = std::move(rhs);
  std::set<std::string> used;
  s.lhs_.collect_metas(used);
  s.rhs_.collect_metas(used);
  for (const auto& m : used)
    if (std::find(s.metavars_.begin(), s.metavars_.end(), m) ==
        s.metavars_.end())
      throw Error(ErrorCode::unknown_symbol,
                  "metavariable '" + m + "' not declared by the schema");
  return s;
}

SchemaSentence SchemaSentence::pred_app(std::vector<std::string> metavars,
                                        Sym pred,
                                        std::vector<SchemaTerm> args) {
  SchemaSentence s;
  s.metavars_ = std::move(metavars);
  s.is_equation_ = false;
  s.pred_ = std::move(pred);
  s.args_ = std::move(args);
  std::set<std::string> used;
  for (const auto& a : s.args_) a.collect_metas(used);
  for (const auto& m : used)
    if (std::find(s.metavars_.begin(), s.metavars_.end(), m) ==
        s.metavars_.end())
      throw Error(ErrorCode::unknown_symbol,
                  "metavariable '" + m + "' not declared by the schema");
  return s;
}

void SchemaSentence::add_guard(const std::string& metavar,
                               GroundTerm forbidden) {
  if (std::find(metavars_.begin(), metavars_.end(), metavar) ==
      metavars_.end())
    throw Error(ErrorCode::unknown_symbol,
                "guard mentions undeclared metavariable '" + metavar + "'");
  guards_[metavar].push_back(std::move(forbidden));
}

EqSentence SchemaSentence::instantiate(
    const std::map<std::string, GroundTerm>& env) const {
  if (is_equation_)
    return EqSentence::equation(lhs_.substitute(env), rhs_.substitute(env));
  std::vector<GroundTerm> args;
  args.reserve(args_.size());
  for (const auto& a : args_) args.push_back(a.substitute(env));
  return EqSentence::pred_app(pred_, std::move(args));
}

bool SchemaSentence::guard_allows(
    const std::map<std::string, GroundTerm>& env) const {
  for (const auto& [metavar, forbidden] : guards_) {
    auto it = env.find(metavar);
    if (it == env.end()) continue;
    for (const auto& f : forbidden)
      if (it->second == f) return false;
  }
  return true;
}

namespace {

std::string schema_term_str(const SchemaTerm& t) {
  if (t.is_meta()) return "?" + t.meta_name();
  std::string out = eqcore::to_string(t.symbol());
  if (!t.args().empty()) {
    out += "(";
    for (size_t i = 0; i < t.args().size(); ++i) {
      if (i) out += ", ";
      out += schema_term_str(t.args()[i]);
    }
    out += ")";
  }
  return out;
}

}  // namespace

std::string to_string(const SchemaSentence& s) {
  std::string out = "{";
  for (size_t i = 0; i < s.metavars().size(); ++i) {
    if (i) out += ", ";
    out += s.metavars()[i];
  }
  out += "} ";
  if (s.is_equation())
    out += schema_term_str(s.lhs()) + " = " + schema_term_str(s.rhs());
  else {
    out += eqcore::to_string(s.pred()) + "(";
    for (size_t i = 0; i < s.args().size(); ++i) {
      if (i) out += ", ";
      out += schema_term_str(s.args()[i]);
    }
    out += ")";
  }
  return out;
}

namespace {

void check_schema_term(const EqSignature& sig, const SchemaTerm& t) {
  if (t.is_meta()) return;
  if (t.args().empty()) {
    if (!sig.is_constant(t.symbol()))
      throw Error(ErrorCode::unknown_symbol,
                  "'" + eqcore::to_string(t.symbol()) + "' is not a constant");
    return;
  }
  if (!sig.is_function(t.symbol()) ||
      sig.arity(t.symbol()) != static_cast<int>(t.args().size()))
    throw Error(ErrorCode::arity_mismatch,
                "bad application of '" + eqcore::to_string(t.symbol()) + "'");
  for (const auto& a : t.args()) check_schema_term(sig, a);
}

}  // namespace

void check_theory(const TheoryPres& t) {
  for (const auto& ax : t.ground_axioms) eqcore::check_sentence(t.sig, ax);
  for (const auto& sc : t.schemas) {
    if (sc.is_equation()) {
      check_schema_term(t.sig, sc.lhs());
      check_schema_term(t.sig, sc.rhs());
    } else {
      if (!t.sig.is_predicate(sc.pred()) ||
          t.sig.arity(sc.pred()) != static_cast<int>(sc.args().size()))
        throw Error(ErrorCode::arity_mismatch,
                    "bad application of '" + eqcore::to_string(sc.pred()) + "'");
      for (const auto& a : sc.args()) check_schema_term(t.sig, a);
    }
    for (const auto& [mv, terms] : sc.guards())
      for (const auto& g : terms) eqcore::check_term(t.sig, g);
  }
}

namespace {

std::size_t hash_term(const GroundTerm& t) {
  std::size_t h = std::hash<std::string>{}(t.symbol().name) * 3 +
                  static_cast<std::size_t>(t.symbol().tag);
  for (const auto& a : t.args())
    h = (h ^ hash_term(a)) * 0x100000001b3ull;
  return h;
}

struct SentenceHash {
  std::size_t operator()(const EqSentence& s) const {
    if (s.is_equation())
      return hash_term(s.lhs()) * 31 + hash_term(s.rhs());
    std::size_t h = std::hash<std::string>{}(s.pred().name) * 7 +
                    static_cast<std::size_t>(s.pred().tag);
    for (const auto& a : s.args())
      h = (h ^ hash_term(a)) * 0x100000001b3ull;
    return h;
  }
};

using SentenceSet = std::unordered_set<EqSentence, SentenceHash>;

bool tag_matches(Tag range, const Sym& s) {
  return range == Tag::plain || s.tag == range;
}

// Terms of depth exactly `depth` over the tagged fragment, in term order,
// stopping once `need` terms were produced.  `pool` holds all terms of
// smaller depth sorted by term order.
std::vector<GroundTerm> generate_level(const EqSignature& sig, Tag range,
                                       int depth,
                                       const std::vector<GroundTerm>& pool,
                                       std::int64_t need) {
  std::vector<GroundTerm> level;
  if (need <= 0) return level;
  if (depth == 1) {
    for (const auto& c : sig.constants())
      if (tag_matches(range, c)) {
        level.emplace_back(c);
        if (static_cast<std::int64_t>(level.size()) >= need) break;
      }
    return level;
  }
  std::vector<int> pool_depth;
  pool_depth.reserve(pool.size());
  for (const auto& t : pool) pool_depth.push_back(t.depth());
  for (const auto& [f, arity] : sig.functions()) {
    if (!tag_matches(range, f)) continue;
    if (pool.empty()) continue;
    std::vector<size_t> idx(static_cast<size_t>(arity), 0);
    while (true) {
      int max_child_depth = 0;
      for (size_t i = 0; i < idx.size(); ++i)
        max_child_depth = std::max(max_child_depth, pool_depth[idx[i]]);
      if (max_child_depth == depth - 1) {
        std::vector<GroundTerm> args;
        args.reserve(idx.size());
        for (size_t i = 0; i < idx.size(); ++i) args.push_back(pool[idx[i]]);
        level.emplace_back(f, std::move(args));
        if (static_cast<std::int64_t>(level.size()) >= need) return level;
      }
      // odometer over the sorted pool, last index fastest
      size_t k = idx.size();
      while (k > 0) {
        if (++idx[k - 1] < pool.size()) break;
        idx[k - 1] = 0;
        --k;
      }
      if (k == 0) break;
    }
  }
  std::sort(level.begin(), level.end());
  return level;
}

}  // namespace

std::vector<GroundTerm> enumerate_terms(const EqSignature& sig, Tag range_tag,
                                        int max_depth, std::int64_t limit) {
  std::vector<GroundTerm> out;
  std::vector<GroundTerm> pool;
  for (int d = 1; d <= max_depth; ++d) {
    if (static_cast<std::int64_t>(out.size()) >= limit) break;
    std::int64_t need = limit - static_cast<std::int64_t>(out.size());
    std::vector<GroundTerm> level = generate_level(sig, range_tag, d, pool, need);
    for (const auto& t : level) {
      if (static_cast<std::int64_t>(out.size()) >= limit) break;
      out.push_back(t);
    }
    pool.insert(pool.end(), level.begin(), level.end());
    std::sort(pool.begin(), pool.end());
  }
  return out;
}

namespace {

struct TermPool {
  std::vector<GroundTerm> terms;  // (depth, lex)-ordered
  std::vector<int> depths;
};

// Emits the instances of one schema in (max substituted depth, lexicographic)
// order until the cap is reached.
void instantiate_one(const SchemaSentence& schema, const EntailBudget& budget,
                     const TermPool& pool_cache, SentenceSet& seen,
                     std::vector<EqSentence>& out) {
  const auto& metavars = schema.metavars();
  std::int64_t cap = budget.max_instantiations;
  if (metavars.empty()) {
    EqSentence inst = schema.instantiate({});
    if (seen.insert(inst).second) out.push_back(inst);
    return;
  }
  if (budget.max_term_depth < 1) return;

  const std::vector<GroundTerm>& pool = pool_cache.terms;
  const std::vector<int>& pool_depth = pool_cache.depths;
  if (pool.empty()) return;

  std::int64_t emitted = 0;
  size_t k = metavars.size();
  for (int d = 1; d <= budget.max_term_depth && emitted < cap; ++d) {
    // components range over terms of depth <= d; keep only tuples whose
    // maximum component depth is exactly d
    std::vector<std::pair<const GroundTerm*, int>> pd;
    for (size_t i = 0; i < pool.size(); ++i)
      if (pool_depth[i] <= d) pd.emplace_back(&pool[i], pool_depth[i]);
    if (pd.empty()) continue;
    std::vector<size_t> idx(k, 0);
    while (emitted < cap) {
      int maxd = 0;
      for (size_t i = 0; i < k; ++i) maxd = std::max(maxd, pd[idx[i]].second);
      if (maxd == d) {
        std::map<std::string, GroundTerm> env;
        for (size_t i = 0; i < k; ++i) env.emplace(metavars[i], *pd[idx[i]].first);
        if (schema.guard_allows(env)) {
          EqSentence inst = schema.instantiate(env);
          if (seen.insert(inst).second) {
            out.push_back(std::move(inst));
            ++emitted;
          }
        }
      }
      size_t j = k;
      while (j > 0) {
        if (++idx[j - 1] < pd.size()) break;
        idx[j - 1] = 0;
        --j;
      }
      if (j == 0) break;
    }
  }
}

}  // namespace

std::vector<EqSentence> instantiate_schemas(const TheoryPres& t,
                                            const EntailBudget& b) {
  if (!t.schemas.empty() && b.max_instantiations <= 0)
    throw Error(ErrorCode::budget_zero_with_schemas,
                "theory has schemas but the instantiation budget is zero");
  std::vector<EqSentence> out = t.ground_axioms;
  SentenceSet seen(out.begin(), out.end());
  // the term pool is sized so that every schema reaches its cap within it;
  // shared across the schemas of the same range
  std::map<Tag, TermPool> pools;
  for (const auto& schema : t.schemas) {
    auto it = pools.find(schema.range_tag());
    if (it == pools.end()) {
      TermPool pool;
      pool.terms = enumerate_terms(t.sig, schema.range_tag(), b.max_term_depth,
                                   2 * b.max_instantiations + 256);
      pool.depths.reserve(pool.terms.size());
      for (const auto& term : pool.terms) pool.depths.push_back(term.depth());
      it = pools.emplace(schema.range_tag(), std::move(pool)).first;
    }
    instantiate_one(schema, b, it->second, seen, out);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Congruence closure

int ClosureState::sym_id(const Sym& s) {
  auto it = sym_ids_.find(s);
  if (it != sym_ids_.end()) return it->second;
  int id = static_cast<int>(sym_ids_.size());
  sym_ids_.emplace(s, id);
  return id;
}

int ClosureState::sym_id(const Sym& s) const {
  auto it = sym_ids_.find(s);
  return it == sym_ids_.end() ? -1 : it->second;
}

int ClosureState::intern(const GroundTerm& t) {
  std::vector<int> children;
  children.reserve(t.args().size());
  for (const auto& a : t.args()) children.push_back(intern(a));
  NodeKey key{sym_id(t.symbol()), std::move(children)};
  auto it = node_index_.find(key);
  if (it != node_index_.end()) return it->second;
  int id = static_cast<int>(nodes_.size());
  nodes_.push_back(Node{key.first, key.second, t});
  node_index_.emplace(std::move(key), id);
  parent_.push_back(id);
  uses_.emplace_back();
  return id;
}

int ClosureState::find(int a) const {
  while (parent_[a] != a) {
    parent_[a] = parent_[parent_[a]];
    a = parent_[a];
  }
  return a;
}

void ClosureState::close(std::vector<std::pair<int, int>> equations) {
  std::deque<std::pair<int, int>> pending(equations.begin(), equations.end());
  NodeIndex sig_table;
  auto canon_key = [&](int node) {
    std::vector<int> kids;
    kids.reserve(nodes_[node].children.size());
    for (int c : nodes_[node].children) kids.push_back(find(c));
    return NodeKey{nodes_[node].sym, std::move(kids)};
  };
  // interning dedupes structurally identical terms, so seeding cannot find
  // congruent pairs yet; it only fills the table
  for (int i = 0; i < static_cast<int>(nodes_.size()); ++i) {
    if (nodes_[i].children.empty()) continue;
    sig_table.emplace(canon_key(i), i);
  }
  while (!pending.empty()) {
    auto [x, y] = pending.front();
    pending.pop_front();
    int rx = find(x), ry = find(y);
    if (rx == ry) continue;
    if (uses_[rx].size() < uses_[ry].size()) std::swap(rx, ry);
    parent_[ry] = rx;
    // app nodes with a child formerly canonicalized to ry change key
    auto moved = std::move(uses_[ry]);
    uses_[ry].clear();
    for (int u : moved) {
      auto key = canon_key(u);
      auto it = sig_table.find(key);
      if (it == sig_table.end())
        sig_table.emplace(std::move(key), u);
      else if (find(it->second) != find(u))
        pending.emplace_back(it->second, u);
      uses_[rx].push_back(u);
    }
  }
}

int ClosureState::lookup(const GroundTerm& t) const {
  // locate without interning; -1 when any subterm is unknown
  int sid = sym_id(t.symbol());
  if (sid < 0) return -1;
  std::vector<int> children;
  children.reserve(t.args().size());
  for (const auto& a : t.args()) {
    int c = lookup(a);
    if (c < 0) return -1;
    children.push_back(c);
  }
  auto it = node_index_.find(NodeKey{sid, std::move(children)});
  return it == node_index_.end() ? -1 : it->second;
}

ClosureState::ClosureState(const std::vector<EqSentence>& sentences,
                           const std::vector<GroundTerm>& universe) {
  for (const auto& t : universe) intern(t);
  std::vector<std::pair<int, int>> equations;
  for (const auto& s : sentences) {
    if (s.is_equation()) {
      equations.emplace_back(intern(s.lhs()), intern(s.rhs()));
    } else {
      std::vector<int> args;
      args.reserve(s.args().size());
      for (const auto& a : s.args()) args.push_back(intern(a));
      raw_facts_.emplace_back(sym_id(s.pred()), std::move(args));
    }
  }
  // use lists: app node u is relevant to the class of each child
  for (int i = 0; i < static_cast<int>(nodes_.size()); ++i)
    for (int c : nodes_[i].children) uses_[find(c)].push_back(i);
  close(std::move(equations));
  for (const auto& [pred, args] : raw_facts_) {
    std::vector<int> canon;
    canon.reserve(args.size());
    for (int a : args) canon.push_back(find(a));
    facts_.emplace(pred, std::move(canon));
  }
}

bool ClosureState::same_class(const GroundTerm& a, const GroundTerm& b) const {
  if (a == b) return true;
  int na = lookup(a), nb = lookup(b);
  if (na < 0 || nb < 0) return false;
  return find(na) == find(nb);
}

bool ClosureState::holds(const Sym& pred,
                         const std::vector<GroundTerm>& args) const {
  int pid = sym_id(pred);
  if (pid < 0) return false;
  std::vector<int> canon;
  canon.reserve(args.size());
  for (const auto& a : args) {
    int n = lookup(a);
    if (n < 0) return false;
    canon.push_back(find(n));
  }
  return facts_.count(std::make_pair(pid, canon)) != 0;
}

bool ClosureState::holds(const EqSentence& s) const {
  if (s.is_equation()) return same_class(s.lhs(), s.rhs());
  return holds(s.pred(), s.args());
}

bool ClosureState::in_universe(const GroundTerm& t) const {
  return lookup(t) >= 0;
}

std::vector<std::vector<GroundTerm>> ClosureState::classes() const {
  std::map<int, std::vector<GroundTerm>> by_rep;
  for (size_t i = 0; i < nodes_.size(); ++i)
    by_rep[find(static_cast<int>(i))].push_back(nodes_[i].term);
  std::vector<std::vector<GroundTerm>> out;
  for (auto& [rep, members] : by_rep) {
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

ClosureState congruence_close(const std::vector<EqSentence>& sentences,
                              const std::vector<GroundTerm>& universe) {
  return ClosureState(sentences, universe);
}

Verdict entails(const TheoryPres& t, const EqSentence& goal,
                const EntailBudget& b) {
  try {
    eqcore::check_sentence(t.sig, goal);
  } catch (const Error& e) {
    throw Error(ErrorCode::ill_formed_goal, e.what());
  }
  std::vector<EqSentence> axioms = instantiate_schemas(t, b);
  std::vector<GroundTerm> goal_terms;
  if (goal.is_equation()) {
    goal_terms.push_back(goal.lhs());
    goal_terms.push_back(goal.rhs());
  } else {
    goal_terms = goal.args();
  }
  ClosureState closure(axioms, goal_terms);
  if (closure.holds(goal)) return Verdict::yes();
  if (t.schemas.empty()) return Verdict::no();
  return Verdict::unknown(UnknownReason::budget_exhausted);
}

}  // namespace relkit::entail
