#pragma once

#include <chrono>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "shtrim/builtins.hpp"
#include "shtrim/domain_ops.hpp"
#include "shtrim/liveness.hpp"
#include "shtrim/parser.hpp"
#include "shtrim/printer.hpp"
#include "shtrim/term.hpp"
#include "shtrim/unify.hpp"

namespace shtrim {

enum class Strategy { classic, trim };

inline const char* strategy_name(Strategy s) {
  return s == Strategy::classic ? "classic" : "trim";
}

struct SolverConfig {
  Strategy strategy = Strategy::classic;
  BuiltinTable builtins;
  std::optional<std::chrono::steady_clock::time_point> deadline;
  /// Abstraction-size ceiling; exceeding it raises the size-guard interrupt
  /// (the out-of-memory failure class).
  size_t max_sharing_sets = size_t{1} << 22;
  /// Per-pattern fixpoint iteration cap. Both domains are finite, so hitting
  /// this signals a solver bug rather than genuine divergence.
  uint64_t iteration_guard = 100000;
  bool record_points = true;
  bool trace_pipeline = false;
  /// Strictly-more-precise topmost that drops ground variables; off by
  /// default and excluded from golden comparisons.
  bool topmost_filter_ground = false;
};

struct AnalysisStats {
  uint64_t literals = 0;
  uint64_t iterations = 0;
  size_t max_abs_size = 0;
  size_t max_live = 0;
  std::map<std::string, size_t> max_live_per_clause;
  double elapsed_ms = 0;
};

struct EntryResult {
  std::string goal_text;
  std::string call_text;
  std::string prime_text;
  std::string succ_text;
  ShareAbs call_share;
  ShareAbs prime_share;
  ShareAbs succ_share;
  VarList goal_var_ids;
};

struct CallPatternResult {
  std::string key;
  std::string pred;
  std::string goal_text;
  std::string call_text;
  std::string succ_text;
  /// Canonicalized over positional variable ids 0..k-1.
  ShareAbs call_share;
  ShareAbs succ_share;
  uint64_t iterations = 0;
};

/// Last-iteration pipeline stages for one analyzed clause, textual form.
struct PipelineTrace {
  std::string proj;
  std::string entry_pre;  // call_to_entry result, before any augment
  std::string entry;
  std::string exit;
  std::string beta;
  std::string prime;
};

struct AnalysisResult {
  std::vector<EntryResult> entries;
  std::vector<CallPatternResult> patterns;
  std::map<std::string, std::vector<std::string>> program_points;
  std::map<std::string, PipelineTrace> traces;
  AnalysisStats stats;
};

/// Goal-dependent top-down fixpoint engine over a set-sharing domain.
/// Call patterns are tabled; re-analysis is driven by per-entry dependency
/// sets. One analyzer instance is single-threaded; distinct instances share
/// nothing and may run concurrently.
template <class Ops>
class Analyzer {
public:
  using Abs = typename Ops::Abs;

  Analyzer(const Program& program, SolverConfig config)
      : prog_(program), cfg_(std::move(config)) {}

  AnalysisResult run() {
    auto t0 = std::chrono::steady_clock::now();
    instantiate_entries();
    uint64_t version_before;
    do {
      version_before = version_;
      for (size_t i = 0; i < entry_goals_.size(); ++i) analyze_entry(i);
      drain_dirty();
    } while (version_ != version_before);
    result_.stats = stats_;
    result_.stats.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    collect_patterns();
    return std::move(result_);
  }

  const AnalysisStats& stats() const { return stats_; }
  const FreshVars& names() const { return fresh_; }

private:
  struct TableEntry {
    PredKey pred;
    Term goal;             // instantiated canonical goal (fresh ids, names _0.._k-1)
    std::vector<VarId> goal_order;  // its variables in occurrence order
    Abs call;
    Abs success;
    bool stable = false;
    bool dirty = false;
    uint64_t iterations = 0;
    std::set<std::string> dependents;
  };

  void check_deadline() {
    if (cfg_.deadline && std::chrono::steady_clock::now() > *cfg_.deadline)
      throw analysis_interrupt(InterruptKind::timeout);
  }

  void note_size(size_t n) {
    if (n > stats_.max_abs_size) stats_.max_abs_size = n;
  }

  size_t guard() const { return cfg_.max_sharing_sets; }

  NameFn names_fn() {
    return [this](VarId v) { return fresh_.name(v); };
  }

  void instantiate_entries() {
    for (const Entry& e : prog_.entries) {
      std::vector<VarId> mapping;
      std::map<std::string, VarId> by_name;
      mapping.reserve(e.var_names.size());
      for (const std::string& n : e.var_names) {
        VarId id = fresh_.fresh(n);
        mapping.push_back(id);
        by_name.emplace(n, id);
      }
      Term goal = instantiate_term(e.goal, mapping);
      VarList gv = vars_of(goal);
      ShareAbs call;
      if (e.sharing) {
        std::vector<VarList> groups;
        VarList dom = gv;
        for (const auto& g : *e.sharing) {
          VarList ids;
          for (const std::string& n : g) {
            auto it = by_name.find(n);
            VarId id;
            if (it == by_name.end()) {
              id = fresh_.fresh(n);
              by_name.emplace(n, id);
            } else {
              id = it->second;
            }
            ids.push_back(id);
          }
          sort_unique(ids);
          dom = unite(dom, ids);
          groups.push_back(std::move(ids));
        }
        call = ShareAbs::make(dom, groups);
      } else {
        call = share::topmost(gv, ShareAbs::top_empty(), false, cfg_.max_sharing_sets);
      }
      entry_goals_.push_back(std::move(goal));
      entry_calls_.push_back(Ops::from_share(call, cfg_.max_sharing_sets));
    }
    result_.entries.resize(entry_goals_.size());
  }

  void analyze_entry(size_t idx) {
    const Term& goal = entry_goals_[idx];
    const Abs& call = entry_calls_[idx];
    VarList gv = vars_of(goal);
    Abs proj = Ops::project(gv, call);
    Abs prime;
    if (prog_.find(pred_key_of(goal))) {
      prime = analyze_call(goal, proj);
    } else {
      // Out-of-scope entry goal: assume the topmost information.
      prime = Ops::topmost(gv, proj, cfg_.topmost_filter_ground, guard());
    }
    Abs succ = Ops::is_bottom(prime) ? Ops::bottom() : Ops::extend(call, gv, prime, guard());
    NameFn nm = names_fn();
    EntryResult& r = result_.entries[idx];
    r.goal_text = print_term(goal, nm);
    r.call_text = Ops::to_text(call, nm);
    r.prime_text = Ops::to_text(prime, nm);
    r.succ_text = Ops::to_text(succ, nm);
    r.call_share = Ops::to_share(call, guard());
    r.prime_share = Ops::to_share(prime, guard());
    r.succ_share = Ops::to_share(succ, guard());
    r.goal_var_ids = gv;
  }

  /// Positional renaming of a goal's variables: first occurrence -> 0,1,...
  static Term positional_goal(const Term& t, const std::map<VarId, VarId>& to_pos) {
    switch (t.kind) {
      case Term::Kind::var: return Term::make_var(to_pos.at(t.var));
      case Term::Kind::structure: {
        std::vector<Term> args;
        args.reserve(t.args.size());
        for (const Term& a : t.args) args.push_back(positional_goal(a, to_pos));
        return Term::make_struct(t.name, std::move(args));
      }
      default: return t;
    }
  }

  /// Success abstraction for one goal under its projected call, through the
  /// call-pattern table. Renaming-equivalent calls share one table key.
  Abs analyze_call(const Term& goal, const Abs& proj) {
    std::vector<VarId> order = vars_in_order(goal);
    std::map<VarId, VarId> to_pos;
    for (size_t i = 0; i < order.size(); ++i) to_pos[order[i]] = static_cast<VarId>(i);
    NameFn positional = [](VarId v) { return "_" + std::to_string(v); };
    Term pos_goal = positional_goal(goal, to_pos);
    Abs pos_call = Ops::rename(proj, [&to_pos](VarId v) { return to_pos.at(v); });
    std::string key = pred_key_of(goal).str() + "|" + print_term(pos_goal, positional) + "|" +
                      Ops::to_text(pos_call, positional);

    auto it = table_.find(key);
    if (it == table_.end()) {
      TableEntry e;
      e.pred = pred_key_of(goal);
      // The table's own goal instance gets fresh ids so clause instances and
      // nested contexts can never collide with it.
      std::vector<VarId> inst;
      inst.reserve(order.size());
      for (size_t i = 0; i < order.size(); ++i)
        inst.push_back(fresh_.fresh("_" + std::to_string(i)));
      std::map<VarId, VarId> to_inst;
      for (size_t i = 0; i < order.size(); ++i) to_inst[order[i]] = inst[i];
      e.goal = positional_goal(goal, to_inst);
      e.goal_order = inst;
      e.call = Ops::rename(proj, [&to_inst](VarId v) { return to_inst.at(v); });
      e.success = Ops::bottom();
      it = table_.emplace(key, std::move(e)).first;
      record_dependent(key, it->second);
      iterate(key, it->second);
    } else {
      record_dependent(key, it->second);
      if (it->second.stable && it->second.dirty) iterate(key, it->second);
      // An in-progress entry hands back its current approximation.
    }
    const std::vector<VarId>& inst = it->second.goal_order;
    std::map<VarId, VarId> back;
    for (size_t i = 0; i < order.size(); ++i) back[inst[i]] = order[i];
    return Ops::rename(it->second.success, [&back](VarId v) { return back.at(v); });
  }

  void record_dependent(const std::string& key, TableEntry& e) {
    if (!stack_.empty() && stack_.back() != key) e.dependents.insert(stack_.back());
  }

  void iterate(const std::string& key, TableEntry& e) {
    stack_.push_back(key);
    e.stable = false;
    const std::vector<Clause>* clauses = prog_.find(e.pred);
    bool changed;
    do {
      check_deadline();
      changed = false;
      e.dirty = false;
      Abs next = Ops::bottom();
      if (clauses) {
        for (size_t ci = 0; ci < clauses->size(); ++ci) {
          Abs prime = analyze_clause(key, e, (*clauses)[ci], ci);
          next = Ops::lub(next, prime);
        }
      }
      ++e.iterations;
      ++stats_.iterations;
      if (e.iterations > cfg_.iteration_guard)
        throw analysis_interrupt(InterruptKind::iteration_guard);
      if (!Ops::equal(next, e.success)) {
        if (!Ops::leq(e.success, next))
          throw std::logic_error("call-pattern success shrank across iterations");
        e.success = std::move(next);
        ++version_;
        changed = true;
        invalidate_dependents(e);
      }
    } while (changed || e.dirty);
    e.stable = true;
    stack_.pop_back();
  }

  void invalidate_dependents(TableEntry& origin) {
    std::vector<std::string> work(origin.dependents.begin(), origin.dependents.end());
    std::set<std::string> seen(work.begin(), work.end());
    while (!work.empty()) {
      std::string k = std::move(work.back());
      work.pop_back();
      auto it = table_.find(k);
      if (it == table_.end()) continue;
      it->second.dirty = true;
      for (const std::string& d : it->second.dependents)
        if (seen.insert(d).second) work.push_back(d);
    }
  }

  void drain_dirty() {
    for (;;) {
      bool any = false;
      for (auto& [key, e] : table_) {
        if (e.stable && e.dirty) {
          iterate(key, e);
          any = true;
        }
      }
      if (!any) return;
    }
  }

  Abs analyze_clause(const std::string& key, TableEntry& e, const Clause& clause, size_t ci) {
    check_deadline();
    ClauseInstance inst = rename_apart(clause, fresh_);
    // Clause selection: heads that cannot unify contribute nothing.
    if (!unify_solved_form(e.goal, inst.head)) return Ops::bottom();
    const Abs& proj = e.call;
    Abs entry_pre = Ops::call_to_entry(proj, e.goal, inst.head, guard());
    NameFn nm = names_fn();
    PipelineTrace trace;
    if (cfg_.trace_pipeline) {
      trace.proj = Ops::to_text(proj, nm);
      trace.entry_pre = Ops::to_text(entry_pre, nm);
    }
    Abs prime = Ops::bottom();
    if (!Ops::is_bottom(entry_pre)) {
      VarList hv = vars_of(inst.head);
      Abs entry = entry_pre;
      if (cfg_.strategy == Strategy::classic) {
        VarList body_extra;
        for (const Literal& lit : inst.body) body_extra = unite(body_extra, vars_of(lit));
        body_extra = subtract(body_extra, hv);
        entry = Ops::augment(body_extra, entry_pre);
      }
      if (cfg_.trace_pipeline) trace.entry = Ops::to_text(entry, nm);
      note_size(Ops::rep_size(entry));
      std::string point_key = key + "#c" + std::to_string(ci);
      Abs exit = entry_to_exit(std::move(entry), inst, point_key, nm);
      if (cfg_.trace_pipeline) trace.exit = Ops::to_text(exit, nm);
      if (!Ops::is_bottom(exit)) {
        Abs beta = Ops::project(hv, exit);
        if (cfg_.trace_pipeline) trace.beta = Ops::to_text(beta, nm);
        prime = Ops::exit_to_prime(beta, inst.head, e.goal, proj, guard());
      }
    }
    if (cfg_.trace_pipeline) {
      trace.prime = Ops::to_text(prime, nm);
      result_.traces[key + "#c" + std::to_string(ci)] = std::move(trace);
    }
    note_size(Ops::rep_size(prime));
    return prime;
  }

  Abs entry_to_exit(Abs exit, const ClauseInstance& inst, const std::string& point_key,
                    const NameFn& nm) {
    const bool trim = cfg_.strategy == Strategy::trim;
    VarList hv = vars_of(inst.head);
    VarList live = hv;
    std::vector<std::string>* points = nullptr;
    if (cfg_.record_points) {
      points = &result_.program_points[point_key];
      points->assign(inst.body.size(), "");
    }
    size_t clause_max_live = live.size();
    for (size_t i = 0; i < inst.body.size(); ++i) {
      check_deadline();
      if (Ops::is_bottom(exit)) break;  // strict: the rest is unreachable
      const Literal& lit = inst.body[i];
      ++stats_.literals;
      if (trim) {
        VarList newly_live = live_vars(live, lit);
        live = unite(live, newly_live);
        exit = Ops::augment(newly_live, exit);
      }
      VarList lv = vars_of(lit);
      Abs proj = Ops::project(lv, exit);
      Abs transfer;
      if (lit.kind == Literal::Kind::call && prog_.find(pred_key_of(lit.goal))) {
        transfer = analyze_call(lit.goal, proj);
      } else {
        std::optional<Abs> known = abstract_literal(lit, proj);
        transfer = known ? std::move(*known)
                         : Ops::topmost(lv, proj, cfg_.topmost_filter_ground, guard());
      }
      note_size(Ops::rep_size(transfer));
      exit = Ops::is_bottom(transfer) ? Ops::bottom() : Ops::extend(exit, lv, transfer, guard());
      if (trim && !Ops::is_bottom(exit)) {
        VarList dead = dead_vars(live, hv, std::span<const Literal>(inst.body).subspan(i + 1));
        live = subtract(live, dead);
        exit = Ops::project(live, exit);
        if (Ops::domain(exit) != live)
          throw std::logic_error("trimmed exit domain diverged from the live set");
        if (live.size() > clause_max_live) clause_max_live = live.size();
        if (live.size() > stats_.max_live) stats_.max_live = live.size();
      }
      note_size(Ops::rep_size(exit));
      if (points) (*points)[i] = Ops::to_text(exit, nm);
    }
    if (trim) {
      auto& slot = stats_.max_live_per_clause[point_key];
      if (clause_max_live > slot) slot = clause_max_live;
    }
    return exit;
  }

  /// Unification literals run the domain transfer; out-of-scope calls with a
  /// grounding summary ground the listed argument positions; anything else
  /// reports fail so the caller assumes topmost.
  std::optional<Abs> abstract_literal(const Literal& lit, const Abs& proj) {
    if (lit.kind == Literal::Kind::unify)
      return Ops::abstract_unify(lit.lhs, lit.rhs, proj, guard());
    const std::vector<int>* grounded = cfg_.builtins.lookup(pred_key_of(lit.goal));
    if (!grounded) return std::nullopt;
    VarList gvars;
    for (int pos : *grounded) {
      if (lit.goal.kind == Term::Kind::structure && pos >= 1 &&
          pos <= static_cast<int>(lit.goal.args.size()))
        gvars = unite(gvars, vars_of(lit.goal.args[pos - 1]));
    }
    return Ops::ground_vars(gvars, proj);
  }

  void collect_patterns() {
    NameFn nm = names_fn();
    for (const auto& [key, e] : table_) {
      CallPatternResult r;
      r.key = key;
      r.pred = e.pred.str();
      r.goal_text = print_term(e.goal, nm);
      r.call_text = Ops::to_text(e.call, nm);
      r.succ_text = Ops::to_text(e.success, nm);
      std::map<VarId, VarId> to_pos;
      for (size_t i = 0; i < e.goal_order.size(); ++i)
        to_pos[e.goal_order[i]] = static_cast<VarId>(i);
      auto pos_fn = [&to_pos](VarId v) { return to_pos.at(v); };
      r.call_share = share::rename(Ops::to_share(e.call, guard()), pos_fn);
      r.succ_share = share::rename(Ops::to_share(e.success, guard()), pos_fn);
      r.iterations = e.iterations;
      result_.patterns.push_back(std::move(r));
    }
  }

  const Program& prog_;
  SolverConfig cfg_;
  FreshVars fresh_;
  std::map<std::string, TableEntry> table_;
  std::vector<std::string> stack_;
  std::vector<Term> entry_goals_;
  std::vector<Abs> entry_calls_;
  AnalysisResult result_;
  AnalysisStats stats_;
  uint64_t version_ = 0;
};

using ShareAnalyzer = Analyzer<ShareOps>;
using CliqueAnalyzer = Analyzer<CliqueOps>;

}  // namespace shtrim
