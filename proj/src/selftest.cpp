#include "shtrim/selftest.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "shtrim/bench.hpp"
#include "shtrim/clique_abs.hpp"
#include "shtrim/json_out.hpp"
#include "shtrim/parser.hpp"
#include "shtrim/solver.hpp"

namespace shtrim {

namespace fs = std::filesystem;

std::string SelftestReport::summary() const {
  std::ostringstream os;
  os << (ok ? "selftest: PASS" : "selftest: FAIL") << " (" << checks << " checks, "
     << failures.size() << " mismatches)";
  return os.str();
}

std::vector<Term> term_family(const VarList& vars) {
  std::vector<Term> out;
  out.push_back(Term::make_atom("a"));
  out.push_back(Term::make_int(7));
  for (VarId v : vars) out.push_back(Term::make_var(v));
  // Every variable subset appears with a flat, a nested, and a list shape,
  // so the sweep covers all rel(vars(t)) cases with several depth-2 terms.
  size_t n = vars.size();
  for (uint64_t sub = 1; sub < (uint64_t{1} << n); ++sub) {
    std::vector<Term> members;
    for (size_t i = 0; i < n; ++i)
      if (sub & (uint64_t{1} << i)) members.push_back(Term::make_var(vars[i]));
    out.push_back(Term::make_struct("f", members));
    {
      std::vector<Term> nested;
      std::vector<Term> inner{members[0]};
      nested.push_back(Term::make_struct("g", inner));
      for (size_t i = 1; i < members.size(); ++i) nested.push_back(members[i]);
      nested.push_back(Term::make_atom("a"));
      out.push_back(Term::make_struct("f", nested));
    }
    {
      Term list = Term::make_atom("[]");
      for (auto it = members.rbegin(); it != members.rend(); ++it) {
        std::vector<Term> cell{*it, list};
        list = Term::make_struct(".", cell);
      }
      out.push_back(list);
    }
  }
  return out;
}

namespace {

NameFn plain_names() {
  return [](VarId v) { return "v" + std::to_string(v); };
}

std::string describe_abs(const ShareAbs& a) { return share::to_text(a, plain_names()); }

std::string describe_term(const Term& t) { return print_term(t, plain_names()); }

// Check-harness operation table; a mutation swaps in a deliberately broken
// variant so the harness can prove it detects corruption.
struct HarnessOps {
  std::function<ShareAbs(VarId, const Term&, const ShareAbs&)> amgu;
  std::function<ShareAbs(const ShareAbs&, const VarList&, const ShareAbs&)> extend;

  static HarnessOps make(const std::string& mutate) {
    HarnessOps ops;
    if (mutate == "amgu") {
      ops.amgu = [](VarId x, const Term& t, const ShareAbs& a) {
        // Corrupted: no star closure on either side.
        VarList tv = vars_of(t);
        uint64_t xm = a.mask_of({x});
        uint64_t tm = a.mask_of(tv);
        std::vector<uint64_t> rel_x, rel_t, irrel;
        for (uint64_t g : a.groups()) {
          bool rx = g & xm, rt = g & tm;
          if (rx) rel_x.push_back(g);
          if (rt) rel_t.push_back(g);
          if (!rx && !rt) irrel.push_back(g);
        }
        std::vector<uint64_t> merged = share::bin_union(rel_x, rel_t);
        merged.insert(merged.end(), irrel.begin(), irrel.end());
        return ShareAbs::from_masks(a.domain(), std::move(merged));
      };
    } else {
      ops.amgu = [](VarId x, const Term& t, const ShareAbs& a) { return share::amgu(x, t, a); };
    }
    if (mutate == "extend") {
      ops.extend = [](const ShareAbs& call, const VarList& gv, const ShareAbs& prime) {
        // Corrupted: filters the raw relevant groups instead of their star
        // closure.
        if (call.is_bottom() || prime.is_bottom()) return ShareAbs::bottom();
        uint64_t gm = call.mask_of(gv);
        std::vector<uint64_t> out;
        ShareAbs pr = share::project(gv, prime);
        for (uint64_t g : call.groups()) {
          if (!(g & gm)) {
            out.push_back(g);
            continue;
          }
          ShareAbs probe = ShareAbs::from_masks(call.domain(), {g});
          ShareAbs part = share::project(gv, probe);
          if (!part.groups().empty() &&
              std::binary_search(pr.groups().begin(), pr.groups().end(), part.groups()[0] /* same domain order */))
            out.push_back(g);
        }
        return ShareAbs::from_masks(call.domain(), std::move(out));
      };
    } else {
      ops.extend = [](const ShareAbs& call, const VarList& gv, const ShareAbs& prime) {
        return share::extend(call, gv, prime);
      };
    }
    return ops;
  }
};

void amgu_sweep_with(const HarnessOps& ops, int max_domain, uint64_t& checks,
                     std::vector<std::string>& failures) {
  for (int n = 1; n <= max_domain; ++n) {
    VarList dom;
    for (int i = 0; i < n; ++i) dom.push_back(static_cast<VarId>(i));
    std::vector<Term> terms = term_family(dom);
    std::vector<ShareAbs> universe = share::all_abstractions(dom);
    for (const ShareAbs& a : universe) {
      for (VarId x : dom) {
        for (const Term& t : terms) {
          ShareAbs got = ops.amgu(x, t, a);
          ShareAbs want = share::amgu_reference(x, t, a);
          ++checks;
          if (got != want) {
            std::ostringstream os;
            os << "amgu mismatch: x=v" << x << " t=" << describe_term(t)
               << " a=" << describe_abs(a) << " got=" << describe_abs(got)
               << " want=" << describe_abs(want);
            failures.push_back(os.str());
            if (failures.size() > 20) return;
          }
        }
      }
    }
  }
}

void extend_checks_with(const HarnessOps& ops, int max_domain, uint64_t& checks,
                        std::vector<std::string>& failures) {
  for (int n = 1; n <= std::min(max_domain, 3); ++n) {
    VarList dom;
    for (int i = 0; i < n; ++i) dom.push_back(static_cast<VarId>(i));
    std::vector<ShareAbs> universe = share::all_abstractions(dom);
    for (const ShareAbs& a : universe) {
      for (uint64_t sub = 1; sub < (uint64_t{1} << n); ++sub) {
        VarList vs;
        for (int i = 0; i < n; ++i)
          if (sub & (uint64_t{1} << i)) vs.push_back(dom[i]);
        uint64_t vs_mask = a.mask_of(vs);
        std::vector<uint64_t> rel, irrel;
        for (uint64_t g : a.groups())
          (g & vs_mask ? rel : irrel).push_back(g);
        // Extending with no information at all keeps the irrelevant part
        // and the full star closure of the relevant part.
        ShareAbs top = share::topmost(vs, share::project(vs, a));
        ShareAbs got = ops.extend(a, vs, top);
        std::vector<uint64_t> expect = share::star_closure(rel);
        expect.insert(expect.end(), irrel.begin(), irrel.end());
        ShareAbs want = ShareAbs::from_masks(a.domain(), std::move(expect));
        ++checks;
        if (got != want) {
          std::ostringstream os;
          os << "extend mismatch: call=" << describe_abs(a) << " vs={";
          for (VarId v : vs) os << 'v' << v << ' ';
          os << "} prime=" << describe_abs(top) << " got=" << describe_abs(got)
             << " want=" << describe_abs(want);
          failures.push_back(os.str());
          if (failures.size() > 20) return;
        }
        // Extending with the projection can only add merge groups.
        ShareAbs same = ops.extend(a, vs, share::project(vs, a));
        ++checks;
        if (!share::leq(a, same)) {
          failures.push_back("extend lost call information on " + describe_abs(a));
          if (failures.size() > 20) return;
        }
      }
    }
  }
}

void clique_unary_checks(const VarList& dom, const ShareAbs& a, uint64_t& checks,
                         std::vector<std::string>& failures) {
  auto fail = [&](const std::string& op, const ShareAbs& got, const ShareAbs& want) {
    std::ostringstream os;
    os << op << " commutation mismatch on a=" << describe_abs(a) << " got=" << describe_abs(got)
       << " want=" << describe_abs(want);
    failures.push_back(os.str());
  };
  CliqueAbs c = clique::compress(a);
  ++checks;
  if (clique::decompress(c) != a) fail("compress/decompress", clique::decompress(c), a);
  size_t n = dom.size();
  for (uint64_t sub = 0; sub < (uint64_t{1} << n); ++sub) {
    VarList vs;
    for (size_t i = 0; i < n; ++i)
      if (sub & (uint64_t{1} << i)) vs.push_back(dom[i]);
    ++checks;
    ShareAbs got = clique::decompress(clique::project(vs, c));
    ShareAbs want = share::project(vs, a);
    if (got != want) fail("project_c", got, want);
    ++checks;
    got = clique::decompress(clique::topmost(vs, c));
    want = share::topmost(vs, a);
    if (got != want) fail("topmost_c", got, want);
    ++checks;
    got = clique::decompress(clique::ground_vars(vs, c));
    want = share::ground_vars(vs, a);
    if (got != want) fail("ground_vars_c", got, want);
  }
  for (VarList fresh : {VarList{100}, VarList{100, 101}}) {
    ++checks;
    ShareAbs got = clique::decompress(clique::augment(fresh, c));
    ShareAbs want = share::augment(fresh, a);
    if (got != want) fail("augment_c", got, want);
  }
}

void clique_binary_checks(const VarList& dom, const std::vector<ShareAbs>& universe, size_t ai,
                          size_t stride, uint64_t& checks,
                          std::vector<std::string>& failures) {
  const ShareAbs& a = universe[ai];
  CliqueAbs ca = clique::compress(a);
  auto fail = [&](const std::string& op, const ShareAbs& b, const ShareAbs& got,
                  const ShareAbs& want) {
    std::ostringstream os;
    os << op << " commutation mismatch on a=" << describe_abs(a) << " b=" << describe_abs(b)
       << " got=" << describe_abs(got) << " want=" << describe_abs(want);
    failures.push_back(os.str());
  };
  for (size_t bi = ai % stride; bi < universe.size(); bi += stride) {
    const ShareAbs& b = universe[bi];
    CliqueAbs cb = clique::compress(b);
    ++checks;
    ShareAbs got = clique::decompress(clique::lub(ca, cb));
    ShareAbs want = share::lub(a, b);
    if (got != want) fail("lub_c", b, got, want);
    // extend with prime = projection of b onto a prefix of the domain.
    VarList vs(dom.begin(), dom.begin() + std::min<size_t>(dom.size(), 2));
    ShareAbs prime = share::project(vs, b);
    ++checks;
    got = clique::decompress(
        clique::extend(ca, vs, clique::compress(prime)));
    want = share::extend(a, vs, prime);
    if (got != want) fail("extend_c", prime, got, want);
  }
  // Unification, call_to_entry and exit_to_prime over a fixed term family.
  if (dom.size() >= 2) {
    Term t1 = Term::make_var(dom[0]);
    std::vector<Term> fargs{Term::make_var(dom[1])};
    Term t2 = Term::make_struct("f", fargs);
    ++checks;
    ShareAbs got = clique::decompress(clique::abstract_unify_literal(t1, t2, ca));
    ShareAbs want = share::abstract_unify_literal(t1, t2, a);
    if (got != want) fail("abstract_unify_literal_c", a, got, want);

    std::vector<Term> goal_args, head_args;
    for (VarId v : dom) goal_args.push_back(Term::make_var(v));
    for (size_t i = 0; i < dom.size(); ++i)
      head_args.push_back(Term::make_var(static_cast<VarId>(200 + i)));
    head_args[0] = Term::make_struct("f", std::vector<Term>{Term::make_var(210)});
    Term goal = Term::make_struct("p", goal_args);
    Term head = Term::make_struct("p", head_args);
    ++checks;
    got = clique::decompress(clique::call_to_entry(ca, goal, head));
    want = share::call_to_entry(a, goal, head);
    if (got != want) fail("call_to_entry_c", a, got, want);
    ShareAbs beta = want;
    if (!beta.is_bottom()) {
      ++checks;
      got = clique::decompress(
          clique::exit_to_prime(clique::compress(beta), head, goal, ca));
      ShareAbs want2 = share::exit_to_prime(beta, head, goal, a);
      if (got != want2) fail("exit_to_prime_c", beta, got, want2);
    }
  }
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

std::vector<std::string> amgu_oracle_sweep(int max_domain, uint64_t& checks) {
  std::vector<std::string> failures;
  amgu_sweep_with(HarnessOps::make(""), max_domain, checks, failures);
  return failures;
}

std::vector<std::string> clique_commutation_sweep(int max_domain, uint64_t& checks) {
  std::vector<std::string> failures;
  for (int n = 0; n <= max_domain; ++n) {
    VarList dom;
    for (int i = 0; i < n; ++i) dom.push_back(static_cast<VarId>(i));
    std::vector<ShareAbs> universe = share::all_abstractions(dom);
    size_t stride = n <= 3 ? 1 : 977;  // exhaustive pairs up to 3 variables
    for (size_t ai = 0; ai < universe.size(); ++ai) {
      clique_unary_checks(dom, universe[ai], checks, failures);
      if (n >= 1) clique_binary_checks(dom, universe, ai, stride, checks, failures);
      if (failures.size() > 20) return failures;
    }
  }
  return failures;
}

SelftestReport run_selftest(const SelftestOptions& options) {
  SelftestReport report;
  HarnessOps ops = HarnessOps::make(options.mutate);
  int max_n = options.quick ? 3 : 4;

  amgu_sweep_with(ops, max_n, report.checks, report.failures);
  extend_checks_with(ops, max_n, report.checks, report.failures);

  {
    // Golden pipeline instances; mismatches name the operation under test.
    VarList dom{0, 1, 2, 3, 4};  // A B C D E
    ShareAbs call = ShareAbs::make(dom, {{0}, {1, 2}, {0, 2, 3}});
    ShareAbs prime = ShareAbs::make({0, 1, 4}, {{1}});
    ShareAbs want = ShareAbs::make(dom, {{1, 2}});
    ShareAbs got = ops.extend(call, {0, 1, 4}, prime);
    ++report.checks;
    if (got != want)
      report.failures.push_back("extend mismatch on the worked example: got=" +
                                describe_abs(got) + " want=" + describe_abs(want));

    ShareAbs call2 = ShareAbs::make(dom, {{0, 1}, {2}, {3, 4}});
    ShareAbs prime2 =
        ShareAbs::make({0, 1, 2, 3}, {{0, 1}, {0, 1, 2}, {0, 1, 2, 3}, {0, 1, 3}, {2, 3}});
    ShareAbs want2 =
        ShareAbs::make(dom, {{0, 1}, {0, 1, 2}, {0, 1, 2, 3, 4}, {0, 1, 3, 4}, {2, 3, 4}});
    ShareAbs got2 = ops.extend(call2, {0, 1, 2, 3}, prime2);
    ++report.checks;
    if (got2 != want2)
      report.failures.push_back("extend mismatch on the list-append example: got=" +
                                describe_abs(got2) + " want=" + describe_abs(want2));
  }

  uint64_t commutation_checks = 0;
  auto commutation_failures = clique_commutation_sweep(max_n, commutation_checks);
  report.checks += commutation_checks;
  for (auto& f : commutation_failures) report.failures.push_back(f);

  // Strategy equality and golden JSON over the bundled corpus.
  fs::path corpus(options.corpus_dir);
  if (fs::is_directory(corpus)) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(corpus))
      if (e.is_regular_file() && e.path().extension() == ".pl") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const fs::path& f : files) {
      std::string source = read_file(f);
      for (std::string domain : {"share", "share-clique"}) {
        RunSettings rs;
        rs.domain = domain;
        rs.mode = "classic";
        rs.timeout_ms = 60000;
        RunOutcome classic = run_module(source, rs);
        rs.mode = "trim";
        RunOutcome trim = run_module(source, rs);
        ++report.checks;
        if (classic.status != "ok" || trim.status != "ok") {
          report.failures.push_back("corpus module did not analyze: " + f.string() + " (" +
                                    classic.status + "/" + trim.status + ")");
          continue;
        }
        for (size_t i = 0; i < classic.result.entries.size(); ++i) {
          ++report.checks;
          if (!(classic.result.entries[i].succ_share == trim.result.entries[i].succ_share)) {
            report.failures.push_back(
                "trim/classic success mismatch in " + f.string() + " entry " +
                classic.result.entries[i].goal_text + ": classic=" +
                describe_abs(classic.result.entries[i].succ_share) + " trim=" +
                describe_abs(trim.result.entries[i].succ_share));
          }
        }
      }
    }
    fs::path golden = corpus / "golden";
    if (fs::is_directory(golden)) {
      std::vector<fs::path> gfiles;
      for (const auto& e : fs::directory_iterator(golden))
        if (e.is_regular_file() && e.path().extension() == ".json") gfiles.push_back(e.path());
      std::sort(gfiles.begin(), gfiles.end());
      for (const fs::path& g : gfiles) {
        // <module>.<domain>.<mode>.json
        std::string stem = g.stem().string();
        auto second_dot = stem.rfind('.');
        if (second_dot == std::string::npos) continue;
        std::string mode = stem.substr(second_dot + 1);
        std::string rest = stem.substr(0, second_dot);
        auto first_dot = rest.rfind('.');
        if (first_dot == std::string::npos) continue;
        std::string domain = rest.substr(first_dot + 1);
        std::string module = rest.substr(0, first_dot);
        fs::path source_path = corpus / (module + ".pl");
        if (!fs::exists(source_path)) continue;
        RunSettings rs;
        rs.timeout_ms = 60000;
        rs = RunSettings::with_mode_label(rs, mode);
        rs.domain = domain;
        RunOutcome out = run_module(read_file(source_path), rs);
        std::string json = result_to_json(module + ".pl", domain, mode, out.status, out.result,
                                          /*zero_times=*/true);
        json.push_back('\n');
        ++report.checks;
        std::string want = read_file(g);
        if (json != want) {
          report.failures.push_back("golden trace mismatch for " + g.string());
        }
      }
    }
  } else {
    report.failures.push_back("corpus directory not found: " + corpus.string());
  }

  report.ok = report.failures.empty();
  return report;
}

}  // namespace shtrim
