// relkit -- command-line front door: entailment, state satisfaction, frame
// verification, bounded morphisms, and model checking over .rks workspaces.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "relkit/dsl.hpp"
#include "relkit/report.hpp"

namespace {

using namespace relkit;
using report::JobReport;

struct CommonOpts {
  std::vector<std::string> files;
  bool json = false;
  bool show_witness = false;
  int depth = -1;  // -1: not set on the command line
  long long max_inst = -1;
};

std::string read_inputs(const std::vector<std::string>& files) {
  std::ostringstream text;
  for (const auto& f : files) {
    if (f == "-") {
      text << std::cin.rdbuf() << "\n";
      continue;
    }
    std::ifstream in(f);
    if (!in) throw Error(ErrorCode::invalid_path, "cannot open '" + f + "'");
    text << in.rdbuf() << "\n";
  }
  return text.str();
}

dsl::Workspace load_workspace(const CommonOpts& opts) {
  dsl::ParseResult res = dsl::parse(read_inputs(opts.files));
  if (!res.ok()) {
    for (const auto& d : res.diagnostics)
      std::cerr << dsl::to_string(d) << "\n";
    std::exit(3);
  }
  return std::move(*res.workspace);
}

entail::EntailBudget effective_budget(const dsl::Workspace& ws,
                                      const CommonOpts& opts) {
  entail::EntailBudget b = ws.default_budget();
  if (const char* env = std::getenv("RELKIT_DEPTH"))
    if (*env) b.max_term_depth = std::atoi(env);
  if (opts.depth >= 0) b.max_term_depth = opts.depth;
  if (opts.max_inst >= 0) b.max_instantiations = opts.max_inst;
  return b;
}

int emit(const CommonOpts& opts, JobReport r,
         std::chrono::steady_clock::time_point started) {
  r.ms = std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - started)
             .count();
  if (opts.json)
    std::cout << report::to_json_text(r) << "\n";
  else
    std::cout << report::to_text(r, opts.show_witness);
  return report::exit_code(r.verdict);
}

struct CheckArgs {
  std::string logic;
  std::string frame;
  std::string interp;
  std::string start;
  std::string formula;
  std::string formula_name;
  std::string quant;
  int bound = -1;
  std::vector<std::string> deterministic;
  bool all = false;
};

const dsl::FrameDecl& need_frame(const dsl::Workspace& ws,
                                 const std::string& name) {
  const dsl::FrameDecl* f = ws.find_frame(name);
  if (!f) throw Error(ErrorCode::unknown_state_id, "unknown frame '" + name + "'");
  return *f;
}

const dsl::InterpretationDecl& need_interp(const dsl::Workspace& ws,
                                           const std::string& name) {
  const dsl::InterpretationDecl* i = ws.find_interpretation(name);
  if (!i)
    throw Error(ErrorCode::unknown_symbol,
                "unknown interpretation '" + name + "'");
  return *i;
}

std::string lasso_string(const logics::LassoPath& pi) {
  std::string out = "lasso prefix [";
  for (size_t i = 0; i < pi.prefix.size(); ++i) {
    if (i) out += " ";
    out += pi.prefix[i];
  }
  out += "] cycle [";
  for (size_t i = 0; i < pi.cycle.size(); ++i) {
    if (i) out += " ";
    out += pi.cycle[i];
  }
  return out + "]";
}

int run_one_check(const dsl::Workspace& ws, const CommonOpts& opts,
                  const dsl::CheckDecl& job, const std::string& formula_text) {
  auto started = std::chrono::steady_clock::now();
  const dsl::FrameDecl& frame = need_frame(ws, job.frame);
  const dsl::InterpretationDecl& interp = need_interp(ws, job.interp);
  entail::EntailBudget budget = effective_budget(ws, opts);

  logics::QuantDomain qd;
  if (!job.quant.empty()) {
    const dsl::QuantDomainDecl* q = ws.find_quantdomain(job.quant);
    if (!q)
      throw Error(ErrorCode::empty_quant_domain,
                  "unknown quantdomain '" + job.quant + "'");
    qd = q->qd;
  }

  JobReport r;
  r.job = "check";
  r.inputs = {dsl::logic_name(job.logic), job.frame, job.interp, job.start,
              formula_text};
  r.budget["depth"] = budget.max_term_depth;
  r.budget["instances"] = budget.max_instantiations;

  entail::Verdict verdict;
  switch (job.logic) {
    case dsl::LogicKind::ltl: {
      logics::LassoPath pi = logics::path_from(frame.frame, job.start);
      verdict = logics::ltl_check(interp.interp, frame.frame, pi,
                                  std::get<logics::LtlFormula>(job.formula),
                                  budget);
      r.witness.push_back(lasso_string(pi));
      break;
    }
    case dsl::LogicKind::ctl:
      verdict = logics::ctl_check(interp.interp, frame.frame, job.start,
                                  std::get<logics::CtlFormula>(job.formula),
                                  budget);
      break;
    case dsl::LogicKind::pdl:
      verdict = logics::fodl_check(interp.interp, frame.frame, job.start,
                                   std::get<logics::FodlFormula>(job.formula),
                                   qd, budget);
      break;
    case dsl::LogicKind::ctlstar: {
      int bound = job.bound.value_or(frame.frame.size());
      r.budget["bound"] = bound;
      logics::PathWitness w = logics::foctlstar_check_witness(
          interp.interp, frame.frame, job.start,
          std::get<logics::StateFormula>(job.formula), qd, bound, budget);
      verdict = w.verdict;
      if (w.lasso) r.witness.push_back(lasso_string(*w.lasso));
      break;
    }
  }
  r.verdict = report::verdict_string(verdict);
  r.reason = report::reason_string(verdict);
  return emit(opts, std::move(r), started);
}

int cmd_entail(const dsl::Workspace& ws, const CommonOpts& opts,
               const std::string& theory, const std::string& state,
               const std::string& goal) {
  auto started = std::chrono::steady_clock::now();
  const dsl::InterpretationDecl& interp = need_interp(ws, theory);
  entail::EntailBudget budget = effective_budget(ws, opts);

  JobReport r;
  r.job = "entail";
  r.inputs = {theory};
  if (!state.empty()) r.inputs.push_back(state);
  r.inputs.push_back(goal);
  r.budget["depth"] = budget.max_term_depth;
  r.budget["instances"] = budget.max_instantiations;

  entail::Verdict verdict;
  if (state.empty()) {
    // rigid-only goal, decided over the pushout with the empty state
    eqcore::EqSignature empty_flex;
    eqcore::EqSentence g =
        dsl::parse_sentence_text(goal, interp.interp.rigid_sig, empty_flex);
    theoria::StateTheory empty_state{empty_flex, interp.interp.rigid_sig, {}};
    verdict = theoria::sat_state(interp.interp, empty_state, g, budget);
  } else {
    const dsl::StateDecl* st = ws.find_state(state);
    if (!st)
      throw Error(ErrorCode::unknown_state_id, "unknown state '" + state + "'");
    eqcore::EqSentence g = dsl::parse_sentence_text(
        goal, interp.interp.rigid_sig, st->state.flexible_sig);
    verdict = theoria::sat_state(interp.interp, st->state, g, budget);
  }
  r.verdict = report::verdict_string(verdict);
  r.reason = report::reason_string(verdict);
  return emit(opts, std::move(r), started);
}

int cmd_frame_verify(const dsl::Workspace& ws, const CommonOpts& opts,
                     const std::string& frame_name,
                     const std::string& conditions_name, bool selftest) {
  auto started = std::chrono::steady_clock::now();
  const dsl::FrameDecl& frame = need_frame(ws, frame_name);

  JobReport r;
  r.job = "frame-verify";
  r.inputs = {frame_name};

  std::vector<relalg::ConditionCheck> checks;
  if (selftest) {
    r.inputs.push_back("axioms-selftest");
    checks = relalg::axioms_selftest(frame.frame);
  } else {
    const dsl::ConditionsDecl* conds = ws.find_conditions(conditions_name);
    if (!conds)
      throw Error(ErrorCode::unknown_symbol,
                  "unknown conditions '" + conditions_name + "'");
    r.inputs.push_back(conditions_name);
    std::vector<std::pair<std::string, relalg::RelFormula>> gamma;
    for (const auto& item : conds->items) {
      std::string label;
      switch (item.kind) {
        case dsl::CondItem::Kind::total: label = "total " + item.rel; break;
        case dsl::CondItem::Kind::functional:
          label = "functional " + item.rel;
          break;
        case dsl::CondItem::Kind::initial: label = "initial " + item.rel; break;
        case dsl::CondItem::Kind::formula:
          label = "formula " + relalg::to_string(item.formula);
          break;
      }
      gamma.emplace_back(label, item.formula);
    }
    checks = relalg::verify_frame_conditions(frame.frame, gamma);
  }

  bool all_passed = true;
  for (const auto& c : checks) {
    if (c.passed) continue;
    all_passed = false;
    std::string w = c.label + " fails";
    if (!c.witness.empty()) {
      w += " at";
      for (const auto& [var, idx] : c.witness)
        w += " " + var + "=" + frame.frame.id_of(idx);
    }
    r.witness.push_back(std::move(w));
  }
  r.verdict = all_passed ? "pass" : "fail";
  return emit(opts, std::move(r), started);
}

int cmd_morphism(const dsl::Workspace& ws, const CommonOpts& opts,
                 const std::string& src, const std::string& dst,
                 const std::string& map_name) {
  auto started = std::chrono::steady_clock::now();
  const dsl::FrameDecl& fsrc = need_frame(ws, src);
  const dsl::FrameDecl& fdst = need_frame(ws, dst);
  const dsl::FrameMapDecl* fm = ws.find_framemap(map_name);
  if (!fm)
    throw Error(ErrorCode::unmapped_symbol, "unknown framemap '" + map_name + "'");
  entail::EntailBudget budget = effective_budget(ws, opts);

  JobReport r;
  r.job = "morphism";
  r.inputs = {src, dst, map_name};
  r.budget["depth"] = budget.max_term_depth;

  relalg::MorphismReport m =
      relalg::check_bounded_morphism(fsrc.frame, fdst.frame, fm->fm, budget);
  r.verdict = report::verdict_string(m.verdict);
  r.reason = report::reason_string(m.verdict);
  if (!m.witness.empty()) r.witness.push_back(m.witness);
  return emit(opts, std::move(r), started);
}

int cmd_check(const dsl::Workspace& ws, const CommonOpts& opts,
              const CheckArgs& args) {
  if (args.all) {
    int worst = 0;
    for (const dsl::CheckDecl* job : ws.checks()) {
      const dsl::FrameDecl& frame = need_frame(ws, job->frame);
      const theoria::StateTheory& st = frame.frame.theory_of(frame.states[0]);
      std::string text = dsl::formula_to_string(job->formula, st.rigid_sig,
                                                st.flexible_sig);
      worst = std::max(worst, run_one_check(ws, opts, *job, text));
    }
    return worst;
  }

  dsl::CheckDecl job;
  if (args.logic == "ltl") job.logic = dsl::LogicKind::ltl;
  else if (args.logic == "ctl") job.logic = dsl::LogicKind::ctl;
  else if (args.logic == "pdl") job.logic = dsl::LogicKind::pdl;
  else if (args.logic == "ctlstar") job.logic = dsl::LogicKind::ctlstar;
  else throw Error(ErrorCode::unknown_symbol, "unknown logic '" + args.logic + "'");
  job.frame = args.frame;
  job.interp = args.interp;
  job.start = args.start;
  job.quant = args.quant;
  if (args.bound >= 0) job.bound = args.bound;

  const dsl::FrameDecl& frame = need_frame(ws, job.frame);
  const theoria::StateTheory& st = frame.frame.theory_of(frame.states[0]);
  std::string text = args.formula;
  if (!args.formula_name.empty()) {
    const dsl::FormulaDecl* fd = ws.find_formula(args.formula_name);
    if (!fd)
      throw Error(ErrorCode::unknown_symbol,
                  "unknown formula '" + args.formula_name + "'");
    if (fd->logic != job.logic)
      throw Error(ErrorCode::not_a_state_formula,
                  "formula '" + args.formula_name + "' belongs to " +
                      std::string(dsl::logic_name(fd->logic)));
    job.formula = fd->formula;
    text = dsl::formula_to_string(fd->formula, st.rigid_sig, st.flexible_sig);
  } else {
    job.formula = dsl::parse_formula_text(text, job.logic, st.rigid_sig,
                                          st.flexible_sig);
  }
  return run_one_check(ws, opts, job, text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"relkit: a workbench for relational models of logics"};
  app.require_subcommand(1);

  CommonOpts opts;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("files", opts.files, "workspace files (.rks), '-' for stdin")
        ->required();
    sub->add_flag("--json", opts.json, "emit a JSON report");
    sub->add_flag("--witness", opts.show_witness, "always print witnesses");
    sub->add_option("--depth", opts.depth, "schema instantiation depth");
    sub->add_option("--max-inst", opts.max_inst,
                    "schema instantiation cap per schema");
  };

  std::string theory, state, goal;
  CLI::App* entail_cmd =
      app.add_subcommand("entail", "decide a ground entailment query");
  add_common(entail_cmd);
  entail_cmd->add_option("--theory", theory, "interpretation name")->required();
  entail_cmd->add_option("--state", state, "state name (goal over the sum)");
  entail_cmd->add_option("--goal", goal, "goal sentence")->required();

  std::string frame_name, conditions_name;
  bool selftest = false;
  CLI::App* verify_cmd =
      app.add_subcommand("frame-verify", "verify frame conditions");
  add_common(verify_cmd);
  verify_cmd->add_option("--frame", frame_name, "frame name")->required();
  verify_cmd->add_option("--conditions", conditions_name, "conditions name");
  verify_cmd->add_flag("--axioms-selftest", selftest,
                       "run the relational axiom suite instead");

  CheckArgs check_args;
  CLI::App* check_cmd =
      app.add_subcommand("check", "model-check a temporal or dynamic formula");
  add_common(check_cmd);
  check_cmd->add_option("--logic", check_args.logic,
                        "one of: ltl, ctl, pdl, ctlstar");
  check_cmd->add_option("--frame", check_args.frame, "frame name");
  check_cmd->add_option("--interp", check_args.interp, "interpretation name");
  check_cmd->add_option("--start", check_args.start, "start state");
  check_cmd->add_option("--formula", check_args.formula, "formula text");
  check_cmd->add_option("--formula-name", check_args.formula_name,
                        "declared formula name");
  check_cmd->add_option("--bound", check_args.bound, "ctlstar lasso bound");
  check_cmd->add_option("--quant", check_args.quant, "quantdomain name");
  check_cmd->add_flag("--all", check_args.all, "run all declared check jobs");

  std::string src, dst, map_name;
  CLI::App* morphism_cmd =
      app.add_subcommand("morphism", "check the bounded-morphism conditions");
  add_common(morphism_cmd);
  morphism_cmd->add_option("--src", src, "source frame")->required();
  morphism_cmd->add_option("--dst", dst, "target frame")->required();
  morphism_cmd->add_option("--map", map_name, "framemap name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  try {
    dsl::Workspace ws = load_workspace(opts);
    if (entail_cmd->parsed()) return cmd_entail(ws, opts, theory, state, goal);
    if (verify_cmd->parsed()) {
      if (!selftest && conditions_name.empty()) {
        std::cerr << "frame-verify: need --conditions or --axioms-selftest\n";
        return 3;
      }
      return cmd_frame_verify(ws, opts, frame_name, conditions_name, selftest);
    }
    if (check_cmd->parsed()) {
      if (!check_args.all &&
          (check_args.logic.empty() || check_args.frame.empty() ||
           check_args.interp.empty() || check_args.start.empty() ||
           (check_args.formula.empty() && check_args.formula_name.empty()))) {
        std::cerr << "check: need --logic, --frame, --interp, --start and a "
                     "formula (or --all)\n";
        return 3;
      }
      return cmd_check(ws, opts, check_args);
    }
    if (morphism_cmd->parsed()) return cmd_morphism(ws, opts, src, dst, map_name);
  } catch (const Error& e) {
    std::cerr << "relkit: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "relkit: internal error: " << e.what() << "\n";
    return 3;
  }
  return 3;
}
