#include "kmpscp/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "kmpscp/harness.hpp"
#include "kmpscp/interpreter.hpp"
#include "kmpscp/kmp.hpp"
#include "kmpscp/residual.hpp"
#include "kmpscp/supercompiler.hpp"

namespace kmpscp {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text, std::ostream& out) {
  if (path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write " + path);
  f << text;
}

void check_word(const std::string& w, bool allow_empty) {
  if (w.empty() && !allow_empty) throw UsageError("pattern must be nonempty");
  for (char c : w)
    if (!is_symbol_char(c)) throw UsageError(std::string("invalid symbol '") + c + "' in \"" + w + "\"");
}

const Program& load_program(const std::string& spec, Program& storage) {
  if (spec == "builtin") return naive_matcher();
  storage = parse_program(read_file(spec));
  return storage;
}

struct Options {
  std::string pattern;
  std::string program = "builtin";
  std::string out_file;
  std::string dot_file;
  bool report = false;
  bool text = false;
  std::size_t budget = 10'000;
  std::string whistle = "consuming";
  std::string entry;
  std::vector<std::string> inputs;
  bool steps = false;
  std::size_t fuel = 0;
  std::string corpus;
  std::uint64_t seed = 7;
};

ScpOptions scp_options(const Options& o) {
  ScpOptions s;
  s.node_budget = o.budget;
  s.whistle = o.whistle == "all" ? WhistleScope::All : WhistleScope::Consuming;
  return s;
}

void print_report(const ScpResult& r, const ResidualProgram* rp, std::ostream& out) {
  out << "pivots=" << r.report.pivots.size() << " generalizations=" << r.report.generalizations_attempted
      << " nodes=" << r.report.node_count << " folds=" << r.report.fold_count;
  if (rp) out << " functions=" << rp->functions.size() << " consuming=" << rp->consuming_count();
  out << "\n";
  for (std::size_t i = 0; i < r.report.pivots.size(); ++i)
    out << "pivot " << i << " node=" << r.report.pivot_nodes[i] << " " << to_string(r.report.pivots[i]) << "\n";
}

int cmd_specialize(const Options& o, std::ostream& out, std::ostream& err) {
  check_word(o.pattern, false);
  Program storage;
  const Program& prog = load_program(o.program, storage);
  ScpResult r = supercompile(prog, entry_configuration(o.pattern), scp_options(o));
  if (!o.dot_file.empty()) write_file(o.dot_file, to_dot(r.graph), out);
  std::optional<ResidualProgram> rp;
  std::string why;
  try {
    rp = residualize(r.graph);
  } catch (const ResidualError& e) {
    why = e.what();
  }
  if (o.report) print_report(r, rp ? &*rp : nullptr, out);
  if (!rp) {
    err << "error: " << why << "\n";
    return kExitFailure;
  }
  if (!o.out_file.empty()) {
    write_file(o.out_file, render(*rp), out);
  } else if (!o.report) {
    out << render(*rp);
  }
  return kExitOk;
}

int cmd_run(const Options& o, std::ostream& out) {
  Program prog = parse_program(read_file(o.program));
  std::vector<Expr> args;
  for (const auto& w : o.inputs) {
    check_word(w, true);
    args.push_back(Expr::word(w));
  }
  const Function* f = prog.find(o.entry);
  if (!f) throw UsageError("no function " + o.entry + " in " + o.program);
  if (f->arity() != args.size())
    throw UsageError(o.entry + " takes " + std::to_string(f->arity()) + " arguments, got " + std::to_string(args.size()));
  Outcome r = eval_call(prog, Expr::call(o.entry, std::move(args)), o.fuel ? o.fuel : default_fuel_from_env());
  out << (r.value ? "T" : "F") << "\n";
  if (o.steps) out << "steps=" << r.steps << "\n";
  return kExitOk;
}

int cmd_failure(const Options& o, std::ostream& out) {
  check_word(o.pattern, false);
  const auto table = failure_table(o.pattern);
  std::size_t width = std::max<std::size_t>(o.pattern.size(), 6);
  out << "k  " << std::string("prefix") + std::string(width - 6, ' ') << "  f\n";
  std::string line;
  for (std::size_t k = 0; k < o.pattern.size(); ++k) {
    std::string prefix = k ? o.pattern.substr(0, k) : "ε";
    std::size_t shown = k ? k : 1;
    out << k << (k < 10 ? "  " : " ") << prefix << std::string(width - shown, ' ') << "  " << table[k] << "\n";
    line += (k ? "," : "") + std::to_string(table[k]);
  }
  out << "failure=" << line << "\n";
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  Corpus c = Corpus::default_corpus(o.seed);
  if (!o.pattern.empty()) {
    check_word(o.pattern, false);
    c.patterns = {o.pattern};
  } else if (!o.corpus.empty() && o.corpus != "default") {
    throw UsageError("unknown corpus " + o.corpus);
  }
  std::vector<VerificationReport> reports;
  for (const auto& p : c.patterns) {
    reports.push_back(verify_pattern(p, c));
    out << to_record(reports.back()) << "\n";
  }
  out << summary(reports) << "\n";
  bool ok = std::all_of(reports.begin(), reports.end(), [](const VerificationReport& r) { return r.all_ok(); });
  return ok ? kExitOk : kExitFailure;
}

int cmd_tree(const Options& o, std::ostream& out) {
  check_word(o.pattern, false);
  if (o.dot_file.empty() && !o.text) throw UsageError("tree needs --dot <file> or --text");
  Program storage;
  const Program& prog = load_program(o.program, storage);
  ScpResult r = supercompile(prog, entry_configuration(o.pattern), scp_options(o));
  if (!o.dot_file.empty()) write_file(o.dot_file, to_dot(r.graph), out);
  if (o.text) out << to_text(r.graph);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Specializes a naive substring matcher by supercompilation", "kmpscp"};
  app.require_subcommand(1);
  Options o;

  auto add_scp = [&](CLI::App* s) {
    s->add_option("--program", o.program, "Program file, or builtin");
    s->add_option("--budget", o.budget, "Node budget")->check(CLI::PositiveNumber);
    s->add_option("--whistle", o.whistle, "Whistle scope")->check(CLI::IsMember({"consuming", "all"}));
  };

  auto* spec = app.add_subcommand("specialize", "Build the process graph and residual program");
  spec->add_option("--pattern", o.pattern, "Static pattern")->required();
  add_scp(spec);
  spec->add_option("--out", o.out_file, "Residual program file");
  spec->add_option("--dot", o.dot_file, "Process graph as DOT");
  spec->add_flag("--report", o.report, "Print the supercompilation report");

  auto* run = app.add_subcommand("run", "Evaluate a program");
  run->add_option("--program", o.program, "Program file")->required();
  run->add_option("--entry", o.entry, "Entry function")->required();
  run->add_option("--input", o.inputs, "Argument word, repeat per argument")->allow_extra_args(false);
  run->add_flag("--steps", o.steps, "Print the step count");
  run->add_option("--fuel", o.fuel, "Step limit")->check(CLI::PositiveNumber);

  auto* fail = app.add_subcommand("failure", "Print the failure table");
  fail->add_option("--pattern", o.pattern, "Pattern")->required();

  auto* ver = app.add_subcommand("verify", "Run the verification harness");
  auto* vp = ver->add_option("--pattern", o.pattern, "Single pattern");
  auto* vc = ver->add_option("--corpus", o.corpus, "Corpus name (default)");
  vp->excludes(vc);
  ver->add_option("--seed", o.seed, "Random seed");

  auto* tree = app.add_subcommand("tree", "Export the process graph");
  tree->add_option("--pattern", o.pattern, "Static pattern")->required();
  add_scp(tree);
  tree->add_option("--dot", o.dot_file, "DOT file, - for stdout");
  tree->add_flag("--text", o.text, "Print the text dump");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*spec) return cmd_specialize(o, out, err);
    if (*run) return cmd_run(o, out);
    if (*fail) return cmd_failure(o, out);
    if (*ver) return cmd_verify(o, out);
    if (*tree) return cmd_tree(o, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SyntaxError& e) {
    err << "syntax error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace kmpscp
