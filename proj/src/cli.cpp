#include "inet/cli.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "inet/check.hpp"
#include "inet/parser.hpp"
#include "inet/translate.hpp"

namespace inet {

namespace {

void report(const std::vector<Diagnostic>& ds, const std::string& path, std::ostream& err) {
  for (const auto& d : ds) err << formatDiagnostic(d, path) << '\n';
}

std::optional<Program> load(const std::string& path, std::ostream& err) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    report({{Severity::Error, code::Io, "cannot read file", {}, {}}}, path, err);
    return std::nullopt;
  }
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parseProgram(text.str());
  } catch (const Error& e) {
    report(e.diagnostics(), path, err);
    return std::nullopt;
  }
}

}  // namespace

std::string formatProgram(const std::vector<Rule>& rules, const std::optional<Net>& net) {
  std::string s;
  for (const auto& r : rules) s += formatRule(r) + "\n";
  if (net) s += "net " + readbackText(instantiate(*net)) + "\n";
  return s;
}

std::size_t defaultMaxSteps() {
  if (const char* env = std::getenv("INETC_MAX_STEPS")) {
    std::size_t n = 0;
    std::string_view v(env);
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), n);
    if (ec == std::errc() && ptr == v.data() + v.size() && n > 0) return n;
  }
  return kDefaultMaxSteps;
}

int cmdCheck(const std::string& path, std::ostream& out, std::ostream& err) {
  auto prog = load(path, err);
  if (!prog) return kExitParse;
  CheckReport rep = verifyWellFormed(prog->rules);
  report(rep.diagnostics, path, err);
  if (!rep.ok()) return kExitSemantic;
  out << path << ": " << prog->rules.size() << " rule(s) well-formed\n";
  return kExitOk;
}

int cmdCompile(const std::string& path, const std::string& outPath, std::ostream& out, std::ostream& err) {
  auto prog = load(path, err);
  if (!prog) return kExitParse;
  TranslationResult tr;
  try {
    tr = translateProgram(prog->rules);
  } catch (const Error& e) {
    report(e.diagnostics(), path, err);
    return kExitSemantic;
  }
  report(tr.warnings, path, err);
  std::ofstream file(outPath, std::ios::binary);
  if (!file || !(file << formatProgram(tr.rules, prog->initialNet)) || !file.flush()) {
    report({{Severity::Error, code::Io, "cannot write file", {}, {}}}, outPath, err);
    return kExitParse;
  }
  out << outPath << ": " << tr.rules.size() << " rule(s) written\n";
  return kExitOk;
}

int cmdRun(const std::string& path, const RunOptions& options, std::ostream& out, std::ostream& err) {
  auto prog = load(path, err);
  if (!prog) return kExitParse;
  if (!prog->initialNet) {
    err << path << ": error: program has no 'net' statement\n";
    return kExitUsage;
  }

  std::vector<Rule> rules;
  if (options.mode == Mode::Orn) {
    try {
      auto tr = translateProgram(prog->rules);
      report(tr.warnings, path, err);
      rules = std::move(tr.rules);
    } catch (const Error& e) {
      report(e.diagnostics(), path, err);
      return kExitParse;
    }
  } else {
    CheckReport rep = verifyWellFormed(prog->rules);
    report(rep.diagnostics, path, err);
    if (!rep.ok()) return kExitParse;
    rules = prog->rules;
  }

  ReduceOptions ro;
  ro.mode = options.mode;
  ro.strategy = options.strategy;
  ro.maxSteps = options.maxSteps.value_or(defaultMaxSteps());
  ro.recordSteps = options.trace;

  RuntimeNet net = instantiate(*prog->initialNet);
  Trace trace;
  try {
    trace = reduce(net, rules, ro);
  } catch (const std::runtime_error& e) {
    err << path << ": error: " << e.what() << '\n';
    return kExitSemantic;
  }
  for (const auto& line : trace.lines()) out << line << '\n';
  return trace.outcome == Outcome::StepLimit ? kExitSemantic : kExitOk;
}

int runCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Compiler and runtime for interaction nets with nested patterns", "inetc"};
  app.require_subcommand(1);

  std::string file, output;
  auto* check = app.add_subcommand("check", "Check that the rules are well-formed");
  check->add_option("FILE", file, "Program file")->required();

  auto* compile = app.add_subcommand("compile", "Translate nested patterns into ordinary rules");
  compile->add_option("FILE", file, "Program file")->required();
  compile->add_option("-o,--output", output, "Output file")->required();

  std::string mode = "orn", strategy = "fifo";
  std::uint64_t seed = 0;
  std::size_t maxSteps = 0;
  bool trace = false;
  auto* run = app.add_subcommand("run", "Reduce the program's net to normal form");
  run->add_option("FILE", file, "Program file")->required();
  run->add_option("--mode", mode, "Rule form used for reduction")->check(CLI::IsMember({"orn", "direct"}));
  run->add_option("--strategy", strategy, "Active pair selection")
      ->check(CLI::IsMember({"fifo", "lifo", "random"}));
  run->add_option("--seed", seed, "Seed for the random strategy");
  auto* stepsOpt = run->add_option("--max-steps", maxSteps, "Step limit")->check(CLI::PositiveNumber);
  run->add_flag("--trace", trace, "Print every reduction step");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (check->parsed()) return cmdCheck(file, out, err);
  if (compile->parsed()) return cmdCompile(file, output, out, err);

  RunOptions ro;
  ro.mode = mode == "direct" ? Mode::InpDirect : Mode::Orn;
  ro.strategy = strategy == "lifo" ? Strategy::lifo() : strategy == "random" ? Strategy::random(seed) : Strategy::fifo();
  if (stepsOpt->count()) ro.maxSteps = maxSteps;
  ro.trace = trace;
  return cmdRun(file, ro, out, err);
}

}  // namespace inet
