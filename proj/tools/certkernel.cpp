// Copyright 2026 The certkernel Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// certkernel: batch certificate checker.
//
// Exit status: 0 valid, 1 invalid, 2 trusted (1 with --strict-assumes),
// 3 parse or usage error. With several problem/proof pairs the status is
// the worst of the runs, ranked 3 > 1 > 2 > 0.

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "certkernel/certificate_io.hpp"
#include "certkernel/dimacs.hpp"
#include "certkernel/kernel.hpp"
#include "certkernel/oracle.hpp"
#include "certkernel/preproc.hpp"
#include "certkernel/smt2.hpp"

namespace ck = certkernel;

namespace {

enum class Mode { Check, Translate, Stats, Oracle };
enum class Format { Auto, Dimacs, Smt2 };

constexpr int kExitValid = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitTrusted = 2;
constexpr int kExitUsage = 3;

struct RunConfig {
  std::string problem;
  std::string proof;
  Mode mode = Mode::Check;
  Format format = Format::Auto;
  bool machine = false;
  bool strict_assumes = false;
  std::uint64_t budget = 0;
};

struct RunOutput {
  int status = kExitValid;
  std::string out;
  std::string err;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path, const std::string& stdin_text) {
  if (path == "-") return stdin_text;
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

bool is_dimacs(const RunConfig& cfg) {
  if (cfg.format != Format::Auto) return cfg.format == Format::Dimacs;
  const auto dot = cfg.problem.rfind('.');
  const std::string ext = dot == std::string::npos ? "" : cfg.problem.substr(dot);
  return ext == ".cnf" || ext == ".dimacs";
}

std::string escape(std::string s) {
  for (char& c : s)
    if (c == '\t' || c == '\n' || c == '\r') c = ' ';
  return s;
}

// One line of tab-separated key=value fields in a fixed order.
std::string machine_record(const RunConfig& cfg, const ck::TermStore& store,
                           const ck::CheckResult& r, int status) {
  std::ostringstream os;
  os << "problem=" << escape(cfg.problem) << "\tproof=" << escape(cfg.proof)
     << "\tverdict=" << ck::verdict_name(r.verdict) << "\texit=" << status
     << "\tsteps=" << r.stats.steps_total << "\treplayed=" << r.stats.steps_replayed
     << "\tclauses=" << r.stats.clause_store_size << "\tmax_width=" << r.stats.max_clause_width
     << "\trules=";
  bool first = true;
  for (std::size_t i = 0; i < ck::kNumRules; ++i) {
    if (r.stats.rule_counts[i] == 0) continue;
    os << (first ? "" : ",") << ck::kRuleNames[i] << ':' << r.stats.rule_counts[i];
    first = false;
  }
  os << "\tstep=" << (r.step ? std::to_string(*r.step) : "-");
  os << "\treason=" << escape(r.verdict == ck::Verdict::Invalid ? r.reason : "");
  os << "\tassumptions=";
  for (std::size_t i = 0; i < r.assumptions.size(); ++i)
    os << (i ? ";" : "") << escape(ck::to_string(store, r.assumptions[i]));
  os << '\n';
  return os.str();
}

RunOutput run_one(const RunConfig& cfg, const std::string& stdin_text) {
  RunOutput res;
  std::string where = cfg.problem;
  try {
    const std::string problem_text = read_input(cfg.problem, stdin_text);
    ck::Problem problem = is_dimacs(cfg) ? ck::parse_dimacs(problem_text) : ck::parse_smt2(problem_text);

    if (cfg.mode == Mode::Oracle) {
      ck::oracle::Budget budget;
      if (cfg.budget) budget.max_models = cfg.budget;
      const auto r = ck::oracle::brute_unsat(problem.store, problem.inputs, budget);
      const char* name = r.outcome == ck::oracle::Outcome::Unsat ? "UNSAT"
                         : r.outcome == ck::oracle::Outcome::Sat ? "SAT"
                                                                 : "EXHAUSTED";
      res.out = std::string(name) + (r.box_relative ? " (within search box)" : "") + "\n";
      return res;
    }

    where = cfg.proof;
    const std::string proof_text = read_input(cfg.proof, stdin_text);
    if (cfg.mode == Mode::Translate) {
      const ck::NestedPtr np = ck::parse_nested_proof(proof_text, problem);
      res.out = ck::print_certificate(problem.store, ck::linearize(*np, problem.inputs.size()));
      return res;
    }

    const ck::Certificate cert = ck::parse_certificate(proof_text, problem);
    const ck::CheckResult r = ck::check(problem.store, problem.inputs, cert);
    switch (r.verdict) {
      case ck::Verdict::Valid: res.status = kExitValid; break;
      case ck::Verdict::Invalid: res.status = kExitInvalid; break;
      case ck::Verdict::Trusted: res.status = cfg.strict_assumes ? kExitInvalid : kExitTrusted; break;
    }
    if (cfg.machine) {
      res.out = machine_record(cfg, problem.store, r, res.status);
    } else if (cfg.mode == Mode::Stats) {
      res.out = ck::store_stats(problem.store, r);
    } else {
      std::ostringstream os;
      os << ck::verdict_name(r.verdict);
      if (r.verdict == ck::Verdict::Invalid) {
        os << ": " << r.reason;
        if (r.step) os << " (step " << *r.step << ")";
      }
      os << '\n';
      for (std::size_t i = 0; i < r.assumptions.size(); ++i)
        os << "assumed " << r.assumption_ids[i] << ": " << ck::to_string(problem.store, r.assumptions[i])
           << '\n';
      res.out = os.str();
    }
  } catch (const UsageError& e) {
    res.status = kExitUsage;
    res.err = std::string("error: ") + e.what() + "\n";
  } catch (const std::runtime_error& e) {
    // InputError, LinearizeError, SortError
    res.status = kExitUsage;
    res.err = "error: " + where + ":" + e.what() + "\n";
  } catch (const std::exception& e) {
    res.status = kExitUsage;
    res.err = "internal error: " + where + ": " + e.what() + "\n";
  }
  return res;
}

int severity(int status) {
  switch (status) {
    case kExitUsage: return 3;
    case kExitInvalid: return 2;
    case kExitTrusted: return 1;
    default: return 0;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Checks SAT/SMT refutation certificates"};
  std::vector<std::string> problems;
  std::vector<std::string> proofs;
  std::string mode_name = "check";
  std::string format_name = "auto";
  bool machine = false;
  bool strict = false;
  unsigned jobs = 1;

  app.add_option("--problem", problems, "Problem file (.cnf/.dimacs or .smt2); '-' for stdin")
      ->required();
  app.add_option("--proof", proofs, "Certificate, or nested proof for translate; '-' for stdin");
  app.add_option("--format", format_name, "Problem format")
      ->check(CLI::IsMember({"auto", "dimacs", "smt2"}));
  app.add_option("--mode", mode_name, "What to do")
      ->check(CLI::IsMember({"check", "translate", "stats", "oracle"}));
  app.add_flag("--strict-assumes", strict, "Treat trusted results as failures");
  app.add_flag("--machine", machine, "One tab-separated key=value record per run");
  app.add_option("--jobs", jobs, "Parallel runs")->check(CLI::Range(1U, 256U));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  Mode mode = Mode::Check;
  if (mode_name == "translate") mode = Mode::Translate;
  if (mode_name == "stats") mode = Mode::Stats;
  if (mode_name == "oracle") mode = Mode::Oracle;

  if (mode != Mode::Oracle && proofs.size() != problems.size()) {
    std::cerr << "error: give one --proof per --problem\n";
    return kExitUsage;
  }
  std::size_t stdin_uses = 0;
  for (const auto& p : problems) stdin_uses += p == "-";
  for (const auto& p : proofs) stdin_uses += p == "-";
  if (stdin_uses > 1) {
    std::cerr << "error: '-' may be used for one input only\n";
    return kExitUsage;
  }
  std::uint64_t budget = 0;
  if (const char* env = std::getenv("CERTKERNEL_BUDGET")) {
    try {
      budget = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "error: CERTKERNEL_BUDGET must be a positive integer\n";
      return kExitUsage;
    }
  }
  std::string stdin_text;
  if (stdin_uses == 1) stdin_text.assign(std::istreambuf_iterator<char>(std::cin), {});

  std::vector<RunConfig> runs;
  for (std::size_t i = 0; i < problems.size(); ++i) {
    RunConfig cfg;
    cfg.problem = problems[i];
    if (i < proofs.size()) cfg.proof = proofs[i];
    cfg.mode = mode;
    cfg.format = format_name == "dimacs" ? Format::Dimacs
                 : format_name == "smt2" ? Format::Smt2
                                         : Format::Auto;
    cfg.machine = machine;
    cfg.strict_assumes = strict;
    cfg.budget = budget;
    runs.push_back(std::move(cfg));
  }

  std::vector<RunOutput> outputs(runs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < runs.size(); i = next++) outputs[i] = run_one(runs[i], stdin_text);
  };
  std::vector<std::thread> pool;
  const unsigned n = std::min<unsigned>(jobs, static_cast<unsigned>(runs.size()));
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  int status = kExitValid;
  for (const RunOutput& o : outputs) {
    std::cout << o.out;
    std::cerr << o.err;
    if (severity(o.status) > severity(status)) status = o.status;
  }
  return status;
}
