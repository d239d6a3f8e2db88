// hcov: history coverability checker.
//
// Exit status: check/simulate return 1 when the target is coverable (a
// witness was found), 0 when it is not, 2 on errors. crosscheck returns 0 on
// agreement and 3 on disagreement.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "hcov/hcov.hpp"

namespace {

constexpr int kError = 2;
constexpr int kDisagree = 3;

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : " ") + x;
  return s;
}

std::optional<std::size_t> budget_from_env() {
  if (const char* env = std::getenv("HCOV_MAX_ITER")) return static_cast<std::size_t>(std::stoull(env));
  return std::nullopt;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hcov - history coverability for nets with history and monadic MSR(Id)"};
  app.require_subcommand(1);

  std::string model_path, target;
  bool emit_facts = false, trace = false, json = false;
  std::optional<std::size_t> max_iter;
  std::size_t depth = 10;
  long long gap_cap = 2;

  auto* check = app.add_subcommand("check", "run backward saturation and report the verdict");
  check->add_option("model", model_path, "model file (.hcov)")->required();
  check->add_option("target", target, "target name")->required();
  check->add_flag("--emit-facts", emit_facts, "print the fixpoint as f(i, [atoms], {constraint}, n, parent, rule) lines");
  check->add_flag("--trace", trace, "print the witness rule sequence in firing order");
  check->add_flag("--json", json, "print the verdict as JSON");
  check->add_option("--max-iter", max_iter, "fail if the fixpoint needs more iterations (env: HCOV_MAX_ITER)");

  auto* simulate = app.add_subcommand("simulate", "bounded forward exploration");
  simulate->add_option("model", model_path)->required();
  simulate->add_option("target", target)->required();
  simulate->add_option("--depth", depth, "exploration depth")->capture_default_str();
  simulate->add_option("--gap-cap", gap_cap, "identifier gap cap for MSR canonical forms")->capture_default_str();

  auto* cross = app.add_subcommand("crosscheck", "compare the engine verdict with the forward oracle");
  cross->add_option("model", model_path)->required();
  cross->add_option("target", target)->required();
  cross->add_option("--depth", depth, "oracle depth for not-coverable verdicts")->capture_default_str();

  auto* encode = app.add_subcommand("encode-time", "print the timestamp MSR(Id) encoding of a petri model");
  encode->add_option("model", model_path)->required();

  auto* monad = app.add_subcommand("monadize", "print the monadic rules of an msr model");
  monad->add_option("model", model_path)->required();

  auto* print = app.add_subcommand("print", "parse and re-print a model in canonical form");
  print->add_option("model", model_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kError;
  }

  try {
    const hcov::ModelFile model = hcov::load_model(model_path);

    if (*check) {
      hcov::CheckOptions options;
      options.max_iterations = max_iter ? max_iter : budget_from_env();
      auto report = hcov::check(model, target, options);
      if (json) {
        std::cout << report.json.dump(2) << '\n';
      } else {
        std::cout << (report.coverable ? "coverable" : "not coverable") << '\n';
        std::cout << "iterations: " << report.iterations << '\n';
        std::cout << "facts: " << report.fact_count << '\n';
        if (emit_facts) std::cout << report.facts_text;
        if (trace && report.coverable) std::cout << "trace:" << (report.trace.empty() ? "" : " " + join(report.trace)) << '\n';
      }
      return report.coverable ? 1 : 0;
    }
    if (*simulate) {
      hcov::SimulateOptions options{depth, gap_cap};
      auto report = hcov::simulate(model, target, options);
      if (report.witness) {
        std::cout << "witness: " << join(*report.witness) << '\n';
      } else {
        std::cout << "no witness up to depth " << depth << '\n';
        std::cout << "exhausted: " << (report.frontier_exhausted ? "true" : "false") << '\n';
      }
      std::cout << "visited: " << report.visited << '\n';
      return report.witness ? 1 : 0;
    }
    if (*cross) {
      auto report = hcov::crosscheck(model, target, depth);
      std::cout << report.summary << '\n';
      return report.agree ? 0 : kDisagree;
    }
    if (*encode) {
      std::cout << hcov::render_model(hcov::encode_time(model));
      return 0;
    }
    if (*monad) {
      if (model.kind != hcov::SystemKind::Msr) throw std::invalid_argument("monadize expects an msr model");
      for (const auto& [name, arity] : model.signature().monadic_predicates())
        std::cout << "pred " << name << '/' << arity << '\n';
      for (const auto& r : model.msr_system().rules) {
        auto show = [](const std::vector<hcov::msr::Atom>& atoms, std::size_t) {
          std::string s;
          for (const auto& a : atoms) {
            s += (s.empty() ? "" : ", ") + a.pred;
            if (a.arg) s += "(X" + std::to_string(*a.arg) + ")";
          }
          return s;
        };
        std::vector<std::string> names(r.num_vars());
        for (std::size_t i = 0; i < names.size(); ++i) names[i] = "X" + std::to_string(i);
        std::string c = r.constraint.to_string(names);
        std::cout << "rule " << r.name << ": " << show(r.lhs, 0) << " -> " << show(r.rhs, 0);
        if (!c.empty()) std::cout << " where " << c;
        std::cout << '\n';
      }
      return 0;
    }
    if (*print) {
      std::cout << hcov::render_model(model);
      return 0;
    }
  } catch (const hcov::IterationBudgetExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kError;
  }
  return kError;
}
