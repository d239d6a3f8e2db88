#pragma once

// Model-level entry points shared by the command-line tool and the tests:
// check (backward engine), simulate (forward oracle), crosscheck (both),
// and the timestamp encoding of nets into MSR(Id).

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hcov/engine.hpp"
#include "hcov/model.hpp"
#include "hcov/msr/monadize.hpp"
#include "hcov/msr/rules.hpp"
#include "hcov/oracle.hpp"
#include "hcov/petri.hpp"

namespace hcov {

struct CheckOptions {
  std::optional<std::size_t> max_iterations;
};

struct CheckReport {
  std::string target;
  bool coverable = false;
  std::size_t iterations = 0;
  std::size_t fact_count = 0;
  std::optional<std::size_t> covering_fact;
  std::vector<std::string> trace;
  std::string facts_text;  // render_facts output
  nlohmann::json json;     // structured verdict
};

namespace detail {

template <class Domain>
CheckReport make_report(const std::string& target, const Domain& domain, const Verdict<typename Domain::Element>& v) {
  CheckReport r;
  r.target = target;
  r.coverable = v.coverable;
  r.iterations = v.iterations;
  r.fact_count = v.facts.size();
  r.covering_fact = v.covering_fact;
  if (v.coverable) r.trace = reconstruct_trace(v);
  r.facts_text = render_facts(domain, v);

  nlohmann::json facts = nlohmann::json::array();
  for (const auto& f : v.facts) {
    facts.push_back({{"iteration", f.iteration},
                     {"multiset", domain.render_multiset(f.element)},
                     {"constraint", domain.render_constraint(f.element)},
                     {"id", f.id},
                     {"rule", f.rule ? nlohmann::json(*f.rule) : nlohmann::json(nullptr)},
                     {"parent", f.parent}});
  }
  r.json = {{"target", target},
            {"coverable", v.coverable},
            {"iterations", v.iterations},
            {"fact_count", v.facts.size()},
            {"covering_fact", v.covering_fact ? nlohmann::json(*v.covering_fact) : nlohmann::json(nullptr)},
            {"trace", r.trace},
            {"facts", facts}};
  return r;
}

}  // namespace detail

inline CheckReport check(const ModelFile& model, const std::string& target, const CheckOptions& options = {}) {
  if (model.kind == SystemKind::Petri) {
    const auto& t = model.petri_target(target);
    PetriDomain domain(model.net);
    return detail::make_report(target, domain, saturate(domain, {t.config}, options.max_iterations));
  }
  auto system = model.msr_system();
  msr::MsrDomain domain(system);
  auto seeds = model.msr_seeds(target);
  if (seeds.empty()) {
    // Unsatisfiable target: denotes no configuration at all.
    return detail::make_report(target, domain, Verdict<msr::ConstrainedConfig>{});
  }
  return detail::make_report(target, domain, saturate(domain, seeds, options.max_iterations));
}

struct SimulateReport {
  std::optional<std::vector<std::string>> witness;
  std::optional<std::size_t> initial_index;  // which init line the witness starts from
  bool frontier_exhausted = false;
  std::size_t visited = 0;
};

struct SimulateOptions {
  std::size_t depth = 10;
  msr::Id gap_cap = 2;
};

inline SimulateReport simulate(const ModelFile& model, const std::string& target, const SimulateOptions& options) {
  SimulateReport report;
  if (model.kind == SystemKind::Petri) {
    PetriForward fwd(model.net, model.petri_target(target).config);
    auto res = explore(fwd, model.net.initial_config(), options.depth);
    report.visited = res.visited.size();
    report.frontier_exhausted = res.frontier_exhausted;
    if (res.covering_witness) {
      report.witness = res.covering_witness->firing_sequence;
      report.initial_index = 0;
    }
    return report;
  }
  auto system = model.msr_system();
  if (system.initials.empty()) throw std::invalid_argument("model has no initial configuration");
  MsrForward fwd(system, model.msr_seeds(target), options.gap_cap);
  report.frontier_exhausted = true;
  for (std::size_t i = 0; i < system.initials.size(); ++i) {
    auto res = explore(fwd, fwd.canonical(system.initials[i]), options.depth);
    report.visited += res.visited.size();
    report.frontier_exhausted = report.frontier_exhausted && res.frontier_exhausted;
    if (res.covering_witness) {
      report.witness = res.covering_witness->firing_sequence;
      report.initial_index = i;
      report.frontier_exhausted = false;
      break;
    }
  }
  return report;
}

/// Does replaying `trace` from some initial configuration cover `target`?
inline bool replay_covers(const ModelFile& model, const std::string& target, const std::vector<std::string>& trace) {
  if (model.kind == SystemKind::Petri) {
    try {
      HConfig end = replay(model.net, model.net.initial_config(), trace);
      return hconfig_leq(model.petri_target(target).config, end);
    } catch (const ReplayStuck&) {
      return false;
    }
  }
  auto system = model.msr_system();
  auto seeds = model.msr_seeds(target);
  for (const auto& init : system.initials) {
    try {
      auto end = replay(system, init, trace, seeds);
      for (const auto& s : seeds)
        if (msr::member_concrete(end, s)) return true;
    } catch (const ReplayStuck&) {
    }
  }
  return false;
}

struct CrosscheckReport {
  bool agree = false;
  bool engine_coverable = false;
  std::vector<std::string> engine_trace;
  bool replay_ok = false;
  std::optional<std::vector<std::string>> oracle_witness;
  std::size_t depth = 0;
  std::string summary;
};

using EngineFn = std::function<CheckReport(const ModelFile&, const std::string&)>;

/// Engine and oracle must agree: a coverable verdict's trace replays onto the
/// target and the oracle finds a witness within the trace's length; a
/// not-coverable verdict admits no oracle witness up to `depth`.
inline CrosscheckReport crosscheck(const ModelFile& model, const std::string& target, std::size_t depth,
                                   const EngineFn& engine = [](const ModelFile& m, const std::string& t) { return check(m, t); }) {
  CrosscheckReport r;
  r.depth = depth;
  CheckReport verdict = engine(model, target);
  r.engine_coverable = verdict.coverable;
  r.engine_trace = verdict.trace;
  if (verdict.coverable) {
    r.replay_ok = replay_covers(model, target, verdict.trace);
    SimulateOptions opts;
    opts.depth = verdict.trace.size();
    opts.gap_cap = static_cast<msr::Id>(2 * verdict.trace.size() + 1);
    r.oracle_witness = simulate(model, target, opts).witness;
    r.agree = r.replay_ok && r.oracle_witness.has_value();
  } else {
    SimulateOptions opts;
    opts.depth = depth;
    r.oracle_witness = simulate(model, target, opts).witness;
    r.agree = !r.oracle_witness.has_value();
  }

  auto join = [](const std::vector<std::string>& v) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : " ") + x;
    return s;
  };
  if (r.agree) {
    r.summary = r.engine_coverable ? "AGREE (coverable, trace: " + join(r.engine_trace) + ")"
                                   : "AGREE (no witness up to depth " + std::to_string(depth) + ")";
  } else {
    r.summary = std::string("DISAGREE (engine: ") + (r.engine_coverable ? "coverable" : "not coverable");
    if (r.engine_coverable) r.summary += ", trace " + join(r.engine_trace) + (r.replay_ok ? " replays" : " does not replay");
    r.summary += "; oracle: " + (r.oracle_witness ? "witness " + join(*r.oracle_witness) : std::string("no witness")) + ")";
  }
  return r;
}

/// Timestamp encoding of a net with history into MSR(Id): every transition
/// becomes  Pre, time(T) -> Post, time(U), h_e(T) : T < U,  so the log is a
/// multiset of stamped events and word targets become order constraints on
/// the stamps.
inline ModelFile encode_time(const ModelFile& petri) {
  if (petri.kind != SystemKind::Petri) throw std::invalid_argument("encode-time expects a petri model");
  const PetriNetH& net = petri.net;
  auto event_pred = [](const Symbol& e) { return "h_" + e; };
  for (const auto& p : net.places) {
    if (p == "time") throw std::invalid_argument("place name 'time' is reserved by the encoding");
    for (const auto& e : net.events)
      if (p == event_pred(e)) throw std::invalid_argument("place '" + p + "' clashes with an encoded event");
  }

  ModelFile out;
  out.kind = SystemKind::Msr;
  for (const auto& p : net.places) out.preds.push_back(msr::PredDecl{p, {}, false});
  out.preds.push_back(msr::PredDecl{"time", {msr::kIdSort}, false});
  for (const auto& e : net.events) out.preds.push_back(msr::PredDecl{event_pred(e), {msr::kIdSort}, false});

  auto places_of = [](const Multiset& m) {
    std::vector<msr::RawAtom> atoms;
    for (const auto& [p, n] : m.counts())
      for (std::size_t i = 0; i < n; ++i) atoms.push_back(msr::RawAtom{p, {}});
    return atoms;
  };
  for (const auto& t : net.transitions) {
    msr::RawRule r;
    r.name = t.name;
    r.lhs = places_of(t.pre);
    r.lhs.push_back(msr::RawAtom{"time", {msr::Term::variable("T")}});
    r.rhs = places_of(t.post);
    r.rhs.push_back(msr::RawAtom{"time", {msr::Term::variable("U")}});
    r.rhs.push_back(msr::RawAtom{event_pred(t.event), {msr::Term::variable("T")}});
    r.constraint.push_back(msr::OrderAtom{"T", '<', "U"});
    out.rules.push_back(std::move(r));
  }
  auto init = places_of(net.initial);
  init.push_back(msr::RawAtom{"time", {msr::Term::identifier(0)}});
  out.inits.push_back(std::move(init));

  for (const auto& t : petri.petri_targets) {
    MsrTarget mt;
    mt.name = t.name;
    mt.atoms = places_of(t.config.marking);
    const History& h = t.config.history;
    std::size_t k = 0;
    auto var = [&](std::size_t i) { return "E" + std::to_string(i + 1); };
    if (h.mode() == LogMode::Word) {
      // Most recent first: stamps strictly decrease along the word.
      for (const auto& e : h.events()) mt.atoms.push_back(msr::RawAtom{event_pred(e), {msr::Term::variable(var(k++))}});
      for (std::size_t i = 0; i + 1 < k; ++i) mt.constraint.push_back(msr::OrderAtom{var(i + 1), '<', var(i)});
    } else {
      for (const auto& [e, n] : h.counts().counts())
        for (std::size_t i = 0; i < n; ++i) mt.atoms.push_back(msr::RawAtom{event_pred(e), {msr::Term::variable(var(k++))}});
    }
    out.msr_targets.push_back(std::move(mt));
  }
  out.expectations = petri.expectations;
  return out;
}

}  // namespace hcov
