#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "circov/circov.hpp"
#include "circov/io.hpp"

using namespace circov;
using io::json;

namespace {

struct Options {
  std::string instance;
  std::optional<Int> alpha;
  std::string point;
  std::size_t max_circuits = 200000;
  std::size_t budget = default_budget;
  std::uint64_t seed = 20240601;
  std::string output = "-";
  std::size_t max_iterations = 100;
  std::size_t queries = 100;
};

class Partial : public std::runtime_error {
 public:
  Partial(json value, const std::string& what) : std::runtime_error(what), value_(std::move(value)) {}
  const json& value() const { return value_; }

 private:
  json value_;
};

Instance load(const Options& opt) {
  Instance inst = io::instance_from_json(io::load_json(opt.instance));
  if (opt.alpha) {
    if (*opt.alpha < 1) fail(ErrorKind::InvalidArgument, "--alpha must be positive");
    inst.demand.assign(inst.matrix.rows(), *opt.alpha);
  }
  return inst;
}

RationalVector weights(const Instance& inst) {
  return inst.weights.value_or(RationalVector(static_cast<std::size_t>(inst.matrix.columns()), 1));
}

bool fits(const Instance& inst, std::size_t budget) {
  return box_cost(inst.matrix.columns(), max_demand(inst.demand), budget) <= budget;
}

json cmd_solve(const Options& opt) {
  const Instance inst = load(opt);
  return io::to_json(optimize(inst.matrix, inst.demand, weights(inst)));
}

json cmd_separate(const Options& opt) {
  if (opt.point.empty()) fail(ErrorKind::InvalidArgument, "separate needs --point");
  const Instance inst = load(opt);
  const RationalVector x = io::rationals_from_json(io::load_json(opt.point));
  SeparationOptions sep;
  sep.oracle_budget = opt.budget;
  const SeparationResult res = separate(inst.matrix, inst.demand, x, sep);
  return io::to_json(res, build_D(inst.matrix));
}

json cmd_facets(const Options& opt) {
  const Instance inst = load(opt);
  FacetCandidates list = enumerate_facet_candidates(inst.matrix, inst.demand, {opt.max_circuits});
  if (fits(inst, opt.budget)) flag_facets(list, enumerate_minimal_covers(inst.matrix, inst.demand, opt.budget));
  json out = io::to_json(list);
  if (!list.complete) throw Partial(out, "circuit limit reached; candidate list is partial");
  return out;
}

json cmd_verify(const Options& opt) {
  const Instance inst = load(opt);
  if (!fits(inst, opt.budget)) fail(ErrorKind::BudgetExceeded, "instance box exceeds --budget");
  const CoverSet covers = enumerate_minimal_covers(inst.matrix, inst.demand, opt.budget);
  FacetCandidates list = enumerate_facet_candidates(inst.matrix, inst.demand, {opt.max_circuits});
  flag_facets(list, covers);
  const auto hull = hull_facets(inst.matrix, inst.demand, covers);

  std::set<std::pair<std::vector<Int>, Int>> hull_keys;
  for (const auto& f : hull) hull_keys.insert(f.key());
  std::set<std::pair<std::vector<Int>, Int>> candidate_keys;
  for (const auto& c : list.inequalities) candidate_keys.insert(c.key());

  json missing = json::array();
  std::size_t matched = 0;
  for (const auto& f : hull) {
    if (candidate_keys.count(f.key()))
      ++matched;
    else
      missing.push_back(io::to_json(f));
  }
  json extra = json::array();
  for (const auto& c : list.inequalities)
    if (!hull_keys.count(c.key())) extra.push_back(io::to_json(c));

  std::mt19937_64 rng(opt.seed);
  std::size_t disagreements = 0;
  SeparationOptions sep;
  sep.covers = &covers;
  for (std::size_t q = 0; q < opt.queries; ++q) {
    const RationalVector x = random_point(inst.matrix, inst.demand, covers, rng);
    const SeparationResult res = separate(inst.matrix, inst.demand, x, sep);
    if ((res.verdict == Verdict::Member) != in_hull(x, covers)) ++disagreements;
  }

  json out{{"instance", io::to_json(inst)},
           {"candidates", list.inequalities.size()},
           {"hull_facets", hull.size()},
           {"matched", matched},
           {"missing", missing},
           {"extra_nonfacets", extra},
           {"complete", list.complete},
           {"separation_queries", opt.queries},
           {"separation_disagreements", disagreements}};
  if (!list.complete) throw Partial(out, "circuit limit reached; candidate list is partial");
  return out;
}

json cmd_minors(const Options& opt) {
  const Instance inst = load(opt);
  json minors = json::array();
  bool complete = true;
  std::string method;
  if (const auto id = circulant_id(inst.matrix)) {
    method = "aguilera";
    const AguileraResult res = aguilera_minor_enumeration(*id, {opt.max_circuits});
    for (const auto& m : res.minors) minors.push_back(io::to_json(m));
    complete = res.complete;
  } else {
    method = "circuits";
    const AuxDigraph f = build_F(inst.matrix);
    std::map<std::vector<int>, MinorWitness> seen;
    CircuitFilter filter;
    filter.min_winding = 2;
    filter.max_count = opt.max_circuits;
    const CircuitEnumeration circuits = enumerate_circuits(f, filter);
    complete = circuits.complete;
    for (const ClosedPath& c : circuits.circuits) {
      if (classify_nodes(f, c).essential.empty()) continue;
      MinorWitness w = extract_minor(f, c);
      if (w.exact && !w.contracted.empty()) seen.emplace(w.contracted, std::move(w));
    }
    for (const auto& [n, w] : seen) minors.push_back(io::to_json(w));
  }
  json out{{"method", method}, {"minors", minors}, {"complete", complete}};
  if (!complete) throw Partial(out, "circuit limit reached; minor list is partial");
  return out;
}

json cmd_cut_loop(const Options& opt) {
  const Instance inst = load(opt);
  const RationalVector w = weights(inst);
  std::vector<std::pair<std::vector<Int>, Int>> cuts;
  SeparationOptions sep;
  sep.oracle_budget = opt.budget;
  json transcript = json::array();
  for (std::size_t it = 0; it < opt.max_iterations; ++it) {
    const lp::Solution lp = relaxation_optimum(inst.matrix, inst.demand, w, cuts);
    ensure(lp.status == lp::Status::Optimal, "LP relaxation is not solvable");
    const SeparationResult res = separate(inst.matrix, inst.demand, lp.x, sep);
    json step{{"iteration", it + 1}, {"x", io::to_json(lp.x)}, {"value", io::to_json(lp.value)}};
    if (res.verdict == Verdict::Member) {
      step["cut"] = nullptr;
      transcript.push_back(step);
      return {{"transcript", transcript}, {"value", io::to_json(lp.value)}, {"member", true}};
    }
    step["cut"] = io::to_json(*res.inequality);
    step["certificate"] = io::to_json(*res.certificate);
    transcript.push_back(step);
    cuts.emplace_back(res.inequality->coeffs, res.inequality->rhs);
  }
  throw Partial(json{{"transcript", transcript}, {"member", false}},
                std::string(to_string(ErrorKind::IterationCap)) + ": no Member after --max-iterations rounds");
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::BudgetExceeded:
    case ErrorKind::LimitExceeded:
    case ErrorKind::IterationCap: return 2;
    default: return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Covering polyhedra of circular matrices"};
  app.require_subcommand(1);
  Options opt;

  auto common = [&](CLI::App* sub) {
    sub->add_option("instance", opt.instance, "instance JSON file")->required()->check(CLI::ExistingFile);
    sub->add_option("--alpha", opt.alpha, "use b = alpha * 1");
    sub->add_option("--max-circuits", opt.max_circuits, "circuit enumeration cap (0 = none)");
    sub->add_option("--budget", opt.budget, "box budget for the brute-force oracle");
    sub->add_option("--seed", opt.seed, "seed for randomized checks");
    sub->add_option("--output", opt.output, "write JSON here instead of stdout");
  };
  std::map<CLI::App*, json (*)(const Options&)> verbs;
  auto add = [&](const char* name, const char* help, json (*run)(const Options&)) {
    CLI::App* sub = app.add_subcommand(name, help);
    common(sub);
    verbs[sub] = run;
    return sub;
  };
  add("solve", "min w.x over Q*(A,b)", cmd_solve);
  add("separate", "separate a point from Q*(A,b)", cmd_separate)
      ->add_option("--point", opt.point, "point JSON file")
      ->check(CLI::ExistingFile);
  add("facets", "facet candidates, flagged by the oracle when the box fits", cmd_facets);
  add("verify", "compare candidates with the oracle hull", cmd_verify)
      ->add_option("--queries", opt.queries, "random separation queries");
  add("minors", "circulant minors", cmd_minors);
  add("cut-loop", "LP relaxation plus separation until Member", cmd_cut_loop)
      ->add_option("--max-iterations", opt.max_iterations, "iteration cap");

  CLI11_PARSE(app, argc, argv);

  for (const auto& [sub, run] : verbs) {
    if (!sub->parsed()) continue;
    try {
      io::write(run(opt), opt.output);
      return 0;
    } catch (const Partial& p) {
      io::write(p.value(), opt.output);
      std::cerr << p.what() << '\n';
      return 2;
    } catch (const Error& e) {
      std::cerr << e.what() << '\n';
      return exit_code(e.kind());
    } catch (const std::exception& e) {
      std::cerr << e.what() << '\n';
      return 1;
    }
  }
  return 1;
}
