// twistor: command-line front end.
//
// Exit status: 0 all checks pass, 1 a bound or consistency check failed,
// 2 input error, 3 search refused by the budget.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "twistor/curves/count.hpp"
#include "twistor/curves/rank1.hpp"
#include "twistor/decomp/solver.hpp"
#include "twistor/harness/cache.hpp"
#include "twistor/harness/config.hpp"
#include "twistor/harness/json_io.hpp"
#include "twistor/harness/verify.hpp"
#include "twistor/roots/json.hpp"

using namespace twistor;
using harness::RunConfig;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kInputError = 2;
constexpr int kBudget = 3;

struct Options {
  std::string family;
  int rank = 0;
  std::string rank_class = "all";
  std::optional<std::size_t> samples;
  std::uint64_t seed = 0;
  std::string zeta_file, plane_file, witness_file;
  std::string mode = "geometric";
  std::string out;
  std::string format = "json";
  std::string cache;
  std::int64_t numerator_bound = 20;
  std::vector<std::int64_t> denominators{1, 2, 3, 4, 5, 6, 7, 8};
  std::string radius = "1/1000";
  std::size_t trials = 100;
  int halvings = 5;
  bool allow_large = false;
  std::uint64_t node_limit = 20'000'000;
  unsigned jobs = 1;
};

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(o.out, std::ios::binary | std::ios::trunc);
  if (!f) throw ParseError("cannot write " + o.out);
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
}

std::vector<harness::SystemSpec> systems_from(const Options& o, std::vector<harness::SystemSpec> defaults) {
  if (o.family.empty() && o.rank == 0) return defaults;
  if (o.family.empty() || o.rank == 0) throw ParseError("--family and --rank go together");
  const auto f = roots::parse_family(o.family);
  if (!roots::is_legal(f, o.rank)) throw ParseError("no root system " + o.family + std::to_string(o.rank));
  return {{f, o.rank}};
}

const roots::RootSystem& single_system(const Options& o) {
  if (o.family.empty() || o.rank == 0) throw ParseError("--family and --rank are required");
  const auto f = roots::parse_family(o.family);
  if (!roots::is_legal(f, o.rank)) throw ParseError("no root system " + o.family + std::to_string(o.rank));
  return roots::shared_root_system(f, o.rank);
}

RunConfig base_config(const Options& o, const std::string& command) {
  RunConfig c;
  c.command = command;
  if (o.rank_class == "all")
    c.rank_class = 0;
  else if (o.rank_class == "1" || o.rank_class == "2" || o.rank_class == "3")
    c.rank_class = std::stoi(o.rank_class);
  else
    throw ParseError("--rank-class must be 1, 2, 3 or all");
  c.seed = o.seed;
  c.sampling.numerator_bound = o.numerator_bound;
  c.sampling.denominators = o.denominators;
  for (auto d : o.denominators)
    if (d <= 0) throw ParseError("denominators must be positive");
  if (o.numerator_bound < 0) throw ParseError("--numerator-bound must be nonnegative");
  c.mode = decomp::parse_mode(o.mode);
  c.budget.allow_large = o.allow_large;
  c.budget.node_limit = o.node_limit;
  c.radius = o.radius;
  c.trials = o.trials;
  c.halvings = o.halvings;
  c.jobs = o.jobs;
  return c;
}

/// Looks up the report in the cache or computes and stores it.
json cached(const Options& o, const RunConfig& cfg, const std::function<json()>& compute) {
  auto cache = harness::ReportCache::from_option(o.cache);
  const std::string key = harness::config_key(cfg);
  if (cache) {
    bool evicted = false;
    if (auto body = cache->get(key, &evicted)) {
      std::cerr << "cache hit " << key << '\n';
      return json::parse(*body);
    }
    if (evicted) std::cerr << "cache entry " << key << " was corrupt and has been evicted\n";
  }
  json report = compute();
  if (cache) cache->put(key, report.dump(2) + "\n");
  return report;
}

int finish(const Options& o, const json& report, bool csv_capable) {
  if (o.format == "csv") {
    if (!csv_capable) throw ParseError("--format csv is only available for sampled counts");
    emit(o, harness::bulk_csv(report));
  } else {
    emit(o, report.dump(2));
  }
  return report.value("ok", false) ? kOk : kCheckFailed;
}

int cmd_count(const Options& o, bool verify_all) {
  if (!o.zeta_file.empty()) {
    const json doc = harness::read_json_file(o.zeta_file);
    const auto zeta = harness::zeta_from_json(doc);
    RunConfig cfg = base_config(o, "count");
    cfg.input = doc;
    const auto& sys = zeta.system();
    const json report = cached(o, cfg, [&] {
      const auto r = harness::evaluate_sample(zeta, cfg.tol);
      const bool ok = r.report.bounds_ok() && r.squarefree_q1 == r.report.q1 &&
                      (r.float_agree || r.fl.near_degenerate);
      return json{{"config", harness::canonical_json(cfg)},
                  {"report", harness::to_json(r.report, sys)},
                  {"oracle",
                   {{"squarefree_q1", r.squarefree_q1},
                    {"float_q1", r.fl.q1},
                    {"float_q2", r.fl.q2},
                    {"near_degenerate", r.fl.near_degenerate},
                    {"agree", r.float_agree}}},
                  {"ok", ok}};
    });
    if (o.format == "csv") throw ParseError("--format csv is only available for sampled counts");
    return finish(o, report, false);
  }
  RunConfig cfg = base_config(o, verify_all ? "verify theorem12" : "count");
  using roots::Family;
  cfg.systems = verify_all ? systems_from(o, {{Family::A, 1}, {Family::A, 2}, {Family::A, 3}, {Family::A, 4}, {Family::D, 4}})
                           : systems_from(o, {});
  if (cfg.systems.empty()) throw ParseError("count needs --zeta or --family/--rank");
  cfg.samples = o.samples.value_or(verify_all ? 100 : 20);
  const json report = cached(o, cfg, [&] { return harness::bulk_json(cfg, harness::run_bulk(cfg)); });
  return finish(o, report, true);
}

int cmd_semicont(const Options& o) {
  RunConfig cfg = base_config(o, "semicont");
  const auto radius = exact::Rational::parse(o.radius);
  if (radius.sign() <= 0) throw ParseError("--radius must be positive");
  std::vector<curves::ZetaTriple> bases;
  if (!o.zeta_file.empty()) {
    cfg.input = harness::read_json_file(o.zeta_file);
    bases.push_back(harness::zeta_from_json(cfg.input));
  } else {
    using roots::Family;
    cfg.systems = systems_from(o, {{Family::A, 2}, {Family::A, 3}, {Family::D, 4}});
    cfg.samples = o.samples.value_or(3);
  }
  const json report = cached(o, cfg, [&] {
    if (bases.empty()) {
      for (const auto& s : cfg.systems) {
        const auto& sys = roots::shared_root_system(s.family, s.rank);
        for (int c : harness::rank_classes_for(cfg, sys))
          for (std::size_t i = 0; i < cfg.samples; ++i) {
            auto rng = curves::Prng::stream(cfg.seed, harness::sample_stream_id(s, c, i));
            bases.push_back(curves::sample_zeta(sys, c, cfg.sampling, rng));
          }
      }
    }
    json runs = json::array();
    bool ok = true;
    for (std::size_t b = 0; b < bases.size(); ++b) {
      auto run = harness::semicont_with_refinement(bases[b], radius, cfg.trials, cfg.seed + b, cfg.halvings,
                                                   cfg.sampling);
      ok = ok && run.ok();
      runs.push_back(harness::semicont_json(run));
    }
    return json{{"config", harness::canonical_json(cfg)}, {"runs", runs}, {"ok", ok}};
  });
  return finish(o, report, false);
}

int cmd_solve(const Options& o, bool f2) {
  const auto& sys = single_system(o);
  RunConfig cfg = base_config(o, f2 ? "f2" : "f1");
  cfg.systems = {{sys.family(), sys.rank()}};
  if (!f2) cfg.mode = decomp::SolverMode::Literal;
  const json report = cached(o, cfg, [&] {
    const auto res = f2 ? decomp::f2_solve(sys, cfg.mode, cfg.budget) : decomp::f1_solve(sys, cfg.budget);
    json rules{{"pieces_proper", true},
               {"pieces_span_closed", true},
               {"t_part", "pieces disjoint from every other piece"},
               {"geometric_multiplicity_le_2", f2 && cfg.mode == decomp::SolverMode::Geometric}};
    return json{{"config", harness::canonical_json(cfg)},
                {"system", sys.name()},
                {"function", f2 ? "f2" : "f1"},
                {"rules", rules},
                {"lower_bound_2r_minus_1", 2 * sys.rank() - 1},
                {"result", harness::to_json(res)},
                {"ok", res.meets_lower_bound || cfg.mode == decomp::SolverMode::Literal}};
  });
  return finish(o, report, false);
}

int cmd_decomp(const Options& o) {
  if (o.plane_file.empty()) throw ParseError("decomp needs --plane FILE");
  const json doc = harness::read_json_file(o.plane_file);
  const auto& sys = harness::system_of(doc);
  const auto L = harness::plane_from_json(doc);
  const auto d = decomp::induced_decomposition(sys, L);
  const auto violation = decomp::validate_decomposition(d);
  json report{{"decomposition", harness::to_json(d)},
              {"s", d.s},
              {"rank_sum", d.rank_sum()},
              {"valid", !violation},
              {"ok", !violation}};
  return finish(o, report, false);
}

int cmd_validate(const Options& o) {
  if (o.witness_file.empty()) throw ParseError("validate needs --witness FILE");
  const auto d = harness::decomposition_from_json(harness::read_json_file(o.witness_file));
  const auto mode = decomp::parse_mode(o.mode);
  const auto violation = decomp::validate_decomposition(d, mode);
  json report{{"kind", decomp::kind_name(d.kind)},
              {"mode", decomp::mode_name(mode)},
              {"rank_sum", d.rank_sum()},
              {"valid", !violation},
              {"ok", !violation}};
  if (violation) report["violation"] = *violation;
  return finish(o, report, false);
}

int cmd_roots(const Options& o) { return finish(o, {{"system", roots::to_json_document(single_system(o))}, {"ok", true}}, false); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact counts of rational curves in twistor fibers of ADE ALE spaces"};
  app.require_subcommand(1);
  Options o;

  auto system_opts = [&](CLI::App* sc) {
    sc->add_option("--family", o.family, "root system family")->check(CLI::IsMember({"A", "D", "E"}));
    sc->add_option("--rank", o.rank, "root system rank")->check(CLI::PositiveNumber);
  };
  auto output_opts = [&](CLI::App* sc) {
    sc->add_option("--out", o.out, "write the report here instead of stdout");
    sc->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  };
  auto sampling_opts = [&](CLI::App* sc) {
    sc->add_option("--rank-class", o.rank_class, "1, 2, 3 or all");
    sc->add_option("--samples", o.samples, "samples per system and rank class");
    sc->add_option("--seed", o.seed, "PRNG seed");
    sc->add_option("--numerator-bound", o.numerator_bound, "numerators drawn from [-N, N]");
    sc->add_option("--denominators", o.denominators, "denominator grid")->delimiter(',');
    sc->add_option("--cache", o.cache, "report cache directory (default $TWISTOR_CACHE)");
    sc->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
  };

  auto* roots_cmd = app.add_subcommand("roots", "root system tables");
  auto* build = roots_cmd->add_subcommand("build", "emit roots and Cartan matrix");
  roots_cmd->require_subcommand(1);
  system_opts(build);
  output_opts(build);

  auto* count = app.add_subcommand("count", "count special twistor lines and rational curves");
  system_opts(count);
  output_opts(count);
  sampling_opts(count);
  count->add_option("--zeta", o.zeta_file, "zeta JSON document");

  auto* verify = app.add_subcommand("verify", "bulk verification");
  auto* thm = verify->add_subcommand("theorem12", "counting bounds over sampled zeta");
  verify->require_subcommand(1);
  system_opts(thm);
  output_opts(thm);
  sampling_opts(thm);

  auto* semicont = app.add_subcommand("semicont", "lower semicontinuity probe of q1");
  system_opts(semicont);
  output_opts(semicont);
  sampling_opts(semicont);
  semicont->add_option("--zeta", o.zeta_file, "base point");
  semicont->add_option("--radius", o.radius, "perturbation radius p/q");
  semicont->add_option("--trials", o.trials, "perturbations per base point");
  semicont->add_option("--halvings", o.halvings, "radius refinements after a violation");

  auto* f1 = app.add_subcommand("f1", "minimal rank sum over type-1 decompositions");
  auto* f2 = app.add_subcommand("f2", "minimal rank sum over type-2 decompositions");
  for (auto* sc : {f1, f2}) {
    system_opts(sc);
    output_opts(sc);
    sc->add_option("--cache", o.cache, "report cache directory (default $TWISTOR_CACHE)");
    sc->add_flag("--allow-large", o.allow_large, "permit ranks 5 and 6");
    sc->add_option("--node-limit", o.node_limit, "branch-and-bound node ceiling");
  }
  f2->add_option("--mode", o.mode, "literal or geometric")->check(CLI::IsMember({"literal", "geometric"}));

  auto* dec = app.add_subcommand("decomp", "decomposition induced by a plane");
  dec->add_option("--plane", o.plane_file, "plane JSON document")->required();
  output_opts(dec);

  auto* val = app.add_subcommand("validate", "check a decomposition document");
  val->add_option("--witness", o.witness_file, "decomposition JSON document")->required();
  val->add_option("--mode", o.mode, "literal or geometric")->check(CLI::IsMember({"literal", "geometric"}));
  output_opts(val);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kInputError;
  }

  const auto t0 = std::chrono::steady_clock::now();
  int status = kOk;
  try {
    if (*roots_cmd) status = cmd_roots(o);
    else if (*count) status = cmd_count(o, false);
    else if (*verify) status = cmd_count(o, true);
    else if (*semicont) status = cmd_semicont(o);
    else if (*f1) status = cmd_solve(o, false);
    else if (*f2) status = cmd_solve(o, true);
    else if (*dec) status = cmd_decomp(o);
    else if (*val) status = cmd_validate(o);
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget: " << e.what() << '\n';
    return kBudget;
  } catch (const TheoremViolation& e) {
    std::cerr << "CHECK FAILED: " << e.what() << '\n';
    return kCheckFailed;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  }
  const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
  std::cerr << "elapsed " << dt.count() << " s\n";
  return status;
}
