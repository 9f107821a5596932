#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "twistor/curves/count.hpp"
#include "twistor/curves/sampling.hpp"
#include "twistor/curves/semicont.hpp"
#include "twistor/decomp/decomposition.hpp"
#include "twistor/harness/config.hpp"
#include "twistor/harness/float_oracle.hpp"
#include "twistor/harness/json_io.hpp"

namespace twistor::harness {

/// Stream index for (system, rank class, sample): independent of worker layout.
inline std::uint64_t sample_stream_id(const SystemSpec& s, int rank_class, std::size_t index) {
  return curves::Prng::splitmix64(fnv1a64(s.name() + "/" + std::to_string(rank_class))) ^ index;
}

struct SampleRecord {
  std::string family;
  int rank = 0;
  int rank_class = 0;
  std::size_t seed_index = 0;
  nlohmann::json zeta;
  curves::CurveCountReport report;
  std::size_t squarefree_q1 = 0;
  FloatOracleResult fl;
  bool float_agree = false;
};

struct Aggregate {
  std::size_t samples = 0;
  std::size_t bounds_pass = 0;
  std::size_t bounds_fail = 0;
  std::map<std::string, std::pair<std::size_t, std::size_t>> flags;  // name -> (pass, fail)
  std::size_t squarefree_agree = 0;
  std::size_t float_agree = 0;
  std::size_t near_degenerate = 0;
  std::size_t unflagged = 0;
  std::size_t unflagged_agree = 0;
  std::size_t disagree_flagged = 0;
  std::size_t disagree_unflagged = 0;
  std::size_t shared_points = 0;
  std::size_t tangent_classes = 0;

  bool bounds_ok() const { return bounds_fail == 0; }
  bool squarefree_ok() const { return squarefree_agree == samples; }
  /// >= 99% agreement away from near-degeneracy, and no unflagged disagreement.
  bool float_ok() const { return disagree_unflagged == 0 && 100 * unflagged_agree >= 99 * unflagged; }
};

struct BulkResult {
  std::vector<SampleRecord> records;
  Aggregate agg;
};

inline std::vector<int> rank_classes_for(const RunConfig& cfg, const roots::RootSystem& sys) {
  const int top = curves::max_rank_class(sys);
  if (cfg.rank_class == 0) {
    std::vector<int> all;
    for (int c = 1; c <= top; ++c) all.push_back(c);
    return all;
  }
  if (cfg.rank_class > top)
    throw std::invalid_argument("rank class " + std::to_string(cfg.rank_class) + " impossible for " + sys.name());
  return {cfg.rank_class};
}

inline SampleRecord evaluate_sample(const curves::ZetaTriple& zeta, const FloatTolerances& tol) {
  SampleRecord r;
  r.zeta = zeta_to_json(zeta);
  r.report = curves::count_curves(zeta, false);
  r.squarefree_q1 = curves::q1_squarefree_oracle(zeta);
  r.fl = float_oracle(zeta, tol);
  r.float_agree = r.fl.q1 == r.report.q1 && r.fl.q2 == r.report.q2;
  return r;
}

inline void accumulate(Aggregate& a, const SampleRecord& r) {
  ++a.samples;
  (r.report.bounds_ok() ? a.bounds_pass : a.bounds_fail) += 1;
  for (const auto& [name, ok] : r.report.bounds) (ok ? a.flags[name].first : a.flags[name].second) += 1;
  a.squarefree_agree += r.squarefree_q1 == r.report.q1;
  a.float_agree += r.float_agree;
  a.near_degenerate += r.fl.near_degenerate;
  if (!r.fl.near_degenerate) {
    ++a.unflagged;
    a.unflagged_agree += r.float_agree;
  }
  if (!r.float_agree) (r.fl.near_degenerate ? a.disagree_flagged : a.disagree_unflagged) += 1;
  a.shared_points += r.report.shared_points;
  a.tangent_classes += r.report.tangent_classes;
}

/// Rank-stratified sampling over every configured system.  Samples are
/// evaluated by `cfg.jobs` workers into fixed slots, then aggregated in order.
inline BulkResult run_bulk(const RunConfig& cfg) {
  struct Task {
    SystemSpec spec;
    int rank_class;
    std::size_t index;
  };
  std::vector<Task> tasks;
  for (const auto& s : cfg.systems) {
    const auto& sys = roots::shared_root_system(s.family, s.rank);
    for (int c : rank_classes_for(cfg, sys))
      for (std::size_t i = 0; i < cfg.samples; ++i) tasks.push_back({s, c, i});
  }
  BulkResult out;
  out.records.resize(tasks.size());
  auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t k = first; k < tasks.size(); k += stride) {
      const Task& t = tasks[k];
      const auto& sys = roots::shared_root_system(t.spec.family, t.spec.rank);
      auto rng = curves::Prng::stream(cfg.seed, sample_stream_id(t.spec, t.rank_class, t.index));
      const auto zeta = curves::sample_zeta(sys, t.rank_class, cfg.sampling, rng);
      SampleRecord r = evaluate_sample(zeta, cfg.tol);
      r.family = std::string(1, roots::family_letter(t.spec.family));
      r.rank = t.spec.rank;
      r.rank_class = t.rank_class;
      r.seed_index = t.index;
      out.records[k] = std::move(r);
    }
  };
  const unsigned jobs = std::max(1u, cfg.jobs);
  if (jobs == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(work, j, jobs);
    for (auto& th : pool) th.join();
  }
  for (const auto& r : out.records) accumulate(out.agg, r);
  return out;
}

inline nlohmann::json sample_json(const SampleRecord& r) {
  return nlohmann::json{{"family", r.family},
                        {"rank", r.rank},
                        {"rank_class", r.rank_class},
                        {"seed_index", r.seed_index},
                        {"zeta", r.zeta.at("zeta")},
                        {"rank_zeta", r.report.rank_zeta},
                        {"q1", r.report.q1},
                        {"q2", r.report.q2},
                        {"s_count", r.report.s_count},
                        {"t_count", r.report.t_count},
                        {"shared_points", r.report.shared_points},
                        {"tangent_classes", r.report.tangent_classes},
                        {"bounds", r.report.bounds},
                        {"bounds_ok", r.report.bounds_ok()},
                        {"oracle",
                         {{"squarefree_q1", r.squarefree_q1},
                          {"float_q1", r.fl.q1},
                          {"float_q2", r.fl.q2},
                          {"near_degenerate", r.fl.near_degenerate},
                          {"agree", r.float_agree}}}};
}

inline nlohmann::json aggregate_json(const Aggregate& a) {
  nlohmann::json flags = nlohmann::json::object();
  for (const auto& [name, pf] : a.flags) flags[name] = {{"pass", pf.first}, {"fail", pf.second}};
  return nlohmann::json{{"samples", a.samples},
                        {"bounds_pass", a.bounds_pass},
                        {"bounds_fail", a.bounds_fail},
                        {"flags", flags},
                        {"squarefree_agree", a.squarefree_agree},
                        {"float_agree", a.float_agree},
                        {"near_degenerate", a.near_degenerate},
                        {"float_disagree_flagged", a.disagree_flagged},
                        {"float_disagree_unflagged", a.disagree_unflagged},
                        {"shared_points_total", a.shared_points},
                        {"tangent_classes_total", a.tangent_classes},
                        {"oracle_ok", a.squarefree_ok() && a.float_ok()}};
}

inline nlohmann::json bulk_json(const RunConfig& cfg, const BulkResult& b) {
  nlohmann::json samples = nlohmann::json::array();
  for (const auto& r : b.records) samples.push_back(sample_json(r));
  return nlohmann::json{{"config", canonical_json(cfg)},
                        {"samples", samples},
                        {"aggregate", aggregate_json(b.agg)},
                        {"ok", b.agg.bounds_ok() && b.agg.squarefree_ok() && b.agg.float_ok()}};
}

/// CSV rendering of a bulk report document (so cached JSON reports can be re-rendered).
inline std::string bulk_csv(const nlohmann::json& report) {
  std::ostringstream os;
  os << "family,rank,seed_index,rank_zeta,q1,q2,s_count,t_count,bounds_ok\n";
  for (const auto& r : report.at("samples"))
    os << r.at("family").get<std::string>() << ',' << r.at("rank") << ',' << r.at("seed_index") << ','
       << r.at("rank_zeta") << ',' << r.at("q1") << ',' << r.at("q2") << ',' << r.at("s_count") << ','
       << r.at("t_count") << ',' << (r.at("bounds_ok").get<bool>() ? "true" : "false") << '\n';
  return os.str();
}

// ---- semicontinuity ------------------------------------------------------

struct SemicontRun {
  nlohmann::json base;
  std::vector<std::pair<std::string, curves::SemicontReport>> attempts;  // radius, report
  bool ok() const { return !attempts.empty() && attempts.back().second.violations == 0; }
};

/// Probe at `radius`; on violations halve the radius up to `halvings` times.
inline SemicontRun semicont_with_refinement(const curves::ZetaTriple& base, exact::Rational radius,
                                            std::size_t trials, std::uint64_t seed, int halvings,
                                            const curves::SamplingConfig& sampling) {
  SemicontRun run;
  run.base = zeta_to_json(base);
  for (int h = 0; h <= halvings; ++h) {
    auto rep = curves::semicontinuity_probe(base, radius, trials, seed, sampling);
    const bool clean = rep.violations == 0;
    run.attempts.emplace_back(radius.str(), std::move(rep));
    if (clean) break;
    radius = radius / exact::Rational(2);
  }
  return run;
}

inline nlohmann::json semicont_json(const SemicontRun& run) {
  nlohmann::json attempts = nlohmann::json::array();
  for (const auto& [radius, rep] : run.attempts) {
    nlohmann::json bad = nlohmann::json::array();
    for (const auto& s : rep.violating) {
      nlohmann::json z = nlohmann::json::array();
      for (const auto& c : s.zeta) {
        nlohmann::json v = nlohmann::json::array();
        for (const auto& x : c) v.push_back(x.re());
        z.push_back(v);
      }
      bad.push_back({{"zeta", z}, {"q1", s.q1}});
    }
    attempts.push_back({{"radius", radius},
                        {"trials", rep.trials},
                        {"base_q1", rep.base_q1},
                        {"min_q1", rep.min_q1},
                        {"violations", rep.violations},
                        {"violating", bad}});
  }
  return {{"base", run.base}, {"attempts", attempts}, {"ok", run.ok()}};
}

// ---- planes ----------------------------------------------------------------

/// Random admissible plane with small Gaussian-integer coordinates, so that
/// kernel lines coincide often enough to produce coarse decompositions.
inline decomp::PlaneL sample_plane(const roots::RootSystem& sys, curves::Prng& rng, std::int64_t bound = 2) {
  const auto n = static_cast<std::size_t>(sys.rank());
  for (;;) {
    decomp::PlaneL L{roots::HVector(n), roots::HVector(n)};
    for (auto* v : {&L.b1, &L.b2})
      for (auto& x : *v) x = exact::GaussRational(exact::Rational(rng.uniform(-bound, bound)),
                                                  exact::Rational(rng.uniform(-bound / 2, bound / 2)));
    try {
      decomp::check_plane(sys, L);
      return L;
    } catch (const std::invalid_argument&) {
    }
  }
}

}  // namespace twistor::harness
