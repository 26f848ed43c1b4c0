#include "kolportrait/sweep.hpp"

#include <nlohmann/json.hpp>
#ifdef _OPENMP
#include <omp.h>
#endif

#include <cmath>
#include <cstdlib>
#include <random>

namespace kolportrait {

SweepSpec SweepSpec::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  SweepSpec s;
  if (j.contains("random")) {
    const auto& r = j.at("random");
    s.random = true;
    s.n = r.value("n", 10000L);
    s.seed = r.value("seed", 1UL);
    if (r.contains("box")) {
      s.box_lo = r.at("box").at(0).get<double>();
      s.box_hi = r.at("box").at(1).get<double>();
    }
  } else if (j.contains("grid")) {
    s.random = false;
    for (auto& [key, v] : j.at("grid").items())
      s.grid[key] = {v.at(0).get<double>(), v.at(1).get<double>(), v.at(2).get<double>()};
  } else {
    throw KolError(ErrorCode::BadInput, "sweep spec needs a \"random\" or \"grid\" block");
  }
  return s;
}

std::vector<ParameterPoint> sweep_samples(const SweepSpec& spec) {
  std::vector<ParameterPoint> out;
  if (spec.random) {
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> dist(spec.box_lo, spec.box_hi);
    out.reserve(spec.n);
    for (long i = 0; i < spec.n; i++) {
      ParameterPoint p;
      p.b0 = Param(dist(rng));
      p.b1 = Param(dist(rng));
      p.b2 = Param(dist(rng));
      p.b3 = Param(dist(rng));
      p.c0 = Param(dist(rng));
      out.push_back(p);
    }
    return out;
  }
  // grid mode: Cartesian product over the listed parameters, others fixed at 1
  const char* names[5] = {"b0", "b1", "b2", "b3", "c0"};
  std::array<std::vector<double>, 5> values;
  for (int k = 0; k < 5; k++) {
    auto it = spec.grid.find(names[k]);
    if (it == spec.grid.end()) {
      values[k] = {1.0};
      continue;
    }
    const auto [lo, hi, steps] = it->second;
    const int m = std::max(1, (int)steps);
    for (int i = 0; i < m; i++)
      values[k].push_back(m == 1 ? lo : lo + (hi - lo) * i / (m - 1));
  }
  std::size_t total = 1;
  for (auto& v : values) total *= v.size();
  if (total > 2000000) throw KolError(ErrorCode::BadInput, "grid too large");
  out.reserve(total);
  for (double b0 : values[0])
    for (double b1 : values[1])
      for (double b2 : values[2])
        for (double b3 : values[3])
          for (double c0 : values[4]) {
            ParameterPoint p;
            p.b0 = Param(b0);
            p.b1 = Param(b1);
            p.b2 = Param(b2);
            p.b3 = Param(b3);
            p.c0 = Param(c0);
            out.push_back(p);
          }
  return out;
}

namespace {

// A sample within `margin` (relative to the coefficient scale) of any
// classification stratum. Tracing loses resolution there: local structures
// such as the lens between a squeezed pair of singular points shrink with the
// stratum distance. Used with a coarse margin for the near-stratum flag.
bool near_any_stratum(const ParameterPoint& p, double margin) {
  const double b0 = p.b0.value, b1 = p.b1.value, b2 = p.b2.value, b3 = p.b3.value,
               c0 = p.c0.value;
  const double scale = std::max({1.0, std::abs(b0), std::abs(b1), std::abs(b2), std::abs(b3),
                                 std::abs(c0)});
  if (std::abs(b0) < margin * scale || std::abs(b2) < margin * scale ||
      std::abs(b3) < margin * scale || std::abs(c0) < margin * scale ||
      std::abs(b1) < margin * scale)
    return true;
  if (std::abs(c0 - b0) < margin * (1 + std::abs(c0) + std::abs(b0))) return true;
  if (std::abs(b2 * b3 - b1 * c0) < margin * (1 + std::abs(b2 * b3) + std::abs(b1 * c0)))
    return true;
  if (std::abs(b2 * b3 - b1 * b0) < margin * (1 + std::abs(b2 * b3) + std::abs(b1 * b0)))
    return true;
  return false;
}

}  // namespace

SampleOutcome classify_sample(const ParameterPoint& raw, bool with_tracing,
                              const TraceConfig& tcfg) {
  SampleOutcome out;
  try {
    ParameterPoint p = raw;
    if (!validate_classifiable(p).ok) {
      p = normalize(raw).first;
      out.normalized = true;
    }
    const PortraitLabel g = assemble_global(p);
    const TopoClass t = topo_class(g);
    out.g = g.str();
    out.r = t.str();
    out.near_stratum = near_any_stratum(p, 6e-2);
    out.ok = true;
    if (with_tracing) {
      SeparatrixSkeleton sk = trace_separatrices(p, tcfg);
      const InvariantVector v = compute_invariants(sk);
      const auto rr = topo_class_from_invariants(v);
      out.traced = true;
      out.trace_agrees = rr.has_value() && *rr == t.r;
      if (!out.trace_agrees) out.point = parameter_point_to_json(p);
    }
  } catch (const KolError& e) {
    out.ok = false;
    out.error = e.what();
  }
  return out;
}

namespace {

SweepResult reduce_outcomes(const std::vector<SampleOutcome>& outcomes) {
  SweepResult res;
  res.total = (long)outcomes.size();
  for (const auto& o : outcomes) {
    if (!o.ok) {
      res.failures++;
      if (res.notes.size() < 20) res.notes.push_back(o.error);
      continue;
    }
    res.classified++;
    res.g_counts[o.g]++;
    res.r_counts[o.r]++;
    if (o.traced) {
      res.traced++;
      if (!o.trace_agrees) {
        res.trace_disagreements++;
        if (!o.near_stratum) res.unflagged_disagreements++;
        if (res.disagreements.size() < 50)
          res.disagreements.push_back({o.point, o.near_stratum});
      }
    }
  }
  return res;
}

int env_jobs(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("KOLPORTRAIT_JOBS")) {
    int j = std::atoi(env);
    if (j > 0) return j;
  }
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace

SweepResult sweep(const SweepSpec& spec, bool with_tracing, int jobs) {
  const auto samples = sweep_samples(spec);
  std::vector<SampleOutcome> outcomes(samples.size());
  TraceConfig tcfg;
  tcfg.jobs = 1;  // parallelism lives at the sample level here
  const int nj = env_jobs(jobs);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) num_threads(nj)
#endif
  for (long i = 0; i < (long)samples.size(); i++)
    outcomes[i] = classify_sample(samples[i], with_tracing, tcfg);
  (void)nj;
  return reduce_outcomes(outcomes);
}

SweepResult sweep_serial(const SweepSpec& spec, bool with_tracing) {
  const auto samples = sweep_samples(spec);
  std::vector<SampleOutcome> outcomes(samples.size());
  TraceConfig tcfg;
  tcfg.jobs = 1;
  for (std::size_t i = 0; i < samples.size(); i++)
    outcomes[i] = classify_sample(samples[i], with_tracing, tcfg);
  return reduce_outcomes(outcomes);
}

std::string SweepResult::to_json() const {
  nlohmann::json j;
  j["schema"] = "kolportrait/1";
  j["total"] = total;
  j["classified"] = classified;
  j["failures"] = failures;
  j["g_counts"] = g_counts;
  j["r_counts"] = r_counts;
  bool support_ok = true;
  for (auto& [r, cnt] : r_counts) {
    (void)cnt;
    if (r.size() < 2 || r[0] != 'R') support_ok = false;
    const int num = std::atoi(r.c_str() + 1);
    if (num < 1 || num > 13) support_ok = false;
  }
  j["r_support_ok"] = support_ok;
  if (traced) {
    j["traced"] = traced;
    j["trace_disagreements"] = trace_disagreements;
    j["unflagged_disagreements"] = unflagged_disagreements;
    auto list = nlohmann::json::array();
    for (auto& [pt_json, flagged] : disagreements)
      list.push_back({{"point", nlohmann::json::parse(pt_json)}, {"near_stratum", flagged}});
    j["disagreements"] = list;
  }
  if (!notes.empty()) j["notes"] = notes;
  return j.dump();
}

}  // namespace kolportrait
