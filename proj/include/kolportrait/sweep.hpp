#ifndef KOLPORTRAIT_SWEEP_HPP
#define KOLPORTRAIT_SWEEP_HPP

#include "kolportrait/global.hpp"
#include "kolportrait/trace.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace kolportrait {

struct SweepSpec {
  bool random = true;
  long n = 10000;
  std::uint64_t seed = 1;
  double box_lo = -3.0, box_hi = 3.0;
  // grid mode: per-parameter [lo, hi, steps]
  std::map<std::string, std::array<double, 3>> grid;

  static SweepSpec from_json(const std::string& text);
};

struct SampleOutcome {
  bool ok = false;
  bool normalized = false;
  std::string g, r;
  bool near_stratum = false;
  bool traced = false;
  bool trace_agrees = true;
  std::string error;
  std::string point;  // JSON of the classified point, kept for disagreements
};

struct SweepResult {
  long total = 0, classified = 0, failures = 0;
  std::map<std::string, long> g_counts, r_counts;
  long traced = 0, trace_disagreements = 0, unflagged_disagreements = 0;
  std::vector<std::pair<std::string, bool>> disagreements;  // point JSON, near-stratum flag
  std::vector<std::string> notes;  // capped diagnostics

  std::string to_json() const;
};

std::vector<ParameterPoint> sweep_samples(const SweepSpec& spec);

SampleOutcome classify_sample(const ParameterPoint& raw, bool with_tracing,
                              const TraceConfig& tcfg);

// OpenMP kernel; results are index-ordered, so the census is independent of
// the worker count.
SweepResult sweep(const SweepSpec& spec, bool with_tracing = false, int jobs = 0);

// Plain serial loop kept as the reference implementation for tests and the
// benchmark; must produce the identical census.
SweepResult sweep_serial(const SweepSpec& spec, bool with_tracing = false);

}  // namespace kolportrait

#endif
