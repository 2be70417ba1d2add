#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include "bounds.hpp"
#include "csv.hpp"
#include "ea.hpp"

namespace ftlab {

struct ExperimentConfig {
  EaConfig ea;
  std::size_t runs = 1000;
  std::uint64_t base_seed = 1;
};

struct ProfileRow {
  std::string target_label;
  std::uint64_t hits = 0;
  std::uint64_t runs = 0;
  // mean and standard error are over hitting runs only (conditional when
  // hit_fraction < 1) and reported only when hits >= 2; NaN otherwise
  double mean_evals = std::numeric_limits<double>::quiet_NaN();
  double stderr_evals = std::numeric_limits<double>::quiet_NaN();
  std::uint64_t min_evals = 0;
  std::uint64_t max_evals = 0;
  double hit_fraction = 0.0;
};

struct RuntimeProfile {
  std::vector<ProfileRow> rows;
};

// Worker count: hardware concurrency, capped by FT_LAB_THREADS and the
// number of replications.
inline std::size_t worker_count(std::size_t runs) {
  std::size_t hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* cap = std::getenv("FT_LAB_THREADS")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(cap, &end, 10);
    if (end && *end == '\0' && v >= 1) hw = std::min<std::size_t>(hw, v);
  }
  return std::max<std::size_t>(1, std::min(hw, runs));
}

// Runs R independent replications (run i seeded with mix_seed(base, i)) and
// aggregates first-hit evaluation counts per target. Replications are
// embarrassingly parallel; the aggregation pass is a sequential integer
// reduction, so the profile is bit-identical for any worker count.
template <class P>
RuntimeProfile run_experiment(const P& problem, const ExperimentConfig& config,
                              const std::vector<typename P::Fitness>& targets) {
  if (config.runs < 1) throw std::invalid_argument("run_experiment: runs >= 1 required");
  const std::size_t R = config.runs, T = targets.size();

  // first-hit evaluations per (run, target); 0 = not hit within budget
  std::vector<std::uint64_t> hit(R * T, 0);
  auto work = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      Rng rng(mix_seed(config.base_seed, i));
      RunResult<P> result = run(problem, config.ea, rng);
      for (std::size_t t = 0; t < T; ++t)
        if (auto e = result.first_hit(targets[t])) hit[i * T + t] = *e;
    }
  };
  std::size_t workers = worker_count(R);
  if (workers <= 1) {
    work(0, R);
  } else {
    std::vector<std::thread> pool;
    std::size_t chunk = (R + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      std::size_t lo = w * chunk, hi = std::min(R, lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back(work, lo, hi);
    }
    for (auto& th : pool) th.join();
  }

  RuntimeProfile profile;
  profile.rows.resize(T);
  for (std::size_t t = 0; t < T; ++t) {
    ProfileRow& row = profile.rows[t];
    row.target_label = P::fitness_label(targets[t]);
    row.runs = R;
    unsigned __int128 sum = 0, sumsq = 0;
    std::uint64_t lo = std::numeric_limits<std::uint64_t>::max(), hi = 0;
    for (std::size_t i = 0; i < R; ++i) {
      std::uint64_t v = hit[i * T + t];
      if (v == 0) continue;
      ++row.hits;
      sum += v;
      sumsq += static_cast<unsigned __int128>(v) * v;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    row.hit_fraction = static_cast<double>(row.hits) / static_cast<double>(R);
    if (row.hits > 0) {
      row.min_evals = lo;
      row.max_evals = hi;
    }
    if (row.hits >= 2) {
      long double h = static_cast<long double>(row.hits);
      long double mean = static_cast<long double>(sum) / h;
      long double var =
          (static_cast<long double>(sumsq) - static_cast<long double>(sum) * mean) / (h - 1.0L);
      if (var < 0.0L) var = 0.0L;  // rounding guard for zero-variance samples
      row.mean_evals = static_cast<double>(mean);
      row.stderr_evals = static_cast<double>(std::sqrt(static_cast<double>(var / h)));
    }
  }
  return profile;
}

inline CsvTable profile_csv(const RuntimeProfile& profile) {
  CsvTable table;
  table.header = {"target", "hits",      "runs", "mean_evals", "stderr",
                  "min",    "max",       "hit_fraction"};
  for (const auto& r : profile.rows) {
    table.rows.push_back({r.target_label, std::to_string(r.hits), std::to_string(r.runs),
                          r.hits >= 2 ? format_double(r.mean_evals) : "",
                          r.hits >= 2 ? format_double(r.stderr_evals) : "",
                          r.hits ? std::to_string(r.min_evals) : "",
                          r.hits ? std::to_string(r.max_evals) : "",
                          format_double(r.hit_fraction)});
  }
  return table;
}

// One bound evaluated against a reference curve (exact expectation or
// simulated mean), per target.
struct ComparisonRow {
  double target = 0.0;
  double reference = 0.0;
  std::string bound_name;
  double bound_value = std::numeric_limits<double>::quiet_NaN();
  double ratio = std::numeric_limits<double>::quiet_NaN();
  std::string status;
};

inline std::vector<ComparisonRow> compare_rows(const std::vector<double>& targets,
                                               const std::vector<double>& reference,
                                               const std::string& bound_name,
                                               const std::vector<BoundResult>& bounds) {
  if (targets.size() != reference.size() || targets.size() != bounds.size())
    throw std::invalid_argument("compare_rows: target grids differ");
  std::vector<ComparisonRow> rows;
  rows.reserve(targets.size());
  for (std::size_t i = 0; i < targets.size(); ++i) {
    ComparisonRow row;
    row.target = targets[i];
    row.reference = reference[i];
    row.bound_name = bound_name;
    row.status = to_string(bounds[i].status);
    if (bounds[i].usable()) {
      row.bound_value = bounds[i].value;
      row.ratio = bounds[i].value / reference[i];
      switch (bounds[i].kind) {
        case BoundKind::upper:
          row.status += bounds[i].value >= reference[i] ? ":ok" : ":violated";
          break;
        case BoundKind::lower:
          row.status += bounds[i].value <= reference[i] ? ":ok" : ":violated";
          break;
        case BoundKind::exact:
          row.status += std::abs(bounds[i].value - reference[i]) <=
                                1e-9 * std::max(1.0, std::abs(reference[i]))
                            ? ":ok"
                            : ":violated";
          break;
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

inline CsvTable comparison_csv(const std::vector<ComparisonRow>& rows, double n_for_relative) {
  CsvTable table;
  table.header = {"target", "reference", "bound_name", "bound_value",
                  "ratio",  "status",    "k_relative"};
  for (const auto& r : rows) {
    table.rows.push_back({format_double(r.target), format_double(r.reference), r.bound_name,
                          std::isnan(r.bound_value) ? "" : format_double(r.bound_value),
                          std::isnan(r.ratio) ? "" : format_double(r.ratio), r.status,
                          format_double(r.target / n_for_relative)});
  }
  return table;
}

}  // namespace ftlab
