#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "psdeg/instances.hpp"
#include "psdeg/proof_json.hpp"

namespace psdeg {

enum class ExperimentKind { gap, knapsack };

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::gap;
  // gap: random CSP instances, one per seed.
  CspMode mode = CspMode::xor_parity;
  std::size_t n = 8;
  std::size_t m = 32;
  std::uint32_t arity = 3;
  std::vector<std::uint64_t> seeds;
  std::vector<std::uint32_t> degrees{4};  // even 2d values
  Formulation formulation = Formulation::direct;
  // knapsack: KS_{n,k} over the grid, scanned up to dmax.
  std::vector<std::size_t> knapsack_n;
  std::vector<std::int64_t> knapsack_k;
  std::uint32_t dmax = 8;
  // Solver settings.
  std::uint32_t w = 1;
  std::string cutoff = "kw";  // kw | degsum
  double tol = 1e-8;
  int jobs = 1;
  // Output paths; empty skips the file.
  std::string csv_path;
  std::string json_path;

  // Throws ValidationError on the first bad field.
  void validate() const;
};

// Missing keys keep their defaults; unknown keys are rejected.
ExperimentConfig config_from_json(const Json& j);
Json config_to_json(const ExperimentConfig& cfg);

struct GapRecord {
  std::string id;
  std::uint64_t seed = 0;
  std::uint32_t two_d = 0;
  Rational opt;
  std::optional<double> sos;
  std::optional<double> alpha;  // opt / sos
  std::string status = "ok";
};

struct KnapsackRecord {
  std::string id;
  std::size_t n = 0;
  std::int64_t k = 0;
  std::uint32_t dmax = 0;
  std::optional<std::uint32_t> degree;  // nullopt: none <= dmax
  std::string status = "ok";
};

// A table of already-formatted cells; CSV and JSON are rendered from the
// same strings.
struct Report {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::pair<std::string, std::string>> summary;
};

struct ExperimentResult {
  std::vector<GapRecord> gap_records;
  std::vector<KnapsackRecord> knapsack_records;
  std::optional<double> alpha_hat;  // min alpha over gap records
  Report report;
  // 0, 3 (a solver failure was recorded) or 4 (a sandwich violation).
  int exit_code = 0;
};

// Float cells use 12 significant digits.
std::string format_double(double x);

Report gap_report(const std::vector<GapRecord>& records, const std::optional<double>& alpha_hat);
Report knapsack_report(const std::vector<KnapsackRecord>& records);

std::string report_csv(const Report& r);
Json report_json(const Report& r);
void emit_report(const Report& r, const std::string& csv_path, const std::string& json_path);

// Records are ordered by instance id whatever the completion order.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

}  // namespace psdeg
