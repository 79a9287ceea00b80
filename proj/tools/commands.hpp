#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "liouville/bootstrap.hpp"
#include "run_record.hpp"

namespace liouville::cli {

struct CouplingOptions {
  double gamma = 1.0;
  double mu = 1.0;
  unsigned threads = 0;
};

struct DozzOptions {
  CouplingOptions coupling;
  std::string a1, a2, a3;
};

/// Block weights come either as alphas (d1..d4, P) or directly as Delta
/// (delta1..delta4, deltaP).
struct BlockOptions {
  CouplingOptions coupling;
  std::optional<std::string> d1, d2, d3, d4;
  std::optional<std::string> delta1, delta2, delta3, delta4;
  std::optional<double> P;
  std::optional<std::string> deltaP;
  std::string z = "0.3";
  int truncation = kDefaultBlockTruncation;
  std::string method = "inverse";
  std::string csv;
};

struct FourPointOptions {
  CouplingOptions coupling;
  double a1 = 0.0, a2 = 0.0, a3 = 0.0, a4 = 0.0;
  std::string z = "0.4";
  int truncation = kDefaultBlockTruncation;
  QuadratureConfig quadrature;
  std::string csv;
  int csv_samples = 200;
};

struct VerifyOptions {
  int level = 4;
  int alphas = 10;
  std::uint64_t gmc_samples = 200;
};

struct GmcOptions {
  std::string config;
  std::optional<std::uint64_t> samples;
  std::optional<std::uint64_t> seed;  // falls back to the config, then LIOUVILLE_SEED, then 1
  std::optional<int> batches;
  std::optional<double> gamma;
  std::optional<double> mu;
  std::vector<std::string> insertions;  // "z@alpha"
  std::optional<double> compare_dozz;   // alpha of the three-point comparison
  unsigned threads = 0;
};

struct ShapovalovOptions {
  int level = 2;
};

// Each command fills the record and returns normally; errors propagate as
// exceptions and are classified by the caller.
void run_dozz(const DozzOptions& o, RunRecord& rec);
void run_block(const BlockOptions& o, RunRecord& rec);
void run_fourpoint(const FourPointOptions& o, RunRecord& rec);
void run_crossing(const FourPointOptions& o, RunRecord& rec);
/// Returns false when any check fails.
bool run_verify(const VerifyOptions& o, RunRecord& rec);
void run_gmc(const GmcOptions& o, RunRecord& rec);
void run_shapovalov(const ShapovalovOptions& o, RunRecord& rec);

}  // namespace liouville::cli
