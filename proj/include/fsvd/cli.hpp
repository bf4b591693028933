#pragma once

#include "fsvd/linops.hpp"
#include "fsvd/models.hpp"
#include "fsvd/svd.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace fsvd::cli {

// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kUsage = 2,
  kInputError = 3,
  kParseError = 4,
  kNumericError = 5,
};

struct RunConfig {
  std::string command;  // svd, embed, linkpred, classify, sweep or bench

  std::string matrix;
  std::string edges;
  std::string features;
  std::string labels;
  std::string train_ids;
  std::string valid_ids;
  std::string test_ids;
  std::string split_dir;
  std::optional<Index> n_nodes;
  bool symmetrize = true;

  FsvdParams params;
  std::optional<Index> window;
  double neg_coef = 1.0;

  std::optional<Index> layers;
  Index max_layers = 6;
  Index pca_dim = 1000;
  Index embed_rank = 32;
  bool augment = true;
  LabeledSolve solve = LabeledSolve::kGatherThenDecompose;

  double test_fraction = 0.5;

  std::string sweep_param;  // "L" or "k"
  std::string sweep_range;  // "lo..hi"

  std::vector<Index> bench_sizes{10000, 20000, 40000};
  double bench_degree = 20.0;
  Index bench_repeats = 5;

  // Prefix for artifact files, e.g. `out/cora` -> `out/cora.embedding.tsv`.
  std::string out;
};

// Context window used when --window is absent: 5 for link prediction and
// embedding, 1 for the classification pipeline.
Index default_window(const std::string& command);

// Executes one command, printing `key=value` metrics (or CSV) to `out` and
// diagnostics to `err`. Library errors become the matching exit code.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses command-line flags with CLI11 and dispatches to run().
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fsvd::cli
