#pragma once

#include "fsvd/metrics.hpp"
#include "fsvd/models.hpp"
#include "fsvd/sparse.hpp"
#include "fsvd/types.hpp"

#include <filesystem>
#include <optional>
#include <utility>
#include <vector>

namespace fsvd::io {

// Text edge list: one `u v` pair per line, `#` lines and blank lines skipped.
// The node count is 1 + the largest id unless `n_nodes` is given.
EdgeList load_edge_list(const std::filesystem::path& path, std::optional<Index> n_nodes = std::nullopt);
void write_edge_list(const std::filesystem::path& path, const EdgeList& edges);

// Matrix Market coordinate files (real, integer or pattern; general or
// symmetric). Symmetric files are expanded to both triangles and duplicate
// coordinates are summed.
CsrMatrix load_matrix_market(const std::filesystem::path& path);
void write_matrix_market(const std::filesystem::path& path, const CsrMatrix& m);

// Whitespace-separated rectangular numeric table; row i is node i.
Matrix load_dense_tsv(const std::filesystem::path& path);
// Writes with 17 significant digits so a reload is exact.
void write_dense_tsv(const std::filesystem::path& path, const Matrix& m);
void write_vector_tsv(const std::filesystem::path& path, const Vector& v);

// Two columns: `node_id class_id`.
std::vector<std::pair<Index, Index>> load_labels(const std::filesystem::path& path);
// One node id per line (extra columns ignored).
std::vector<Index> load_ids(const std::filesystem::path& path);

// `node_id` followed by the left row then the right row.
void write_embedding_tsv(const std::filesystem::path& path, const EmbeddingModel& model);
// `node_id predicted_class`.
void write_predictions_tsv(const std::filesystem::path& path, const std::vector<Index>& predictions);

// A split directory holds train.tsv, test_pos.tsv and test_neg.tsv plus an
// index.tsv naming them together with the seed and node count.
inline constexpr const char* kSplitIndexFile = "index.tsv";
void write_split(const std::filesystem::path& dir, const EdgeSplit& split);
EdgeSplit load_split(const std::filesystem::path& dir);

}  // namespace fsvd::io
