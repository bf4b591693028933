#include "fsvd/io.hpp"

#include "fsvd/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>

namespace fsvd::io {

namespace {

namespace fs = std::filesystem;

std::ifstream open_input(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  return in;
}

std::ofstream open_output(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out.precision(17);
  return out;
}

std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

template <typename T>
T parse_number(std::string_view token, std::size_t line, const fs::path& path) {
  T value{};
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (!token.empty() && token.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError(path.string() + ": invalid number '" + std::string(token) + "'", line);
  }
  return value;
}

std::string lowercase(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

}  // namespace

EdgeList load_edge_list(const fs::path& path, std::optional<Index> n_nodes) {
  std::ifstream in = open_input(path);
  EdgeList list;
  NodeId max_id = -1;
  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    auto tokens = tokenize(line);
    if (tokens.empty() || tokens.front().front() == '#') continue;
    if (tokens.size() != 2) throw ParseError(path.string() + ": expected two node ids", line_no);
    auto u = parse_number<NodeId>(tokens[0], line_no, path);
    auto v = parse_number<NodeId>(tokens[1], line_no, path);
    if (u < 0 || v < 0) throw ParseError(path.string() + ": negative node id", line_no);
    list.edges.push_back({u, v});
    max_id = std::max({max_id, u, v});
  }
  list.n_nodes = n_nodes.value_or(max_id + 1);
  list.validate();
  return list;
}

void write_edge_list(const fs::path& path, const EdgeList& edges) {
  std::ofstream out = open_output(path);
  for (const Edge& e : edges.edges) out << e.u << '\t' << e.v << '\n';
}

CsrMatrix load_matrix_market(const fs::path& path) {
  std::ifstream in = open_input(path);
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw ParseError(path.string() + ": empty file", line_no);

  auto header = tokenize(line);
  if (header.size() != 5 || lowercase(header[0]) != "%%matrixmarket" || lowercase(header[1]) != "matrix") {
    throw ParseError(path.string() + ": missing %%MatrixMarket matrix header", line_no);
  }
  if (lowercase(header[2]) != "coordinate") {
    throw ParseError(path.string() + ": only coordinate format is supported", line_no);
  }
  const std::string field = lowercase(header[3]);
  if (field != "real" && field != "integer" && field != "pattern") {
    throw ParseError(path.string() + ": unsupported field '" + field + "'", line_no);
  }
  const std::string symmetry = lowercase(header[4]);
  if (symmetry != "general" && symmetry != "symmetric") {
    throw ParseError(path.string() + ": unsupported symmetry '" + symmetry + "'", line_no);
  }
  const bool pattern = field == "pattern";
  const bool symmetric = symmetry == "symmetric";

  Index rows = -1, cols = -1, entries = -1;
  std::vector<Triplet> triplets;
  Index seen = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto tokens = tokenize(line);
    if (tokens.empty() || tokens.front().front() == '%') continue;
    if (rows < 0) {
      if (tokens.size() != 3) throw ParseError(path.string() + ": size line needs rows, cols, entries", line_no);
      rows = parse_number<Index>(tokens[0], line_no, path);
      cols = parse_number<Index>(tokens[1], line_no, path);
      entries = parse_number<Index>(tokens[2], line_no, path);
      if (rows < 0 || cols < 0 || entries < 0) throw ParseError(path.string() + ": negative size", line_no);
      if (symmetric && rows != cols) throw ParseError(path.string() + ": symmetric matrix must be square", line_no);
      triplets.reserve(static_cast<std::size_t>(symmetric ? 2 * entries : entries));
      continue;
    }
    const std::size_t expected = pattern ? 2 : 3;
    if (tokens.size() != expected) {
      throw ParseError(path.string() + ": expected " + std::to_string(expected) + " fields per entry", line_no);
    }
    if (seen == entries) throw ParseError(path.string() + ": more entries than declared", line_no);
    Index i = parse_number<Index>(tokens[0], line_no, path);
    Index j = parse_number<Index>(tokens[1], line_no, path);
    if (i < 1 || i > rows || j < 1 || j > cols) throw ParseError(path.string() + ": entry index out of range", line_no);
    double value = pattern ? 1.0 : parse_number<double>(tokens[2], line_no, path);
    triplets.push_back({i - 1, j - 1, value});
    if (symmetric && i != j) triplets.push_back({j - 1, i - 1, value});
    ++seen;
  }
  if (rows < 0) throw ParseError(path.string() + ": missing size line", line_no);
  if (seen != entries) {
    throw ParseError(path.string() + ": declared " + std::to_string(entries) + " entries, found " +
                         std::to_string(seen),
                     line_no);
  }
  return CsrMatrix::from_triplets(rows, cols, std::move(triplets));
}

void write_matrix_market(const fs::path& path, const CsrMatrix& m) {
  std::ofstream out = open_output(path);
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << m.rows() << ' ' << m.cols() << ' ' << m.nnz() << '\n';
  const auto& offsets = m.row_offsets();
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index p = offsets[i]; p < offsets[i + 1]; ++p) {
      out << i + 1 << ' ' << m.col_indices()[p] + 1 << ' ' << m.values()[p] << '\n';
    }
  }
}

Matrix load_dense_tsv(const fs::path& path) {
  std::ifstream in = open_input(path);
  std::vector<double> values;
  Index width = -1;
  Index rows = 0;
  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    if (width < 0) width = static_cast<Index>(tokens.size());
    if (static_cast<Index>(tokens.size()) != width) {
      throw ParseError(path.string() + ": row has " + std::to_string(tokens.size()) + " columns, expected " +
                           std::to_string(width),
                       line_no);
    }
    for (auto token : tokens) values.push_back(parse_number<double>(token, line_no, path));
    ++rows;
  }
  if (rows == 0) throw ParseError(path.string() + ": no data rows");
  return Eigen::Map<const RowMatrix>(values.data(), rows, width);
}

void write_dense_tsv(const fs::path& path, const Matrix& m) {
  std::ofstream out = open_output(path);
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) out << (j ? "\t" : "") << m(i, j);
    out << '\n';
  }
}

void write_vector_tsv(const fs::path& path, const Vector& v) {
  std::ofstream out = open_output(path);
  for (Index i = 0; i < v.size(); ++i) out << v[i] << '\n';
}

std::vector<std::pair<Index, Index>> load_labels(const fs::path& path) {
  std::ifstream in = open_input(path);
  std::vector<std::pair<Index, Index>> labels;
  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    auto tokens = tokenize(line);
    if (tokens.empty() || tokens.front().front() == '#') continue;
    if (tokens.size() != 2) throw ParseError(path.string() + ": expected `node_id class_id`", line_no);
    labels.emplace_back(parse_number<Index>(tokens[0], line_no, path), parse_number<Index>(tokens[1], line_no, path));
  }
  if (labels.empty()) throw ParseError(path.string() + ": no labels");
  return labels;
}

std::vector<Index> load_ids(const fs::path& path) {
  std::ifstream in = open_input(path);
  std::vector<Index> ids;
  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    auto tokens = tokenize(line);
    if (tokens.empty() || tokens.front().front() == '#') continue;
    ids.push_back(parse_number<Index>(tokens[0], line_no, path));
  }
  return ids;
}

void write_embedding_tsv(const fs::path& path, const EmbeddingModel& model) {
  std::ofstream out = open_output(path);
  for (Index i = 0; i < model.nodes(); ++i) {
    out << i;
    for (Index j = 0; j < model.left.cols(); ++j) out << '\t' << model.left(i, j);
    for (Index j = 0; j < model.right.cols(); ++j) out << '\t' << model.right(i, j);
    out << '\n';
  }
}

void write_predictions_tsv(const fs::path& path, const std::vector<Index>& predictions) {
  std::ofstream out = open_output(path);
  for (std::size_t i = 0; i < predictions.size(); ++i) out << i << '\t' << predictions[i] << '\n';
}

void write_split(const fs::path& dir, const EdgeSplit& split) {
  fs::create_directories(dir);
  write_edge_list(dir / "train.tsv", split.train);
  write_edge_list(dir / "test_pos.tsv", split.test_pos);
  write_edge_list(dir / "test_neg.tsv", split.test_neg);
  std::ofstream index = open_output(dir / kSplitIndexFile);
  index << "train\ttrain.tsv\n"
        << "test_pos\ttest_pos.tsv\n"
        << "test_neg\ttest_neg.tsv\n"
        << "seed\t" << split.seed << '\n'
        << "n_nodes\t" << split.train.n_nodes << '\n';
}

EdgeSplit load_split(const fs::path& dir) {
  const fs::path index_path = dir / kSplitIndexFile;
  std::ifstream in = open_input(index_path);
  std::map<std::string, std::string, std::less<>> entries;
  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    auto tokens = tokenize(line);
    if (tokens.empty() || tokens.front().front() == '#') continue;
    if (tokens.size() != 2) throw ParseError(index_path.string() + ": expected `key value`", line_no);
    entries[std::string(tokens[0])] = std::string(tokens[1]);
  }
  for (const char* key : {"train", "test_pos", "test_neg"}) {
    if (!entries.count(key)) throw ParseError(index_path.string() + ": missing '" + key + "' entry");
  }

  std::optional<Index> n_nodes;
  if (auto it = entries.find("n_nodes"); it != entries.end()) n_nodes = parse_number<Index>(it->second, 0, index_path);

  EdgeSplit split;
  if (auto it = entries.find("seed"); it != entries.end()) split.seed = parse_number<std::uint64_t>(it->second, 0, index_path);
  split.train = load_edge_list(dir / entries["train"], n_nodes);
  split.test_pos = load_edge_list(dir / entries["test_pos"], n_nodes);
  split.test_neg = load_edge_list(dir / entries["test_neg"], n_nodes);
  if (!n_nodes) {
    Index n = std::max({split.train.n_nodes, split.test_pos.n_nodes, split.test_neg.n_nodes});
    split.train.n_nodes = split.test_pos.n_nodes = split.test_neg.n_nodes = n;
  }
  return split;
}

}  // namespace fsvd::io
