#include "skewcorr/state_io.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "json.hpp"

namespace skewcorr {

using nlohmann::json;

namespace {

json real_array(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json complex_object(const Matrix& m) { return json{{"re", real_array(m.real())}, {"im", real_array(m.imag())}}; }

Eigen::MatrixXd parse_real_array(const json& j, const char* field) {
  if (!j.is_array() || j.empty()) {
    throw Error(ErrorKind::InvalidArgument, fmt::format("'{}' must be a non-empty 2-D array", field));
  }
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j.front().size());
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw Error(ErrorKind::InvalidArgument, fmt::format("'{}' row {} has the wrong length", field, i));
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      const auto& x = row[static_cast<std::size_t>(c)];
      if (!x.is_number()) {
        throw Error(ErrorKind::InvalidArgument, fmt::format("'{}'[{}][{}] is not a number", field, i, c));
      }
      m(i, c) = x.get<double>();
    }
  }
  return m;
}

Matrix parse_complex(const json& j) {
  if (!j.is_object() || !j.contains("re")) {
    throw Error(ErrorKind::InvalidArgument, "matrix object needs a 're' array");
  }
  const Eigen::MatrixXd re = parse_real_array(j.at("re"), "re");
  Eigen::MatrixXd im = Eigen::MatrixXd::Zero(re.rows(), re.cols());
  if (j.contains("im")) im = parse_real_array(j.at("im"), "im");
  if (im.rows() != re.rows() || im.cols() != re.cols()) {
    throw Error(ErrorKind::DimensionMismatch,
                fmt::format("'re' is {}x{} but 'im' is {}x{}", re.rows(), re.cols(), im.rows(), im.cols()));
  }
  Matrix m(re.rows(), re.cols());
  m.real() = re;
  m.imag() = im;
  return m;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidArgument, fmt::format("malformed JSON: {}", e.what()));
  }
}

}  // namespace

std::string dump_state(const BipartiteState& state) {
  json j = complex_object(state.matrix());
  j["dims"] = {state.dim_a(), state.dim_b()};
  return j.dump(1) + "\n";
}

BipartiteState parse_state(std::string_view text) {
  const json j = parse_json(text);
  if (!j.is_object() || !j.contains("dims") || !j.at("dims").is_array() || j.at("dims").size() != 2 ||
      !j.at("dims")[0].is_number_integer() || !j.at("dims")[1].is_number_integer()) {
    throw Error(ErrorKind::InvalidArgument, "state file needs 'dims': [dA, dB]");
  }
  const auto da = j.at("dims")[0].get<Eigen::Index>();
  const auto db = j.at("dims")[1].get<Eigen::Index>();
  const Matrix m = parse_complex(j);
  if (m.rows() != m.cols()) {
    throw Error(ErrorKind::NotSquare, fmt::format("state matrix is {}x{}", m.rows(), m.cols()));
  }
  return BipartiteState(da, db, m);
}

std::string dump_kraus(const KrausMap& map) {
  json ops = json::array();
  for (const auto& k : map.kraus_ops()) ops.push_back(complex_object(k));
  return json{{"kraus", ops}}.dump(1) + "\n";
}

KrausMap parse_kraus(std::string_view text) {
  const json j = parse_json(text);
  if (!j.is_object() || !j.contains("kraus") || !j.at("kraus").is_array()) {
    throw Error(ErrorKind::InvalidArgument, "channel file needs a 'kraus' array");
  }
  std::vector<Matrix> ops;
  for (const auto& k : j.at("kraus")) ops.push_back(parse_complex(k));
  return KrausMap(std::move(ops));
}

QuantumChannel parse_channel(std::string_view text) { return QuantumChannel(parse_kraus(text)); }

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, fmt::format("cannot open '{}'", path.string()));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, fmt::format("cannot write '{}'", path.string()));
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error(ErrorKind::Io, fmt::format("write to '{}' failed", path.string()));
}

BipartiteState read_state_file(const std::filesystem::path& path) { return parse_state(read_text_file(path)); }

KrausMap read_kraus_file(const std::filesystem::path& path) { return parse_kraus(read_text_file(path)); }

QuantumChannel read_channel_file(const std::filesystem::path& path) {
  return parse_channel(read_text_file(path));
}

}  // namespace skewcorr
