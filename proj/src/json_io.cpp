#include "qent/json_io.hpp"

#include <fstream>
#include <string>

#include "qent/error.hpp"

namespace qent::io {

namespace {

void expect_kind(const json& j, const char* kind) {
  if (!j.is_object() || !j.contains("kind") || j.at("kind") != kind) {
    throw Error(ErrorKind::Parse, std::string("expected an object with \"kind\": \"") + kind + "\"");
  }
}

std::size_t positive_count(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_unsigned() || j.at(key).get<std::size_t>() == 0) {
    throw Error(ErrorKind::Parse, std::string("\"") + key + "\" must be a positive integer");
  }
  return j.at(key).get<std::size_t>();
}

// nlohmann's own exceptions become Parse errors so callers see one error type.
template <class Fn>
auto parse_guard(Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
}

}  // namespace

json matrix_to_json(const Matrix& m) {
  json entries = json::array();
  for (const auto& z : m.entries()) entries.push_back({z.real(), z.imag()});
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"re_im", std::move(entries)}};
}

Matrix matrix_from_json(const json& j) {
  return parse_guard([&] {
    if (!j.is_object()) throw Error(ErrorKind::Parse, "matrix must be an object");
    const std::size_t rows = positive_count(j, "rows");
    const std::size_t cols = positive_count(j, "cols");
    const json& entries = j.at("re_im");
    if (!entries.is_array() || entries.size() != rows * cols) {
      throw Error(ErrorKind::Parse, "re_im must hold rows*cols entries");
    }
    std::vector<Complex> data;
    data.reserve(entries.size());
    for (const auto& pair : entries) {
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
        throw Error(ErrorKind::Parse, "each re_im entry must be [re, im]");
      }
      data.emplace_back(pair[0].get<double>(), pair[1].get<double>());
    }
    return Matrix(rows, cols, std::move(data));
  });
}

json density_to_json(const DensityOperator& rho) {
  return {{"kind", "density"}, {"dim", rho.dim()}, {"matrix", matrix_to_json(rho.matrix())}};
}

DensityOperator density_from_json(const json& j) {
  expect_kind(j, "density");
  const std::size_t dim = parse_guard([&] { return positive_count(j, "dim"); });
  const Matrix m = parse_guard([&] { return matrix_from_json(j.at("matrix")); });
  if (m.rows() != dim || m.cols() != dim) throw Error(ErrorKind::Parse, "matrix shape does not match dim");
  return validate_density(m);
}

json compound_to_json(const CompoundState& w) {
  return {{"kind", "compound"}, {"dim_g", w.dim_g()}, {"dim_h", w.dim_h()}, {"matrix", matrix_to_json(w.matrix())}};
}

CompoundState compound_from_json(const json& j) {
  expect_kind(j, "compound");
  const std::size_t dg = parse_guard([&] { return positive_count(j, "dim_g"); });
  const std::size_t dh = parse_guard([&] { return positive_count(j, "dim_h"); });
  const Matrix m = parse_guard([&] { return matrix_from_json(j.at("matrix")); });
  if (m.rows() != dg * dh || m.cols() != dg * dh) {
    throw Error(ErrorKind::Parse, "matrix shape does not match dim_g * dim_h");
  }
  return CompoundState(validate_density(m), {dg, dh});
}

json channel_to_json(const KrausChannel& ch) {
  json ops = json::array();
  for (const auto& k : ch.kraus()) ops.push_back(matrix_to_json(k));
  return {{"kind", "kraus"}, {"dim_in", ch.dim_in()}, {"dim_out", ch.dim_out()}, {"kraus", std::move(ops)}};
}

KrausChannel channel_from_json(const json& j) {
  expect_kind(j, "kraus");
  const std::size_t din = parse_guard([&] { return positive_count(j, "dim_in"); });
  const std::size_t dout = parse_guard([&] { return positive_count(j, "dim_out"); });
  std::vector<Matrix> kraus = parse_guard([&] {
    const json& ops = j.at("kraus");
    if (!ops.is_array() || ops.empty()) throw Error(ErrorKind::Parse, "\"kraus\" must be a nonempty array");
    std::vector<Matrix> out;
    for (const auto& op : ops) {
      Matrix m = matrix_from_json(op);
      if (m.rows() != dout || m.cols() != din) throw Error(ErrorKind::Parse, "Kraus shape does not match dims");
      out.push_back(std::move(m));
    }
    return out;
  });
  return make_channel(std::move(kraus));
}

json ensemble_to_json(const Ensemble& e) {
  json items = json::array();
  for (const auto& item : e.items()) {
    items.push_back({{"weight", item.weight}, {"matrix", matrix_to_json(item.state.matrix())}});
  }
  return {{"kind", "ensemble"}, {"dim", e.dim()}, {"items", std::move(items)}};
}

Ensemble ensemble_from_json(const json& j) {
  expect_kind(j, "ensemble");
  const std::size_t dim = parse_guard([&] { return positive_count(j, "dim"); });
  struct Raw {
    double weight;
    Matrix m;
  };
  std::vector<Raw> raw = parse_guard([&] {
    const json& items = j.at("items");
    if (!items.is_array() || items.empty()) throw Error(ErrorKind::Parse, "\"items\" must be a nonempty array");
    std::vector<Raw> out;
    for (const auto& item : items) {
      Matrix m = matrix_from_json(item.at("matrix"));
      if (m.rows() != dim || m.cols() != dim) throw Error(ErrorKind::Parse, "item shape does not match dim");
      out.push_back({item.at("weight").get<double>(), std::move(m)});
    }
    return out;
  });
  std::vector<EnsembleItem> items;
  for (auto& r : raw) items.push_back({r.weight, validate_density(r.m)});
  return Ensemble(std::move(items));
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Parse, "cannot write " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw Error(ErrorKind::Parse, "write failed for " + path.string());
}

}  // namespace qent::io
