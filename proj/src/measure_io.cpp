#include "opschur/measure_io.hpp"

#include <fstream>

namespace opschur {

using nlohmann::json;

namespace {

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2)
    throw std::runtime_error("complex entry must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

json operator_to_json(const Operator& w) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < w.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < w.cols(); ++j) row.push_back(complex_to_json(w(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Operator operator_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw std::runtime_error("operator must be an array of rows");
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  const Eigen::Index cols = static_cast<Eigen::Index>(j[0].size());
  Operator w(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (static_cast<Eigen::Index>(j[i].size()) != cols)
      throw std::runtime_error("operator rows have inconsistent length");
    for (Eigen::Index c = 0; c < cols; ++c) w(i, c) = complex_from_json(j[i][c]);
  }
  return w;
}

json measure_to_json(const OpMeasure& mu) {
  json out;
  out["d"] = static_cast<int>(mu.dim());
  if (mu.is_discrete()) {
    out["type"] = "discrete";
    json atoms = json::array();
    const auto& rep = mu.as_discrete();
    for (std::size_t i = 0; i < rep.angles.size(); ++i)
      atoms.push_back({{"t", rep.angles[i]}, {"W", operator_to_json(rep.weights[i])}});
    out["atoms"] = std::move(atoms);
    return out;
  }
  if (mu.is_density()) {
    out["type"] = "density";
    json coeffs = json::object();
    for (const auto& [k, c] : mu.as_density().symbol.coeffs())
      coeffs[std::to_string(k)] = operator_to_json(c);
    out["coeffs"] = std::move(coeffs);
    return out;
  }
  const auto& rep = mu.as_lazy();
  if (rep.kind != "spectral")
    throw std::runtime_error("only lazy measures of kind 'spectral' are serializable");
  out["type"] = "lazy";
  out["kind"] = rep.kind;
  return out;
}

OpMeasure measure_from_json(const json& j) {
  const std::string type = j.at("type").get<std::string>();
  const Eigen::Index d = j.at("d").get<int>();
  if (type == "discrete") {
    std::vector<double> angles;
    std::vector<Operator> weights;
    for (const auto& atom : j.at("atoms")) {
      angles.push_back(atom.at("t").get<double>());
      Operator w = operator_from_json(atom.at("W"));
      if (w.rows() != d || w.cols() != d)
        throw std::runtime_error("atom weight dimension disagrees with d");
      weights.push_back(std::move(w));
    }
    return OpMeasure::discrete(d, std::move(angles), std::move(weights));
  }
  if (type == "density") {
    TrigPoly<Operator> symbol;
    for (const auto& [key, value] : j.at("coeffs").items()) {
      Operator c = operator_from_json(value);
      if (c.rows() != d || c.cols() != d)
        throw std::runtime_error("density coefficient dimension disagrees with d");
      symbol.set_coeff(std::stoi(key), std::move(c));
    }
    return OpMeasure::density(d, std::move(symbol));
  }
  if (type == "lazy") {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind != "spectral") throw std::runtime_error("unknown lazy measure kind: " + kind);
    return spectral_lazy_measure(d);
  }
  throw std::runtime_error("unknown measure type: " + type);
}

json matrix_to_json(const OpMatrix& a) {
  json blocks = json::array();
  for (Eigen::Index k = 0; k < a.rows(); ++k) {
    json row = json::array();
    for (Eigen::Index j = 0; j < a.cols(); ++j) row.push_back(operator_to_json(a.block(k, j)));
    blocks.push_back(std::move(row));
  }
  return {{"rows", static_cast<int>(a.rows())},
          {"cols", static_cast<int>(a.cols())},
          {"d", static_cast<int>(a.dim())},
          {"blocks", std::move(blocks)}};
}

OpMatrix matrix_from_json(const json& j) {
  const Eigen::Index rows = j.at("rows").get<int>();
  const Eigen::Index cols = j.at("cols").get<int>();
  const Eigen::Index d = j.at("d").get<int>();
  OpMatrix a(rows, cols, d);
  const auto& blocks = j.at("blocks");
  if (static_cast<Eigen::Index>(blocks.size()) != rows)
    throw std::runtime_error("blocks row count disagrees with rows");
  for (Eigen::Index k = 0; k < rows; ++k) {
    if (static_cast<Eigen::Index>(blocks[k].size()) != cols)
      throw std::runtime_error("blocks column count disagrees with cols");
    for (Eigen::Index c = 0; c < cols; ++c) {
      Operator w = operator_from_json(blocks[k][c]);
      if (w.rows() != d || w.cols() != d)
        throw std::runtime_error("block dimension disagrees with d");
      a.set_block(k, c, std::move(w));
    }
  }
  return a;
}

json toeplitz_spec_to_json(const ToeplitzSpec& spec) {
  return {{"measure", measure_to_json(spec.measure)}, {"N", spec.truncation}};
}

ToeplitzSpec toeplitz_spec_from_json(const json& j) {
  return {measure_from_json(j.at("measure")), j.at("N").get<int>()};
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  in >> j;
  return j;
}

}  // namespace opschur
