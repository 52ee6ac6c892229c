#include "gospa/documents.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace gospa {

namespace {

using nlohmann::json;

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

double as_number(const json& value, const std::string& where) {
  if (!value.is_number()) throw ParseError(where + ": expected a number");
  const double v = value.get<double>();
  if (!std::isfinite(v)) throw ParseError(where + ": non-finite value");
  return v;
}

std::vector<double> as_vector(const json& value, const std::string& where) {
  if (!value.is_array()) throw ParseError(where + ": expected an array");
  std::vector<double> out;
  out.reserve(value.size());
  for (std::size_t i = 0; i < value.size(); ++i) out.push_back(as_number(value[i], where));
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

TargetSet parse_point_set_json(std::string_view text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) throw ParseError("point set: expected a JSON object");
  if (!doc.contains("dimension")) throw ParseError("point set: missing 'dimension'");
  if (!doc.contains("points")) throw ParseError("point set: missing 'points'");
  const json& dim_field = doc["dimension"];
  if (!dim_field.is_number_integer() || dim_field.get<long long>() < 1) {
    throw ParseError("point set: 'dimension' must be a positive integer");
  }
  const auto dimension = dim_field.get<std::size_t>();
  const json& points = doc["points"];
  if (!points.is_array()) throw ParseError("point set: 'points' must be an array");

  TargetSet set(dimension);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const std::string where = "point set: points[" + std::to_string(i) + "]";
    const auto coords = as_vector(points[i], where);
    if (coords.size() != dimension) {
      throw ParseError(where + ": has " + std::to_string(coords.size()) + " coordinates, expected " +
                       std::to_string(dimension));
    }
    set.add(coords);
  }
  return set;
}

TargetSet parse_point_set_csv(std::string_view text) {
  TargetSet set;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = trim(text.substr(0, eol));
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (line.empty() || line.front() == '#') continue;

    std::vector<double> coords;
    while (true) {
      const auto comma = line.find(',');
      const std::string_view field = trim(line.substr(0, comma));
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
      if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size() || !std::isfinite(v)) {
        throw ParseError("point set CSV line " + std::to_string(line_no) + ": bad number '" + std::string(field) +
                         "'");
      }
      coords.push_back(v);
      if (comma == std::string_view::npos) break;
      line = line.substr(comma + 1);
    }
    if (!set.empty() && coords.size() != set.dimension()) {
      throw ParseError("point set CSV line " + std::to_string(line_no) + ": inconsistent dimension");
    }
    set.add(coords);
  }
  return set;
}

std::string write_point_set_json(const TargetSet& set) {
  json doc;
  doc["dimension"] = set.dimension();
  doc["points"] = json::array();
  for (const auto& pt : set.points()) doc["points"].push_back(pt);
  return doc.dump();
}

TargetSet load_point_set(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  try {
    if (path.extension() == ".csv") return parse_point_set_csv(text);
    return parse_point_set_json(text);
  } catch (const InvalidInput& e) {
    throw ParseError(path.string() + ": " + e.what());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

MultiBernoulli parse_multi_bernoulli_json(std::string_view text) {
  const json doc = parse_json(text);
  if (!doc.is_object() || !doc.contains("components") || !doc["components"].is_array()) {
    throw ParseError("model: expected an object with a 'components' array");
  }
  std::vector<BernoulliComponent> components;
  const json& list = doc["components"];
  for (std::size_t k = 0; k < list.size(); ++k) {
    const std::string where = "model: components[" + std::to_string(k) + "]";
    const json& item = list[k];
    if (!item.is_object()) throw ParseError(where + ": expected an object");
    for (const char* key : {"existence", "mean", "covariance"})
      if (!item.contains(key)) throw ParseError(where + ": missing '" + key + "'");
    BernoulliComponent comp;
    comp.existence = as_number(item["existence"], where + ".existence");
    comp.mean = as_vector(item["mean"], where + ".mean");
    const json& cov = item["covariance"];
    if (!cov.is_array()) throw ParseError(where + ".covariance: expected an array of rows");
    for (const auto& row : cov) comp.covariance.push_back(as_vector(row, where + ".covariance"));
    components.push_back(std::move(comp));
  }
  if (doc.contains("dimension")) {
    const json& dim = doc["dimension"];
    if (!dim.is_number_integer()) throw ParseError("model: 'dimension' must be an integer");
    for (const auto& comp : components)
      if (comp.mean.size() != dim.get<std::size_t>()) throw ParseError("model: component dimension mismatch");
  }
  try {
    return MultiBernoulli(std::move(components));
  } catch (const InvalidInput& e) {
    throw ParseError(e.what());
  }
}

std::string write_multi_bernoulli_json(const MultiBernoulli& model) {
  json doc;
  doc["components"] = json::array();
  for (const auto& comp : model.components()) {
    doc["components"].push_back({{"existence", comp.existence}, {"mean", comp.mean}, {"covariance", comp.covariance}});
  }
  return doc.dump();
}

MultiBernoulli load_multi_bernoulli(const std::filesystem::path& path) {
  try {
    return parse_multi_bernoulli_json(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

}  // namespace gospa
