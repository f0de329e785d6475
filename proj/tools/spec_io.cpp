#include "spec_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace kgheun::cli {

using nlohmann::json;

namespace {

nlohmann::ordered_json pair(Complex v) { return nlohmann::ordered_json::array({v.real() + 0.0, v.imag() + 0.0}); }

Complex read_pair(const json& j, const char* key, Complex fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (v.is_number()) return v.get<double>();
  if (!v.is_array() || v.size() != 2) {
    throw Error(ErrorKind::config, std::string("spec field ") + key + " must be [re, im]");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

}  // namespace

Complex parse_complex(const std::string& text) {
  const auto comma = text.find(',');
  try {
    std::size_t used = 0;
    const double re = std::stod(text.substr(0, comma), &used);
    if (used != text.substr(0, comma).size()) throw std::invalid_argument(text);
    if (comma == std::string::npos) return re;
    const std::string rest = text.substr(comma + 1);
    const double im = std::stod(rest, &used);
    if (used != rest.size()) throw std::invalid_argument(text);
    return {re, im};
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::config, "cannot parse complex value '" + text + "' (expected re[,im])");
  }
}

std::string spec_to_json(const catalog::PotentialSpec& spec) {
  nlohmann::ordered_json j;
  j["family.m1_x2"] = spec.family.m1.twice();
  j["family.m2_x2"] = spec.family.m2.twice();
  j["V0"] = pair(spec.V0);
  j["V1"] = pair(spec.V1);
  j["V2"] = pair(spec.V2);
  j["x0"] = pair(spec.x0);
  j["sigma"] = pair(spec.sigma);
  return j.dump();
}

catalog::PotentialSpec spec_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::config, std::string("spec file is not valid JSON: ") + e.what());
  }
  if (!j.contains("family.m1_x2") || !j.contains("family.m2_x2")) {
    throw Error(ErrorKind::config, "spec needs family.m1_x2 and family.m2_x2");
  }
  try {
    const auto family = catalog::FamilyId::from_twice(j.at("family.m1_x2").get<int>(), j.at("family.m2_x2").get<int>());
    return catalog::PotentialSpec::make(family, read_pair(j, "V0", 0.0), read_pair(j, "V1", 0.0),
                                        read_pair(j, "V2", 0.0), read_pair(j, "x0", 0.0),
                                        read_pair(j, "sigma", 1.0));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::config, std::string("bad spec field: ") + e.what());
  }
}

catalog::PotentialSpec spec_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::config, "cannot open spec file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return spec_from_json(buf.str());
}

}  // namespace kgheun::cli
