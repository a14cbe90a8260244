#include "rumin/chain_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "rumin/errors.hpp"

namespace rumin {

using json = nlohmann::json;

namespace {

Rational rational_field(const json& v, const std::string& where) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const std::exception& e) {
      throw ChainFormatError(where + ": not a rational literal: " + v.get<std::string>());
    }
  }
  throw ChainFormatError(where + ": expected a \"p/q\" string, got " + v.dump());
}

const json& field(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ChainFormatError(std::string("missing field \"") + key + "\"");
  return *it;
}

int int_field(const json& obj, const char* key) {
  const json& v = field(obj, key);
  if (!v.is_number_integer()) throw ChainFormatError(std::string("field \"") + key + "\" must be an integer");
  return v.get<int>();
}

}  // namespace

SimplicialCurrent chain_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ChainFormatError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ChainFormatError("chain file must be a JSON object");
  const json& version = field(doc, "version");
  if (!version.is_string() || version.get<std::string>() != kChainFormatVersion)
    throw ChainFormatError("unsupported chain format version " + version.dump() + " (expected \"" +
                           kChainFormatVersion + "\")");
  const int n = int_field(doc, "n");
  if (n < 1) throw ChainFormatError("n must be >= 1");
  const HeisParams h(n);
  const int degree = int_field(doc, "degree");
  if (degree < 0 || degree > h.dim()) throw ChainFormatError("degree out of range for n = " + std::to_string(n));
  int order = 5;
  if (doc.contains("quadrature_order")) order = int_field(doc, "quadrature_order");
  if (order < 1) throw ChainFormatError("quadrature_order must be >= 1");

  const json& vs = field(doc, "vertices");
  if (!vs.is_array()) throw ChainFormatError("\"vertices\" must be an array");
  std::vector<Point<Rational>> vertices;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const std::string where = "vertex " + std::to_string(i);
    if (!vs[i].is_array() || static_cast<int>(vs[i].size()) != h.dim())
      throw ChainFormatError(where + ": expected " + std::to_string(h.dim()) + " coordinates");
    std::vector<Rational> c;
    for (const auto& x : vs[i]) c.push_back(rational_field(x, where));
    vertices.emplace_back(h, std::move(c));
  }

  const json& ss = field(doc, "simplices");
  if (!ss.is_array()) throw ChainFormatError("\"simplices\" must be an array");
  SimplicialCurrent T(h, degree);
  for (std::size_t i = 0; i < ss.size(); ++i) {
    const std::string where = "simplex " + std::to_string(i);
    const json& idx = field(ss[i], "vertices");
    if (!idx.is_array() || static_cast<int>(idx.size()) != degree + 1)
      throw ChainFormatError(where + ": expected " + std::to_string(degree + 1) + " vertex indices");
    Simplex s;
    s.quadrature_order = order;
    for (const auto& j : idx) {
      if (!j.is_number_integer()) throw ChainFormatError(where + ": vertex index must be an integer");
      const long long k = j.get<long long>();
      if (k < 0 || k >= static_cast<long long>(vertices.size()))
        throw ChainFormatError(where + ": vertex index " + std::to_string(k) + " out of range (" +
                               std::to_string(vertices.size()) + " vertices)");
      s.vertices.push_back(vertices[static_cast<std::size_t>(k)]);
    }
    s.multiplicity = ss[i].contains("multiplicity") ? rational_field(ss[i]["multiplicity"], where) : Rational(1);
    if (sgn(s.multiplicity) == 0) throw ChainFormatError(where + ": zero multiplicity");
    try {
      T.add(std::move(s));
    } catch (const ParameterError& e) {
      throw ChainFormatError(where + ": " + e.what());
    }
  }
  return T;
}

SimplicialCurrent load_chain(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ChainFormatError("cannot open chain file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return chain_from_json(buf.str());
}

std::string chain_to_json(const SimplicialCurrent& T) {
  json doc;
  doc["version"] = kChainFormatVersion;
  doc["n"] = T.params().n();
  doc["degree"] = T.degree();
  std::map<Point<Rational>, std::size_t> index;
  json vertices = json::array(), simplices = json::array();
  int order = 0;
  for (const auto& s : T.simplices()) {
    json idx = json::array();
    for (const auto& v : s.vertices) {
      auto [it, inserted] = index.try_emplace(v, index.size());
      if (inserted) {
        json c = json::array();
        for (const auto& x : v.coords()) c.push_back(to_string(x));
        vertices.push_back(std::move(c));
      }
      idx.push_back(it->second);
    }
    simplices.push_back({{"vertices", idx}, {"multiplicity", to_string(s.multiplicity)}});
    order = std::max(order, s.quadrature_order);
  }
  doc["vertices"] = std::move(vertices);
  doc["simplices"] = std::move(simplices);
  if (order > 0) doc["quadrature_order"] = order;
  return doc.dump(2);
}

void save_chain(const std::string& path, const SimplicialCurrent& T) {
  std::ofstream out(path);
  if (!out) throw ChainFormatError("cannot write chain file " + path);
  out << chain_to_json(T) << '\n';
}

}  // namespace rumin
