#include "coversys/io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace coversys {

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

std::string format_rational(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

namespace {

void dump_into(const Json& j, int depth, std::string& out) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(2 * depth), ' ');
  if (j.is_number_float()) {
    const double x = j.get<double>();
    out += std::isfinite(x) ? format_double(x) : "null";
  } else if (j.is_array()) {
    if (j.empty()) {
      out += "[]";
      return;
    }
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      out += pad;
      dump_into(j[i], depth + 1, out);
      out += i + 1 < j.size() ? ",\n" : "\n";
    }
    out += close + "]";
  } else if (j.is_object()) {
    if (j.empty()) {
      out += "{}";
      return;
    }
    out += "{\n";
    std::size_t i = 0;
    for (const auto& [key, value] : j.items()) {
      out += pad + Json(key).dump() + ": ";
      dump_into(value, depth + 1, out);
      out += ++i < j.size() ? ",\n" : "\n";
    }
    out += close + "}";
  } else {
    out += j.dump();
  }
}

}  // namespace

std::string dump_json(const Json& j) {
  std::string out;
  dump_into(j, 0, out);
  return out;
}

Json to_json(const FactoredModulus& n) {
  Json j = Json::object();
  for (const auto& [p, g] : n.factors()) j[std::to_string(p)] = g;
  return j;
}

FactoredModulus factored_from_json(const Json& j, const std::string& where) {
  try {
    if (j.is_number_unsigned()) return FactoredModulus::from_integer(j.get<std::uint64_t>());
    if (j.is_string()) return FactoredModulus::parse(j.get<std::string>());
    if (j.is_object()) {
      FactoredModulus::FactorMap f;
      for (const auto& [key, value] : j.items()) {
        if (!value.is_number_unsigned()) throw InputError("exponent must be a non-negative integer");
        const auto g = value.get<std::uint32_t>();
        if (g > 0) f[std::stoull(key)] = g;
      }
      return FactoredModulus(std::move(f));
    }
  } catch (const InputError& e) {
    throw InputError(where + ": " + e.what());
  } catch (const std::exception& e) {
    throw InputError(where + ": bad modulus: " + e.what());
  }
  throw InputError(where + ": modulus must be an object, integer or string");
}

Json to_json(const Hyperplane& h) {
  Json j = Json::array();
  for (std::size_t i = 0; i < h.dim(); ++i) {
    if (h.is_free(i)) {
      j.push_back("*");
    } else {
      j.push_back(h.value(i));
    }
  }
  return j;
}

Hyperplane hyperplane_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": plane must be an array");
  std::vector<std::uint32_t> c;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const Json& v = j[i];
    if (v.is_string() && v.get<std::string>() == "*") {
      c.push_back(Hyperplane::kFree);
    } else if (v.is_number_unsigned() && v.get<std::uint64_t>() < Hyperplane::kFree) {
      c.push_back(v.get<std::uint32_t>());
    } else {
      throw InputError(where + "[" + std::to_string(i) + "]: expected a value or \"*\"");
    }
  }
  return Hyperplane(std::move(c));
}

Json to_json(const Progression& p) {
  Json j;
  j["a"] = p.residue();
  j["d"] = to_json(p.modulus());
  return j;
}

Progression progression_from_json(const Json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("a") || !j.contains("d")) {
    throw InputError(where + ": progression needs fields \"a\" and \"d\"");
  }
  const FactoredModulus d = factored_from_json(j["d"], where + ".d");
  const Json& a = j["a"];
  if (!a.is_number_integer()) throw InputError(where + ".a: residue must be an integer");
  const auto mod = d.value();
  if (!mod) throw InputError(where + ".d: modulus too large");
  std::uint64_t r = 0;
  if (a.is_number_unsigned()) {
    r = a.get<std::uint64_t>() % *mod;
  } else {
    const auto v = a.get<std::int64_t>();
    const auto m = static_cast<std::int64_t>(*mod);
    r = static_cast<std::uint64_t>(((v % m) + m) % m);
  }
  return Progression(r, d);
}

Json to_json(CoordSet s) {
  Json j = Json::array();
  for (std::size_t i : s.elements()) j.push_back(i);
  return j;
}

Json point_json(const Point& x) {
  Json j = Json::array();
  for (std::uint32_t v : x) j.push_back(v);
  return j;
}

Json to_json(const CoverSystem& c) {
  Json j;
  if (c.is_integer_view()) {
    j["progressions"] = Json::array();
    for (const Progression& p : c.progressions()) j["progressions"].push_back(to_json(p));
    return j;
  }
  j["space"] = Json::array();
  for (std::uint32_t s : c.space().sizes()) j["space"].push_back(s);
  j["planes"] = Json::array();
  for (const Hyperplane& h : c.planes()) j["planes"].push_back(to_json(h));
  return j;
}

CoverSystem system_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("$: system must be an object");
  const bool prog = j.contains("progressions");
  const bool geo = j.contains("space") || j.contains("planes");
  if (prog == geo) {
    throw InputError("$: exactly one of \"progressions\" or \"space\"/\"planes\" is required");
  }
  try {
    if (prog) {
      const Json& arr = j["progressions"];
      if (!arr.is_array()) throw InputError("$.progressions: expected an array");
      std::vector<Progression> ps;
      for (std::size_t i = 0; i < arr.size(); ++i) {
        ps.push_back(progression_from_json(arr[i], "$.progressions[" + std::to_string(i) + "]"));
      }
      if (ps.empty()) throw InputError("$.progressions: empty system");
      return CoverSystem::from_progressions(ps);
    }
    if (!j.contains("space") || !j["space"].is_array()) {
      throw InputError("$.space: expected an array of sizes");
    }
    if (!j.contains("planes") || !j["planes"].is_array()) {
      throw InputError("$.planes: expected an array of planes");
    }
    std::vector<std::uint32_t> sizes;
    for (std::size_t i = 0; i < j["space"].size(); ++i) {
      const Json& v = j["space"][i];
      if (!v.is_number_unsigned() || v.get<std::uint64_t>() == 0 ||
          v.get<std::uint64_t>() >= Hyperplane::kFree) {
        throw InputError("$.space[" + std::to_string(i) + "]: expected a positive size");
      }
      sizes.push_back(v.get<std::uint32_t>());
    }
    std::vector<Hyperplane> planes;
    for (std::size_t i = 0; i < j["planes"].size(); ++i) {
      const std::string where = "$.planes[" + std::to_string(i) + "]";
      Hyperplane h = hyperplane_from_json(j["planes"][i], where);
      if (h.dim() != sizes.size()) throw InputError(where + ": wrong number of coordinates");
      for (std::size_t c = 0; c < sizes.size(); ++c) {
        if (h.is_fixed(c) && h.value(c) >= sizes[c]) {
          throw InputError(where + "[" + std::to_string(c) + "]: value out of range");
        }
      }
      planes.push_back(std::move(h));
    }
    return CoverSystem(ProductSpace(std::move(sizes)), std::move(planes));
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    throw InputError(std::string("$: ") + e.what());
  }
}

Json parse_json(std::istream& in, const std::string& source) {
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw InputError(source + ":" + std::to_string(line) + ":" + std::to_string(col) +
                     ": parse error");
  }
}

CoverSystem read_system(std::istream& in, const std::string& source) {
  const Json j = parse_json(in, source);
  try {
    return system_from_json(j);
  } catch (const InputError& e) {
    throw InputError(source + ": " + e.what());
  }
}

Json to_json(const ExplorationTree& t) {
  Json j;
  j["space"] = Json::array();
  for (std::uint32_t s : t.space.sizes()) j["space"].push_back(s);
  j["planes"] = Json::array();
  for (const Hyperplane& h : t.planes) j["planes"].push_back(to_json(h));
  j["params"] = {{"C", t.params.C},
                 {"epsilon", t.params.epsilon},
                 {"lambda", t.params.lambda},
                 {"log_delta", t.params.log_delta},
                 {"strict", t.params.strict}};
  j["vertices"] = Json::array();
  for (std::size_t u = 0; u < t.nodes.size(); ++u) {
    const ExplorationNode& n = t.nodes[u];
    Json v;
    v["id"] = u;
    v["parent"] = n.parent ? Json(*n.parent) : Json(nullptr);
    v["s"] = n.s ? Json(*n.s) : Json(nullptr);
    v["I"] = to_json(n.I);
    v["i"] = n.i;
    v["verdict"] = to_string(n.verdict);
    v["case"] = n.case_number;
    v["planes"] = n.planes;
    v["children"] = n.children;
    v["F"] = n.frame.size();
    v["G"] = n.garbage.size();
    j["vertices"].push_back(v);
  }
  return j;
}

Json to_json(const TreeFrame& f) {
  Json j;
  j["vertices"] = f.vertices;
  j["beta"] = f.beta;
  j["order"] = f.pi;
  j["J"] = Json::array();
  j["I"] = Json::array();
  j["anchors"] = Json::array();
  for (std::size_t i = 0; i < f.beta.size(); ++i) {
    j["J"].push_back(to_json(f.J[i]));
    j["I"].push_back(to_json(f.I[i]));
    Json a = Json::object();
    for (std::size_t c = 0; c < f.anchors[i].size(); ++c) {
      if (f.anchors[i][c]) a[std::to_string(c)] = *f.anchors[i][c];
    }
    j["anchors"].push_back(a);
  }
  j["layers"] = f.layers;
  j["garbage"] = f.garbage;
  j["bad"] = to_json(f.bad);
  return j;
}

Json to_json(const GeneralizedFrameReport& r) {
  Json j;
  j["valid"] = r.valid;
  if (!r.valid) j["violation"] = r.violation;
  j["order"] = r.order;
  j["free_sets"] = Json::array();
  for (CoordSet s : r.free_sets) j["free_sets"].push_back(to_json(s));
  j["strong_disjointness"] = r.strong_disjointness;
  return j;
}

Json to_json(const CensusRecord& r) {
  Json j;
  j["n"] = r.n;
  j["total"] = r.total;
  j["contains_Z"] = r.contains_Z;
  j["by_lcm"] = Json::array();
  for (const auto& [lcm, count] : r.by_lcm) {
    j["by_lcm"].push_back({{"N", lcm.to_string()}, {"count", count}});
  }
  if (!r.systems.empty()) {
    j["systems"] = Json::array();
    for (const CensusSystem& sys : r.systems) {
      Json s = Json::array();
      for (const Progression& p : sys) s.push_back(to_json(p));
      j["systems"].push_back(s);
    }
  }
  return j;
}

}  // namespace coversys
