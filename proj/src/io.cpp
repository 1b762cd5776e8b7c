#include "qhd/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "qhd/catalog.hpp"
#include "qhd/domains.hpp"

namespace qhd {

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorKind::kInvalidInput, what); }

double real(const Json& j, const std::string& what) {
  if (!j.is_number()) invalid(what + ": expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) invalid(what + ": non-finite value");
  return x;
}

Vec vector_from_json(const Json& j, const std::string& what) {
  if (!j.is_array() || j.empty()) invalid(what + ": expected a nonempty array");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = real(j[i], what);
  return v;
}

const Json& params_of(const Json& spec) {
  static const Json empty = Json::object();
  auto it = spec.find("params");
  return it == spec.end() ? empty : *it;
}

}  // namespace

Json read_json_arg(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\n");
  std::string text;
  if (first != std::string::npos && (arg[first] == '[' || arg[first] == '{')) {
    text = arg;
  } else {
    std::ifstream in(arg);
    if (!in) invalid("cannot read '" + arg + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    invalid("malformed JSON in '" + arg + "': " + e.what());
  }
}

std::string normalize_catalog_id(std::string id) {
  id.erase(std::remove_if(id.begin(), id.end(), [](char c) { return c == '(' || c == ')'; }),
           id.end());
  std::transform(id.begin(), id.end(), id.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return id;
}

ConvexDomain domain_from_json(const Json& spec) {
  if (!spec.is_object() || !spec.contains("type") || !spec["type"].is_string())
    invalid("domain spec needs a string \"type\"");
  const std::string type = spec["type"].get<std::string>();
  const Json& p = params_of(spec);

  if (type == "polytope") {
    if (!p.contains("covectors") || !p["covectors"].is_array() || p["covectors"].empty())
      invalid("polytope needs params.covectors");
    std::vector<Vec> hs;
    for (const Json& h : p["covectors"]) hs.push_back(vector_from_json(h, "covector"));
    for (const Vec& h : hs)
      if (h.size() != hs.front().size() || h.size() < 2) invalid("covector length mismatch");
    return polytope(hs, p.value("tag", std::string("polytope")));
  }
  if (type == "ball") {
    const Vec c = vector_from_json(p.value("center", Json()), "ball center");
    return ball(c, p.contains("radius") ? real(p["radius"], "ball radius") : 1.0);
  }
  if (type == "disk") return ball(Vec::Zero(2), 1.0);
  if (type == "orthant") {
    const int n = p.value("n", 2);
    if (n < 1) invalid("orthant dimension");
    return orthant(n);
  }
  if (type == "triangle") return projective_triangle();
  if (type == "affine_triangle") return affine_triangle();
  if (type == "parabola") return parabola();
  if (type == "slab") return slab();
  if (type == "quadratic") {
    const Vec base = vector_from_json(p.value("basepoint", Json()), "basepoint");
    const int n = static_cast<int>(base.size());
    if (!p.contains("constraints") || !p["constraints"].is_array())
      invalid("quadratic needs params.constraints");
    std::vector<Constraint> cs;
    for (const Json& c : p["constraints"]) {
      Mat q = c.contains("Q") ? matrix_from_json(c["Q"]) : Mat::Zero(n, n);
      const Vec b = c.contains("b") ? vector_from_json(c["b"], "b") : Vec::Zero(n);
      const double k = c.contains("c") ? real(c["c"], "c") : 0.0;
      if (q.rows() != n || q.cols() != n || b.size() != n) invalid("quadratic constraint shape");
      q = 0.5 * (q + q.transpose());
      if (Eigen::SelfAdjointEigenSolver<Mat>(q).eigenvalues().minCoeff() < -1e-12)
        invalid("quadratic constraint is not convex");
      cs.push_back({[q, b, k](const Vec& x) { return x.dot(q * x) + b.dot(x) + k; },
                    [q, b](const Vec& x) { return Vec(2.0 * q * x + b); }});
    }
    return constraint_domain(n, base, std::move(cs), p.value("tag", std::string("quadratic")));
  }
  if (type == "oracle-composite") {
    const std::string op = p.value("op", std::string());
    if (!p.contains("parts") || !p["parts"].is_array() || p["parts"].empty())
      invalid("oracle-composite needs params.parts");
    std::vector<ConvexDomain> parts;
    for (const Json& part : p["parts"]) parts.push_back(domain_from_json(part));
    if (op == "intersection") return intersection(parts, "intersection");
    if (op == "product") {
      ConvexDomain d = parts.front();
      for (std::size_t i = 1; i < parts.size(); ++i) d = product(d, parts[i], "product");
      return d;
    }
    invalid("oracle-composite op must be intersection or product");
  }
  const std::string id = normalize_catalog_id(type == "catalog" ? p.value("id", std::string()) : type);
  if (p.contains("base")) return catalog_placeholder(id, domain_from_json(p["base"])).domain;
  return catalog_get(id).domain;
}

Mat matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) invalid("matrix: expected an array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].size();
  Mat m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) invalid("matrix: ragged rows");
    for (std::size_t c = 0; c < cols; ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = real(j[r][c], "matrix entry");
  }
  return m;
}

ProjMap map_from_json(const Json& j, int n) {
  Mat m = matrix_from_json(j);
  if (m.rows() != m.cols()) invalid("matrix must be square");
  if (m.rows() == n) {
    Mat h = Mat::Identity(n + 1, n + 1);
    h.topLeftCorner(n, n) = m;
    m = h;
  }
  if (m.rows() != n + 1) invalid("matrix size does not match the domain dimension");
  return normalize(m);
}

GeneratorSet generators_from_json(const Json& j, int n) {
  std::vector<ProjMap> maps;
  std::vector<std::string> labels;
  const Json& list = j.is_object() ? j.value("generators", Json()) : j;
  if (!list.is_array() || list.empty()) invalid("generators: expected a nonempty list");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const Json& g = list[i];
    if (g.is_object()) {
      maps.push_back(map_from_json(g.value("matrix", Json()), n));
      labels.push_back(g.value("label", "g" + std::to_string(i + 1)));
    } else {
      maps.push_back(map_from_json(g, n));
      labels.push_back("g" + std::to_string(i + 1));
    }
    if (!maps.back().invertible()) invalid("generator " + labels.back() + " is singular");
  }
  return GeneratorSet::with_inverses(maps, labels);
}

Vec point_from_json(const Json& j, int n) {
  const Vec v = vector_from_json(j, "point");
  if (v.size() == n) return v;
  if (v.size() == n + 1) {
    const ProjPoint p(v);
    if (p.at_infinity()) invalid("point at infinity");
    return p.affine();
  }
  invalid("point has " + std::to_string(v.size()) + " coordinates, expected " +
          std::to_string(n) + " or " + std::to_string(n + 1));
}

double round9(double x) {
  if (!std::isfinite(x) || x == 0.0) return x == 0.0 ? 0.0 : x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return std::strtod(buf, nullptr);
}

Json num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return round9(x);
}

Json vec_json(const Vec& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(num(v(i)));
  return a;
}

Json mat_json(const Mat& m) {
  Json a = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) a.push_back(vec_json(m.row(r).transpose()));
  return a;
}

std::string fmt9(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x == 0.0 ? 0.0 : x);
  return buf;
}

}  // namespace qhd
