#include "logmink/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace logmink::io {
namespace {

[[noreturn]] void bad_field(const std::string& field, const std::string& what) {
  throw Error(ErrorKind::ParseError, "field '" + field + "': " + what);
}

const json& member(const json& j, const std::string& key, const std::string& ctx) {
  if (!j.is_object()) bad_field(ctx, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad_field(ctx.empty() ? key : ctx + "." + key, "missing");
  return *it;
}

double number(const json& j, const std::string& field) {
  if (!j.is_number()) bad_field(field, "expected a number, got " + std::string(j.type_name()));
  return j.get<double>();
}

Vec vector(const json& j, const std::string& field, int dim) {
  if (!j.is_array()) bad_field(field, "expected an array of numbers");
  if (dim >= 0 && static_cast<int>(j.size()) != dim) {
    bad_field(field, "expected " + std::to_string(dim) + " coordinates, got " + std::to_string(j.size()));
  }
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = number(j[i], field + "[" + std::to_string(i) + "]");
  return v;
}

int dimension(const json& j) {
  const json& d = member(j, "dim", "");
  if (!d.is_number_integer() || d.get<int>() < 1) bad_field("dim", "expected a positive integer");
  return d.get<int>();
}

json vec_json(const Vec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

json mat_json(const Mat& m) {
  json cols = json::array();
  for (Eigen::Index c = 0; c < m.cols(); ++c) cols.push_back(vec_json(m.col(c)));
  return cols;
}

// Library errors raised while building objects from well-formed JSON are
// reported as parse errors naming the object.
template <class F>
auto wrap(const char* what, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError) throw;
    throw Error(ErrorKind::ParseError, std::string("invalid ") + what + ": " + e.what());
  }
}

}  // namespace

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
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
    throw Error(ErrorKind::ParseError,
                path + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON (" + e.what() + ")");
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidInput, "cannot write '" + path + "'");
  out << text;
}

HPolytope polytope_from_json(const json& j) {
  if (!j.is_object()) bad_field("<root>", "expected an object");
  if (j.contains("vertices")) {
    const json& vs = j["vertices"];
    if (!vs.is_array() || vs.empty()) bad_field("vertices", "expected a nonempty array of points");
    const int dim = j.contains("dim") ? dimension(j) : static_cast<int>(vs[0].size());
    std::vector<Vec> pts;
    for (std::size_t i = 0; i < vs.size(); ++i) pts.push_back(vector(vs[i], "vertices[" + std::to_string(i) + "]", dim));
    return wrap("polytope", [&] { return polytope_from_vertices(dim, pts); });
  }
  const int dim = dimension(j);
  const json& ns = member(j, "normals", "");
  const json& hs = member(j, "supports", "");
  if (!ns.is_array()) bad_field("normals", "expected an array");
  if (!hs.is_array()) bad_field("supports", "expected an array");
  if (ns.size() != hs.size()) bad_field("supports", "length differs from normals");
  std::vector<UnitVector> normals;
  std::vector<double> h;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const std::string f = "normals[" + std::to_string(i) + "]";
    const Vec v = vector(ns[i], f, dim);
    if (std::abs(v.norm() - 1.0) > 1e-12) bad_field(f, "not a unit vector");
    normals.emplace_back(v);
    h.push_back(number(hs[i], "supports[" + std::to_string(i) + "]"));
  }
  return wrap("polytope", [&] { return HPolytope(dim, std::move(normals), std::move(h)); });
}

json to_json(const HPolytope& p) {
  json ns = json::array();
  for (std::size_t i = 0; i < p.size(); ++i) ns.push_back(vec_json(p.normal(i)));
  return {{"dim", p.dim()}, {"normals", ns}, {"supports", p.supports()}};
}

DiscreteSphericalMeasure measure_from_json(const json& j) {
  const int dim = dimension(j);
  const json& as = member(j, "atoms", "");
  if (!as.is_array()) bad_field("atoms", "expected an array");
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < as.size(); ++i) {
    const std::string f = "atoms[" + std::to_string(i) + "]";
    const Vec u = vector(member(as[i], "u", f), f + ".u", dim);
    const double w = number(member(as[i], "w", f), f + ".w");
    if (!(w > 0.0)) bad_field(f + ".w", "weight must be positive");
    if (std::abs(u.norm() - 1.0) > 1e-9) bad_field(f + ".u", "not a unit vector");
    atoms.push_back({u, w});
  }
  return wrap("measure", [&] { return DiscreteSphericalMeasure(dim, std::move(atoms)); });
}

json to_json(const DiscreteSphericalMeasure& mu) {
  json as = json::array();
  for (const Atom& a : mu.atoms()) as.push_back({{"u", vec_json(a.u)}, {"w", a.w}});
  return {{"dim", mu.dim()}, {"atoms", as}};
}

ReflectionGroup group_from_json(const json& j, std::size_t order_cap) {
  const int dim = dimension(j);
  const json& gs = member(j, "generator_normals", "");
  if (!gs.is_array() || gs.empty()) bad_field("generator_normals", "expected a nonempty array");
  std::vector<UnitVector> normals;
  for (std::size_t i = 0; i < gs.size(); ++i) {
    const std::string f = "generator_normals[" + std::to_string(i) + "]";
    const Vec v = vector(gs[i], f, dim);
    if (!(v.norm() > 0.0)) bad_field(f, "zero vector");
    normals.push_back(UnitVector::normalize(v));
  }
  // Group-theoretic failures (order cap, degenerate mirrors) are math errors,
  // not parse errors, so they propagate unchanged.
  return generate_group(normals, order_cap);
}

json group_to_json(const ReflectionGroup& g) {
  json gs = json::array();
  for (const UnitVector& u : g.generators) gs.push_back(vec_json(u.coords()));
  return {{"dim", g.dim}, {"generator_normals", gs}};
}

json to_json(const SCCReport& r) {
  json recs = json::array();
  for (const SubspaceRecord& s : r.records) {
    recs.push_back({{"dim", s.dim},
                    {"basis", mat_json(s.basis)},
                    {"components", s.components},
                    {"mass", s.mass},
                    {"threshold", s.threshold},
                    {"slack", s.slack},
                    {"split_support", s.split_support}});
  }
  json out = {{"verdict", std::string(to_string(r.verdict))},
              {"irrelevant", r.irrelevant},
              {"total_mass", r.total_mass},
              {"records", recs}};
  out["witness"] = r.witness ? json(*r.witness) : json(nullptr);
  return out;
}

json to_json(const StabilityConstants& k) {
  return {{"branch", std::string(to_string(k.branch))},
          {"n", k.n},
          {"delta", k.delta},
          {"tau", k.tau},
          {"c", k.c},
          {"R0", k.R0},
          {"r0", k.r0},
          {"gamma0", k.gamma0}};
}

namespace {

json radii_json(const RadiiCheck& r) {
  return {{"constants", to_json(r.constants)}, {"min_h", r.min_h}, {"max_h", r.max_h}, {"pass", r.pass}};
}

}  // namespace

json to_json(const SolveReport& r) {
  json out = {{"body", to_json(r.body)},
              {"residual", r.residual},
              {"iterations", r.iterations},
              {"objective_trace", r.objective_trace},
              {"invariance_defect", r.invariance_defect},
              {"dropped_facets", r.dropped_facets}};
  out["radii_check"] = r.radii_check ? radii_json(*r.radii_check) : json(nullptr);
  if (r.degenerate_subspace) {
    out["degenerate_subspace"] = {{"dim", r.degenerate_subspace->dim},
                                  {"basis", mat_json(r.degenerate_subspace->basis)}};
  } else {
    out["degenerate_subspace"] = nullptr;
  }
  return out;
}

json to_json(const VerificationRecord& r) {
  return {{"volume", r.volume},
          {"residual", r.residual},
          {"radii", radii_json(r.radii)},
          {"circumradius", r.circumradius},
          {"lemma_bounds", r.lemma_bounds}};
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace logmink::io
