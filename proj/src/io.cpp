// SPDX-License-Identifier: Apache-2.0
#include "cuntz/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "cuntz/error.hpp"

namespace cuntz {

namespace {

const json& member(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw SchemaError(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(where + "/" + key, "missing");
  return *it;
}

double number(const json& j, const std::string& where) {
  if (j.is_string() && j.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
  if (!j.is_number()) throw SchemaError(where, "expected a number");
  return j.get<double>();
}

int integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw SchemaError(where, "expected an integer");
  return j.get<int>();
}

std::vector<double> numbers(const json& j, const std::string& where) {
  if (!j.is_array()) throw SchemaError(where, "expected an array");
  std::vector<double> v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(number(j[i], where + "/" + std::to_string(i)));
  return v;
}

json real(double v) {
  if (std::isinf(v)) return v > 0 ? json("inf") : json("-inf");
  return v;
}

json ext(ExtNat v) { return v.is_inf() ? json("inf") : json(v.value()); }

ExtNat ext_from(const json& j, const std::string& where) {
  if (j.is_string() && j.get<std::string>() == "inf") return ExtNat::inf();
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    throw SchemaError(where, "expected a non-negative integer or \"inf\"");
  return ExtNat(j.get<std::uint64_t>());
}

std::vector<ExtNat> ext_list(const json& j, const std::string& where) {
  if (!j.is_array()) throw SchemaError(where, "expected an array");
  std::vector<ExtNat> v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(ext_from(j[i], where + "/" + std::to_string(i)));
  return v;
}

}  // namespace

json to_json(const Matrix& m) {
  json re = json::array(), im = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json r = json::array(), c = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      r.push_back(m(i, k).real());
      c.push_back(m(i, k).imag());
    }
    re.push_back(r);
    im.push_back(c);
  }
  return {{"n", m.rows()}, {"re", re}, {"im", im}};
}

Matrix matrix_from_json(const json& j, const std::string& where) {
  const int n = integer(member(j, "n", where), where + "/n");
  if (n < 1) throw SchemaError(where + "/n", "must be >= 1");
  const json& re = member(j, "re", where);
  const json* im = j.contains("im") ? &j.at("im") : nullptr;
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) {
    const std::string row = "/" + std::to_string(i);
    if (!re.is_array() || int(re.size()) != n || !re[std::size_t(i)].is_array() || int(re[std::size_t(i)].size()) != n)
      throw SchemaError(where + "/re" + row, "expected " + std::to_string(n) + " rows of length " + std::to_string(n));
    if (im && (!im->is_array() || int(im->size()) != n || int((*im)[std::size_t(i)].size()) != n))
      throw SchemaError(where + "/im" + row, "expected " + std::to_string(n) + " rows of length " + std::to_string(n));
    for (int k = 0; k < n; ++k) {
      const std::string cell = row + "/" + std::to_string(k);
      const double a = number(re[std::size_t(i)][std::size_t(k)], where + "/re" + cell);
      const double b = im ? number((*im)[std::size_t(i)][std::size_t(k)], where + "/im" + cell) : 0.0;
      m(i, k) = {a, b};
    }
  }
  return m;
}

json to_json(const PiecewiseLinear<double>& f) { return {{"breaks", f.breaks()}, {"vals", f.vals()}}; }

PiecewiseLinear<double> piecewise_linear_from_json(const json& j, const std::string& where) {
  try {
    return PiecewiseLinear<double>(numbers(member(j, "breaks", where), where + "/breaks"),
                                   numbers(member(j, "vals", where), where + "/vals"));
  } catch (const SchemaError&) {
    throw;
  } catch (const InvalidInput& e) {
    throw SchemaError(where, e.what());
  }
}

json to_json(const LscStepFunction& f) {
  json vals = json::array(), at = json::array();
  for (auto v : f.pieces()) vals.push_back(ext(v));
  for (auto v : f.at()) at.push_back(ext(v));
  return {{"breaks", f.breaks()}, {"vals", vals}, {"at", at}};
}

LscStepFunction step_function_from_json(const json& j, const std::string& where) {
  std::vector<ExtNat> at;
  if (j.contains("at")) at = ext_list(j.at("at"), where + "/at");
  try {
    return LscStepFunction(numbers(member(j, "breaks", where), where + "/breaks"),
                           ext_list(member(j, "vals", where), where + "/vals"), at);
  } catch (const SchemaError&) {
    throw;
  } catch (const InvalidInput& e) {
    throw SchemaError(where, e.what());
  }
}

json to_json(const BaseSpace& s) {
  json j{{"kind", to_string(s.kind())},
         {"resolution", s.resolution()},
         {"dimension", s.dimension()},
         {"h2_trivial", s.h2_trivial()}};
  if (s.kind() == SpaceKind::Product) {
    j["base"] = to_json(*s.base());
    j["t_samples"] = s.t_samples();
  }
  json pts = json::array();
  for (const auto& p : s.points()) pts.push_back({p.coords(0), p.coords(1), p.coords(2), p.coords(3)});
  j["points"] = pts;
  return j;
}

SpacePtr space_from_json(const json& j, const std::string& where) {
  const json& k = member(j, "kind", where);
  if (!k.is_string()) throw SchemaError(where + "/kind", "expected a string");
  SpaceKind kind;
  try {
    kind = space_kind_from_string(k.get<std::string>());
  } catch (const InvalidInput& e) {
    throw SchemaError(where + "/kind", e.what());
  }
  BaseSpace s;
  try {
    switch (kind) {
      case SpaceKind::Point: s = BaseSpace::point(); break;
      case SpaceKind::Interval: s = BaseSpace::interval(integer(member(j, "resolution", where), where + "/resolution")); break;
      case SpaceKind::Circle: s = BaseSpace::circle(integer(member(j, "resolution", where), where + "/resolution")); break;
      case SpaceKind::Sphere: s = BaseSpace::sphere(integer(member(j, "resolution", where), where + "/resolution")); break;
      case SpaceKind::Product:
        s = BaseSpace::product(*space_from_json(member(j, "base", where), where + "/base"),
                               numbers(member(j, "t_samples", where), where + "/t_samples"));
        break;
    }
  } catch (const SchemaError&) {
    throw;
  } catch (const InvalidInput& e) {
    throw SchemaError(where, e.what());
  }
  if (j.contains("points")) {
    const json& pts = j.at("points");
    if (!pts.is_array() || int(pts.size()) != s.size())
      throw SchemaError(where + "/points", "expected " + std::to_string(s.size()) + " points");
    for (int i = 0; i < s.size(); ++i) {
      const auto c = numbers(pts[std::size_t(i)], where + "/points/" + std::to_string(i));
      for (std::size_t d = 0; d < c.size() && d < 4; ++d)
        if (std::abs(c[d] - s.point(i).coords(Eigen::Index(d))) > 1e-9)
          throw SchemaError(where + "/points/" + std::to_string(i), "coordinates disagree with the regenerated mesh");
    }
  }
  return make_space(std::move(s));
}

json to_json(const MatrixField& f) {
  json samples = json::array();
  for (int i = 0; i < f.size(); ++i) samples.push_back({{"point", i}, {"matrix", to_json(f.sample(i).matrix())}});
  return {{"space", to_json(f.space())}, {"n", f.n()}, {"samples", samples}};
}

MatrixField field_from_json(const json& j) {
  SpacePtr space = space_from_json(member(j, "space", ""), "/space");
  const int n = integer(member(j, "n", ""), "/n");
  if (n < 1) throw SchemaError("/n", "must be >= 1");
  const json& samples = member(j, "samples", "");
  if (!samples.is_array() || int(samples.size()) != space->size())
    throw SchemaError("/samples", "expected one sample per mesh point (" + std::to_string(space->size()) + ")");
  std::vector<std::optional<PositiveMatrix>> slots(std::size_t(space->size()));
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const std::string where = "/samples/" + std::to_string(k);
    const int p = integer(member(samples[k], "point", where), where + "/point");
    if (p < 0 || p >= space->size() || slots[std::size_t(p)]) throw SchemaError(where + "/point", "invalid or repeated");
    const Matrix m = matrix_from_json(member(samples[k], "matrix", where), where + "/matrix");
    if (m.rows() != n) throw SchemaError(where + "/matrix/n", "does not match the field size");
    try {
      slots[std::size_t(p)].emplace(m);
    } catch (const InvalidInput& e) {
      throw SchemaError(where + "/matrix", e.what());
    }
  }
  std::vector<PositiveMatrix> s;
  for (auto& o : slots) s.push_back(std::move(*o));
  return MatrixField(space, n, std::move(s));
}

json to_json(const MorphismPath<std::vector<int>>& p, const BaseSpace& space) {
  return {{"space", to_json(space)}, {"grid", p.grid}, {"images", p.images}};
}

std::pair<SpacePtr, MorphismPath<std::vector<int>>> path_from_json(const json& j) {
  SpacePtr space = space_from_json(member(j, "space", ""), "/space");
  MorphismPath<std::vector<int>> p;
  p.grid = numbers(member(j, "grid", ""), "/grid");
  const json& im = member(j, "images", "");
  if (!im.is_array() || im.size() != p.grid.size()) throw SchemaError("/images", "expected one image per grid point");
  for (std::size_t k = 0; k < im.size(); ++k) {
    const std::string where = "/images/" + std::to_string(k);
    if (!im[k].is_array() || int(im[k].size()) != space->size())
      throw SchemaError(where, "expected one rank per mesh point");
    std::vector<int> r;
    for (std::size_t x = 0; x < im[k].size(); ++x) {
      const int v = integer(im[k][x], where + "/" + std::to_string(x));
      if (v < 0) throw SchemaError(where + "/" + std::to_string(x), "rank must be >= 0");
      r.push_back(v);
    }
    p.images.push_back(std::move(r));
  }
  return {space, std::move(p)};
}

json to_json(const DistanceInterval& d) { return {{"lo", real(d.lo)}, {"hi", real(d.hi)}, {"resolution", d.resolution}}; }

json to_json(const DwResult& r) {
  json j = to_json(r.interval);
  j["exact"] = r.exact;
  j["evaluations"] = r.evaluations;
  json w = json::array();
  for (const auto& x : r.witnesses)
    w.push_back({{"t", x.t},
                 {"r", x.r},
                 {"direction", x.forward ? "a<=b" : "b<=a"},
                 {"reason", to_string(x.reason)},
                 {"detail", x.detail}});
  j["witnesses"] = w;
  return j;
}

json to_json(const SandwichReport& r) {
  return {{"dw", to_json(r.dw)},
          {"du", r.du},
          {"norm", r.norm},
          {"resolution", r.resolution},
          {"dw_lo_le_du", r.dw_below_du},
          {"du_le_4dw_hi", r.du_below_4dw},
          {"du_le_norm", r.du_below_norm},
          {"du_dw_gap", r.du_dw_gap},
          {"failures", r.failures},
          {"passed", r.passed()}};
}

json to_json(const SphereReport& r) {
  json f = json::array();
  for (const auto& c : r.functions)
    f.push_back({{"function", c.function},
                 {"ranks_equal", c.ranks_equal},
                 {"nonconstant", c.nonconstant},
                 {"certified", c.certified}});
  return {{"clause1", {{"passed", r.clause1}, {"functions", f}}},
          {"clause2", {{"passed", r.clause2}, {"path_dw", to_json(r.path_dw)}}},
          {"clause3",
           {{"passed", r.clause3},
            {"ratio_max", r.ratio_max},
            {"bound", r.bound},
            {"required", r.required},
            {"normalized_dw", to_json(r.normalized_dw)}}},
          {"witness", r.witness},
          {"passed", r.passed()}};
}

json to_json(const VilladsenStage& s) {
  json k = json::array();
  for (auto v : s.k) k.push_back(v);
  json j{{"stage", s.stage},
         {"ring", s.ring.str()},
         {"orders", s.ring.orders},
         {"k", k},
         {"bundle", s.target.str()},
         {"euler_class", s.euler.value.str()},
         {"euler_exponents", s.euler_exponents},
         {"exponents_fit_truncation", s.exponents_fit},
         {"exponents_fit_2kj_le_nj", s.exponents_fit_loose},
         {"simulation_agrees", s.simulation_agrees},
         {"verdict", to_string(s.verdict)},
         {"du_lower_bound", s.du_bound}};
  if (s.total_chern_terms) j["total_chern_terms"] = *s.total_chern_terms;
  return j;
}

json to_json(const SuspensionResult& r) {
  return {{"t_samples", r.product->t_samples()},
          {"baseline", to_json(r.baseline)},
          {"suspended", to_json(r.suspended)},
          {"max_lower_bound", std::max(r.baseline.interval.lo, r.suspended.interval.lo)}};
}

json make_report(const ReportMeta& meta, json payload) {
  json j{{"tool", "cuntz"},
         {"version", kToolVersion},
         {"command", meta.command},
         {"grid", meta.grid},
         {"tolerances",
          {{"rank_tau", meta.tau},
           {"psd_relative", kPsdRelativeTolerance},
           {"projection", kProjectionTolerance}}},
         {"g_eps_convention", kGEpsilonConvention},
         {"result", std::move(payload)}};
  for (const auto& [k, v] : meta.extra) j[k] = v;
  return j;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError("/", std::string("malformed JSON in ") + path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path);
  out << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string verdict_csv(const std::vector<VerdictRow>& rows) {
  std::ostringstream os;
  os << std::setprecision(17) << "t,r,verdict,reason\n";
  for (const auto& r : rows) os << r.t << ',' << r.r << ',' << to_string(r.holds) << ',' << to_string(r.reason) << '\n';
  return os.str();
}

std::string eigen_branch_csv(const MatrixField& a, const std::string& label) {
  std::ostringstream os;
  os << std::setprecision(17) << "field,point,x,y,z,t,branch,lambda\n";
  for (int p = 0; p < a.size(); ++p) {
    const auto& c = a.space().point(p).coords;
    const auto& ev = a.sample(p).eigenvalues();
    for (Eigen::Index i = 0; i < ev.size(); ++i)
      os << label << ',' << p << ',' << c(0) << ',' << c(1) << ',' << c(2) << ',' << c(3) << ',' << i + 1 << ','
         << ev(i) << '\n';
  }
  return os.str();
}

}  // namespace cuntz
