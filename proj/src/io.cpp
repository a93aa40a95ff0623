#include "tropo/io.hpp"

#include "tropo/error.hpp"
#include "tropo/polyhedron.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace tropo {

using json = nlohmann::json;

const char* const kToolVersion = "0.1.0";

namespace {

constexpr const char* kKindNames[] = {"complex", "cycle", "function", "superform",
                                      "preform", "measure", "report",   "map"};

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::ParseError, (path.empty() ? std::string("/") : path) + ": " + what);
}

// ---------------------------------------------------------------- writing

json put(const Rational& q) { return to_string(q); }

json put(const RatVector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(to_string(v(i)));
  return a;
}

json put(const Constraint& c) { return {{"a", put(c.a)}, {"b", put(c.b)}}; }

json put(const Polyhedron& P0) {
  const Polyhedron P = canonical(P0);
  json ineq = json::array(), eq = json::array();
  for (const auto& c : P.inequalities) ineq.push_back(put(c));
  for (const auto& c : P.equalities) eq.push_back(put(c));
  return {{"ambient_rank", P.ambient_rank}, {"inequalities", ineq}, {"equalities", eq}};
}

std::string exponent_key(const Polynomial::Exponent& e) {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + std::to_string(e[i]);
  return s;
}

json put(const Polynomial& f) {
  json terms = json::object();
  for (const auto& [e, c] : f.terms()) terms[exponent_key(e)] = to_string(c);
  return {{"nvars", f.nvars()}, {"terms", terms}};
}

std::vector<int> bits(std::uint32_t m) {
  std::vector<int> out;
  for (int i = 0; m; ++i, m >>= 1)
    if (m & 1) out.push_back(i);
  return out;
}

json put(const Superform& a) {
  json terms = json::array();
  for (const auto& [key, f] : a.terms)
    terms.push_back({{"dprime", bits(key.first)}, {"ddprime", bits(key.second)}, {"coefficient", put(f)}});
  return terms;
}

json put(const PolyhedralComplex& C) {
  json cells = json::array();
  for (const auto& P : C.maximal()) cells.push_back(put(P));
  return {{"ambient_rank", C.ambient_rank}, {"cells", cells}};
}

json put(const TropicalCycle& C) {
  json cells = json::array();
  for (std::size_t i = 0; i < C.size(); ++i)
    cells.push_back({{"polyhedron", put(C.cells[i])}, {"weight", put(C.weights[i])}});
  return {{"ambient_rank", C.ambient_rank}, {"dim", C.dim}, {"cells", cells}};
}

json put(const PiecewisePolynomial& f) {
  json cells = json::array();
  for (std::size_t i = 0; i < f.cells.size(); ++i)
    cells.push_back({{"polyhedron", put(f.cells[i])}, {"piece", put(f.pieces[i])}});
  return {{"ambient_rank", f.ambient_rank}, {"cells", cells}};
}

json put(const PiecewiseSuperform& a) {
  json cells = json::array();
  for (std::size_t i = 0; i < a.cells.size(); ++i)
    cells.push_back({{"polyhedron", put(a.cells[i])}, {"form", put(a.forms[i])}});
  return {{"ambient_rank", a.ambient_rank}, {"cells", cells}};
}

json put(const DeltaPreform& A) {
  json terms = json::array();
  for (const auto& t : A.terms) terms.push_back({{"form", put(t.form)}, {"carrier", put(t.carrier)}});
  return {{"ambient_rank", A.ambient_rank}, {"terms", terms}};
}

json put(const PointMeasure& mu) {
  json atoms = json::array();
  for (const auto& [p, w] : mu.atoms) atoms.push_back({{"point", put(p)}, {"mass", put(w)}});
  return {{"atoms", atoms}};
}

json put(const Report& r) {
  json values = json::object();
  for (const auto& [k, v] : r.values) values[k] = v;
  json out = {{"verdict", r.verdict}, {"values", values}};
  if (r.witness) out["witness"] = *r.witness;
  return out;
}

json put(const IntegralAffineMap& F) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < F.linear.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < F.linear.cols(); ++j) row.push_back(F.linear(i, j).str());
    rows.push_back(row);
  }
  return {{"source_rank", F.source_rank()}, {"linear", rows}, {"translation", put(F.translation)}};
}

// ---------------------------------------------------------------- reading

const json& field(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path, "missing field \"" + key + "\"");
  return *it;
}

const json& array_at(const json& j, const std::string& key, const std::string& path) {
  const json& a = field(j, key, path);
  if (!a.is_array()) fail(path + "/" + key, "expected an array");
  return a;
}

int get_int(const json& j, const std::string& path, int lo = 0) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  const auto v = j.get<long long>();
  if (v < lo || v > 1 << 20) fail(path, "integer out of range");
  return static_cast<int>(v);
}

std::string get_string(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

Rational get_rational(const json& j, const std::string& path) {
  const std::string s = get_string(j, path);
  try {
    return parse_rational(s);
  } catch (const std::exception&) {
    fail(path, "\"" + s + "\" is not a rational of the form p/q");
  }
}

Integer get_integer(const json& j, const std::string& path) {
  const Rational q = get_rational(j, path);
  if (!is_integer(q)) fail(path, "expected an integer string");
  return numer(q);
}

RatVector get_vector(const json& j, const std::string& path, int n) {
  if (!j.is_array()) fail(path, "expected an array");
  if (n >= 0 && static_cast<int>(j.size()) != n)
    fail(path, "expected " + std::to_string(n) + " entries, got " + std::to_string(j.size()));
  RatVector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v(i) = get_rational(j[i], path + "/" + std::to_string(i));
  return v;
}

Polyhedron get_polyhedron(const json& j, const std::string& path, int r) {
  const int rank = get_int(field(j, "ambient_rank", path), path + "/ambient_rank");
  if (r >= 0 && rank != r) fail(path + "/ambient_rank", "expected ambient rank " + std::to_string(r));
  auto read = [&](const char* key) {
    std::vector<Constraint> out;
    const json& a = array_at(j, key, path);
    for (std::size_t i = 0; i < a.size(); ++i) {
      const std::string p = path + "/" + key + "/" + std::to_string(i);
      out.push_back({get_vector(field(a[i], "a", p), p + "/a", rank), get_rational(field(a[i], "b", p), p + "/b")});
    }
    return out;
  };
  return make_polyhedron(rank, read("inequalities"), read("equalities"));
}

Polynomial get_polynomial(const json& j, const std::string& path, int nvars) {
  const int n = get_int(field(j, "nvars", path), path + "/nvars");
  if (n != nvars) fail(path + "/nvars", "expected " + std::to_string(nvars) + " variables");
  const json& terms = field(j, "terms", path);
  if (!terms.is_object()) fail(path + "/terms", "expected an object");
  Polynomial f(n);
  for (const auto& [key, c] : terms.items()) {
    const std::string p = path + "/terms/" + key;
    Polynomial::Exponent e;
    std::stringstream ss(key);
    std::string part;
    while (std::getline(ss, part, ',')) {
      if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
        fail(p, "exponent key must be comma-separated nonnegative integers");
      e.push_back(std::stoi(part));
    }
    if (static_cast<int>(e.size()) != n) fail(p, "exponent length differs from nvars");
    f.add_term(e, get_rational(c, p));
  }
  return f;
}

std::vector<int> get_indices(const json& j, const std::string& path, int r) {
  if (!j.is_array()) fail(path, "expected an array");
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const int k = get_int(j[i], path + "/" + std::to_string(i));
    if (k >= r) fail(path + "/" + std::to_string(i), "coordinate index out of range");
    out.push_back(k);
  }
  return out;
}

Superform get_superform(const json& j, const std::string& path, int r) {
  if (!j.is_array()) fail(path, "expected an array of terms");
  Superform a = Superform::zero(r);
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = path + "/" + std::to_string(i);
    a += Superform::monomial(get_polynomial(field(j[i], "coefficient", p), p + "/coefficient", r),
                             get_indices(field(j[i], "dprime", p), p + "/dprime", r),
                             get_indices(field(j[i], "ddprime", p), p + "/ddprime", r));
  }
  return a;
}

int get_rank(const json& j, const std::string& path) {
  return get_int(field(j, "ambient_rank", path), path + "/ambient_rank");
}

PolyhedralComplex get_complex(const json& j, const std::string& path) {
  const int r = get_rank(j, path);
  const json& a = array_at(j, "cells", path);
  std::vector<Polyhedron> cells;
  for (std::size_t i = 0; i < a.size(); ++i) cells.push_back(get_polyhedron(a[i], path + "/cells/" + std::to_string(i), r));
  return make_complex(r, cells);
}

TropicalCycle get_cycle(const json& j, const std::string& path) {
  const int r = get_rank(j, path);
  const int d = get_int(field(j, "dim", path), path + "/dim");
  if (d > r) fail(path + "/dim", "dimension exceeds ambient rank");
  const json& a = array_at(j, "cells", path);
  std::vector<Polyhedron> cells;
  std::vector<Polynomial> weights;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::string p = path + "/cells/" + std::to_string(i);
    cells.push_back(get_polyhedron(field(a[i], "polyhedron", p), p + "/polyhedron", r));
    weights.push_back(get_polynomial(field(a[i], "weight", p), p + "/weight", r));
  }
  TropicalCycle C = make_cycle(r, cells, weights);
  if (C.cells.empty()) return zero_cycle(r, d);
  if (C.dim != d) fail(path + "/dim", "cells have dimension " + std::to_string(C.dim));
  return C;
}

PiecewisePolynomial get_function(const json& j, const std::string& path) {
  const int r = get_rank(j, path);
  const json& a = array_at(j, "cells", path);
  std::vector<Polyhedron> cells;
  std::vector<Polynomial> pieces;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::string p = path + "/cells/" + std::to_string(i);
    cells.push_back(get_polyhedron(field(a[i], "polyhedron", p), p + "/polyhedron", r));
    pieces.push_back(get_polynomial(field(a[i], "piece", p), p + "/piece", r));
  }
  return make_piecewise(r, cells, pieces);
}

PiecewiseSuperform get_piecewise_form(const json& j, const std::string& path) {
  const int r = get_rank(j, path);
  if (r > 31) fail(path + "/ambient_rank", "superforms support rank at most 31");
  const json& a = array_at(j, "cells", path);
  std::vector<Polyhedron> cells;
  std::vector<Superform> forms;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::string p = path + "/cells/" + std::to_string(i);
    cells.push_back(get_polyhedron(field(a[i], "polyhedron", p), p + "/polyhedron", r));
    forms.push_back(get_superform(field(a[i], "form", p), p + "/form", r));
  }
  return make_piecewise_form(r, cells, forms);
}

DeltaPreform get_preform(const json& j, const std::string& path) {
  DeltaPreform A;
  A.ambient_rank = get_rank(j, path);
  const json& a = array_at(j, "terms", path);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::string p = path + "/terms/" + std::to_string(i);
    DeltaPreform::Term t{get_piecewise_form(field(a[i], "form", p), p + "/form"),
                         get_cycle(field(a[i], "carrier", p), p + "/carrier")};
    if (t.form.ambient_rank != A.ambient_rank || t.carrier.ambient_rank != A.ambient_rank)
      fail(p, "term rank differs from the preform's ambient rank");
    A.terms.push_back(std::move(t));
  }
  return A;
}

PointMeasure get_measure(const json& j, const std::string& path) {
  const json& a = array_at(j, "atoms", path);
  std::vector<std::pair<RatVector, Rational>> atoms;
  int rank = -1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::string p = path + "/atoms/" + std::to_string(i);
    RatVector x = get_vector(field(a[i], "point", p), p + "/point", rank);
    rank = static_cast<int>(x.size());
    atoms.emplace_back(std::move(x), get_rational(field(a[i], "mass", p), p + "/mass"));
  }
  // normalize through the 0-cycle reading: merged, nonzero, sorted
  std::vector<Polyhedron> cells;
  std::vector<Rational> weights;
  for (const auto& [x, w] : atoms) {
    cells.push_back(Polyhedron::point(x));
    weights.push_back(w);
  }
  return rank < 0 ? PointMeasure{} : to_measure(make_cycle(rank, cells, weights));
}

Report get_report(const json& j, const std::string& path) {
  Report r;
  r.verdict = get_string(field(j, "verdict", path), path + "/verdict");
  const json& v = field(j, "values", path);
  if (!v.is_object()) fail(path + "/values", "expected an object");
  for (const auto& [k, x] : v.items()) r.values[k] = get_string(x, path + "/values/" + k);
  if (auto it = j.find("witness"); it != j.end()) r.witness = get_string(*it, path + "/witness");
  return r;
}

IntegralAffineMap get_map(const json& j, const std::string& path) {
  const int n = get_int(field(j, "source_rank", path), path + "/source_rank");
  const json& rows = array_at(j, "linear", path);
  IntMatrix L(static_cast<Eigen::Index>(rows.size()), n);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string p = path + "/linear/" + std::to_string(i);
    if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != n)
      fail(p, "expected " + std::to_string(n) + " entries");
    for (int k = 0; k < n; ++k) L(i, k) = get_integer(rows[i][k], p + "/" + std::to_string(k));
  }
  const RatVector t = get_vector(field(j, "translation", path), path + "/translation", static_cast<int>(rows.size()));
  return {L, t};
}

bool same(const Polyhedron& a, const Polyhedron& b) { return a == b; }
bool same(const Polynomial& a, const Polynomial& b) { return a == b; }
bool same(const Superform& a, const Superform& b) { return a == b; }

template <typename A, typename B>
bool same_cells(const std::vector<Polyhedron>& c1, const std::vector<A>& v1, const std::vector<Polyhedron>& c2,
                const std::vector<B>& v2) {
  if (c1.size() != c2.size() || v1.size() != v2.size()) return false;
  for (std::size_t i = 0; i < c1.size(); ++i)
    if (!same(c1[i], c2[i]) || !same(v1[i], v2[i])) return false;
  return true;
}

bool same(const TropicalCycle& a, const TropicalCycle& b) {
  return a.ambient_rank == b.ambient_rank && a.dim == b.dim && same_cells(a.cells, a.weights, b.cells, b.weights);
}

bool same(const PiecewiseSuperform& a, const PiecewiseSuperform& b) {
  return a.ambient_rank == b.ambient_rank && same_cells(a.cells, a.forms, b.cells, b.forms);
}

}  // namespace

const char* to_string(DocumentKind k) { return kKindNames[static_cast<int>(k)]; }

DocumentKind parse_kind(const std::string& s) {
  for (int i = 0; i < 8; ++i)
    if (s == kKindNames[i]) return static_cast<DocumentKind>(i);
  throw Error(ErrorCode::ParseError, "/kind: unknown document kind \"" + s + "\"");
}

std::string serialize(const Document& d, bool pretty) {
  json meta = {{"tool_version", d.meta.tool_version}};
  if (d.meta.seed) meta["seed"] = *d.meta.seed;
  if (d.meta.timing_us) meta["timing_us"] = *d.meta.timing_us;
  const json payload = std::visit([](const auto& x) { return put(x); }, d.payload);
  const json doc = {{"kind", to_string(d.kind())}, {"payload", payload}, {"meta", meta}};
  return doc.dump(pretty ? 2 : -1) + "\n";
}

Document parse_document(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(col) +
                                           ": malformed JSON");
  }
  Document d;
  const DocumentKind kind = parse_kind(get_string(field(j, "kind", ""), "/kind"));
  const json& p = field(j, "payload", "");
  switch (kind) {
    case DocumentKind::Complex: d.payload = get_complex(p, "/payload"); break;
    case DocumentKind::Cycle: d.payload = get_cycle(p, "/payload"); break;
    case DocumentKind::Function: d.payload = get_function(p, "/payload"); break;
    case DocumentKind::Superform: d.payload = get_piecewise_form(p, "/payload"); break;
    case DocumentKind::Preform: d.payload = get_preform(p, "/payload"); break;
    case DocumentKind::Measure: d.payload = get_measure(p, "/payload"); break;
    case DocumentKind::Report: d.payload = get_report(p, "/payload"); break;
    case DocumentKind::Map: d.payload = get_map(p, "/payload"); break;
  }
  if (auto it = j.find("meta"); it != j.end()) {
    const json& m = *it;
    if (!m.is_object()) fail("/meta", "expected an object");
    if (auto v = m.find("tool_version"); v != m.end()) d.meta.tool_version = get_string(*v, "/meta/tool_version");
    if (auto v = m.find("seed"); v != m.end()) {
      if (!v->is_number_unsigned()) fail("/meta/seed", "expected a nonnegative integer");
      d.meta.seed = v->get<std::uint64_t>();
    }
    if (auto v = m.find("timing_us"); v != m.end()) {
      if (!v->is_number_integer()) fail("/meta/timing_us", "expected an integer");
      d.meta.timing_us = v->get<std::int64_t>();
    }
  }
  return d;
}

Document read_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_document(ss.str());
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + std::string(e.what()).substr(std::string(to_string(e.code())).size() + 2));
  }
}

bool documents_equal(const Document& a, const Document& b) {
  if (a.kind() != b.kind() || a.meta.tool_version != b.meta.tool_version || a.meta.seed != b.meta.seed) return false;
  switch (a.kind()) {
    case DocumentKind::Complex: {
      const auto& x = std::get<PolyhedralComplex>(a.payload);
      const auto& y = std::get<PolyhedralComplex>(b.payload);
      return x.ambient_rank == y.ambient_rank && x.cells == y.cells && x.face_relation == y.face_relation;
    }
    case DocumentKind::Cycle: return same(std::get<TropicalCycle>(a.payload), std::get<TropicalCycle>(b.payload));
    case DocumentKind::Function: {
      const auto& x = std::get<PiecewisePolynomial>(a.payload);
      const auto& y = std::get<PiecewisePolynomial>(b.payload);
      return x.ambient_rank == y.ambient_rank && same_cells(x.cells, x.pieces, y.cells, y.pieces);
    }
    case DocumentKind::Superform:
      return same(std::get<PiecewiseSuperform>(a.payload), std::get<PiecewiseSuperform>(b.payload));
    case DocumentKind::Preform: {
      const auto& x = std::get<DeltaPreform>(a.payload);
      const auto& y = std::get<DeltaPreform>(b.payload);
      if (x.ambient_rank != y.ambient_rank || x.terms.size() != y.terms.size()) return false;
      for (std::size_t i = 0; i < x.terms.size(); ++i)
        if (!same(x.terms[i].form, y.terms[i].form) || !same(x.terms[i].carrier, y.terms[i].carrier)) return false;
      return true;
    }
    case DocumentKind::Measure: {
      const auto& x = std::get<PointMeasure>(a.payload).atoms;
      const auto& y = std::get<PointMeasure>(b.payload).atoms;
      if (x.size() != y.size()) return false;
      for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i].first.size() != y[i].first.size() || x[i].first != y[i].first || x[i].second != y[i].second)
          return false;
      return true;
    }
    case DocumentKind::Report: return std::get<Report>(a.payload) == std::get<Report>(b.payload);
    case DocumentKind::Map: {
      const auto& x = std::get<IntegralAffineMap>(a.payload);
      const auto& y = std::get<IntegralAffineMap>(b.payload);
      return x.linear.rows() == y.linear.rows() && x.linear.cols() == y.linear.cols() && x.linear == y.linear &&
             x.translation == y.translation;
    }
  }
  return false;
}

std::string describe(const Document& d) {
  std::ostringstream out;
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, PolyhedralComplex>) {
          out << "complex in rank " << x.ambient_rank << ", dimension " << x.dim() << "\n";
          for (const auto& P : x.maximal()) out << "  " << to_string(P) << "\n";
        } else if constexpr (std::is_same_v<T, TropicalCycle>) {
          out << "cycle of dimension " << x.dim << " in rank " << x.ambient_rank << ", " << x.size() << " cells\n";
          for (std::size_t i = 0; i < x.size(); ++i)
            out << "  " << to_string(x.cells[i]) << "  weight " << x.weights[i].str() << "\n";
        } else if constexpr (std::is_same_v<T, PiecewisePolynomial>) {
          out << "piecewise function in rank " << x.ambient_rank << "\n";
          for (std::size_t i = 0; i < x.cells.size(); ++i)
            out << "  " << to_string(x.cells[i]) << "  " << x.pieces[i].str() << "\n";
        } else if constexpr (std::is_same_v<T, PiecewiseSuperform>) {
          out << "piecewise superform in rank " << x.ambient_rank << "\n";
          for (std::size_t i = 0; i < x.cells.size(); ++i)
            out << "  " << to_string(x.cells[i]) << "  " << x.forms[i].str() << "\n";
        } else if constexpr (std::is_same_v<T, DeltaPreform>) {
          out << "delta-preform with " << x.terms.size() << " terms\n";
          for (const auto& t : x.terms)
            out << "  carrier of dimension " << t.carrier.dim << ", " << t.form.cells.size() << " form pieces\n";
        } else if constexpr (std::is_same_v<T, PointMeasure>) {
          out << "measure " << to_string(x) << "\n" << "total mass " << to_string(total_mass(x)) << "\n";
        } else if constexpr (std::is_same_v<T, Report>) {
          out << x.verdict << "\n";
          for (const auto& [k, v] : x.values) out << "  " << k << " = " << v << "\n";
          if (x.witness) out << "  witness " << *x.witness << "\n";
        } else {
          out << "affine map Z^" << x.source_rank() << " -> Z^" << x.target_rank() << "\n";
          for (Eigen::Index i = 0; i < x.linear.rows(); ++i) {
            out << "  [";
            for (Eigen::Index k = 0; k < x.linear.cols(); ++k) out << (k ? " " : "") << x.linear(i, k).str();
            out << "] + " << to_string(x.translation(i)) << "\n";
          }
        }
      },
      d.payload);
  return out.str();
}

}  // namespace tropo
