#include "cli.hpp"

#include "tropo/error.hpp"
#include "tropo/intersection.hpp"
#include "tropo/io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace tropo {

namespace {

struct Options {
  std::vector<std::string> inputs;
  std::optional<std::uint64_t> seed;
  std::vector<std::size_t> order;
  bool json = false;
  bool pretty = false;
  bool no_timing = false;
  std::string dump_cells;
};

struct Outcome {
  Payload payload;
  int code = kExitOk;
};

class Inputs {
 public:
  explicit Inputs(const std::vector<std::string>& paths) {
    for (const auto& p : paths) {
      if (p == "-") {
        std::stringstream ss;
        ss << std::cin.rdbuf();
        docs_.push_back(parse_document(ss.str()));
      } else {
        docs_.push_back(read_document(p));
      }
      names_.push_back(p);
    }
  }

  std::size_t size() const { return docs_.size(); }

  template <typename T>
  const T& get(std::size_t i, DocumentKind kind) const {
    if (i >= docs_.size()) throw Error(ErrorCode::InvalidInput, "missing input of kind " + std::string(to_string(kind)));
    if (docs_[i].kind() != kind)
      throw Error(ErrorCode::InvalidInput, names_[i] + ": expected a " + to_string(kind) + " document, got " +
                                               to_string(docs_[i].kind()));
    return std::get<T>(docs_[i].payload);
  }

  DocumentKind kind(std::size_t i) const { return docs_.at(i).kind(); }

 private:
  std::vector<Document> docs_;
  std::vector<std::string> names_;
};

void require_count(const Inputs& in, std::size_t lo, std::size_t hi) {
  if (in.size() < lo || in.size() > hi)
    throw Error(ErrorCode::InvalidInput, "expected " + std::to_string(lo) +
                                             (hi == lo ? "" : " to " + std::to_string(hi)) + " input documents, got " +
                                             std::to_string(in.size()));
}

std::uint64_t need_seed(const Options& o, const std::string& cmd) {
  if (!o.seed) throw Error(ErrorCode::InvalidInput, cmd + " uses generic vectors and requires --seed");
  return *o.seed;
}

// functions followed by one cycle
std::vector<PiecewisePolynomial> leading_functions(const Inputs& in) {
  std::vector<PiecewisePolynomial> phis;
  for (std::size_t i = 0; i + 1 < in.size(); ++i) phis.push_back(in.get<PiecewisePolynomial>(i, DocumentKind::Function));
  return phis;
}

Report zero_check(const std::string& name, const Rational& residual) {
  Report r;
  r.verdict = residual == 0 ? "HOLDS" : "FAILURE";
  r.values[name] = to_string(residual);
  return r;
}

Outcome execute(const std::string& cmd, const Options& o) {
  const Inputs in(o.inputs);
  if (cmd == "check-balance") {
    require_count(in, 1, 1);
    const auto rep = check_balancing(in.get<TropicalCycle>(0, DocumentKind::Cycle));
    Report r;
    r.verdict = rep.balanced ? "BALANCED" : "FAILURE";
    if (rep.witness) r.witness = to_string(*rep.witness);
    for (std::size_t i = 0; i < rep.residual.size(); ++i) r.values["residual_" + std::to_string(i)] = rep.residual[i].str();
    return {r, rep.balanced ? kExitOk : kExitFailure};
  }
  if (cmd == "intersect") {
    require_count(in, 2, 2);
    return {stable_intersection(in.get<TropicalCycle>(0, DocumentKind::Cycle), in.get<TropicalCycle>(1, DocumentKind::Cycle),
                                need_seed(o, cmd))};
  }
  if (cmd == "pushforward") {
    require_count(in, 2, 2);
    return {pushforward(in.get<IntegralAffineMap>(0, DocumentKind::Map), in.get<TropicalCycle>(1, DocumentKind::Cycle))};
  }
  if (cmd == "pullback") {
    require_count(in, 2, 2);
    return {pullback(in.get<IntegralAffineMap>(0, DocumentKind::Map), in.get<TropicalCycle>(1, DocumentKind::Cycle),
                     need_seed(o, cmd))};
  }
  if (cmd == "corner-locus") {
    require_count(in, 2, 64);
    return {iterated_corner_locus(leading_functions(in), in.get<TropicalCycle>(in.size() - 1, DocumentKind::Cycle))};
  }
  if (cmd == "integrate") {
    require_count(in, 1, 2);
    Report r;
    r.verdict = "VALUE";
    if (in.kind(0) == DocumentKind::Preform) {
      require_count(in, 1, 1);
      r.values["integral"] = to_string(integrate(in.get<DeltaPreform>(0, DocumentKind::Preform)));
    } else {
      require_count(in, 2, 2);
      r.values["integral"] = to_string(integrate(in.get<PiecewiseSuperform>(0, DocumentKind::Superform),
                                                 in.get<TropicalCycle>(1, DocumentKind::Cycle)));
    }
    return {r};
  }
  if (cmd == "stokes-check") {
    require_count(in, 2, 3);
    const auto& C = in.get<TropicalCycle>(in.size() - 1, DocumentKind::Cycle);
    const auto& b1 = in.get<PiecewiseSuperform>(0, DocumentKind::Superform);
    const Rational res = in.size() == 2
                             ? stokes_residual(b1, C)
                             : green_residual(b1, in.get<PiecewiseSuperform>(1, DocumentKind::Superform), C);
    Report r = zero_check("residual", res);
    r.values["identity"] = in.size() == 2 ? "stokes" : "green";
    return {r, res == 0 ? kExitOk : kExitFailure};
  }
  if (cmd == "pl-check") {
    require_count(in, 3, 3);
    const auto rep = poincare_lelong(in.get<PiecewisePolynomial>(0, DocumentKind::Function),
                                     in.get<DeltaPreform>(1, DocumentKind::Preform),
                                     in.get<TropicalCycle>(2, DocumentKind::Cycle), need_seed(o, cmd));
    Report r = zero_check("residual", rep.residual);
    r.values["boundary_dprime"] = to_string(rep.boundary_dprime);
    r.values["boundary_ddprime"] = to_string(rep.boundary_ddprime);
    r.values["phi_ddc_beta"] = to_string(rep.phi_ddc_beta);
    r.values["ddc_phi_beta"] = to_string(rep.ddc_phi_beta);
    r.values["delta_term"] = to_string(rep.delta_term);
    const bool ok = rep.residual == 0 && rep.boundary_dprime == 0 && rep.boundary_ddprime == 0;
    r.verdict = ok ? "HOLDS" : "FAILURE";
    return {r, ok ? kExitOk : kExitFailure};
  }
  if (cmd == "ma") {
    require_count(in, 1, 64);
    return {monge_ampere(leading_functions(in), in.get<TropicalCycle>(in.size() - 1, DocumentKind::Cycle))};
  }
  if (cmd == "height") {
    require_count(in, 2, 64);
    const auto phis = leading_functions(in);
    const auto& C = in.get<TropicalCycle>(in.size() - 1, DocumentKind::Cycle);
    Report r;
    r.verdict = "VALUE";
    r.values["height"] = to_string(o.order.empty() ? local_height(phis, C) : local_height(phis, C, o.order));
    return {r};
  }
  throw Error(ErrorCode::InvalidInput, "unknown command " + cmd);
}

std::vector<Polyhedron> cells_of(const Payload& p) {
  if (auto* C = std::get_if<TropicalCycle>(&p)) return C->cells;
  if (auto* K = std::get_if<PolyhedralComplex>(&p)) return K->maximal();
  if (auto* f = std::get_if<PiecewisePolynomial>(&p)) return f->cells;
  if (auto* a = std::get_if<PiecewiseSuperform>(&p)) return a->cells;
  if (auto* mu = std::get_if<PointMeasure>(&p)) {
    std::vector<Polyhedron> out;
    for (const auto& [x, w] : mu->atoms) out.push_back(Polyhedron::point(x));
    return out;
  }
  return {};
}

void dump_cells(const std::string& path, const Payload& p) {
  using nlohmann::json;
  auto vec = [](const RatVector& v) {
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(to_string(v(i)));
    return a;
  };
  json cells = json::array();
  for (const auto& P : cells_of(p)) {
    json verts = json::array(), dirs = json::array();
    for (const auto& v : vertices(P)) verts.push_back(vec(v));
    for (Eigen::Index k = 0; k < P.directions.cols(); ++k) dirs.push_back(vec(P.directions.col(k)));
    cells.push_back({{"dim", P.dim}, {"bounded", is_bounded(P)}, {"vertices", verts}, {"span", dirs},
                     {"description", to_string(P)}});
  }
  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::InvalidInput, "cannot write " + path);
  f << json{{"cells", cells}}.dump(2) << "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact tropical intersection theory and superform calculus", "tropo"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--json", o.json, "Machine-readable JSON output");
  app.add_flag("--pretty", o.pretty, "Indent JSON output");
  app.add_flag("--no-timing", o.no_timing, "Omit meta.timing_us");
  app.add_option("--dump-cells", o.dump_cells, "Write raw cell geometry of the result to a file");

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"check-balance", "CYCLE: test the balancing condition"},
      {"intersect", "CYCLE CYCLE --seed N: stable intersection"},
      {"pushforward", "MAP CYCLE: push-forward along an integral affine map"},
      {"pullback", "MAP CYCLE --seed N: pull-back along an integral affine map"},
      {"corner-locus", "FUNCTION... CYCLE: iterated corner locus"},
      {"integrate", "SUPERFORM CYCLE | PREFORM: integral"},
      {"stokes-check", "SUPERFORM [SUPERFORM] CYCLE: Stokes residual, or Green residual for two forms"},
      {"pl-check", "FUNCTION PREFORM CYCLE --seed N: Poincare-Lelong residual"},
      {"ma", "FUNCTION... CYCLE: Monge-Ampere measure"},
      {"height", "FUNCTION... CYCLE [--order i,j,...]: local height"},
  };
  std::string chosen;
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    sub->add_option("inputs", o.inputs, "Input documents (- for stdin)")->required();
    sub->add_option("--seed", o.seed, "Seed for generic vector search");
    if (name == "height") sub->add_option("--order", o.order, "Peel order of the functions")->delimiter(',');
    sub->callback([&chosen, n = name] { chosen = n; });
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kExitOk : kExitInputError;
  }

  try {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome res = execute(chosen, o);
    const auto t1 = std::chrono::steady_clock::now();
    Document doc{std::move(res.payload), Meta{kToolVersion, o.seed, std::nullopt}};
    if (!o.no_timing) doc.meta.timing_us = std::chrono::duration_cast<std::chrono::microseconds>(t1 - t0).count();
    if (!o.dump_cells.empty()) dump_cells(o.dump_cells, doc.payload);
    if (o.json)
      out << serialize(doc, o.pretty);
    else
      out << describe(doc);
    return res.code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

}  // namespace tropo
