#include <doctest.h>

#include "cli.hpp"
#include "generators.hpp"
#include "tropo/error.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

using namespace tropo;
using namespace testing;

namespace {

namespace fs = std::filesystem;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_doc(const fs::path& dir, const std::string& name, Payload p) {
  const fs::path file = dir / (name + ".json");
  std::ofstream(file) << serialize(Document{std::move(p), Meta{kToolVersion, std::nullopt, std::nullopt}});
  return file.string();
}

std::string write_text(const fs::path& dir, const std::string& name, const std::string& text) {
  const fs::path file = dir / name;
  std::ofstream(file) << text;
  return file.string();
}

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / ("tropo_io_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

ErrorCode code_of(const std::string& text) {
  try {
    (void)parse_document(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("document parsed");
  return ErrorCode::InvalidInput;
}

}  // namespace

TEST_CASE("documents round-trip") {
  std::mt19937_64 rng(211);
  for (int i = 0; i < 200; ++i) {
    const Document d = gen_document(rng, i);
    const std::string s = serialize(d);
    const Document back = parse_document(s);
    CHECK(documents_equal(d, back));
    CHECK(serialize(back) == s);
  }
}

TEST_CASE("rationals are strings with denominators") {
  const auto s = serialize(Document{point_cycle(rvec({q(-3, 4), 2}), q(5)), Meta{kToolVersion, 9, 17}});
  CHECK(s.find("\"-3/4\"") != std::string::npos);
  CHECK(s.find("\"2/1\"") != std::string::npos);
  CHECK(s.find("\"0,0\":\"5/1\"") != std::string::npos);
  const Document d = parse_document(s);
  CHECK(d.meta.seed == 9u);
  CHECK(d.meta.timing_us == 17);
}

TEST_CASE("parse errors carry positions and paths") {
  try {
    (void)parse_document("{\"kind\": \"cycle\",\n  \"payload\": {\n    \"dim\": 1,, }\n}");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK(std::string(e.what()).find("line 3, column 14") != std::string::npos);
  }
  CHECK(code_of("{\"kind\": \"teapot\", \"payload\": {}}") == ErrorCode::ParseError);
  CHECK(code_of("{\"payload\": {}}") == ErrorCode::ParseError);
  try {
    (void)parse_document(R"({"kind": "measure", "payload": {"atoms": [{"point": ["1/2"], "mass": 0.5}]}})");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("/payload/atoms/0/mass") != std::string::npos);
  }
  CHECK(code_of(R"({"kind": "map", "payload": {"source_rank": 2, "linear": [["1/2", "0/1"]], "translation": ["0/1"]}})") ==
        ErrorCode::ParseError);
  CHECK(code_of(R"({"kind": "function", "payload": {"ambient_rank": 1, "cells": [
      {"polyhedron": {"ambient_rank": 1, "inequalities": [{"a": ["1/1"], "b": "0/1"}], "equalities": []},
       "piece": {"nvars": 1, "terms": {"0": "1/1"}}},
      {"polyhedron": {"ambient_rank": 1, "inequalities": [{"a": ["-1/1"], "b": "0/1"}], "equalities": []},
       "piece": {"nvars": 1, "terms": {}}}]}})") == ErrorCode::ContinuityViolation);
  CHECK(code_of(R"({"kind": "cycle", "payload": {"ambient_rank": 2, "dim": 0, "cells": [
      {"polyhedron": {"ambient_rank": 2, "inequalities": [], "equalities": [{"a": ["1/1", "0/1"], "b": "0/1"}]},
       "weight": {"nvars": 2, "terms": {}}}]}})") == ErrorCode::ParseError);
}

TEST_CASE("command-line tool") {
  const fs::path dir = scratch();
  const auto line = write_doc(dir, "line", tropical_line(rvec({0, 0})));
  const auto shifted = write_doc(dir, "shifted", tropical_line(rvec({1, 2})));
  const auto R1 = write_doc(dir, "R1", fundamental_cycle(1));
  const auto relu = write_doc(dir, "relu", max_of(1, {{rvec({0}), 0}, {rvec({1}), 0}}));
  const auto bumpy = write_doc(dir, "beta", delta_preform(as_form(bump(rvec({0}), rvec({1}))), fundamental_cycle(1)));
  auto bad = tropical_line(rvec({0, 0}));
  bad.weights[0] = Polynomial::constant(2, 2);
  const auto unbalanced = write_doc(dir, "bad", bad);

  SUBCASE("verdicts and exit codes") {
    CHECK(cli({"check-balance", line}).code == kExitOk);
    CHECK(cli({"check-balance", line}).out.rfind("BALANCED", 0) == 0);
    const Run b = cli({"check-balance", unbalanced, "--json"});
    CHECK(b.code == kExitFailure);
    const Document rep = parse_document(b.out);
    CHECK(std::get<Report>(rep.payload).witness.has_value());
    CHECK(cli({"check-balance", write_text(dir, "broken.json", "{\"kind\": [")}).code == kExitInputError);
    CHECK(cli({"intersect", line, shifted}).code == kExitInputError);
    CHECK(cli({"intersect", line, relu, "--seed", "1"}).code == kExitInputError);
    CHECK(cli({"frobnicate"}).code == kExitInputError);
    CHECK(cli({"--help"}).code == kExitOk);
  }

  SUBCASE("intersection of two lines") {
    const Run r = cli({"intersect", line, line, "--seed", "7", "--json"});
    REQUIRE(r.code == kExitOk);
    const Document d = parse_document(r.out);
    CHECK(d.meta.seed == 7u);
    const auto& C = std::get<TropicalCycle>(d.payload);
    REQUIRE(C.size() == 1);
    CHECK(to_string(C.weights[0].constant_term()) == "1/1");
    CHECK(r.out.find("\"0,0\":\"1/1\"") != std::string::npos);
  }

  SUBCASE("Poincare-Lelong fixture") {
    const Run r = cli({"pl-check", relu, bumpy, R1, "--seed", "3", "--json"});
    CHECK(r.code == kExitOk);
    const auto& rep = std::get<Report>(parse_document(r.out).payload);
    CHECK(rep.values.at("residual") == "0/1");
    CHECK(rep.values.at("delta_term") == "1/1");
  }

  SUBCASE("heights and measures") {
    const auto relu1 = write_doc(dir, "relu1", max_of(1, {{rvec({0}), 1}, {rvec({1}), 0}}));
    for (const auto& order : {"0,1", "1,0"}) {
      const Run r = cli({"height", relu, relu1, R1, "--order", order, "--json"});
      CHECK(std::get<Report>(parse_document(r.out).payload).values.at("height") == "2/1");
    }
    const Run m = cli({"ma", relu, R1, "--json"});
    CHECK(total_mass(std::get<PointMeasure>(parse_document(m.out).payload)) == 1);
  }

  SUBCASE("determinism") {
    const std::vector<std::string> args = {"intersect", line, shifted, "--seed", "11", "--json", "--no-timing"};
    const Run a = cli(args), b = cli(args);
    CHECK(a.out == b.out);
    CHECK(a.out.find("timing_us") == std::string::npos);
  }

  SUBCASE("cell dump") {
    const auto out = (dir / "cells.json").string();
    CHECK(cli({"corner-locus", relu, R1, "--dump-cells", out}).code == kExitOk);
    std::ifstream f(out);
    std::stringstream ss;
    ss << f.rdbuf();
    CHECK(ss.str().find("\"vertices\"") != std::string::npos);
  }
  fs::remove_all(dir);
}
