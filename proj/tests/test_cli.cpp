#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <limits>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pmod/cli/bench.hpp"
#include "pmod/cli/commands.hpp"
#include "pmod/cli/format.hpp"
#include "pmod/cli/graph_source.hpp"
#include "pmod/cli/validate.hpp"
#include "pmod/embedding.hpp"
#include "pmod/generators.hpp"

using namespace pmod;
using namespace pmod::cli;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "pmod");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> result;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) result.push_back(line);
  return result;
}

std::filesystem::path scratch_dir() {
  auto dir = std::filesystem::temp_directory_path() / "pmod_cli_test";
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_SUITE("formatting") {
  TEST_CASE("reals") {
    CHECK(format_real(0.5) == "0.5");
    CHECK(format_real(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(parse_real(format_real(0.1 + 0.2)) == 0.1 + 0.2);
    CHECK(std::isinf(parse_real("inf")));
    CHECK_THROWS_AS(parse_real("1.5x"), InputError);
    CHECK_THROWS_AS(parse_real(""), InputError);
    CHECK(parse_real_list("1,2.5,inf").size() == 3);
    const std::vector<double> grid = parse_real_list("1.2:5:15");
    REQUIRE(grid.size() == 15);
    CHECK(grid.front() == 1.2);
    CHECK(grid.back() == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(parse_real_list("2:2:1") == std::vector<double>{2.0});
    CHECK_THROWS_AS(parse_real_list("3:1:4"), InputError);
    CHECK_THROWS_AS(parse_real_list("1:2:0"), InputError);
    CHECK_THROWS_AS(parse_real_list(""), InputError);
  }

  TEST_CASE("csv fields") {
    CHECK(csv_field("plain") == "plain");
    CHECK(csv_field("a,b") == "\"a,b\"");
    CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
    const std::vector<std::string> row = split_csv_line("x,\"a,b\",\"q\"\"t\",");
    CHECK(row == std::vector<std::string>{"x", "a,b", "q\"t", ""});
    CHECK_THROWS_AS(split_csv_line("\"open"), InputError);
    CHECK(metadata_line({{"seed", "1"}}) == "# pmod 0.1.0 seed=1");
  }

  TEST_CASE("matrix csv round trip") {
    const DistanceMatrix m = distance_matrix(grid_graph(2), 2.0);
    const std::string text = matrix_csv(m, metadata_line({}));
    const DistanceMatrix back = parse_matrix_csv(text);
    CHECK(back.labels == m.labels);
    CHECK(back.values == m.values);
  }

  TEST_CASE("matrix csv rejects bad input") {
    CHECK_THROWS_AS(parse_matrix_csv(""), InputError);
    CHECK_THROWS_AS(parse_matrix_csv(",a,b\na,0,1\nb,2,0\n"), InputError);
    CHECK_THROWS_AS(parse_matrix_csv(",a,b\na,1,1\nb,1,0\n"), InputError);
    CHECK_THROWS_AS(parse_matrix_csv(",a,b\na,0,-1\nb,-1,0\n"), InputError);
    CHECK_THROWS_AS(parse_matrix_csv(",a,b\na,0,1\n"), InputError);
    try {
      parse_matrix_csv(",a,b\na,0,1\nb,x,0\n");
      FAIL("expected an error");
    } catch (const InputError& e) {
      CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
  }
}

TEST_SUITE("graph sources") {
  TEST_CASE("generators") {
    CHECK(load_graph("gen:path:4").edge_count() == 3);
    CHECK(load_graph("gen:cycle:5").edge_count() == 5);
    CHECK(load_graph("gen:complete:5").edge_count() == 10);
    CHECK(load_graph("gen:parallel:3,2").node_count() == 5);
    const Graph er = load_graph("gen:er:10,6,42");
    const Graph direct = erdos_renyi_connected(10, 6.0, 42);
    REQUIRE(er.edge_count() == direct.edge_count());
    for (EdgeId e = 0; e < er.edge_count(); ++e) {
      CHECK(er.edge(e).u == direct.edge(e).u);
      CHECK(er.edge(e).v == direct.edge(e).v);
    }
    CHECK_THROWS_AS(load_graph("gen:torus:3"), InputError);
    CHECK_THROWS_AS(load_graph("gen:cycle"), InputError);
    CHECK_THROWS_AS(load_graph("gen:parallel:3"), InputError);
    CHECK_THROWS_AS(load_graph("gen:er:10,20,1"), InputError);
    CHECK_THROWS_AS(load_graph("/nonexistent/graph.txt"), InputError);
  }

  TEST_CASE("grid graphs") {
    const Graph g = grid_graph(3);
    CHECK(g.node_count() == 9);
    CHECK(g.edge_count() == 12);
    CHECK(g.label(0) == "0,0");
    CHECK(g.label(5) == "1,2");
    CHECK(g.label(8) == "2,2");
    CHECK(grid_graph(1).edge_count() == 0);
    CHECK_THROWS_AS(grid_graph(0), InputError);
  }

  TEST_CASE("files and output directory") {
    const auto dir = scratch_dir();
    const auto file = dir / "edges.txt";
    write_text_file(file.string(), "# square\nx y\ny z\nz w\nw x\n");
    const Graph g = load_graph(file.string());
    CHECK(g.node_count() == 4);
    CHECK(g.label(0) == "x");
    ::setenv("PMOD_OUTPUT_DIR", dir.c_str(), 1);
    CHECK(output_path("out.csv") == dir / "out.csv");
    CHECK(output_path("/abs/out.csv") == std::filesystem::path("/abs/out.csv"));
    ::unsetenv("PMOD_OUTPUT_DIR");
    CHECK(output_path("out.csv") == std::filesystem::path("out.csv"));
  }
}

TEST_SUITE("validate and bench") {
  TEST_CASE("validation cases") {
    const std::vector<ValidationCase> all = run_validation({});
    CHECK(all.size() == 9 + 18 + 6);
    for (const ValidationCase& c : all) {
      CHECK(c.pass);
      CHECK(c.rel_error <= 1e-5);
      CHECK_FALSE(c.below_floor);
    }
    ValidationOptions only;
    only.only = {"cycle"};
    const std::vector<ValidationCase> cycles = run_validation(only);
    CHECK(cycles.size() == 18);
    for (const ValidationCase& c : cycles) CHECK(c.family == "cycle");
    only.only = {"torus"};
    CHECK_THROWS(run_validation(only));
    CHECK(validation_solver_tolerance(1e-5) == doctest::Approx(1e-6));
    CHECK(validation_solver_tolerance(1e-14) == kSolverToleranceFloor);
  }

  TEST_CASE("sizes and columns") {
    CHECK(parse_sizes("3..12") == std::vector<std::size_t>{3, 6, 9, 12});
    CHECK(parse_sizes("4,7") == std::vector<std::size_t>{4, 7});
    CHECK_THROWS(parse_sizes("0"));
    CHECK_THROWS(parse_sizes("12..3"));
    const std::vector<BenchColumn> cols =
        bench_columns({Exponent(1.0), Exponent(2.0), Exponent::infinity()}, {"lap", "opt"});
    REQUIRE(cols.size() == 4);
    CHECK(cols[0].label == "1.0");
    CHECK(cols[1].label == "2.0 (lap)");
    CHECK(cols[2].label == "2.0 (opt)");
    CHECK(cols[3].label == "inf");
    CHECK(bench_columns({Exponent(2.5)}, {"lap", "opt"}).size() == 1);
  }

  TEST_CASE("bench rows") {
    const auto cols = bench_columns({Exponent(1.0), Exponent(2.0), Exponent::infinity()}, {"lap", "opt"});
    const std::vector<BenchRow> rows = run_bench({3, 4}, cols, 1);
    REQUIRE(rows.size() == 2);
    // corner to corner on the 3x3 grid: 2 disjoint routes, 4 hops
    CHECK(rows[0].distance[0] == doctest::Approx(0.5));
    CHECK(rows[0].distance[1] == doctest::Approx(rows[0].distance[2]).epsilon(1e-6));
    CHECK(rows[0].distance[3] == 4.0);
    const std::vector<std::string> csv = lines(bench_csv(cols, rows, metadata_line({})));
    REQUIRE(csv.size() == 4);
    CHECK(csv[1] == "n,1.0,2.0 (lap),2.0 (opt),inf");
    CHECK(split_csv_line(csv[2]).size() == 5);
    CHECK_THROWS(run_bench({1}, cols, 1));
  }
}

TEST_SUITE("commands") {
  TEST_CASE("dist") {
    const Outcome text = invoke({"dist", "gen:path:3", "0", "2", "--p", "2"});
    CHECK(text.code == kSuccess);
    CHECK(lines(text.out).front() == "1.414214");
    CHECK(lines(invoke({"dist", "gen:complete:4", "0", "1", "--p", "1"}).out).front() == "0.333333");
    CHECK(lines(invoke({"dist", "gen:cycle:4", "2", "2", "--p", "3"}).out).front() == "0.000000");
    CHECK(lines(invoke({"dist", "gen:path:3", "0", "2", "--p", "inf", "--digits", "2"}).out).front() == "2.00");

    const Outcome json = invoke({"dist", "gen:cycle:4", "0", "2", "--p", "3", "--format", "json"});
    const auto doc = nlohmann::json::parse(json.out);
    CHECK(doc["distance"].get<double>() == doctest::Approx(std::cbrt(2.0)).epsilon(1e-6));
    CHECK(doc["converged"].get<bool>());
    CHECK(doc["p"] == "3");

    CHECK(invoke({"dist", "gen:path:3", "0", "2", "--p", "0.5"}).code == kInputError);
    CHECK(invoke({"dist", "gen:path:3", "0", "7"}).code == kInputError);
    CHECK(invoke({"dist", "gen:path:3"}).code == kUsageError);
    CHECK(invoke({"frobnicate"}).code == kUsageError);
    CHECK(invoke({"--help"}).code == kSuccess);
  }

  TEST_CASE("dist reads edge lists and rejects bad ones") {
    const auto dir = scratch_dir();
    const auto good = dir / "p3.txt";
    const auto bad = dir / "split.txt";
    write_text_file(good.string(), "a c\nc b\n");
    write_text_file(bad.string(), "a b\nc d\n");
    CHECK(lines(invoke({"dist", good.string(), "a", "b", "--p", "2"}).out).front() == "1.414214");
    const Outcome split = invoke({"dist", bad.string(), "a", "b"});
    CHECK(split.code == kInputError);
    CHECK(split.err.find("connected") != std::string::npos);
  }

  TEST_CASE("matrix") {
    const Outcome csv = invoke({"matrix", "gen:path:3", "--p", "inf"});
    CHECK(csv.code == kSuccess);
    const DistanceMatrix m = parse_matrix_csv(csv.out);
    CHECK(m(0, 2) == 2.0);
    const Outcome json = invoke({"matrix", "gen:cycle:4", "--p", "2", "--format", "json"});
    const auto doc = nlohmann::json::parse(json.out);
    CHECK(doc["values"][0][2].get<double>() == doctest::Approx(1.0));
  }

  TEST_CASE("experiment") {
    const std::vector<std::string> args{"experiment", "--graphs", "1", "--seed", "9", "--p-grid", "1.5,2"};
    const Outcome first = invoke(args);
    const Outcome second = invoke(args);
    CHECK(first.code == kSuccess);
    CHECK(first.out == second.out);
    const std::vector<std::string> out = lines(first.out);
    REQUIRE(out.size() == 4);
    CHECK(out[0].rfind("# pmod 0.1.0", 0) == 0);
    CHECK(out[0].find("seed=9") != std::string::npos);
    CHECK(out[1] == "p,t_of_p,q_of_p,argmin_graph_seed,margin");
    CHECK(first.err.find("no counterexample") != std::string::npos);
    CHECK(invoke({"experiment", "--degree", "20", "--nodes", "10"}).code == kInputError);
  }

  TEST_CASE("embed and eigencurve") {
    CHECK(invoke({"embed", "gen:cycle:4", "--p", "2", "--dim", "3"}).out.find("embeddable: true") != std::string::npos);
    CHECK(invoke({"embed", "gen:cycle:4", "--p", "5", "--dim", "3"}).out.find("embeddable: false") != std::string::npos);
    CHECK(invoke({"embed", "gen:cycle:4", "--p", "2", "--dim", "1"}).out.find("embeddable: false") != std::string::npos);

    const auto dir = scratch_dir();
    const auto matrix = dir / "square.csv";
    write_text_file(matrix.string(), matrix_csv(square_metric(1.0, 1.0), metadata_line({})));
    const Outcome from_file = invoke({"embed", "--matrix", matrix.string(), "--dim", "3", "--format", "json"});
    CHECK(from_file.code == kSuccess);
    CHECK(nlohmann::json::parse(from_file.out)["embeddable"].get<bool>());

    const Outcome curve = invoke({"eigencurve", "--beta-grid", "1:2:3"});
    CHECK(curve.code == kSuccess);
    CHECK(lines(curve.out).size() == 5);
    CHECK(invoke({"eigencurve", "--beta-grid", "0:2:3"}).code == kInputError);
  }

  TEST_CASE("validate") {
    const Outcome ok = invoke({"validate", "--only", "parallel"});
    CHECK(ok.code == kSuccess);
    CHECK(ok.out.find("9 of 9") != std::string::npos);
    const Outcome strict = invoke({"validate", "--only", "complete", "--tol", "1e-17"});
    CHECK(strict.code == kValidationFailure);
    CHECK(strict.out.find("below solver tolerance floor") != std::string::npos);
  }

  TEST_CASE("bench") {
    const Outcome ok = invoke({"bench", "--sizes", "3,6", "--p", "1,2,inf", "--reps", "1"});
    CHECK(ok.code == kSuccess);
    CHECK(lines(ok.out).size() == 4);
    CHECK(invoke({"bench", "--sizes", "0"}).code == kInputError);
  }
}
