#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "skewcorr/cli.hpp"
#include "skewcorr/sampling.hpp"
#include "skewcorr/state_io.hpp"

using namespace skewcorr;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "skewcorr");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / fs::path("skewcorr_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

double field(const std::string& text, const std::string& key) {
  const auto pos = text.find(key + " = ");
  REQUIRE(pos != std::string::npos);
  return std::stod(text.substr(pos + key.size() + 3));
}

}  // namespace

TEST_CASE("state and channel files round-trip") {
  SeededRng rng(1);
  const BipartiteState s(2, 3, random_density(6, 6, rng));
  const BipartiteState back = parse_state(dump_state(s));
  CHECK(back.dim_a() == 2);
  CHECK(back.dim_b() == 3);
  CHECK(max_abs(back.matrix() - s.matrix()) == 0.0);

  const QuantumChannel phi = random_channel(3, 2, rng);
  const QuantumChannel phi_back = parse_channel(dump_kraus(phi));
  REQUIRE(phi_back.kraus_ops().size() == 2);
  CHECK(max_abs(phi_back.kraus_ops()[1] - phi.kraus_ops()[1]) == 0.0);
}

TEST_CASE("malformed files are validation errors") {
  const auto kind = [](const std::string& text) {
    try {
      parse_state(text);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::Io;
  };
  CHECK(kind("not json") == ErrorKind::InvalidArgument);
  CHECK(kind(R"({"dims":[2,1],"im":[[0,0],[0,0]]})") == ErrorKind::InvalidArgument);
  CHECK(kind(R"({"dims":[2,1],"re":[[1,0],[0]]})") == ErrorKind::InvalidArgument);
  CHECK(kind(R"({"dims":[2,1],"re":[[0.5,0],[0,0.6]],"im":[[0,0],[0,0]]})") == ErrorKind::NotUnitTrace);
  CHECK(kind(R"({"dims":[2,2],"re":[[0.5,0],[0,0.5]],"im":[[0,0],[0,0]]})") == ErrorKind::DimensionMismatch);
  CHECK_THROWS_AS(parse_channel(R"({"kraus":[{"re":[[1,0],[0,1.1]],"im":[[0,0],[0,0]]}]})"), Error);
  CHECK_NOTHROW(parse_kraus(R"({"kraus":[{"re":[[1,0],[0,1.1]],"im":[[0,0],[0,0]]}]})"));
}

TEST_CASE("exit code mapping") {
  CHECK(cli::exit_code_for(ErrorKind::NotHermitian) == 2);
  CHECK(cli::exit_code_for(ErrorKind::NotTracePreserving) == 2);
  CHECK(cli::exit_code_for(ErrorKind::DimensionMismatch) == 3);
  CHECK(cli::exit_code_for(ErrorKind::Io) == 4);
  CHECK(cli::exit_code_for(ErrorKind::NotConverged) == 5);
  CHECK(cli::exit_code_for(ErrorKind::NegativeCorrelation) == 1);
}

TEST_CASE("measure command") {
  TempDir dir;
  REQUIRE(run({"gen", "example1", "--out", dir / "ex.json"}).code == 0);
  REQUIRE(run({"gen", "amplitude-damping", "--p", "0.25", "--out", dir / "ad.json"}).code == 0);
  const Run r = run({"measure", dir / "ex.json", dir / "ad.json", "--alpha", "0.75"});
  CHECK(r.code == 0);
  CHECK(field(r.out, "dt") >= field(r.out, "d"));
  CHECK(r.out.find("t_global = ") != std::string::npos);
  CHECK(r.out.find("t_local = ") != std::string::npos);

  REQUIRE(run({"gen", "bell", "2", "2", "--out", dir / "bell.json"}).code == 0);
  REQUIRE(run({"gen", "depolarizing", "2", "--out", dir / "dep.json"}).code == 0);
  const Run bell = run({"measure", dir / "bell.json", dir / "dep.json", "--alpha", "0.3"});
  CHECK(field(bell.out, "dt") == doctest::Approx(0.75).epsilon(1e-10));

  REQUIRE(run({"gen", "product", "2", "3", "--out", dir / "prod.json"}).code == 0);
  REQUIRE(run({"gen", "channel", "2", "--kraus", "3", "--out", dir / "ch.json"}).code == 0);
  const Run prod = run({"measure", dir / "prod.json", dir / "ch.json", "--alpha", "0.6"});
  CHECK(std::abs(field(prod.out, "dt")) < 1e-9);
}

TEST_CASE("measure command errors") {
  TempDir dir;
  REQUIRE(run({"gen", "density", "2", "2", "--out", dir / "s.json"}).code == 0);
  REQUIRE(run({"gen", "channel", "3", "--out", dir / "c3.json"}).code == 0);
  CHECK(run({"measure", dir / "s.json", dir / "c3.json", "--alpha", "0.5"}).code == 3);
  CHECK(run({"measure", dir / "missing.json", dir / "c3.json", "--alpha", "0.5"}).code == 4);

  write_text_file(dir / "bad.json", R"({"dims":[2,1],"re":[[0.5,0.1],[0,0.5]],"im":[[0,0],[0,0]]})");
  REQUIRE(run({"gen", "channel", "2", "--out", dir / "c2.json"}).code == 0);
  const Run bad = run({"measure", dir / "bad.json", dir / "c2.json", "--alpha", "0.5"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("ermitian") != std::string::npos);

  write_text_file(dir / "nontp.json", R"({"kraus":[{"re":[[1,0],[0,1.1]],"im":[[0,0],[0,0]]}]})");
  CHECK(run({"measure", dir / "s.json", dir / "nontp.json", "--alpha", "0.5"}).code == 2);
  CHECK(run({"measure", dir / "s.json", dir / "nontp.json", "--alpha", "0.5", "--allow-nontp"}).code == 0);
  CHECK(run({"measure", dir / "s.json", dir / "c2.json", "--alpha", "1.5"}).code == 2);
  CHECK(run({"measure", dir / "s.json"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
}

TEST_CASE("gen then measure round-trips for every kind") {
  TempDir dir;
  for (int d = 2; d <= 6; ++d) {
    const std::string ds = std::to_string(d);
    REQUIRE(run({"gen", "channel", ds, "--kraus", "2", "--out", dir / "c.json"}).code == 0);
    for (const std::string kind : {"density", "cq-state", "bell", "product"}) {
      const std::string db = (kind == "bell") ? ds : "2";
      REQUIRE(run({"gen", kind, ds, db, "--seed", "3", "--out", dir / "s.json"}).code == 0);
      CHECK(run({"measure", dir / "s.json", dir / "c.json", "--alpha", "0.4"}).code == 0);
    }
  }
  CHECK(run({"gen", "bell", "2", "3"}).code == 3);
  CHECK(run({"gen", "density", "2"}).code == 2);
  CHECK(run({"gen", "density", "2", "2", "--out", dir / "no/such/dir/x.json"}).code == 4);
}

TEST_CASE("generated files are deterministic and exact") {
  const Run a = run({"gen", "channel", "2", "--kraus", "3", "--seed", "7"});
  const Run b = run({"gen", "channel", "2", "--kraus", "3", "--seed", "7"});
  const Run c = run({"gen", "channel", "2", "--kraus", "3", "--seed", "8"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out != c.out);
  CHECK(parse_kraus(a.out).kraus_ops().size() == 3);

  const BipartiteState ex = parse_state(run({"gen", "example1"}).out);
  CHECK(max_abs(ex.matrix() - example1_state().matrix()) == 0.0);
  CHECK(std::abs(ex.matrix()(0, 1).real() - 1.0 / 3.0) < 1e-16);
}

TEST_CASE("sweep output") {
  const Run r = run({"sweep-example1", "--alpha", "0.05:0.95", "--p", "0.25", "--steps", "19"});
  CHECK(r.code == 0);
  std::istringstream lines(r.out);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "alpha,p,dt,d,dt_closed,d_closed");
  int rows = 0;
  for (std::string line; std::getline(lines, line);) {
    ++rows;
    CHECK(line.find(';') == std::string::npos);
  }
  CHECK(rows == 19);
  CHECK(r.out.find("\n0.5,0.25,0.0750143188226,0.0750143188226,") != std::string::npos);

  const Run grid = run({"sweep-example1", "--alpha", "0.25:0.75", "--p", "0:1", "--steps", "3,5"});
  CHECK(std::count(grid.out.begin(), grid.out.end(), '\n') == 1 + 15);

  CHECK(run({"sweep-example1", "--alpha", "0:1", "--steps", "3"}).code == 2);
  CHECK(run({"sweep-example1", "--out", "/nonexistent/dir/out.csv"}).code == 4);

  TempDir dir;
  CHECK(run({"sweep-example1", "--out", dir / "s.csv"}).code == 0);
  CHECK(read_text_file(dir / "s.csv") == run({"sweep-example1"}).out);
}

TEST_CASE("optimize command") {
  TempDir dir;
  REQUIRE(run({"gen", "bell", "2", "2", "--out", dir / "bell.json"}).code == 0);
  const Run geo = run({"optimize", dir / "bell.json", "geo-discord", "--restarts", "4"});
  CHECK(geo.code == 0);
  CHECK(std::abs(field(geo.out, "value") - 0.5) < 1e-6);
  CHECK(geo.out.find("unitary:") != std::string::npos);

  REQUIRE(run({"gen", "cq-state", "2", "3", "--out", dir / "cq.json"}).code == 0);
  const Run cq = run({"optimize", dir / "cq.json", "min-proj", "--alpha", "0.4", "--restarts", "4"});
  CHECK(std::abs(field(cq.out, "value")) < 1e-6);

  REQUIRE(run({"gen", "product", "2", "2", "--out", dir / "prod.json"}).code == 0);
  const Run prod = run({"optimize", dir / "prod.json", "max-unitary", "--alpha", "0.4", "--restarts", "4"});
  CHECK(std::abs(field(prod.out, "value")) < 1e-6);

  CHECK(run({"optimize", dir / "bell.json", "max-proj"}).code == 2);
  CHECK(run({"optimize", dir / "bell.json", "bogus"}).code == 2);
  REQUIRE(run({"gen", "density", "2", "2", "--out", dir / "s.json"}).code == 0);
  CHECK(run({"optimize", dir / "s.json", "max-unitary", "--alpha", "0.4", "--max-evals", "5"}).code == 5);
}

TEST_CASE("twirl command") {
  TempDir dir;
  REQUIRE(run({"gen", "bell", "2", "2", "--out", dir / "bell.json"}).code == 0);
  const Run bell = run({"twirl", dir / "bell.json"});
  CHECK(bell.code == 0);
  CHECK(field(bell.out, "closed_form") == doctest::Approx(0.75));
  CHECK(field(bell.out, "depolarizing") == doctest::Approx(0.75));
  CHECK(bell.out.find("PASS") != std::string::npos);

  REQUIRE(run({"gen", "example1", "--out", dir / "ex.json"}).code == 0);
  const Run ex = run({"twirl", dir / "ex.json", "--alpha", "0.5"});
  CHECK(ex.code == 0);
  CHECK(std::abs(field(ex.out, "closed_form") - field(ex.out, "depolarizing")) < 1e-10);
}

TEST_CASE("verify command") {
  const Run a = run({"verify", "--n", "20", "--seed", "5", "--optimizer-stride", "10"});
  const Run b = run({"verify", "--n", "20", "--seed", "5", "--optimizer-stride", "10"});
  CHECK(a.out == b.out);
  CHECK(a.out.find("result:") != std::string::npos);

  const Run half = run({"verify", "--n", "200", "--alpha", "0.5", "--only", "alpha-half"});
  CHECK(half.code == 0);
  CHECK(half.out.find("200/200") != std::string::npos);
}

TEST_CASE("injected non-trace-preserving channel is flagged") {
  TempDir dir;
  // Kraus operators scaled so that sum K^dagger K = (1 + 1e-3) I.
  const QuantumChannel ad = amplitude_damping(0.3);
  std::vector<Matrix> ops;
  for (const auto& k : ad.kraus_ops()) ops.push_back(k * std::sqrt(1.0 + 1e-3));
  write_text_file(dir / "bad.json", dump_kraus(KrausMap(ops)));

  CHECK(run({"verify", "--n", "20", "--channel", dir / "bad.json"}).code == 2);
  const Run r =
      run({"verify", "--n", "20", "--dims", "2:2", "--channel", dir / "bad.json", "--allow-nontp", "--only", "T1-i"});
  CHECK(r.code == 1);
  CHECK(r.out.find("first failure of T1-i") != std::string::npos);
}

TEST_CASE("the installed binary reports exit codes") {
  const std::string cmd = std::string(SKEWCORR_CLI) + " measure /nonexistent.json /nonexistent.json --alpha 0.5 2>/dev/null";
  const int status = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(status));
  CHECK(WEXITSTATUS(status) == 4);
}
