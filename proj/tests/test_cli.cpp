#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <string>

#include <json.hpp>

#include "tame/io.hpp"
#include "tame/tame.h"

using nlohmann::ordered_json;
using namespace tame;

namespace {

const char* const kCircleAlgebra = R"({
  "ring": {"kind": "F_l", "l": 7},
  "generators": [{"name": "tau", "degree": 2}, {"name": "eta", "degree": 3}],
  "differential": {"eta": [["1", [["tau", 2]]]]}
})";

struct Run {
  int code = -1;
  std::string out;
};

// Runs the command line tool, capturing stdout.
Run cli(const std::string& args) {
  Run r;
  const std::string cmd = std::string(TAME_CGDA_PATH) + " " + args + " 2>/dev/null";
  FILE* f = popen(cmd.c_str(), "r");
  REQUIRE(f);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, f)) > 0) r.out.append(buf, n);
  const int status = pclose(f);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

ordered_json report_json(tame_report* r) { return ordered_json::parse(tame_report_json(r)); }

}  // namespace

TEST_CASE("polynomial parsing") {
  const auto t = io::parse_polynomial("3*t1^2*s1 - 1/2*sigma1 + 4");
  REQUIRE(t.size() == 3);
  CHECK(t[0].coeff == coeff::Rational(3));
  CHECK(t[0].factors == std::vector<std::pair<std::string, unsigned>>{{"t1", 2}, {"s1", 1}});
  CHECK(t[1].coeff == coeff::Rational(-1, 2));
  CHECK(t[2].factors.empty());
  for (const char* bad : {"", "3*", "t1^", "t1 +", "*t1", "1/0"}) {
    try {
      io::parse_polynomial(bad);
      FAIL("accepted '" << bad << "'");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ParseError);
    }
  }
}

TEST_CASE("algebra files round-trip") {
  const auto a = io::parse_algebra(kCircleAlgebra);
  const auto j = io::algebra_json(a);
  CHECK(io::algebra_json(io::parse_algebra(j.dump())) == j);
  CHECK(ordered_json::parse(io::dump(j)) == j);
  CHECK_THROWS_AS(io::parse_algebra("{\"ring\": {\"kind\": \"Z\"}, \"generators\": []}"), Error);
  CHECK_THROWS_AS(io::parse_algebra("not json"), Error);
}

TEST_CASE("reports survive a parse of their own output") {
  const rankbound::SphereProduct x({3, 5});
  const auto e = rankbound::build_model(x, 2, 29, rankbound::diagonal_twist(x, 2, 29));
  const auto j = io::rank_report(rankbound::rank_pipeline(e), e);
  CHECK(ordered_json::parse(io::dump(j)) == j);
  CHECK(j.at("schema") == io::kSchema);
  CHECK(j.at("command") == "rank");
}

TEST_CASE("C interface status codes") {
  CHECK(std::string(tame_status_name(TAME_OK)) == "Ok");
  CHECK(std::string(tame_status_name(TAME_PARSE_ERROR)) == "ParseError");
  CHECK(std::string(tame_status_name(static_cast<tame_status>(99))) == "Unknown");

  tame_algebra* a = nullptr;
  CHECK(tame_algebra_parse("{", &a) == TAME_PARSE_ERROR);
  CHECK(a == nullptr);
  CHECK(std::string(tame_last_error()).size() > 0);
  CHECK(tame_algebra_parse(nullptr, &a) == TAME_INVALID_ARGUMENT);

  REQUIRE(tame_algebra_parse(kCircleAlgebra, &a) == TAME_OK);
  tame_report* r = nullptr;
  REQUIRE(tame_cohomology(a, -1, 0, 6, 0, &r) == TAME_OK);
  const auto j = report_json(r);
  CHECK(j.at("command") == "cohomology");
  CHECK(tame_report_passed(r) == 1);
  tame_report_free(r);

  r = nullptr;
  REQUIRE(tame_coboundary(a, "tau^2", -1, 0, 6, &r) == TAME_OK);
  CHECK(tame_report_passed(r) == 1);
  tame_report_free(r);
  r = nullptr;
  REQUIRE(tame_coboundary(a, "tau", -1, 0, 6, &r) == TAME_OK);
  CHECK(tame_report_passed(r) == 0);
  tame_report_free(r);
  r = nullptr;
  CHECK(tame_coboundary(a, "eta", -1, 0, 6, &r) == TAME_NOT_A_COCYCLE);
  CHECK(tame_coboundary(a, "nope", -1, 0, 6, &r) == TAME_PARSE_ERROR);
  tame_algebra_free(a);

  CHECK(tame_filtration_bar(1) == 1);
  CHECK(tame_filtration_bar(3) == 6);
  CHECK(tame_filtration_bar(0) == -1);

  REQUIRE(tame_rank("3,5", 3, 29, nullptr, &r) == TAME_OK);
  CHECK(tame_report_passed(r) == 0);
  CHECK(report_json(r).at("bound") == "refuted");
  tame_report_free(r);
  r = nullptr;
  CHECK(tame_rank("3,5", 2, 29, "{\"sigma1\": \"t1\"}", &r) == TAME_INVALID_ARGUMENT);
  CHECK(tame_tower("3", 1, 5, nullptr, nullptr, 6, &r) == TAME_SCHEDULE_DEGREE_TOO_TAME);

  tame_space* x = nullptr;
  CHECK(tame_space_load("no-such-space", &x) != TAME_OK);
  REQUIRE(tame_space_load("circle", &x) == TAME_OK);
  REQUIRE(tame_cenkl(x, 2, 5, 2, &r) == TAME_OK);
  CHECK(tame_report_passed(r) == 1);
  tame_report_free(r);
  tame_space_free(x);
}

TEST_CASE("same seed gives byte-identical random searches") {
  tame_search_options o;
  tame_search_options_init(&o);
  o.dims = "3,5";
  o.r = 3;
  o.p = 29;
  o.random = 1;
  o.seed = 17;
  o.samples = 40;
  std::string first;
  for (unsigned threads : {1u, 2u}) {
    o.threads = threads;
    tame_report* r = nullptr;
    REQUIRE(tame_rank_search(&o, &r) == TAME_OK);
    if (first.empty())
      first = tame_report_json(r);
    else
      CHECK(first == tame_report_json(r));
    tame_report_free(r);
  }
}

TEST_CASE("command line exit codes") {
  const auto pass = cli("rank --spheres 3,5 --prime 29 --r 2");
  CHECK(pass.code == 0);
  CHECK(ordered_json::parse(pass.out).at("bound") == "k_o >= r");
  CHECK(cli("rank --spheres 3,5 --prime 29 --r 3").code == 1);
  CHECK(cli("rank --spheres 3,5").code == 2);
  CHECK(cli("no-such-command").code == 2);
  const auto err = cli("tower --spheres 3 --l 5 --r 1");
  CHECK(err.code == 1);
  CHECK(ordered_json::parse(err.out).at("error").at("status") == "ScheduleDegreeTooTame");
  const auto a = cli("rank-search --spheres 3,5 --prime 29 --r 3 --strategy random --seed 9 --samples 20");
  const auto b = cli("rank-search --spheres 3,5 --prime 29 --r 3 --strategy random --seed 9 --samples 20");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(cli("filtration --check-admissible --tmax 12").code == 0);
  CHECK(cli("massey --l 3").code == 0);
}
