#include <doctest.h>

#include <sstream>

#include "coversys/cli.hpp"
#include "coversys/io.hpp"

using namespace coversys;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli_run(std::vector<std::string> args, const std::string& input = "") {
  std::ostringstream out, err;
  std::istringstream in(input);
  const int code = cli::run(args, out, err, in);
  return {code, out.str(), err.str()};
}

const std::string kData = COVERSYS_TEST_DATA;

}  // namespace

TEST_CASE("formatting") {
  CHECK(format_double(2.0 * std::log(2.0)) == "1.38629436111989");
  CHECK(format_rational(Rational(3, 6)) == "1/2");
  CHECK(format_rational(Rational(4)) == "4");
  CHECK(dump_json(Json::parse("[0.1]")) == "[\n  0.1\n]");
}

TEST_CASE("system files parse in both forms and round trip") {
  std::istringstream a(R"({"progressions":[{"a":0,"d":"2"},{"a":-1,"d":{"2":1}}]})");
  const CoverSystem c = read_system(a, "a");
  CHECK(c.size() == 2);
  CHECK(is_cover(c));
  std::istringstream back(dump_json(to_json(c)));
  CHECK(read_system(back, "b") == c);

  std::istringstream g(R"({"space":[2,3],"planes":[[0,"*"],[1,"*"]]})");
  const CoverSystem h = read_system(g, "g");
  std::istringstream back2(dump_json(to_json(h)));
  CHECK(read_system(back2, "h") == h);
}

TEST_CASE("parse errors carry a position") {
  std::istringstream bad("{\n  \"progressions\": [\n    {\"a\": 1 \"d\": 2}\n]}");
  try {
    read_system(bad, "f.json");
    FAIL("expected an error");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("f.json:3:") == 0);
  }
  std::istringstream both(R"({"progressions":[],"space":[2]})");
  CHECK_THROWS_AS(read_system(both, "x"), InputError);
  std::istringstream range(R"({"space":[2],"planes":[[2]]})");
  CHECK_THROWS_WITH_AS(read_system(range, "x"), doctest::Contains("$.planes[0][0]"), InputError);
}

TEST_CASE("verify reports a witness integer") {
  const Run r = cli_run({"verify", "-"}, R"({"progressions":[{"a":0,"d":2}]})");
  CHECK(r.code == 1);
  CHECK(r.out == "{\n  \"covers\": false,\n  \"witness\": 1\n}\n");
}

TEST_CASE("simpson on Z_12") {
  const Run r = cli_run({"simpson", kData + "/z12.json"});
  CHECK(r.code == 0);
  CHECK(Json::parse(r.out) == Json::parse(R"({"bound":5,"size":5,"tight":true})"));
}

TEST_CASE("minimal reports witnesses and a subcover") {
  const Run ok = cli_run({"minimal", kData + "/square.json"});
  CHECK(ok.code == 0);
  const Run no = cli_run({"minimal", "-"}, R"({"space":[2],"planes":[[0],[1],["*"]]})");
  CHECK(no.code == 1);
  const Json j = Json::parse(no.out);
  CHECK(j["minimal"] == false);
  CHECK(j["subcover"]["planes"].size() == 1);
  std::istringstream sub(j["subcover"].dump());
  CHECK(is_minimal(read_system(sub, "sub")));
}

TEST_CASE("qvalue and frame-gen") {
  const Run q = cli_run({"qvalue", "--N", "2*3"});
  CHECK(q.code == 0);
  CHECK(q.out.find("\"Q\": 1.38629436111989") != std::string::npos);
  const Run f = cli_run({"frame-gen", "--N", "6", "--enumerate"});
  CHECK(f.code == 0);
  const Json j = Json::parse(f.out);
  CHECK(j["family_size"] == "4");
  REQUIRE(j["systems"].size() == 4);
  std::istringstream first(j["systems"][0].dump());
  CHECK(is_minimal(read_system(first, "s")));
}

TEST_CASE("asymptotics csv") {
  const Run r = cli_run({"asymptotics", "--x-min", "10", "--x-max", "20", "--step", "5", "--csv"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("x,n,pairs,Q,ratio\n10,", 0) == 0);
}

TEST_CASE("explore and extract") {
  const Run e = cli_run({"explore", kData + "/square.json", "--C", "4", "--eps", "0.5"});
  CHECK(e.code == 0);
  const Json t = Json::parse(e.out);
  CHECK(t["valid"] == true);
  CHECK(t["vertices"].size() == 2);
  const Run x = cli_run({"extract", kData + "/square.json"});
  CHECK(x.code == 0);
  CHECK(Json::parse(x.out)["certificate"]["pass"] == true);
  const Run free = cli_run({"explore", kData + "/square.json", "--free"});
  CHECK(free.code == 2);
}

TEST_CASE("enumerate is deterministic across shard counts") {
  const Run a = cli_run({"enumerate", "--n", "4"});
  const Run b = cli_run({"enumerate", "--n", "4", "--shards", "8"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(Json::parse(a.out)["total"] == 22);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(cli_run({}).code == 2);
  CHECK(cli_run({"verify"}).code == 2);
  CHECK(cli_run({"verify", "--bogus", "x"}).code == 2);
  CHECK(cli_run({"verify", kData + "/missing.json"}).code == 2);
  const Run broken = cli_run({"verify", kData + "/broken.json"});
  CHECK(broken.code == 2);
  CHECK(broken.err.find("broken.json:3:") != std::string::npos);
  CHECK(cli_run({"qvalue", "--N", "2^"}).code == 2);
  CHECK(cli_run({"enumerate", "--n", "9"}).code == 2);
}
