#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "lsskit/document.hpp"

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(LSSKIT_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  std::array<char, 4096> buf;
  while (std::size_t got = fread(buf.data(), 1, buf.size(), pipe)) {
    result.output.append(buf.data(), got);
  }
  int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string tmp_path(const std::string& name) {
  return std::string(LSSKIT_TEST_TMPDIR) + "/" + name;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  REQUIRE(out.good());
  out << content;
}

}  // namespace

TEST_CASE("fixture generation is deterministic and validates") {
  auto a = run("fixtures generate components --sizes 2,3");
  auto b = run("fixtures generate components --sizes 2,3");
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);

  auto path = tmp_path("d23.json");
  write_file(path, a.output);
  auto validated = run("space validate " + path);
  CHECK(validated.exit_code == 0);
  CHECK(validated.output.find("\"verdict\": true") != std::string::npos);
}

TEST_CASE("net enumeration through the command line") {
  auto path = tmp_path("p5.json");
  write_file(path, run("fixtures generate path --n 5").output);
  auto all = run("net compute --space " + path + " --scale Balls1 --all");
  CHECK(all.exit_code == 0);
  CHECK(all.output.find("\"nets\": 4") != std::string::npos);
}

TEST_CASE("star through the command line") {
  auto path = tmp_path("p5.json");
  write_file(path, run("fixtures generate path --n 5").output);
  auto starred = run("star --space " + path + " --target 0 --family Balls1");
  CHECK(starred.exit_code == 0);
  CHECK(starred.output.find("\"star\"") != std::string::npos);
}

TEST_CASE("bsm certificates re-verify") {
  auto path = tmp_path("d23b.json");
  write_file(path, run("fixtures generate components --sizes 2,3").output);
  auto cert_path = tmp_path("d23b.cert.json");
  auto checked =
      run("bsm check --space " + path + " --base Comp --mode all-nets --out " + cert_path);
  CHECK(checked.exit_code == 0);
  auto verified = run("verify " + cert_path);
  CHECK(verified.exit_code == 0);
  CHECK(verified.output.find("\"verdict\": true") != std::string::npos);
}

TEST_CASE("bsm bound of the grouped fixture at the singleton base") {
  auto path = tmp_path("d23c.json");
  write_file(path, run("fixtures generate components --sizes 2,3").output);
  auto checked = run("bsm check --space " + path + " --base @points --mode all-nets");
  CHECK(checked.exit_code == 0);
  CHECK(checked.output.find("\"bound\": 3") != std::string::npos);
}

TEST_CASE("map classification exit codes carry the verdict") {
  // Collapse of the grouped space onto one point: not an embedding.
  auto d23 = lsskit::parse_space(run("fixtures generate components --sizes 2,3").output);
  d23.maps.push_back({"collapse",
                      {{"a1", "z"}, {"a2", "z"}, {"b1", "z"}, {"b2", "z"}, {"b3", "z"}}});
  auto src_path = tmp_path("d23_maps.json");
  write_file(src_path, lsskit::emit_space(d23));

  lsskit::SpaceDocument single;
  single.ground = lsskit::make_ground({"z"});
  single.generators.push_back(lsskit::singleton_cover(single.ground));
  auto tgt_path = tmp_path("single.json");
  write_file(tgt_path, lsskit::emit_space(single));

  auto classified =
      run("map classify --source " + src_path + " --target " + tgt_path + " --map collapse");
  CHECK(classified.exit_code == 1);
  CHECK(classified.output.find("\"coarse_embedding\": false") != std::string::npos);

  auto inverted =
      run("map invert --source " + src_path + " --target " + tgt_path + " --map collapse");
  CHECK(inverted.exit_code == 1);
}

TEST_CASE("equivalences classify true and invert") {
  auto d23 = lsskit::parse_space(run("fixtures generate components --sizes 2,3").output);
  auto src_path = tmp_path("d2.json");
  lsskit::SpaceDocument d2;
  d2.ground = lsskit::make_ground({"p", "q"});
  d2.generators.push_back(lsskit::singleton_cover(d2.ground));
  d2.maps.push_back({"include", {{"p", "a1"}, {"q", "b1"}}});
  write_file(src_path, lsskit::emit_space(d2));
  auto tgt_path = tmp_path("d23_target.json");
  write_file(tgt_path, lsskit::emit_space(d23));

  auto classified =
      run("map classify --source " + src_path + " --target " + tgt_path + " --map include");
  CHECK(classified.exit_code == 0);
  CHECK(classified.output.find("\"verdict\": true") != std::string::npos);

  auto inverted =
      run("map invert --source " + src_path + " --target " + tgt_path + " --map include");
  CHECK(inverted.exit_code == 0);
  CHECK(inverted.output.find("\"a2\": \"p\"") != std::string::npos);
}

TEST_CASE("witness search distinguishes found and exhausted") {
  auto path = tmp_path("d23d.json");
  write_file(path, run("fixtures generate components --sizes 2,3").output);

  auto found = run("propa search --space " + path + " --epsilon 1/2 --test Comp --support Comp");
  CHECK(found.exit_code == 0);

  auto exhausted =
      run("propa search --space " + path + " --epsilon 1/2 --test Comp --support @points");
  CHECK(exhausted.exit_code == 3);
  CHECK(exhausted.output.find("\"verdict\": \"exhausted\"") != std::string::npos);
}

TEST_CASE("witness verification and conversion round trip through documents") {
  auto doc_text = run("fixtures generate components --sizes 2,3").output;
  auto path = tmp_path("d23e.json");
  write_file(path, doc_text);

  auto doc = lsskit::parse_space(doc_text);
  auto space = lsskit::realize(doc);
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> sets(5);
  for (std::uint32_t x = 0; x < 5; ++x) {
    for (auto z : space->component(space->component_of(x)).ids()) sets[x].push_back({z, 1u});
  }
  lsskit::PropertyAWitness w{lsskit::Rational(1, 2), lsskit::resolve_scale(doc, space, "Comp"),
                             lsskit::resolve_scale(doc, space, "Comp"), sets};
  auto witness_path = tmp_path("d23e.witness.json");
  write_file(witness_path, lsskit::emit_plain_witness(w));

  auto verified = run("propa verify --space " + path + " --witness " + witness_path);
  CHECK(verified.exit_code == 0);

  auto converted = run("coarse convert-witness --space " + path + " --witness " + witness_path +
                       " --direction to-entourage");
  CHECK(converted.exit_code == 0);

  auto round = run("coarse convert --space " + path);
  CHECK(round.exit_code == 0);
  CHECK(round.output.find("\"local_finiteness\": 3") != std::string::npos);
}

TEST_CASE("scaled witness verification and reduction") {
  auto doc_text = run("fixtures generate components --sizes 2,3").output;
  auto path = tmp_path("d23f.json");
  write_file(path, doc_text);

  auto doc = lsskit::parse_space(doc_text);
  auto space = lsskit::realize(doc);
  auto comp = lsskit::resolve_scale(doc, space, "Comp");

  lsskit::ScaledPropertyAWitness scaled{comp, lsskit::Rational(1), comp, comp,
                                        {{{0, 1u}}, {{1, 1u}}}};
  auto witness_path = tmp_path("d23f.scaled.json");
  write_file(witness_path, lsskit::emit_scaled_witness(scaled));
  auto verified = run("propa-scaled verify --space " + path + " --witness " + witness_path);
  CHECK(verified.exit_code == 0);

  // Reduction needs the singleton base; use block-constant sets over points.
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> sets(5);
  for (std::uint32_t x = 0; x < 5; ++x) {
    for (auto z : space->component(space->component_of(x)).ids()) sets[x].push_back({z, 1u});
  }
  lsskit::ScaledPropertyAWitness over_points{lsskit::singleton_cover(doc.ground),
                                             lsskit::Rational(1, 2), comp, comp, sets};
  auto points_path = tmp_path("d23f.points.json");
  write_file(points_path, lsskit::emit_scaled_witness(over_points));
  auto reduced = run("propa-scaled reduce --space " + path + " --witness " + points_path);
  CHECK(reduced.exit_code == 0);
}

TEST_CASE("malformed documents exit with the error code") {
  auto path = tmp_path("broken.json");
  write_file(path, "{\"format\": \"lsskit/1\"");
  auto result = run("space validate " + path);
  CHECK(result.exit_code == 2);

  auto missing = run("space validate " + tmp_path("missing-file.json"));
  CHECK(missing.exit_code == 2);
}

TEST_CASE("oracle limits exit distinctly from false verdicts") {
  auto path = tmp_path("p30.json");
  write_file(path, run("fixtures generate path --n 30").output);
  auto result = run("net compute --space " + path + " --scale Balls1 --all");
  CHECK(result.exit_code == 2);
  CHECK(result.output.find("oracle-limit") != std::string::npos);

  std::string cmd = std::string("LSSKIT_ORACLE_LIMIT=40 ") + LSSKIT_CLI_PATH +
                    " net compute --space " + path + " --scale Balls1 --all >/dev/null 2>&1";
  CHECK(std::system(cmd.c_str()) == 0);
}

TEST_CASE("certificate output is byte-identical across runs") {
  auto path = tmp_path("d23g.json");
  write_file(path, run("fixtures generate components --sizes 2,3").output);
  auto a = run("bsm check --space " + path + " --base Comp --mode covering");
  auto b = run("bsm check --space " + path + " --base Comp --mode covering");
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
}
