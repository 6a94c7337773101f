#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>
#include <sstream>

#include "actrack/cli.hpp"
#include "actrack/media_io.hpp"
#include "temp_dir.hpp"

using namespace actrack;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("help and usage errors") {
  CHECK(run({"--help"}).code == cli::kOk);
  CHECK(run({}).code == cli::kValidationError);
  CHECK(run({"dance"}).code == cli::kValidationError);
  CHECK(run({"fuse", "--out", "x"}).code == cli::kValidationError);  // --appearance missing
}

TEST_CASE("missing inputs give a one-line message") {
  TempDir dir("cli_missing");
  const Outcome o = run({"eval-det", "--pred", "/no/such.jsonl", "--gt", "/no/gt.jsonl"});
  CHECK(o.code == cli::kValidationError);
  CHECK(lines(o.err) == 1);
  CHECK(o.err.find("--pred") != std::string::npos);
  CHECK(o.err.find("/no/such.jsonl") != std::string::npos);
}

TEST_CASE("malformed input is a validation error") {
  TempDir dir("cli_bad");
  std::ofstream(dir / "p.jsonl") << R"({"frame":0,"class":"a","score":7,"box":[0,0,1,1]})" << "\n";
  std::ofstream(dir / "g.jsonl") << "";
  const Outcome o = run({"eval-det", "--pred", (dir / "p.jsonl").string(), "--gt", (dir / "g.jsonl").string()});
  CHECK(o.code == cli::kValidationError);
  CHECK(o.err.find("score") != std::string::npos);
}

TEST_CASE("synth, fuse, track and evaluate") {
  TempDir dir("cli_flow");
  const std::string d = dir.path().string();
  REQUIRE(run({"synth", "--scenario", "linear", "--frames", "20", "--seed", "2", "--out", d}).code == 0);
  for (const char* f : {"gt.jsonl", "appearance.jsonl", "mvx.jsonl", "mvy.jsonl", "frames/frame_000019.pgm"}) {
    CHECK(fs::exists(dir / f));
  }
  REQUIRE(run({"fuse", "--appearance", d + "/appearance.jsonl", "--mvx", d + "/mvx.jsonl", "--mvy",
               d + "/mvy.jsonl", "--method", "max", "--frames", d + "/frames", "--out", d + "/fz"})
              .code == 0);
  CHECK(read_detection_records(dir / "fz/fused.jsonl").size() == 20);
  REQUIRE(run({"track", "--frames", d + "/frames", "--detections", d + "/fz/fused.jsonl", "--out", d + "/tr"}).code == 0);
  const Outcome t = run({"eval-track", "--tracks", d + "/tr/tracks.jsonl", "--gt", d + "/gt.jsonl"});
  CHECK(t.code == 0);
  CHECK(t.out.find("\"frames_tracked\":20") != std::string::npos);
  const Outcome e = run({"eval-det", "--pred", d + "/appearance.jsonl", "--gt", d + "/gt.jsonl", "--delta",
                         "0.2", "--delta", "0.5", "--label", "app"});
  CHECK(e.code == 0);
  CHECK(e.out.find("app") != std::string::npos);
  CHECK(e.out.find("\"delta\":0.5") != std::string::npos);
}

TEST_CASE("motion estimation command") {
  TempDir dir("cli_mv");
  const std::string d = dir.path().string();
  REQUIRE(run({"synth", "--scenario", "linear", "--frames", "4", "--out", d}).code == 0);
  const Outcome o = run({"mv-estimate", "--frames", d + "/frames", "--out", d + "/mv", "--render", "--detections"});
  CHECK(o.code == 0);
  CHECK(fs::exists(dir / "mv/mv.txt"));
  CHECK(fs::exists(dir / "mv/mvx/frame_000001.pgm"));
  CHECK(fs::exists(dir / "mv/mvy.jsonl"));
  CHECK(read_mv_sidecar(dir / "mv/mv.txt", 320, 240, 16, 8).size() == 3);
}

TEST_CASE("pipeline with a config file, flags win") {
  TempDir dir("cli_pipe");
  const std::string d = dir.path().string();
  REQUIRE(run({"synth", "--scenario", "linear", "--frames", "15", "--out", d}).code == 0);
  std::ofstream(dir / "run.cfg") << "# pipeline settings\n"
                                    "frames = " << d << "/frames\n"
                                    "appearance = " << d << "/appearance.jsonl\n"
                                    "mvx = " << d << "/mvx.jsonl\n"
                                    "mvy = " << d << "/mvy.jsonl\n"
                                    "method = max\n"
                                    "iou_threshold = 0.9\n"
                                    "out = " << d << "/from_config\n";
  const Outcome o = run({"pipeline", "--config", d + "/run.cfg", "--iou-threshold", "0.4", "--out", d + "/flags"});
  CHECK(o.code == 0);
  CHECK(o.out.find("fps") != std::string::npos);
  CHECK(fs::exists(dir / "flags/tracks.jsonl"));
  CHECK_FALSE(fs::exists(dir / "from_config"));
  CHECK(run({"pipeline", "--config", d + "/nothing.cfg"}).code == cli::kValidationError);
}

TEST_CASE("invalid parameter values") {
  TempDir dir("cli_val");
  const std::string d = dir.path().string();
  REQUIRE(run({"synth", "--scenario", "static", "--frames", "3", "--out", d}).code == 0);
  CHECK(run({"track", "--frames", d + "/frames", "--detections", d + "/appearance.jsonl", "--ft", "1.5",
             "--out", d + "/t"}).code == cli::kValidationError);
  CHECK(run({"fuse", "--appearance", d + "/appearance.jsonl", "--method", "median", "--out", d}).code ==
        cli::kValidationError);
  CHECK(run({"synth", "--scenario", "nope", "--out", d}).code == cli::kValidationError);
}

TEST_CASE("optimizer benchmark command") {
  const Outcome o = run({"coa-bench", "--function", "sphere", "--dim", "3", "--iterations", "50", "--runs", "2"});
  CHECK(o.code == 0);
  CHECK(o.out.find("best_fitness") != std::string::npos);
  CHECK(o.out.find("success") != std::string::npos);
  CHECK(run({"coa-bench", "--function", "bogus"}).code == cli::kValidationError);
}
