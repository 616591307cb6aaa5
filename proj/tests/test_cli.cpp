// End-to-end checks of the command-line interface: spawns the built binary
// (path in OCTA_CLI) and asserts exit codes and report contents.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "octa/gallery.hpp"
#include "octa/serialize.hpp"

namespace {

int failures = 0;

std::string cli() {
  const char* p = std::getenv("OCTA_CLI");
  return p ? p : "./tools/octa";
}

std::string tmpdir() {
  const char* p = std::getenv("OCTA_TMPDIR");
  return p ? p : "/tmp";
}

int run(const std::string& args) {
  std::string cmd = cli() + " " + args + " > /dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void expect(bool cond, const std::string& what) {
  if (!cond) {
    ++failures;
    std::cerr << "FAIL: " << what << "\n";
  }
}

}  // namespace

int main() {
  std::string dir = tmpdir();
  std::string octx = dir + "/cli_octx.json";
  std::string octxt = dir + "/cli_octxt.json";
  std::string rep = dir + "/cli_report.json";

  expect(run("gallery --name OctX --n 3 --p 2 --out " + octx) == 0, "gallery OctX");
  expect(run("gallery --name OctXtilde --n 3 --p 2 --out " + octxt) == 0, "gallery OctXtilde");
  expect(run("gallery --name Nonsense --n 3 --p 2 --out " + octx + ".bad") == 2,
         "unknown gallery name exits 2");
  expect(run("gallery --name OctX --n 4 --p 2 --out " + octx + ".bad") == 2,
         "OctX with n != 3 exits 2");

  expect(run("verify --input " + octx + " --check octahedron --report " + rep) == 0,
         "verify octahedron passes");
  expect(slurp(rep).find("\"status\": \"pass\"") != std::string::npos, "report records pass");
  expect(run("verify --input " + octx + " --check pretriangle") == 0, "verify pretriangle");
  expect(run("verify --input " + octx + " --check nonsense") == 2, "unknown check exits 2");
  expect(run("verify --input " + dir + "/does_not_exist.json --check pretriangle") == 2,
         "missing file exits 2");

  // A structurally valid diagram whose cells are not weak squares fails the
  // check with the counterexample named in the report.
  {
    const char* zeroed = R"({
      "p": 2, "m": 6, "n": 3,
      "objects": {"1/0": [3], "2/0": [3], "3/0": [3], "2/1": [1,5], "3/1": [2,4],
                  "3/2": [1,5], "0+/1": [3], "0+/2": [3], "0+/3": [3]},
      "maps": {"1/0->2/0": [[0]], "2/0->3/0": [[0]],
               "2/1->3/1": [[0,0],[0,0]], "3/1->0+/1": [[0],[0]], "3/2->0+/2": [[0],[0]],
               "2/0->2/1": [[0,0]], "3/0->3/1": [[0,0]], "3/1->3/2": [[0,0],[0,0]]}
    })";
    std::ofstream out(dir + "/cli_zeroed.json");
    out << zeroed;
    out.close();
    expect(run("verify --input " + dir + "/cli_zeroed.json --check pretriangle --report " + rep) ==
               1,
           "all-zero diagram fails verify with exit 1");
    std::string report = slurp(rep);
    expect(report.find("\"status\": \"fail\"") != std::string::npos, "report records fail");
    expect(report.find("cell at") != std::string::npos, "counterexample names the cell");
  }

  // A file violating a structural invariant is rejected at load (exit 2).
  {
    std::string text = slurp(octx);
    size_t at = text.find("\"2/0->3/0\": [\n      [\n        2\n      ]\n    ]");
    expect(at != std::string::npos, "expected map found in file");
    if (at != std::string::npos) {
      std::string broken = text;
      broken.replace(at + 30, 1, "0");
      std::ofstream out(dir + "/cli_broken.json");
      out << broken;
      out.close();
      expect(run("verify --input " + dir + "/cli_broken.json --check pretriangle") == 2,
             "structural violation is a format error");
    }
  }

  // Isomorphism searches.
  expect(run("iso --left " + octx + " --right " + octx + " --report " + rep) == 0,
         "iso OctX OctX finds a witness");
  expect(slurp(rep).find("witness(es)") != std::string::npos, "witness recorded");
  expect(run("iso --left " + octx + " --right " + octxt + " --all --report " + rep) == 0,
         "iso OctX OctXtilde completes");
  expect(slurp(rep).find("no isomorphism") != std::string::npos, "emptiness certified");
  expect(run("iso --left " + octx + " --right " + octxt + " --all --budget 5 --report " + rep) == 3,
         "tiny budget exits 3");
  expect(slurp(rep).find("inconclusive") != std::string::npos, "inconclusive recorded");

  // Restriction fixtures are isomorphic and the search finds a witness.
  {
    octa::save_diagram_file(octa::restrict_diagram(octa::gen_X(3, 2), 0), dir + "/cli_rx0.json");
    octa::save_diagram_file(octa::restrict_diagram(octa::gen_Xtilde(3, 2), 0),
                            dir + "/cli_rxt0.json");
    expect(run("iso --left " + dir + "/cli_rx0.json --right " + dir + "/cli_rxt0.json --report " +
               rep) == 0,
           "iso on restriction fixtures");
    expect(slurp(rep).find("witness(es)") != std::string::npos, "restriction witness recorded");
  }

  // Mismatched headers exit 2.
  expect(run("gallery --name X --n 4 --p 2 --out " + dir + "/cli_x4.json") == 0, "gallery X n=4");
  expect(run("iso --left " + octx + " --right " + dir + "/cli_x4.json") == 2,
         "mismatched headers exit 2");

  // Triangle check on a hand-written 2-strip file (the k = 3 restriction of
  // the octahedron base), then with its connecting map zeroed out.
  {
    const char* tri = R"({
      "p": 2, "m": 6, "n": 2,
      "objects": {"1/0": [3], "2/0": [3], "2/1": [1,5], "0+/1": [3], "0+/2": [3]},
      "maps": {"1/0->2/0": [[2]], "2/0->2/1": [[1,4]], "2/1->0+/1": [[-4],[1]]}
    })";
    std::ofstream out(dir + "/cli_tri.json");
    out << tri;
    out.close();
    expect(run("verify --input " + dir + "/cli_tri.json --check triangle") == 0,
           "distinguished 2-strip diagram passes the triangle check");

    const char* tri0 = R"({
      "p": 2, "m": 6, "n": 2,
      "objects": {"1/0": [3], "2/0": [3], "2/1": [1,5], "0+/1": [3], "0+/2": [3]},
      "maps": {"1/0->2/0": [[2]], "2/0->2/1": [[1,4]], "2/1->0+/1": [[0],[0]]}
    })";
    std::ofstream out0(dir + "/cli_tri0.json");
    out0 << tri0;
    out0.close();
    expect(run("verify --input " + dir + "/cli_tri0.json --check triangle") == 1,
           "zeroed connecting map fails the triangle check");
    expect(run("verify --input " + octx + " --check triangle") == 2,
           "triangle check on a 3-strip file is a usage error");
  }

  // Every gallery family verifies through the file pipeline.
  expect(run("gallery --name Y --n 3 --p 2 --out " + dir + "/cli_y.json") == 0, "gallery Y");
  expect(run("verify --input " + dir + "/cli_y.json --check pretriangle") == 0,
         "emitted Y verifies as a pretriangle");

  // Round trip: emitted files re-verify through the full pipeline.
  expect(run("reproduce --n 3 --p 2 --report " + rep) == 0, "reproduce n=3 p=2");
  expect(slurp(rep).find("\"exit_code\": 0") != std::string::npos, "reproduce report clean");
  expect(run("reproduce --n 3 --p 2 --budget 100") == 3, "reproduce with small budget exits 3");

  if (failures == 0) {
    std::printf("cli tests passed\n");
    return 0;
  }
  std::printf("%d cli test(s) failed\n", failures);
  return 1;
}
