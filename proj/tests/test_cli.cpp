#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

namespace {

struct Run {
  int status = 0;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(PF_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* f = popen(cmd.c_str(), "r");
  REQUIRE(f);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), f)) > 0) r.out.append(buf.data(), n);
  const int st = pclose(f);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int count_lines(const std::string& s) { return int(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("cli params with automatic degree") {
  const Run r = run("params --modes 1000000 --fermions 10 --degree auto");
  CHECK(r.status == 0);
  CHECK(r.out.find("D = 1\n") != std::string::npos);
  CHECK(r.out.find("Q = 404609\n") != std::string::npos);
}

TEST_CASE("cli codebook") {
  const Run r = run("codebook --degree 1 --raw-g 1 --lprime 3");
  CHECK(r.status == 0);
  CHECK(count_lines(r.out) == 9);
  CHECK(r.out.rfind("100 100 100\n", 0) == 0);
  CHECK(run("codebook --degree 1 --raw-g 1 --lprime 3").out == r.out);
}

TEST_CASE("cli encode/decode round trip through files") {
  const auto dir = std::filesystem::temp_directory_path() / "polyfermion_cli_test";
  std::filesystem::create_directories(dir);
  const std::string code = "--modes 125 --raw-g 2 --degree 1 --lprime 13";
  {
    std::ofstream bk(dir / "bk.txt");
    std::string a(125, '0'), b(125, '0'), c(125, '0');
    b[5] = '1';
    c[7] = c[100] = '1';
    bk << a << "\n" << b << "\n" << c << "\n";
  }
  REQUIRE(run("encode " + code + " --input " + (dir / "bk.txt").string() + " -o " + (dir / "cw.txt").string()).status ==
          0);
  REQUIRE(run("decode " + code + " --input " + (dir / "cw.txt").string() + " -o " + (dir / "back.txt").string())
              .status == 0);
  CHECK(slurp(dir / "back.txt") == slurp(dir / "bk.txt"));
  REQUIRE(run("encode " + code + " --hex --input " + (dir / "bk.txt").string() + " -o " + (dir / "cwx.txt").string())
              .status == 0);
  REQUIRE(run("decode " + code + " --input " + (dir / "cwx.txt").string() + " -o " + (dir / "backx.txt").string())
              .status == 0);
  CHECK(slurp(dir / "backx.txt") == slurp(dir / "bk.txt"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("cli programs round trip and simulate") {
  const auto dir = std::filesystem::temp_directory_path() / "polyfermion_cli_prog";
  std::filesystem::create_directories(dir);
  const std::string prog = (dir / "p.prog").string();
  REQUIRE(run("synth-parity --size 3 -o " + prog).status == 0);
  const Run sim = run("simulate --program " + prog + " --basis 3");
  CHECK(sim.status == 0);
  CHECK(sim.out.find("3,-1") != std::string::npos);
  const Run routed = run("route --program " + prog);
  CHECK(routed.status == 0);
  CHECK(routed.out.find("swap") != std::string::npos);
  CHECK(run("synth-mcphase --n 2").status == 0);
  CHECK(run("synth-hop --modes 4 --raw-g 4 --degree 0 --i 0 --j 2 --phi 0.5").status == 0);
  CHECK(run("synth-term --modes 9 --raw-g 1 --degree 1 --pauli \"+1 Z{3}\" --theta 0.25").status == 0);
  std::filesystem::remove_all(dir);
}

TEST_CASE("cli Hamiltonian bundle") {
  const auto dir = std::filesystem::temp_directory_path() / "polyfermion_cli_ham";
  std::filesystem::create_directories(dir);
  {
    std::ofstream h(dir / "h.txt");
    h << "1.0 : 0^ 1\n1.0 : 1^ 0\n0.5 : 2^ 2\n";
  }
  const Run r = run("synth-term --modes 9 --raw-g 1 --degree 1 --audit --hamiltonian " + (dir / "h.txt").string() +
                    " --out-dir " + dir.string());
  CHECK(r.status == 0);
  CHECK(r.out.find("# lambda = ") != std::string::npos);
  CHECK(std::filesystem::exists(dir / "term_0.prog"));
  {
    std::ofstream h(dir / "bad.txt");
    h << "1.0 : 0^ 1\n";
  }
  CHECK(run("synth-term --modes 9 --raw-g 1 --degree 1 --audit --hamiltonian " + (dir / "bad.txt").string()).status !=
        0);
  std::filesystem::remove_all(dir);
}

TEST_CASE("cli scans are deterministic across worker counts") {
  const Run a = run("scan-hermite --kind majority --from 3 --to 31 --jobs 1");
  const Run b = run("scan-hermite --kind majority --from 3 --to 31 --jobs 3");
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
  CHECK(count_lines(a.out) == 1 + 15);
  const Run t = run("scan-threshold --lmax 11");
  CHECK(t.out == "G,L,max_k\n1,3,0\n2,5,1\n3,7,0\n4,9,0\n5,11,1\n");
}

TEST_CASE("cli estimate, compare and config") {
  const auto dir = std::filesystem::temp_directory_path() / "polyfermion_cli_cfg";
  std::filesystem::create_directories(dir);
  {
    std::ofstream c(dir / "c.cfg");
    c << "# constants\ncost_c = 4\n";
  }
  const Run e = run("estimate --modes 100000 --fermions 4 --lambda 10 --time 1 --epsilon 0.01 --config " +
                    (dir / "c.cfg").string());
  CHECK(e.status == 0);
  CHECK(e.out.find("rotations = 40000\n") != std::string::npos);
  const Run e2 = run("estimate --modes 100000 --fermions 4 --lambda 10 --time 1 --epsilon 0.01 --config " +
                     (dir / "c.cfg").string() + " --set cost_c=2");
  CHECK(e2.out.find("rotations = 20000\n") != std::string::npos);
  const Run c = run("compare --modes 118328 --fermions 10 --csv");
  CHECK(c.status == 0);
  CHECK(c.out.find("degree-1,118327,") != std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST_CASE("cli errors give a nonzero status") {
  CHECK(run("frobnicate").status != 0);
  CHECK(run("params --modes 10").status != 0);
  CHECK(run("simulate --program /nonexistent/file").status != 0);
  CHECK(run("decode --modes 9 --raw-g 1 --degree 1 --input /nonexistent").status != 0);
}
