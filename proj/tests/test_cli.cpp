#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args, const std::string& env = "",
                  bool merge_stderr = false) {
  std::string cmd;
  if (!env.empty()) cmd += env + " ";
  cmd += std::string(BIGEO_CLI_PATH) + " " + args;
  cmd += merge_stderr ? " 2>&1" : " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult res;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, n);
  int status = pclose(pipe);
  res.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("default table matches the committed golden file byte for byte") {
  const std::string golden = read_file(std::string(BIGEO_GOLDEN_DIR) + "/approx_table.csv");
  auto res = run_cli("table");
  CHECK(res.code == 0);
  CHECK(res.out == golden);

  // The --out path produces the identical bytes.
  const std::string tmp = "cli_table_out.csv";
  auto res2 = run_cli("table --out " + tmp);
  CHECK(res2.code == 0);
  CHECK(res2.out.empty());
  CHECK(read_file(tmp) == golden);
  std::remove(tmp.c_str());
}

TEST_CASE("table accepts a custom function and grid") {
  auto res = run_cli("table --fn 'exp(x)' --base 1 --from 0.5 --to 2 --step 0.5");
  CHECK(res.code == 0);
  // For exp the tangent line and the order-1 exponential approximation agree:
  // L(x) = e + (x-1)e and E(x) = e * x.
  CHECK(res.out ==
        "x,f,L,E\n"
        "0.500000,1.648721,1.359141,1.359141\n"
        "1.000000,2.718282,2.718282,2.718282\n"
        "1.500000,4.481689,4.077423,4.077423\n"
        "2.000000,7.389056,5.436564,5.436564\n");
}

TEST_CASE("gderiv prints value and exponent forms") {
  auto both = run_cli("gderiv 'sin(x)' --at 0.5235987755982988 --method both");
  CHECK(both.code == 0);
  CHECK(both.out.find("analytic: 2.476632 = e^0.9069\n") != std::string::npos);
  CHECK(both.out.find("numeric: 2.476632 = e^0.9069\n") != std::string::npos);
  CHECK(both.out.find("discrepancy: ") != std::string::npos);

  auto pow7 = run_cli("gderiv 'x^7' --at 3");
  CHECK(pow7.code == 0);
  CHECK(pow7.out == "analytic: 1096.633158 = e^7\n");

  // Above e^20 only the exponent form is printed.
  auto big = run_cli("gderiv 'exp(x)' --at 30");
  CHECK(big.code == 0);
  CHECK(big.out == "analytic: e^30\n");

  auto second = run_cli("gderiv 'x^(ln(x))' --at 2 --order 2 --method both");
  CHECK(second.code == 0);
  CHECK(second.out.find("analytic: 7.389056 = e^2\n") != std::string::npos);
}

TEST_CASE("gderiv error paths use the exit-code contract") {
  auto bad = run_cli("gderiv 'ln(' --at 1", "", true);
  CHECK(bad.code == 2);
  CHECK(bad.out.find("column 4") != std::string::npos);

  auto crossing = run_cli("gderiv 'x-2.0000001' --at 2 --method numeric");
  CHECK(crossing.code == 3);

  auto atzero = run_cli("gderiv 'sin(x)' --at 0");
  CHECK(atzero.code == 3);
}

TEST_CASE("BIGEO_TOL controls the both-method agreement gate") {
  auto strict = run_cli("gderiv 'sin(x)' --at 0.7 --method both", "BIGEO_TOL=1e-30");
  CHECK(strict.code == 3);
  auto loose = run_cli("gderiv 'sin(x)' --at 0.7 --method both", "BIGEO_TOL=10");
  CHECK(loose.code == 0);
}

TEST_CASE("ops evaluates geometric arithmetic") {
  auto quot = run_cli("ops '8 /g 7.389056099'");
  CHECK(quot.code == 0);
  CHECK(quot.out == "2.828427 = e^1.03972\n");

  // *g binds tighter than +g.
  auto prec = run_cli("ops '2 +g 3 *g 9'");
  CHECK(prec.code == 0);
  char expected[64];
  std::snprintf(expected, sizeof expected, "%.6f",
                std::exp(std::log(2.0) + std::log(3.0) * std::log(9.0)));
  CHECK(prec.out.substr(0, prec.out.find(' ')) == expected);

  auto paren = run_cli("ops '(2 +g 3) *g 9'");
  CHECK(paren.code == 0);
  std::snprintf(expected, sizeof expected, "%.6f",
                std::exp(std::log(6.0) * std::log(9.0)));
  CHECK(paren.out.substr(0, paren.out.find(' ')) == expected);

  CHECK(run_cli("ops '-1'").code == 3);       // literals must be positive
  CHECK(run_cli("ops '8 /g 1'").code == 3);   // geometric division by zero
  CHECK(run_cli("ops '8 +g'").code == 2);
  CHECK(run_cli("ops 'foo'").code == 2);
}

TEST_CASE("taylor subcommand reports the truncated product") {
  auto res = run_cli("taylor 'exp(x)' --base 1 --order 4 --at 2.718281828459045");
  CHECK(res.code == 0);
  CHECK(res.out.rfind("approx: 15.004248", 0) == 0);

  auto base_pt = run_cli("taylor 'sin(x)' --base 0.5235987755982988 --order 1 --at 0.4");
  CHECK(base_pt.code == 0);
  CHECK(base_pt.out.rfind("approx: 0.391668", 0) == 0);

  CHECK(run_cli("taylor 'sin(x)' --base 3.5 --order 1 --at 1").code == 3);
}

TEST_CASE("diff subcommand computes forward and backward differences") {
  auto fwd = run_cli("diff 'x' --base 1 --step 2.718281828459045 --order 1");
  CHECK(fwd.code == 0);
  CHECK(fwd.out == "forward difference of order 1: 2.718282 = e^1\n");

  auto bwd = run_cli("diff 'x' --base 1 --step 2.718281828459045 --order 1 --method backward");
  CHECK(bwd.code == 0);
  CHECK(bwd.out == "backward difference of order 1: 2.718282 = e^1\n");

  CHECK(run_cli("diff 'x' --base 1 --step 1 --order 1").code == 3);
  CHECK(run_cli("diff 'x' --base 1 --step 2 --order -1").code == 3);
}

TEST_CASE("triplet prints the exponent forms") {
  auto m2 = run_cli("triplet --m 2");
  CHECK(m2.code == 0);
  CHECK(m2.out == "e^5, e^3, e^4\n");

  auto m5 = run_cli("triplet --m 5");
  CHECK(m5.code == 0);
  CHECK(m5.out == "e^26, e^24, e^10\n");

  CHECK(run_cli("triplet --m 1").code == 3);
}

TEST_CASE("elasticity prints the fixed report line") {
  auto res = run_cli("elasticity '100*x^(-2)' --at 10");
  CHECK(res.code == 0);
  CHECK(res.out == "E_p=-2.000000, resiliency=0.135335\n");

  CHECK(run_cli("elasticity 'x-2' --at 2").code == 3);
  CHECK(run_cli("elasticity '100*x^(-2)' --at -1").code == 3);
}

TEST_CASE("usage errors exit with code 2 and help with 0") {
  CHECK(run_cli("").code == 2);
  CHECK(run_cli("nosuchcmd").code == 2);
  CHECK(run_cli("table --bogus 1").code == 2);
  CHECK(run_cli("gderiv 'x'").code == 2);  // --at is required
  CHECK(run_cli("--help").code == 0);
  CHECK(run_cli("table --help").code == 0);
}

TEST_CASE("unwritable output path exits with code 4") {
  auto res = run_cli("table --out /nonexistent-dir/table.csv", "", true);
  CHECK(res.code == 4);
  CHECK(res.out.find("io error") != std::string::npos);
}
