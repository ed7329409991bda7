#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code;
  std::string output;
};

const std::string& cli_path() {
  static const std::string path = [] {
    const char* env = std::getenv("MCDM_CLI_BIN");
    REQUIRE_MESSAGE(env != nullptr, "MCDM_CLI_BIN must point at the mcdm binary");
    return std::string(env);
  }();
  return path;
}

// Run the CLI with stderr folded into the captured stream.
RunResult run(const std::string& args) {
  const std::string cmd = cli_path() + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string output;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) output.append(buf.data(), got);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, output};
}

fs::path temp_file(const std::string& name) {
  return fs::temp_directory_path() / ("mcdm_cli_test_" + name);
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("info reports size, input length and divergence") {
  const RunResult r = run("info --n 4 --kind cc --m 2 --p1 0.5 --json");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.output);
  CHECK(j["M"] == "6");
  CHECK(j["k"] == 2);
  CHECK(j["rate"] == 0.5);
  CHECK(j["div_base"].get<double>() == doctest::Approx(0.353759374819711).epsilon(1e-9));
}

TEST_CASE("info handles explicit weight sets and ranges") {
  const RunResult set = run("info --n 4 --kind set --weights 1,3 --p1 0.5 --json");
  REQUIRE(set.exit_code == 0);
  const auto js = nlohmann::json::parse(set.output);
  CHECK(js["M"] == "8");
  CHECK(js["k"] == 3);

  const RunResult range = run("info --n 4 --kind range --m-low 0 --m-high 4 --p1 0.5 --json");
  REQUIRE(range.exit_code == 0);
  const auto jr = nlohmann::json::parse(range.output);
  CHECK(jr["div_base"].get<double>() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("optimize finds the divergence minimizer") {
  const RunResult cc = run("optimize --n 4 --kind cc --p1 0.5 --json");
  REQUIRE(cc.exit_code == 0);
  CHECK(nlohmann::json::parse(cc.output)["m_star"] == 2);

  const RunResult twoc = run("optimize --n 4 --kind 2c --p1 0.5 --json");
  REQUIRE(twoc.exit_code == 0);
  CHECK(nlohmann::json::parse(twoc.output)["m_star"] == 2);

  const RunResult opt = run("optimize --n 20 --kind opt --p1 0.422 --json");
  REQUIRE(opt.exit_code == 0);
  const auto j = nlohmann::json::parse(opt.output);
  CHECK(j["m_star"] == 12);
  CHECK(j["k"] == 19);
}

TEST_CASE("encode and decode round-trip a file") {
  const fs::path in = temp_file("enc_in.txt"), mid = temp_file("enc_mid.txt"),
                 back = temp_file("enc_back.txt");
  write_file(in, "00\n");
  REQUIRE(run("encode --n 4 --kind cc --m 2 --in " + in.string() + " --out " + mid.string())
              .exit_code == 0);
  CHECK(read_file(mid) == "0011\n");
  REQUIRE(run("decode --n 4 --kind cc --m 2 --in " + mid.string() + " --out " + back.string())
              .exit_code == 0);
  CHECK(read_file(back) == "00\n");
}

TEST_CASE("decode maps the worked example") {
  const fs::path in = temp_file("dec_in.txt"), out = temp_file("dec_out.txt");
  write_file(in, "1001\n");
  REQUIRE(run("decode --n 4 --kind cc --m 2 --in " + in.string() + " --out " + out.string())
              .exit_code == 0);
  CHECK(read_file(out) == "10\n");
}

TEST_CASE("strict decode rejects unused codewords with the block index") {
  const fs::path in = temp_file("strict_in.txt"), out = temp_file("strict_out.txt");
  write_file(in, "0110\n");
  const RunResult r =
      run("decode --n 4 --kind cc --m 2 --in " + in.string() + " --out " + out.string());
  CHECK(r.exit_code == 3);
  CHECK(r.output.find("block 0: codeword not in actual codebook") != std::string::npos);

  const RunResult relaxed = run("decode --n 4 --kind cc --m 2 --no-strict --in " + in.string() +
                                " --out " + out.string());
  CHECK(relaxed.exit_code == 0);
  CHECK(read_file(out) == "10\n");
}

TEST_CASE("second bad block is reported by its index") {
  const fs::path in = temp_file("block_in.txt"), out = temp_file("block_out.txt");
  write_file(in, "0011 0110\n");
  const RunResult r =
      run("decode --n 4 --kind cc --m 2 --in " + in.string() + " --out " + out.string());
  CHECK(r.exit_code == 3);
  CHECK(r.output.find("block 1: codeword not in actual codebook") != std::string::npos);
}

TEST_CASE("multi-block packed round trip") {
  const fs::path in = temp_file("packed_in.bin"), mid = temp_file("packed_mid.bin"),
                 back = temp_file("packed_back.bin");
  // 4 blocks of k = 3 bits for the {1,3}-out-of-4 book
  {
    std::ofstream raw(in, std::ios::binary);
    const std::string bits = "000101110111";  // 12 bits
    std::uint64_t count = bits.size();
    for (int i = 0; i < 8; ++i) {
      raw.put(static_cast<char>(count & 0xff));
      count >>= 8;
    }
    std::string body((bits.size() + 7) / 8, '\0');
    for (std::size_t i = 0; i < bits.size(); ++i)
      if (bits[i] == '1') body[i / 8] = static_cast<char>(body[i / 8] | 1 << (7 - i % 8));
    raw << body;
  }
  const std::string spec = "--n 4 --kind set --weights 1,3 --format packed ";
  REQUIRE(run("encode " + spec + "--in " + in.string() + " --out " + mid.string()).exit_code == 0);
  REQUIRE(run("decode " + spec + "--in " + mid.string() + " --out " + back.string()).exit_code == 0);
  CHECK(read_file(back) == read_file(in));
}

TEST_CASE("random contents round-trip through the CLI block-wise") {
  std::mt19937_64 rng(555);
  const std::string spec = "--n 10 --kind set --weights 0,3,8 ";  // size 166, k = 7
  for (const std::string format : {"ascii", "packed"}) {
    const fs::path in = temp_file("rt_in_" + format), mid = temp_file("rt_mid_" + format),
                   back = temp_file("rt_back_" + format);
    const std::size_t blocks = 1 + rng() % 40;
    std::string bits;
    for (std::size_t i = 0; i < blocks * 7; ++i) bits.push_back(rng() & 1 ? '1' : '0');
    if (format == "ascii") {
      write_file(in, bits + "\n");
    } else {
      std::ofstream raw(in, std::ios::binary);
      std::uint64_t count = bits.size();
      for (int i = 0; i < 8; ++i) {
        raw.put(static_cast<char>(count & 0xff));
        count >>= 8;
      }
      std::string body((bits.size() + 7) / 8, '\0');
      for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i] == '1') body[i / 8] = static_cast<char>(body[i / 8] | 1 << (7 - i % 8));
      raw << body;
    }
    REQUIRE(run("encode " + spec + "--format " + format + " --in " + in.string() + " --out " +
                mid.string()).exit_code == 0);
    REQUIRE(run("decode " + spec + "--format " + format + " --in " + mid.string() + " --out " +
                back.string()).exit_code == 0);
    CHECK(read_file(back) == read_file(in));
  }
}

TEST_CASE("length that is not a multiple of k is a data error") {
  const fs::path in = temp_file("len_in.txt"), out = temp_file("len_out.txt");
  write_file(in, "000\n");
  const RunResult r =
      run("encode --n 4 --kind cc --m 2 --in " + in.string() + " --out " + out.string());
  CHECK(r.exit_code == 3);
  CHECK(r.output.find("multiple of k") != std::string::npos);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run("info --n 4 --kind bogus --m 2").exit_code == 2);
  CHECK(run("optimize --n 4 --p1 0.5").exit_code == 2);   // missing --kind
  CHECK(run("info --n 4 --kind cc").exit_code == 2);      // missing --m
  CHECK(run("nonsense").exit_code == 2);
}

TEST_CASE("analyze writes a stable CSV") {
  const fs::path a = temp_file("sweep_a.csv"), b = temp_file("sweep_b.csv");
  const std::string cmd = "analyze --p1 0.422 --n 4,10:20:10 --kinds cc,opt --samples 500 "
                          "--seed 7 --workers 2 --budget-k 8 --out ";
  REQUIRE(run(cmd + a.string()).exit_code == 0);
  REQUIRE(run(cmd + b.string()).exit_code == 0);
  const std::string csv = read_file(a);
  CHECK(csv == read_file(b));
  CHECK(csv.rfind("n,kind,m_star,k,rate,div_base,div_actual,pc1,method,samples,seed,workers\n",
                  0) == 0);
  CHECK(csv.find("monte-carlo") != std::string::npos);  // k > 8 rows fall back to sampling
  CHECK(csv.find("exact") != std::string::npos);
  // one row per (n, kind): header + 6 lines
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);
}
