// Command-line front end: codebook inspection, m optimization, block-wise
// file encode/decode, and CSV sweeps.

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mcdm/analysis.hpp"
#include "mcdm/bitio.hpp"
#include "mcdm/coder.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

struct SpecArgs {
  int n = 0;
  std::string kind;
  int m = -1;
  int m_low = -1;
  int m_high = -1;
  std::vector<int> weights;
};

void add_spec_options(CLI::App& cmd, SpecArgs& args, bool allow_opt_kind) {
  cmd.add_option("--n", args.n, "codeword length in bits")->required();
  std::string kinds = allow_opt_kind ? "cc, 2c, opt, range, set" : "cc, 2c, range, set";
  cmd.add_option("--kind", args.kind, "codebook kind (" + kinds + ")")->required();
  cmd.add_option("--m", args.m, "weight parameter (cc: weight; 2c: upper weight; opt: max weight)");
  cmd.add_option("--m-low", args.m_low, "lowest weight (range kind)");
  cmd.add_option("--m-high", args.m_high, "highest weight (range kind)");
  cmd.add_option("--weights", args.weights, "comma-separated weights (set kind)")->delimiter(',');
}

mcdm::CodebookSpec build_spec(const SpecArgs& args) {
  const auto need_m = [&]() {
    if (args.m < 0) throw CLI::ValidationError("--m is required for kind " + args.kind);
    return args.m;
  };
  if (args.kind == "cc") return mcdm::make_cc(args.n, need_m());
  if (args.kind == "2c") return mcdm::make_2c(args.n, need_m());
  if (args.kind == "opt") return mcdm::make_range(args.n, 0, need_m());
  if (args.kind == "range") {
    if (args.m_low < 0 || args.m_high < 0)
      throw CLI::ValidationError("--m-low and --m-high are required for kind range");
    return mcdm::make_range(args.n, args.m_low, args.m_high);
  }
  if (args.kind == "set") {
    if (args.weights.empty())
      throw CLI::ValidationError("--weights is required for kind set");
    return mcdm::make_weight_set(args.n, args.weights);
  }
  throw CLI::ValidationError("unknown kind: " + args.kind);
}

// "4,8,10:30:5" -> {4, 8, 10, 15, 20, 25, 30}; a:b defaults to step 1.
std::vector<int> parse_n_list(const std::string& text) {
  std::vector<int> values;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (token.empty()) continue;
    const auto c1 = token.find(':');
    if (c1 == std::string::npos) {
      values.push_back(std::stoi(token));
      continue;
    }
    const auto c2 = token.find(':', c1 + 1);
    const int start = std::stoi(token.substr(0, c1));
    const int stop = std::stoi(token.substr(c1 + 1, c2 == std::string::npos
                                                        ? std::string::npos
                                                        : c2 - c1 - 1));
    const int step = c2 == std::string::npos ? 1 : std::stoi(token.substr(c2 + 1));
    if (step <= 0 || stop < start)
      throw CLI::ValidationError("bad range token '" + token + "' in --n");
    for (int v = start; v <= stop; v += step) values.push_back(v);
  }
  if (values.empty()) throw CLI::ValidationError("--n produced an empty list");
  return values;
}

std::vector<mcdm::DmKind> parse_kinds(const std::vector<std::string>& names) {
  std::vector<mcdm::DmKind> kinds;
  for (const std::string& name : names) {
    if (name == "cc") kinds.push_back(mcdm::DmKind::cc());
    else if (name == "2c") kinds.push_back(mcdm::DmKind::two_c());
    else if (name == "opt") kinds.push_back(mcdm::DmKind::opt());
    else throw CLI::ValidationError("unknown kind in --kinds: " + name);
  }
  if (kinds.empty()) throw CLI::ValidationError("--kinds produced an empty list");
  return kinds;
}

struct Field {
  std::string key;
  std::string value;
  bool numeric = false;  // JSON: emit as number when it round-trips
};

void print_report(const std::vector<Field>& fields, bool json) {
  if (json) {
    nlohmann::ordered_json j;
    for (const Field& f : fields) {
      if (f.numeric) {
        std::size_t pos = 0;
        const double d = std::stod(f.value, &pos);
        if (pos == f.value.size() && std::isfinite(d)) {
          j[f.key] = d;
          continue;
        }
      }
      j[f.key] = f.value;  // big counts and infinities stay strings
    }
    std::cout << j.dump() << "\n";
  } else {
    for (const Field& f : fields) std::cout << f.key << ": " << f.value << "\n";
  }
}

int cmd_info(const SpecArgs& args, double p1, bool json) {
  const mcdm::CodebookSpec spec = build_spec(args);
  const mcdm::TargetDistribution target(p1);
  std::ostringstream weights;
  for (std::size_t i = 0; i < spec.weights().size(); ++i)
    weights << (i ? "," : "") << spec.weights()[i];
  print_report(
      {
          {"n", std::to_string(spec.n()), true},
          {"weights", weights.str(), false},
          {"M", spec.size().get_str(), false},
          {"k", std::to_string(spec.input_length()), true},
          {"rate", fmt_double(static_cast<double>(spec.input_length()) / spec.n()), true},
          {"div_base", fmt_double(mcdm::divergence_base(spec, target)), true},
      },
      json);
  return 0;
}

int cmd_optimize(int n, const std::string& kind, double p1, bool json) {
  mcdm::DmFamily family;
  if (kind == "cc") family = mcdm::DmFamily::CC;
  else if (kind == "2c") family = mcdm::DmFamily::TwoC;
  else if (kind == "opt") family = mcdm::DmFamily::Opt;
  else throw CLI::ValidationError("optimize supports kinds cc, 2c, opt");
  const mcdm::OptimizeResult opt = mcdm::optimize_m(family, n, mcdm::TargetDistribution(p1));
  std::ostringstream weights;
  for (std::size_t i = 0; i < opt.spec.weights().size(); ++i)
    weights << (i ? "," : "") << opt.spec.weights()[i];
  print_report(
      {
          {"n", std::to_string(n), true},
          {"kind", kind, false},
          {"m_star", std::to_string(opt.m_star), true},
          {"weights", weights.str(), false},
          {"M", opt.spec.size().get_str(), false},
          {"k", std::to_string(opt.spec.input_length()), true},
          {"rate", fmt_double(static_cast<double>(opt.spec.input_length()) / n), true},
          {"div_base", fmt_double(opt.div_base), true},
      },
      json);
  return 0;
}

int cmd_encode(const SpecArgs& args, const std::string& in_path, const std::string& out_path,
               const std::string& format_name) {
  const mcdm::CodebookSpec spec = build_spec(args);
  const mcdm::BitFileFormat format = mcdm::parse_bit_format(format_name);
  const mcdm::BitVector input = mcdm::read_bit_file(in_path, format);
  const std::size_t k = static_cast<std::size_t>(spec.input_length());
  if (k == 0 && !input.empty())
    throw mcdm::DataError("codebook has input length 0; only an empty input can be encoded");
  if (k != 0 && input.size() % k != 0)
    throw mcdm::DataError("input holds " + std::to_string(input.size()) +
                          " bits, not a multiple of k = " + std::to_string(k));
  const std::size_t blocks = k == 0 ? 0 : input.size() / k;
  mcdm::Encoder encoder(spec);
  mcdm::BitVector block(k), codeword, output;
  for (std::size_t b = 0; b < blocks; ++b) {
    for (std::size_t i = 0; i < k; ++i) block.set(i, input[b * k + i]);
    try {
      encoder.encode_into(block, codeword);
    } catch (const std::exception& e) {
      throw mcdm::DataError("block " + std::to_string(b) + ": " + e.what());
    }
    for (int bit : codeword) output.push_back(bit);
  }
  mcdm::write_bit_file(out_path, output, format);
  return 0;
}

int cmd_decode(const SpecArgs& args, const std::string& in_path, const std::string& out_path,
               const std::string& format_name, bool strict) {
  const mcdm::CodebookSpec spec = build_spec(args);
  const mcdm::BitFileFormat format = mcdm::parse_bit_format(format_name);
  const mcdm::BitVector input = mcdm::read_bit_file(in_path, format);
  const std::size_t n = static_cast<std::size_t>(spec.n());
  if (input.size() % n != 0)
    throw mcdm::DataError("input holds " + std::to_string(input.size()) +
                          " bits, not a multiple of n = " + std::to_string(n));
  const std::size_t blocks = input.size() / n;
  mcdm::Decoder decoder(spec, strict);
  mcdm::BitVector codeword(n), data, output;
  for (std::size_t b = 0; b < blocks; ++b) {
    for (std::size_t i = 0; i < n; ++i) codeword.set(i, input[b * n + i]);
    try {
      decoder.decode_into(codeword, data);
    } catch (const std::exception& e) {
      throw mcdm::DataError("block " + std::to_string(b) + ": " + e.what());
    }
    for (int bit : data) output.push_back(bit);
  }
  mcdm::write_bit_file(out_path, output, format);
  return 0;
}

void write_csv(std::ostream& out, const std::vector<mcdm::AnalysisRow>& rows) {
  out << "n,kind,m_star,k,rate,div_base,div_actual,pc1,method,samples,seed,workers\n";
  for (const mcdm::AnalysisRow& row : rows) {
    out << row.n << ',' << row.kind << ',' << row.m_star << ',' << row.k << ','
        << fmt_double(row.rate) << ',' << fmt_double(row.div_base) << ','
        << fmt_double(row.div_actual) << ',' << fmt_double(row.pc1) << ',' << row.method << ','
        << row.samples << ',' << row.seed << ',' << row.workers << "\n";
  }
}

int cmd_analyze(const std::vector<std::string>& kind_names, const std::string& n_text, double p1,
                const mcdm::McConfig& config, const std::string& out_path) {
  const std::vector<mcdm::AnalysisRow> rows =
      mcdm::sweep(parse_kinds(kind_names), parse_n_list(n_text),
                  mcdm::TargetDistribution(p1), config);
  if (out_path.empty()) {
    write_csv(std::cout, rows);
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw mcdm::DataError("cannot open " + out_path + " for writing");
    write_csv(out, rows);
    out.flush();
    if (!out) throw mcdm::DataError("write to " + out_path + " failed");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distribution matching over multi-composition codebooks"};
  app.require_subcommand(1);

  SpecArgs info_args;
  double info_p1 = 0.5;
  bool info_json = false;
  CLI::App* info = app.add_subcommand("info", "report codebook size, input length and divergence");
  add_spec_options(*info, info_args, true);
  info->add_option("--p1", info_p1, "target probability of symbol 1")->check(CLI::Range(0.0, 1.0));
  info->add_flag("--json", info_json, "machine-readable output");

  int opt_n = 0;
  std::string opt_kind;
  double opt_p1 = 0.5;
  bool opt_json = false;
  CLI::App* optimize = app.add_subcommand("optimize", "find the divergence-minimizing weight parameter");
  optimize->add_option("--n", opt_n, "codeword length in bits")->required();
  optimize->add_option("--kind", opt_kind, "codebook family (cc, 2c, opt)")->required();
  optimize->add_option("--p1", opt_p1, "target probability of symbol 1")->required();
  optimize->add_flag("--json", opt_json, "machine-readable output");

  SpecArgs enc_args;
  std::string enc_in, enc_out, enc_format = "ascii";
  CLI::App* enc = app.add_subcommand("encode", "encode a bit file block-wise into codewords");
  add_spec_options(*enc, enc_args, true);
  enc->add_option("--in", enc_in, "input bit file")->required();
  enc->add_option("--out", enc_out, "output bit file")->required();
  enc->add_option("--format", enc_format, "file format (ascii, packed)");

  SpecArgs dec_args;
  std::string dec_in, dec_out, dec_format = "ascii";
  bool dec_strict = true;
  CLI::App* dec = app.add_subcommand("decode", "decode a codeword file block-wise back to data bits");
  add_spec_options(*dec, dec_args, true);
  dec->add_option("--in", dec_in, "input bit file")->required();
  dec->add_option("--out", dec_out, "output bit file")->required();
  dec->add_option("--format", dec_format, "file format (ascii, packed)");
  dec->add_flag("--strict,!--no-strict", dec_strict,
                "reject codewords the encoder never emits (default on)");

  std::vector<std::string> ana_kinds{"cc", "2c", "opt"};
  std::string ana_n, ana_out;
  double ana_p1 = 0.5;
  mcdm::McConfig ana_config;
  CLI::App* ana = app.add_subcommand("analyze", "sweep (n, kind) rows into a CSV");
  ana->add_option("--n", ana_n, "lengths, e.g. 4,8 or 10:200:10")->required();
  ana->add_option("--kinds", ana_kinds, "comma-separated families (cc, 2c, opt)")->delimiter(',');
  ana->add_option("--p1", ana_p1, "target probability of symbol 1")->required();
  ana->add_option("--samples", ana_config.samples, "Monte-Carlo sample count");
  ana->add_option("--seed", ana_config.seed, "Monte-Carlo seed (recorded in output)");
  ana->add_option("--workers", ana_config.workers,
                  "Monte-Carlo worker streams (0 = machine default, recorded in output)");
  ana->add_option("--budget-k", ana_config.budget_k, "largest k enumerated exactly");
  ana->add_option("--out", ana_out, "CSV path (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (info->parsed()) return cmd_info(info_args, info_p1, info_json);
    if (optimize->parsed()) return cmd_optimize(opt_n, opt_kind, opt_p1, opt_json);
    if (enc->parsed()) return cmd_encode(enc_args, enc_in, enc_out, enc_format);
    if (dec->parsed()) return cmd_decode(dec_args, dec_in, dec_out, dec_format, dec_strict);
    if (ana->parsed()) return cmd_analyze(ana_kinds, ana_n, ana_p1, ana_config, ana_out);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return 0;
}
