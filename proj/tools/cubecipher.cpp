// cubecipher: encrypt, decrypt and evaluate grayscale images with the
// block-rotation + AES cipher.
//
// Exit codes: 0 success, 1 usage, 2 I/O, 3 crypto (wrong key / corrupt payload).

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#ifdef CUBECIPHER_CLI11_PACKAGE
#include <CLI/CLI.hpp>
#else
#include <CLI11.hpp>
#endif

#include "cubecipher/cubecipher.hpp"
#include "cubecipher/report.hpp"

namespace fs = std::filesystem;
using namespace cubecipher;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitCrypto = 3;
constexpr const char* kKeyEnv = "CUBECIPHER_KEY";

struct Failure {
  int code;
  std::string message;
};

struct Options {
  fs::path input;
  fs::path out;
  std::optional<std::string> key_flag;
  std::size_t block_size = 3;
  std::vector<std::size_t> cases{2, 3, 5, 6};
  std::uint64_t seed = 1;
  std::size_t pairs = kDefaultPairCount;
  std::string format = "json";
  bool dump_pairs = false;
  fs::path dump_dir;
};

SecretKey resolve_key(const Options& opt) {
  const char* env = std::getenv(kKeyEnv);
  if (opt.key_flag && env) {
    throw Failure{kExitUsage, std::string("key given both by --key and ") + kKeyEnv + "; use exactly one"};
  }
  const std::optional<std::string> key = opt.key_flag ? opt.key_flag : (env ? std::optional<std::string>(env) : std::nullopt);
  if (!key) throw Failure{kExitUsage, std::string("no key: pass --key or set ") + kKeyEnv};
  if (key->empty()) throw Failure{kExitUsage, "key must not be empty"};
  return SecretKey(*key);
}

Image load_image(const fs::path& path) {
  try {
    return read_image(path);
  } catch (const Error& e) {
    throw Failure{kExitIo, path.string() + ": " + e.what()};
  }
}

CipherImage load_cipher(const fs::path& path) {
  std::vector<std::uint8_t> bytes;
  try {
    bytes = read_file(path);
  } catch (const IoError& e) {
    throw Failure{kExitIo, e.what()};
  }
  try {
    return parse_cipher_image(bytes);
  } catch (const Error& e) {
    throw Failure{kExitCrypto, path.string() + ": " + e.what()};
  }
}

bool is_cipher_file(const fs::path& path) {
  try {
    const auto bytes = read_file(path);
    return bytes.size() >= 4 && std::equal(kCipherMagic.begin(), kCipherMagic.end(), bytes.begin());
  } catch (const IoError& e) {
    throw Failure{kExitIo, e.what()};
  }
}

template <typename F>
void write_output(F&& write) {
  try {
    write();
  } catch (const IoError& e) {
    throw Failure{kExitIo, e.what()};
  }
}

std::string serialize_report(const MetricsReport& r, const std::string& format) {
  return format == "csv" ? to_csv(r) : to_json(r).dump(2) + "\n";
}

void dump_pair_samples(const fs::path& dir, const std::string& prefix, const Image& img, const Options& opt) {
  for (Orientation o : kAllOrientations) {
    const PairSample s = sample_pairs(img, o, opt.pairs, opt.seed);
    write_output([&] { write_file_atomic(dir / (prefix + std::string(orientation_name(o)) + "_pairs.csv"), pairs_csv(s)); });
  }
}

void ensure_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw Failure{kExitIo, "cannot create directory " + dir.string()};
}

int cmd_encrypt(const Options& opt) {
  const SecretKey key = resolve_key(opt);
  const Image img = load_image(opt.input);
  const CaseConfig cfg = make_case_config(img, opt.block_size);
  if (cfg.conformed_width != img.width() || cfg.conformed_height != img.height()) {
    std::cerr << "note: padded " << img.width() << "x" << img.height() << " to " << cfg.conformed_width << "x"
              << cfg.conformed_height << " (width x height) by edge replication\n";
  }
  const CipherImage c = encrypt(img, key, opt.block_size);
  write_output([&] { write_file_atomic(opt.out, serialize(c)); });
  std::cout << "conformed " << cfg.conformed_width << "x" << cfg.conformed_height << ", block size "
            << opt.block_size << ", " << cfg.face_grid.cols << "x" << cfg.face_grid.rows
            << " blocks per face\n";
  return 0;
}

int cmd_decrypt(const Options& opt) {
  const SecretKey key = resolve_key(opt);
  const CipherImage c = load_cipher(opt.input);
  Image img;
  try {
    img = decrypt(c, key);
  } catch (const Error& e) {
    throw Failure{kExitCrypto, std::string("decryption failed: ") + e.what()};
  }
  write_output([&] { write_image(opt.out, img); });
  return 0;
}

int cmd_experiment(const Options& opt) {
  const SecretKey key = resolve_key(opt);
  const Image img = load_image(opt.input);
  ensure_directory(opt.out);
  for (std::size_t b : opt.cases) {
    const ExperimentBundle bundle = run_experiment(img, key, b);
    MetricsReport r = report(bundle, opt.pairs, opt.seed);
    r.differential = one_pixel_differential(img, key, b, opt.seed);

    const std::string stem = "case_b" + std::to_string(b) + "_";
    write_output([&] {
      write_image(opt.out / (stem + "rotated.pgm"), bundle.rotated);
      write_file_atomic(opt.out / (stem + "aes_only.mcae"), serialize(bundle.aes_only));
      write_file_atomic(opt.out / (stem + "integrated.mcae"), serialize(bundle.integrated));
      write_file_atomic(opt.out / (stem + "report." + opt.format), serialize_report(r, opt.format));
    });
    if (opt.dump_pairs) {
      dump_pair_samples(opt.out, stem + "A_", bundle.original, opt);
      dump_pair_samples(opt.out, stem + "B_", cipher_as_image(bundle.aes_only), opt);
      dump_pair_samples(opt.out, stem + "C_", bundle.rotated, opt);
      dump_pair_samples(opt.out, stem + "D_", cipher_as_image(bundle.integrated), opt);
    }
    std::cout << "case block " << b << ": " << bundle.case_config.blocks_across << "x"
              << bundle.case_config.blocks_down << " blocks, conformed " << bundle.case_config.conformed_width
              << "x" << bundle.case_config.conformed_height << "\n";
  }
  return 0;
}

int cmd_analyze(const Options& opt) {
  const bool cipher = is_cipher_file(opt.input);
  const Image img = cipher ? cipher_as_image(load_cipher(opt.input)) : load_image(opt.input);
  MetricsReport r;
  r.seed = opt.seed;
  r.pairs = opt.pairs;
  r.images.push_back(measure(img, opt.input.filename().string(), cipher ? "ciphertext" : "image", opt.pairs, opt.seed));
  const std::string text = serialize_report(r, opt.format);
  if (opt.out.empty()) {
    std::cout << text;
  } else {
    write_output([&] { write_file_atomic(opt.out, text); });
  }
  if (!opt.dump_dir.empty()) {
    ensure_directory(opt.dump_dir);
    dump_pair_samples(opt.dump_dir, "", img, opt);
  }
  return 0;
}

void add_key_option(CLI::App* cmd, Options& opt) {
  cmd->add_option("--key", opt.key_flag, std::string("Passphrase (or set ") + kKeyEnv + ")");
}

void add_analysis_options(CLI::App* cmd, Options& opt) {
  cmd->add_option("--seed", opt.seed, "Seed for adjacent-pair sampling")->capture_default_str();
  cmd->add_option("--pairs", opt.pairs, "Adjacent pairs sampled per orientation")
      ->check(CLI::Range(std::size_t{2}, std::size_t{100000000}))
      ->capture_default_str();
  cmd->add_option("--format", opt.format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Block-rotation + AES image cipher and its statistical evaluation"};
  app.require_subcommand(1);
  Options opt;

  auto* enc = app.add_subcommand("encrypt", "Encrypt a PGM (or .raw + .dims) image into an MCAE file");
  enc->add_option("input", opt.input, "Input image")->required();
  enc->add_option("--out,-o", opt.out, "Output MCAE file")->required();
  add_key_option(enc, opt);
  enc->add_option("--block-size,-b", opt.block_size, "Block edge in pixels")
      ->check(CLI::Range(1, 16))
      ->capture_default_str();

  auto* dec = app.add_subcommand("decrypt", "Decrypt an MCAE file back to a PGM (or .raw) image");
  dec->add_option("input", opt.input, "Input MCAE file")->required();
  dec->add_option("--out,-o", opt.out, "Output image")->required();
  add_key_option(dec, opt);

  auto* exp = app.add_subcommand("experiment", "Run the AES-only / rotation / integrated comparison per block size");
  exp->add_option("input", opt.input, "Input image")->required();
  exp->add_option("--out,-o", opt.out, "Output directory")->required();
  add_key_option(exp, opt);
  exp->add_option("--cases", opt.cases, "Block sizes to run")
      ->delimiter(',')
      ->check(CLI::Range(1, 16))
      ->capture_default_str();
  exp->add_flag("--dump-pairs", opt.dump_pairs, "Also write sampled (x, y) pairs as CSV");
  add_analysis_options(exp, opt);

  auto* ana = app.add_subcommand("analyze", "Report histogram, correlation and entropy of one image or MCAE file");
  ana->add_option("input", opt.input, "Input image or MCAE file")->required();
  ana->add_option("--out,-o", opt.out, "Report file (default: stdout)");
  ana->add_option("--dump-pairs", opt.dump_dir, "Directory for sampled (x, y) pair CSVs");
  add_analysis_options(ana, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitUsage;
  }

  try {
    if (*enc) return cmd_encrypt(opt);
    if (*dec) return cmd_decrypt(opt);
    if (*exp) return cmd_experiment(opt);
    if (*ana) return cmd_analyze(opt);
  } catch (const Failure& f) {
    std::cerr << "cubecipher: " << f.message << "\n";
    return f.code;
  } catch (const CryptoError& e) {
    std::cerr << "cubecipher: " << e.what() << "\n";
    return kExitCrypto;
  } catch (const IoError& e) {
    std::cerr << "cubecipher: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    std::cerr << "cubecipher: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
