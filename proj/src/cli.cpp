#include "ccstego/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

#include "ccstego/analysis.hpp"
#include "ccstego/chaos.hpp"
#include "ccstego/codec.hpp"
#include "ccstego/errors.hpp"
#include "ccstego/imagery.hpp"
#include "ccstego/keymat.hpp"

namespace ccstego::cli {

namespace fs = std::filesystem;

namespace {

std::string read_text(const fs::path& path) {
  const Bytes bytes = read_file(path);
  return {bytes.begin(), bytes.end()};
}

void write_text(const fs::path& path, std::string_view text) {
  write_file(path, {reinterpret_cast<const std::uint8_t*>(text.data()), text.size()});
}

SecretKeySet load_secret(const fs::path& path) {
  const SecretKeySet keys = parse_secret_file(read_text(path));
  if (auto v = validate_keys(keys); !v.ok()) {
    throw DomainError(path.string() + ": invalid secret keys: " + v.summary());
  }
  return keys;
}

PublicKeyFile load_public(const fs::path& path) {
  PublicKeyFile file = parse_public_file(read_text(path));
  if (!validate_coupling(file.coupling).ok()) {
    throw DomainError(path.string() + ": R must satisfy 0 < R <= 1");
  }
  if (file.mode && !parse_mode(*file.mode)) {
    throw ParseError(path.string() + ": unknown mode '" + *file.mode + "'");
  }
  return file;
}

// Uniform draw in the half-open interval (lo, hi].
double draw_upper_closed(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  return hi - unit(rng) * (hi - lo);
}

double draw_seed_value(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(0.01, 0.99);
  for (;;) {
    const double v = dist(rng);
    if (v > 0.01 && (v < 0.499 || v > 0.501)) return v;
  }
}

struct Options {
  // keygen
  std::string out;
  std::string pub;
  std::uint64_t seed = 0;
  // shared
  std::string secret;
  // embed
  std::string cover;
  std::string msg;
  std::string mode = "ascii7";
  // extract
  std::string stego;
  std::string ones;
  std::string zeros;
  // analyze / attack
  std::size_t bits = 0;
  bool diff_entropy = false;
  std::string image;
  int step = 10;
  // exchange-sim
  std::string bob_secret;
  std::size_t rows = 512;
  std::size_t cols = 512;
  std::size_t k = kDefaultAgreementPrefix;
  // bifurcation
  double alpha_min = 0.6;
  double alpha_max = 4.0;
  std::size_t steps = 200;
  double x0 = 0.3;
  std::size_t transient = 1000;
  std::size_t samples = 100;
};

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    write_text(path, text);
  }
}

int cmd_keygen(const Options& o) {
  std::mt19937_64 rng(o.seed);
  SecretKeySet keys;
  keys.alpha1 = draw_upper_closed(rng, 0.6, 6.0);
  keys.alpha2 = draw_upper_closed(rng, 0.6, 6.0);
  keys.x0 = draw_seed_value(rng);
  keys.y0 = draw_seed_value(rng);
  const PublicCoupling coupling{draw_upper_closed(rng, 0.5, 1.0)};
  write_text(o.out, format_secret_file(keys));
  write_text(o.pub, format_public_file({coupling, std::nullopt}));
  return kOk;
}

int cmd_validate(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.secret.empty() && o.pub.empty()) {
    err << "validate: pass --secret and/or --pub\n";
    return kUsage;
  }
  bool ok = true;
  if (!o.secret.empty()) {
    const auto v = validate_keys(parse_secret_file(read_text(o.secret)));
    for (const auto& item : v.violations) err << o.secret << ": " << item.field << " " << item.reason << '\n';
    ok = ok && v.ok();
  }
  if (!o.pub.empty()) {
    const PublicKeyFile file = parse_public_file(read_text(o.pub));
    const auto v = validate_coupling(file.coupling);
    for (const auto& item : v.violations) err << o.pub << ": " << item.field << " " << item.reason << '\n';
    if (file.mode && !parse_mode(*file.mode)) {
      err << o.pub << ": unknown mode\n";
      ok = false;
    }
    ok = ok && v.ok();
  }
  out << (ok ? "valid\n" : "invalid\n");
  return ok ? kOk : kInvalid;
}

int cmd_embed(const Options& o, std::ostream& err) {
  const auto mode = parse_mode(o.mode);
  if (!mode) {
    err << "embed: --mode must be ascii7, utf16 or raw\n";
    return kUsage;
  }
  const RasterImage cover = load_pnm(read_file(o.cover));
  const SecretKeySet keys = load_secret(o.secret);
  PublicKeyFile pub = load_public(o.pub);
  const MessagePayload payload = encode_message(read_text(o.msg), *mode);
  const StegoBundle bundle = embed(cover, payload, keys, pub.coupling);

  const std::string ext = cover.channels() == 1 ? ".pgm" : ".ppm";
  write_file(o.out + ext, save_pnm(bundle.stego));
  write_file(o.out + ".ones.pbm", save_pbm(bundle.side.ones));
  write_file(o.out + ".zeros.pbm", save_pbm(bundle.side.zeros));
  pub.mode = std::string(to_string(*mode));
  write_text(o.pub, format_public_file(pub));
  return kOk;
}

int cmd_extract(const Options& o, std::ostream& err) {
  const PublicKeyFile pub = load_public(o.pub);
  if (!pub.mode) {
    err << "extract: " << o.pub << " carries no mode line; was it written by embed?\n";
    return kInvalid;
  }
  StegoBundle bundle{load_pnm(read_file(o.stego)),
                     {load_pbm(read_file(o.ones)), load_pbm(read_file(o.zeros))},
                     pub.coupling,
                     *parse_mode(*pub.mode)};
  const SecretKeySet keys = load_secret(o.secret);
  write_text(o.out, decode_message(extract(bundle, keys)));
  return kOk;
}

int cmd_analyze(const Options& o, std::ostream& out) {
  const RasterImage cover = load_pnm(read_file(o.cover));
  const RasterImage stego = load_pnm(read_file(o.stego));
  out << format_quality(psnr(cover, stego, o.bits));
  out << std::setprecision(17);
  out << "cover_histogram_entropy_bits=" << histogram_entropy(cover) << '\n';
  out << "stego_histogram_entropy_bits=" << histogram_entropy(stego) << '\n';
  if (o.diff_entropy) {
    out << "cover_diff_entropy_bits=" << neighbor_diff_entropy(cover) << '\n';
    out << "stego_diff_entropy_bits=" << neighbor_diff_entropy(stego) << '\n';
  }
  return kOk;
}

int cmd_attack(const Options& o, std::ostream& out) {
  const RasterImage image = load_pnm(read_file(o.image));
  emit(o.out, format_attack_csv(chi_square_attack(image, o.step)), out);
  return kOk;
}

int cmd_exchange(const Options& o, std::ostream& out) {
  const SecretKeySet alice = load_secret(o.secret);
  const SecretKeySet bob = load_secret(o.bob_secret);
  const PublicKeyFile pub = load_public(o.pub);
  const auto transcript = simulate_exchange(alice, bob, pub.coupling, {o.rows, o.cols}, o.k);
  out << serialize_transcript(transcript);
  return kOk;
}

int cmd_bifurcation(const Options& o, std::ostream& out) {
  const auto scan = bifurcation_scan(o.alpha_min, o.alpha_max, o.steps, o.x0, o.transient, o.samples);
  std::ostringstream os;
  os << std::setprecision(17) << "alpha,sample\n";
  for (const auto& column : scan) {
    for (double s : column.samples) os << column.alpha << ',' << s << '\n';
  }
  emit(o.out, os.str(), out);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Chaotic-position LSB steganography toolkit", "ccstego"};
  app.require_subcommand(1);
  Options o;

  auto* keygen = app.add_subcommand("keygen", "Generate a random valid secret/public key pair");
  keygen->add_option("--out", o.out, "Secret key file to write")->required();
  keygen->add_option("--pub", o.pub, "Public key file to write")->required();
  keygen->add_option("--seed", o.seed, "RNG seed")->required();

  auto* validate = app.add_subcommand("validate", "Check key files against their invariants");
  validate->add_option("--secret", o.secret, "Secret key file");
  validate->add_option("--pub", o.pub, "Public key file");

  auto* embed_cmd = app.add_subcommand("embed", "Hide a message in a PGM/PPM cover");
  embed_cmd->add_option("--cover", o.cover, "Cover image (P5/P6)")->required();
  embed_cmd->add_option("--msg", o.msg, "Message file")->required();
  embed_cmd->add_option("--secret", o.secret, "Secret key file")->required();
  embed_cmd->add_option("--pub", o.pub, "Public key file (mode line is recorded here)")->required();
  embed_cmd->add_option("--mode", o.mode, "ascii7, utf16 or raw")->required();
  embed_cmd->add_option("--out", o.out, "Output prefix")->required();

  auto* extract_cmd = app.add_subcommand("extract", "Recover a message from a stego bundle");
  extract_cmd->add_option("--stego", o.stego, "Stego image")->required();
  extract_cmd->add_option("--ones", o.ones, "Ones matrix (P4)")->required();
  extract_cmd->add_option("--zeros", o.zeros, "Zeros matrix (P4)")->required();
  extract_cmd->add_option("--secret", o.secret, "Secret key file")->required();
  extract_cmd->add_option("--pub", o.pub, "Public key file")->required();
  extract_cmd->add_option("--out", o.out, "Recovered message file")->required();

  auto* analyze = app.add_subcommand("analyze", "PSNR, flips and entropies of a cover/stego pair");
  analyze->add_option("--cover", o.cover, "Cover image")->required();
  analyze->add_option("--stego", o.stego, "Stego image")->required();
  analyze->add_option("--bits", o.bits, "Embedded bit count, for hiding capacity");
  analyze->add_flag("--diff-entropy", o.diff_entropy, "Also report neighbour-difference entropy");

  auto* attack = app.add_subcommand("attack", "Chi-square pairs-of-values attack as CSV");
  attack->add_option("--image", o.image, "Image to test")->required();
  attack->add_option("--step", o.step, "Scan step in percent")->check(CLI::Range(1, 100));
  attack->add_option("--out", o.out, "CSV file (default: standard output)");

  auto* exchange = app.add_subcommand("exchange-sim", "Simulate the key exchange between two parties");
  exchange->add_option("--secret", o.secret, "Alice's secret key file")->required();
  exchange->add_option("--bob-secret", o.bob_secret, "Bob's secret key file")->required();
  exchange->add_option("--pub", o.pub, "Public key file carrying R")->required();
  exchange->add_option("--rows", o.rows, "Grid rows");
  exchange->add_option("--cols", o.cols, "Grid columns");
  exchange->add_option("--k", o.k, "Compared position prefix length");

  auto* bifurcation = app.add_subcommand("bifurcation", "Export a bifurcation scan as CSV");
  bifurcation->add_option("--alpha-min", o.alpha_min, "Lowest alpha (> 0.5)");
  bifurcation->add_option("--alpha-max", o.alpha_max, "Highest alpha");
  bifurcation->add_option("--steps", o.steps, "Grid points");
  bifurcation->add_option("--x0", o.x0, "Initial iterate");
  bifurcation->add_option("--transient", o.transient, "Discarded iterations");
  bifurcation->add_option("--samples", o.samples, "Recorded iterations per alpha");
  bifurcation->add_option("--out", o.out, "CSV file (default: standard output)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "ccstego: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*keygen) return cmd_keygen(o);
    if (*validate) return cmd_validate(o, out, err);
    if (*embed_cmd) return cmd_embed(o, err);
    if (*extract_cmd) return cmd_extract(o, err);
    if (*analyze) return cmd_analyze(o, out);
    if (*attack) return cmd_attack(o, out);
    if (*exchange) return cmd_exchange(o, out);
    if (*bifurcation) return cmd_bifurcation(o, out);
  } catch (const CapacityError& e) {
    err << "ccstego: " << e.what() << '\n';
    return kCapacity;
  } catch (const ExtractError& e) {
    err << "ccstego: " << e.what() << '\n';
    return kCapacity;
  } catch (const Error& e) {
    err << "ccstego: " << e.what() << '\n';
    return kInvalid;
  }
  return kUsage;
}

}  // namespace ccstego::cli
