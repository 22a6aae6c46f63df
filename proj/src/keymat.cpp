#include "ccstego/keymat.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstring>
#include <future>
#include <map>
#include <sstream>

#include "ccstego/chaos.hpp"
#include "ccstego/codec.hpp"
#include "ccstego/errors.hpp"
#include "ccstego/imagery.hpp"

namespace ccstego {

std::string ValidationResult::summary() const {
  std::string out;
  for (const auto& v : violations) {
    if (!out.empty()) out += ", ";
    out += v.field;
    out += " (";
    out += v.reason;
    out += ')';
  }
  return out;
}

namespace {

void check_alpha(const char* field, double alpha, std::vector<Violation>& out) {
  if (!std::isfinite(alpha)) {
    out.push_back({field, "must be finite"});
  } else if (!(alpha > 0.5)) {
    out.push_back({field, "must be greater than 0.5"});
  }
}

void check_seed(const char* field, double value, std::vector<Violation>& out) {
  if (!std::isfinite(value) || !(value > 0.0 && value < 1.0)) {
    out.push_back({field, "must lie strictly between 0 and 1"});
  } else if (value == 0.5) {
    out.push_back({field, "must not equal 0.5"});
  }
}

}  // namespace

ValidationResult validate_keys(const SecretKeySet& keys) {
  ValidationResult result;
  check_alpha("alpha1", keys.alpha1, result.violations);
  check_alpha("alpha2", keys.alpha2, result.violations);
  check_seed("x0", keys.x0, result.violations);
  check_seed("y0", keys.y0, result.violations);
  return result;
}

ValidationResult validate_coupling(PublicCoupling coupling) {
  ValidationResult result;
  if (!std::isfinite(coupling.r) || !(coupling.r > 0.0 && coupling.r <= 1.0)) {
    result.violations.push_back({"R", "must satisfy 0 < R <= 1"});
  }
  return result;
}

// ---------------------------------------------------------------------------

std::string format_hex_double(double value) {
  if (!std::isfinite(value)) throw DomainError("cannot serialize a non-finite key value");
  std::array<char, 64> buf{};
  const bool negative = std::signbit(value);
  auto [ptr, ec] =
      std::to_chars(buf.data(), buf.data() + buf.size(), std::abs(value), std::chars_format::hex);
  (void)ec;
  std::string out = negative ? "-0x" : "0x";
  out.append(buf.data(), ptr);
  return out;
}

double parse_hex_double(std::string_view text) {
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  if (text.size() < 3 || text[0] != '0' || (text[1] != 'x' && text[1] != 'X')) {
    throw ParseError("expected a hexadecimal floating-point literal");
  }
  text.remove_prefix(2);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value,
                                   std::chars_format::hex);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ParseError("malformed hexadecimal floating-point literal");
  }
  return negative ? -value : value;
}

namespace {

// name -> value for each `name=value` line. Enforces the trailing newline,
// rejects blank lines, repeats, and names outside `allowed`.
std::map<std::string, std::string> parse_pairs(std::string_view text,
                                               std::initializer_list<std::string_view> allowed) {
  if (text.empty() || text.back() != '\n') throw ParseError("key file must end with a newline");
  std::map<std::string, std::string> pairs;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text.remove_prefix(eol + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError("line " + std::to_string(line_no) + ": expected name=value");
    }
    const std::string name(line.substr(0, eq));
    bool known = false;
    for (auto a : allowed) known = known || a == name;
    if (!known) throw ParseError("unknown key name '" + name + "'");
    if (!pairs.emplace(name, std::string(line.substr(eq + 1))).second) {
      throw ParseError("key name '" + name + "' appears twice");
    }
  }
  return pairs;
}

double required(const std::map<std::string, std::string>& pairs, const std::string& name) {
  const auto it = pairs.find(name);
  if (it == pairs.end()) throw ParseError("missing key '" + name + "'");
  try {
    return parse_hex_double(it->second);
  } catch (const ParseError&) {
    // The value itself is secret material; only name the field.
    throw ParseError("key '" + name + "' is not a hexadecimal binary64 literal");
  }
}

}  // namespace

std::string format_secret_file(const SecretKeySet& keys) {
  return "alpha1=" + format_hex_double(keys.alpha1) + "\nalpha2=" + format_hex_double(keys.alpha2) +
         "\nx0=" + format_hex_double(keys.x0) + "\ny0=" + format_hex_double(keys.y0) + "\n";
}

SecretKeySet parse_secret_file(std::string_view text) {
  const auto pairs = parse_pairs(text, {"alpha1", "alpha2", "x0", "y0"});
  return {required(pairs, "alpha1"), required(pairs, "alpha2"), required(pairs, "x0"),
          required(pairs, "y0")};
}

std::string format_public_file(const PublicKeyFile& file) {
  std::string out = "R=" + format_hex_double(file.coupling.r) + "\n";
  if (file.mode) out += "mode=" + *file.mode + "\n";
  return out;
}

PublicKeyFile parse_public_file(std::string_view text) {
  const auto pairs = parse_pairs(text, {"R", "mode"});
  PublicKeyFile file{{required(pairs, "R")}, std::nullopt};
  if (auto it = pairs.find("mode"); it != pairs.end()) file.mode = it->second;
  return file;
}

// ---------------------------------------------------------------------------

std::uint64_t fnv1a64(std::string_view bytes) noexcept {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::string_view to_string(Party party) noexcept {
  return party == Party::Alice ? "alice" : "bob";
}

std::string_view to_string(MessageKind kind) noexcept {
  switch (kind) {
    case MessageKind::CouplingFactor:
      return "coupling-factor";
    case MessageKind::OnesMatrix:
      return "ones-matrix";
    case MessageKind::ZerosMatrix:
      return "zeros-matrix";
  }
  return "unknown";
}

namespace {

std::uint64_t digest(const Bytes& bytes) {
  return fnv1a64({reinterpret_cast<const char*>(bytes.data()), bytes.size()});
}

}  // namespace

ExchangeTranscript simulate_exchange(const SecretKeySet& alice_keys, const SecretKeySet& bob_keys,
                                     PublicCoupling coupling, ImageDims dims, std::size_t k) {
  if (!validate_keys(alice_keys).ok()) throw DomainError("alice holds invalid secret keys");
  if (!validate_keys(bob_keys).ok()) throw DomainError("bob holds invalid secret keys");
  if (!validate_coupling(coupling).ok()) throw DomainError("invalid coupling factor R");
  if (!dims.valid()) throw DomainError("image dimensions must be at least 1x1");
  if (k > dims.cells()) throw DomainError("agreement prefix longer than the grid");

  ExchangeTranscript transcript;

  // 1b: Bob picks R and publishes it.
  const std::string published_r = format_hex_double(coupling.r);
  transcript.events.push_back(
      {Party::Bob, MessageKind::CouplingFactor, fnv1a64(published_r)});

  // 1a/2a and 2b: both sides iterate independently from their own secrets.
  auto derive = [&](const SecretKeySet& keys) {
    return select_positions(keys, coupling, dims, k).positions;
  };
  auto bob_future = std::async(std::launch::async, derive, std::cref(bob_keys));
  const auto alice_positions = derive(alice_keys);
  const auto bob_positions = bob_future.get();

  // 3a: Alice marks her positions in the side matrices (probe bits
  // alternating 1, 0, ...) and sends both matrices.
  SideMatrices side = SideMatrices::fresh(dims);
  for (std::size_t i = 0; i < alice_positions.size(); ++i) {
    const std::uint8_t bit = (i % 2 == 0) ? 1 : 0;
    side.ones.set(alice_positions[i].zero_row(), alice_positions[i].zero_col(), bit);
    side.zeros.set(alice_positions[i].zero_row(), alice_positions[i].zero_col(), bit);
  }
  transcript.events.push_back({Party::Alice, MessageKind::OnesMatrix, digest(save_pbm(side.ones))});
  transcript.events.push_back(
      {Party::Alice, MessageKind::ZerosMatrix, digest(save_pbm(side.zeros))});

  // 3b: Bob compares with what his own keys predict.
  for (std::size_t i = 0; i < k; ++i) {
    if (alice_positions[i] != bob_positions[i]) {
      transcript.first_divergence = i;
      break;
    }
  }
  transcript.agreement = !transcript.first_divergence.has_value();
  return transcript;
}

std::string serialize_transcript(const ExchangeTranscript& transcript) {
  std::ostringstream os;
  std::size_t seq = 0;
  for (const auto& e : transcript.events) {
    std::array<char, 17> hex{};
    auto [ptr, ec] = std::to_chars(hex.data(), hex.data() + hex.size(), e.payload_digest, 16);
    (void)ec;
    os << "event=" << seq++ << ',' << to_string(e.sender) << ',' << to_string(e.kind) << ','
       << std::string_view(hex.data(), static_cast<std::size_t>(ptr - hex.data())) << '\n';
  }
  os << "agreement=" << (transcript.agreement ? "true" : "false") << '\n';
  if (transcript.first_divergence) os << "first_divergence=" << *transcript.first_divergence << '\n';
  return os.str();
}

}  // namespace ccstego
