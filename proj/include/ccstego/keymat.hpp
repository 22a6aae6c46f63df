#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ccstego/geometry.hpp"

namespace ccstego {

/// The four pre-shared secret reals seeding the coupled generator.
struct SecretKeySet {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double x0 = 0.0;
  double y0 = 0.0;

  friend bool operator==(const SecretKeySet&, const SecretKeySet&) = default;
};

/// Public coupling factor R, the only value that travels in the open.
struct PublicCoupling {
  double r = 0.0;

  friend bool operator==(const PublicCoupling&, const PublicCoupling&) = default;
};

struct Violation {
  std::string field;
  std::string reason;
};

/// Empty when the inputs satisfy every invariant.
struct ValidationResult {
  std::vector<Violation> violations;

  [[nodiscard]] bool ok() const noexcept { return violations.empty(); }
  /// Field names joined by ", ". Never includes values.
  [[nodiscard]] std::string summary() const;
};

[[nodiscard]] ValidationResult validate_keys(const SecretKeySet& keys);
[[nodiscard]] ValidationResult validate_coupling(PublicCoupling coupling);

// ---------------------------------------------------------------------------
// Key files
//
// UTF-8 text, one `name=value` per line, trailing newline. Reals are written
// as exact hexadecimal binary64 literals so no decimal round trip is involved.

[[nodiscard]] std::string format_hex_double(double value);
/// Parses `0x1.4p+1`-style literals (optional sign). Throws ParseError.
[[nodiscard]] double parse_hex_double(std::string_view text);

[[nodiscard]] std::string format_secret_file(const SecretKeySet& keys);
/// Requires exactly alpha1, alpha2, x0, y0. Unknown or repeated names are
/// rejected. Does not validate ranges; call validate_keys for that.
[[nodiscard]] SecretKeySet parse_secret_file(std::string_view text);

struct PublicKeyFile {
  PublicCoupling coupling;
  std::optional<std::string> mode;  // set once a bundle has been embedded
};

[[nodiscard]] std::string format_public_file(const PublicKeyFile& file);
[[nodiscard]] PublicKeyFile parse_public_file(std::string_view text);

// ---------------------------------------------------------------------------
// Exchange simulation

enum class Party { Alice, Bob };

enum class MessageKind {
  CouplingFactor,  // Bob publishes R
  OnesMatrix,      // Alice sends the ones matrix
  ZerosMatrix,     // Alice sends the zeros matrix
};

struct ChannelEvent {
  Party sender;
  MessageKind kind;
  std::uint64_t payload_digest;  // FNV-1a 64 of the serialized payload
};

struct ExchangeTranscript {
  std::vector<ChannelEvent> events;
  bool agreement = false;
  /// Index of the first differing position, if any, within the first k.
  std::optional<std::size_t> first_divergence;
};

/// Default length of the compared position prefix.
inline constexpr std::size_t kDefaultAgreementPrefix = 500;

/// Runs both parties of the key exchange over a modeled open channel.
/// Each party derives its position stream from its own secret keys and the
/// public R; agreement holds iff the first k positions coincide.
/// Throws DomainError if either key set or R is invalid, or dims are empty.
[[nodiscard]] ExchangeTranscript simulate_exchange(const SecretKeySet& alice_keys,
                                                   const SecretKeySet& bob_keys,
                                                   PublicCoupling coupling, ImageDims dims,
                                                   std::size_t k = kDefaultAgreementPrefix);

/// `event=<seq>,<sender>,<kind>,<digest>` lines followed by `agreement=…`.
[[nodiscard]] std::string serialize_transcript(const ExchangeTranscript& transcript);

[[nodiscard]] std::uint64_t fnv1a64(std::string_view bytes) noexcept;

[[nodiscard]] std::string_view to_string(Party party) noexcept;
[[nodiscard]] std::string_view to_string(MessageKind kind) noexcept;

}  // namespace ccstego
