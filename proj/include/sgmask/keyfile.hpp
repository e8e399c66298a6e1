// Line-oriented key and ciphertext files: `name = value` records, decimal
// integers, a [public] section and an optional [secret] superset.
#pragma once

#include "sgmask/bigint.hpp"
#include "sgmask/codec.hpp"
#include "sgmask/schemes.hpp"

#include <optional>
#include <string>
#include <variant>

namespace sgmask {

enum class Scheme {
  field_mask,
  ring_mask,
  rsa_mask,
  elgamal_subgroup,
  dh_subgroup,
};

std::string scheme_name(Scheme scheme);
std::optional<Scheme> scheme_from_name(const std::string& name);

// Per-scheme key material as read from disk; sec is absent for .pub files.
struct MaskKeyMaterial {
  MaskPublicKey pub;
  std::optional<MaskSecretKey> sec;
};
struct RsaKeyMaterial {
  RsaMaskPublicKey pub;
  std::optional<RsaMaskSecretKey> sec;
};
struct ElGamalKeyMaterial {
  ElGamalSubgroupPublicKey pub;
  std::optional<ElGamalSubgroupSecretKey> sec;
};
struct DhPartySecrets {
  BigInt r;
  BigInt s;
};
struct DhKeyMaterial {
  DhSessionPublic pub;
  std::optional<DhPartySecrets> sec;
};

struct KeyFileContents {
  Scheme scheme;
  std::variant<MaskKeyMaterial, RsaKeyMaterial, ElGamalKeyMaterial,
               DhKeyMaterial>
      material;

  bool has_secret() const;
};

// Serialization.  Unknown fields, missing fields, broken invariants and
// stray secret fields in public files all raise data_format.
std::string write_key_text(const KeyFileContents& contents,
                           bool include_secret);
KeyFileContents read_key_text(const std::string& text);

void write_key_file(const std::string& path, const KeyFileContents& contents,
                    bool include_secret);
KeyFileContents read_key_file(const std::string& path);

struct CiphertextFileData {
  Scheme scheme;
  BigInt modulus;
  BigInt value;  // in [1, modulus-1], coprime to modulus
  CodecMode mode;
};

std::string write_ciphertext_text(const CiphertextFileData& data);
CiphertextFileData read_ciphertext_text(const std::string& text);

void write_ciphertext_file(const std::string& path,
                           const CiphertextFileData& data);
CiphertextFileData read_ciphertext_file(const std::string& path);

}  // namespace sgmask
