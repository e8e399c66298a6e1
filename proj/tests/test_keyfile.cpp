#include "doctest.h"

#include "sgmask/error.hpp"
#include "sgmask/keyfile.hpp"
#include "sgmask/paramgen.hpp"
#include "sgmask/schemes.hpp"
#include "toy_fixtures.hpp"

#include <string>

using namespace sgmask;

namespace {

void check_data_format(const std::string& text) {
  try {
    read_key_text(text);
    FAIL_CHECK("expected data_format for:\n" << text);
  } catch (const Error& e) {
    CHECK(e.code() == errc::data_format);
  }
}

}  // namespace

TEST_CASE("field-mask key round-trips through text") {
  const MaskKeyPair kp = mask_keygen(toy::f31_params());
  KeyFileContents contents{Scheme::field_mask,
                           MaskKeyMaterial{kp.pub, kp.sec}};

  const std::string pub_text = write_key_text(contents, false);
  const std::string key_text = write_key_text(contents, true);

  // the secret file is the public file plus a [secret] section
  CHECK(key_text.substr(0, pub_text.size()) == pub_text);
  CHECK(pub_text.find("[secret]") == std::string::npos);
  CHECK(pub_text.find("r =") == std::string::npos);

  const KeyFileContents pub_read = read_key_text(pub_text);
  CHECK(pub_read.scheme == Scheme::field_mask);
  CHECK_FALSE(pub_read.has_secret());
  const auto& pub_mat = std::get<MaskKeyMaterial>(pub_read.material);
  CHECK(pub_mat.pub.modulus == 31);
  CHECK(pub_mat.pub.H.generators == kp.pub.H.generators);

  const KeyFileContents key_read = read_key_text(key_text);
  REQUIRE(key_read.has_secret());
  const auto& key_mat = std::get<MaskKeyMaterial>(key_read.material);
  CHECK(key_mat.sec->r == 3);
  CHECK(key_mat.sec->s == 5);
  CHECK(key_mat.sec->t == 2);
  CHECK(key_mat.sec->d == 6);
  CHECK_FALSE(key_mat.sec->p.has_value());
}

TEST_CASE("ring-mask key round-trips with platform secrets") {
  const MaskKeyPair kp = mask_keygen(toy::z77_params());
  KeyFileContents contents{Scheme::ring_mask, MaskKeyMaterial{kp.pub, kp.sec}};
  const KeyFileContents read = read_key_text(write_key_text(contents, true));
  const auto& mat = std::get<MaskKeyMaterial>(read.material);
  CHECK(mat.pub.kind == PlatformKind::ring);
  CHECK(*mat.sec->p == 7);
  CHECK(*mat.sec->q == 11);
  CHECK(*mat.sec->phi == 60);
  CHECK(mat.sec->d == 6);
}

TEST_CASE("rsa-mask key round-trips") {
  const RsaMaskKeyPair kp = rsa_mask_keygen(toy::z77_params(), 3);
  KeyFileContents contents{Scheme::rsa_mask, RsaKeyMaterial{kp.pub, kp.sec}};
  const KeyFileContents read = read_key_text(write_key_text(contents, true));
  const auto& mat = std::get<RsaKeyMaterial>(read.material);
  CHECK(mat.pub.n == 77);
  CHECK(mat.pub.e == 3);
  CHECK(mat.sec->t_h == 3);
  CHECK(mat.sec->r_u == 5);
  CHECK(mat.sec->d1 == 4);
  CHECK(mat.sec->d == 12);
}

TEST_CASE("elgamal key round-trips") {
  const ElGamalSubgroupKeyPair kp = toy::f31_elgamal();
  KeyFileContents contents{Scheme::elgamal_subgroup,
                           ElGamalKeyMaterial{kp.pub, kp.sec}};
  const KeyFileContents read = read_key_text(write_key_text(contents, true));
  const auto& mat = std::get<ElGamalKeyMaterial>(read.material);
  CHECK(mat.pub.p == 31);
  CHECK(mat.pub.g.residue() == 3);
  CHECK(mat.pub.y.residue() == 25);
  CHECK(mat.pub.gb.residue() == 16);
  CHECK(mat.sec->r == 3);
  CHECK(mat.sec->a == 10);
  CHECK(mat.sec->k == 2);
}

TEST_CASE("dh session key material round-trips") {
  const DhSession session = toy::f31_dh_session();
  KeyFileContents contents{
      Scheme::dh_subgroup,
      DhKeyMaterial{session.pub, DhPartySecrets{session.r, session.s}}};
  const KeyFileContents read = read_key_text(write_key_text(contents, true));
  const auto& mat = std::get<DhKeyMaterial>(read.material);
  CHECK(mat.pub.p == 31);
  CHECK(mat.pub.r1 == 3);
  CHECK(mat.pub.s1 == 5);
  CHECK(mat.sec->r == 3);
  CHECK(mat.sec->s == 5);
}

TEST_CASE("unknown and duplicate fields are rejected") {
  const MaskKeyPair kp = mask_keygen(toy::f31_params());
  KeyFileContents contents{Scheme::field_mask,
                           MaskKeyMaterial{kp.pub, kp.sec}};
  const std::string good = write_key_text(contents, true);

  check_data_format(good + "surprise = 1\n");
  check_data_format(good + "r = 3\n");
  check_data_format("note = hi\n" + good);

  std::string renamed = good;
  renamed.replace(renamed.find("modulus"), 7, "modulas");
  check_data_format(renamed);
}

TEST_CASE("structural file errors are rejected") {
  check_data_format("");
  check_data_format("version = 2\nscheme = field-mask\n[public]\n");
  check_data_format("version = 1\nscheme = nonsense\n[public]\n");
  check_data_format("version = 1\nscheme = field-mask\n");  // no [public]
  check_data_format(
      "version = 1\nscheme = field-mask\n[secret]\nr = 3\n[public]\n");
  check_data_format(
      "version = 1\nscheme = field-mask\n[public]\nmodulus = 31\n"
      "h_generators = 5\nu_generators = 2\n[secret]\n");  // empty secret
  check_data_format(
      "version = 1\nscheme = field-mask\n[public]\nmodulus 31\n");
  check_data_format(
      "version = 1\nscheme = field-mask\n[weird]\nmodulus = 31\n");
}

TEST_CASE("broken key invariants are rejected") {
  const MaskKeyPair kp = mask_keygen(toy::z77_params());
  KeyFileContents contents{Scheme::ring_mask, MaskKeyMaterial{kp.pub, kp.sec}};
  const std::string good = write_key_text(contents, true);

  auto swap_line = [&](const std::string& from, const std::string& to) {
    std::string text = good;
    const auto at = text.find(from);
    REQUIRE(at != std::string::npos);
    text.replace(at, from.size(), to);
    return text;
  };

  check_data_format(swap_line("phi = 60", "phi = 61"));
  check_data_format(swap_line("q = 11", "q = 13"));
  check_data_format(swap_line("t = 2", "t = 3"));
  check_data_format(swap_line("s = 5", "s = 6"));  // gcd(r, s) != 1
  // generator not a unit mod 77
  check_data_format(swap_line("h_generators = 23", "h_generators = 22"));
  // generator that does not satisfy the claimed exponent
  check_data_format(swap_line("h_generators = 23", "h_generators = 2"));
}

TEST_CASE("elgamal file invariants are enforced") {
  const ElGamalSubgroupKeyPair kp = toy::f31_elgamal();
  KeyFileContents contents{Scheme::elgamal_subgroup,
                           ElGamalKeyMaterial{kp.pub, kp.sec}};
  const std::string good = write_key_text(contents, true);

  auto swap_line = [&](const std::string& from, const std::string& to) {
    std::string text = good;
    const auto at = text.find(from);
    REQUIRE(at != std::string::npos);
    text.replace(at, from.size(), to);
    return text;
  };

  check_data_format(swap_line("y = 25", "y = 24"));
  check_data_format(swap_line("gb = 16", "gb = 15"));
  check_data_format(swap_line("k = 2", "k = 4"));
  check_data_format(swap_line("a = 10", "a = 11"));
}

TEST_CASE("ciphertext files round-trip and validate") {
  const CiphertextFileData data{Scheme::field_mask, 31, 10,
                                CodecMode::exponent};
  const std::string text = write_ciphertext_text(data);
  const CiphertextFileData read = read_ciphertext_text(text);
  CHECK(read.scheme == Scheme::field_mask);
  CHECK(read.modulus == 31);
  CHECK(read.value == 10);
  CHECK(read.mode == CodecMode::exponent);

  auto bad_ct = [](const std::string& t) {
    try {
      read_ciphertext_text(t);
      FAIL_CHECK("expected data_format for:\n" << t);
    } catch (const Error& e) {
      CHECK(e.code() == errc::data_format);
    }
  };

  bad_ct("scheme = field-mask\nmodulus = 31\nvalue = 0\nmode = kem\n");
  bad_ct("scheme = field-mask\nmodulus = 31\nvalue = 31\nmode = kem\n");
  bad_ct("scheme = field-mask\nmodulus = 77\nvalue = 7\nmode = kem\n");
  bad_ct("scheme = field-mask\nmodulus = 31\nvalue = 10\nmode = other\n");
  bad_ct("scheme = field-mask\nmodulus = 31\nvalue = 10\n");
  bad_ct(write_ciphertext_text(data) + "extra = 1\n");
}

TEST_CASE("writing a secret file without a secret half fails") {
  const MaskKeyPair kp = mask_keygen(toy::f31_params());
  KeyFileContents pub_only{Scheme::field_mask,
                           MaskKeyMaterial{kp.pub, std::nullopt}};
  CHECK_THROWS_AS(write_key_text(pub_only, true), Error);
  CHECK_NOTHROW(write_key_text(pub_only, false));
}

TEST_CASE("file io round-trip on disk") {
  const MaskKeyPair kp = mask_keygen(toy::f31_params());
  KeyFileContents contents{Scheme::field_mask,
                           MaskKeyMaterial{kp.pub, kp.sec}};
  const std::string path = "keyfile_test_tmp.key";
  write_key_file(path, contents, true);
  const KeyFileContents read = read_key_file(path);
  CHECK(read.has_secret());
  CHECK(std::get<MaskKeyMaterial>(read.material).sec->d == 6);
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_key_file("definitely-not-here.key"), Error);
}
