// sgmask command-line tool: key generation, encryption, decryption, DH
// exchange simulation, decision-problem oracles and distinguishing games.
#include "CLI11.hpp"

#include "sgmask/codec.hpp"
#include "sgmask/error.hpp"
#include "sgmask/keyfile.hpp"
#include "sgmask/numtheory.hpp"
#include "sgmask/oracles.hpp"
#include "sgmask/paramgen.hpp"
#include "sgmask/schemes.hpp"

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace sgmask;

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitParamConflict = 2;
constexpr int kExitSearchFailure = 3;
constexpr int kExitTooLarge = 4;
constexpr int kExitUsage = 64;
constexpr int kExitDataFormat = 65;

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case errc::parameter_conflict:
    case errc::bad_public_exponent:
      return kExitParamConflict;
    case errc::search_failure:
      return kExitSearchFailure;
    case errc::too_large:
      return kExitTooLarge;
    case errc::data_format:
      return kExitDataFormat;
    default:
      return kExitParamConflict;
  }
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed) {
  if (seed) return *seed;
  std::random_device rd;
  const std::uint64_t chosen =
      (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  std::cout << "seed = " << chosen << "\n";
  return chosen;
}

std::vector<BigInt> parse_order_list(const std::string& raw) {
  std::vector<BigInt> out;
  std::size_t start = 0;
  while (start <= raw.size()) {
    const std::size_t comma = raw.find(',', start);
    const std::string part = comma == std::string::npos
                                 ? raw.substr(start)
                                 : raw.substr(start, comma - start);
    out.push_back(parse_decimal(part));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error(errc::data_format, "cannot open " + path);
  std::ostringstream buffer;
  buffer << is.rdbuf();
  return buffer.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw Error(errc::data_format, "cannot open " + path);
  os << text;
  if (!os.flush()) throw Error(errc::data_format, "cannot write " + path);
}

std::string trim_copy(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

// --- keygen -----------------------------------------------------------------

struct KeygenArgs {
  std::string scheme;
  std::string r_spec;
  std::string s_spec;
  std::string out_prefix;
  std::string profile = "demo";
  unsigned bits = 0;  // 0: take from profile
  std::uint64_t e = 65537;
  std::optional<std::uint64_t> seed;
};

int run_keygen(const KeygenArgs& args) {
  const auto scheme = scheme_from_name(args.scheme);
  if (!scheme) {
    std::cerr << "unknown scheme: " << args.scheme << "\n";
    return kExitUsage;
  }
  unsigned bits = args.bits;
  if (bits == 0) bits = args.profile == "standard" ? 1024 : 32;

  Rng rng(resolve_seed(args.seed));
  KeyFileContents contents;
  contents.scheme = *scheme;

  switch (*scheme) {
    case Scheme::field_mask: {
      const auto build = build_field_mask_params(
          parse_order_list(args.r_spec), parse_order_list(args.s_spec), bits,
          rng);
      const MaskKeyPair kp = mask_keygen(build.params);
      contents.material = MaskKeyMaterial{kp.pub, kp.sec};
      break;
    }
    case Scheme::ring_mask: {
      const auto build = build_ring_with_orders(
          parse_order_list(args.r_spec), parse_order_list(args.s_spec), bits,
          rng);
      const MaskKeyPair kp = mask_keygen(build.params);
      contents.material = MaskKeyMaterial{kp.pub, kp.sec};
      break;
    }
    case Scheme::rsa_mask: {
      const auto build = build_ring_with_orders(
          parse_order_list(args.r_spec), parse_order_list(args.s_spec), bits,
          rng);
      const RsaMaskKeyPair kp =
          rsa_mask_keygen(build.params, BigInt(static_cast<unsigned long>(args.e)));
      contents.material = RsaKeyMaterial{kp.pub, kp.sec};
      break;
    }
    case Scheme::elgamal_subgroup: {
      const ElGamalSubgroupKeyPair kp = elgamal_keygen(
          parse_decimal(args.r_spec), parse_decimal(args.s_spec), bits, rng);
      contents.material = ElGamalKeyMaterial{kp.pub, kp.sec};
      break;
    }
    case Scheme::dh_subgroup: {
      const DhSession session = dh_setup(parse_decimal(args.r_spec),
                                         parse_decimal(args.s_spec), bits,
                                         rng);
      contents.material =
          DhKeyMaterial{session.pub, DhPartySecrets{session.r, session.s}};
      break;
    }
  }

  write_key_file(args.out_prefix + ".pub", contents, false);
  write_key_file(args.out_prefix + ".key", contents, true);
  std::cout << "wrote " << args.out_prefix << ".pub\n";
  std::cout << "wrote " << args.out_prefix << ".key\n";
  return kExitOk;
}

// --- encrypt / decrypt -------------------------------------------------------

struct CryptArgs {
  std::string key_path;
  std::string in_path;
  std::string out_path;
  std::string mode = "kem";
  std::optional<std::uint64_t> seed;
};

CodecMode parse_mode(const std::string& name) {
  if (name == "exponent") return CodecMode::exponent;
  if (name == "kem") return CodecMode::kem;
  throw Error(errc::invalid_argument, "unknown mode: " + name);
}

// Message subgroup of the scheme as visible from the public half.
SubgroupSpec message_subgroup_of(const KeyFileContents& key) {
  if (const auto* mask = std::get_if<MaskKeyMaterial>(&key.material))
    return mask->pub.U;
  if (const auto* rsa = std::get_if<RsaKeyMaterial>(&key.material))
    return rsa->pub.U;
  if (const auto* eg = std::get_if<ElGamalKeyMaterial>(&key.material)) {
    SubgroupSpec u;
    u.modulus = eg->pub.p;
    u.generators.push_back(eg->pub.gb);
    return u;
  }
  throw Error(errc::parameter_conflict,
              "the dh-subgroup scheme does not encrypt; use the dh command");
}

int run_encrypt(const CryptArgs& args) {
  const KeyFileContents key = read_key_file(args.key_path);
  const CodecMode mode = parse_mode(args.mode);
  Rng rng(resolve_seed(args.seed));

  const SubgroupSpec message_group = message_subgroup_of(key);
  EncodedMessage message = [&] {
    if (mode == CodecMode::kem) {
      if (!args.in_path.empty())
        throw Error(errc::invalid_argument, "kem mode takes no input file");
      return kem_sample(message_group, rng);
    }
    if (args.in_path.empty())
      throw Error(errc::invalid_argument, "exponent mode needs --in");
    const BigInt m = parse_decimal(trim_copy(read_text_file(args.in_path)));
    return encode_exponent(m, message_group);
  }();

  const Ciphertext c = [&] {
    if (const auto* mask = std::get_if<MaskKeyMaterial>(&key.material))
      return mask_encrypt(mask->pub, message.element, rng);
    if (const auto* rsa = std::get_if<RsaKeyMaterial>(&key.material))
      return rsa_mask_encrypt(rsa->pub, message.element, rng);
    const auto& eg = std::get<ElGamalKeyMaterial>(key.material);
    return elgamal_encrypt(eg.pub, message.element, rng);
  }();

  CiphertextFileData data{key.scheme, c.value.modulus(), c.value.residue(),
                          mode};
  write_ciphertext_file(args.out_path, data);
  if (mode == CodecMode::kem)
    std::cout << "secret = " << message.element.residue().get_str() << "\n";
  std::cout << "wrote " << args.out_path << "\n";
  return kExitOk;
}

int run_decrypt(const CryptArgs& args) {
  const KeyFileContents key = read_key_file(args.key_path);
  if (!key.has_secret())
    throw Error(errc::parameter_conflict,
                "decrypt needs the secret key file, not the public one");
  const CiphertextFileData data = read_ciphertext_file(args.in_path);
  if (data.scheme != key.scheme)
    throw Error(errc::parameter_conflict,
                "ciphertext scheme does not match the key");

  const Ciphertext c{GroupElement(data.value, data.modulus)};
  GroupElement recovered = [&] {
    if (const auto* mask = std::get_if<MaskKeyMaterial>(&key.material)) {
      if (mask->pub.modulus != data.modulus)
        throw Error(errc::parameter_conflict, "modulus mismatch");
      return mask_decrypt(MaskKeyPair{mask->pub, *mask->sec}, c);
    }
    if (const auto* rsa = std::get_if<RsaKeyMaterial>(&key.material)) {
      if (rsa->pub.n != data.modulus)
        throw Error(errc::parameter_conflict, "modulus mismatch");
      return rsa_mask_decrypt(RsaMaskKeyPair{rsa->pub, *rsa->sec}, c);
    }
    if (const auto* eg = std::get_if<ElGamalKeyMaterial>(&key.material)) {
      if (eg->pub.p != data.modulus)
        throw Error(errc::parameter_conflict, "modulus mismatch");
      return elgamal_decrypt(ElGamalSubgroupKeyPair{eg->pub, *eg->sec}, c);
    }
    throw Error(errc::parameter_conflict,
                "the dh-subgroup scheme does not decrypt; use the dh command");
  }();

  if (data.mode == CodecMode::exponent) {
    const SubgroupSpec message_group = message_subgroup_of(key);
    const BigInt order = [&] {
      if (const auto* mask = std::get_if<MaskKeyMaterial>(&key.material))
        return mask->sec->s;
      if (const auto* rsa = std::get_if<RsaKeyMaterial>(&key.material))
        return rsa->sec->r_u;
      return std::get<ElGamalKeyMaterial>(key.material).sec->s;
    }();
    const BigInt m = decode_exponent(recovered, message_group, order);
    if (!args.out_path.empty())
      write_text_file(args.out_path, m.get_str() + "\n");
    std::cout << "message = " << m.get_str() << "\n";
  } else {
    if (!args.out_path.empty())
      write_text_file(args.out_path, recovered.residue().get_str() + "\n");
    std::cout << "secret = " << recovered.residue().get_str() << "\n";
  }
  return kExitOk;
}

// --- dh ----------------------------------------------------------------------

struct DhArgs {
  std::string r_spec;
  std::string s_spec;
  unsigned bits = 32;
  std::optional<std::uint64_t> seed;
  bool tamper = false;
};

int run_dh(const DhArgs& args) {
  Rng root(resolve_seed(args.seed));
  Rng setup_rng = root.split();
  Rng bob_rng = root.split();
  Rng alice_rng = root.split();

  const DhSession session = dh_setup(parse_decimal(args.r_spec),
                                     parse_decimal(args.s_spec), args.bits,
                                     setup_rng);
  const DhSessionPublic& pub = session.pub;

  const BigInt b = bob_rng.in_range(1, pub.p - 2);
  const GroupElement u = random_subgroup_element(pub.U, bob_rng);
  const BigInt a = alice_rng.in_range(1, pub.p - 2);
  const GroupElement h = random_subgroup_element(pub.H, alice_rng);

  GroupElement bob_wire = dh_bob_message(session, b, u);
  const GroupElement alice_wire = dh_alice_message(session, a, h);
  if (args.tamper) bob_wire = bob_wire * pub.g;

  const GroupElement bob_key = dh_derive(alice_wire, b, session.r);
  const GroupElement alice_key = dh_derive(bob_wire, a, session.s);

  std::ostringstream gens_h, gens_u;
  for (std::size_t i = 0; i < pub.H.generators.size(); ++i)
    gens_h << (i ? "," : "") << pub.H.generators[i].residue().get_str();
  for (std::size_t i = 0; i < pub.U.generators.size(); ++i)
    gens_u << (i ? "," : "") << pub.U.generators[i].residue().get_str();

  std::cout << "p = " << pub.p.get_str() << "\n";
  std::cout << "g = " << pub.g.residue().get_str() << "\n";
  std::cout << "r1 = " << pub.r1.get_str() << "\n";
  std::cout << "s1 = " << pub.s1.get_str() << "\n";
  std::cout << "h_generators = " << gens_h.str() << "\n";
  std::cout << "u_generators = " << gens_u.str() << "\n";
  std::cout << "bob_wire = " << bob_wire.residue().get_str() << "\n";
  std::cout << "alice_wire = " << alice_wire.residue().get_str() << "\n";
  std::cout << "bob_key = " << to_hex(bob_key.residue()) << "\n";
  std::cout << "alice_key = " << to_hex(alice_key.residue()) << "\n";
  if (bob_key == alice_key) {
    std::cout << "MATCH\n";
    return kExitOk;
  }
  std::cout << "MISMATCH\n";
  return kExitMismatch;
}

// --- oracle ------------------------------------------------------------------

struct OracleArgs {
  std::string modulus;
  std::string element;
  std::string generators;
  std::string p;
  std::string q;
  std::uint64_t cap = kOracleCap;
};

int run_oracle_order(const OracleArgs& args) {
  const BigInt m = parse_decimal(args.modulus);
  const GroupElement g(parse_decimal(args.element), m);
  std::cout << brute_order(g, args.cap).get_str() << "\n";
  return kExitOk;
}

int run_oracle_exponent(const OracleArgs& args) {
  const BigInt m = parse_decimal(args.modulus);
  const SubgroupSpec H =
      SubgroupSpec::from_residues(m, parse_order_list(args.generators));
  std::cout << brute_exponent(H, args.cap).get_str() << "\n";
  return kExitOk;
}

int run_oracle_member(const OracleArgs& args) {
  const BigInt m = parse_decimal(args.modulus);
  const SubgroupSpec H =
      SubgroupSpec::from_residues(m, parse_order_list(args.generators));
  const GroupElement f(parse_decimal(args.element), m);
  std::cout << (brute_membership(f, H, args.cap) ? "yes" : "no") << "\n";
  return kExitOk;
}

int run_oracle_qr(const OracleArgs& args) {
  const BigInt p = parse_decimal(args.p);
  const BigInt q = parse_decimal(args.q);
  const GroupElement f(parse_decimal(args.element), p * q);
  std::cout << (qr_by_euler(f, p, q) ? "yes" : "no") << "\n";
  return kExitOk;
}

// --- game --------------------------------------------------------------------

struct GameArgs {
  std::string r_spec;
  std::string s_spec;
  unsigned bits = 12;
  std::string adversary = "random";
  std::uint64_t trials = 1000;
  std::optional<std::uint64_t> seed;
};

int run_game(const GameArgs& args) {
  if (args.trials == 0) {
    std::cerr << "trials must be >= 1\n";
    return kExitUsage;
  }
  Rng root(resolve_seed(args.seed));
  Rng keygen_rng = root.split();
  Rng game_rng = root.split();

  const ElGamalSubgroupKeyPair kp = elgamal_keygen(
      parse_decimal(args.r_spec), parse_decimal(args.s_spec), args.bits,
      keygen_rng);

  Adversary adv;
  if (args.adversary == "random") {
    adv = random_guess_adversary();
  } else if (args.adversary == "brute") {
    adv = brute_membership_adversary();
  } else {
    std::cerr << "unknown adversary: " << args.adversary << "\n";
    return kExitUsage;
  }

  const IndGameResult result = ind_game(kp.pub, adv, args.trials, game_rng);
  std::cout << "trials = " << result.trials << "\n";
  std::cout << "wins = " << result.wins << "\n";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", result.advantage());
  std::cout << "advantage = " << buf << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"subgroup-masking encryption toolkit"};
  app.require_subcommand(1);

  KeygenArgs keygen_args;
  auto* keygen = app.add_subcommand("keygen", "generate a key pair");
  keygen->add_option("--scheme", keygen_args.scheme,
                     "field-mask | ring-mask | rsa-mask | elgamal-subgroup | "
                     "dh-subgroup")
      ->required();
  keygen->add_option("--r", keygen_args.r_spec,
                     "mask-side order (comma list for mask schemes)")
      ->required();
  keygen->add_option("--s", keygen_args.s_spec,
                     "message-side order (comma list for mask schemes)")
      ->required();
  keygen->add_option("--out", keygen_args.out_prefix,
                     "output prefix; writes <prefix>.pub and <prefix>.key")
      ->required();
  keygen->add_option("--bits", keygen_args.bits, "prime size in bits");
  keygen->add_option("--profile", keygen_args.profile,
                     "demo (32-bit) or standard (1024-bit)");
  keygen->add_option("--e", keygen_args.e, "RSA public exponent");
  keygen->add_option("--seed", keygen_args.seed, "deterministic seed");

  CryptArgs encrypt_args;
  auto* encrypt = app.add_subcommand("encrypt", "encrypt with a public key");
  encrypt->add_option("--key", encrypt_args.key_path, "key file (.pub)")
      ->required();
  encrypt->add_option("--in", encrypt_args.in_path,
                      "plaintext file (exponent mode)");
  encrypt->add_option("--out", encrypt_args.out_path, "ciphertext file")
      ->required();
  encrypt->add_option("--mode", encrypt_args.mode, "exponent | kem");
  encrypt->add_option("--seed", encrypt_args.seed, "deterministic seed");

  CryptArgs decrypt_args;
  auto* decrypt = app.add_subcommand("decrypt", "decrypt with a secret key");
  decrypt->add_option("--key", decrypt_args.key_path, "key file (.key)")
      ->required();
  decrypt->add_option("--in", decrypt_args.in_path, "ciphertext file")
      ->required();
  decrypt->add_option("--out", decrypt_args.out_path, "recovered output");

  DhArgs dh_args;
  auto* dh = app.add_subcommand("dh", "simulate a masked DH exchange");
  dh->add_option("--r", dh_args.r_spec, "Bob's private exponent")->required();
  dh->add_option("--s", dh_args.s_spec, "Alice's private exponent")
      ->required();
  dh->add_option("--bits", dh_args.bits, "prime size in bits");
  dh->add_option("--seed", dh_args.seed, "deterministic seed");
  dh->add_flag("--tamper", dh_args.tamper,
               "test hook: corrupt Bob's wire message");

  OracleArgs oracle_args;
  auto* oracle = app.add_subcommand("oracle", "desk-scale decision oracles");
  oracle->require_subcommand(1);
  auto* o_order = oracle->add_subcommand("order", "order of an element");
  o_order->add_option("--mod", oracle_args.modulus)->required();
  o_order->add_option("--elem", oracle_args.element)->required();
  o_order->add_option("--cap", oracle_args.cap);
  auto* o_exp = oracle->add_subcommand("exponent", "exponent of a subgroup");
  o_exp->add_option("--mod", oracle_args.modulus)->required();
  o_exp->add_option("--gens", oracle_args.generators)->required();
  o_exp->add_option("--cap", oracle_args.cap);
  auto* o_member = oracle->add_subcommand("member", "subgroup membership");
  o_member->add_option("--mod", oracle_args.modulus)->required();
  o_member->add_option("--gens", oracle_args.generators)->required();
  o_member->add_option("--elem", oracle_args.element)->required();
  o_member->add_option("--cap", oracle_args.cap);
  auto* o_qr = oracle->add_subcommand("qr", "quadratic residuosity mod p*q");
  o_qr->add_option("--p", oracle_args.p)->required();
  o_qr->add_option("--q", oracle_args.q)->required();
  o_qr->add_option("--elem", oracle_args.element)->required();

  GameArgs game_args;
  auto* game = app.add_subcommand("game", "two-message distinguishing game");
  game->add_option("--r", game_args.r_spec)->required();
  game->add_option("--s", game_args.s_spec)->required();
  game->add_option("--bits", game_args.bits, "prime size in bits");
  game->add_option("--adversary", game_args.adversary, "random | brute");
  game->add_option("--trials", game_args.trials);
  game->add_option("--seed", game_args.seed, "deterministic seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*keygen) return run_keygen(keygen_args);
    if (*encrypt) return run_encrypt(encrypt_args);
    if (*decrypt) return run_decrypt(decrypt_args);
    if (*dh) return run_dh(dh_args);
    if (*oracle) {
      if (*o_order) return run_oracle_order(oracle_args);
      if (*o_exp) return run_oracle_exponent(oracle_args);
      if (*o_member) return run_oracle_member(oracle_args);
      return run_oracle_qr(oracle_args);
    }
    if (*game) return run_game(game_args);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParamConflict;
  }
  return kExitUsage;
}
