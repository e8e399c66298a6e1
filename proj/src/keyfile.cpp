#include "sgmask/keyfile.hpp"

#include "sgmask/error.hpp"
#include "sgmask/numtheory.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <utility>
#include <vector>

namespace sgmask {

namespace {

[[noreturn]] void bad(const std::string& what) {
  throw Error(errc::data_format, what);
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Ordered name/value records for one section, with strict single-use
// consumption so unknown and duplicate fields are rejected.
class FieldMap {
 public:
  void insert(const std::string& name, const std::string& value) {
    if (!fields_.emplace(name, value).second)
      bad("duplicate field: " + name);
  }

  BigInt require_int(const std::string& name) {
    return parse_decimal(require(name));
  }

  std::string require(const std::string& name) {
    auto it = fields_.find(name);
    if (it == fields_.end()) bad("missing field: " + name);
    std::string value = it->second;
    fields_.erase(it);
    return value;
  }

  std::vector<BigInt> require_list(const std::string& name) {
    const std::string raw = require(name);
    std::vector<BigInt> out;
    std::size_t start = 0;
    while (start <= raw.size()) {
      const std::size_t comma = raw.find(',', start);
      const std::string part =
          trim(comma == std::string::npos ? raw.substr(start)
                                          : raw.substr(start, comma - start));
      out.push_back(parse_decimal(part));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (out.empty()) bad("empty list in field: " + name);
    return out;
  }

  void expect_empty() const {
    if (!fields_.empty()) bad("unknown field: " + fields_.begin()->first);
  }

  bool empty() const { return fields_.empty(); }

 private:
  std::map<std::string, std::string> fields_;
};

struct ParsedSections {
  FieldMap top;
  FieldMap pub;
  FieldMap sec;
  bool has_public = false;
  bool has_secret = false;
};

ParsedSections parse_sections(const std::string& text) {
  ParsedSections out;
  FieldMap* current = &out.top;
  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    const std::string line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line == "[public]") {
        if (out.has_public) bad("duplicate [public] section");
        out.has_public = true;
        current = &out.pub;
      } else if (line == "[secret]") {
        if (out.has_secret) bad("duplicate [secret] section");
        if (!out.has_public) bad("[secret] before [public]");
        out.has_secret = true;
        current = &out.sec;
      } else {
        bad("unknown section: " + line);
      }
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) bad("expected name = value: " + line);
    const std::string name = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (name.empty() || value.empty()) bad("expected name = value: " + line);
    current->insert(name, value);
  }
  return out;
}

std::string join_residues(const std::vector<GroupElement>& gens) {
  std::string out;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (i > 0) out += ",";
    out += gens[i].residue().get_str();
  }
  return out;
}

SubgroupSpec subgroup_from_list(const BigInt& modulus,
                                const std::vector<BigInt>& residues) {
  try {
    return SubgroupSpec::from_residues(modulus, residues);
  } catch (const Error& e) {
    bad(std::string("bad generator: ") + e.what());
  }
}

GroupElement element_from(const BigInt& residue, const BigInt& modulus) {
  try {
    return GroupElement(residue, modulus);
  } catch (const Error& e) {
    bad(std::string("bad element: ") + e.what());
  }
}

BigInt gcd_of(const BigInt& a, const BigInt& b) {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

void check_mask_pair(const BigInt& r, const BigInt& s, const BigInt& t) {
  if (r < 1 || s < 1) bad("exponents must be >= 1");
  if (gcd_of(r, s) != 1) bad("r and s are not coprime");
  if (s == 1) {
    if (t != 0) bad("t must be 0 when s = 1");
  } else if ((r * t) % s != 1) {
    bad("r*t != 1 (mod s)");
  }
}

void check_generators_annihilate(const SubgroupSpec& spec, const BigInt& e,
                                 const char* which) {
  for (const GroupElement& g : spec.generators)
    if (!g.pow(e).is_identity())
      bad(std::string(which) + " generator does not satisfy its exponent");
}

// --- per-scheme writers ---------------------------------------------------

void write_mask(std::ostream& os, const MaskKeyMaterial& m,
                bool include_secret) {
  os << "[public]\n";
  os << "modulus = " << m.pub.modulus.get_str() << "\n";
  os << "h_generators = " << join_residues(m.pub.H.generators) << "\n";
  os << "u_generators = " << join_residues(m.pub.U.generators) << "\n";
  if (!include_secret) return;
  const MaskSecretKey& sec = *m.sec;
  os << "[secret]\n";
  if (sec.p) {
    os << "p = " << sec.p->get_str() << "\n";
    os << "q = " << sec.q->get_str() << "\n";
    os << "phi = " << sec.phi->get_str() << "\n";
  }
  os << "r = " << sec.r.get_str() << "\n";
  os << "s = " << sec.s.get_str() << "\n";
  os << "t = " << sec.t.get_str() << "\n";
}

void write_rsa(std::ostream& os, const RsaKeyMaterial& m,
               bool include_secret) {
  os << "[public]\n";
  os << "modulus = " << m.pub.n.get_str() << "\n";
  os << "h_generators = " << join_residues(m.pub.H.generators) << "\n";
  os << "u_generators = " << join_residues(m.pub.U.generators) << "\n";
  os << "e = " << m.pub.e.get_str() << "\n";
  if (!include_secret) return;
  const RsaMaskSecretKey& sec = *m.sec;
  os << "[secret]\n";
  os << "p = " << sec.p.get_str() << "\n";
  os << "q = " << sec.q.get_str() << "\n";
  os << "phi = " << sec.phi.get_str() << "\n";
  os << "t_h = " << sec.t_h.get_str() << "\n";
  os << "r_u = " << sec.r_u.get_str() << "\n";
  os << "d1 = " << sec.d1.get_str() << "\n";
  os << "d = " << sec.d.get_str() << "\n";
}

void write_elgamal(std::ostream& os, const ElGamalKeyMaterial& m,
                   bool include_secret) {
  os << "[public]\n";
  os << "p = " << m.pub.p.get_str() << "\n";
  os << "g = " << m.pub.g.residue().get_str() << "\n";
  os << "y = " << m.pub.y.residue().get_str() << "\n";
  os << "gb = " << m.pub.gb.residue().get_str() << "\n";
  if (!include_secret) return;
  const ElGamalSubgroupSecretKey& sec = *m.sec;
  os << "[secret]\n";
  os << "r = " << sec.r.get_str() << "\n";
  os << "s = " << sec.s.get_str() << "\n";
  os << "a = " << sec.a.get_str() << "\n";
  os << "k = " << sec.k.get_str() << "\n";
  os << "t = " << sec.t.get_str() << "\n";
}

void write_dh(std::ostream& os, const DhKeyMaterial& m, bool include_secret) {
  os << "[public]\n";
  os << "p = " << m.pub.p.get_str() << "\n";
  os << "g = " << m.pub.g.residue().get_str() << "\n";
  os << "r1 = " << m.pub.r1.get_str() << "\n";
  os << "s1 = " << m.pub.s1.get_str() << "\n";
  os << "h_generators = " << join_residues(m.pub.H.generators) << "\n";
  os << "u_generators = " << join_residues(m.pub.U.generators) << "\n";
  if (!include_secret) return;
  const DhPartySecrets& sec = *m.sec;
  os << "[secret]\n";
  os << "r = " << sec.r.get_str() << "\n";
  os << "s = " << sec.s.get_str() << "\n";
}

// --- per-scheme readers ---------------------------------------------------

MaskKeyMaterial read_mask(Scheme scheme, ParsedSections& p) {
  MaskKeyMaterial m;
  m.pub.kind = scheme == Scheme::field_mask ? PlatformKind::field
                                            : PlatformKind::ring;
  m.pub.modulus = p.pub.require_int("modulus");
  if (m.pub.modulus < 3) bad("modulus must be >= 3");
  m.pub.H = subgroup_from_list(m.pub.modulus, p.pub.require_list("h_generators"));
  m.pub.U = subgroup_from_list(m.pub.modulus, p.pub.require_list("u_generators"));
  if (!p.has_secret) return m;

  MaskSecretKey sec;
  if (scheme == Scheme::ring_mask) {
    sec.p = p.sec.require_int("p");
    sec.q = p.sec.require_int("q");
    sec.phi = p.sec.require_int("phi");
    if (*sec.p < 2 || *sec.q < 2 || *sec.p == *sec.q)
      bad("ring factors must be distinct and >= 2");
    if (*sec.p * *sec.q != m.pub.modulus) bad("modulus != p*q");
    if (*sec.phi != (*sec.p - 1) * (*sec.q - 1)) bad("phi(n) mismatch");
  }
  sec.r = p.sec.require_int("r");
  sec.s = p.sec.require_int("s");
  sec.t = p.sec.require_int("t");
  check_mask_pair(sec.r, sec.s, sec.t);
  check_generators_annihilate(m.pub.H, sec.r, "mask");
  check_generators_annihilate(m.pub.U, sec.s, "message");
  sec.d = sec.r * sec.t;
  m.sec = std::move(sec);
  return m;
}

RsaKeyMaterial read_rsa(ParsedSections& p) {
  RsaKeyMaterial m;
  m.pub.n = p.pub.require_int("modulus");
  if (m.pub.n < 3) bad("modulus must be >= 3");
  m.pub.H = subgroup_from_list(m.pub.n, p.pub.require_list("h_generators"));
  m.pub.U = subgroup_from_list(m.pub.n, p.pub.require_list("u_generators"));
  m.pub.e = p.pub.require_int("e");
  if (m.pub.e < 1) bad("e must be >= 1");
  if (!p.has_secret) return m;

  RsaMaskSecretKey sec;
  sec.p = p.sec.require_int("p");
  sec.q = p.sec.require_int("q");
  sec.phi = p.sec.require_int("phi");
  sec.t_h = p.sec.require_int("t_h");
  sec.r_u = p.sec.require_int("r_u");
  sec.d1 = p.sec.require_int("d1");
  sec.d = p.sec.require_int("d");
  if (sec.p < 2 || sec.q < 2 || sec.p == sec.q)
    bad("ring factors must be distinct and >= 2");
  if (sec.p * sec.q != m.pub.n) bad("modulus != p*q");
  if (sec.phi != (sec.p - 1) * (sec.q - 1)) bad("phi(n) mismatch");
  if (sec.t_h < 1 || sec.r_u < 1) bad("exponents must be >= 1");
  if (gcd_of(sec.t_h, sec.r_u) != 1) bad("t_h and r_u are not coprime");
  if (gcd_of(m.pub.e, sec.r_u) != 1) bad("e and r_u are not coprime");
  if (sec.r_u == 1) {
    if (sec.d1 != 0) bad("d1 must be 0 when r_u = 1");
  } else if ((sec.t_h * m.pub.e * sec.d1) % sec.r_u != 1) {
    bad("(t_h*e)*d1 != 1 (mod r_u)");
  }
  if (sec.d != sec.t_h * sec.d1) bad("d != t_h*d1");
  check_generators_annihilate(m.pub.H, sec.t_h, "mask");
  check_generators_annihilate(m.pub.U, sec.r_u, "message");
  m.sec = std::move(sec);
  return m;
}

ElGamalKeyMaterial read_elgamal(ParsedSections& p) {
  const BigInt prime = p.pub.require_int("p");
  if (prime < 3) bad("p must be >= 3");
  ElGamalKeyMaterial m{
      ElGamalSubgroupPublicKey{
          prime, element_from(p.pub.require_int("g"), prime),
          element_from(p.pub.require_int("y"), prime),
          element_from(p.pub.require_int("gb"), prime)},
      std::nullopt};
  if (!p.has_secret) return m;

  ElGamalSubgroupSecretKey sec;
  sec.r = p.sec.require_int("r");
  sec.s = p.sec.require_int("s");
  sec.a = p.sec.require_int("a");
  sec.k = p.sec.require_int("k");
  sec.t = p.sec.require_int("t");
  if (sec.r < 2 || sec.s < 2) bad("r and s must be >= 2");
  if (gcd_of(sec.r, sec.s) != 1) bad("r and s are not coprime");
  if (prime - 1 != sec.r * sec.s * sec.k) bad("p-1 != r*s*k");
  if (sec.a != sec.s * sec.k) bad("a != s*k");
  if ((sec.r * sec.t) % sec.s != 1) bad("r*t != 1 (mod s)");
  if (m.pub.g.pow(sec.a) != m.pub.y) bad("y != g^a");
  if (m.pub.g.pow(sec.r * sec.k) != m.pub.gb) bad("gb != g^b");
  m.sec = std::move(sec);
  return m;
}

DhKeyMaterial read_dh(ParsedSections& p) {
  const BigInt prime = p.pub.require_int("p");
  if (prime < 3) bad("p must be >= 3");
  DhKeyMaterial m{
      DhSessionPublic{prime, element_from(p.pub.require_int("g"), prime),
                      p.pub.require_int("r1"), p.pub.require_int("s1"),
                      SubgroupSpec{}, SubgroupSpec{}},
      std::nullopt};
  if (m.pub.r1 < 1 || m.pub.s1 < 1) bad("r1 and s1 must be >= 1");
  m.pub.H = subgroup_from_list(prime, p.pub.require_list("h_generators"));
  m.pub.U = subgroup_from_list(prime, p.pub.require_list("u_generators"));
  if (!p.has_secret) return m;

  DhPartySecrets sec;
  sec.r = p.sec.require_int("r");
  sec.s = p.sec.require_int("s");
  if (sec.r < 1 || sec.s < 1) bad("r and s must be >= 1");
  if (gcd_of(sec.r, sec.s) != 1) bad("r and s are not coprime");
  if (m.pub.r1 % sec.r != 0) bad("r does not divide r1");
  if (m.pub.s1 % sec.s != 0) bad("s does not divide s1");
  check_generators_annihilate(m.pub.H, sec.r, "mask");
  check_generators_annihilate(m.pub.U, sec.s, "message");
  m.sec = std::move(sec);
  return m;
}

std::string mode_name(CodecMode mode) {
  return mode == CodecMode::exponent ? "exponent" : "kem";
}

std::optional<CodecMode> mode_from_name(const std::string& name) {
  if (name == "exponent") return CodecMode::exponent;
  if (name == "kem") return CodecMode::kem;
  return std::nullopt;
}

}  // namespace

std::string scheme_name(Scheme scheme) {
  switch (scheme) {
    case Scheme::field_mask: return "field-mask";
    case Scheme::ring_mask: return "ring-mask";
    case Scheme::rsa_mask: return "rsa-mask";
    case Scheme::elgamal_subgroup: return "elgamal-subgroup";
    case Scheme::dh_subgroup: return "dh-subgroup";
  }
  bad("bad scheme enum");
}

std::optional<Scheme> scheme_from_name(const std::string& name) {
  if (name == "field-mask") return Scheme::field_mask;
  if (name == "ring-mask") return Scheme::ring_mask;
  if (name == "rsa-mask") return Scheme::rsa_mask;
  if (name == "elgamal-subgroup") return Scheme::elgamal_subgroup;
  if (name == "dh-subgroup") return Scheme::dh_subgroup;
  return std::nullopt;
}

bool KeyFileContents::has_secret() const {
  return std::visit([](const auto& m) { return m.sec.has_value(); }, material);
}

std::string write_key_text(const KeyFileContents& contents,
                           bool include_secret) {
  if (include_secret && !contents.has_secret())
    throw Error(errc::invalid_argument, "no secret half to write");
  std::ostringstream os;
  os << "version = 1\n";
  os << "scheme = " << scheme_name(contents.scheme) << "\n";
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, MaskKeyMaterial>)
          write_mask(os, m, include_secret);
        else if constexpr (std::is_same_v<T, RsaKeyMaterial>)
          write_rsa(os, m, include_secret);
        else if constexpr (std::is_same_v<T, ElGamalKeyMaterial>)
          write_elgamal(os, m, include_secret);
        else
          write_dh(os, m, include_secret);
      },
      contents.material);
  return os.str();
}

KeyFileContents read_key_text(const std::string& text) {
  ParsedSections sections = parse_sections(text);
  if (sections.top.require("version") != "1") bad("unsupported version");
  const auto scheme = scheme_from_name(sections.top.require("scheme"));
  if (!scheme) bad("unknown scheme");
  sections.top.expect_empty();
  if (!sections.has_public) bad("missing [public] section");
  if (sections.has_secret && sections.sec.empty())
    bad("[secret] section is empty");

  KeyFileContents out;
  out.scheme = *scheme;
  switch (*scheme) {
    case Scheme::field_mask:
    case Scheme::ring_mask:
      out.material = read_mask(*scheme, sections);
      break;
    case Scheme::rsa_mask:
      out.material = read_rsa(sections);
      break;
    case Scheme::elgamal_subgroup:
      out.material = read_elgamal(sections);
      break;
    case Scheme::dh_subgroup:
      out.material = read_dh(sections);
      break;
  }
  sections.pub.expect_empty();
  sections.sec.expect_empty();
  return out;
}

void write_key_file(const std::string& path, const KeyFileContents& contents,
                    bool include_secret) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw Error(errc::data_format, "cannot open " + path);
  os << write_key_text(contents, include_secret);
  if (!os.flush()) throw Error(errc::data_format, "cannot write " + path);
}

KeyFileContents read_key_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error(errc::data_format, "cannot open " + path);
  std::ostringstream buffer;
  buffer << is.rdbuf();
  return read_key_text(buffer.str());
}

std::string write_ciphertext_text(const CiphertextFileData& data) {
  std::ostringstream os;
  os << "scheme = " << scheme_name(data.scheme) << "\n";
  os << "modulus = " << data.modulus.get_str() << "\n";
  os << "value = " << data.value.get_str() << "\n";
  os << "mode = " << mode_name(data.mode) << "\n";
  return os.str();
}

CiphertextFileData read_ciphertext_text(const std::string& text) {
  ParsedSections sections = parse_sections(text);
  if (sections.has_public || sections.has_secret)
    bad("ciphertext files have no sections");

  CiphertextFileData data;
  const auto scheme = scheme_from_name(sections.top.require("scheme"));
  if (!scheme) bad("unknown scheme");
  data.scheme = *scheme;
  data.modulus = sections.top.require_int("modulus");
  data.value = sections.top.require_int("value");
  const auto mode = mode_from_name(sections.top.require("mode"));
  if (!mode) bad("unknown mode");
  data.mode = *mode;
  sections.top.expect_empty();

  if (data.modulus < 3) bad("modulus must be >= 3");
  if (data.value < 1 || data.value >= data.modulus)
    bad("ciphertext value out of range");
  element_from(data.value, data.modulus);  // unit-group membership
  return data;
}

void write_ciphertext_file(const std::string& path,
                           const CiphertextFileData& data) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw Error(errc::data_format, "cannot open " + path);
  os << write_ciphertext_text(data);
  if (!os.flush()) throw Error(errc::data_format, "cannot write " + path);
}

CiphertextFileData read_ciphertext_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error(errc::data_format, "cannot open " + path);
  std::ostringstream buffer;
  buffer << is.rdbuf();
  return read_ciphertext_text(buffer.str());
}

}  // namespace sgmask
