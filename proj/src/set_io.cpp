#include "efrep/set_io.hpp"

#include <algorithm>
#include <charconv>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <vector>

#include "efrep/error.hpp"

namespace efrep {
namespace {

constexpr std::size_t kMagicLen = sizeof(kSetMagic) - 1;

std::uint64_t payload_bytes(std::uint64_t n_max) { return n_max / 8 + 1; }

}  // namespace

void write_set(std::ostream& os, const IntegerSet& a, SetFormat format) {
  if (format == SetFormat::kText) {
    std::string buf;
    char num[24];
    a.for_each([&](std::uint64_t k) {
      auto [ptr, ec] = std::to_chars(num, num + sizeof(num), k);
      buf.append(num, ptr);
      buf.push_back('\n');
    });
    os.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    return;
  }
  os.write(kSetMagic, kMagicLen);
  char header[8];
  for (int i = 0; i < 8; ++i) header[i] = static_cast<char>((a.n_max() >> (8 * i)) & 0xff);
  os.write(header, 8);
  const auto n_bytes = payload_bytes(a.n_max());
  std::vector<char> payload(n_bytes);
  const auto words = a.words();
  for (std::uint64_t i = 0; i < n_bytes; ++i) {
    payload[i] = static_cast<char>((words[i >> 3] >> (8 * (i & 7))) & 0xff);
  }
  os.write(payload.data(), static_cast<std::streamsize>(payload.size()));
}

void write_set(const std::string& path, const IntegerSet& a, SetFormat format) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw FormatError("cannot open '" + path + "' for writing");
  write_set(os, a, format);
  if (!os) throw FormatError("write to '" + path + "' failed");
}

IntegerSet read_set(std::istream& is, SetFormat format, std::optional<std::uint64_t> text_n_max) {
  if (format == SetFormat::kBinary) {
    char magic[kMagicLen];
    if (!is.read(magic, kMagicLen) || std::memcmp(magic, kSetMagic, kMagicLen) != 0) {
      throw FormatError("missing EFSET1 magic");
    }
    unsigned char header[8];
    if (!is.read(reinterpret_cast<char*>(header), 8)) throw FormatError("truncated EFSET1 header");
    std::uint64_t n_max = 0;
    for (int i = 0; i < 8; ++i) n_max |= static_cast<std::uint64_t>(header[i]) << (8 * i);
    if (n_max >= (std::uint64_t{1} << 40)) throw FormatError("EFSET1 n_max implausibly large");
    const auto n_bytes = payload_bytes(n_max);
    std::vector<unsigned char> payload(n_bytes);
    if (!is.read(reinterpret_cast<char*>(payload.data()), static_cast<std::streamsize>(n_bytes))) {
      throw FormatError("truncated EFSET1 payload: expected " + std::to_string(n_bytes) + " bytes");
    }
    if (is.peek() != std::char_traits<char>::eof()) throw FormatError("trailing bytes after EFSET1 payload");
    const auto tail_bits = (n_max + 1) & 7;
    if (tail_bits != 0 && (payload.back() >> tail_bits) != 0) {
      throw FormatError("EFSET1 payload has elements beyond n_max");
    }
    IntegerSet a(n_max);
    auto words = a.words();
    for (std::uint64_t i = 0; i < n_bytes; ++i) {
      words[i >> 3] |= static_cast<std::uint64_t>(payload[i]) << (8 * (i & 7));
    }
    return a;
  }

  std::vector<std::uint64_t> el;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    const auto e = line.find_last_not_of(" \t\r") + 1;
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(line.data() + b, line.data() + e, v);
    if (ec != std::errc() || ptr != line.data() + e) {
      throw FormatError("line " + std::to_string(lineno) + ": not a non-negative integer");
    }
    if (!el.empty() && v <= el.back()) {
      throw FormatError("line " + std::to_string(lineno) + ": entries must be strictly increasing");
    }
    el.push_back(v);
  }
  const auto n_max = text_n_max.value_or(el.empty() ? 0 : el.back());
  if (!el.empty() && el.back() > n_max) {
    throw FormatError("element " + std::to_string(el.back()) + " exceeds declared n_max " +
                      std::to_string(n_max));
  }
  return IntegerSet::from_elements(n_max, el);
}

IntegerSet read_set(const std::string& path, std::optional<std::uint64_t> text_n_max) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw FormatError("cannot open '" + path + "'");
  char magic[kMagicLen] = {};
  is.read(magic, kMagicLen);
  const bool binary = is.gcount() == static_cast<std::streamsize>(kMagicLen) &&
                      std::memcmp(magic, kSetMagic, kMagicLen) == 0;
  is.clear();
  is.seekg(0);
  return read_set(is, binary ? SetFormat::kBinary : SetFormat::kText, text_n_max);
}

SetFormat parse_set_format(const std::string& name) {
  if (name == "text") return SetFormat::kText;
  if (name == "efset1" || name == "EFSET1" || name == "binary") return SetFormat::kBinary;
  throw ParameterError("unknown set format '" + name + "' (text, efset1)");
}

}  // namespace efrep
