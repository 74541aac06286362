#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "efrep/integer_set.hpp"

namespace efrep {

enum class SetFormat { kText, kBinary };

// Binary layout: magic "EFSET1", n_max as u64 little endian, then
// ceil((n_max + 1) / 8) payload bytes; bit k of the stream (LSB first within
// each byte) is chi_A(k).
inline constexpr char kSetMagic[] = "EFSET1";

void write_set(std::ostream& os, const IntegerSet& a, SetFormat format);
void write_set(const std::string& path, const IntegerSet& a, SetFormat format);

// Text: one decimal integer per line, strictly increasing; n_max defaults to
// the largest element. Throws FormatError on malformed input.
IntegerSet read_set(std::istream& is, SetFormat format,
                    std::optional<std::uint64_t> text_n_max = {});
// Format sniffed from the magic bytes.
IntegerSet read_set(const std::string& path, std::optional<std::uint64_t> text_n_max = {});

SetFormat parse_set_format(const std::string& name);

}  // namespace efrep
