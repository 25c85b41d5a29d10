#pragma once

#include <bit>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>

#include "cwemap/errors.hpp"

namespace cwemap {

// Little-endian primitives for the model file formats.

inline void write_u8(std::ostream& out, std::uint8_t v) { out.put(static_cast<char>(v)); }

inline void write_u32(std::ostream& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.put(static_cast<char>((v >> (8 * i)) & 0xFF));
}

inline void write_u64(std::ostream& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.put(static_cast<char>((v >> (8 * i)) & 0xFF));
}

inline void write_i64(std::ostream& out, std::int64_t v) { write_u64(out, static_cast<std::uint64_t>(v)); }

inline void write_f64(std::ostream& out, double v) { write_u64(out, std::bit_cast<std::uint64_t>(v)); }

inline void write_str(std::ostream& out, const std::string& s) {
    write_u32(out, static_cast<std::uint32_t>(s.size()));
    out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

inline std::uint8_t read_u8(std::istream& in) {
    int c = in.get();
    if (c == EOF) fail(errc::io_error, "unexpected end of file");
    return static_cast<std::uint8_t>(c);
}

inline std::uint32_t read_u32(std::istream& in) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(read_u8(in)) << (8 * i);
    return v;
}

inline std::uint64_t read_u64(std::istream& in) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(read_u8(in)) << (8 * i);
    return v;
}

inline std::int64_t read_i64(std::istream& in) { return static_cast<std::int64_t>(read_u64(in)); }

inline double read_f64(std::istream& in) { return std::bit_cast<double>(read_u64(in)); }

inline std::string read_str(std::istream& in) {
    std::uint32_t n = read_u32(in);
    std::string s(n, '\0');
    in.read(s.data(), static_cast<std::streamsize>(n));
    if (static_cast<std::uint32_t>(in.gcount()) != n) fail(errc::io_error, "unexpected end of file");
    return s;
}

inline void expect_magic(std::istream& in, const char (&magic)[9], std::uint8_t version, const char* what) {
    char got[8];
    in.read(got, 8);
    if (in.gcount() != 8 || std::string(got, 8) != std::string(magic, 8))
        fail(errc::version_mismatch, std::string(what) + ": bad magic header");
    std::uint8_t v = read_u8(in);
    if (v != version)
        fail(errc::version_mismatch,
             std::string(what) + ": unsupported version " + std::to_string(int(v)));
}

} // namespace cwemap
