#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <string_view>

#include "cwemap/errors.hpp"

namespace cwemap {

// 64-bit FNV-1a. Used as a content fingerprint in provenance records,
// not for anything adversarial.
class fnv1a {
public:
    fnv1a& update(std::string_view bytes) {
        for (unsigned char b : bytes) {
            state_ ^= b;
            state_ *= 1099511628211ULL;
        }
        return *this;
    }

    fnv1a& update_u64(std::uint64_t v) {
        char buf[8];
        for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
        return update(std::string_view(buf, 8));
    }

    std::uint64_t digest() const { return state_; }

    std::string hex() const {
        static const char* digits = "0123456789abcdef";
        std::string out(16, '0');
        std::uint64_t v = state_;
        for (int i = 15; i >= 0; --i) {
            out[static_cast<std::size_t>(i)] = digits[v & 0xF];
            v >>= 4;
        }
        return out;
    }

private:
    std::uint64_t state_ = 1469598103934665603ULL;
};

inline std::string hash_bytes_hex(std::string_view bytes) {
    return fnv1a().update(bytes).hex();
}

inline std::string hash_file_hex(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(errc::missing_file, "cannot open " + path);
    fnv1a h;
    char buf[1 << 14];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0)
        h.update(std::string_view(buf, static_cast<std::size_t>(in.gcount())));
    return h.hex();
}

} // namespace cwemap
