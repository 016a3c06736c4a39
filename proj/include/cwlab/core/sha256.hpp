#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace cwlab {

// Minimal SHA-256 (FIPS 180-4). Used for parameter-freezing checks and
// config hashes, not for anything security-sensitive.
class Sha256 {
public:
    Sha256();
    void update(const void* data, size_t len);
    void update(const std::string& s) { update(s.data(), s.size()); }
    // Finalizes and returns the lowercase hex digest. The object must not be
    // updated afterwards.
    std::string hex_digest();

    static std::string of(const void* data, size_t len);
    static std::string of(const std::string& s) { return of(s.data(), s.size()); }
    static std::string of_doubles(const std::vector<double>& v);

private:
    void process_block(const uint8_t* block);

    uint32_t h_[8];
    uint8_t buffer_[64];
    size_t buffer_len_ = 0;
    uint64_t total_len_ = 0;
};

}  // namespace cwlab
