#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace cwlab {

// Single-file container of named arrays plus a JSON header. Layout:
//   "CWAR1\n" | u64 header_bytes (LE) | header JSON | payload
// The header lists arrays with dtype, shape and payload offset, and carries
// an arbitrary "meta" JSON object. Round-trips are bit-exact.
class ArchiveWriter {
public:
    void put_f64(const std::string& name, const std::vector<double>& data,
                 const std::vector<int64_t>& shape);
    void put_f32(const std::string& name, const std::vector<float>& data,
                 const std::vector<int64_t>& shape);
    void put_u8(const std::string& name, const std::vector<uint8_t>& data,
                const std::vector<int64_t>& shape);
    void put_i64(const std::string& name, const std::vector<int64_t>& data,
                 const std::vector<int64_t>& shape);
    void set_meta(const nlohmann::json& meta);

    void save(const std::string& path) const;

private:
    struct Entry {
        std::string name;
        std::string dtype;
        std::vector<int64_t> shape;
        std::vector<uint8_t> bytes;
    };
    void put_raw(const std::string& name, const std::string& dtype, const void* data,
                 size_t nbytes, const std::vector<int64_t>& shape);

    std::vector<Entry> entries_;
    std::string meta_json_ = "{}";
};

class ArchiveReader {
public:
    explicit ArchiveReader(const std::string& path);

    bool has(const std::string& name) const;
    std::vector<std::string> names() const;
    const std::vector<int64_t>& shape(const std::string& name) const;
    std::string dtype(const std::string& name) const;

    std::vector<double> get_f64(const std::string& name) const;
    std::vector<float> get_f32(const std::string& name) const;
    std::vector<uint8_t> get_u8(const std::string& name) const;
    std::vector<int64_t> get_i64(const std::string& name) const;

    nlohmann::json meta() const;

private:
    struct Entry {
        std::string dtype;
        std::vector<int64_t> shape;
        uint64_t offset = 0;
        uint64_t nbytes = 0;
    };
    const Entry& entry(const std::string& name, const std::string& want_dtype) const;

    std::string path_;
    std::vector<std::pair<std::string, Entry>> entries_;
    std::vector<uint8_t> payload_;
    std::string meta_json_;
};

}  // namespace cwlab
