#include "cwlab/core/archive.hpp"

#include <cstring>
#include <fstream>

#include <nlohmann/json.hpp>

#include "cwlab/core/errors.hpp"

namespace cwlab {

using nlohmann::json;

namespace {
constexpr char kMagic[6] = {'C', 'W', 'A', 'R', '1', '\n'};
constexpr int kSchemaVersion = 1;

int64_t shape_elems(const std::vector<int64_t>& shape) {
    int64_t n = 1;
    for (int64_t s : shape) n *= s;
    return n;
}
}  // namespace

void ArchiveWriter::put_raw(const std::string& name, const std::string& dtype, const void* data,
                            size_t nbytes, const std::vector<int64_t>& shape) {
    Entry e;
    e.name = name;
    e.dtype = dtype;
    e.shape = shape;
    e.bytes.resize(nbytes);
    if (nbytes > 0) std::memcpy(e.bytes.data(), data, nbytes);
    entries_.push_back(std::move(e));
}

void ArchiveWriter::put_f64(const std::string& name, const std::vector<double>& data,
                            const std::vector<int64_t>& shape) {
    if (shape_elems(shape) != int64_t(data.size()))
        throw InputError("archive: shape mismatch for array '" + name + "'");
    put_raw(name, "f64", data.data(), data.size() * 8, shape);
}

void ArchiveWriter::put_f32(const std::string& name, const std::vector<float>& data,
                            const std::vector<int64_t>& shape) {
    if (shape_elems(shape) != int64_t(data.size()))
        throw InputError("archive: shape mismatch for array '" + name + "'");
    put_raw(name, "f32", data.data(), data.size() * 4, shape);
}

void ArchiveWriter::put_u8(const std::string& name, const std::vector<uint8_t>& data,
                           const std::vector<int64_t>& shape) {
    if (shape_elems(shape) != int64_t(data.size()))
        throw InputError("archive: shape mismatch for array '" + name + "'");
    put_raw(name, "u8", data.data(), data.size(), shape);
}

void ArchiveWriter::put_i64(const std::string& name, const std::vector<int64_t>& data,
                            const std::vector<int64_t>& shape) {
    if (shape_elems(shape) != int64_t(data.size()))
        throw InputError("archive: shape mismatch for array '" + name + "'");
    put_raw(name, "i64", data.data(), data.size() * 8, shape);
}

void ArchiveWriter::set_meta(const json& meta) { meta_json_ = meta.dump(); }

void ArchiveWriter::save(const std::string& path) const {
    json arrays = json::array();
    uint64_t offset = 0;
    for (const auto& e : entries_) {
        arrays.push_back({{"name", e.name},
                          {"dtype", e.dtype},
                          {"shape", e.shape},
                          {"offset", offset},
                          {"bytes", e.bytes.size()}});
        offset += e.bytes.size();
    }
    json header = {{"schema_version", kSchemaVersion},
                   {"arrays", arrays},
                   {"meta", json::parse(meta_json_)}};
    std::string hdr = header.dump();

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("archive: cannot open '" + path + "' for writing");
    out.write(kMagic, sizeof(kMagic));
    uint64_t hdr_len = hdr.size();
    uint8_t len_le[8];
    for (int i = 0; i < 8; ++i) len_le[i] = uint8_t(hdr_len >> (8 * i));
    out.write(reinterpret_cast<const char*>(len_le), 8);
    out.write(hdr.data(), std::streamsize(hdr.size()));
    for (const auto& e : entries_)
        out.write(reinterpret_cast<const char*>(e.bytes.data()), std::streamsize(e.bytes.size()));
    if (!out) throw InputError("archive: write failed for '" + path + "'");
}

ArchiveReader::ArchiveReader(const std::string& path) : path_(path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("archive: cannot open '" + path + "'");
    char magic[6];
    in.read(magic, 6);
    if (!in || std::memcmp(magic, kMagic, 6) != 0)
        throw FormatError("archive: bad magic in '" + path + "'");
    uint8_t len_le[8];
    in.read(reinterpret_cast<char*>(len_le), 8);
    if (!in) throw FormatError("archive: truncated header length in '" + path + "'");
    uint64_t hdr_len = 0;
    for (int i = 0; i < 8; ++i) hdr_len |= uint64_t(len_le[i]) << (8 * i);
    std::string hdr(hdr_len, '\0');
    in.read(hdr.data(), std::streamsize(hdr_len));
    if (!in) throw FormatError("archive: truncated header in '" + path + "'");

    json header;
    try {
        header = json::parse(hdr);
    } catch (const json::exception& e) {
        throw FormatError("archive: invalid header JSON in '" + path + "': " + e.what());
    }
    if (header.value("schema_version", -1) != kSchemaVersion)
        throw FormatError("archive: schema version mismatch in '" + path + "'");
    meta_json_ = header.at("meta").dump();

    uint64_t payload_len = 0;
    for (const auto& a : header.at("arrays")) {
        Entry e;
        e.dtype = a.at("dtype").get<std::string>();
        e.shape = a.at("shape").get<std::vector<int64_t>>();
        e.offset = a.at("offset").get<uint64_t>();
        e.nbytes = a.at("bytes").get<uint64_t>();
        payload_len = std::max(payload_len, e.offset + e.nbytes);
        entries_.emplace_back(a.at("name").get<std::string>(), std::move(e));
    }
    payload_.resize(payload_len);
    in.read(reinterpret_cast<char*>(payload_.data()), std::streamsize(payload_len));
    if (in.gcount() != std::streamsize(payload_len))
        throw FormatError("archive: truncated payload in '" + path + "'");
}

bool ArchiveReader::has(const std::string& name) const {
    for (const auto& [n, e] : entries_)
        if (n == name) return true;
    return false;
}

std::vector<std::string> ArchiveReader::names() const {
    std::vector<std::string> out;
    out.reserve(entries_.size());
    for (const auto& [n, e] : entries_) out.push_back(n);
    return out;
}

const ArchiveReader::Entry& ArchiveReader::entry(const std::string& name,
                                                 const std::string& want_dtype) const {
    for (const auto& [n, e] : entries_) {
        if (n != name) continue;
        if (!want_dtype.empty() && e.dtype != want_dtype)
            throw FormatError("archive: array '" + name + "' has dtype " + e.dtype + ", expected " +
                              want_dtype);
        return e;
    }
    throw FormatError("archive: no array named '" + name + "' in '" + path_ + "'");
}

const std::vector<int64_t>& ArchiveReader::shape(const std::string& name) const {
    return entry(name, "").shape;
}

std::string ArchiveReader::dtype(const std::string& name) const { return entry(name, "").dtype; }

std::vector<double> ArchiveReader::get_f64(const std::string& name) const {
    const Entry& e = entry(name, "f64");
    std::vector<double> out(e.nbytes / 8);
    std::memcpy(out.data(), payload_.data() + e.offset, e.nbytes);
    return out;
}

std::vector<float> ArchiveReader::get_f32(const std::string& name) const {
    const Entry& e = entry(name, "f32");
    std::vector<float> out(e.nbytes / 4);
    std::memcpy(out.data(), payload_.data() + e.offset, e.nbytes);
    return out;
}

std::vector<uint8_t> ArchiveReader::get_u8(const std::string& name) const {
    const Entry& e = entry(name, "u8");
    std::vector<uint8_t> out(e.nbytes);
    std::memcpy(out.data(), payload_.data() + e.offset, e.nbytes);
    return out;
}

std::vector<int64_t> ArchiveReader::get_i64(const std::string& name) const {
    const Entry& e = entry(name, "i64");
    std::vector<int64_t> out(e.nbytes / 8);
    std::memcpy(out.data(), payload_.data() + e.offset, e.nbytes);
    return out;
}

json ArchiveReader::meta() const { return json::parse(meta_json_); }

}  // namespace cwlab
