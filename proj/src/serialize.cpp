#include "scv/serialize.hpp"

#include <bit>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace scv {
namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error("serialize: " + msg); }

void put_bytes(std::ostream& os, std::uint64_t v, int n_bytes) {
    char buf[8];
    for (int i = 0; i < n_bytes; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    os.write(buf, n_bytes);
}

void put_u8(std::ostream& os, std::uint8_t v) { put_bytes(os, v, 1); }
void put_u16(std::ostream& os, std::uint16_t v) { put_bytes(os, v, 2); }
void put_u32(std::ostream& os, std::uint32_t v) { put_bytes(os, v, 4); }
void put_u64(std::ostream& os, std::uint64_t v) { put_bytes(os, v, 8); }
void put_f64(std::ostream& os, double v) { put_bytes(os, std::bit_cast<std::uint64_t>(v), 8); }

std::uint64_t get_bytes(std::istream& is, int n_bytes) {
    char buf[8];
    is.read(buf, n_bytes);
    if (is.gcount() != n_bytes) fail("truncated input");
    std::uint64_t v = 0;
    for (int i = 0; i < n_bytes; ++i)
        v |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf[i])) << (8 * i);
    return v;
}

std::uint8_t get_u8(std::istream& is) { return static_cast<std::uint8_t>(get_bytes(is, 1)); }
std::uint16_t get_u16(std::istream& is) { return static_cast<std::uint16_t>(get_bytes(is, 2)); }
std::uint32_t get_u32(std::istream& is) { return static_cast<std::uint32_t>(get_bytes(is, 4)); }
std::uint64_t get_u64(std::istream& is) { return get_bytes(is, 8); }
double get_f64(std::istream& is) { return std::bit_cast<double>(get_bytes(is, 8)); }

template <typename T, typename PutFn>
void put_array(std::ostream& os, const std::vector<T>& v, PutFn put) {
    put_u64(os, v.size());
    for (const T& x : v) put(os, x);
}

template <typename T, typename GetFn>
std::vector<T> get_array(std::istream& is, GetFn get) {
    const std::uint64_t n = get_u64(is);
    std::vector<T> v;
    v.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) v.push_back(static_cast<T>(get(is)));
    return v;
}

void write_header(std::ostream& os, FormatKind kind) {
    os.write(kSerialMagic, 4);
    put_u32(os, kSerialVersion);
    put_u8(os, static_cast<std::uint8_t>(kind));
}

void expect_kind(std::istream& is, FormatKind want) {
    const FormatKind got = read_header(is);
    if (got != want)
        fail("container holds format kind " + std::to_string(static_cast<int>(got)) +
             ", expected " + std::to_string(static_cast<int>(want)));
}

/// End-of-payload check: trailing bytes mean the reader and writer disagree.
void expect_end(std::istream& is) {
    if (is.peek() != std::istream::traits_type::eof()) fail("trailing bytes after payload");
}

void check_ptr_array(const std::vector<std::uint64_t>& ptr, std::size_t n_entries,
                     std::size_t n_items, const char* name) {
    if (ptr.size() != n_entries + 1) fail(std::string(name) + " has wrong length");
    if (ptr.front() != 0 || ptr.back() != n_items)
        fail(std::string(name) + " does not span the item array");
    for (std::size_t i = 1; i < ptr.size(); ++i)
        if (ptr[i - 1] > ptr[i]) fail(std::string(name) + " is not monotone");
}

template <typename M>
void save_to_path(const M& m, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) fail("cannot open " + path + " for writing");
    save_matrix(m, os);
    if (!os) fail("write to " + path + " failed");
}

template <typename M, typename LoadFn>
M load_from_path(const std::string& path, LoadFn load) {
    std::ifstream is(path, std::ios::binary);
    if (!is) fail("cannot open " + path);
    return load(is);
}

}  // namespace

FormatKind read_header(std::istream& is) {
    char magic[4];
    is.read(magic, 4);
    if (is.gcount() != 4 || !std::equal(magic, magic + 4, kSerialMagic))
        fail("bad magic, not a matrix container");
    const std::uint32_t version = get_u32(is);
    if (version != kSerialVersion) fail("unsupported version " + std::to_string(version));
    const std::uint8_t kind = get_u8(is);
    if (kind > static_cast<std::uint8_t>(FormatKind::Scv))
        fail("unknown format kind " + std::to_string(kind));
    return static_cast<FormatKind>(kind);
}

FormatKind peek_kind(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) fail("cannot open " + path);
    return read_header(is);
}

void save_matrix(const CooMatrix& m, std::ostream& os) {
    write_header(os, FormatKind::Coo);
    put_u32(os, m.n_rows);
    put_u32(os, m.n_cols);
    put_u64(os, m.triplets.size());
    for (const Triplet& t : m.triplets) {
        put_u32(os, t.row);
        put_u32(os, t.col);
        put_f64(os, t.value);
    }
}

void save_matrix(const CsrMatrix& m, std::ostream& os) {
    write_header(os, FormatKind::Csr);
    put_u32(os, m.n_rows);
    put_u32(os, m.n_cols);
    put_array(os, m.values, put_f64);
    put_array(os, m.col_id, put_u32);
    put_array(os, m.row_ptr, put_u64);
}

void save_matrix(const CscMatrix& m, std::ostream& os) {
    write_header(os, FormatKind::Csc);
    put_u32(os, m.n_rows);
    put_u32(os, m.n_cols);
    put_array(os, m.values, put_f64);
    put_array(os, m.row_id, put_u32);
    put_array(os, m.col_ptr, put_u64);
}

void save_matrix(const BcsrMatrix& m, std::ostream& os) {
    write_header(os, FormatKind::Bcsr);
    put_u32(os, m.n_rows);
    put_u32(os, m.n_cols);
    put_u32(os, m.block_size);
    put_array(os, m.values, put_f64);
    put_array(os, m.block_col, put_u32);
    put_array(os, m.block_row_ptr, put_u64);
}

void save_matrix(const ScvMatrix& m, std::ostream& os) {
    write_header(os, FormatKind::Scv);
    put_u32(os, m.n_rows);
    put_u32(os, m.n_cols);
    put_u32(os, m.vec_height);
    put_u32(os, m.tile_width);
    put_u8(os, static_cast<std::uint8_t>(m.order));
    put_u64(os, m.block_order.size());
    for (const TilePos& p : m.block_order) {
        put_u32(os, p.block_row);
        put_u32(os, p.tile_col);
    }
    put_array(os, m.blk_ptr, put_u64);
    put_array(os, m.blk_id, put_u16);
    put_array(os, m.values, put_f64);
}

void save_matrix(const CooMatrix& m, const std::string& path) { save_to_path(m, path); }
void save_matrix(const CsrMatrix& m, const std::string& path) { save_to_path(m, path); }
void save_matrix(const CscMatrix& m, const std::string& path) { save_to_path(m, path); }
void save_matrix(const BcsrMatrix& m, const std::string& path) { save_to_path(m, path); }
void save_matrix(const ScvMatrix& m, const std::string& path) { save_to_path(m, path); }

CooMatrix load_coo(std::istream& is) {
    expect_kind(is, FormatKind::Coo);
    CooMatrix m;
    m.n_rows = get_u32(is);
    m.n_cols = get_u32(is);
    const std::uint64_t n = get_u64(is);
    m.triplets.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        Triplet t;
        t.row = get_u32(is);
        t.col = get_u32(is);
        t.value = get_f64(is);
        m.triplets.push_back(t);
    }
    expect_end(is);
    return m;
}

CsrMatrix load_csr(std::istream& is) {
    expect_kind(is, FormatKind::Csr);
    CsrMatrix m;
    m.n_rows = get_u32(is);
    m.n_cols = get_u32(is);
    m.values = get_array<double>(is, get_f64);
    m.col_id = get_array<Index>(is, get_u32);
    m.row_ptr = get_array<std::uint64_t>(is, get_u64);
    expect_end(is);
    if (m.col_id.size() != m.values.size()) fail("col_id length mismatch");
    check_ptr_array(m.row_ptr, m.n_rows, m.values.size(), "row_ptr");
    return m;
}

CscMatrix load_csc(std::istream& is) {
    expect_kind(is, FormatKind::Csc);
    CscMatrix m;
    m.n_rows = get_u32(is);
    m.n_cols = get_u32(is);
    m.values = get_array<double>(is, get_f64);
    m.row_id = get_array<Index>(is, get_u32);
    m.col_ptr = get_array<std::uint64_t>(is, get_u64);
    expect_end(is);
    if (m.row_id.size() != m.values.size()) fail("row_id length mismatch");
    check_ptr_array(m.col_ptr, m.n_cols, m.values.size(), "col_ptr");
    return m;
}

BcsrMatrix load_bcsr(std::istream& is) {
    expect_kind(is, FormatKind::Bcsr);
    BcsrMatrix m;
    m.n_rows = get_u32(is);
    m.n_cols = get_u32(is);
    m.block_size = get_u32(is);
    m.values = get_array<double>(is, get_f64);
    m.block_col = get_array<Index>(is, get_u32);
    m.block_row_ptr = get_array<std::uint64_t>(is, get_u64);
    expect_end(is);
    if (m.block_size == 0) fail("block_size must be >= 1");
    const std::size_t area = static_cast<std::size_t>(m.block_size) * m.block_size;
    if (m.values.size() != m.block_col.size() * area) fail("values length mismatch");
    check_ptr_array(m.block_row_ptr, ceil_div_u64(m.n_rows, m.block_size), m.block_col.size(),
                    "block_row_ptr");
    return m;
}

ScvMatrix load_scv(std::istream& is) {
    expect_kind(is, FormatKind::Scv);
    ScvMatrix m;
    m.n_rows = get_u32(is);
    m.n_cols = get_u32(is);
    m.vec_height = get_u32(is);
    m.tile_width = get_u32(is);
    const std::uint8_t order = get_u8(is);
    if (order > static_cast<std::uint8_t>(OrderKind::ZMorton))
        fail("unknown order kind " + std::to_string(order));
    m.order = static_cast<OrderKind>(order);
    const std::uint64_t n_tiles = get_u64(is);
    m.block_order.reserve(n_tiles);
    for (std::uint64_t i = 0; i < n_tiles; ++i) {
        TilePos p;
        p.block_row = get_u32(is);
        p.tile_col = get_u32(is);
        m.block_order.push_back(p);
    }
    m.blk_ptr = get_array<std::uint64_t>(is, get_u64);
    m.blk_id = get_array<std::uint16_t>(is, get_u16);
    m.values = get_array<double>(is, get_f64);
    expect_end(is);
    if (!is_pow2(m.vec_height)) fail("vec_height must be a power of 2");
    if (m.tile_width == 0) fail("tile_width must be >= 1");
    if (m.block_order.size() !=
        static_cast<std::size_t>(m.n_block_rows()) * m.n_tile_cols())
        fail("block_order length mismatch");
    if (m.blk_id.size() != m.values.size()) fail("blk_id length mismatch");
    check_ptr_array(m.blk_ptr, m.n_vectors(), m.values.size(), "blk_ptr");
    for (std::uint16_t id : m.blk_id)
        if (id >= m.vec_height) fail("blk_id out of vector range");
    return m;
}

CooMatrix load_coo(const std::string& path) {
    return load_from_path<CooMatrix>(path, [](std::istream& is) { return load_coo(is); });
}
CsrMatrix load_csr(const std::string& path) {
    return load_from_path<CsrMatrix>(path, [](std::istream& is) { return load_csr(is); });
}
CscMatrix load_csc(const std::string& path) {
    return load_from_path<CscMatrix>(path, [](std::istream& is) { return load_csc(is); });
}
BcsrMatrix load_bcsr(const std::string& path) {
    return load_from_path<BcsrMatrix>(path, [](std::istream& is) { return load_bcsr(is); });
}
ScvMatrix load_scv(const std::string& path) {
    return load_from_path<ScvMatrix>(path, [](std::istream& is) { return load_scv(is); });
}

CooMatrix load_any_coo(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) fail("cannot open " + path);
    std::stringstream buf;
    buf << file.rdbuf();
    const FormatKind kind = read_header(buf);
    buf.seekg(0);
    switch (kind) {
        case FormatKind::Coo: return load_coo(buf);
        case FormatKind::Csr: return csr_to_coo(load_csr(buf));
        case FormatKind::Csc: return csc_to_coo(load_csc(buf));
        case FormatKind::Bcsr: return bcsr_to_coo(load_bcsr(buf));
        case FormatKind::Scv: return scv_to_coo(load_scv(buf));
    }
    fail("unreachable");
}

}  // namespace scv
