#pragma once

#include <iosfwd>
#include <string>

#include "scv/formats.hpp"

namespace scv {

/// Sectioned binary container for matrix snapshots. Layout, all little-endian:
/// magic "SCVF", u32 version, u8 format kind, kind-specific dimension header,
/// then one section per array: u64 element count followed by packed elements
/// (u16/u32/u64 integers, IEEE-754 binary64 values). Layout changes bump the
/// version; loaders reject anything else.
constexpr std::uint32_t kSerialVersion = 1;
constexpr char kSerialMagic[4] = {'S', 'C', 'V', 'F'};

void save_matrix(const CooMatrix& m, std::ostream& os);
void save_matrix(const CsrMatrix& m, std::ostream& os);
void save_matrix(const CscMatrix& m, std::ostream& os);
void save_matrix(const BcsrMatrix& m, std::ostream& os);
void save_matrix(const ScvMatrix& m, std::ostream& os);

void save_matrix(const CooMatrix& m, const std::string& path);
void save_matrix(const CsrMatrix& m, const std::string& path);
void save_matrix(const CscMatrix& m, const std::string& path);
void save_matrix(const BcsrMatrix& m, const std::string& path);
void save_matrix(const ScvMatrix& m, const std::string& path);

/// Reads magic, version, and kind; throws std::runtime_error on a foreign or
/// unsupported header. Leaves the stream positioned after the kind byte.
FormatKind read_header(std::istream& is);

/// Kind of the container at path without loading the payload.
FormatKind peek_kind(const std::string& path);

/// Typed loaders. Throw std::runtime_error on malformed input or when the
/// container holds a different kind than requested.
CooMatrix load_coo(std::istream& is);
CsrMatrix load_csr(std::istream& is);
CscMatrix load_csc(std::istream& is);
BcsrMatrix load_bcsr(std::istream& is);
ScvMatrix load_scv(std::istream& is);

CooMatrix load_coo(const std::string& path);
CsrMatrix load_csr(const std::string& path);
CscMatrix load_csc(const std::string& path);
BcsrMatrix load_bcsr(const std::string& path);
ScvMatrix load_scv(const std::string& path);

/// Loads a container of any kind and converts it to triplet form.
CooMatrix load_any_coo(const std::string& path);

}  // namespace scv
