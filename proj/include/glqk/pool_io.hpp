#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "glqk/lattice.hpp"
#include "glqk/shadow.hpp"

namespace glqk {

struct PoolEntry {
  ClassicalShadow shadow;
  double label = 0.0;
  nlohmann::json metadata = nlohmann::json::object();
};

/// Shadows of one lattice shape and shot count, with labels and metadata.
struct ShadowPool {
  std::vector<int> dims;
  int T = 0;
  std::vector<PoolEntry> entries;

  Lattice lattice() const { return Lattice(dims); }
  int qubits() const;
  std::size_t size() const { return entries.size(); }
  /// Throws InvalidArgument if an entry does not match dims and T.
  void validate() const;
};

/// Binary layout, little-endian: "GLQS", u16 version (1), u8 D, u32 dims[D],
/// u32 T, u32 count, then per entry f64 label, u32 length + UTF-8 JSON
/// metadata, n*T record bytes (shot-major).
std::string serialize_pool(const ShadowPool& pool);
ShadowPool deserialize_pool(std::string_view bytes);

void write_pool(const ShadowPool& pool, const std::string& path);
ShadowPool read_pool(const std::string& path);

/// Whole-file helpers shared by the binary formats.
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view bytes);

}  // namespace glqk
