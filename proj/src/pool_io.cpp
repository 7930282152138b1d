#include "glqk/pool_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "glqk/errors.hpp"

namespace glqk {

namespace {

constexpr char kMagic[4] = {'G', 'L', 'Q', 'S'};
constexpr std::uint16_t kVersion = 1;

template <typename U>
void put(std::string& out, U v) {
  for (std::size_t b = 0; b < sizeof(U); ++b) out.push_back(static_cast<char>((v >> (8 * b)) & 0xFF));
}

class Reader {
 public:
  explicit Reader(std::string_view s) : s_(s) {}
  template <typename U>
  U get() {
    need(sizeof(U));
    U v = 0;
    for (std::size_t b = 0; b < sizeof(U); ++b) {
      v |= static_cast<U>(static_cast<unsigned char>(s_[pos_ + b])) << (8 * b);
    }
    pos_ += sizeof(U);
    return v;
  }
  std::string_view bytes(std::size_t k) {
    need(k);
    auto v = s_.substr(pos_, k);
    pos_ += k;
    return v;
  }
  bool done() const { return pos_ == s_.size(); }

 private:
  void need(std::size_t k) const {
    if (s_.size() - pos_ < k) throw InvalidArgument("shadow pool file is truncated");
  }
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

int ShadowPool::qubits() const {
  int n = 1;
  for (int d : dims) n *= d;
  return n;
}

void ShadowPool::validate() const {
  if (dims.empty() || dims.size() > 255) throw InvalidArgument("pool lattice rank must be in [1, 255]");
  const int n = qubits();
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const auto& s = entries[k].shadow;
    if (s.n != n || s.T != T) {
      throw InvalidArgument("pool entry " + std::to_string(k) + " has shape (" +
                            std::to_string(s.n) + ", " + std::to_string(s.T) +
                            "), expected (" + std::to_string(n) + ", " + std::to_string(T) + ")");
    }
    s.validate();
  }
}

std::string serialize_pool(const ShadowPool& pool) {
  pool.validate();
  std::string out(kMagic, 4);
  put<std::uint16_t>(out, kVersion);
  put<std::uint8_t>(out, static_cast<std::uint8_t>(pool.dims.size()));
  for (int d : pool.dims) put<std::uint32_t>(out, static_cast<std::uint32_t>(d));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(pool.T));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(pool.entries.size()));
  for (const auto& e : pool.entries) {
    put<std::uint64_t>(out, std::bit_cast<std::uint64_t>(e.label));
    const std::string meta = e.metadata.dump();
    put<std::uint32_t>(out, static_cast<std::uint32_t>(meta.size()));
    out += meta;
    out.append(reinterpret_cast<const char*>(e.shadow.records.data()), e.shadow.records.size());
  }
  return out;
}

ShadowPool deserialize_pool(std::string_view bytes) {
  Reader r(bytes);
  const auto magic = r.bytes(4);
  if (std::memcmp(magic.data(), kMagic, 4) != 0) throw InvalidArgument("not a GLQS shadow pool");
  const auto version = r.get<std::uint16_t>();
  if (version != kVersion) {
    throw InvalidArgument("unsupported shadow pool version " + std::to_string(version));
  }
  ShadowPool pool;
  const int D = r.get<std::uint8_t>();
  if (D < 1) throw InvalidArgument("pool lattice rank must be positive");
  long long n = 1;
  for (int d = 0; d < D; ++d) {
    const auto side = r.get<std::uint32_t>();
    if (side < 1 || side > 4096) throw InvalidArgument("pool lattice side out of range");
    pool.dims.push_back(static_cast<int>(side));
    n *= side;
    if (n > 4096) throw InvalidArgument("pool lattice too large");
  }
  pool.T = static_cast<int>(r.get<std::uint32_t>());
  if (pool.T < 1) throw InvalidArgument("pool shot count must be positive");
  const auto count = r.get<std::uint32_t>();
  const std::size_t rec = static_cast<std::size_t>(n) * pool.T;
  for (std::uint32_t k = 0; k < count; ++k) {
    PoolEntry e;
    e.label = std::bit_cast<double>(r.get<std::uint64_t>());
    const auto len = r.get<std::uint32_t>();
    const auto meta = r.bytes(len);
    try {
      e.metadata = nlohmann::json::parse(meta);
    } catch (const nlohmann::json::exception& ex) {
      throw InvalidArgument("pool entry " + std::to_string(k) + " metadata is not JSON: " + ex.what());
    }
    const auto recs = r.bytes(rec);
    e.shadow.n = static_cast<int>(n);
    e.shadow.T = pool.T;
    e.shadow.records.assign(recs.begin(), recs.end());
    if (e.metadata.contains("shadow_seed")) e.shadow.seed = e.metadata["shadow_seed"].get<std::uint64_t>();
    pool.entries.push_back(std::move(e));
  }
  if (!r.done()) throw InvalidArgument("trailing bytes after the last pool entry");
  pool.validate();
  return pool;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw InvalidArgument("write to '" + path + "' failed");
}

void write_pool(const ShadowPool& pool, const std::string& path) {
  write_file(path, serialize_pool(pool));
}

ShadowPool read_pool(const std::string& path) { return deserialize_pool(read_file(path)); }

}  // namespace glqk
