// Versioned binary model format, little-endian:
//   magic "FFM1" | u32 schema | u8 kind | u8 target | u8 material | u8 pad |
//   u32 arch_len | i64 arch[] | f64 target_offset | f64 target_scale |
//   u32 epochs | f64 final_loss | u64 data_hash | u64 n_params |
//   f64 params[] | u64 fnv1a checksum of everything before it

#include <cstring>
#include <fstream>
#include <type_traits>
#include <vector>

#include "finfom/errors.hpp"
#include "finfom/hash.hpp"
#include "finfom/surrogate.hpp"

namespace finfom {

namespace {

constexpr char kMagic[4] = {'F', 'F', 'M', '1'};
constexpr std::uint32_t kSchemaVersion = 1;

template <typename T>
void put(std::vector<unsigned char>& buf, T value) {
  static_assert(std::is_trivially_copyable_v<T>);
  const std::size_t at = buf.size();
  buf.resize(at + sizeof(T));
  std::memcpy(buf.data() + at, &value, sizeof(T));
}

class Reader {
public:
  Reader(const unsigned char* data, std::size_t size) : data_(data), size_(size) {}

  template <typename T>
  T get() {
    static_assert(std::is_trivially_copyable_v<T>);
    if (pos_ + sizeof(T) > size_) {
      raise(ErrorCode::ChecksumError, "model file truncated");
    }
    T value;
    std::memcpy(&value, data_ + pos_, sizeof(T));
    pos_ += sizeof(T);
    return value;
  }

  std::size_t pos() const noexcept { return pos_; }

private:
  const unsigned char* data_;
  std::size_t size_;
  std::size_t pos_ = 0;
};

std::vector<unsigned char> serialize(const SurrogateModel& model) {
  std::vector<unsigned char> buf;
  buf.insert(buf.end(), kMagic, kMagic + 4);
  put(buf, kSchemaVersion);
  put(buf, static_cast<std::uint8_t>(model.kind));
  put(buf, static_cast<std::uint8_t>(model.target));
  put(buf, static_cast<std::uint8_t>(model.material));
  put(buf, static_cast<std::uint8_t>(0));
  put(buf, static_cast<std::uint32_t>(model.arch.size()));
  for (std::int64_t a : model.arch) put(buf, a);
  put(buf, model.target_offset);
  put(buf, model.target_scale);
  put(buf, model.meta.epochs);
  put(buf, model.meta.final_loss);
  put(buf, model.meta.data_hash);
  put(buf, static_cast<std::uint64_t>(model.params.size()));
  const std::size_t at = buf.size();
  buf.resize(at + model.params.size() * sizeof(double));
  std::memcpy(buf.data() + at, model.params.data(), model.params.size() * sizeof(double));
  put(buf, fnv1a_bytes(buf.data(), buf.size()));
  return buf;
}

}  // namespace

void save_model(const SurrogateModel& model, const std::string& path) {
  const std::vector<unsigned char> buf = serialize(model);
  std::ofstream os(path, std::ios::binary);
  if (!os) raise(ErrorCode::IoError, "cannot write '" + path + "'");
  os.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  if (!os) raise(ErrorCode::IoError, "write failed for '" + path + "'");
}

SurrogateModel load_model(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) raise(ErrorCode::IoError, "cannot open '" + path + "'");
  std::vector<unsigned char> buf((std::istreambuf_iterator<char>(is)),
                                 std::istreambuf_iterator<char>());

  if (buf.size() < 4 || std::memcmp(buf.data(), kMagic, 4) != 0) {
    raise(ErrorCode::VersionError, "not a model file: " + path);
  }
  if (buf.size() < sizeof(std::uint64_t) + 8) {
    raise(ErrorCode::ChecksumError, "model file truncated");
  }
  const std::size_t body = buf.size() - sizeof(std::uint64_t);
  std::uint64_t stored_checksum;
  std::memcpy(&stored_checksum, buf.data() + body, sizeof(stored_checksum));
  if (fnv1a_bytes(buf.data(), body) != stored_checksum) {
    raise(ErrorCode::ChecksumError, "model file checksum mismatch");
  }

  Reader reader(buf.data(), body);
  reader.get<std::uint32_t>();  // magic, verified above
  const std::uint32_t version = reader.get<std::uint32_t>();
  if (version != kSchemaVersion) {
    raise(ErrorCode::VersionError,
          "unsupported model schema version " + std::to_string(version));
  }
  SurrogateModel model;
  model.kind = static_cast<ModelKind>(reader.get<std::uint8_t>());
  model.target = static_cast<Target>(reader.get<std::uint8_t>());
  model.material = static_cast<FinMaterialId>(reader.get<std::uint8_t>());
  reader.get<std::uint8_t>();
  const std::uint32_t arch_len = reader.get<std::uint32_t>();
  if (arch_len > 64) raise(ErrorCode::ChecksumError, "implausible architecture length");
  model.arch.resize(arch_len);
  for (std::uint32_t i = 0; i < arch_len; ++i) model.arch[i] = reader.get<std::int64_t>();
  model.target_offset = reader.get<double>();
  model.target_scale = reader.get<double>();
  model.meta.epochs = reader.get<std::uint32_t>();
  model.meta.final_loss = reader.get<double>();
  model.meta.data_hash = reader.get<std::uint64_t>();
  const std::uint64_t n_params = reader.get<std::uint64_t>();
  if (reader.pos() + n_params * sizeof(double) != body) {
    raise(ErrorCode::ChecksumError, "model parameter block size mismatch");
  }
  model.params.resize(n_params);
  for (std::uint64_t i = 0; i < n_params; ++i) model.params[i] = reader.get<double>();
  return model;
}

std::uint64_t model_hash(const SurrogateModel& model) noexcept {
  const std::vector<unsigned char> buf = serialize(model);
  return fnv1a_bytes(buf.data(), buf.size());
}

}  // namespace finfom
