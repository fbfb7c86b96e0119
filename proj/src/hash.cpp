#include "finfom/hash.hpp"

#include <cstdio>
#include <fstream>
#include <vector>

#include "finfom/errors.hpp"

namespace finfom {

std::uint64_t file_hash(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) raise(ErrorCode::IoError, "cannot open '" + path + "'");
  std::uint64_t h = kFnvOffset;
  std::vector<char> buf(1 << 16);
  while (is) {
    is.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    h = fnv1a_bytes(buf.data(), static_cast<std::size_t>(is.gcount()), h);
  }
  return h;
}

std::string hash_hex(std::uint64_t h) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace finfom
