#include "finfom/textio.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "finfom/errors.hpp"

namespace finfom {

namespace {

std::string trim(const std::string& s) {
  std::size_t begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return {};
  std::size_t end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

std::string format_f64(double value, int significant_digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", significant_digits, value);
  return buf;
}

double parse_f64(const std::string& text) {
  errno = 0;
  char* end = nullptr;
  const double value = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || trim(std::string(end)) != "" || errno == ERANGE) {
    raise(ErrorCode::InvalidArgument, "cannot parse float '" + text + "'");
  }
  return value;
}

void TextRecord::set(const std::string& key, std::string value) {
  for (auto& [k, v] : entries_) {
    if (k == key) {
      v = std::move(value);
      return;
    }
  }
  entries_.emplace_back(key, std::move(value));
}

void TextRecord::set_f64(const std::string& key, double value) { set(key, format_f64(value, 17)); }
void TextRecord::set_f64_short(const std::string& key, double value) {
  set(key, format_f64(value, 9));
}
void TextRecord::set_i64(const std::string& key, std::int64_t value) {
  set(key, std::to_string(value));
}
void TextRecord::set_u64(const std::string& key, std::uint64_t value) {
  set(key, std::to_string(value));
}

bool TextRecord::has(const std::string& key) const noexcept {
  for (const auto& [k, v] : entries_) {
    if (k == key) return true;
  }
  return false;
}

const std::string& TextRecord::get(const std::string& key) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) return v;
  }
  raise(ErrorCode::InvalidArgument, "missing key '" + key + "'");
}

std::optional<std::string> TextRecord::get_opt(const std::string& key) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) return v;
  }
  return std::nullopt;
}

double TextRecord::get_f64(const std::string& key) const { return parse_f64(get(key)); }

std::int64_t TextRecord::get_i64(const std::string& key) const {
  return static_cast<std::int64_t>(std::strtoll(get(key).c_str(), nullptr, 10));
}

std::uint64_t TextRecord::get_u64(const std::string& key) const {
  return static_cast<std::uint64_t>(std::strtoull(get(key).c_str(), nullptr, 10));
}

void TextRecord::write(std::ostream& os) const {
  for (const auto& [k, v] : entries_) os << k << " = " << v << "\n";
}

std::string TextRecord::to_string() const {
  std::ostringstream os;
  write(os);
  return os.str();
}

TextRecord TextRecord::parse(std::istream& is) {
  TextRecord rec;
  std::string line;
  while (std::getline(is, line)) {
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      raise(ErrorCode::InvalidArgument, "expected 'key = value', got '" + line + "'");
    }
    rec.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return rec;
}

TextRecord TextRecord::parse_string(const std::string& text) {
  std::istringstream is(text);
  return parse(is);
}

TextRecord TextRecord::load_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) raise(ErrorCode::IoError, "cannot open '" + path + "'");
  return parse(is);
}

void TextRecord::save_file(const std::string& path) const {
  std::ofstream os(path);
  if (!os) raise(ErrorCode::IoError, "cannot write '" + path + "'");
  write(os);
  if (!os) raise(ErrorCode::IoError, "write failed for '" + path + "'");
}

}  // namespace finfom
