#pragma once
// Line-oriented "key = value" records used for configs, sidecars and
// report files. Keys keep insertion order so writes are reproducible.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace finfom {

class TextRecord {
public:
  void set(const std::string& key, std::string value);
  void set_f64(const std::string& key, double value);       // %.17g, round-trip exact
  void set_f64_short(const std::string& key, double value); // %.9g
  void set_i64(const std::string& key, std::int64_t value);
  void set_u64(const std::string& key, std::uint64_t value);

  bool has(const std::string& key) const noexcept;
  const std::string& get(const std::string& key) const;  // throws InvalidArgument
  std::optional<std::string> get_opt(const std::string& key) const;
  double get_f64(const std::string& key) const;
  std::int64_t get_i64(const std::string& key) const;
  std::uint64_t get_u64(const std::string& key) const;

  const std::vector<std::pair<std::string, std::string>>& entries() const noexcept {
    return entries_;
  }

  void write(std::ostream& os) const;
  std::string to_string() const;

  // Parses "key = value" lines; '#' starts a comment, blank lines ignored.
  static TextRecord parse(std::istream& is);
  static TextRecord parse_string(const std::string& text);

  static TextRecord load_file(const std::string& path);   // throws IoError
  void save_file(const std::string& path) const;          // throws IoError

private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

std::string format_f64(double value, int significant_digits);
double parse_f64(const std::string& text);  // throws InvalidArgument

}  // namespace finfom
