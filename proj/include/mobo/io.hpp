// io.hpp - flat dotted-key configuration files, CSV writers and the
// byte-stable config echo.
#pragma once

#include "mobo/types.hpp"

#include <map>
#include <string>
#include <vector>

namespace mobo {

// "key = value" per line, '#' comments, dotted keys. Order-independent.
class FlatConfig {
 public:
  static FlatConfig parse_file(const std::string& path);
  static FlatConfig parse_text(const std::string& text);

  bool has(const std::string& key) const { return values_.count(key) > 0; }
  const std::string& raw(const std::string& key) const;
  double as_double(const std::string& key) const;
  long long as_int(const std::string& key) const;

  void set(const std::string& key, const std::string& value) { values_[key] = value; }
  void set(const std::string& key, double value);
  void set(const std::string& key, long long value);

  // Sorted key = value lines; identical content for identical settings.
  std::string echo() const;

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

void write_text_atomic(const std::string& path, const std::string& content);

// Header x1..xd,y1..yn; one row per (design, objectives) pair.
void write_front_csv(const std::string& path,
                     const std::vector<std::pair<Vector, Vector>>& front);

// Header x1..xd,y1..yn,feasible; objective cells stay empty for infeasible rows.
void write_dataset_csv(const std::string& path, const Dataset& data);

}  // namespace mobo
