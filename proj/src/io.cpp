#include "mobo/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace mobo {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::string format_double(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

}  // namespace

FlatConfig FlatConfig::parse_text(const std::string& text) {
  FlatConfig cfg;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    require(eq != std::string::npos,
            "config: missing '=' on a non-empty line");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    require(!key.empty(), "config: empty key");
    cfg.values_[key] = value;
  }
  return cfg;
}

FlatConfig FlatConfig::parse_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "config: cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_text(buffer.str());
}

const std::string& FlatConfig::raw(const std::string& key) const {
  const auto it = values_.find(key);
  require(it != values_.end(), "config: missing key");
  return it->second;
}

double FlatConfig::as_double(const std::string& key) const {
  const std::string& s = raw(key);
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  require(used == s.size(), "config: not a number");
  return v;
}

long long FlatConfig::as_int(const std::string& key) const {
  const std::string& s = raw(key);
  std::size_t used = 0;
  const long long v = std::stoll(s, &used);
  require(used == s.size(), "config: not an integer");
  return v;
}

void FlatConfig::set(const std::string& key, double value) {
  values_[key] = format_double(value);
}

void FlatConfig::set(const std::string& key, long long value) {
  values_[key] = std::to_string(value);
}

std::string FlatConfig::echo() const {
  std::ostringstream out;
  for (const auto& [key, value] : values_) out << key << " = " << value << "\n";
  return out.str();
}

void write_text_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    out << content;
  }
  fs::rename(tmp, target);
}

void write_front_csv(const std::string& path,
                     const std::vector<std::pair<Vector, Vector>>& front) {
  std::ostringstream out;
  if (!front.empty()) {
    for (Eigen::Index j = 0; j < front.front().first.size(); ++j)
      out << (j ? "," : "") << "x" << (j + 1);
    for (Eigen::Index j = 0; j < front.front().second.size(); ++j)
      out << ",y" << (j + 1);
    out << "\n";
    for (const auto& [x, y] : front) {
      for (Eigen::Index j = 0; j < x.size(); ++j)
        out << (j ? "," : "") << format_double(x[j]);
      for (Eigen::Index j = 0; j < y.size(); ++j) out << ',' << format_double(y[j]);
      out << "\n";
    }
  } else {
    out << "x1,y1\n";
  }
  write_text_atomic(path, out.str());
}

void write_dataset_csv(const std::string& path, const Dataset& data) {
  std::ostringstream out;
  Eigen::Index d = 0, n = 0;
  for (const auto& s : data.samples()) {
    d = s.x.size();
    if (s.feasible()) n = s.objectives().size();
  }
  for (Eigen::Index j = 0; j < d; ++j) out << (j ? "," : "") << "x" << (j + 1);
  for (Eigen::Index j = 0; j < n; ++j) out << ",y" << (j + 1);
  out << ",feasible\n";
  for (const auto& s : data.samples()) {
    for (Eigen::Index j = 0; j < d; ++j)
      out << (j ? "," : "") << format_double(s.x[j]);
    for (Eigen::Index j = 0; j < n; ++j) {
      out << ',';
      if (s.feasible()) out << format_double(s.objectives()[j]);
    }
    out << ',' << (s.feasible() ? 1 : 0) << "\n";
  }
  write_text_atomic(path, out.str());
}

}  // namespace mobo
