#include "krignet/manifest.hpp"

#include <fstream>

#include "krignet/errors.hpp"

namespace krignet {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

const std::string& Manifest::at(const std::string& key) const {
  const auto it = entries.find(key);
  if (it == entries.end()) throw ParseError("manifest: missing key '" + key + "'");
  return it->second;
}

std::string Manifest::get_or(const std::string& key, const std::string& fallback) const {
  const auto it = entries.find(key);
  return it == entries.end() ? fallback : it->second;
}

void write_manifest(const std::string& path, const Manifest& manifest) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  for (const auto& [key, value] : manifest.entries) out << key << '=' << value << '\n';
  out.flush();
  if (!out) throw IoError("cannot write " + path);
}

Manifest read_manifest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  Manifest m;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ParseError(path + ":" + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(stripped.substr(0, eq));
    if (key.empty())
      throw ParseError(path + ":" + std::to_string(lineno) + ": empty key");
    m.entries[key] = trim(stripped.substr(eq + 1));
  }
  if (in.bad()) throw IoError("read error on " + path);
  return m;
}

}  // namespace krignet
