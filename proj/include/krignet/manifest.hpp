#pragma once

#include <map>
#include <string>

namespace krignet {

/// Flat key=value record written next to every command's outputs. Keys are
/// kept sorted (std::map) so serialization is deterministic; replaying the
/// stored parameters reproduces the outputs byte for byte (the `created`
/// timestamp is informational and takes no part in replay).
struct Manifest {
  std::map<std::string, std::string> entries;

  bool has(const std::string& key) const { return entries.count(key) != 0; }
  const std::string& at(const std::string& key) const;
  std::string get_or(const std::string& key, const std::string& fallback) const;
  void set(const std::string& key, std::string value) { entries[key] = std::move(value); }
};

/// INI-style `key=value` lines, '#' comments and blank lines ignored on read.
void write_manifest(const std::string& path, const Manifest& manifest);
Manifest read_manifest(const std::string& path);

}  // namespace krignet
