#pragma once

#include <filesystem>

namespace verigen {

/// A scratch directory owned by one candidate check. Creating a workspace
/// empties any previous contents at that path.
class Workspace {
 public:
  static Workspace fresh(const std::filesystem::path& dir);

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path file(const std::string& name) const { return dir_ / name; }

 private:
  explicit Workspace(std::filesystem::path dir) : dir_(std::move(dir)) {}
  std::filesystem::path dir_;
};

/// Temporary directory removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& prefix = "verigen");
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace verigen
