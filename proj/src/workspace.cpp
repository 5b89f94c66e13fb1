#include "verigen/workspace.hpp"

#include <cstdlib>
#include <string>

#include "verigen/error.hpp"

namespace verigen {

namespace fs = std::filesystem;

Workspace Workspace::fresh(const fs::path& dir) {
  std::error_code ec;
  fs::remove_all(dir, ec);
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create workspace " + dir.string() + ": " + ec.message());
  return Workspace(fs::absolute(dir));
}

TempDir::TempDir(const std::string& prefix) {
  std::string tmpl = (fs::temp_directory_path() / (prefix + ".XXXXXX")).string();
  if (::mkdtemp(tmpl.data()) == nullptr) throw IoError("mkdtemp failed for " + tmpl);
  path_ = tmpl;
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

}  // namespace verigen
