#pragma once

#include <filesystem>
#include <string>

namespace ctfuse {

  // Fixture root: $CTFUSE_DATA_DIR if set, else the directory configured at
  // build time.
  std::filesystem::path data_dir();

  std::filesystem::path table_path(std::string const& id);
  std::filesystem::path facts_path(std::string const& id);
  std::filesystem::path listing_path(std::string const& id);
  std::filesystem::path golden_path(std::string const& id);

}  // namespace ctfuse
