#include "ctfuse/data_paths.hpp"

#include <cstdlib>

#ifndef CTFUSE_DATA_DIR
#define CTFUSE_DATA_DIR "data"
#endif

namespace ctfuse {

  std::filesystem::path data_dir() {
    if (char const* env = std::getenv("CTFUSE_DATA_DIR"); env != nullptr && *env != '\0') {
      return env;
    }
    return CTFUSE_DATA_DIR;
  }

  std::filesystem::path table_path(std::string const& id) {
    return data_dir() / "tables" / (id + ".json");
  }

  std::filesystem::path facts_path(std::string const& id) {
    return data_dir() / "facts" / (id + ".json");
  }

  std::filesystem::path listing_path(std::string const& id) {
    return data_dir() / "listings" / (id + ".txt");
  }

  std::filesystem::path golden_path(std::string const& id) {
    return data_dir() / "golden" / (id + ".txt");
  }

}  // namespace ctfuse
