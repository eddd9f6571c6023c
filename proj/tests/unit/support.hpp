#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>

#include "ctfuse/chartab.hpp"
#include "ctfuse/data_paths.hpp"

namespace ctfuse::test {

  inline CharacterTable const& fixture(std::string const& id) {
    static std::map<std::string, CharacterTable> cache;
    auto it = cache.find(id);
    if (it == cache.end()) {
      it = cache.emplace(id, load_table(table_path(id))).first;
    }
    return it->second;
  }

  inline std::mt19937_64& rng() {
    static std::mt19937_64 gen(20240611);
    return gen;
  }

  inline std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng());
  }

}  // namespace ctfuse::test
