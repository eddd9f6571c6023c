#include <fstream>
#include <sstream>

#include "ctfuse/chartab.hpp"
#include "ctfuse/error.hpp"

namespace ctfuse {

  namespace {

    mpz_class big_from_json(nlohmann::json const& j, char const* what) {
      mpz_class v;
      if (j.is_string()) {
        if (v.set_str(j.get<std::string>(), 10) != 0) {
          throw FormatError(std::string("invalid ") + what + ": " + j.dump());
        }
        return v;
      }
      if (j.is_number_unsigned()) {
        return mpz_class(std::to_string(j.get<std::uint64_t>()));
      }
      throw FormatError(std::string("invalid ") + what + ": " + j.dump());
    }

    nlohmann::json const& field(nlohmann::json const& j, char const* key) {
      if (!j.is_object() || !j.contains(key)) {
        throw FormatError(std::string("missing field \"") + key + "\"");
      }
      return j[key];
    }

  }  // namespace

  CharacterTable table_from_json(nlohmann::json const& j) {
    CharacterTable t;
    auto const&    name = field(j, "name");
    if (!name.is_string()) {
      throw FormatError("table name must be a string");
    }
    t.name        = name.get<std::string>();
    t.group_order = big_from_json(field(j, "order"), "group order");

    auto const& classes = field(j, "classes");
    if (!classes.is_array()) {
      throw FormatError("\"classes\" must be an array");
    }
    for (auto const& c : classes) {
      ClassInfo info;
      auto const& cname = field(c, "name");
      auto const& order = field(c, "order");
      if (!cname.is_string() || !order.is_number_unsigned()) {
        throw FormatError("invalid class entry: " + c.dump());
      }
      info.name              = cname.get<std::string>();
      info.element_order     = order.get<std::uint32_t>();
      info.size              = big_from_json(field(c, "size"), "class size");
      info.centralizer_order = big_from_json(field(c, "centralizer"), "centralizer order");
      t.classes.push_back(std::move(info));
    }

    auto const& pm = field(j, "powermaps");
    if (!pm.is_object()) {
      throw FormatError("\"powermaps\" must be an object");
    }
    for (auto const& [key, map] : pm.items()) {
      std::uint32_t p = 0;
      try {
        std::size_t pos = 0;
        p               = static_cast<std::uint32_t>(std::stoul(key, &pos));
        if (pos != key.size()) {
          throw std::invalid_argument(key);
        }
      } catch (std::exception const&) {
        throw FormatError("invalid power map key: " + key);
      }
      if (!map.is_array()) {
        throw FormatError("power map " + key + " must be an array");
      }
      std::vector<std::size_t> images;
      for (auto const& x : map) {
        if (!x.is_number_unsigned()) {
          throw FormatError("invalid power map entry in map " + key);
        }
        images.push_back(x.get<std::size_t>());
      }
      t.power_maps.emplace(p, std::move(images));
    }

    auto const& irr = field(j, "irreducibles");
    if (!irr.is_array()) {
      throw FormatError("\"irreducibles\" must be an array");
    }
    for (auto const& row : irr) {
      if (!row.is_array()) {
        throw FormatError("character must be an array");
      }
      ClassFunction chi;
      chi.reserve(row.size());
      for (auto const& v : row) {
        chi.push_back(cyclotomic_from_json(v));
      }
      t.irreducibles.push_back(std::move(chi));
    }

    if (j.contains("distinguished") && !j["distinguished"].is_null()) {
      if (!j["distinguished"].is_number_unsigned()) {
        throw FormatError("\"distinguished\" must be an index or null");
      }
      t.distinguished = j["distinguished"].get<std::size_t>();
    }
    return t;
  }

  nlohmann::json to_json(CharacterTable const& t) {
    nlohmann::json j;
    j["name"]             = t.name;
    j["order"]            = t.group_order.get_str();
    nlohmann::json cls    = nlohmann::json::array();
    for (auto const& c : t.classes) {
      cls.push_back({{"name", c.name},
                     {"order", c.element_order},
                     {"size", c.size.get_str()},
                     {"centralizer", c.centralizer_order.get_str()}});
    }
    j["classes"]       = std::move(cls);
    nlohmann::json pm  = nlohmann::json::object();
    for (auto const& [p, map] : t.power_maps) {
      pm[std::to_string(p)] = map;
    }
    j["powermaps"]     = std::move(pm);
    nlohmann::json irr = nlohmann::json::array();
    for (auto const& chi : t.irreducibles) {
      nlohmann::json row = nlohmann::json::array();
      for (auto const& v : chi) {
        row.push_back(to_json(v));
      }
      irr.push_back(std::move(row));
    }
    j["irreducibles"]  = std::move(irr);
    j["distinguished"] = t.distinguished ? nlohmann::json(*t.distinguished) : nlohmann::json();
    return j;
  }

  CharacterTable load_table(std::filesystem::path const& path) {
    std::ifstream in(path);
    if (!in) {
      throw FormatError("cannot open table file " + path.string());
    }
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (nlohmann::json::exception const& e) {
      throw FormatError("malformed JSON in " + path.string() + ": " + e.what());
    }
    try {
      return table_from_json(j);
    } catch (FormatError const& e) {
      throw FormatError(path.string() + ": " + e.what());
    }
  }

  void save_table(CharacterTable const& t, std::filesystem::path const& path) {
    std::ofstream out(path);
    if (!out) {
      throw FormatError("cannot write table file " + path.string());
    }
    out << to_json(t).dump() << '\n';
  }

}  // namespace ctfuse
