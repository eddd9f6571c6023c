#include "ctfuse/groupcore/perm_group.hpp"

#include <cstring>
#include <functional>
#include <string_view>

#include "ctfuse/error.hpp"

namespace ctfuse::groupcore {

  PermGroup::PermGroup(std::size_t degree, std::vector<Perm> gens)
      : _degree(degree), _gens(std::move(gens)) {
    if (degree == 0 || degree > max_degree) {
      throw PreconditionError("degree must lie in 1..256");
    }
    for (auto const& g : _gens) {
      if (g.size() != degree || !is_permutation(g)) {
        throw PreconditionError("generator is not a permutation of degree "
                                + std::to_string(degree));
      }
    }
  }

  std::uint64_t PermGroup::hash(Point const* p) const {
    return std::hash<std::string_view>{}(
        std::string_view(reinterpret_cast<char const*>(p), _degree));
  }

  std::size_t PermGroup::find_slot(Point const* p) const {
    std::size_t const mask = _slots.size() - 1;
    std::size_t       i    = hash(p) & mask;
    while (_slots[i] != 0) {
      if (std::memcmp(element(_slots[i] - 1), p, _degree) == 0) {
        return i;
      }
      i = (i + 1) & mask;
    }
    return i;
  }

  void PermGroup::rehash(std::size_t capacity) {
    _slots.assign(capacity, 0);
    std::size_t const mask = capacity - 1;
    for (std::size_t e = 0; e < _count; ++e) {
      std::size_t i = hash(element(e)) & mask;
      while (_slots[i] != 0) {
        i = (i + 1) & mask;
      }
      _slots[i] = static_cast<std::uint32_t>(e + 1);
    }
  }

  void PermGroup::insert(Point const* p) {
    if (2 * (_count + 1) > _slots.size()) {
      rehash(_slots.size() * 2);
    }
    _store.insert(_store.end(), p, p + _degree);
    ++_count;
    std::size_t const i = find_slot(p);
    _slots[i]           = static_cast<std::uint32_t>(_count);
  }

  std::uint64_t PermGroup::enumerate(std::uint64_t bound) {
    if (_enumerated) {
      return _count;
    }
    _store.clear();
    _count = 0;
    _slots.assign(1024, 0);
    Perm const id = identity_perm(_degree);
    insert(id.data());
    Perm buf(_degree);
    for (std::size_t e = 0; e < _count; ++e) {
      for (auto const& g : _gens) {
        compose(element(e), g.data(), buf.data(), _degree);
        if (_slots[find_slot(buf.data())] == 0) {
          if (_count >= bound) {
            throw ResourceError("group has more than " + std::to_string(bound) + " elements");
          }
          insert(buf.data());
        }
      }
    }
    _enumerated = true;
    return _count;
  }

  std::size_t PermGroup::order() const {
    if (!_enumerated) {
      throw PreconditionError("group not enumerated");
    }
    return _count;
  }

  std::optional<std::size_t> PermGroup::index_of(Point const* p) const {
    if (!_enumerated) {
      throw PreconditionError("group not enumerated");
    }
    std::uint32_t const s = _slots[find_slot(p)];
    if (s == 0) {
      return std::nullopt;
    }
    return s - 1;
  }

  std::optional<std::size_t> PermGroup::index_of(Perm const& p) const {
    if (p.size() != _degree) {
      return std::nullopt;
    }
    return index_of(p.data());
  }

  std::vector<ConjClass> const& PermGroup::conjugacy_classes() {
    if (!_classes.empty()) {
      return _classes;
    }
    enumerate();
    constexpr std::uint32_t unset = UINT32_MAX;
    _class_map.assign(_count, unset);
    std::vector<Perm> inv;
    for (auto const& g : _gens) {
      inv.push_back(inverse(g));
    }
    Perm                     tmp(_degree), conj(_degree);
    std::vector<std::size_t> queue;
    for (std::size_t e = 0; e < _count; ++e) {
      if (_class_map[e] != unset) {
        continue;
      }
      auto const c  = static_cast<std::uint32_t>(_classes.size());
      _class_map[e] = c;
      queue.assign(1, e);
      for (std::size_t q = 0; q < queue.size(); ++q) {
        Point const* x = element(queue[q]);
        for (std::size_t j = 0; j < _gens.size(); ++j) {
          // g^-1 x g
          compose(inv[j].data(), x, tmp.data(), _degree);
          compose(tmp.data(), _gens[j].data(), conj.data(), _degree);
          std::size_t const y = *index_of(conj.data());
          if (_class_map[y] == unset) {
            _class_map[y] = c;
            queue.push_back(y);
          }
        }
      }
      _classes.push_back({e, queue.size(),
                          static_cast<std::uint32_t>(perm_order(element_perm(e)))});
    }
    return _classes;
  }

  std::size_t PermGroup::class_of(std::size_t element) {
    conjugacy_classes();
    return _class_map.at(element);
  }

  std::size_t PermGroup::class_power(std::size_t c, std::int64_t k) {
    auto const& cls = conjugacy_classes();
    Perm const  p   = power(element_perm(cls.at(c).representative), k);
    return class_of(*index_of(p));
  }

  std::vector<std::size_t> fusion_oracle(PermGroup& sub, PermGroup& g) {
    if (sub.degree() != g.degree()) {
      throw PreconditionError("subgroup and group act on different degrees");
    }
    g.enumerate();
    for (auto const& x : sub.generators()) {
      if (!g.index_of(x)) {
        throw PreconditionError("subgroup generator is not in the group");
      }
    }
    std::vector<std::size_t> f;
    for (auto const& c : sub.conjugacy_classes()) {
      f.push_back(g.class_of(*g.index_of(sub.element(c.representative))));
    }
    return f;
  }

  std::vector<std::size_t> classes_of_order(PermGroup& g, std::uint32_t order) {
    std::vector<std::size_t> out;
    auto const&              cls = g.conjugacy_classes();
    for (std::size_t c = 0; c < cls.size(); ++c) {
      if (cls[c].element_order == order) {
        out.push_back(c);
      }
    }
    return out;
  }

}  // namespace ctfuse::groupcore
