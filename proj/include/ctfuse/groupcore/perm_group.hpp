#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "ctfuse/groupcore/perm.hpp"

namespace ctfuse::groupcore {

  struct ConjClass {
    std::size_t   representative;  // element index
    std::uint64_t size;
    std::uint32_t element_order;
  };

  // Permutation group small enough to list.  Elements are stored flat, one
  // degree-sized row each; element 0 is the identity.
  class PermGroup {
   public:
    PermGroup(std::size_t degree, std::vector<Perm> gens);

    std::size_t degree() const noexcept {
      return _degree;
    }
    std::vector<Perm> const& generators() const noexcept {
      return _gens;
    }

    // Breadth-first closure under right multiplication by the generators.
    // Throws ResourceError when more than `bound` elements appear.
    std::uint64_t enumerate(std::uint64_t bound = 10'000'000);

    bool enumerated() const noexcept {
      return _enumerated;
    }
    std::size_t order() const;

    Point const* element(std::size_t i) const {
      return _store.data() + i * _degree;
    }
    Perm element_perm(std::size_t i) const {
      return Perm(element(i), element(i) + _degree);
    }

    std::optional<std::size_t> index_of(Point const* p) const;
    std::optional<std::size_t> index_of(Perm const& p) const;

    // Orbits of conjugation, ordered by first element index.
    std::vector<ConjClass> const& conjugacy_classes();
    std::size_t                   class_of(std::size_t element);
    // Class of rep^k for class c.
    std::size_t class_power(std::size_t c, std::int64_t k);

   private:
    std::size_t        find_slot(Point const* p) const;
    void               insert(Point const* p);
    void               rehash(std::size_t capacity);
    std::uint64_t      hash(Point const* p) const;

    std::size_t                _degree;
    std::vector<Perm>          _gens;
    bool                       _enumerated = false;
    std::vector<Point>         _store;
    std::vector<std::uint32_t> _slots;  // element index + 1, 0 = empty
    std::size_t                _count = 0;
    std::vector<ConjClass>     _classes;
    std::vector<std::uint32_t> _class_map;
  };

  // Ambient class of each subgroup class representative.  Throws
  // PreconditionError if a generator of sub is not in g.
  std::vector<std::size_t> fusion_oracle(PermGroup& sub, PermGroup& g);

  std::vector<std::size_t> classes_of_order(PermGroup& g, std::uint32_t order);

}  // namespace ctfuse::groupcore
