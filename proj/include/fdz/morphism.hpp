#pragma once

// Additive maps between rings given on generators: x -> x * m.

#include "fdz/ring.hpp"

namespace fdz {

struct RingMap {
  const FdzRing* source;
  const FdzRing* target;
  IntMatrix m;  // source.rank() x target.rank()

  Vector operator()(const Vector& x) const { return target->reduce(x * m); }

  /// Relations of the source land in the relations of the target.
  bool well_defined() const {
    for (std::size_t i = 0; i < source->rank(); ++i) {
      Vector img = source->order_of(i) * m.row(i);
      if (target->reduce(img) != target->zero()) return false;
    }
    return true;
  }
  bool is_ring_hom() const {
    for (std::size_t i = 0; i < source->rank(); ++i)
      for (std::size_t j = 0; j < source->rank(); ++j)
        if ((*this)(source->product(i, j)) != target->mul((*this)(source->gen(i)), (*this)(source->gen(j))))
          return false;
    return true;
  }
  Subgroup kernel() const {
    return Subgroup(source->additive(), preimage_lattice(m, target->additive().relations()));
  }
  Subgroup image() const { return Subgroup(target->additive(), m); }
  bool injective() const { return kernel().is_zero(); }
  bool surjective() const { return image().is_whole(); }
  bool bijective() const { return injective() && surjective(); }
  /// Index of the image, 0 when infinite.
  Integer image_index() const {
    return relative_quotient(Subgroup::whole(target->additive()), image()).order();
  }
};

}  // namespace fdz
