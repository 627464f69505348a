#pragma once

// Categories enriched in set-valued presheaves on an inner site, their
// nerves, and strictification of strict Segal objects.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "theta/segal.hpp"

namespace theta {

  struct EnrichedCategory {
    Site                               inner;
    std::vector<std::string>           names;
    std::vector<std::vector<Presheaf>> homs;   // homs[x][y]
    std::vector<Elem>                  units;  // in homs[x][x](pt)
    // g o f for f in homs[x][y](d) and g in homs[y][z](d).
    std::function<Elem(std::size_t x, std::size_t y, std::size_t z, SiteObject const& d, Elem g,
                       Elem f)>
        comp;

    std::size_t objects() const noexcept {
      return names.size();
    }
    // The unit of x restricted to d.
    Elem unit_at(std::size_t x, SiteObject const& d) const;
    // Unit, associativity and naturality of composition over the window.
    std::optional<std::string> check_axioms(Window const& w) const;
  };

  struct EnrichedFunctor {
    EnrichedCategory                      source;
    EnrichedCategory                      target;
    std::vector<std::size_t>              objects;
    std::vector<std::vector<PresheafMap>> homs;  // homs[x][y] : C(x,y) -> D(Fx,Fy)

    std::optional<std::string> check(Window const& w) const;
  };
  EnrichedFunctor identity_functor(EnrichedCategory const& C);

  // Objects x, y; Hom(x, y) = A, no other non-identity maps.
  EnrichedCategory UA(Presheaf const& A);
  EnrichedFunctor  UA_map(PresheafMap const& f);

  // N(C)_p = coproduct over (z_0..z_p) of prod C(z_{i-1}, z_i).
  SegalPreObject nerve(EnrichedCategory const& C);
  PresheafMap    nerve_map(EnrichedFunctor const& F, SegalPreObject const& NC,
                           SegalPreObject const& ND);
  // Object tuple and hom elements of an element of N(C)_p(theta).
  struct NerveCell {
    std::vector<std::size_t> objects;
    std::vector<Elem>        homs;
  };
  NerveCell nerve_decode(SegalPreObject const& N, SiteObject const& d, Elem x);
  Elem      nerve_encode(SegalPreObject const& N, SiteObject const& d, NerveCell const& c);
  EnrichedCategory const& nerve_source(SegalPreObject const& N);

  // Homs are the fibers of X_1; composition is d_1 o phi_2^{-1}.
  EnrichedCategory strictify(SegalPreObject const& X, Window const& inner_window);
  // X -> N(strictify(X)), sending a cell to its vertices and spine edges.
  PresheafMap strictify_unit(SegalPreObject const& X, EnrichedCategory const& C,
                             SegalPreObject const& NC);
  // N(C)_1 fibers are C's homs; this is the comparison C -> strictify(N C).
  EnrichedFunctor strictify_counit(EnrichedCategory const& C, SegalPreObject const& NC,
                                   EnrichedCategory const& S);

  HoCategory pi0_category(EnrichedCategory const& C);
  HoFunctor  pi0_functor(EnrichedFunctor const& F);

  struct EnrichedDK {
    bool        w1 = false;
    bool        w2 = false;
    bool        ok = false;
    std::string witness;
  };
  EnrichedDK dk_check_enriched(EnrichedFunctor const& F, Window const& w);
  // Bijective on objects and on homs over the window.
  bool is_enriched_iso(EnrichedFunctor const& F, Window const& w);

  // Monoids used as hom objects.
  struct Monoid {
    Presheaf                                                  carrier;
    Elem                                                      unit = 0;  // at pt
    std::function<Elem(SiteObject const&, Elem a, Elem b)>    mult;      // a * b
    std::string                                               label;
  };
  Monoid trivial_monoid(Site const& inner);
  // Z/k under addition, constant.
  Monoid cyclic_monoid(Site const& inner, std::size_t k);
  // Maps top(d) -> [k] under pointwise max, top(d) the Delta-part of the
  // first factor.
  Monoid max_monoid(Site const& inner, std::size_t k);

  // Objects 0..n-1 with Hom(x,y) = M when x <= y in the preorder, else empty.
  EnrichedCategory preorder_category(std::vector<std::vector<bool>> const& le, Monoid const& M);

}  // namespace theta
