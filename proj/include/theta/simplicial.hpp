#pragma once

// Outer-simplicial diagrams: presheaves on a site whose first factor is
// Delta. Level p is the restriction to [p] in that factor.

#include <cstddef>
#include <vector>

#include "theta/presheaf.hpp"

namespace theta {

  // (Delta) ++ inner
  Site outer_site(Site const& inner);

  // Maps of Delta.
  Morphism coface(std::size_t p, std::size_t i);        // d^i : [p-1] -> [p], skips i
  Morphism codegeneracy(std::size_t p, std::size_t i);  // s^i : [p+1] -> [p], repeats i
  Morphism vertex_map(std::size_t p, std::size_t v);    // [0] -> [p]
  Morphism edge_map(std::size_t p, std::size_t i, std::size_t j);  // [1] -> [p]
  Morphism to_point(std::size_t p);                     // [p] -> [0]

  // (delta, id_inner)
  SiteMorphism outer(Morphism const& delta, SiteObject const& inner);
  SiteObject   outer_object(std::size_t p, SiteObject const& inner);

  Presheaf    level(Presheaf const& X, std::size_t p);
  PresheafMap level(PresheafMap const& f, std::size_t p);
  // X_p -> X_q induced by delta : [q] -> [p].
  PresheafMap outer_operator(Presheaf const& X, Morphism const& delta);
  PresheafMap face(Presheaf const& X, std::size_t p, std::size_t i);        // X_p -> X_{p-1}
  PresheafMap degeneracy(Presheaf const& X, std::size_t p, std::size_t i);  // X_p -> X_{p+1}

  // Inner shapes: the terminal object and the 1-cell shape of each factor.
  SiteObject              inner_point(Site const& inner);
  std::vector<SiteObject> edge_shapes(Site const& inner);

  // An outer-simplicial diagram whose level 0 is meant to be discrete.
  class SegalPreObject {
   public:
    SegalPreObject() = default;
    explicit SegalPreObject(Presheaf diagram);

    Presheaf const& diagram() const noexcept {
      return X_;
    }
    Site const& inner_site() const noexcept {
      return inner_;
    }
    Presheaf level(std::size_t p) const {
      return theta::level(X_, p);
    }

    // |X_0(pt)|
    std::size_t vertex_count() const;
    // The vertex of x in X_0(theta), as an element of X_0(pt).
    Elem vertex_of(SiteObject const& theta, Elem x) const;
    // (v_0, ..., v_p) for x in X_p(theta).
    std::vector<Elem> vertices(std::size_t p, SiteObject const& theta, Elem x) const;
    // The element of X_p(theta) obtained from a vertex by degeneracy.
    Elem constant_at(std::size_t p, SiteObject const& theta, Elem v) const;

    // X_0 is constant on the inner window: pt -> theta... induces bijections.
    bool check_discrete(Window const& inner_window) const;

   private:
    Presheaf X_;
    Site     inner_;
  };

}  // namespace theta
