#pragma once

// Random instances for property tests and fuzzing. Everything is a function
// of the generator state, so a seed replays a run exactly.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "theta/enriched.hpp"

namespace theta {

  using Rng = std::mt19937_64;

  std::size_t uniform_index(Rng& rng, std::size_t n);  // in [0, n)

  Object     random_object(int level, int max_degree, Rng& rng);
  SiteObject random_site_object(Site const& site, int max_degree, Rng& rng);
  Morphism   random_morphism(Object const& a, Object const& b, Rng& rng);

  struct RandomSpec {
    std::size_t      min_cells     = 1;
    std::size_t      max_cells     = 4;
    int              max_degree    = 2;
    std::size_t      max_relations = 2;
    std::vector<int> factor_bounds;  // empty: only the total bound applies
  };

  // Random cells glued along random common restrictions.
  Presentation random_presentation(Site const& site, RandomSpec const& spec, Rng& rng);
  Presheaf     random_presheaf(Site const& site, RandomSpec const& spec, Rng& rng);

  // A uniformly chosen map among the first `limit` maps in a random order,
  // or nullopt when there are none.
  std::optional<PresheafMap> random_map(Presheaf const& P, Presheaf const& X, Rng& rng,
                                        std::size_t limit = 64);
  // The inclusion of a random generated subpresheaf of a random presheaf.
  PresheafMap random_mono(Site const& site, RandomSpec const& spec, Rng& rng);

  // Reflexive, transitive relation on n points.
  std::vector<std::vector<bool>> random_preorder(std::size_t n, Rng& rng);
  Monoid                         random_monoid(Site const& inner, Rng& rng);
  EnrichedCategory random_enriched_category(Site const& inner, std::size_t max_objects, Rng& rng);

}  // namespace theta
