#include "theta/random.hpp"

#include <algorithm>

namespace theta {

  std::size_t uniform_index(Rng& rng, std::size_t n) {
    if (n == 0) {
      throw PreconditionFailed("uniform_index over an empty range");
    }
    // modulo keeps the stream portable across standard libraries
    return static_cast<std::size_t>(rng() % n);
  }

  Object random_object(int level, int max_degree, Rng& rng) {
    auto const& objs = objects_up_to_degree(level, max_degree);
    return objs[uniform_index(rng, objs.size())];
  }

  SiteObject random_site_object(Site const& site, int max_degree, Rng& rng) {
    Window const w    = Window::up_to(site, max_degree);
    auto const&  objs = w.objects();
    return objs[uniform_index(rng, objs.size())];
  }

  Morphism random_morphism(Object const& a, Object const& b, Rng& rng) {
    auto const& h = hom(a, b);
    return h[uniform_index(rng, h.size())];
  }

  namespace {

    SiteMorphism random_site_morphism(SiteObject const& a, SiteObject const& b, Rng& rng) {
      auto const& h = hom(a, b);
      return h[uniform_index(rng, h.size())];
    }

    Window spec_window(Site const& site, RandomSpec const& spec) {
      if (spec.factor_bounds.empty()) {
        return Window::up_to(site, spec.max_degree);
      }
      return Window::bounded(site, spec.factor_bounds, spec.max_degree);
    }

  }  // namespace

  Presentation random_presentation(Site const& site, RandomSpec const& spec, Rng& rng) {
    Window const w    = spec_window(site, spec);
    auto const&  objs = w.objects();
    Presentation p;
    p.site                = site;
    std::size_t const lo  = std::min(spec.min_cells, spec.max_cells);
    std::size_t const n   = lo + uniform_index(rng, spec.max_cells - lo + 1);
    for (std::size_t c = 0; c < n; ++c) {
      p.ids.push_back("c" + std::to_string(c));
      p.shapes.push_back(objs[uniform_index(rng, objs.size())]);
    }
    std::size_t const r = n == 0 ? 0 : uniform_index(rng, spec.max_relations + 1);
    for (std::size_t k = 0; k < r; ++k) {
      std::size_t const i = uniform_index(rng, n);
      std::size_t const j = uniform_index(rng, n);
      int const         d = std::min(p.shapes[i].degree(), p.shapes[j].degree());
      // a common source of degree below both shapes, so cells keep their tops
      std::vector<SiteObject> srcs;
      for (auto const& o : objs) {
        if (o.degree() < d || (i != j && o.degree() <= d && o.degree() == 0)) {
          srcs.push_back(o);
        }
      }
      if (srcs.empty()) {
        continue;
      }
      SiteObject const s = srcs[uniform_index(rng, srcs.size())];
      Relation         rel;
      rel.lhs = {i, random_site_morphism(s, p.shapes[i], rng)};
      rel.rhs = {j, random_site_morphism(s, p.shapes[j], rng)};
      p.relations.push_back(std::move(rel));
    }
    p.validate();
    return p;
  }

  Presheaf random_presheaf(Site const& site, RandomSpec const& spec, Rng& rng) {
    return presented(random_presentation(site, spec, rng));
  }

  std::optional<PresheafMap> random_map(Presheaf const& P, Presheaf const& X, Rng& rng,
                                        std::size_t limit) {
    // enumerate into a randomly relabeled copy so the first maps are spread out
    Relabeled const    R = relabel(X, rng());
    HomSetOptions      o;
    o.limit          = limit;
    HomSet const hs  = hom_set(P, R.object, o);
    if (hs.size() == 0) {
      return std::nullopt;
    }
    return compose(R.to_original, hs.as_map(uniform_index(rng, hs.size())));
  }

  PresheafMap random_mono(Site const& site, RandomSpec const& spec, Rng& rng) {
    Presentation const p = random_presentation(site, spec, rng);
    Presheaf const     Y = presented(p);
    auto const         g = generators(Y);
    std::vector<std::pair<SiteObject, Elem>> gens;
    for (std::size_t c = 0; c < g->elements.size(); ++c) {
      if (rng() % 2 == 0) {
        gens.emplace_back(g->presentation.shapes[c], g->elements[c]);
      }
    }
    if (gens.empty()) {
      return from_empty(Y);
    }
    return generated_subpresheaf(Y, gens, "random sub").inclusion;
  }

  std::vector<std::vector<bool>> random_preorder(std::size_t n, Rng& rng) {
    std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        le[x][y] = x == y || rng() % 3 == 0;
      }
    }
    // transitive closure
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
          if (le[x][k] && le[k][y]) {
            le[x][y] = true;
          }
        }
      }
    }
    return le;
  }

  Monoid random_monoid(Site const& inner, Rng& rng) {
    std::size_t const kinds = inner.level(0) >= 1 ? 3 : 2;
    switch (uniform_index(rng, kinds)) {
      case 0:
        return trivial_monoid(inner);
      case 1:
        return cyclic_monoid(inner, 2 + uniform_index(rng, 2));
      default:
        return max_monoid(inner, 1 + uniform_index(rng, 2));
    }
  }

  EnrichedCategory random_enriched_category(Site const& inner, std::size_t max_objects, Rng& rng) {
    std::size_t const n = 1 + uniform_index(rng, max_objects);
    return preorder_category(random_preorder(n, rng), random_monoid(inner, rng));
  }

}  // namespace theta
