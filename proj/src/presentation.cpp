#include <algorithm>
#include <unordered_map>

#include "theta/presheaf.hpp"

namespace theta {

  namespace {

    bool degenerate_at(PresheafNode const& P, SiteObject const& d, Elem x) {
      for (auto const& c : elementary_codegeneracies(d)) {
        if (P.act(c.epi, P.act(c.section, x)) == x) {
          return true;
        }
      }
      return false;
    }

    EZ decompose(PresheafNode const& P, SiteObject const& d, Elem x) {
      EZ         r{identity(d), x};
      SiteObject cur = d;
      while (true) {
        bool found = false;
        for (auto const& c : elementary_codegeneracies(cur)) {
          Elem y = P.act(c.section, r.root);
          if (P.act(c.epi, y) == r.root) {
            r.sigma = compose(c.epi, r.sigma);
            r.root  = y;
            cur     = c.epi.target();
            found   = true;
            break;
          }
        }
        if (!found) {
          return r;
        }
      }
    }

    struct Canon {
      std::size_t  gen = SIZE_MAX;
      SiteMorphism mono;
    };

    struct ObjectData {
      std::vector<bool>  nondegenerate;
      std::vector<Canon> canon;
    };

    struct Extracted {
      PresheafNode const*                         node = nullptr;
      int                                         degree = 0;
      std::unordered_map<SiteObject, ObjectData> objects;

      ElemRef express(SiteObject const& d, Elem x) const {
        EZ   ez = decompose(*node, d, x);
        auto e  = ez.sigma.target();
        auto it = objects.find(e);
        if (it == objects.end() || it->second.canon[ez.root].gen == SIZE_MAX) {
          throw WindowTooSmall("element over " + d.to_string()
                               + " is not generated by elements over objects of degree <= "
                               + std::to_string(degree) + " (" + node->describe() + ")");
        }
        auto const& c = it->second.canon[ez.root];
        return {c.gen, compose(c.mono, ez.sigma)};
      }
    };

  }  // namespace

  bool is_degenerate(Presheaf const& P, SiteObject const& d, Elem x) {
    return degenerate_at(P.node(), d, x);
  }

  EZ ez_decompose(Presheaf const& P, SiteObject const& d, Elem x) {
    return decompose(P.node(), d, x);
  }

  std::shared_ptr<GeneratorData const> extract_generators(Presheaf const& P, int degree) {
    auto ex    = std::make_shared<Extracted>();
    ex->node   = &P.node();
    ex->degree = degree;
    Window const w = Window::up_to(P.site(), degree);

    for (auto const& d : w.objects()) {
      std::size_t const n = P.size(d);
      ObjectData        od;
      od.nondegenerate.resize(n);
      od.canon.resize(n);
      for (Elem x = 0; x < n; ++x) {
        od.nondegenerate[x] = !degenerate_at(*ex->node, d, x);
      }
      ex->objects.emplace(d, std::move(od));
    }

    auto gd               = std::make_shared<GeneratorData>();
    gd->presentation.site = P.site();
    gd->window_degree     = degree;

    // Maximal nondegenerate elements, highest degree first. A nondegenerate
    // element generated by earlier generators is a mono-face of one of them.
    auto const& objs = w.objects();
    for (auto it = objs.rbegin(); it != objs.rend(); ++it) {
      auto const& d  = *it;
      auto&       od = ex->objects.at(d);
      for (Elem x = 0; x < od.nondegenerate.size(); ++x) {
        if (!od.nondegenerate[x] || od.canon[x].gen != SIZE_MAX) {
          continue;
        }
        std::size_t const g = gd->presentation.shapes.size();
        gd->presentation.ids.push_back("g" + std::to_string(g));
        gd->presentation.shapes.push_back(d);
        gd->elements.push_back(x);
        for (auto const& mu : monos_into(d)) {
          auto  e   = mu.source();
          auto& oe  = ex->objects.at(e);
          Elem  y   = P.act(mu, x);
          if (oe.nondegenerate[y] && oe.canon[y].gen == SIZE_MAX) {
            oe.canon[y] = {g, mu};
          }
        }
      }
    }

    // Every face of a generator is related to the canonical representative
    // of its decomposition.
    for (std::size_t g = 0; g < gd->presentation.size(); ++g) {
      auto const& s = gd->presentation.shapes[g];
      for (auto const& mu : monos_into(s)) {
        auto    e   = mu.source();
        Elem    y   = P.act(mu, gd->elements[g]);
        ElemRef can = ex->express(e, y);
        ElemRef mine{g, mu};
        if (!(can == mine)) {
          gd->presentation.relations.push_back({mine, can});
        }
      }
    }

    gd->express = [ex](SiteObject const& d, Elem x) { return ex->express(d, x); };
    return gd;
  }

}  // namespace theta
