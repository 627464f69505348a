#include "theta/reedy.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "theta/detail/memo.hpp"

namespace theta {

  namespace {

    SiteObject inner_part(SiteObject const& d) {
      SiteObject r;
      r.parts.assign(d.parts.begin() + 1, d.parts.end());
      return r;
    }

    std::optional<std::string> injectivity_witness(PresheafMap const& f, Window const& w) {
      for (auto const& d : w.objects()) {
        std::unordered_map<Elem, Elem> seen;
        std::size_t const              n = f.source().size(d);
        for (Elem x = 0; x < n; ++x) {
          auto [it, fresh] = seen.emplace(f(d, x), x);
          if (!fresh) {
            return "elements " + std::to_string(it->second) + " and " + std::to_string(x)
                   + " over " + d.to_string() + " have the same image";
          }
        }
      }
      return std::nullopt;
    }

  }  // namespace

  LatchingData latching(Presheaf const& X, std::size_t m) {
    Presheaf     Xm = level(X, m);
    LatchingData L;
    L.m        = m;
    L.latching = subpresheaf(
        Xm,
        [X, m, Xm](SiteObject const& theta) {
          std::vector<bool> flags(Xm.size(theta), false);
          if (m == 0) {
            return flags;
          }
          std::size_t const n = X.size(outer_object(m - 1, theta));
          for (std::size_t i = 0; i < m; ++i) {
            auto const s = outer(codegeneracy(m - 1, i), theta);
            for (Elem z = 0; z < n; ++z) {
              flags[X.act(s, z)] = true;
            }
          }
          return flags;
        },
        "L_" + std::to_string(m));
    L.witness = [X, m](SiteObject const& theta, Elem x) -> std::optional<std::size_t> {
      for (std::size_t i = 0; i < m; ++i) {
        Elem y = X.act(outer(coface(m, i), theta), x);
        if (X.act(outer(codegeneracy(m - 1, i), theta), y) == x) {
          return i;
        }
      }
      return std::nullopt;
    };
    return L;
  }

  bool in_degeneracy_image(Presheaf const& X, std::size_t m, SiteObject const& theta, Elem x) {
    for (std::size_t i = 0; i < m; ++i) {
      Elem y = X.act(outer(coface(m, i), theta), x);
      if (X.act(outer(codegeneracy(m - 1, i), theta), y) == x) {
        return true;
      }
    }
    return false;
  }

  bool has_equal_degeneracies(Presheaf const& X, std::size_t m, SiteObject const& theta, Elem x) {
    std::vector<Elem> degs;
    for (std::size_t i = 0; i <= m; ++i) {
      degs.push_back(X.act(outer(codegeneracy(m, i), theta), x));
    }
    std::sort(degs.begin(), degs.end());
    return std::adjacent_find(degs.begin(), degs.end()) != degs.end();
  }

  std::vector<std::vector<SiteMorphism>> const& codegeneracies_onto(SiteObject const& d) {
    static detail::OrderedMemo<SiteObject, std::vector<std::vector<SiteMorphism>>> memo;
    return *memo.get(d, [&] {
      std::vector<std::vector<SiteMorphism>> out;
      for (std::size_t j = 0; j < d.arity(); ++j) {
        int const l   = d[j].level();
        int const deg = d[j].degree() + 1;
        for (auto const& o : objects_up_to_degree(l, deg)) {
          if (o.degree() != deg) {
            continue;
          }
          SiteObject e = d;
          e.parts[j]   = o;
          std::vector<SiteMorphism> group;
          for (auto const& c : elementary_codegeneracies(e)) {
            if (c.epi.target() == d) {
              group.push_back(c.epi);
            }
          }
          if (!group.empty()) {
            out.push_back(std::move(group));
          }
        }
      }
      return out;
    });
  }

  bool has_equal_inner_degeneracies(Presheaf const& W, SiteObject const& d, Elem x) {
    for (auto const& group : codegeneracies_onto(d)) {
      std::vector<Elem> degs;
      for (auto const& s : group) {
        degs.push_back(W.act(s, x));
      }
      std::sort(degs.begin(), degs.end());
      if (std::adjacent_find(degs.begin(), degs.end()) != degs.end()) {
        return true;
      }
    }
    return false;
  }

  PartitionReport nondegenerate_partition(Presheaf const& X, std::size_t m,
                                          Window const& inner_window) {
    PartitionReport r;
    for (auto const& theta : inner_window.objects()) {
      std::size_t const n = X.size(outer_object(m, theta));
      for (Elem x = 0; x < n; ++x) {
        bool const a = in_degeneracy_image(X, m, theta, x);
        bool const b = has_equal_degeneracies(X, m, theta, x);
        ++(a ? r.degenerate : r.nondegenerate);
        if (a != b) {
          ++r.disagreements;
          if (!r.first_disagreement) {
            r.first_disagreement = "element " + std::to_string(x) + " of level "
                                   + std::to_string(m) + " over " + theta.to_string();
          }
        }
      }
    }
    return r;
  }

  PartitionReport inner_partition(Presheaf const& W, Window const& window) {
    PartitionReport r;
    for (auto const& d : window.objects()) {
      std::size_t const n = W.size(d);
      for (Elem x = 0; x < n; ++x) {
        bool const a = is_degenerate(W, d, x);
        bool const b = has_equal_inner_degeneracies(W, d, x);
        ++(a ? r.degenerate : r.nondegenerate);
        if (a != b) {
          ++r.disagreements;
          if (!r.first_disagreement) {
            r.first_disagreement = "element " + std::to_string(x) + " over " + d.to_string();
          }
        }
      }
    }
    return r;
  }

  HomSet matching(Presheaf const& X, SiteObject const& a) {
    return hom_set(boundary(X.site(), a).object, X);
  }

  RelativeLatching relative_latching_map(PresheafMap const& f, std::size_t m) {
    PresheafMap const fm = level(f, m);
    LatchingData      LX = latching(f.source(), m);
    LatchingData      LY = latching(f.target(), m);
    PresheafMap const g  = corestrict(compose(fm, LX.latching.inclusion), LY.latching);
    RelativeLatching  r;
    r.pushout = pushout(LX.latching.inclusion, g);
    r.map     = pushout_induced(r.pushout, fm, LY.latching.inclusion);
    return r;
  }

  CofibrationReport check_relative_latching(PresheafMap const& f, std::size_t max_m,
                                            Window const& inner_window) {
    CofibrationReport rep;
    for (std::size_t m = 0; m <= max_m; ++m) {
      LatchingLevel lv;
      lv.m       = m;
      lv.witness = injectivity_witness(relative_latching_map(f, m).map, inner_window);
      lv.mono    = !lv.witness;
      rep.all_mono &= lv.mono;
      rep.levels.push_back(std::move(lv));
    }
    return rep;
  }

  Subobject skeleton(Presheaf const& X, std::size_t p) {
    return subpresheaf(
        X,
        [X, p](SiteObject const& d) {
          std::size_t const k = d[0].arity();
          std::size_t const n = X.size(d);
          std::vector<bool> flags(n, true);
          if (k <= p) {
            return flags;
          }
          SiteObject const theta = inner_part(d);
          for (Elem x = 0; x < n; ++x) {
            // peel off degeneracies until the level is <= p
            Elem        cur = x;
            std::size_t lvl = k;
            while (lvl > p) {
              bool found = false;
              for (std::size_t i = 0; i < lvl && !found; ++i) {
                Elem y = X.act(outer(coface(lvl, i), theta), cur);
                if (X.act(outer(codegeneracy(lvl - 1, i), theta), y) == cur) {
                  cur   = y;
                  found = true;
                }
              }
              if (!found) {
                break;
              }
              --lvl;
            }
            flags[x] = lvl <= p;
          }
          return flags;
        },
        "sk_" + std::to_string(p));
  }

  Coskeleton coskeleton0(Presheaf const& X) {
    Presheaf   X0 = level(X, 0);
    Coskeleton c;
    c.object = cosk0(X0);
    c.unit   = PresheafMap(
        X, c.object,
        [X, X0](SiteObject const& d, Elem x) {
          std::size_t const p     = d[0].arity();
          SiteObject const  theta = inner_part(d);
          std::size_t const base  = X0.size(theta);
          Elem              y     = 0;
          for (std::size_t v = 0; v <= p; ++v) {
            y = y * base + X.act(outer(vertex_map(p, v), theta), x);
          }
          return y;
        },
        "cosk0.unit");
    return c;
  }

  PresheafMap cosk0_map(PresheafMap const& f0) {
    Presheaf src = cosk0(f0.source());
    Presheaf tgt = cosk0(f0.target());
    return PresheafMap(
        src, tgt,
        [f0](SiteObject const& d, Elem x) {
          std::size_t const p     = d[0].arity();
          SiteObject const  theta = inner_part(d);
          std::size_t const bs    = f0.source().size(theta);
          std::size_t const bt    = f0.target().size(theta);
          std::vector<Elem> digits(p + 1);
          for (std::size_t k = p + 1; k-- > 0;) {
            digits[k] = x % bs;
            x /= bs;
          }
          Elem y = 0;
          for (Elem v : digits) {
            y = y * bt + f0(theta, v);
          }
          return y;
        },
        "cosk0(" + f0.label() + ")");
  }

  Subobject fiber(SegalPreObject const& X, std::size_t p, std::vector<Elem> const& vs) {
    if (vs.size() != p + 1) {
      throw MalformedInput("fiber: need p+1 vertices");
    }
    std::size_t const nv = X.vertex_count();
    for (Elem v : vs) {
      if (v >= nv) {
        throw PreconditionFailed("fiber: vertex " + std::to_string(v) + " is not in X_0");
      }
    }
    Presheaf    Xp = X.level(p);
    std::string label = "fiber_" + std::to_string(p) + "(";
    for (std::size_t i = 0; i < vs.size(); ++i) {
      label += (i ? "," : "") + std::to_string(vs[i]);
    }
    label += ")";
    return subpresheaf(
        Xp,
        [X, p, vs, Xp](SiteObject const& theta) {
          std::size_t const n = Xp.size(theta);
          std::vector<bool> flags(n);
          for (Elem x = 0; x < n; ++x) {
            flags[x] = X.vertices(p, theta, x) == vs;
          }
          return flags;
        },
        label);
  }

}  // namespace theta
