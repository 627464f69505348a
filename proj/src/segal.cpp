#include "theta/segal.hpp"

#include <algorithm>
#include <unordered_map>

#include "theta/detail/memo.hpp"
#include "theta/detail/union_find.hpp"

namespace theta {

  namespace {

    std::string tuple_string(std::vector<Elem> const& t) {
      std::string s = "(";
      for (std::size_t i = 0; i < t.size(); ++i) {
        s += (i ? "," : "") + std::to_string(t[i]);
      }
      return s + ")";
    }

    // Composable k-tuples of edges of X_1, lexicographically ordered.
    class SpineTargetNode final : public PresheafNode {
     public:
      SpineTargetNode(Presheaf X, std::size_t k)
          : PresheafNode(X.site().tail()), X_(std::move(X)), k_(k) {}

      std::size_t size(SiteObject const& theta) const override {
        return tuples(theta)->size();
      }
      Elem act(SiteMorphism const& g, Elem x) const override {
        auto const&       t = (*tuples(g.target()))[x];
        std::vector<Elem> u(t.size());
        SiteMorphism      h = outer(identity(Object::simplex(1)), g.target());
        for (std::size_t j = 0; j < g.parts.size(); ++j) {
          h.parts[j + 1] = g.parts[j];
        }
        for (std::size_t i = 0; i < t.size(); ++i) {
          u[i] = X_.act(h, t[i]);
        }
        auto r = find(g.source(), u);
        if (!r) {
          throw Error("spine target is not closed under restriction");
        }
        return *r;
      }
      std::optional<int> support_degree() const override {
        return std::nullopt;
      }
      std::string describe() const override {
        return "spine" + std::to_string(k_) + "(" + X_.describe() + ")";
      }

      std::shared_ptr<std::vector<std::vector<Elem>> const> tuples(SiteObject const& theta) const {
        return memo_.get(theta, [&] {
          std::size_t const n   = X_.size(outer_object(1, theta));
          auto const        d1  = outer(coface(1, 1), theta);
          auto const        d0  = outer(coface(1, 0), theta);
          std::unordered_map<Elem, std::vector<Elem>> by_source;
          std::vector<Elem>                           target(n);
          for (Elem e = 0; e < n; ++e) {
            by_source[X_.act(d1, e)].push_back(e);
            target[e] = X_.act(d0, e);
          }
          std::vector<std::vector<Elem>> out;
          std::vector<Elem>              cur;
          std::function<void()>          extend = [&] {
            if (cur.size() == k_) {
              out.push_back(cur);
              return;
            }
            auto it = by_source.find(target[cur.back()]);
            if (it == by_source.end()) {
              return;
            }
            for (Elem e : it->second) {
              cur.push_back(e);
              extend();
              cur.pop_back();
            }
          };
          for (Elem e = 0; e < n; ++e) {
            cur.assign(1, e);
            extend();
          }
          return out;
        });
      }

      std::optional<Elem> find(SiteObject const& theta, std::vector<Elem> const& t) const {
        auto tu = tuples(theta);
        auto it = std::lower_bound(tu->begin(), tu->end(), t);
        if (it == tu->end() || *it != t) {
          return std::nullopt;
        }
        return static_cast<Elem>(it - tu->begin());
      }

     private:
      Presheaf                                                    X_;
      std::size_t                                                 k_;
      detail::Memo<SiteObject, std::vector<std::vector<Elem>>> memo_;
    };

    struct EdgeClasses {
      std::size_t                           vertices = 0;
      std::vector<std::vector<std::size_t>> counts;    // pi0 of each fiber X_1(x, y)
      std::vector<std::size_t>              cls;       // per element of X_1(pt)
      std::vector<std::pair<Elem, Elem>>    ends;      // per element of X_1(pt)
    };

    EdgeClasses edge_classes(SegalPreObject const& X) {
      EdgeClasses      ec;
      SiteObject const pt = X.inner_site().terminal();
      ec.vertices         = X.vertex_count();
      ec.counts.assign(ec.vertices, std::vector<std::size_t>(ec.vertices, 0));
      std::size_t const n = X.diagram().size(outer_object(1, pt));
      ec.cls.assign(n, 0);
      ec.ends.resize(n);
      for (Elem x = 0; x < ec.vertices; ++x) {
        for (Elem y = 0; y < ec.vertices; ++y) {
          Subobject F  = fiber(X, 1, {x, y});
          Pi0       pi = pi0(F.object);
          ec.counts[x][y] = pi.count;
          std::size_t const m = F.object.size(pt);
          for (Elem i = 0; i < m; ++i) {
            Elem e     = F.inclusion(pt, i);
            ec.cls[e]  = pi.component[i];
            ec.ends[e] = {x, y};
          }
        }
      }
      return ec;
    }

  }  // namespace

  ////////////////////////////////////////////////////////////////////////
  // Segal maps
  ////////////////////////////////////////////////////////////////////////

  SegalMap segal_map(SegalPreObject const& X, std::size_t k) {
    if (k < 1) {
      throw PreconditionFailed("segal_map needs k >= 1");
    }
    auto            node = std::make_shared<SpineTargetNode>(X.diagram(), k);
    SpineTargetNode const* raw = node.get();
    SegalMap        s;
    s.k      = k;
    s.target = Presheaf(node);
    Presheaf D = X.diagram();
    s.phi      = PresheafMap(
        X.level(k), s.target,
        [D, k, raw](SiteObject const& theta, Elem x) {
          std::vector<Elem> t(k);
          for (std::size_t i = 0; i < k; ++i) {
            t[i] = D.act(outer(edge_map(k, i, i + 1), theta), x);
          }
          auto r = raw->find(theta, t);
          if (!r) {
            throw Error("segal map: edge tuple is not composable");
          }
          return *r;
        },
        "phi_" + std::to_string(k));
    Presheaf keep = s.target;
    s.decode      = [raw, keep](SiteObject const& theta, Elem x) { return (*raw->tuples(theta))[x]; };
    s.encode      = [raw, keep](SiteObject const& theta, std::vector<Elem> const& t) {
      return raw->find(theta, t);
    };
    return s;
  }

  SegalCheck is_segal_strict(SegalPreObject const& X, Window const& inner_window,
                             std::size_t max_k) {
    SegalCheck r;
    for (std::size_t k = 2; k <= max_k; ++k) {
      SegalMap s = segal_map(X, k);
      for (auto const& theta : inner_window.objects()) {
        std::size_t const n = s.phi.source().size(theta);
        std::size_t const t = s.target.size(theta);
        std::vector<Elem> pre(t, SIZE_MAX);
        for (Elem x = 0; x < n; ++x) {
          Elem y = s.phi(theta, x);
          if (pre[y] != SIZE_MAX) {
            r.strict  = false;
            r.k       = k;
            r.witness = "phi_" + std::to_string(k) + " identifies elements " + std::to_string(pre[y])
                        + " and " + std::to_string(x) + " over " + theta.to_string();
            return r;
          }
          pre[y] = x;
        }
        for (Elem y = 0; y < t; ++y) {
          if (pre[y] == SIZE_MAX) {
            r.strict  = false;
            r.k       = k;
            r.witness = "composable edges " + tuple_string(s.decode(theta, y)) + " over "
                        + theta.to_string() + " have no filler in level " + std::to_string(k);
            return r;
          }
        }
      }
    }
    return r;
  }

  ////////////////////////////////////////////////////////////////////////
  // Components
  ////////////////////////////////////////////////////////////////////////

  Pi0 pi0(Presheaf const& P) {
    SiteObject const  pt = P.site().terminal();
    std::size_t const n  = P.size(pt);
    detail::UnionFind uf(n);
    for (auto const& e : edge_shapes(P.site())) {
      auto const&       ends = hom(pt, e);
      std::size_t const m    = P.size(e);
      for (Elem y = 0; y < m; ++y) {
        uf.unite(P.act(ends[0], y), P.act(ends[1], y));
      }
    }
    Pi0 r;
    r.component = uf.classes(&r.count);
    return r;
  }

  std::size_t pi0_class(Presheaf const& P, Pi0 const& pi, SiteObject const& d, Elem x) {
    auto const& pts = hom(P.site().terminal(), d);
    return pi.component.at(P.act(pts.front(), x));
  }

  ////////////////////////////////////////////////////////////////////////
  // Homotopy categories
  ////////////////////////////////////////////////////////////////////////

  std::size_t HoCategory::compose(std::size_t x, std::size_t y, std::size_t z, std::size_t a,
                                  std::size_t b) const {
    return comp.at({x, y, z}).at(a * homs[y][z] + b);
  }

  bool HoCategory::is_iso(std::size_t x, std::size_t y, std::size_t a) const {
    for (std::size_t b = 0; b < homs[y][x]; ++b) {
      if (compose(x, y, x, a, b) == identity[x] && compose(y, x, y, b, a) == identity[y]) {
        return true;
      }
    }
    return false;
  }

  std::optional<std::string> HoCategory::check_axioms() const {
    for (std::size_t x = 0; x < objects; ++x) {
      for (std::size_t y = 0; y < objects; ++y) {
        for (std::size_t a = 0; a < homs[x][y]; ++a) {
          if (compose(x, x, y, identity[x], a) != a || compose(x, y, y, a, identity[y]) != a) {
            return "unit law fails for a morphism " + std::to_string(x) + " -> "
                   + std::to_string(y);
          }
          for (std::size_t z = 0; z < objects; ++z) {
            for (std::size_t b = 0; b < homs[y][z]; ++b) {
              std::size_t const ba = compose(x, y, z, a, b);
              for (std::size_t w = 0; w < objects; ++w) {
                for (std::size_t c = 0; c < homs[z][w]; ++c) {
                  if (compose(x, z, w, ba, c) != compose(x, y, w, a, compose(y, z, w, b, c))) {
                    return "associativity fails on " + std::to_string(x) + " -> "
                           + std::to_string(y) + " -> " + std::to_string(z) + " -> "
                           + std::to_string(w);
                  }
                }
              }
            }
          }
        }
      }
    }
    return std::nullopt;
  }

  HoCategory homotopy_category(SegalPreObject const& X, Window const& inner_window) {
    auto strict = is_segal_strict(X, inner_window, 3);
    if (!strict.strict) {
      throw PreconditionFailed("homotopy_category needs a strict Segal object: "
                               + strict.witness.value_or(""));
    }
    EdgeClasses const ec = edge_classes(X);
    SiteObject const  pt = X.inner_site().terminal();
    Presheaf const&   D  = X.diagram();

    HoCategory C;
    C.objects = ec.vertices;
    C.homs    = ec.counts;
    for (Elem x = 0; x < C.objects; ++x) {
      C.identity.push_back(ec.cls[X.constant_at(1, pt, x)]);
    }
    for (std::size_t x = 0; x < C.objects; ++x) {
      for (std::size_t y = 0; y < C.objects; ++y) {
        for (std::size_t z = 0; z < C.objects; ++z) {
          C.comp[{x, y, z}].assign(C.homs[x][y] * C.homs[y][z], SIZE_MAX);
        }
      }
    }
    SegalMap const    s2 = segal_map(X, 2);
    std::size_t const n2 = D.size(outer_object(2, pt));
    auto const        d1 = outer(coface(2, 1), pt);
    for (Elem w = 0; w < n2; ++w) {
      auto const        t = s2.decode(pt, s2.phi(pt, w));
      auto const [x, y]   = ec.ends[t[0]];
      std::size_t const z = ec.ends[t[1]].second;
      std::size_t const a = ec.cls[t[0]];
      std::size_t const b = ec.cls[t[1]];
      std::size_t const c = ec.cls[D.act(d1, w)];
      auto&             slot = C.comp[{x, y, z}][a * C.homs[y][z] + b];
      if (slot != SIZE_MAX && slot != c) {
        throw Error("composition does not descend to components at objects "
                    + std::to_string(x) + ", " + std::to_string(y) + ", " + std::to_string(z));
      }
      slot = c;
    }
    return C;
  }

  HoFunctor induced_functor(PresheafMap const& f, SegalPreObject const& X,
                            SegalPreObject const& Y) {
    EdgeClasses const ex = edge_classes(X);
    EdgeClasses const ey = edge_classes(Y);
    SiteObject const  p0 = outer_object(0, X.inner_site().terminal());
    SiteObject const  p1 = outer_object(1, X.inner_site().terminal());
    HoFunctor         F;
    for (Elem v = 0; v < ex.vertices; ++v) {
      F.objects.push_back(f(p0, v));
    }
    for (std::size_t x = 0; x < ex.vertices; ++x) {
      for (std::size_t y = 0; y < ex.vertices; ++y) {
        F.homs[{x, y}].assign(ex.counts[x][y], SIZE_MAX);
      }
    }
    for (Elem e = 0; e < ex.cls.size(); ++e) {
      auto const [x, y] = ex.ends[e];
      auto&      slot   = F.homs[{x, y}][ex.cls[e]];
      std::size_t const c = ey.cls[f(p1, e)];
      if (slot != SIZE_MAX && slot != c) {
        throw Error("the map does not respect components of mapping objects");
      }
      slot = c;
    }
    return F;
  }

  std::optional<std::string> check_functor(HoFunctor const& F, HoCategory const& C,
                                           HoCategory const& D) {
    for (std::size_t x = 0; x < C.objects; ++x) {
      if (F.homs.at({x, x})[C.identity[x]] != D.identity[F.objects[x]]) {
        return "identity of object " + std::to_string(x) + " is not preserved";
      }
      for (std::size_t y = 0; y < C.objects; ++y) {
        for (std::size_t z = 0; z < C.objects; ++z) {
          for (std::size_t a = 0; a < C.homs[x][y]; ++a) {
            for (std::size_t b = 0; b < C.homs[y][z]; ++b) {
              std::size_t const lhs = F.homs.at({x, z})[C.compose(x, y, z, a, b)];
              std::size_t const rhs = D.compose(F.objects[x], F.objects[y], F.objects[z],
                                                F.homs.at({x, y})[a], F.homs.at({y, z})[b]);
              if (lhs != rhs) {
                return "composition is not preserved on " + std::to_string(x) + " -> "
                       + std::to_string(y) + " -> " + std::to_string(z);
              }
            }
          }
        }
      }
    }
    return std::nullopt;
  }

  std::optional<std::string> equivalence_failure(HoFunctor const& F, HoCategory const& C,
                                                 HoCategory const& D) {
    for (std::size_t x = 0; x < C.objects; ++x) {
      for (std::size_t y = 0; y < C.objects; ++y) {
        auto const& h = F.homs.at({x, y});
        if (C.homs[x][y] != D.homs[F.objects[x]][F.objects[y]]) {
          return "not fully faithful at (" + std::to_string(x) + "," + std::to_string(y) + ")";
        }
        std::vector<std::size_t> sorted = h;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
          return "not faithful at (" + std::to_string(x) + "," + std::to_string(y) + ")";
        }
      }
    }
    for (std::size_t v = 0; v < D.objects; ++v) {
      bool reached = false;
      for (std::size_t x = 0; x < C.objects && !reached; ++x) {
        std::size_t const u = F.objects[x];
        for (std::size_t a = 0; a < D.homs[u][v] && !reached; ++a) {
          reached = D.is_iso(u, v, a);
        }
      }
      if (!reached) {
        return "object " + std::to_string(v) + " is not isomorphic to an object in the image";
      }
    }
    return std::nullopt;
  }

  DKResult dk_equivalence_check(PresheafMap const& f, SegalPreObject const& X,
                                SegalPreObject const& Y, Window const& inner_window) {
    DKResult          r;
    SiteObject const  p0 = outer_object(0, X.inner_site().terminal());
    std::size_t const nv = X.vertex_count();
    r.w1                 = true;
    for (Elem x = 0; x < nv && r.w1; ++x) {
      for (Elem y = 0; y < nv && r.w1; ++y) {
        Subobject FX = fiber(X, 1, {x, y});
        Subobject FY = fiber(Y, 1, {f(p0, x), f(p0, y)});
        for (auto const& theta : inner_window.objects()) {
          std::size_t const n = FX.object.size(theta);
          if (n != FY.object.size(theta)) {
            r.w1      = false;
            r.witness = "mapping objects over (" + std::to_string(x) + "," + std::to_string(y)
                        + ") differ in size at " + theta.to_string();
            break;
          }
          std::vector<Elem> imgs;
          for (Elem i = 0; i < n; ++i) {
            imgs.push_back(f(outer_object(1, theta), FX.inclusion(theta, i)));
          }
          std::sort(imgs.begin(), imgs.end());
          if (std::adjacent_find(imgs.begin(), imgs.end()) != imgs.end()) {
            r.w1      = false;
            r.witness = "mapping object map over (" + std::to_string(x) + ","
                        + std::to_string(y) + ") is not injective at " + theta.to_string();
            break;
          }
        }
      }
    }
    HoCategory const hx = homotopy_category(X, inner_window);
    HoCategory const hy = homotopy_category(Y, inner_window);
    HoFunctor const  F  = induced_functor(f, X, Y);
    auto             fail = equivalence_failure(F, hx, hy);
    r.w2                  = !fail;
    if (fail && r.witness.empty()) {
      r.witness = *fail;
    }
    r.ok = r.w1 && r.w2;
    return r;
  }

  ////////////////////////////////////////////////////////////////////////
  // Reduction
  ////////////////////////////////////////////////////////////////////////

  Reduction reduction(Presheaf const& X) {
    Presheaf const X0 = level(X, 0);
    Reduction      r;
    r.components      = pi0(X0);
    Presheaf const c0 = constant_along(1, X0);
    Presheaf const cp = discrete(X.site(), r.components.count);
    PresheafMap    deg(
        c0, X,
        [X](SiteObject const& d, Elem x) {
          SiteObject theta;
          theta.parts.assign(d.parts.begin() + 1, d.parts.end());
          return X.act(outer(to_point(d[0].arity()), theta), x);
        },
        "s0*");
    Pi0 const   pi = r.components;
    PresheafMap cls(
        c0, cp,
        [X0, pi](SiteObject const& d, Elem x) {
          SiteObject theta;
          theta.parts.assign(d.parts.begin() + 1, d.parts.end());
          return pi0_class(X0, pi, theta, x);
        },
        "pi0");
    r.pushout = pushout(deg, cls);
    r.reduced = r.pushout.object;
    r.unit    = r.pushout.left;
    return r;
  }

  PresheafMap reduce_map(PresheafMap const& f, Reduction const& rx, Reduction const& ry) {
    Presheaf const&  X  = f.source();
    SiteObject const pt = outer_object(0, X.site().tail().terminal());
    // send each component of X_0 to the component of the image of a member
    std::vector<std::size_t> cls(rx.components.count, SIZE_MAX);
    for (Elem v = 0; v < rx.components.component.size(); ++v) {
      std::size_t& c = cls[rx.components.component[v]];
      if (c == SIZE_MAX) {
        c = ry.components.component.at(f(pt, v));
      }
    }
    PresheafMap const right = ry.pushout.right;
    PresheafMap       v(
        rx.pushout.g.target(), ry.reduced,
        [cls, right](SiteObject const& d, Elem c) { return right(d, cls.at(c)); }, "pi0(f)");
    return pushout_induced(rx.pushout, compose(ry.unit, f), v);
  }

  ////////////////////////////////////////////////////////////////////////
  // Phi
  ////////////////////////////////////////////////////////////////////////

  PhiFactorization phi_construction(PresheafMap const& f) {
    Coskeleton const cy = coskeleton0(f.target());
    Coskeleton const cx = coskeleton0(f.source());
    PresheafMap const cm = cosk0_map(level(f, 0));
    Pullback const    pb = pullback(cy.unit, cm);
    PhiFactorization  r;
    r.phiY   = pb.object;
    r.to_Y   = pb.left;
    r.from_X = pullback_induced(pb, f, cx.unit);
    return r;
  }

}  // namespace theta
