#include <algorithm>
#include <numeric>
#include <random>
#include <unordered_map>

#include "theta/detail/memo.hpp"
#include "theta/detail/union_find.hpp"
#include "theta/presheaf.hpp"

namespace theta {

  namespace {

    std::optional<int> max_support(std::vector<Presheaf> const& parts) {
      int best = 0;
      for (auto const& p : parts) {
        auto s = p.support_degree();
        if (!s) {
          return std::nullopt;
        }
        best = std::max(best, *s);
      }
      return best;
    }

    std::optional<int> sum_support(std::vector<Presheaf> const& parts) {
      int total = 0;
      for (auto const& p : parts) {
        auto s = p.support_degree();
        if (!s) {
          return std::nullopt;
        }
        total += *s;
      }
      return total;
    }

    void require_same_site(Site const& a, Site const& b, char const* what) {
      if (a != b) {
        throw SiteMismatch(std::string(what) + ": sites " + a.to_string() + " and " + b.to_string()
                           + " differ");
      }
    }

    SiteObject slice(SiteObject const& o, std::size_t from, std::size_t to) {
      SiteObject r;
      r.parts.assign(o.parts.begin() + static_cast<std::ptrdiff_t>(from),
                     o.parts.begin() + static_cast<std::ptrdiff_t>(to));
      return r;
    }

    SiteMorphism slice(SiteMorphism const& f, std::size_t from, std::size_t to) {
      SiteMorphism r;
      r.parts.assign(f.parts.begin() + static_cast<std::ptrdiff_t>(from),
                     f.parts.begin() + static_cast<std::ptrdiff_t>(to));
      return r;
    }

    ////////////////////////////////////////////////////////////////////////
    // Presented
    ////////////////////////////////////////////////////////////////////////

    class PresentedNode final : public PresheafNode {
     public:
      explicit PresentedNode(Presentation p) : PresheafNode(p.site), pres_(std::move(p)) {
        pres_.validate();
      }

      std::size_t size(SiteObject const& d) const override {
        return eval(d)->count;
      }

      Elem act(SiteMorphism const& g, Elem x) const override {
        auto        src  = g.source();
        auto        tgt  = g.target();
        auto        e    = eval(tgt);
        std::size_t slot = e->class_rep.at(x);
        std::size_t cell = cell_of(*e, slot);
        auto        m    = hom_at(tgt, pres_.shapes[cell], slot - e->offsets[cell]);
        auto        e2   = eval(src);
        return e2->slot_class[e2->offsets[cell] + hom_index(compose(m, g))];
      }

      std::optional<int> support_degree() const override {
        return pres_.max_degree();
      }

      std::string describe() const override {
        return "presented(" + std::to_string(pres_.size()) + " cells, "
               + std::to_string(pres_.relations.size()) + " relations)";
      }

      std::shared_ptr<GeneratorData const> native_generators() const override {
        auto gd          = std::make_shared<GeneratorData>();
        gd->presentation = pres_;
        for (std::size_t c = 0; c < pres_.size(); ++c) {
          auto e = eval(pres_.shapes[c]);
          gd->elements.push_back(
              e->slot_class[e->offsets[c] + hom_index(identity(pres_.shapes[c]))]);
        }
        gd->express = [this](SiteObject const& d, Elem x) {
          auto        e    = eval(d);
          std::size_t slot = e->class_rep.at(x);
          std::size_t cell = cell_of(*e, slot);
          return ElemRef{cell, hom_at(d, pres_.shapes[cell], slot - e->offsets[cell])};
        };
        return gd;
      }

     private:
      struct Eval {
        std::vector<std::size_t> offsets;
        std::vector<std::size_t> slot_class;
        std::vector<std::size_t> class_rep;
        std::size_t              count = 0;
      };

      static std::size_t cell_of(Eval const& e, std::size_t slot) {
        auto it = std::upper_bound(e.offsets.begin(), e.offsets.end(), slot);
        return static_cast<std::size_t>(it - e.offsets.begin()) - 1;
      }

      std::shared_ptr<Eval const> eval(SiteObject const& d) const {
        return memo_.get(d, [&] {
          site().check(d);
          Eval e;
          e.offsets.push_back(0);
          for (auto const& s : pres_.shapes) {
            e.offsets.push_back(e.offsets.back() + hom_size(d, s));
          }
          detail::UnionFind uf(e.offsets.back());
          for (auto const& r : pres_.relations) {
            auto const        s = r.lhs.map.source();
            std::size_t const n = hom_size(d, s);
            for (std::size_t k = 0; k < n; ++k) {
              auto g = hom_at(d, s, k);
              uf.unite(e.offsets[r.lhs.cell] + hom_index(compose(r.lhs.map, g)),
                       e.offsets[r.rhs.cell] + hom_index(compose(r.rhs.map, g)));
            }
          }
          e.slot_class = uf.classes(&e.count);
          e.class_rep.assign(e.count, 0);
          std::vector<bool> seen(e.count, false);
          for (std::size_t s = 0; s < e.slot_class.size(); ++s) {
            if (!seen[e.slot_class[s]]) {
              seen[e.slot_class[s]]      = true;
              e.class_rep[e.slot_class[s]] = s;
            }
          }
          return e;
        });
      }

      Presentation                        pres_;
      detail::Memo<SiteObject, Eval>      memo_;
    };

    ////////////////////////////////////////////////////////////////////////
    // Discrete
    ////////////////////////////////////////////////////////////////////////

    class DiscreteNode final : public PresheafNode {
     public:
      DiscreteNode(Site s, std::size_t n) : PresheafNode(std::move(s)), n_(n) {}

      std::size_t size(SiteObject const& d) const override {
        site().check(d);
        return n_;
      }
      Elem act(SiteMorphism const&, Elem x) const override {
        return x;
      }
      std::optional<int> support_degree() const override {
        return 0;
      }
      std::string describe() const override {
        return "discrete(" + std::to_string(n_) + ")";
      }
      std::shared_ptr<GeneratorData const> native_generators() const override {
        auto gd                = std::make_shared<GeneratorData>();
        gd->presentation.site  = site();
        auto const pt          = site().terminal();
        for (std::size_t i = 0; i < n_; ++i) {
          gd->presentation.ids.push_back("v" + std::to_string(i));
          gd->presentation.shapes.push_back(pt);
          gd->elements.push_back(i);
        }
        gd->express = [pt](SiteObject const& d, Elem x) {
          return ElemRef{x, hom_at(d, pt, 0)};
        };
        return gd;
      }

     private:
      std::size_t n_;
    };

    ////////////////////////////////////////////////////////////////////////
    // Coproduct
    ////////////////////////////////////////////////////////////////////////

    class CoproductNode final : public PresheafNode {
     public:
      CoproductNode(Site s, std::vector<Presheaf> parts)
          : PresheafNode(std::move(s)), parts_(std::move(parts)) {}

      std::size_t size(SiteObject const& d) const override {
        return offsets(d)->back();
      }
      Elem act(SiteMorphism const& g, Elem x) const override {
        auto        off = offsets(g.target());
        std::size_t k   = part_of(*off, x);
        return (*offsets(g.source()))[k] + parts_[k].act(g, x - (*off)[k]);
      }
      std::optional<int> support_degree() const override {
        return max_support(parts_);
      }
      std::string describe() const override {
        std::string s = "coproduct(";
        for (std::size_t i = 0; i < parts_.size(); ++i) {
          s += (i ? ", " : "") + parts_[i].describe();
        }
        return s + ")";
      }

      std::shared_ptr<GeneratorData const> native_generators() const override {
        auto gd               = std::make_shared<GeneratorData>();
        gd->presentation.site = site();
        std::vector<std::shared_ptr<GeneratorData const>> sub;
        std::vector<std::size_t>                          cell_off{0};
        for (std::size_t k = 0; k < parts_.size(); ++k) {
          auto g = generators(parts_[k]);
          for (std::size_t c = 0; c < g->presentation.size(); ++c) {
            gd->presentation.ids.push_back(std::to_string(k) + "." + g->presentation.ids[c]);
            gd->presentation.shapes.push_back(g->presentation.shapes[c]);
            auto sh = g->presentation.shapes[c];
            gd->elements.push_back((*offsets(sh))[k] + g->elements[c]);
          }
          for (auto r : g->presentation.relations) {
            r.lhs.cell += cell_off.back();
            r.rhs.cell += cell_off.back();
            gd->presentation.relations.push_back(std::move(r));
          }
          cell_off.push_back(cell_off.back() + g->presentation.size());
          sub.push_back(std::move(g));
          if (sub.back()->window_degree) {
            gd->window_degree = std::max(gd->window_degree.value_or(0), *sub.back()->window_degree);
          }
        }
        gd->express = [this, sub, cell_off](SiteObject const& d, Elem x) {
          auto        off = offsets(d);
          std::size_t k   = part_of(*off, x);
          auto        r   = sub[k]->express(d, x - (*off)[k]);
          r.cell += cell_off[k];
          return r;
        };
        return gd;
      }

      std::vector<Presheaf> const& parts() const {
        return parts_;
      }
      std::shared_ptr<std::vector<std::size_t> const> offsets(SiteObject const& d) const {
        return memo_.get(d, [&] {
          std::vector<std::size_t> off{0};
          for (auto const& p : parts_) {
            off.push_back(off.back() + p.size(d));
          }
          return off;
        });
      }
      static std::size_t part_of(std::vector<std::size_t> const& off, Elem x) {
        auto it = std::upper_bound(off.begin(), off.end(), x);
        return static_cast<std::size_t>(it - off.begin()) - 1;
      }

     private:
      std::vector<Presheaf>                           parts_;
      detail::Memo<SiteObject, std::vector<std::size_t>> memo_;
    };

    ////////////////////////////////////////////////////////////////////////
    // Product
    ////////////////////////////////////////////////////////////////////////

    class ProductNode final : public PresheafNode {
     public:
      ProductNode(Site s, std::vector<Presheaf> parts)
          : PresheafNode(std::move(s)), parts_(std::move(parts)) {}

      std::size_t size(SiteObject const& d) const override {
        std::size_t n = 1;
        for (auto const& p : parts_) {
          n *= p.size(d);
        }
        return n;
      }
      Elem act(SiteMorphism const& g, Elem x) const override {
        auto digits = decode(g.target(), x);
        auto src    = g.source();
        for (std::size_t k = 0; k < parts_.size(); ++k) {
          digits[k] = parts_[k].act(g, digits[k]);
        }
        return encode(src, digits);
      }
      std::optional<int> support_degree() const override {
        return sum_support(parts_);
      }
      std::string describe() const override {
        std::string s = "product(";
        for (std::size_t i = 0; i < parts_.size(); ++i) {
          s += (i ? ", " : "") + parts_[i].describe();
        }
        return s + ")";
      }

      std::vector<Elem> decode(SiteObject const& d, Elem x) const {
        std::vector<Elem> digits(parts_.size());
        for (std::size_t k = parts_.size(); k-- > 0;) {
          std::size_t n = parts_[k].size(d);
          digits[k]     = x % n;
          x /= n;
        }
        return digits;
      }
      Elem encode(SiteObject const& d, std::vector<Elem> const& digits) const {
        Elem x = 0;
        for (std::size_t k = 0; k < parts_.size(); ++k) {
          x = x * parts_[k].size(d) + digits[k];
        }
        return x;
      }

     private:
      std::vector<Presheaf> parts_;
    };

    ////////////////////////////////////////////////////////////////////////
    // Pullback
    ////////////////////////////////////////////////////////////////////////

    class PullbackNode final : public PresheafNode {
     public:
      PullbackNode(PresheafMap f, PresheafMap g)
          : PresheafNode(f.source().site()), f_(std::move(f)), g_(std::move(g)) {}

      std::size_t size(SiteObject const& d) const override {
        return pairs(d)->size();
      }
      Elem act(SiteMorphism const& h, Elem x) const override {
        auto const& pr = (*pairs(h.target()))[x];
        std::pair<Elem, Elem> q{f_.source().act(h, pr.first), g_.source().act(h, pr.second)};
        auto p  = pairs(h.source());
        auto it = std::lower_bound(p->begin(), p->end(), q);
        return static_cast<Elem>(it - p->begin());
      }
      std::optional<int> support_degree() const override {
        return sum_support({f_.source(), g_.source()});
      }
      std::string describe() const override {
        return "pullback(" + f_.source().describe() + " -> " + f_.target().describe() + " <- "
               + g_.source().describe() + ")";
      }

      std::pair<Elem, Elem> pair_at(SiteObject const& d, Elem x) const {
        return (*pairs(d))[x];
      }

     private:
      std::shared_ptr<std::vector<std::pair<Elem, Elem>> const> pairs(SiteObject const& d) const {
        return memo_.get(d, [&] {
          std::size_t const np = f_.source().size(d);
          std::size_t const nq = g_.source().size(d);
          std::unordered_multimap<Elem, Elem> by_value;
          for (Elem q = 0; q < nq; ++q) {
            by_value.emplace(g_(d, q), q);
          }
          std::vector<std::pair<Elem, Elem>> out;
          for (Elem p = 0; p < np; ++p) {
            auto range = by_value.equal_range(f_(d, p));
            for (auto it = range.first; it != range.second; ++it) {
              out.emplace_back(p, it->second);
            }
          }
          std::sort(out.begin(), out.end());
          return out;
        });
      }

      PresheafMap                                               f_;
      PresheafMap                                               g_;
      detail::Memo<SiteObject, std::vector<std::pair<Elem, Elem>>> memo_;
    };

    ////////////////////////////////////////////////////////////////////////
    // Pushout
    ////////////////////////////////////////////////////////////////////////

    class PushoutNode final : public PresheafNode {
     public:
      PushoutNode(PresheafMap f, PresheafMap g)
          : PresheafNode(f.target().site()), f_(std::move(f)), g_(std::move(g)) {}

      struct Eval {
        std::size_t              np = 0;
        std::vector<std::size_t> slot_class;
        std::vector<std::size_t> class_rep;
        std::size_t              count = 0;
      };

      std::size_t size(SiteObject const& d) const override {
        return eval(d)->count;
      }
      Elem act(SiteMorphism const& h, Elem x) const override {
        auto        e    = eval(h.target());
        std::size_t slot = e->class_rep.at(x);
        auto        e2   = eval(h.source());
        if (slot < e->np) {
          return e2->slot_class[f_.target().act(h, slot)];
        }
        return e2->slot_class[e2->np + g_.target().act(h, slot - e->np)];
      }
      std::optional<int> support_degree() const override {
        return max_support({f_.target(), g_.target()});
      }
      std::string describe() const override {
        return "pushout(" + f_.target().describe() + " <- " + f_.source().describe() + " -> "
               + g_.target().describe() + ")";
      }

      std::shared_ptr<Eval const> eval(SiteObject const& d) const {
        return memo_.get(d, [&] {
          Eval e;
          e.np                 = f_.target().size(d);
          std::size_t const nq = g_.target().size(d);
          std::size_t const nr = f_.source().size(d);
          detail::UnionFind uf(e.np + nq);
          for (Elem r = 0; r < nr; ++r) {
            uf.unite(f_(d, r), e.np + g_(d, r));
          }
          e.slot_class = uf.classes(&e.count);
          e.class_rep.assign(e.count, 0);
          std::vector<bool> seen(e.count, false);
          for (std::size_t s = 0; s < e.slot_class.size(); ++s) {
            if (!seen[e.slot_class[s]]) {
              seen[e.slot_class[s]]        = true;
              e.class_rep[e.slot_class[s]] = s;
            }
          }
          return e;
        });
      }

     private:
      PresheafMap                    f_;
      PresheafMap                    g_;
      detail::Memo<SiteObject, Eval> memo_;
    };

    ////////////////////////////////////////////////////////////////////////
    // Subobject
    ////////////////////////////////////////////////////////////////////////

    class SubNode final : public PresheafNode {
     public:
      SubNode(Presheaf parent, Membership member, std::string label, std::optional<int> support)
          : PresheafNode(parent.site()),
            parent_(std::move(parent)),
            member_(std::move(member)),
            label_(std::move(label)),
            support_(support) {}

      struct Eval {
        std::vector<Elem>        members;
        std::vector<std::size_t> position;  // SIZE_MAX when absent
      };

      std::size_t size(SiteObject const& d) const override {
        return eval(d)->members.size();
      }
      Elem act(SiteMorphism const& g, Elem x) const override {
        Elem        y   = parent_.act(g, eval(g.target())->members.at(x));
        std::size_t pos = eval(g.source())->position[y];
        if (pos == SIZE_MAX) {
          throw Error("subpresheaf '" + label_ + "' is not closed under restriction along "
                      + g.to_string());
        }
        return pos;
      }
      std::optional<int> support_degree() const override {
        return support_ ? support_ : parent_.support_degree();
      }
      std::string describe() const override {
        return label_.empty() ? "sub(" + parent_.describe() + ")" : label_;
      }

      std::shared_ptr<Eval const> eval(SiteObject const& d) const {
        return memo_.get(d, [&] {
          auto flags = member_(d);
          if (flags.size() != parent_.size(d)) {
            throw Error("membership predicate returned the wrong number of flags");
          }
          Eval e;
          e.position.assign(flags.size(), SIZE_MAX);
          for (Elem x = 0; x < flags.size(); ++x) {
            if (flags[x]) {
              e.position[x] = e.members.size();
              e.members.push_back(x);
            }
          }
          return e;
        });
      }

     private:
      Presheaf                       parent_;
      Membership                     member_;
      std::string                    label_;
      std::optional<int>             support_;
      detail::Memo<SiteObject, Eval> memo_;
    };

    ////////////////////////////////////////////////////////////////////////
    // External product
    ////////////////////////////////////////////////////////////////////////

    class ExternalProductNode final : public PresheafNode {
     public:
      ExternalProductNode(Presheaf p, Presheaf q)
          : PresheafNode(p.site().concat(q.site())), p_(std::move(p)), q_(std::move(q)) {}

      std::size_t size(SiteObject const& d) const override {
        site().check(d);
        return p_.size(left(d)) * q_.size(right(d));
      }
      Elem act(SiteMorphism const& g, Elem x) const override {
        std::size_t const nq  = q_.size(right(g.target()));
        std::size_t const nq2 = q_.size(right(g.source()));
        std::size_t const r   = p_.site().arity();
        Elem a = p_.act(slice(g, 0, r), x / nq);
        Elem b = q_.act(slice(g, r, g.parts.size()), x % nq);
        return a * nq2 + b;
      }
      std::optional<int> support_degree() const override {
        return sum_support({p_, q_});
      }
      std::string describe() const override {
        return "(" + p_.describe() + " [x] " + q_.describe() + ")";
      }

      std::shared_ptr<GeneratorData const> native_generators() const override {
        auto gp               = generators(p_);
        auto gq               = generators(q_);
        auto gd               = std::make_shared<GeneratorData>();
        gd->presentation.site = site();
        std::size_t const nb  = gq->presentation.size();
        if (gp->window_degree || gq->window_degree) {
          gd->window_degree = gp->window_degree.value_or(0) + gq->window_degree.value_or(0);
        }
        for (std::size_t a = 0; a < gp->presentation.size(); ++a) {
          for (std::size_t b = 0; b < nb; ++b) {
            auto const& sa = gp->presentation.shapes[a];
            auto const& sb = gq->presentation.shapes[b];
            gd->presentation.ids.push_back(gp->presentation.ids[a] + "*" + gq->presentation.ids[b]);
            gd->presentation.shapes.push_back(concat(sa, sb));
            gd->elements.push_back(gp->elements[a] * q_.size(sb) + gq->elements[b]);
          }
        }
        for (auto const& r : gp->presentation.relations) {
          for (std::size_t b = 0; b < nb; ++b) {
            auto idb = identity(gq->presentation.shapes[b]);
            gd->presentation.relations.push_back(
                {{r.lhs.cell * nb + b, concat(r.lhs.map, idb)},
                 {r.rhs.cell * nb + b, concat(r.rhs.map, idb)}});
          }
        }
        for (std::size_t a = 0; a < gp->presentation.size(); ++a) {
          auto ida = identity(gp->presentation.shapes[a]);
          for (auto const& r : gq->presentation.relations) {
            gd->presentation.relations.push_back({{a * nb + r.lhs.cell, concat(ida, r.lhs.map)},
                                                  {a * nb + r.rhs.cell, concat(ida, r.rhs.map)}});
          }
        }
        gd->express = [this, gp, gq, nb](SiteObject const& d, Elem x) {
          std::size_t const nq = q_.size(right(d));
          auto              ra = gp->express(left(d), x / nq);
          auto              rb = gq->express(right(d), x % nq);
          return ElemRef{ra.cell * nb + rb.cell, concat(ra.map, rb.map)};
        };
        return gd;
      }

      SiteObject left(SiteObject const& d) const {
        return slice(d, 0, p_.site().arity());
      }
      SiteObject right(SiteObject const& d) const {
        return slice(d, p_.site().arity(), d.parts.size());
      }

     private:
      Presheaf p_;
      Presheaf q_;
    };

    ////////////////////////////////////////////////////////////////////////
    // Restriction to a first coordinate
    ////////////////////////////////////////////////////////////////////////

    class RestrictFirstNode final : public PresheafNode {
     public:
      RestrictFirstNode(Presheaf x, Object o)
          : PresheafNode(x.site().tail()), x_(std::move(x)), o_(std::move(o)), id_(identity(o_)) {
        if (o_.level() != x_.site().level(0)) {
          throw SiteMismatch("restrict_first: object of the wrong level");
        }
      }

      std::size_t size(SiteObject const& d) const override {
        return x_.size(extend(d));
      }
      Elem act(SiteMorphism const& g, Elem x) const override {
        SiteMorphism h;
        h.parts.reserve(g.parts.size() + 1);
        h.parts.push_back(id_);
        h.parts.insert(h.parts.end(), g.parts.begin(), g.parts.end());
        return x_.act(h, x);
      }
      std::optional<int> support_degree() const override {
        return x_.support_degree();
      }
      std::string describe() const override {
        return x_.describe() + "@" + o_.to_string();
      }

      SiteObject extend(SiteObject const& d) const {
        SiteObject e;
        e.parts.reserve(d.parts.size() + 1);
        e.parts.push_back(o_);
        e.parts.insert(e.parts.end(), d.parts.begin(), d.parts.end());
        return e;
      }

     private:
      Presheaf x_;
      Object   o_;
      Morphism id_;
    };

    ////////////////////////////////////////////////////////////////////////
    // Factor permutation
    ////////////////////////////////////////////////////////////////////////

    class PermuteNode final : public PresheafNode {
     public:
      PermuteNode(Presheaf p, std::vector<std::size_t> perm)
          : PresheafNode(p.site().permuted(perm)), p_(std::move(p)), perm_(std::move(perm)) {}

      std::size_t size(SiteObject const& d) const override {
        site().check(d);
        return p_.size(back(d));
      }
      Elem act(SiteMorphism const& g, Elem x) const override {
        return p_.act(back(g), x);
      }
      std::optional<int> support_degree() const override {
        return p_.support_degree();
      }
      std::string describe() const override {
        return "permute(" + p_.describe() + ")";
      }
      std::shared_ptr<GeneratorData const> native_generators() const override {
        auto gp               = generators(p_);
        auto gd               = std::make_shared<GeneratorData>();
        gd->presentation.site = site();
        gd->presentation.ids  = gp->presentation.ids;
        gd->elements          = gp->elements;
        gd->window_degree     = gp->window_degree;
        for (auto const& s : gp->presentation.shapes) {
          gd->presentation.shapes.push_back(forward(s));
        }
        for (auto const& r : gp->presentation.relations) {
          gd->presentation.relations.push_back(
              {{r.lhs.cell, forward(r.lhs.map)}, {r.rhs.cell, forward(r.rhs.map)}});
        }
        gd->express = [this, gp](SiteObject const& d, Elem x) {
          auto r = gp->express(back(d), x);
          return ElemRef{r.cell, forward(r.map)};
        };
        return gd;
      }

      template <class T>
      T back(T const& t) const {
        T r = t;
        for (std::size_t k = 0; k < perm_.size(); ++k) {
          r.parts[perm_[k]] = t.parts[k];
        }
        return r;
      }
      template <class T>
      T forward(T const& t) const {
        T r = t;
        for (std::size_t k = 0; k < perm_.size(); ++k) {
          r.parts[k] = t.parts[perm_[k]];
        }
        return r;
      }

     private:
      Presheaf                 p_;
      std::vector<std::size_t> perm_;
    };

    ////////////////////////////////////////////////////////////////////////
    // cosk_0
    ////////////////////////////////////////////////////////////////////////

    class Cosk0Node final : public PresheafNode {
     public:
      explicit Cosk0Node(Presheaf p) : PresheafNode(Site({1}).concat(p.site())), p_(std::move(p)) {}

      std::size_t size(SiteObject const& d) const override {
        site().check(d);
        std::size_t const base = p_.size(slice(d, 1, d.parts.size()));
        std::size_t       n    = 1;
        for (std::size_t k = 0; k <= d.parts[0].arity(); ++k) {
          n *= base;
        }
        return n;
      }
      Elem act(SiteMorphism const& g, Elem x) const override {
        auto const        inner_t = slice(g.target(), 1, g.parts.size());
        auto const        inner_s = slice(g.source(), 1, g.parts.size());
        auto const        inner_g = slice(g, 1, g.parts.size());
        std::size_t const bt      = p_.size(inner_t);
        std::size_t const bs      = p_.size(inner_s);
        std::size_t const p       = g.parts[0].target().arity();
        std::vector<Elem> digits(p + 1);
        for (std::size_t k = p + 1; k-- > 0;) {
          digits[k] = x % bt;
          x /= bt;
        }
        auto delta = g.parts[0].delta();
        Elem y     = 0;
        for (int v : delta) {
          y = y * bs + p_.act(inner_g, digits[static_cast<std::size_t>(v)]);
        }
        return y;
      }
      std::optional<int> support_degree() const override {
        return std::nullopt;
      }
      std::string describe() const override {
        return "cosk0(" + p_.describe() + ")";
      }

     private:
      Presheaf p_;
    };

    ////////////////////////////////////////////////////////////////////////
    // Tabulated
    ////////////////////////////////////////////////////////////////////////

    class TabulatedNode final : public PresheafNode {
     public:
      explicit TabulatedNode(Tabulation t) : PresheafNode(t.window.site()), t_(std::move(t)) {
        for (std::size_t i = 0; i < t_.window.objects().size(); ++i) {
          index_.emplace(t_.window.objects()[i], i);
        }
      }

      std::size_t size(SiteObject const& d) const override {
        return t_.sizes[index_of(d)];
      }
      Elem act(SiteMorphism const& g, Elem x) const override {
        std::size_t const it  = index_of(g.target());
        std::size_t const is  = index_of(g.source());
        auto const&       tab = t_.action.at({it, is});
        return tab.at(hom_index(g)).at(x);
      }
      std::optional<int> support_degree() const override {
        return t_.window.total_degree();
      }
      std::string describe() const override {
        return "tabulated(" + t_.window.to_string() + ")";
      }

     private:
      std::size_t index_of(SiteObject const& d) const {
        auto it = index_.find(d);
        if (it == index_.end()) {
          throw WindowTooSmall("object " + d.to_string() + " lies outside the tabulated window ("
                               + t_.window.to_string() + ")");
        }
        return it->second;
      }

      Tabulation                                  t_;
      std::unordered_map<SiteObject, std::size_t> index_;
    };

    ////////////////////////////////////////////////////////////////////////
    // Relabeled
    ////////////////////////////////////////////////////////////////////////

    class RelabeledNode final : public PresheafNode {
     public:
      RelabeledNode(Presheaf p, std::uint64_t seed)
          : PresheafNode(p.site()), p_(std::move(p)), seed_(seed) {}

      struct Perm {
        std::vector<Elem> fwd;  // original -> new
        std::vector<Elem> inv;
      };

      std::size_t size(SiteObject const& d) const override {
        return p_.size(d);
      }
      Elem act(SiteMorphism const& g, Elem x) const override {
        Elem orig = perm(g.target())->inv.at(x);
        return perm(g.source())->fwd[p_.act(g, orig)];
      }
      std::optional<int> support_degree() const override {
        return p_.support_degree();
      }
      std::string describe() const override {
        return "relabel(" + p_.describe() + ")";
      }
      std::shared_ptr<GeneratorData const> native_generators() const override {
        auto gp           = generators(p_);
        auto gd           = std::make_shared<GeneratorData>(*gp);
        gd->presentation.site = site();
        for (std::size_t c = 0; c < gd->elements.size(); ++c) {
          gd->elements[c] = perm(gd->presentation.shapes[c])->fwd[gp->elements[c]];
        }
        gd->express = [this, gp](SiteObject const& d, Elem x) {
          return gp->express(d, perm(d)->inv.at(x));
        };
        return gd;
      }

      std::shared_ptr<Perm const> perm(SiteObject const& d) const {
        return memo_.get(d, [&] {
          std::size_t const n = p_.size(d);
          Perm              pm;
          pm.fwd.resize(n);
          std::iota(pm.fwd.begin(), pm.fwd.end(), Elem{0});
          std::mt19937_64 rng(seed_ ^ (d.hash() * 0x9e3779b97f4a7c15ULL));
          for (std::size_t i = n; i > 1; --i) {
            std::size_t j = rng() % i;
            std::swap(pm.fwd[i - 1], pm.fwd[j]);
          }
          pm.inv.resize(n);
          for (Elem x = 0; x < n; ++x) {
            pm.inv[pm.fwd[x]] = x;
          }
          return pm;
        });
      }

     private:
      Presheaf                       p_;
      std::uint64_t                  seed_;
      detail::Memo<SiteObject, Perm> memo_;
    };

  }  // namespace

  ////////////////////////////////////////////////////////////////////////
  // Constructors
  ////////////////////////////////////////////////////////////////////////

  Presheaf presented(Presentation p) {
    return Presheaf(std::make_shared<PresentedNode>(std::move(p)));
  }

  Presheaf representable(Site const& site, SiteObject a) {
    site.check(a);
    Presentation p;
    p.site = site;
    p.ids.push_back("y" + a.to_string());
    p.shapes.push_back(std::move(a));
    return presented(std::move(p));
  }

  Presheaf empty_presheaf(Site const& site) {
    return discrete(site, 0);
  }

  Presheaf terminal_presheaf(Site const& site) {
    return discrete(site, 1);
  }

  Presheaf discrete(Site const& site, std::size_t n) {
    return Presheaf(std::make_shared<DiscreteNode>(site, n));
  }

  PresheafMap to_terminal(Presheaf const& P) {
    return PresheafMap(P, terminal_presheaf(P.site()), [](SiteObject const&, Elem) { return Elem{0}; },
                       "!");
  }

  PresheafMap from_empty(Presheaf const& P) {
    return PresheafMap(
        empty_presheaf(P.site()), P,
        [](SiteObject const&, Elem) -> Elem { throw Error("the empty presheaf has no elements"); },
        "empty");
  }

  Coproduct coproduct(std::vector<Presheaf> parts) {
    if (parts.empty()) {
      throw MalformedInput("coproduct of nothing needs a site; use empty_presheaf");
    }
    for (auto const& p : parts) {
      require_same_site(parts[0].site(), p.site(), "coproduct");
    }
    auto      node = std::make_shared<CoproductNode>(parts[0].site(), parts);
    Coproduct c;
    c.object = Presheaf(node);
    for (std::size_t k = 0; k < parts.size(); ++k) {
      CoproductNode const* raw = node.get();
      c.injections.emplace_back(
          parts[k], c.object,
          [raw, k](SiteObject const& d, Elem x) { return (*raw->offsets(d))[k] + x; },
          "in" + std::to_string(k));
    }
    return c;
  }

  PresheafMap coproduct_induced(Coproduct const& c, std::vector<PresheafMap> const& legs) {
    if (legs.size() != c.injections.size() || legs.empty()) {
      throw MalformedInput("coproduct_induced: one leg per summand required");
    }
    auto const* node = dynamic_cast<CoproductNode const*>(&c.object.node());
    return PresheafMap(
        c.object, legs[0].target(),
        [node, legs](SiteObject const& d, Elem x) {
          auto        off = node->offsets(d);
          std::size_t k   = CoproductNode::part_of(*off, x);
          return legs[k](d, x - (*off)[k]);
        },
        "copair");
  }

  PresheafMap coproduct_map(Coproduct const& from, Coproduct const& to,
                            std::vector<PresheafMap> const& parts) {
    std::vector<PresheafMap> legs;
    for (std::size_t k = 0; k < parts.size(); ++k) {
      legs.push_back(compose(to.injections.at(k), parts[k]));
    }
    return coproduct_induced(from, legs);
  }

  Product product(std::vector<Presheaf> parts) {
    if (parts.empty()) {
      throw MalformedInput("product of nothing needs a site; use terminal_presheaf");
    }
    for (auto const& p : parts) {
      require_same_site(parts[0].site(), p.site(), "product");
    }
    auto    node = std::make_shared<ProductNode>(parts[0].site(), parts);
    Product pr;
    pr.object = Presheaf(node);
    for (std::size_t k = 0; k < parts.size(); ++k) {
      ProductNode const* raw = node.get();
      pr.projections.emplace_back(
          pr.object, parts[k],
          [raw, k](SiteObject const& d, Elem x) { return raw->decode(d, x)[k]; },
          "pr" + std::to_string(k));
    }
    return pr;
  }

  PresheafMap product_induced(Product const& p, std::vector<PresheafMap> const& legs) {
    if (legs.size() != p.projections.size() || legs.empty()) {
      throw MalformedInput("product_induced: one leg per factor required");
    }
    auto const* node = dynamic_cast<ProductNode const*>(&p.object.node());
    return PresheafMap(
        legs[0].source(), p.object,
        [node, legs](SiteObject const& d, Elem x) {
          std::vector<Elem> digits;
          for (auto const& l : legs) {
            digits.push_back(l(d, x));
          }
          return node->encode(d, digits);
        },
        "pair");
  }

  Pullback pullback(PresheafMap const& f, PresheafMap const& g) {
    require_same_site(f.source().site(), g.source().site(), "pullback");
    auto       node = std::make_shared<PullbackNode>(f, g);
    Pullback   pb;
    PullbackNode const* raw = node.get();
    pb.object               = Presheaf(node);
    pb.left  = PresheafMap(pb.object, f.source(),
                           [raw](SiteObject const& d, Elem x) { return raw->pair_at(d, x).first; },
                           "pb.left");
    pb.right = PresheafMap(pb.object, g.source(),
                           [raw](SiteObject const& d, Elem x) { return raw->pair_at(d, x).second; },
                           "pb.right");
    return pb;
  }

  PresheafMap pullback_induced(Pullback const& pb, PresheafMap const& u, PresheafMap const& v) {
    auto const* node = dynamic_cast<PullbackNode const*>(&pb.object.node());
    Presheaf    obj  = pb.object;
    return PresheafMap(
        u.source(), pb.object,
        [node, obj, u, v](SiteObject const& d, Elem x) {
          std::pair<Elem, Elem> want{u(d, x), v(d, x)};
          std::size_t const     n = obj.size(d);
          // pairs are sorted, so bisect
          std::size_t lo = 0;
          std::size_t hi = n;
          while (lo < hi) {
            std::size_t mid = (lo + hi) / 2;
            if (node->pair_at(d, mid) < want) {
              lo = mid + 1;
            } else {
              hi = mid;
            }
          }
          if (lo == n || node->pair_at(d, lo) != want) {
            throw Error("pullback_induced: the legs do not form a cone");
          }
          return lo;
        },
        "pb.induced");
  }

  Pushout pushout(PresheafMap const& f, PresheafMap const& g) {
    require_same_site(f.target().site(), g.target().site(), "pushout");
    require_same_site(f.source().site(), g.source().site(), "pushout");
    auto               node = std::make_shared<PushoutNode>(f, g);
    PushoutNode const* raw  = node.get();
    Pushout            po;
    po.object = Presheaf(node);
    po.f      = f;
    po.g      = g;
    po.left   = PresheafMap(f.target(), po.object,
                            [raw](SiteObject const& d, Elem x) { return raw->eval(d)->slot_class[x]; },
                            "po.left");
    po.right  = PresheafMap(
        g.target(), po.object,
        [raw](SiteObject const& d, Elem x) {
          auto e = raw->eval(d);
          return e->slot_class[e->np + x];
        },
        "po.right");
    return po;
  }

  PresheafMap pushout_induced(Pushout const& po, PresheafMap const& u, PresheafMap const& v) {
    auto const* node = dynamic_cast<PushoutNode const*>(&po.object.node());
    return PresheafMap(
        po.object, u.target(),
        [node, u, v](SiteObject const& d, Elem x) {
          auto        e    = node->eval(d);
          std::size_t slot = e->class_rep.at(x);
          return slot < e->np ? u(d, slot) : v(d, slot - e->np);
        },
        "po.induced");
  }

  Subobject subpresheaf(Presheaf const& parent, Membership member, std::string label,
                        std::optional<int> support) {
    auto node = std::make_shared<SubNode>(parent, std::move(member), std::move(label), support);
    SubNode const* raw  = node.get();
    Subobject      s;
    s.object    = Presheaf(node);
    s.inclusion = PresheafMap(
        s.object, parent,
        [raw](SiteObject const& d, Elem x) { return raw->eval(d)->members.at(x); }, "incl");
    return s;
  }

  Subobject generated_subpresheaf(Presheaf const&                               parent,
                                  std::vector<std::pair<SiteObject, Elem>> const& gens,
                                  std::string                                   label) {
    for (auto const& [e, y] : gens) {
      parent.site().check(e);
      if (y >= parent.size(e)) {
        throw MalformedInput("generator element out of range at " + e.to_string());
      }
    }
    Presheaf P       = parent;
    int      support = 0;
    for (auto const& g : gens) {
      support = std::max(support, g.first.degree());
    }
    return subpresheaf(
        parent,
        [P, gens](SiteObject const& d) {
          std::vector<bool> flags(P.size(d), false);
          for (auto const& [e, y] : gens) {
            std::size_t const n = hom_size(d, e);
            for (std::size_t k = 0; k < n; ++k) {
              flags[P.act(hom_at(d, e, k), y)] = true;
            }
          }
          return flags;
        },
        label.empty() ? "generated(" + std::to_string(gens.size()) + ")" : std::move(label),
        support);
  }

  Subobject image(PresheafMap const& f) {
    return subpresheaf(
        f.target(),
        [f](SiteObject const& d) {
          std::vector<bool> flags(f.target().size(d), false);
          std::size_t const n = f.source().size(d);
          for (Elem x = 0; x < n; ++x) {
            flags[f(d, x)] = true;
          }
          return flags;
        },
        "image(" + f.label() + ")");
  }

  Subobject union_of(Presheaf const& parent, std::vector<PresheafMap> const& inclusions) {
    return subpresheaf(
        parent,
        [parent, inclusions](SiteObject const& d) {
          std::vector<bool> flags(parent.size(d), false);
          for (auto const& f : inclusions) {
            std::size_t const n = f.source().size(d);
            for (Elem x = 0; x < n; ++x) {
              flags[f(d, x)] = true;
            }
          }
          return flags;
        },
        "union");
  }

  PresheafMap corestrict(PresheafMap const& f, Subobject const& sub) {
    auto memo = std::make_shared<detail::Memo<SiteObject, std::unordered_map<Elem, Elem>>>();
    auto incl = sub.inclusion;
    return PresheafMap(
        f.source(), sub.object,
        [f, incl, memo](SiteObject const& d, Elem x) {
          auto inv = memo->get(d, [&] {
            std::unordered_map<Elem, Elem> m;
            std::size_t const              n = incl.source().size(d);
            for (Elem y = 0; y < n; ++y) {
              m.emplace(incl(d, y), y);
            }
            return m;
          });
          auto it = inv->find(f(d, x));
          if (it == inv->end()) {
            throw Error("corestrict: the map does not land in the subobject");
          }
          return it->second;
        },
        f.label());
  }

  Subobject boundary(Site const& site, SiteObject const& a) {
    site.check(a);
    Presheaf Y = representable(site, a);
    return subpresheaf(
        Y,
        [a](SiteObject const& d) {
          // representable elements over d are hom(d, a) in index order
          auto const&       h = hom(d, a);
          std::vector<bool> flags(h.size());
          for (std::size_t k = 0; k < h.size(); ++k) {
            flags[k] = !is_split_epi(h[k]);
          }
          return flags;
        },
        "boundary" + a.to_string());
  }

  Presheaf external_product(Presheaf const& P, Presheaf const& Q) {
    return Presheaf(std::make_shared<ExternalProductNode>(P, Q));
  }

  PresheafMap external_product(PresheafMap const& f, PresheafMap const& g) {
    Presheaf          src = external_product(f.source(), g.source());
    Presheaf          tgt = external_product(f.target(), g.target());
    std::size_t const r   = f.source().site().arity();
    return PresheafMap(
        src, tgt,
        [f, g, r](SiteObject const& d, Elem x) {
          auto const        dl = slice(d, 0, r);
          auto const        dr = slice(d, r, d.parts.size());
          std::size_t const nq = g.source().size(dr);
          return f(dl, x / nq) * g.target().size(dr) + g(dr, x % nq);
        },
        "(" + f.label() + " x " + g.label() + ")");
  }

  Presheaf constant_along(int level, Presheaf const& P) {
    return external_product(terminal_presheaf(Site({level})), P);
  }

  PresheafMap constant_along(int level, PresheafMap const& f) {
    return external_product(identity_map(terminal_presheaf(Site({level}))), f);
  }

  Presheaf restrict_first(Presheaf const& X, Object const& o) {
    if (X.site().arity() < 2) {
      throw SiteMismatch("restrict_first needs a site with at least two factors");
    }
    return Presheaf(std::make_shared<RestrictFirstNode>(X, o));
  }

  PresheafMap restrict_first(PresheafMap const& f, Object const& o) {
    Presheaf src = restrict_first(f.source(), o);
    Presheaf tgt = restrict_first(f.target(), o);
    return PresheafMap(
        src, tgt,
        [f, o](SiteObject const& d, Elem x) {
          SiteObject e;
          e.parts.push_back(o);
          e.parts.insert(e.parts.end(), d.parts.begin(), d.parts.end());
          return f(e, x);
        },
        f.label() + "@" + o.to_string());
  }

  Presheaf permute(Presheaf const& P, std::vector<std::size_t> const& perm) {
    std::vector<std::size_t> sorted = perm;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t k = 0; k < sorted.size(); ++k) {
      if (sorted[k] != k) {
        throw MalformedInput("permute: not a permutation");
      }
    }
    return Presheaf(std::make_shared<PermuteNode>(P, perm));
  }

  PresheafMap permute(PresheafMap const& f, std::vector<std::size_t> const& perm) {
    Presheaf src = permute(f.source(), perm);
    Presheaf tgt = permute(f.target(), perm);
    return PresheafMap(
        src, tgt,
        [f, perm](SiteObject const& d, Elem x) {
          SiteObject b = d;
          for (std::size_t k = 0; k < perm.size(); ++k) {
            b.parts[perm[k]] = d.parts[k];
          }
          return f(b, x);
        },
        f.label() + "^t");
  }

  Presheaf cosk0(Presheaf const& P) {
    return Presheaf(std::make_shared<Cosk0Node>(P));
  }

  Tabulation tabulate(Presheaf const& P, Window const& w) {
    if (w.site() != P.site()) {
      throw SiteMismatch("tabulate: window on a different site");
    }
    Tabulation t;
    t.window      = w;
    auto const& o = w.objects();
    for (auto const& d : o) {
      t.sizes.push_back(P.size(d));
    }
    for (std::size_t it = 0; it < o.size(); ++it) {
      for (std::size_t is = 0; is < o.size(); ++is) {
        auto const&                    h = hom(o[is], o[it]);
        std::vector<std::vector<Elem>> tab;
        tab.reserve(h.size());
        for (auto const& g : h) {
          std::vector<Elem> row(t.sizes[it]);
          for (Elem x = 0; x < t.sizes[it]; ++x) {
            row[x] = P.act(g, x);
          }
          tab.push_back(std::move(row));
        }
        t.action.emplace(std::make_pair(it, is), std::move(tab));
      }
    }
    return t;
  }

  Presheaf from_tabulation(Tabulation t) {
    if (t.sizes.size() != t.window.objects().size()) {
      throw MalformedInput("tabulation: one size per window object required");
    }
    return Presheaf(std::make_shared<TabulatedNode>(std::move(t)));
  }

  Relabeled relabel(Presheaf const& P, std::uint64_t seed) {
    auto                 node = std::make_shared<RelabeledNode>(P, seed);
    RelabeledNode const* raw  = node.get();
    Relabeled            r;
    r.object        = Presheaf(node);
    r.to_original   = PresheafMap(
        r.object, P, [raw](SiteObject const& d, Elem x) { return raw->perm(d)->inv.at(x); },
        "relabel^-1");
    r.from_original = PresheafMap(
        P, r.object, [raw](SiteObject const& d, Elem x) { return raw->perm(d)->fwd.at(x); },
        "relabel");
    return r;
  }

}  // namespace theta
