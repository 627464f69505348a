#include "theta/lifting.hpp"

namespace theta {

  namespace {

    // Pins forcing a map out of B to send i(g) to value(g) for each
    // generator g of A.
    std::vector<Pin> pins_along(PresheafMap const& i, GeneratorData const& ga,
                                GeneratorData const& gb, std::vector<Elem> const& values) {
      std::vector<Pin> pins;
      for (std::size_t g = 0; g < ga.elements.size(); ++g) {
        SiteObject const& s   = ga.presentation.shapes[g];
        ElemRef const     ref = gb.express(s, i(s, ga.elements[g]));
        pins.push_back({ref.cell, ref.map, values[g]});
      }
      return pins;
    }

    template <class OnSquare>
    void for_each_square(PresheafMap const& f, PresheafMap const& i, RlpOptions const& opts,
                         OnSquare&& on_square) {
      HomSetOptions ho;
      ho.degree               = opts.degree;
      HomSet const     tops   = hom_set(i.source(), f.source(), ho);
      auto const       ga     = tops.generators;
      auto const       gb     = generators(i.target(), opts.degree);
      for (auto const& a : tops.maps) {
        std::vector<Elem> fa(a.size());
        for (std::size_t g = 0; g < a.size(); ++g) {
          fa[g] = f(ga->presentation.shapes[g], a[g]);
        }
        HomSetOptions bo;
        bo.degree          = opts.degree;
        bo.pins            = pins_along(i, *ga, *gb, fa);
        HomSet const bots  = hom_set(i.target(), f.target(), bo);
        for (auto const& b : bots.maps) {
          if (!on_square(a, b, *ga, *gb)) {
            return;
          }
        }
      }
    }

    bool has_lift(PresheafMap const& f, PresheafMap const& i, std::vector<Elem> const& a,
                  std::vector<Elem> const& b, GeneratorData const& ga, GeneratorData const& gb,
                  RlpOptions const& opts) {
      HomSetOptions lo;
      lo.degree = opts.degree;
      lo.limit  = 1;
      lo.pins   = pins_along(i, ga, gb, a);
      lo.filter = [&](std::size_t cell, Elem x) {
        return f(gb.presentation.shapes[cell], x) == b[cell];
      };
      return hom_set(i.target(), f.source(), lo).size() > 0;
    }

  }  // namespace

  RlpResult has_rlp(PresheafMap const& f, PresheafMap const& i, RlpOptions const& opts) {
    RlpResult r;
    for_each_square(f, i, opts,
                    [&](auto const& a, auto const& b, GeneratorData const& ga,
                        GeneratorData const& gb) {
                      ++r.squares;
                      if (has_lift(f, i, a, b, ga, gb, opts)) {
                        return true;
                      }
                      r.rlp     = false;
                      r.witness = Square{a, b};
                      return false;
                    });
    return r;
  }

  std::vector<Square> unfilled_squares(PresheafMap const& f, PresheafMap const& i,
                                       RlpOptions const& opts) {
    std::vector<Square> out;
    for_each_square(f, i, opts,
                    [&](auto const& a, auto const& b, GeneratorData const& ga,
                        GeneratorData const& gb) {
                      if (!has_lift(f, i, a, b, ga, gb, opts)) {
                        out.push_back({a, b});
                      }
                      return true;
                    });
    return out;
  }

  FamilyRlp has_rlp_family(PresheafMap const& f, std::vector<FamilyMember> const& family,
                           RlpOptions const& opts) {
    FamilyRlp r;
    for (auto const& m : family) {
      if (!has_rlp(f, m.map, opts).rlp) {
        r.all = false;
        r.failures.push_back(m.label);
      }
    }
    return r;
  }

  FamilyRlp coproduct_fibration_check(PresheafMap const& f, PresheafMap const& g,
                                      std::vector<FamilyMember> const& family,
                                      RlpOptions const& opts) {
    Coproduct const from = coproduct({f.source(), g.source()});
    Coproduct const to   = coproduct({f.target(), g.target()});
    return has_rlp_family(coproduct_map(from, to, {f, g}), family, opts);
  }

  SoaResult soa_factorize(PresheafMap const& f, std::vector<FamilyMember> const& family,
                          std::size_t max_stages, RlpOptions const& opts) {
    SoaResult s;
    s.middle    = f.source();
    s.cell      = identity_map(f.source());
    s.remainder = f;
    for (std::size_t stage = 0;; ++stage) {
      std::vector<PresheafMap> tops;
      std::vector<PresheafMap> bottoms;
      std::vector<PresheafMap> cells;
      for (auto const& m : family) {
        auto const squares = unfilled_squares(s.remainder, m.map, opts);
        if (squares.empty()) {
          continue;
        }
        auto const ga = generators(m.map.source(), opts.degree);
        auto const gb = generators(m.map.target(), opts.degree);
        for (auto const& sq : squares) {
          HomSet ht{m.map.source(), s.middle, ga, {sq.top}};
          HomSet hb{m.map.target(), f.target(), gb, {sq.bottom}};
          tops.push_back(ht.as_map(0));
          bottoms.push_back(hb.as_map(0));
          cells.push_back(m.map);
        }
      }
      if (tops.empty()) {
        s.converged = true;
        return s;
      }
      if (stage == max_stages) {
        return s;
      }
      std::vector<Presheaf> as;
      std::vector<Presheaf> bs;
      for (auto const& c : cells) {
        as.push_back(c.source());
        bs.push_back(c.target());
      }
      Coproduct const   ca  = coproduct(as);
      Coproduct const   cb  = coproduct(bs);
      PresheafMap const top = coproduct_induced(ca, tops);
      Pushout const     po  = pushout(top, coproduct_map(ca, cb, cells));
      s.remainder           = pushout_induced(po, s.remainder, coproduct_induced(cb, bottoms));
      s.cell                = compose(po.left, s.cell);
      s.middle              = po.object;
      s.attachments += tops.size();
      s.stages_used = stage + 1;
    }
  }

  Subobject mapping_object(SegalPreObject const& X, Elem x0, Elem x1) {
    return fiber(X, 1, {x0, x1});
  }

  std::vector<Elem> mapping_elements(SegalPreObject const& X, Elem x0, Elem x1,
                                     SiteObject const& c) {
    Subobject const   M = mapping_object(X, x0, x1);
    std::vector<Elem> out;
    for (Elem k = 0; k < M.object.size(c); ++k) {
      out.push_back(M.inclusion(c, k));
    }
    return out;
  }

}  // namespace theta
