#include <gtest/gtest.h>

#include "theta/generators.hpp"
#include "theta/random.hpp"

using namespace theta;

namespace {

  Site const kInner({1});

  Window inner_window(int d) {
    return Window::up_to(kInner, d);
  }

  // A functor given by its object map and one function on hom elements.
  EnrichedFunctor functor(EnrichedCategory const& C, EnrichedCategory const& D,
                          std::vector<std::size_t> objects,
                          std::function<Elem(std::size_t, std::size_t, SiteObject const&, Elem)> h) {
    EnrichedFunctor F;
    F.source  = C;
    F.target  = D;
    F.objects = objects;
    F.homs.resize(C.objects());
    for (std::size_t x = 0; x < C.objects(); ++x) {
      for (std::size_t y = 0; y < C.objects(); ++y) {
        F.homs[x].push_back(PresheafMap(C.homs[x][y], D.homs[objects[x]][objects[y]],
                                        [h, x, y](SiteObject const& d, Elem e) { return h(x, y, d, e); }));
      }
    }
    return F;
  }

  Presheaf d1() {
    return representable(kInner, SiteObject{{Object::simplex(1)}});
  }

}  // namespace

TEST(Segal, NervesAreStrict) {
  Rng rng(41);
  for (int t = 0; t < 20; ++t) {
    SegalPreObject const X = nerve(random_enriched_category(kInner, 3, rng));
    SegalCheck const     s = is_segal_strict(X, inner_window(1), 4);
    EXPECT_TRUE(s.strict) << s.witness.value_or("");
  }
}

TEST(Segal, OneObjectTrivialIsStrictBetweenSingletons) {
  SegalPreObject const X = nerve(preorder_category({{true}}, trivial_monoid(kInner)));
  for (std::size_t k = 2; k <= 3; ++k) {
    SegalMap const s = segal_map(X, k);
    EXPECT_EQ(s.target.size(inner_point(kInner)), 1u);
  }
  EXPECT_TRUE(is_segal_strict(X, inner_window(2), 3).strict);
}

TEST(Segal, FreeHornFailsAtTwo) {
  SegalPreObject const X(spine(kInner, 2).object);
  SegalCheck const     s = is_segal_strict(X, inner_window(1), 3);
  EXPECT_FALSE(s.strict);
  EXPECT_EQ(s.k, 2u);
  EXPECT_TRUE(s.witness.has_value());
}

TEST(Segal, DiscreteConstantIsStrict) {
  SegalPreObject const X(constant_along(1, discrete(kInner, 3)));
  EXPECT_TRUE(is_segal_strict(X, inner_window(2), 4).strict);
}

// The phi_k target is computed by maps out of the spine.
TEST(Segal, SpineHomsComputeSegalTarget) {
  Rng rng(42);
  for (int t = 0; t < 6; ++t) {
    SegalPreObject const X = nerve(random_enriched_category(kInner, 2, rng));
    for (std::size_t k = 2; k <= 3; ++k) {
      SegalMap const s = segal_map(X, k);
      for (auto const& th : inner_window(1).objects()) {
        Presheaf const G = external_product(simplicial_spine(k).object, representable(kInner, th));
        EXPECT_EQ(count_homs(G, X.diagram()), s.target.size(th));
      }
    }
  }
}

TEST(Segal, Pi0Examples) {
  EXPECT_EQ(pi0(discrete(kInner, 4)).count, 4u);
  EXPECT_EQ(pi0(d1()).count, 1u);
  Coproduct const c = coproduct({d1(), discrete(kInner, 2), d1()});
  EXPECT_EQ(pi0(c.object).count, 1u + 2u + 1u);
}

TEST(Segal, HomotopyCategoryOfUA) {
  Presheaf const       A = coproduct({d1(), discrete(kInner, 1)}).object;
  SegalPreObject const N = nerve(UA(A));
  HoCategory const     H = homotopy_category(N, inner_window(2));
  EXPECT_EQ(H.objects, 2u);
  EXPECT_EQ(H.homs[0][1], pi0(A).count);
  EXPECT_EQ(H.homs[1][0], 0u);
  EXPECT_EQ(H.homs[0][0], 1u);
  EXPECT_EQ(H.homs[1][1], 1u);
  EXPECT_FALSE(H.check_axioms().has_value());

  HoCategory const T = homotopy_category(nerve(preorder_category({{true}}, trivial_monoid(kInner))),
                                         inner_window(2));
  EXPECT_EQ(T.objects, 1u);
  EXPECT_EQ(T.homs[0][0], 1u);
}

TEST(Segal, InducedFunctorsAreFunctors) {
  Rng rng(43);
  for (int t = 0; t < 10; ++t) {
    EnrichedCategory const C  = random_enriched_category(kInner, 3, rng);
    EnrichedFunctor const  F  = identity_functor(C);
    SegalPreObject const   NC = nerve(C);
    PresheafMap const      f  = nerve_map(F, NC, NC);
    HoCategory const       H  = homotopy_category(NC, inner_window(1));
    EXPECT_FALSE(check_functor(induced_functor(f, NC, NC), H, H).has_value());
  }
}

TEST(Segal, DwyerKanExamples) {
  EnrichedCategory const C  = preorder_category({{true, true}, {true, true}}, trivial_monoid(kInner));
  SegalPreObject const   NC = nerve(C);
  EXPECT_TRUE(dk_equivalence_check(nerve_map(identity_functor(C), NC, NC), NC, NC, inner_window(1)).ok);

  // One of two isomorphic objects.
  EnrichedCategory const P  = preorder_category({{true}}, trivial_monoid(kInner));
  SegalPreObject const   NP = nerve(P);
  EnrichedFunctor const  I  = functor(P, C, {0}, [](auto, auto, SiteObject const&, Elem e) { return e; });
  DKResult const         r  = dk_equivalence_check(nerve_map(I, NP, NC), NP, NC, inner_window(1));
  EXPECT_TRUE(r.w1);
  EXPECT_TRUE(r.w2);
  EXPECT_TRUE(r.ok);

  // Z/2 -> 1 collapses a two-point hom.
  EnrichedCategory const Z  = preorder_category({{true}}, cyclic_monoid(kInner, 2));
  SegalPreObject const   NZ = nerve(Z);
  EnrichedFunctor const  K  = functor(Z, P, {0}, [](auto, auto, SiteObject const&, Elem) { return Elem{0}; });
  DKResult const         k  = dk_equivalence_check(nerve_map(K, NZ, NP), NZ, NP, inner_window(1));
  EXPECT_FALSE(k.w1);
  EXPECT_FALSE(k.ok);
  EXPECT_FALSE(k.witness.empty());
}

TEST(Segal, ReductionOfDiscreteIsIdentity) {
  SegalPreObject const X = nerve(UA(d1()));
  Reduction const      r = reduction(X.diagram());
  EXPECT_TRUE(is_iso_map(r.unit, Window::up_to(outer_site(kInner), 3)));
}

TEST(Segal, ReductionCounterexample) {
  FamilyMember const m = reduction_counterexample(kInner);
  SiteObject const   v = outer_object(0, inner_point(kInner));
  EXPECT_EQ(m.map.source().size(v), 2u);
  EXPECT_EQ(m.map.target().size(v), 1u);
  EXPECT_FALSE(m.mono);
  EXPECT_FALSE(is_mono_map(m.map, Window::up_to(outer_site(kInner), 2)));
}

TEST(Segal, ReductionAdjunction) {
  Rng        rng(44);
  Site const site = outer_site(kInner);
  for (int t = 0; t < 20; ++t) {
    Presheaf const X = random_presheaf(site, RandomSpec{1, 3, 2, 2, {}}, rng);
    Presheaf const Y = reduction(random_presheaf(site, RandomSpec{1, 3, 2, 2, {}}, rng)).reduced;
    Reduction const rx = reduction(X);
    // Precomposition with the unit is a bijection Hom(X_r, Y) -> Hom(X, Y).
    HomSet const            left = hom_set(rx.reduced, Y);
    std::set<std::vector<Elem>> images;
    for (std::size_t i = 0; i < left.size(); ++i) {
      images.insert(generator_images(compose(left.as_map(i), rx.unit)));
    }
    EXPECT_EQ(images.size(), left.size());
    EXPECT_EQ(left.size(), count_homs(X, Y));
  }
}

TEST(Segal, PhiConstruction) {
  Window const ow = Window::up_to(outer_site(kInner), 3);
  {
    EnrichedCategory const C  = preorder_category({{true, true}, {false, true}}, cyclic_monoid(kInner, 2));
    SegalPreObject const   NC = nerve(C);
    PhiFactorization const f  = phi_construction(nerve_map(identity_functor(C), NC, NC));
    EXPECT_TRUE(is_iso_map(f.to_Y, ow));
  }
  {
    Presheaf const         A  = d1();
    EnrichedCategory const P  = preorder_category({{true}}, trivial_monoid(kInner));
    EnrichedCategory const U  = UA(A);
    SegalPreObject const   NP = nerve(P);
    SegalPreObject const   NU = nerve(U);
    EnrichedFunctor const  F  = functor(P, U, {0}, [](auto, auto, SiteObject const&, Elem e) { return e; });
    PhiFactorization const f  = phi_construction(nerve_map(F, NP, NU));
    SiteObject const       e  = outer_object(1, inner_point(kInner));
    EXPECT_EQ(f.phiY.size(outer_object(0, inner_point(kInner))), 1u);
    EXPECT_EQ(f.phiY.size(e), 1u);
  }
  // (Phi Y)_m(v) = Y_m(f v) fiberwise.
  Rng rng(45);
  for (int t = 0; t < 10; ++t) {
    EnrichedCategory const D  = random_enriched_category(kInner, 2, rng);
    if (D.objects() == 0) {
      continue;
    }
    // The one-object category sent to z through its unit.
    std::size_t const      z  = uniform_index(rng, D.objects());
    EnrichedCategory const P  = preorder_category({{true}}, trivial_monoid(kInner));
    SegalPreObject const   NP = nerve(P);
    SegalPreObject const   ND = nerve(D);
    EnrichedFunctor const  F  = functor(P, D, {z}, [&D, z](auto, auto, SiteObject const& d, Elem) {
      return D.unit_at(z, d);
    });
    PhiFactorization const f = phi_construction(nerve_map(F, NP, ND));
    SegalPreObject const   Phi(f.phiY);
    for (std::size_t m = 0; m <= 2; ++m) {
      for (auto const& th : inner_window(1).objects()) {
        std::vector<Elem> const vs(m + 1, 0);
        std::vector<Elem> const fv(m + 1, z);
        EXPECT_EQ(fiber(Phi, m, vs).object.size(th), fiber(ND, m, fv).object.size(th));
      }
    }
  }
}
