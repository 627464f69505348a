#include <gtest/gtest.h>

#include <set>

#include "theta/random.hpp"

using namespace theta;

namespace {

  // All monotone maps [m] -> [q] by counting up in base q+1.
  std::vector<std::vector<int>> monotone_oracle(int m, int q) {
    std::vector<std::vector<int>> out;
    std::vector<int>              v(static_cast<std::size_t>(m + 1), 0);
    while (true) {
      if (std::is_sorted(v.begin(), v.end())) {
        out.push_back(v);
      }
      int i = m;
      while (i >= 0 && v[static_cast<std::size_t>(i)] == q) {
        v[static_cast<std::size_t>(i--)] = 0;
      }
      if (i < 0) {
        return out;
      }
      ++v[static_cast<std::size_t>(i)];
    }
  }

  std::size_t binomial(std::size_t n, std::size_t k) {
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) {
      r = r * (n - k + i) / i;
    }
    return r;
  }

  // |Hom([m](a), [q](b))| in Theta_2: sum over delta of the product of Delta
  // hom counts for the blocks a_i -> b_j, delta(i-1) < j <= delta(i).
  std::size_t theta2_count(Object const& s, Object const& t) {
    std::size_t total = 0;
    for (auto const& d : monotone_oracle(static_cast<int>(s.arity()), static_cast<int>(t.arity()))) {
      std::size_t prod = 1;
      for (std::size_t i = 1; i <= s.arity(); ++i) {
        for (int j = d[i - 1] + 1; j <= d[i]; ++j) {
          std::size_t const a = s.child(i - 1).arity();
          std::size_t const b = t.child(static_cast<std::size_t>(j - 1)).arity();
          prod *= binomial(a + b + 1, a + 1);
        }
      }
      total += prod;
    }
    return total;
  }

  Object t2(std::vector<std::size_t> const& arities) {
    std::vector<Object> cs;
    for (auto a : arities) {
      cs.push_back(Object::simplex(a));
    }
    return Object::make(2, cs);
  }

  // A section by exhaustive search.
  bool has_section_oracle(Morphism const& f) {
    for (auto const& g : hom(f.target(), f.source())) {
      if (compose(f, g) == identity(f.target())) {
        return true;
      }
    }
    return false;
  }

}  // namespace

TEST(Core, LevelZeroIdentity) {
  Object const pt;
  EXPECT_EQ(hom(pt, pt).size(), 1u);
  EXPECT_EQ(identity(pt), Morphism::trivial());
}

TEST(Core, IdentityOfSimplex) {
  Morphism const id = identity(Object::simplex(2));
  EXPECT_EQ(std::vector<int>(id.delta().begin(), id.delta().end()), (std::vector<int>{0, 1, 2}));
}

TEST(Core, ConstantAbsorbs) {
  Morphism const f = Morphism::delta_map(1, 1, {0, 1});
  Morphism const g = Morphism::delta_map(1, 1, {0, 0});
  EXPECT_EQ(compose(g, f), g);
}

TEST(Core, DeltaHomCounts) {
  for (int m = 0; m <= 4; ++m) {
    for (int q = 0; q <= 4; ++q) {
      auto const oracle = monotone_oracle(m, q);
      auto const& h     = hom(Object::simplex(static_cast<std::size_t>(m)),
                              Object::simplex(static_cast<std::size_t>(q)));
      ASSERT_EQ(h.size(), oracle.size());
      EXPECT_EQ(h.size(), binomial(static_cast<std::size_t>(q + m + 1), static_cast<std::size_t>(m + 1)));
      std::set<std::vector<int>> got;
      for (auto const& f : h) {
        got.insert(std::vector<int>(f.delta().begin(), f.delta().end()));
      }
      EXPECT_EQ(got, std::set<std::vector<int>>(oracle.begin(), oracle.end()));
    }
  }
  EXPECT_EQ(hom(Object::simplex(1), Object::simplex(1)).size(), 3u);
}

TEST(Core, Theta2HomCounts) {
  EXPECT_EQ(hom(t2({1}), t2({1})).size(), 5u);
  for (auto const& a : objects_up_to_degree(2, 3)) {
    for (auto const& b : objects_up_to_degree(2, 3)) {
      EXPECT_EQ(hom(a, b).size(), theta2_count(a, b)) << a.to_string() << " -> " << b.to_string();
    }
  }
}

TEST(Core, HomIndexRoundTrip) {
  Object const a = t2({1, 0});
  Object const b = t2({2, 1});
  auto const&  h = hom(a, b);
  for (std::size_t i = 0; i < h.size(); ++i) {
    EXPECT_EQ(hom_index(h[i]), i);
  }
}

TEST(Core, CategoryLawsRandomTheta2) {
  Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    Object const   a = random_object(2, 4, rng);
    Object const   b = random_object(2, 4, rng);
    Object const   c = random_object(2, 4, rng);
    Object const   d = random_object(2, 4, rng);
    Morphism const f = random_morphism(a, b, rng);
    Morphism const g = random_morphism(b, c, rng);
    Morphism const h = random_morphism(c, d, rng);
    EXPECT_EQ(compose(h, compose(g, f)), compose(compose(h, g), f));
    EXPECT_EQ(compose(identity(b), f), f);
    EXPECT_EQ(compose(f, identity(a)), f);
  }
}

TEST(Core, ClassifyExamples) {
  EXPECT_TRUE(classify(identity(t2({2, 1}))).iso);
  Morphism const d = Morphism::delta_map(1, 2, {0, 2});
  EXPECT_TRUE(is_mono(d));
  EXPECT_FALSE(is_split_epi(d));
  EXPECT_FALSE(has_section_oracle(d));

  // [2]([1],[0]) -> [1]([1]) collapsing position 2.
  Object const   src = t2({1, 0});
  Object const   tgt = t2({1});
  Morphism const f = Morphism::make(src, tgt, {0, 1, 1}, {identity(Object::simplex(1))});
  EXPECT_TRUE(is_split_epi(f));
  EXPECT_TRUE(has_section_oracle(f));
}

TEST(Core, ClassifyAgreesWithOracles) {
  for (auto const& a : objects_up_to_degree(2, 3)) {
    for (auto const& b : objects_up_to_degree(2, 3)) {
      for (auto const& f : hom(a, b)) {
        EXPECT_EQ(is_split_epi(f), has_section_oracle(f)) << f.to_string();
        // Monos are left-cancellable against every pair of maps from small objects.
        bool cancellable = true;
        for (auto const& c : objects_up_to_degree(2, 2)) {
          auto const&         h = hom(c, a);
          std::set<Morphism> images;
          for (auto const& g : h) {
            images.insert(compose(f, g));
          }
          cancellable = cancellable && images.size() == h.size();
        }
        EXPECT_EQ(is_mono(f), cancellable) << f.to_string();
      }
    }
  }
}

TEST(Core, ElementaryCodegeneracyExamples) {
  EXPECT_EQ(elementary_codegeneracies(Object::simplex(2)).size(), 2u);
  EXPECT_EQ(elementary_codegeneracies(t2({1, 0})).size(), 2u);
  EXPECT_TRUE(elementary_codegeneracies(Object()).empty());
}

// Every split epi out of a of lower degree factors through an elementary
// codegeneracy, and each elementary one is a split epi dropping degree by 1.
TEST(Core, ElementaryCodegeneraciesGenerateTheta3) {
  for (auto const& a : objects_up_to_degree(3, 3)) {
    auto const elem = elementary_codegeneracies(a);
    if (a.degree() == 0) {
      EXPECT_TRUE(elem.empty());
      continue;
    }
    for (auto const& e : elem) {
      EXPECT_TRUE(has_section_oracle(e));
      EXPECT_EQ(e.target().degree() + 1, a.degree());
    }
    for (auto const& b : objects_up_to_degree(3, a.degree() - 1)) {
      for (auto const& f : hom(a, b)) {
        if (!has_section_oracle(f)) {
          continue;
        }
        bool factors = false;
        for (auto const& e : elem) {
          for (auto const& g : hom(e.target(), b)) {
            if (compose(g, e) == f) {
              factors = true;
              break;
            }
          }
          if (factors) {
            break;
          }
        }
        EXPECT_TRUE(factors) << f.to_string();
      }
    }
  }
}

TEST(Core, FactorEpiMono) {
  Morphism const c  = Morphism::delta_map(1, 1, {0, 0});
  EpiMono const  em = factor_epi_mono(c);
  EXPECT_EQ(em.epi, Morphism::delta_map(1, 0, {0, 0}));
  EXPECT_EQ(em.mono, Morphism::delta_map(0, 1, {0}));

  Morphism const m   = Morphism::delta_map(1, 2, {0, 2});
  EpiMono const  emm = factor_epi_mono(m);
  EXPECT_EQ(emm.epi, identity(m.source()));
  EXPECT_EQ(emm.mono, m);

  Rng rng(3);
  for (int t = 0; t < 100; ++t) {
    Object const   a = random_object(2, 4, rng);
    Object const   b = random_object(2, 4, rng);
    Morphism const f = random_morphism(a, b, rng);
    EpiMono const  e = factor_epi_mono(f);
    EXPECT_EQ(compose(e.mono, e.epi), f);
    EXPECT_TRUE(has_section_oracle(e.epi));
    EXPECT_TRUE(is_mono(e.mono));
  }
}

TEST(Core, MalformedMorphismRejected) {
  EXPECT_THROW(Morphism::delta_map(1, 1, {1, 0}), MalformedInput);
  EXPECT_THROW(Morphism::make(t2({1}), t2({1}), {0, 1}, {}), Error);
}
