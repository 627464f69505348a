#pragma once

// Product sites Theta_{n_1} x ... x Theta_{n_r}. Objects and morphisms are
// tuples and every operation acts componentwise.

#include <cstddef>
#include <string>
#include <vector>

#include "theta/core.hpp"

namespace theta {

  struct SiteObject {
    std::vector<Object> parts;

    std::size_t arity() const noexcept {
      return parts.size();
    }
    Object const& operator[](std::size_t i) const {
      return parts[i];
    }
    int         degree() const noexcept;
    std::size_t hash() const noexcept;
    std::string to_string() const;

    friend bool operator==(SiteObject const&, SiteObject const&) = default;
    friend std::strong_ordering operator<=>(SiteObject const& a, SiteObject const& b) noexcept;
  };

  struct SiteMorphism {
    std::vector<Morphism> parts;

    SiteObject  source() const;
    SiteObject  target() const;
    std::string to_string() const;

    friend bool operator==(SiteMorphism const&, SiteMorphism const&) = default;
    friend std::strong_ordering operator<=>(SiteMorphism const& a, SiteMorphism const& b) noexcept;
  };

  class Site {
   public:
    Site() = default;
    explicit Site(std::vector<int> levels);

    std::size_t arity() const noexcept {
      return levels_.size();
    }
    int level(std::size_t i) const {
      return levels_.at(i);
    }
    std::vector<int> const& levels() const noexcept {
      return levels_;
    }

    // The tuple of points, terminal in the site.
    SiteObject terminal() const;
    // Throws SiteMismatch unless o is an object of this site.
    void check(SiteObject const& o) const;

    Site concat(Site const& other) const;
    // Factors other than the first.
    Site tail() const;
    // New factor k is old factor perm[k].
    Site permuted(std::vector<std::size_t> const& perm) const;

    std::string to_string() const;

    friend bool operator==(Site const&, Site const&) = default;
    friend auto operator<=>(Site const&, Site const&) = default;

   private:
    std::vector<int> levels_;
  };

  SiteMorphism identity(SiteObject const& a);
  SiteMorphism compose(SiteMorphism const& g, SiteMorphism const& f);
  SiteObject   concat(SiteObject const& a, SiteObject const& b);
  SiteMorphism concat(SiteMorphism const& a, SiteMorphism const& b);

  // Hom-sets of a product site are products of component hom-sets, indexed
  // in mixed radix with the last factor varying fastest. This agrees with
  // the lexicographic order of tuples.
  std::size_t  hom_size(SiteObject const& a, SiteObject const& b);
  SiteMorphism hom_at(SiteObject const& a, SiteObject const& b, std::size_t index);
  std::size_t  hom_index(SiteMorphism const& f);
  // Cached list of all morphisms a -> b in index order.
  std::vector<SiteMorphism> const& hom(SiteObject const& a, SiteObject const& b);

  bool is_mono(SiteMorphism const& f);
  // All components split epi. Cached per component.
  bool is_split_epi(SiteMorphism const& f);
  bool is_split_epi_cached(Morphism const& f);

  struct Codegeneracy {
    SiteMorphism epi;
    SiteMorphism section;
  };

  // One elementary codegeneracy in a single factor, identities elsewhere,
  // each paired with a chosen section.
  std::vector<Codegeneracy> const& elementary_codegeneracies(SiteObject const& a);

  // Every mono into a (identity included), ordered by source degree
  // descending and then canonically.
  std::vector<SiteMorphism> const& monos_into(SiteObject const& a);

  struct SiteEpiMono {
    SiteMorphism epi;
    SiteMorphism mono;
  };
  SiteEpiMono factor_epi_mono(SiteMorphism const& f);

  // A finite, downward closed set of site objects: per-factor degree bounds
  // and a bound on the total degree.
  class Window {
   public:
    Window() = default;
    static Window up_to(Site const& site, int total_degree);
    static Window bounded(Site const& site, std::vector<int> factor_bounds, int total_degree);

    Site const& site() const noexcept {
      return site_;
    }
    int total_degree() const noexcept {
      return total_;
    }
    std::vector<int> const& factor_bounds() const noexcept {
      return bounds_;
    }
    // Ordered by total degree, then canonically.
    std::vector<SiteObject> const& objects() const& noexcept {
      return objects_;
    }
    // By value on temporaries, so `for (x : Window::up_to(...).objects())` is safe.
    std::vector<SiteObject> objects() && {
      return std::move(objects_);
    }
    bool        contains(SiteObject const& o) const;
    std::string to_string() const;

   private:
    Site                    site_;
    std::vector<int>        bounds_;
    int                     total_ = 0;
    std::vector<SiteObject> objects_;
  };

}  // namespace theta

template <>
struct std::hash<theta::SiteObject> {
  std::size_t operator()(theta::SiteObject const& o) const noexcept {
    return o.hash();
  }
};
