#pragma once

// Set-valued presheaves on product Theta-sites.
//
// A presheaf is a node in an expression tree (presented, coproduct,
// pushout, subobject, ...). Every node evaluates lazily: size(d) is the
// cardinality of P(d), elements are the integers 0..size(d)-1, and act(g, x)
// is the restriction g^* x for g : d' -> d. Evaluations are memoized inside
// the node and are identical with or without the cache.

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "theta/site.hpp"

namespace theta {

  using Elem = std::size_t;

  // The restriction of cell `cell` along `map` (map : source -> shape(cell)).
  struct ElemRef {
    std::size_t  cell = 0;
    SiteMorphism map;

    friend bool operator==(ElemRef const&, ElemRef const&) = default;
  };

  // lhs and rhs are restrictions along maps with a common source.
  struct Relation {
    ElemRef lhs;
    ElemRef rhs;
  };

  // Cells and relations: the coequalizer of coproducts of representables.
  struct Presentation {
    Site                     site;
    std::vector<std::string> ids;
    std::vector<SiteObject>  shapes;
    std::vector<Relation>    relations;

    std::size_t size() const noexcept {
      return shapes.size();
    }
    int  max_degree() const;
    void validate() const;
  };

  struct GeneratorData;
  class PresheafNode;

  class Presheaf {
   public:
    Presheaf() = default;
    explicit Presheaf(std::shared_ptr<PresheafNode const> node);

    Site const&        site() const;
    std::size_t        size(SiteObject const& d) const;
    Elem               act(SiteMorphism const& g, Elem x) const;
    std::optional<int> support_degree() const;
    std::string        describe() const;

    PresheafNode const&                        node() const;
    std::shared_ptr<PresheafNode const> const& node_ptr() const noexcept {
      return node_;
    }
    bool same(Presheaf const& other) const noexcept {
      return node_ == other.node_;
    }
    explicit operator bool() const noexcept {
      return static_cast<bool>(node_);
    }

   private:
    std::shared_ptr<PresheafNode const> node_;
  };

  // A generating set with its relations, plus a way to write any element as
  // a restriction of a generator. Generator i is elements[i] in
  // P(presentation.shapes[i]).
  struct GeneratorData {
    Presentation                                      presentation;
    std::vector<Elem>                                 elements;
    std::function<ElemRef(SiteObject const&, Elem)>   express;
    // Degree bound used when the data was extracted; nullopt when exact.
    std::optional<int> window_degree;
  };

  class PresheafNode {
   public:
    explicit PresheafNode(Site site) : site_(std::move(site)) {}
    virtual ~PresheafNode() = default;

    Site const& site() const noexcept {
      return site_;
    }

    virtual std::size_t size(SiteObject const& d) const = 0;
    // g : d' -> d and x in P(d); returns g^* x in P(d').
    virtual Elem act(SiteMorphism const& g, Elem x) const = 0;
    // Every element is a restriction of one over an object of at most this
    // total degree; nullopt when no such bound is known.
    virtual std::optional<int> support_degree() const = 0;
    virtual std::string        describe() const = 0;
    // Nodes that know an exact presentation of themselves return it.
    virtual std::shared_ptr<GeneratorData const> native_generators() const {
      return nullptr;
    }

   private:
    Site site_;

    mutable std::mutex                                        gen_mtx_;
    mutable std::map<int, std::shared_ptr<GeneratorData const>> gen_cache_;
    friend std::shared_ptr<GeneratorData const> generators(Presheaf const&, std::optional<int>);
  };

  // The native presentation if there is one; otherwise generators are
  // extracted from the elements over all objects of total degree <= degree
  // (default: the support degree). Throws WindowTooSmall if neither bound
  // is available or an element needs a generator above the bound.
  std::shared_ptr<GeneratorData const> generators(Presheaf const&        P,
                                                  std::optional<int> degree = std::nullopt);

  // Generators from the nondegenerate elements over a window of total
  // degree <= degree (maximal nondegenerate elements; relations from the
  // Eilenberg-Zilber decomposition of their faces).
  std::shared_ptr<GeneratorData const> extract_generators(Presheaf const& P, int degree);

  // Eilenberg-Zilber decomposition: x = sigma^* z, sigma a composite of
  // elementary codegeneracies and z nondegenerate.
  struct EZ {
    SiteMorphism sigma;
    Elem         root = 0;
  };
  EZ   ez_decompose(Presheaf const& P, SiteObject const& d, Elem x);
  bool is_degenerate(Presheaf const& P, SiteObject const& d, Elem x);

  ////////////////////////////////////////////////////////////////////////
  // Maps
  ////////////////////////////////////////////////////////////////////////

  class PresheafMap {
   public:
    using Fn = std::function<Elem(SiteObject const&, Elem)>;

    PresheafMap() = default;
    PresheafMap(Presheaf source, Presheaf target, Fn fn, std::string label = {});

    Presheaf const& source() const noexcept {
      return source_;
    }
    Presheaf const& target() const noexcept {
      return target_;
    }
    Elem operator()(SiteObject const& d, Elem x) const {
      return (*fn_)(d, x);
    }
    std::string const& label() const noexcept {
      return label_;
    }
    explicit operator bool() const noexcept {
      return static_cast<bool>(fn_);
    }

   private:
    Presheaf                  source_;
    Presheaf                  target_;
    std::shared_ptr<Fn const> fn_;
    std::string               label_;
  };

  PresheafMap identity_map(Presheaf const& P);
  // g o f
  PresheafMap compose(PresheafMap const& g, PresheafMap const& f);
  // The unique map determined by images of the source's generators.
  PresheafMap map_from_images(Presheaf const& source, Presheaf const& target,
                              std::vector<Elem> images);
  // Images of the source's generators.
  std::vector<Elem> generator_images(PresheafMap const& f);
  // Memoizes f componentwise. Useful for maps that are expensive to evaluate
  // and used many times.
  PresheafMap tabulated_map(PresheafMap const& f);

  ////////////////////////////////////////////////////////////////////////
  // Constructions
  ////////////////////////////////////////////////////////////////////////

  Presheaf presented(Presentation p);
  Presheaf representable(Site const& site, SiteObject a);
  Presheaf empty_presheaf(Site const& site);
  Presheaf terminal_presheaf(Site const& site);
  // The constant presheaf on n points.
  Presheaf discrete(Site const& site, std::size_t n);
  // The unique map to the terminal presheaf, and the map from the empty one.
  PresheafMap to_terminal(Presheaf const& P);
  PresheafMap from_empty(Presheaf const& P);

  struct Coproduct {
    Presheaf                 object;
    std::vector<PresheafMap> injections;
  };
  Coproduct   coproduct(std::vector<Presheaf> parts);
  PresheafMap coproduct_induced(Coproduct const& c, std::vector<PresheafMap> const& legs);
  // f_1 + ... + f_k between coproducts.
  PresheafMap coproduct_map(Coproduct const& from, Coproduct const& to,
                            std::vector<PresheafMap> const& parts);

  struct Product {
    Presheaf                 object;
    std::vector<PresheafMap> projections;
  };
  Product     product(std::vector<Presheaf> parts);
  PresheafMap product_induced(Product const& p, std::vector<PresheafMap> const& legs);

  // f : P -> R, g : Q -> R. Legs to P and Q.
  struct Pullback {
    Presheaf    object;
    PresheafMap left;
    PresheafMap right;
  };
  Pullback    pullback(PresheafMap const& f, PresheafMap const& g);
  PresheafMap pullback_induced(Pullback const& pb, PresheafMap const& u, PresheafMap const& v);

  // f : R -> P, g : R -> Q. Legs from P and Q. Elements are classes of
  // P(d) + Q(d) ordered by their least member (P first).
  struct Pushout {
    Presheaf    object;
    PresheafMap left;
    PresheafMap right;
    PresheafMap f;
    PresheafMap g;
  };
  Pushout     pushout(PresheafMap const& f, PresheafMap const& g);
  PresheafMap pushout_induced(Pushout const& po, PresheafMap const& u, PresheafMap const& v);

  struct Subobject {
    Presheaf    object;
    PresheafMap inclusion;
  };
  // Membership over d, as a vector of flags over the parent's P(d). The
  // predicate must define a subpresheaf. The support bound defaults to the
  // parent's.
  using Membership = std::function<std::vector<bool>(SiteObject const&)>;
  Subobject subpresheaf(Presheaf const& parent, Membership member, std::string label,
                        std::optional<int> support = std::nullopt);
  Subobject generated_subpresheaf(Presheaf const&                             parent,
                                  std::vector<std::pair<SiteObject, Elem>> const& gens,
                                  std::string                                 label = {});
  Subobject image(PresheafMap const& f);
  // Union of subobjects of a common parent.
  Subobject union_of(Presheaf const& parent, std::vector<PresheafMap> const& inclusions);
  // The map A -> B through which f factors, given f lands in the subobject.
  PresheafMap corestrict(PresheafMap const& f, Subobject const& sub);

  // Elements of the representable whose mono part is not invertible.
  Subobject boundary(Site const& site, SiteObject const& a);
  // The spine colimit inside Theta[m](cs) at the given level.
  Subobject segal_core(int level, std::vector<Object> const& cs);

  // P on S and Q on T give P x Q on S ++ T.
  Presheaf    external_product(Presheaf const& P, Presheaf const& Q);
  PresheafMap external_product(PresheafMap const& f, PresheafMap const& g);
  // P on S as a presheaf on (level) ++ S, constant in the new factor.
  Presheaf    constant_along(int level, Presheaf const& P);
  PresheafMap constant_along(int level, PresheafMap const& f);
  // X on (F, S...) restricted to the first coordinate o, a presheaf on S.
  Presheaf    restrict_first(Presheaf const& X, Object const& o);
  PresheafMap restrict_first(PresheafMap const& f, Object const& o);
  // New factor k is old factor perm[k].
  Presheaf    permute(Presheaf const& P, std::vector<std::size_t> const& perm);
  PresheafMap permute(PresheafMap const& f, std::vector<std::size_t> const& perm);
  // cosk_0 in a new simplicial first factor: ([p], t) |-> P(t)^{p+1}.
  Presheaf cosk0(Presheaf const& P);

  // Explicit value and action tables over a window. Objects outside the
  // window raise WindowTooSmall.
  struct Tabulation {
    Window                   window;
    std::vector<std::size_t> sizes;  // per window object
    // action[(i_target, i_source)][hom index] maps P(obj i_target) into
    // P(obj i_source) for morphisms obj i_source -> obj i_target.
    std::map<std::pair<std::size_t, std::size_t>, std::vector<std::vector<Elem>>> action;
  };
  Tabulation tabulate(Presheaf const& P, Window const& w);
  Presheaf   from_tabulation(Tabulation t);

  // A copy of P whose elements are permuted over every object,
  // deterministically from the seed.
  struct Relabeled {
    Presheaf    object;
    PresheafMap to_original;
    PresheafMap from_original;
  };
  Relabeled relabel(Presheaf const& P, std::uint64_t seed);

  ////////////////////////////////////////////////////////////////////////
  // Checks over windows
  ////////////////////////////////////////////////////////////////////////

  bool is_mono_map(PresheafMap const& f, Window const& w);
  bool is_epi_map(PresheafMap const& f, Window const& w);
  bool is_iso_map(PresheafMap const& f, Window const& w);
  bool maps_agree(PresheafMap const& f, PresheafMap const& g, Window const& w);
  // First failure as a message, or nullopt.
  std::optional<std::string> check_functoriality(Presheaf const& P, Window const& w);
  std::optional<std::string> check_naturality(PresheafMap const& f, Window const& w);
  // Sum of sizes over a window.
  std::size_t total_size(Presheaf const& P, Window const& w);

  ////////////////////////////////////////////////////////////////////////
  // Hom-sets
  ////////////////////////////////////////////////////////////////////////

  // X.act(map, value of cell) must equal `value`.
  struct Pin {
    std::size_t  cell = 0;
    SiteMorphism map;
    Elem         value = 0;
  };

  struct HomSetOptions {
    std::size_t                                  limit = SIZE_MAX;
    std::function<bool(std::size_t cell, Elem)>  filter;
    std::vector<Pin>                             pins;
    std::optional<int>                           degree;  // for generator extraction
  };

  struct HomSet {
    Presheaf                             source;
    Presheaf                             target;
    std::shared_ptr<GeneratorData const> generators;
    std::vector<std::vector<Elem>>       maps;  // generator images

    std::size_t size() const noexcept {
      return maps.size();
    }
    PresheafMap as_map(std::size_t i) const;
  };

  // Exhaustive enumeration of natural transformations P -> X, in
  // lexicographic order of generator images.
  HomSet      hom_set(Presheaf const& P, Presheaf const& X, HomSetOptions const& opts = {});
  std::size_t count_homs(Presheaf const& P, Presheaf const& X);

}  // namespace theta
