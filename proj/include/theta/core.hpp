#pragma once

// Objects and morphisms of the cell categories Theta_n, built inductively:
// Theta_0 is the terminal category and Theta_n = Theta(Theta_{n-1}).

#include <compare>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "theta/error.hpp"

namespace theta {

  // [m](c_1, ..., c_m) at level n, each c_i at level n-1. The level-0 object
  // carries no data. Cheap to copy: the representation is shared and
  // immutable.
  class Object {
   public:
    // The unique object of Theta_0.
    Object();

    // [0] at the given level (the level-0 object when level == 0).
    static Object point(int level);
    // [m] in Theta_1 = Delta.
    static Object simplex(std::size_t m);
    static Object make(int level, std::vector<Object> children);

    int level() const noexcept {
      return rep_->level;
    }
    std::size_t arity() const noexcept {
      return rep_->children.size();
    }
    // 0-based: child(0) is c_1.
    Object const& child(std::size_t i) const {
      return rep_->children.at(i);
    }
    std::span<Object const> children() const noexcept {
      return rep_->children;
    }
    // m + sum of the children's degrees.
    int degree() const noexcept {
      return rep_->degree;
    }
    std::size_t hash() const noexcept {
      return rep_->hash;
    }
    // No cells above dimension 0: the level-0 object or [0] at any level.
    bool is_point() const noexcept {
      return rep_->children.empty();
    }

    // "*" at level 0, "[m]" at level 1, "[m](c_1,...,c_m)" above.
    std::string to_string() const;

    friend bool operator==(Object const& a, Object const& b) noexcept;
    friend std::strong_ordering operator<=>(Object const& a,
                                            Object const& b) noexcept;

   private:
    struct Rep {
      int                 level;
      int                 degree;
      std::size_t         hash;
      std::vector<Object> children;
    };
    explicit Object(std::shared_ptr<Rep const> rep) : rep_(std::move(rep)) {}
    std::shared_ptr<Rep const> rep_;
  };

  // (delta, {f_ij}) : [m](c) -> [q](d) with delta : [m] -> [q] monotone and
  // f_ij : c_i -> d_j for delta(i-1) < j <= delta(i).
  class Morphism {
   public:
    // Validates the indexing condition and the block sources/targets.
    static Morphism make(Object              source,
                         Object              target,
                         std::vector<int>    delta,
                         std::vector<Morphism> blocks);
    // The unique level-0 morphism.
    static Morphism trivial();
    // A map of Theta_1 = Delta given by its values.
    static Morphism delta_map(std::size_t m, std::size_t q, std::vector<int> values);

    Object const& source() const noexcept {
      return rep_->source;
    }
    Object const& target() const noexcept {
      return rep_->target;
    }
    int level() const noexcept {
      return rep_->source.level();
    }
    // Length arity(source)+1; empty at level 0.
    std::span<int const> delta() const noexcept {
      return rep_->delta;
    }
    // Blocks attached to source child i (1-based), ordered by j.
    std::span<Morphism const> blocks_of(std::size_t i) const;
    // f_ij with 1-based indices, delta(i-1) < j <= delta(i).
    Morphism const& block(std::size_t i, std::size_t j) const;
    // All blocks in (i, j) order.
    std::span<Morphism const> blocks() const noexcept {
      return rep_->blocks;
    }

    std::string to_string() const;

    friend bool operator==(Morphism const& a, Morphism const& b) noexcept;
    // Canonical order: source, target, then delta lexicographically, then
    // the blocks recursively.
    friend std::strong_ordering operator<=>(Morphism const& a,
                                            Morphism const& b) noexcept;

   private:
    struct Rep {
      Object                source;
      Object                target;
      std::vector<int>      delta;
      std::vector<Morphism> blocks;
    };
    explicit Morphism(std::shared_ptr<Rep const> rep) : rep_(std::move(rep)) {}
    static Morphism unchecked(Object, Object, std::vector<int>, std::vector<Morphism>);
    std::shared_ptr<Rep const> rep_;

    friend struct MorphismAccess;
  };

  Morphism identity(Object const& a);

  // g o f; throws if target(f) != source(g).
  Morphism compose(Morphism const& g, Morphism const& f);

  // Every morphism a -> b in canonical order. Cached; the reference stays
  // valid for the lifetime of the program.
  std::vector<Morphism> const& hom(Object const& a, Object const& b);

  // Position of f in hom(source(f), target(f)).
  std::size_t hom_index(Morphism const& f);

  struct Classification {
    bool mono      = false;
    bool split_epi = false;
    bool iso       = false;
  };

  // mono: delta injective and, at every source child, the blocks landing
  // on it are jointly monic (recursively). split_epi: a section exists.
  Classification classify(Morphism const& f);
  bool           is_mono(Morphism const& f);
  bool           is_split_epi(Morphism const& f);
  std::vector<Morphism> sections(Morphism const& f);

  // Degree-lowering split epis out of a: vertical ones induced by an
  // elementary codegeneracy of a child, horizontal ones collapsing position
  // i of [m] when c_i is a point.
  std::vector<Morphism> elementary_codegeneracies(Object const& a);

  struct EpiMono {
    Morphism epi;   // a composite of elementary codegeneracies
    Morphism mono;
  };

  EpiMono factor_epi_mono(Morphism const& f);

  // All objects of the given level with degree <= max_degree, ordered by
  // degree and then canonically.
  std::vector<Object> const& objects_up_to_degree(int level, int max_degree);

  // The k-globe [1]([1](...[0]...)) at the given level (k <= level).
  Object globe(int level, int k);

}  // namespace theta

template <>
struct std::hash<theta::Object> {
  std::size_t operator()(theta::Object const& o) const noexcept {
    return o.hash();
  }
};
