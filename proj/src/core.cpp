#include "theta/core.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>

namespace theta {

  struct MorphismAccess {
    static Morphism make(Object s, Object t, std::vector<int> d, std::vector<Morphism> b) {
      return Morphism::unchecked(std::move(s), std::move(t), std::move(d), std::move(b));
    }
  };

  namespace {

    std::size_t mix(std::size_t seed, std::size_t v) {
      return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
    }

    Object const& level0() {
      static Object const obj;
      return obj;
    }

  }  // namespace

  ////////////////////////////////////////////////////////////////////////
  // Object
  ////////////////////////////////////////////////////////////////////////

  Object::Object()
      : rep_(std::make_shared<Rep const>(Rep{0, 0, 0x51ed270b, {}})) {}

  Object Object::point(int level) {
    if (level < 0) {
      throw MalformedInput("negative level");
    }
    if (level == 0) {
      return level0();
    }
    return make(level, {});
  }

  Object Object::simplex(std::size_t m) {
    return make(1, std::vector<Object>(m, level0()));
  }

  Object Object::make(int level, std::vector<Object> children) {
    if (level < 0) {
      throw MalformedInput("negative level");
    }
    if (level == 0) {
      if (!children.empty()) {
        throw MalformedInput("the level-0 object has no children");
      }
      return level0();
    }
    int         degree = static_cast<int>(children.size());
    std::size_t h      = mix(static_cast<std::size_t>(level), children.size());
    for (auto const& c : children) {
      if (c.level() != level - 1) {
        throw MalformedInput("child of a level-" + std::to_string(level)
                             + " object must have level " + std::to_string(level - 1));
      }
      degree += c.degree();
      h = mix(h, c.hash());
    }
    return Object(std::make_shared<Rep const>(Rep{level, degree, h, std::move(children)}));
  }

  std::string Object::to_string() const {
    if (level() == 0) {
      return "*";
    }
    std::string s = "[" + std::to_string(arity()) + "]";
    if (level() == 1 || arity() == 0) {
      return s;
    }
    s += "(";
    for (std::size_t i = 0; i < arity(); ++i) {
      if (i > 0) {
        s += ",";
      }
      s += child(i).to_string();
    }
    return s + ")";
  }

  bool operator==(Object const& a, Object const& b) noexcept {
    if (a.rep_ == b.rep_) {
      return true;
    }
    if (a.hash() != b.hash() || a.level() != b.level() || a.arity() != b.arity()) {
      return false;
    }
    return std::equal(a.children().begin(), a.children().end(), b.children().begin());
  }

  std::strong_ordering operator<=>(Object const& a, Object const& b) noexcept {
    if (a.rep_ == b.rep_) {
      return std::strong_ordering::equal;
    }
    if (auto c = a.level() <=> b.level(); c != 0) {
      return c;
    }
    if (auto c = a.arity() <=> b.arity(); c != 0) {
      return c;
    }
    for (std::size_t i = 0; i < a.arity(); ++i) {
      if (auto c = a.child(i) <=> b.child(i); c != 0) {
        return c;
      }
    }
    return std::strong_ordering::equal;
  }

  ////////////////////////////////////////////////////////////////////////
  // Morphism
  ////////////////////////////////////////////////////////////////////////

  Morphism Morphism::unchecked(Object                source,
                               Object                target,
                               std::vector<int>      delta,
                               std::vector<Morphism> blocks) {
    return Morphism(std::make_shared<Rep const>(
        Rep{std::move(source), std::move(target), std::move(delta), std::move(blocks)}));
  }

  Morphism Morphism::trivial() {
    static Morphism const t = unchecked(level0(), level0(), {}, {});
    return t;
  }

  Morphism Morphism::make(Object                source,
                          Object                target,
                          std::vector<int>      delta,
                          std::vector<Morphism> blocks) {
    if (source.level() != target.level()) {
      throw MalformedInput("morphism between objects of different levels");
    }
    if (source.level() == 0) {
      if (!delta.empty() || !blocks.empty()) {
        throw MalformedInput("level-0 morphisms carry no data");
      }
      return trivial();
    }
    std::size_t const m = source.arity();
    int const         q = static_cast<int>(target.arity());
    if (delta.size() != m + 1) {
      throw MalformedInput("delta must have length arity(source)+1");
    }
    for (std::size_t k = 0; k <= m; ++k) {
      if (delta[k] < 0 || delta[k] > q || (k > 0 && delta[k] < delta[k - 1])) {
        throw MalformedInput("delta must be a monotone map [m] -> [q]");
      }
    }
    std::size_t expected = static_cast<std::size_t>(delta[m] - delta[0]);
    if (blocks.size() != expected) {
      throw MalformedInput("wrong number of blocks: expected " + std::to_string(expected));
    }
    std::size_t pos = 0;
    for (std::size_t i = 1; i <= m; ++i) {
      for (int j = delta[i - 1] + 1; j <= delta[i]; ++j, ++pos) {
        auto const& b = blocks[pos];
        if (b.source() != source.child(i - 1) || b.target() != target.child(j - 1)) {
          throw MalformedInput("block f_" + std::to_string(i) + std::to_string(j)
                               + " has the wrong source or target");
        }
      }
    }
    return unchecked(std::move(source), std::move(target), std::move(delta), std::move(blocks));
  }

  Morphism Morphism::delta_map(std::size_t m, std::size_t q, std::vector<int> values) {
    Object s = Object::simplex(m);
    Object t = Object::simplex(q);
    if (values.size() != m + 1) {
      throw MalformedInput("delta must have length m+1");
    }
    std::size_t nblocks = values.empty() ? 0 : values.back() - values.front();
    if (values.back() < values.front()) {
      nblocks = 0;
    }
    return make(std::move(s), std::move(t), std::move(values),
                std::vector<Morphism>(nblocks, trivial()));
  }

  std::span<Morphism const> Morphism::blocks_of(std::size_t i) const {
    if (level() == 0 || i == 0 || i > source().arity()) {
      throw std::out_of_range("blocks_of: bad index");
    }
    auto const&       d     = rep_->delta;
    std::size_t const start = static_cast<std::size_t>(d[i - 1] - d[0]);
    std::size_t const len   = static_cast<std::size_t>(d[i] - d[i - 1]);
    return std::span<Morphism const>(rep_->blocks).subspan(start, len);
  }

  Morphism const& Morphism::block(std::size_t i, std::size_t j) const {
    auto const& d = rep_->delta;
    if (level() == 0 || i == 0 || i > source().arity()
        || static_cast<int>(j) <= d[i - 1] || static_cast<int>(j) > d[i]) {
      throw std::out_of_range("block: index outside delta(i-1) < j <= delta(i)");
    }
    return rep_->blocks[j - 1 - static_cast<std::size_t>(d[0])];
  }

  std::string Morphism::to_string() const {
    if (level() == 0) {
      return "*";
    }
    std::ostringstream os;
    os << "(";
    for (std::size_t k = 0; k < rep_->delta.size(); ++k) {
      os << (k ? "," : "") << rep_->delta[k];
    }
    os << ")";
    if (level() > 1 && !rep_->blocks.empty()) {
      os << "{";
      for (std::size_t k = 0; k < rep_->blocks.size(); ++k) {
        os << (k ? "," : "") << rep_->blocks[k].to_string();
      }
      os << "}";
    }
    return os.str();
  }

  bool operator==(Morphism const& a, Morphism const& b) noexcept {
    if (a.rep_ == b.rep_) {
      return true;
    }
    return a.rep_->delta == b.rep_->delta && a.source() == b.source()
           && a.target() == b.target() && a.rep_->blocks == b.rep_->blocks;
  }

  std::strong_ordering operator<=>(Morphism const& a, Morphism const& b) noexcept {
    if (a.rep_ == b.rep_) {
      return std::strong_ordering::equal;
    }
    if (auto c = a.source() <=> b.source(); c != 0) {
      return c;
    }
    if (auto c = a.target() <=> b.target(); c != 0) {
      return c;
    }
    auto const& da = a.rep_->delta;
    auto const& db = b.rep_->delta;
    if (auto c = std::lexicographical_compare_three_way(da.begin(), da.end(), db.begin(), db.end());
        c != 0) {
      return c;
    }
    auto const& ba = a.rep_->blocks;
    auto const& bb = b.rep_->blocks;
    return std::lexicographical_compare_three_way(ba.begin(), ba.end(), bb.begin(), bb.end());
  }

  Morphism identity(Object const& a) {
    if (a.level() == 0) {
      return Morphism::trivial();
    }
    std::size_t const     m = a.arity();
    std::vector<int>      delta(m + 1);
    std::vector<Morphism> blocks;
    blocks.reserve(m);
    for (std::size_t k = 0; k <= m; ++k) {
      delta[k] = static_cast<int>(k);
    }
    for (std::size_t i = 0; i < m; ++i) {
      blocks.push_back(identity(a.child(i)));
    }
    return MorphismAccess::make(a, a, std::move(delta), std::move(blocks));
  }

  Morphism compose(Morphism const& g, Morphism const& f) {
    if (f.target() != g.source()) {
      throw SiteMismatch("compose: target(f) = " + f.target().to_string()
                         + " but source(g) = " + g.source().to_string());
    }
    if (f.level() == 0) {
      return Morphism::trivial();
    }
    auto const        df = f.delta();
    auto const        dg = g.delta();
    std::size_t const m  = f.source().arity();

    std::vector<int> delta(m + 1);
    for (std::size_t k = 0; k <= m; ++k) {
      delta[k] = dg[static_cast<std::size_t>(df[k])];
    }
    std::vector<Morphism> blocks;
    blocks.reserve(static_cast<std::size_t>(delta[m] - delta[0]));
    for (std::size_t i = 1; i <= m; ++i) {
      // the intermediate j is the least j with dg(j) >= k; monotonicity puts
      // it in (df(i-1), df(i)]
      int j = df[i - 1] + 1;
      for (int k = delta[i - 1] + 1; k <= delta[i]; ++k) {
        while (dg[static_cast<std::size_t>(j)] < k) {
          ++j;
        }
        blocks.push_back(compose(g.block(static_cast<std::size_t>(j), static_cast<std::size_t>(k)),
                                 f.block(i, static_cast<std::size_t>(j))));
      }
    }
    return MorphismAccess::make(f.source(), g.target(), std::move(delta), std::move(blocks));
  }

  ////////////////////////////////////////////////////////////////////////
  // Hom-sets
  ////////////////////////////////////////////////////////////////////////

  namespace {

    std::vector<Morphism> enumerate_hom(Object const& a, Object const& b) {
      if (a.level() != b.level()) {
        throw SiteMismatch("hom between objects of different levels");
      }
      if (a.level() == 0) {
        return {Morphism::trivial()};
      }
      std::size_t const     m = a.arity();
      int const             q = static_cast<int>(b.arity());
      std::vector<Morphism> out;
      std::vector<int>      delta(m + 1, 0);

      std::function<void(std::size_t)> choose_delta = [&](std::size_t k) {
        if (k <= m) {
          int lo = k == 0 ? 0 : delta[k - 1];
          for (int v = lo; v <= q; ++v) {
            delta[k] = v;
            choose_delta(k + 1);
          }
          return;
        }
        // block slots in (i, j) order
        std::vector<std::vector<Morphism> const*> choices;
        for (std::size_t i = 1; i <= m; ++i) {
          for (int j = delta[i - 1] + 1; j <= delta[i]; ++j) {
            choices.push_back(&hom(a.child(i - 1), b.child(static_cast<std::size_t>(j - 1))));
          }
        }
        for (auto const* c : choices) {
          if (c->empty()) {
            return;
          }
        }
        std::vector<std::size_t> idx(choices.size(), 0);
        while (true) {
          std::vector<Morphism> blocks;
          blocks.reserve(choices.size());
          for (std::size_t s = 0; s < choices.size(); ++s) {
            blocks.push_back((*choices[s])[idx[s]]);
          }
          out.push_back(MorphismAccess::make(a, b, delta, std::move(blocks)));
          std::size_t s = choices.size();
          while (s > 0) {
            --s;
            if (++idx[s] < choices[s]->size()) {
              break;
            }
            idx[s] = 0;
            if (s == 0) {
              return;
            }
          }
          if (choices.empty()) {
            return;
          }
        }
      };
      choose_delta(0);
      std::sort(out.begin(), out.end());
      return out;
    }

    struct HomCache {
      std::mutex                                                                   mtx;
      std::map<std::pair<Object, Object>, std::unique_ptr<std::vector<Morphism>>> table;
    };

    HomCache& hom_cache() {
      static HomCache cache;
      return cache;
    }

  }  // namespace

  std::vector<Morphism> const& hom(Object const& a, Object const& b) {
    auto& cache = hom_cache();
    auto  key   = std::make_pair(a, b);
    {
      std::lock_guard lock(cache.mtx);
      if (auto it = cache.table.find(key); it != cache.table.end()) {
        return *it->second;
      }
    }
    // computed unlocked: enumeration recurses into hom() for the blocks
    auto homs = std::make_unique<std::vector<Morphism>>(enumerate_hom(a, b));
    std::lock_guard lock(cache.mtx);
    auto [it, inserted] = cache.table.emplace(std::move(key), std::move(homs));
    return *it->second;
  }

  std::size_t hom_index(Morphism const& f) {
    auto const& h  = hom(f.source(), f.target());
    auto        it = std::lower_bound(h.begin(), h.end(), f);
    if (it == h.end() || *it != f) {
      throw Error("hom_index: morphism not found in its hom-set");
    }
    return static_cast<std::size_t>(it - h.begin());
  }

  ////////////////////////////////////////////////////////////////////////
  // Classification
  ////////////////////////////////////////////////////////////////////////

  namespace {

    // The family {f : c -> ?} is jointly monic.
    bool jointly_monic(Object const& c, std::vector<Morphism const*> const& family) {
      if (c.level() == 0 || c.arity() == 0) {
        return true;
      }
      if (family.empty()) {
        return false;
      }
      std::size_t const m = c.arity();
      for (std::size_t k = 1; k <= m; ++k) {
        bool separated = false;
        for (auto const* f : family) {
          if (f->delta()[k - 1] != f->delta()[k]) {
            separated = true;
            break;
          }
        }
        if (!separated) {
          return false;
        }
      }
      for (std::size_t k = 1; k <= m; ++k) {
        std::vector<Morphism const*> sub;
        for (auto const* f : family) {
          for (auto const& b : f->blocks_of(k)) {
            sub.push_back(&b);
          }
        }
        if (!jointly_monic(c.child(k - 1), sub)) {
          return false;
        }
      }
      return true;
    }

  }  // namespace

  bool is_mono(Morphism const& f) {
    return jointly_monic(f.source(), {&f});
  }

  std::vector<Morphism> sections(Morphism const& f) {
    std::vector<Morphism> out;
    Morphism const        id = identity(f.target());
    for (auto const& s : hom(f.target(), f.source())) {
      if (compose(f, s) == id) {
        out.push_back(s);
      }
    }
    return out;
  }

  bool is_split_epi(Morphism const& f) {
    Morphism const id = identity(f.target());
    for (auto const& s : hom(f.target(), f.source())) {
      if (compose(f, s) == id) {
        return true;
      }
    }
    return false;
  }

  Classification classify(Morphism const& f) {
    Classification c;
    c.mono      = is_mono(f);
    c.split_epi = is_split_epi(f);
    c.iso       = c.mono && c.split_epi;
    return c;
  }

  std::vector<Morphism> elementary_codegeneracies(Object const& a) {
    std::vector<Morphism> out;
    if (a.level() == 0 || a.arity() == 0) {
      return out;
    }
    std::size_t const m = a.arity();
    std::vector<int>  id_delta(m + 1);
    for (std::size_t k = 0; k <= m; ++k) {
      id_delta[k] = static_cast<int>(k);
    }
    // vertical
    for (std::size_t i = 0; i < m; ++i) {
      for (auto const& sigma : elementary_codegeneracies(a.child(i))) {
        std::vector<Object>   children(a.children().begin(), a.children().end());
        std::vector<Morphism> blocks;
        children[i] = sigma.target();
        for (std::size_t k = 0; k < m; ++k) {
          blocks.push_back(k == i ? sigma : identity(a.child(k)));
        }
        out.push_back(MorphismAccess::make(a, Object::make(a.level(), std::move(children)),
                                           id_delta, std::move(blocks)));
      }
    }
    // horizontal, only across a position without higher cells
    for (std::size_t i = 0; i < m; ++i) {
      if (!a.child(i).is_point()) {
        continue;
      }
      std::vector<Object> children;
      for (std::size_t k = 0; k < m; ++k) {
        if (k != i) {
          children.push_back(a.child(k));
        }
      }
      std::vector<int> delta(m + 1);
      for (std::size_t k = 0; k <= m; ++k) {
        delta[k] = static_cast<int>(k <= i ? k : k - 1);
      }
      std::vector<Morphism> blocks;
      for (std::size_t k = 0; k < m; ++k) {
        if (k != i) {
          blocks.push_back(identity(a.child(k)));
        }
      }
      out.push_back(MorphismAccess::make(a, Object::make(a.level(), std::move(children)),
                                         std::move(delta), std::move(blocks)));
    }
    return out;
  }

  EpiMono factor_epi_mono(Morphism const& f) {
    Morphism epi  = identity(f.source());
    Morphism rest = f;
    while (!is_mono(rest)) {
      bool found = false;
      for (auto const& tau : elementary_codegeneracies(rest.source())) {
        for (auto const& s : sections(tau)) {
          Morphism through = compose(rest, s);
          if (compose(through, tau) == rest) {
            epi   = compose(tau, epi);
            rest  = through;
            found = true;
            break;
          }
        }
        if (found) {
          break;
        }
      }
      if (!found) {
        throw Error("factor_epi_mono: " + rest.to_string()
                    + " is not mono but factors through no elementary codegeneracy");
      }
    }
    return {epi, rest};
  }

  ////////////////////////////////////////////////////////////////////////
  // Object enumeration
  ////////////////////////////////////////////////////////////////////////

  namespace {

    std::vector<Object> enumerate_objects(int level, int max_degree) {
      if (level == 0) {
        return {Object()};
      }
      std::vector<Object> out;
      std::vector<Object> children;
      std::function<void(int, int)> extend = [&](int remaining_arity, int budget) {
        if (remaining_arity == 0) {
          out.push_back(Object::make(level, children));
          return;
        }
        for (auto const& c : objects_up_to_degree(level - 1, budget)) {
          if (c.degree() > budget) {
            break;
          }
          children.push_back(c);
          extend(remaining_arity - 1, budget - c.degree());
          children.pop_back();
        }
      };
      for (int m = 0; m <= max_degree; ++m) {
        extend(m, max_degree - m);
      }
      std::sort(out.begin(), out.end(), [](Object const& x, Object const& y) {
        if (x.degree() != y.degree()) {
          return x.degree() < y.degree();
        }
        return x < y;
      });
      return out;
    }

  }  // namespace

  std::vector<Object> const& objects_up_to_degree(int level, int max_degree) {
    static std::mutex                                                    mtx;
    static std::map<std::pair<int, int>, std::unique_ptr<std::vector<Object>>> cache;
    if (level < 0 || max_degree < 0) {
      throw MalformedInput("objects_up_to_degree: negative argument");
    }
    auto key = std::make_pair(level, max_degree);
    {
      std::lock_guard lock(mtx);
      if (auto it = cache.find(key); it != cache.end()) {
        return *it->second;
      }
    }
    auto objs = std::make_unique<std::vector<Object>>(enumerate_objects(level, max_degree));
    std::lock_guard lock(mtx);
    auto [it, inserted] = cache.emplace(key, std::move(objs));
    return *it->second;
  }

  Object globe(int level, int k) {
    if (k < 0 || k > level) {
      throw MalformedInput("globe: need 0 <= k <= level");
    }
    if (k == 0) {
      return Object::point(level);
    }
    return Object::make(level, {globe(level - 1, k - 1)});
  }

}  // namespace theta
