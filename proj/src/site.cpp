#include "theta/site.hpp"

#include <algorithm>
#include <functional>

#include "theta/detail/memo.hpp"

namespace theta {

  ////////////////////////////////////////////////////////////////////////
  // Tuples
  ////////////////////////////////////////////////////////////////////////

  int SiteObject::degree() const noexcept {
    int d = 0;
    for (auto const& p : parts) {
      d += p.degree();
    }
    return d;
  }

  std::size_t SiteObject::hash() const noexcept {
    std::size_t h = parts.size();
    for (auto const& p : parts) {
      h ^= p.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }

  std::string SiteObject::to_string() const {
    if (parts.size() == 1) {
      return parts[0].to_string();
    }
    std::string s = "(";
    for (std::size_t i = 0; i < parts.size(); ++i) {
      s += (i ? ";" : "") + parts[i].to_string();
    }
    return s + ")";
  }

  std::strong_ordering operator<=>(SiteObject const& a, SiteObject const& b) noexcept {
    return std::lexicographical_compare_three_way(a.parts.begin(), a.parts.end(),
                                                  b.parts.begin(), b.parts.end());
  }

  SiteObject SiteMorphism::source() const {
    SiteObject o;
    o.parts.reserve(parts.size());
    for (auto const& p : parts) {
      o.parts.push_back(p.source());
    }
    return o;
  }

  SiteObject SiteMorphism::target() const {
    SiteObject o;
    o.parts.reserve(parts.size());
    for (auto const& p : parts) {
      o.parts.push_back(p.target());
    }
    return o;
  }

  std::string SiteMorphism::to_string() const {
    if (parts.size() == 1) {
      return parts[0].to_string();
    }
    std::string s = "(";
    for (std::size_t i = 0; i < parts.size(); ++i) {
      s += (i ? ";" : "") + parts[i].to_string();
    }
    return s + ")";
  }

  std::strong_ordering operator<=>(SiteMorphism const& a, SiteMorphism const& b) noexcept {
    return std::lexicographical_compare_three_way(a.parts.begin(), a.parts.end(),
                                                  b.parts.begin(), b.parts.end());
  }

  SiteMorphism identity(SiteObject const& a) {
    SiteMorphism f;
    f.parts.reserve(a.parts.size());
    for (auto const& p : a.parts) {
      f.parts.push_back(identity(p));
    }
    return f;
  }

  SiteMorphism compose(SiteMorphism const& g, SiteMorphism const& f) {
    if (g.parts.size() != f.parts.size()) {
      throw SiteMismatch("compose: tuples of different length");
    }
    SiteMorphism h;
    h.parts.reserve(f.parts.size());
    for (std::size_t i = 0; i < f.parts.size(); ++i) {
      h.parts.push_back(compose(g.parts[i], f.parts[i]));
    }
    return h;
  }

  SiteObject concat(SiteObject const& a, SiteObject const& b) {
    SiteObject o = a;
    o.parts.insert(o.parts.end(), b.parts.begin(), b.parts.end());
    return o;
  }

  SiteMorphism concat(SiteMorphism const& a, SiteMorphism const& b) {
    SiteMorphism f = a;
    f.parts.insert(f.parts.end(), b.parts.begin(), b.parts.end());
    return f;
  }

  ////////////////////////////////////////////////////////////////////////
  // Site
  ////////////////////////////////////////////////////////////////////////

  Site::Site(std::vector<int> levels) : levels_(std::move(levels)) {
    if (levels_.empty()) {
      throw MalformedInput("a site needs at least one factor");
    }
    for (int l : levels_) {
      if (l < 0) {
        throw MalformedInput("negative level in site");
      }
    }
  }

  SiteObject Site::terminal() const {
    SiteObject o;
    for (int l : levels_) {
      o.parts.push_back(Object::point(l));
    }
    return o;
  }

  void Site::check(SiteObject const& o) const {
    if (o.parts.size() != levels_.size()) {
      throw SiteMismatch("object " + o.to_string() + " does not belong to site " + to_string());
    }
    for (std::size_t i = 0; i < levels_.size(); ++i) {
      if (o.parts[i].level() != levels_[i]) {
        throw SiteMismatch("object " + o.to_string() + " does not belong to site " + to_string());
      }
    }
  }

  Site Site::concat(Site const& other) const {
    std::vector<int> l = levels_;
    l.insert(l.end(), other.levels_.begin(), other.levels_.end());
    return Site(std::move(l));
  }

  Site Site::tail() const {
    return Site(std::vector<int>(levels_.begin() + 1, levels_.end()));
  }

  Site Site::permuted(std::vector<std::size_t> const& perm) const {
    if (perm.size() != levels_.size()) {
      throw SiteMismatch("permutation of the wrong length");
    }
    std::vector<int> l;
    for (auto k : perm) {
      l.push_back(levels_.at(k));
    }
    return Site(std::move(l));
  }

  std::string Site::to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < levels_.size(); ++i) {
      s += (i ? "," : "") + std::to_string(levels_[i]);
    }
    return s + ")";
  }

  ////////////////////////////////////////////////////////////////////////
  // Hom-sets
  ////////////////////////////////////////////////////////////////////////

  std::size_t hom_size(SiteObject const& a, SiteObject const& b) {
    if (a.parts.size() != b.parts.size()) {
      throw SiteMismatch("hom between tuples of different length");
    }
    std::size_t n = 1;
    for (std::size_t i = 0; i < a.parts.size(); ++i) {
      n *= hom(a.parts[i], b.parts[i]).size();
    }
    return n;
  }

  SiteMorphism hom_at(SiteObject const& a, SiteObject const& b, std::size_t index) {
    std::size_t const r = a.parts.size();
    SiteMorphism      f;
    f.parts.resize(r, Morphism::trivial());
    for (std::size_t i = r; i-- > 0;) {
      auto const& h = hom(a.parts[i], b.parts[i]);
      f.parts[i]    = h[index % h.size()];
      index /= h.size();
    }
    return f;
  }

  std::size_t hom_index(SiteMorphism const& f) {
    std::size_t index = 0;
    for (auto const& p : f.parts) {
      index = index * hom(p.source(), p.target()).size() + hom_index(p);
    }
    return index;
  }

  namespace {

    struct PairHash {
      std::size_t operator()(std::pair<SiteObject, SiteObject> const& p) const noexcept {
        return p.first.hash() * 31 + p.second.hash();
      }
    };

  }  // namespace

  std::vector<SiteMorphism> const& hom(SiteObject const& a, SiteObject const& b) {
    static detail::Memo<std::pair<SiteObject, SiteObject>, std::vector<SiteMorphism>,
                        std::unordered_map<std::pair<SiteObject, SiteObject>,
                                           std::shared_ptr<std::vector<SiteMorphism> const>,
                                           PairHash>>
        memo;
    // entries are never evicted, so the reference outlives the shared_ptr
    return *memo.get({a, b}, [&] {
      std::vector<SiteMorphism> out;
      std::size_t const         n = hom_size(a, b);
      out.reserve(n);
      for (std::size_t k = 0; k < n; ++k) {
        out.push_back(hom_at(a, b, k));
      }
      return out;
    });
  }

  bool is_mono(SiteMorphism const& f) {
    return std::all_of(f.parts.begin(), f.parts.end(),
                       [](Morphism const& p) { return is_mono(p); });
  }

  bool is_split_epi_cached(Morphism const& f) {
    static detail::OrderedMemo<Morphism, bool> memo;
    return *memo.get(f, [&] { return is_split_epi(f); });
  }

  bool is_split_epi(SiteMorphism const& f) {
    return std::all_of(f.parts.begin(), f.parts.end(),
                       [](Morphism const& p) { return is_split_epi_cached(p); });
  }

  std::vector<Codegeneracy> const& elementary_codegeneracies(SiteObject const& a) {
    static detail::Memo<SiteObject, std::vector<Codegeneracy>> memo;
    return *memo.get(a, [&] {
      std::vector<Codegeneracy> out;
      SiteMorphism const        id = identity(a);
      for (std::size_t i = 0; i < a.parts.size(); ++i) {
        for (auto const& tau : elementary_codegeneracies(a.parts[i])) {
          auto secs = sections(tau);
          if (secs.empty()) {
            throw Error("elementary codegeneracy without a section: " + tau.to_string());
          }
          Codegeneracy c{id, id};
          c.epi.parts[i]     = tau;
          c.section.parts[i] = secs.front();
          out.push_back(std::move(c));
        }
      }
      return out;
    });
  }

  std::vector<SiteMorphism> const& monos_into(SiteObject const& a) {
    static detail::Memo<SiteObject, std::vector<SiteMorphism>> memo;
    return *memo.get(a, [&] {
      std::vector<std::vector<Morphism>> per_factor;
      for (auto const& p : a.parts) {
        std::vector<Morphism> monos;
        for (auto const& d : objects_up_to_degree(p.level(), p.degree())) {
          for (auto const& f : hom(d, p)) {
            if (is_mono(f)) {
              monos.push_back(f);
            }
          }
        }
        per_factor.push_back(std::move(monos));
      }
      std::vector<SiteMorphism> out;
      SiteMorphism              cur;
      cur.parts.resize(a.parts.size(), Morphism::trivial());
      std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == a.parts.size()) {
          out.push_back(cur);
          return;
        }
        for (auto const& m : per_factor[i]) {
          cur.parts[i] = m;
          rec(i + 1);
        }
      };
      rec(0);
      std::stable_sort(out.begin(), out.end(), [](SiteMorphism const& x, SiteMorphism const& y) {
        int dx = x.source().degree();
        int dy = y.source().degree();
        if (dx != dy) {
          return dx > dy;
        }
        return x < y;
      });
      return out;
    });
  }

  SiteEpiMono factor_epi_mono(SiteMorphism const& f) {
    SiteEpiMono r;
    for (auto const& p : f.parts) {
      auto em = factor_epi_mono(p);
      r.epi.parts.push_back(em.epi);
      r.mono.parts.push_back(em.mono);
    }
    return r;
  }

  ////////////////////////////////////////////////////////////////////////
  // Window
  ////////////////////////////////////////////////////////////////////////

  Window Window::up_to(Site const& site, int total_degree) {
    return bounded(site, std::vector<int>(site.arity(), total_degree), total_degree);
  }

  Window Window::bounded(Site const& site, std::vector<int> factor_bounds, int total_degree) {
    if (factor_bounds.size() != site.arity()) {
      throw MalformedInput("window: one bound per site factor required");
    }
    Window w;
    w.site_   = site;
    w.bounds_ = std::move(factor_bounds);
    w.total_  = total_degree;
    SiteObject                        cur;
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int budget) {
      if (i == site.arity()) {
        w.objects_.push_back(cur);
        return;
      }
      int const cap = std::min(budget, w.bounds_[i]);
      if (cap < 0) {
        return;
      }
      for (auto const& o : objects_up_to_degree(site.level(i), cap)) {
        cur.parts.push_back(o);
        rec(i + 1, budget - o.degree());
        cur.parts.pop_back();
      }
    };
    rec(0, total_degree);
    std::stable_sort(w.objects_.begin(), w.objects_.end(),
                     [](SiteObject const& x, SiteObject const& y) {
                       if (x.degree() != y.degree()) {
                         return x.degree() < y.degree();
                       }
                       return x < y;
                     });
    return w;
  }

  bool Window::contains(SiteObject const& o) const {
    if (o.parts.size() != site_.arity() || o.degree() > total_) {
      return false;
    }
    for (std::size_t i = 0; i < o.parts.size(); ++i) {
      if (o.parts[i].level() != site_.level(i) || o.parts[i].degree() > bounds_[i]) {
        return false;
      }
    }
    return true;
  }

  std::string Window::to_string() const {
    std::string s = "site " + site_.to_string() + ", degree <= " + std::to_string(total_);
    bool uniform = std::all_of(bounds_.begin(), bounds_.end(), [&](int b) { return b >= total_; });
    if (!uniform) {
      s += ", factor bounds (";
      for (std::size_t i = 0; i < bounds_.size(); ++i) {
        s += (i ? "," : "") + std::to_string(bounds_[i]);
      }
      s += ")";
    }
    return s;
  }

}  // namespace theta
