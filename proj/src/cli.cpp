#include "theta/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "theta/json_io.hpp"
#include "theta/lifting.hpp"
#include "theta/random.hpp"

namespace theta {

  namespace {

    struct Config {
      int           n      = 1;
      int           degree = 2;
      std::uint64_t seed   = 1;
      std::size_t   count  = 10;
      std::string   format = "text";
      std::string   input;
    };

    struct Report {
      Json json;
      std::string text;
      bool        violation = false;
    };

    std::string read_file(std::string const& path) {
      std::ifstream in(path);
      if (!in) {
        throw MalformedInput("cannot read input file '" + path + "'");
      }
      std::ostringstream ss;
      ss << in.rdbuf();
      return ss.str();
    }

    Json window_json(Window const& w) {
      return {{"site", w.site().levels()}, {"degree", w.total_degree()},
              {"objects", w.objects().size()}};
    }

    std::size_t thread_count() {
      if (char const* env = std::getenv("THETA_CALC_THREADS")) {
        try {
          long const t = std::stol(env);
          if (t >= 1) {
            return static_cast<std::size_t>(std::min<long>(t, 64));
          }
        } catch (std::exception const&) {
        }
        throw MalformedInput("THETA_CALC_THREADS must be a positive integer");
      }
      return 1;
    }

    // Presheaf given either by a presentation file or a shape on Theta_n.
    Presheaf presheaf_input(Config const& c, std::string const& shape, Json* echo) {
      if (!c.input.empty()) {
        Presentation p = presentation_from_json(parse_json(read_file(c.input)));
        if (echo) {
          *echo = presentation_to_json(p);
        }
        return presented(std::move(p));
      }
      if (shape.empty()) {
        throw MalformedInput("give --input or a shape");
      }
      if (shape == "point") {
        return terminal_presheaf(Site({c.n}));
      }
      SiteObject const a{{parse_shape(shape, c.n)}};
      if (echo) {
        *echo = site_object_to_json(a);
      }
      return representable(Site({c.n}), a);
    }

    ////////////////////////////////////////////////////////////////////////
    // Subcommands
    ////////////////////////////////////////////////////////////////////////

    Report cmd_hom(Config const& c, std::string const& src, std::string const& dst) {
      Object const      a = parse_shape(src, c.n);
      Object const      b = parse_shape(dst, c.n);
      std::size_t const k = hom(a, b).size();
      Report            r;
      r.json = {{"command", "hom"}, {"n", c.n}, {"src", object_to_json(a)},
                {"dst", object_to_json(b)}, {"count", k}};
      r.text = std::to_string(k);
      return r;
    }

    Report cmd_eval(Config const& c, std::string const& shape) {
      Json           echo;
      Presheaf const P = presheaf_input(c, shape, &echo);
      Window const   w = Window::up_to(P.site(), c.degree);
      Report         r;
      Json           sizes = Json::array();
      for (auto const& d : w.objects()) {
        std::size_t const s = P.size(d);
        sizes.push_back({{"at", site_object_to_json(d)}, {"size", s}});
        r.text += d.to_string() + " " + std::to_string(s) + "\n";
      }
      if (auto bad = check_functoriality(P, w)) {
        r.violation = true;
        r.text += "functoriality fails: " + *bad + "\n";
      }
      r.json = {{"command", "eval"}, {"input", echo}, {"window", window_json(w)}, {"sizes", sizes},
                {"functorial", !r.violation}};
      return r;
    }

    SegalPreObject segal_input(Config const& c, std::string const& ua, std::string const& example,
                               Json& echo) {
      Site const inner({c.n});
      if (!ua.empty()) {
        Presheaf const A = presheaf_input(Config{c.n, c.degree, c.seed, c.count, c.format, ""}, ua,
                                          &echo);
        echo             = {{"ua", ua}};
        return nerve(UA(A));
      }
      if (example == "free-horn") {
        echo = {{"example", example}};
        return SegalPreObject(spine(inner, 2).object);
      }
      if (!example.empty()) {
        throw MalformedInput("unknown example '" + example + "'");
      }
      Presentation p = presentation_from_json(parse_json(read_file(c.input)));
      echo           = presentation_to_json(p);
      return SegalPreObject(presented(std::move(p)));
    }

    Report cmd_segal_check(Config const& c, std::string const& ua, std::string const& example,
                           std::size_t max_k) {
      Json                 echo;
      SegalPreObject const X = segal_input(c, ua, example, echo);
      Window const         w = Window::up_to(X.inner_site(), c.degree);
      bool const           discrete = X.check_discrete(w);
      SegalCheck const     s        = is_segal_strict(X, w, max_k);
      Report               r;
      r.violation = !(discrete && s.strict);
      r.json      = {{"command", "segal-check"}, {"input", echo}, {"window", window_json(w)},
                     {"max_k", max_k}, {"discrete0", discrete}, {"strict", s.strict}};
      if (!s.strict) {
        r.json["k"]       = s.k;
        r.json["witness"] = s.witness.value_or("");
      }
      r.text = std::string(r.violation ? "fail" : "pass")
               + (s.witness ? " k=" + std::to_string(s.k) + " " + *s.witness : "");
      return r;
    }

    Report latch_report(PresheafMap const& f, Json echo, std::size_t max_m, Window const& w) {
      CofibrationReport const rep = check_relative_latching(f, max_m, w);
      Report                  r;
      Json                    levels = Json::array();
      for (auto const& l : rep.levels) {
        Json e = {{"m", l.m}, {"latching_mono", l.mono}};
        if (l.witness) {
          e["witness"] = *l.witness;
        }
        levels.push_back(e);
        r.text += "m=" + std::to_string(l.m) + (l.mono ? " mono" : " NOT mono") + "\n";
      }
      r.violation = !rep.all_mono;
      r.json = {{"command", "latch-check"}, {"input", echo}, {"window", window_json(w)},
                {"max_m", max_m}, {"levels", levels}, {"all_mono", rep.all_mono}};
      return r;
    }

    // Inclusion of the subpresheaf generated by the listed cells.
    PresheafMap sub_inclusion(Presentation const& p, std::vector<std::string> const& ids) {
      Presheaf const Y = presented(p);
      auto const     g = generators(Y);
      std::vector<std::pair<SiteObject, Elem>> gens;
      for (auto const& id : ids) {
        auto it = std::find(p.ids.begin(), p.ids.end(), id);
        if (it == p.ids.end()) {
          throw MalformedInput("unknown cell id '" + id + "'");
        }
        std::size_t const k = static_cast<std::size_t>(it - p.ids.begin());
        gens.emplace_back(p.shapes[k], g->elements[k]);
      }
      if (gens.empty()) {
        return from_empty(Y);
      }
      return generated_subpresheaf(Y, gens, "sub").inclusion;
    }

    Report cmd_latch_check(Config const& c, std::size_t max_m) {
      Json const j = parse_json(read_file(c.input));
      if (!j.contains("target") || !j.contains("sub")) {
        throw MalformedInput("latch-check input needs \"target\" and \"sub\"");
      }
      Presentation const p = presentation_from_json(j.at("target"));
      if (p.site.arity() < 2 || p.site.level(0) != 1) {
        throw SiteMismatch("latch-check needs a site whose first factor is Delta");
      }
      auto const ids = j.at("sub").get<std::vector<std::string>>();
      return latch_report(sub_inclusion(p, ids), {{"target", presentation_to_json(p)}, {"sub", ids}},
                          max_m, Window::up_to(p.site.tail(), c.degree));
    }

    ////////////////////////////////////////////////////////////////////////
    // Randomized suites
    ////////////////////////////////////////////////////////////////////////

    struct Instance {
      bool        pass = true;
      Json        replay;
      std::string detail;
    };
    using Suite = std::function<Instance(Rng&, Config const&)>;

    Json map_replay(Presentation const& s, Presentation const& t, std::vector<Elem> const& images) {
      return {{"source", presentation_to_json(s)}, {"target", presentation_to_json(t)},
              {"generator_images", images}};
    }

    Instance suite_laws(Rng& rng, Config const& c) {
      int const      n = std::max(c.n, 1);
      Object const   a = random_object(n, c.degree + 2, rng);
      Object const   b = random_object(n, c.degree + 2, rng);
      Object const   d = random_object(n, c.degree + 2, rng);
      Object const   e = random_object(n, c.degree + 2, rng);
      Morphism const f = random_morphism(a, b, rng);
      Morphism const g = random_morphism(b, d, rng);
      Morphism const h = random_morphism(d, e, rng);
      Instance       r;
      r.pass = compose(compose(h, g), f) == compose(h, compose(g, f)) && compose(identity(b), f) == f
               && compose(f, identity(a)) == f;
      r.replay = {{"f", morphism_to_json(f)}, {"g", morphism_to_json(g)}, {"h", morphism_to_json(h)},
                  {"objects", {object_to_json(a), object_to_json(b), object_to_json(d),
                               object_to_json(e)}}};
      return r;
    }

    Instance suite_yoneda(Rng& rng, Config const& c) {
      Site const         site({std::max(c.n, 1)});
      Presentation const p = random_presentation(site, RandomSpec{1, 3, c.degree, 2, {}}, rng);
      Presheaf const     X = presented(p);
      SiteObject const   a = random_site_object(site, c.degree, rng);
      HomSet const       hs = hom_set(representable(site, a), X);
      std::set<Elem>     seen;
      for (auto const& m : hs.maps) {
        seen.insert(m.at(0));
      }
      Instance r;
      r.pass   = hs.size() == X.size(a) && seen.size() == hs.size();
      r.replay = {{"presheaf", presentation_to_json(p)}, {"at", site_object_to_json(a)}};
      r.detail = std::to_string(hs.size()) + " maps vs " + std::to_string(X.size(a)) + " elements";
      return r;
    }

    Instance suite_latching(Rng& rng, Config const& c) {
      Site const         inner({1, std::max(c.n, 1)});
      Presentation const p = random_presentation(outer_site(inner), RandomSpec{1, 4, 3, 2, {}}, rng);
      std::vector<std::string> ids;
      for (auto const& id : p.ids) {
        if (rng() % 2 == 0) {
          ids.push_back(id);
        }
      }
      Report const rep = latch_report(sub_inclusion(p, ids), {}, 3, Window::up_to(inner, 2));
      Instance     r;
      r.pass   = !rep.violation;
      r.replay = {{"target", presentation_to_json(p)}, {"sub", ids}};
      return r;
    }

    Instance suite_reduction(Rng& rng, Config const& c) {
      Site const         site = outer_site(Site({1}));
      RandomSpec const   spec{1, 3, c.degree, 2, {}};
      Presentation const px = random_presentation(site, spec, rng);
      Presentation const py = random_presentation(site, spec, rng);
      Presheaf const     X  = presented(px);
      Presheaf const     Y  = reduction(presented(py)).reduced;
      Reduction const    rx = reduction(X);
      std::size_t const  a  = count_homs(rx.reduced, Y);
      std::size_t const  b  = count_homs(X, Y);
      Instance           r;
      r.pass   = a == b;
      r.replay = {{"X", presentation_to_json(px)}, {"Y_before_reduction", presentation_to_json(py)}};
      r.detail = std::to_string(a) + " vs " + std::to_string(b);
      return r;
    }

    Instance suite_segal(Rng& rng, Config const& c) {
      Site const                     inner({1, std::max(c.n, 1)});
      std::size_t const              n  = 1 + uniform_index(rng, 3);
      auto const                     le = random_preorder(n, rng);
      Monoid const                   M  = random_monoid(inner, rng);
      SegalPreObject const           X  = nerve(preorder_category(le, M));
      SegalCheck const               s  = is_segal_strict(X, Window::up_to(inner, 1), 3);
      Instance                       r;
      r.pass   = s.strict;
      r.replay = {{"preorder", le}, {"monoid", M.label}};
      r.detail = s.witness.value_or("");
      return r;
    }

    Instance suite_rlp(Rng& rng, Config const&) {
      static auto const  family = css_acyclic(CssBounds{2, 1, 2});
      Site const         delta({1});
      RandomSpec const   spec{1, 3, 2, 1, {}};
      Presentation const ps = random_presentation(delta, spec, rng);
      Presentation const pt = random_presentation(delta, spec, rng);
      Instance           r;
      auto const         g = random_map(presented(ps), presented(pt), rng);
      if (!g) {
        r.detail = "no maps";
        return r;
      }
      FamilyRlp const fr = has_rlp_family(css_discrete(*g), family);
      r.pass             = fr.all;
      r.replay           = map_replay(ps, pt, generator_images(*g));
      r.detail           = fr.all ? "" : fr.failures.front();
      return r;
    }

    Instance suite_roundtrip(Rng& rng, Config const& c) {
      Site const         site({1, std::max(c.n, 1)});
      Presentation const p  = random_presentation(site, RandomSpec{1, 4, c.degree, 2, {}}, rng);
      Json const         j1 = presentation_to_json(p);
      Presentation const q  = presentation_from_json(parse_json(j1.dump()));
      Json const         j2 = presentation_to_json(q);
      Window const       w  = Window::up_to(site, c.degree);
      Instance           r;
      r.pass   = j1 == j2 && total_size(presented(p), w) == total_size(presented(q), w);
      r.replay = j1;
      return r;
    }

    std::vector<std::pair<std::string, Suite>> const& suites() {
      static std::vector<std::pair<std::string, Suite>> const s = {
          {"laws", suite_laws},           {"yoneda", suite_yoneda}, {"latching", suite_latching},
          {"reduction", suite_reduction}, {"segal", suite_segal},   {"rlp", suite_rlp},
          {"roundtrip", suite_roundtrip}};
      return s;
    }

    // Instance i of a suite draws from its own stream, so sharding does not
    // change the results.
    std::vector<Instance> run_suite(Suite const& suite, std::size_t suite_index, Config const& c) {
      std::vector<Instance> out(c.count);
      std::size_t const     threads = std::min(thread_count(), std::max<std::size_t>(c.count, 1));
      auto                  work    = [&](std::size_t t) {
        for (std::size_t i = t; i < c.count; i += threads) {
          Rng rng(c.seed * 1000003u + suite_index * 7919u + i);
          try {
            out[i] = suite(rng, c);
          } catch (Error const& e) {
            out[i] = {false, Json{{"stream", {c.seed, suite_index, i}}}, e.what()};
          }
        }
      };
      if (threads <= 1) {
        work(0);
      } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < threads; ++t) {
          pool.emplace_back(work, t);
        }
        for (auto& th : pool) {
          th.join();
        }
      }
      return out;
    }

    Report cmd_fuzz(Config const& c, std::string const& which) {
      Report r;
      Json   all = Json::array();
      bool   any = false;
      for (std::size_t k = 0; k < suites().size(); ++k) {
        auto const& [name, suite] = suites()[k];
        if (which != "all" && which != name) {
          continue;
        }
        any                = true;
        auto const results = run_suite(suite, k, c);
        Json       failures = Json::array();
        for (std::size_t i = 0; i < results.size(); ++i) {
          if (!results[i].pass) {
            failures.push_back(
                {{"index", i}, {"instance", results[i].replay}, {"detail", results[i].detail}});
          }
        }
        r.violation = r.violation || !failures.empty();
        r.text += name + ": " + std::to_string(results.size() - failures.size()) + "/"
                  + std::to_string(results.size()) + " pass\n";
        for (auto const& f : failures) {
          r.text += "  failure " + f.dump() + "\n";
        }
        all.push_back({{"suite", name}, {"instances", results.size()}, {"failures", failures}});
      }
      if (!any) {
        throw MalformedInput("unknown suite '" + which + "'");
      }
      r.json = {{"command", "fuzz"}, {"n", c.n}, {"degree", c.degree}, {"seed", c.seed},
                {"count", c.count}, {"suites", all}, {"ok", !r.violation}};
      return r;
    }

    Report cmd_lift(Config const& c, std::string const& suite, CssBounds const& b) {
      Report r;
      Json   instances = Json::array();
      std::size_t failures = 0;
      if (suite == "discrete-n1") {
        auto const family = css_acyclic(b);
        for (std::size_t i = 0; i < c.count; ++i) {
          Rng                rng(c.seed * 1000003u + i);
          RandomSpec const   spec{1, 3, 2, 1, {}};
          Presentation const ps = random_presentation(Site({1}), spec, rng);
          Presentation const pt = random_presentation(Site({1}), spec, rng);
          auto const         g  = random_map(presented(ps), presented(pt), rng);
          if (!g) {
            continue;
          }
          FamilyRlp const fr = has_rlp_family(css_discrete(*g), family);
          failures += fr.all ? 0 : 1;
          Json e = {{"index", i}, {"rlp", fr.all}};
          if (!fr.all) {
            e["failed_members"] = fr.failures;
            e["instance"]       = map_replay(ps, pt, generator_images(*g));
          }
          instances.push_back(e);
        }
        r.json = {{"command", "lift"}, {"suite", suite}, {"family_size", family.size()},
                  {"bounds", {{"max_m", b.max_m}, {"max_p", b.max_p}, {"e_degree", b.e_degree}}},
                  {"window", window_json(Window::bounded(css_site(),
                                                          {static_cast<int>(b.max_m),
                                                           std::max(static_cast<int>(b.max_p), b.e_degree)},
                                                          static_cast<int>(b.max_m) + b.e_degree))}};
      } else if (suite == "surjective") {
        Site const   inner({1});
        FamilyBounds fb;
        fb.max_p        = 0;
        fb.inner_degree = 0;
        FamilyMember const i = family_If(inner, fb).front();
        Window const       w = Window::up_to(inner, c.degree);
        for (std::size_t k = 0; k < c.count; ++k) {
          Rng                rng(c.seed * 1000003u + k);
          RandomSpec const   spec{1, 3, 2, 2, {}};
          Presentation const px = random_presentation(outer_site(inner), spec, rng);
          Presentation const py = random_presentation(outer_site(inner), spec, rng);
          Presheaf const     X  = presented(px);
          Presheaf const     Y  = presented(py);
          auto const         g  = random_map(X, Y, rng);
          if (!g) {
            continue;
          }
          PresheafMap const f   = reduce_map(*g, reduction(X), reduction(Y));
          bool const        s   = is_epi_map(level(f, 0), w);
          RlpResult const   rl  = has_rlp(f, i.map);
          bool const        agree = rl.rlp == s;
          failures += agree ? 0 : 1;
          Json e = {{"index", k}, {"rlp", rl.rlp}, {"surjective_at_0", s}};
          if (rl.witness) {
            e["witness_square"] = {{"top", rl.witness->top}, {"bottom", rl.witness->bottom}};
          }
          if (!agree) {
            e["instance"] = map_replay(px, py, generator_images(*g));
          }
          instances.push_back(e);
        }
        r.json = {{"command", "lift"}, {"suite", suite}, {"problem", i.label},
                  {"window", window_json(w)}};
      } else {
        throw MalformedInput("unknown lift suite '" + suite + "'");
      }
      r.json["seed"]      = c.seed;
      r.json["instances"] = instances;
      r.json["failures"]  = failures;
      r.violation         = failures > 0;
      r.text = suite + ": " + std::to_string(instances.size() - failures) + "/"
               + std::to_string(instances.size()) + " pass";
      return r;
    }

    Report cmd_reduce(Config const& c, std::string const& example, std::size_t max_p) {
      Report r;
      if (example == "counterexample") {
        FamilyMember const m = reduction_counterexample(Site({1}));
        SiteObject const   v = outer_object(0, Site({1}).terminal());
        r.json = {{"command", "reduce"}, {"example", example}, {"map", m.label},
                  {"source_level0", m.map.source().size(v)}, {"target_level0", m.map.target().size(v)},
                  {"mono", m.mono}};
        r.text = m.label + ": " + std::to_string(m.map.source().size(v)) + " -> "
                 + std::to_string(m.map.target().size(v)) + (m.mono ? " mono" : " not mono");
        return r;
      }
      if (!example.empty()) {
        throw MalformedInput("unknown example '" + example + "'");
      }
      Presentation p = presentation_from_json(parse_json(read_file(c.input)));
      if (p.site.arity() < 2 || p.site.level(0) != 1) {
        throw SiteMismatch("reduce needs a site whose first factor is Delta");
      }
      Json const      echo = presentation_to_json(p);
      Reduction const rx   = reduction(presented(std::move(p)));
      Site const      inner = rx.reduced.site().tail();
      Window const    w     = Window::up_to(inner, c.degree);
      Json            levels = Json::array();
      for (std::size_t q = 0; q <= max_p; ++q) {
        Presheaf const L = level(rx.reduced, q);
        std::size_t    t = total_size(L, w);
        levels.push_back({{"p", q}, {"total", t}});
        r.text += "level " + std::to_string(q) + ": " + std::to_string(t) + "\n";
      }
      r.json = {{"command", "reduce"}, {"input", echo}, {"window", window_json(w)},
                {"components", rx.components.count}, {"levels", levels}};
      return r;
    }

    Report cmd_nerve(Config const& c, std::string const& ua, std::string const& preorder,
                     std::string const& monoid, std::size_t max_p) {
      Site const       inner({c.n});
      Window const     w = Window::up_to(inner, c.degree);
      EnrichedCategory C;
      Json             echo;
      if (!ua.empty()) {
        C    = UA(presheaf_input(Config{c.n, c.degree, c.seed, c.count, c.format, ""}, ua, nullptr));
        echo = {{"ua", ua}};
      } else {
        Json const le_json = parse_json(preorder.empty() ? "[[true]]" : preorder);
        auto const le      = le_json.get<std::vector<std::vector<bool>>>();
        Monoid     M       = trivial_monoid(inner);
        if (monoid.rfind("Z/", 0) == 0) {
          M = cyclic_monoid(inner, std::stoul(monoid.substr(2)));
        } else if (monoid.rfind("max", 0) == 0) {
          M = max_monoid(inner, std::stoul(monoid.substr(3)));
        } else if (monoid != "1" && !monoid.empty()) {
          throw MalformedInput("monoid must be 1, Z/k or maxk");
        }
        C    = preorder_category(le, M);
        echo = {{"preorder", le_json}, {"monoid", M.label}};
      }
      if (auto bad = C.check_axioms(w)) {
        throw PreconditionFailed("not a category: " + *bad);
      }
      SegalPreObject const N = nerve(C);
      Json                 levels = Json::array();
      for (std::size_t p = 0; p <= max_p; ++p) {
        Json sizes = Json::array();
        for (auto const& th : w.objects()) {
          sizes.push_back({{"at", site_object_to_json(th)}, {"size", N.level(p).size(th)}});
        }
        levels.push_back({{"p", p}, {"sizes", sizes}});
      }
      SegalCheck const s = is_segal_strict(N, w, std::max<std::size_t>(max_p, 2));
      Report           r;
      r.json = {{"command", "nerve"}, {"input", echo}, {"window", window_json(w)},
                {"objects", C.objects()}, {"levels", levels}, {"strict", s.strict}};
      r.violation = !s.strict;
      for (auto const& l : levels) {
        r.text += "p=" + l["p"].dump() + ":";
        for (auto const& e : l["sizes"]) {
          r.text += " " + e["size"].dump();
        }
        r.text += "\n";
      }
      r.text += s.strict ? "strict" : "not strict";
      return r;
    }

    Report cmd_roundtrip(Config const& c) {
      Json const         j1 = parse_json(read_file(c.input));
      Presentation const p  = presentation_from_json(j1);
      Json const         j2 = presentation_to_json(p);
      Presentation const q  = presentation_from_json(j2);
      Json const         j3 = presentation_to_json(q);
      Window const       w  = Window::up_to(p.site, c.degree);
      bool const same = j2 == j3 && total_size(presented(p), w) == total_size(presented(q), w);
      Report     r;
      r.violation = !same;
      r.json      = {{"command", "roundtrip"}, {"window", window_json(w)}, {"stable", same},
                     {"canonical", j2}};
      r.text      = j2.dump(2);
      return r;
    }

  }  // namespace

  CliResult run_cli(std::vector<std::string> const& args) {
    CLI::App app{"Computations with presheaves on Theta_n and Segal objects", "theta_calc"};
    app.require_subcommand(1);
    Config c;
    app.add_option("--n", c.n, "Theta level")->check(CLI::Range(0, 4));
    app.add_option("--degree", c.degree, "window degree bound")->check(CLI::Range(0, 12));
    app.add_option("--seed", c.seed, "random seed");
    app.add_option("--count", c.count, "instances per randomized suite")->check(CLI::PositiveNumber);
    app.add_option("--format", c.format, "output format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--input", c.input, "JSON input file");
    app.fallthrough();

    std::string src, dst, shape, ua, example, suite = "all", lift_suite = "discrete-n1";
    std::string preorder, monoid = "1";
    std::size_t max_k = 3, max_m = 3, max_p = 3;
    CssBounds   cb;

    auto* hom_cmd = app.add_subcommand("hom", "count maps between Theta_n objects");
    hom_cmd->add_option("--src", src)->required();
    hom_cmd->add_option("--dst", dst)->required();
    auto* eval_cmd = app.add_subcommand("eval", "sizes of a presheaf over a window");
    eval_cmd->add_option("--shape", shape, "representable of this shape, or 'point'");
    auto* segal_cmd = app.add_subcommand("segal-check", "strict Segal condition");
    segal_cmd->add_option("--ua", ua, "nerve of UA(A), A a shape or 'point'");
    segal_cmd->add_option("--example", example, "free-horn");
    segal_cmd->add_option("--max-k", max_k);
    auto* latch_cmd = app.add_subcommand("latch-check", "relative latching maps of an inclusion");
    latch_cmd->add_option("--max-m", max_m);
    auto* lift_cmd = app.add_subcommand("lift", "lifting suites");
    lift_cmd->add_option("--suite", lift_suite)->check(CLI::IsMember({"discrete-n1", "surjective"}));
    lift_cmd->add_option("--max-m", cb.max_m);
    lift_cmd->add_option("--max-p", cb.max_p);
    lift_cmd->add_option("--e-degree", cb.e_degree);
    auto* reduce_cmd = app.add_subcommand("reduce", "reduction of an outer-simplicial diagram");
    reduce_cmd->add_option("--example", example, "counterexample");
    reduce_cmd->add_option("--max-p", max_p);
    auto* nerve_cmd = app.add_subcommand("nerve", "level sizes of a nerve");
    nerve_cmd->add_option("--ua", ua);
    nerve_cmd->add_option("--preorder", preorder, "JSON boolean matrix");
    nerve_cmd->add_option("--monoid", monoid, "1, Z/k or maxk");
    nerve_cmd->add_option("--max-p", max_p);
    auto* rt_cmd   = app.add_subcommand("roundtrip", "parse and re-emit a presentation");
    auto* fuzz_cmd = app.add_subcommand("fuzz", "randomized property suites");
    fuzz_cmd->add_option("--suite", suite);

    CliResult res;
    try {
      std::vector<std::string> rev(args.rbegin(), args.rend());
      app.parse(rev);
    } catch (CLI::CallForHelp const&) {
      res.output = app.help();
      return res;
    } catch (CLI::ParseError const& e) {
      res.code  = 2;
      res.error = e.what();
      return res;
    }

    try {
      Report r;
      if (hom_cmd->parsed()) {
        r = cmd_hom(c, src, dst);
      } else if (eval_cmd->parsed()) {
        r = cmd_eval(c, shape);
      } else if (segal_cmd->parsed()) {
        r = cmd_segal_check(c, ua, example, max_k);
      } else if (latch_cmd->parsed()) {
        r = cmd_latch_check(c, max_m);
      } else if (lift_cmd->parsed()) {
        r = cmd_lift(c, lift_suite, cb);
      } else if (reduce_cmd->parsed()) {
        r = cmd_reduce(c, example, max_p);
      } else if (nerve_cmd->parsed()) {
        r = cmd_nerve(c, ua, preorder, monoid, max_p);
      } else if (rt_cmd->parsed()) {
        r = cmd_roundtrip(c);
      } else if (fuzz_cmd->parsed()) {
        r = cmd_fuzz(c, suite);
      }
      res.output = (c.format == "json" ? r.json.dump(2) : r.text);
      if (!res.output.empty() && res.output.back() != '\n') {
        res.output += '\n';
      }
      res.code = r.violation ? 1 : 0;
    } catch (MalformedInput const& e) {
      res.code  = 2;
      res.error = std::string("malformed input: ") + e.what();
    } catch (SiteMismatch const& e) {
      res.code  = 2;
      res.error = std::string("site mismatch: ") + e.what();
    } catch (WindowTooSmall const& e) {
      res.code  = 2;
      res.error = std::string("window too small: ") + e.what();
    } catch (Error const& e) {
      res.code  = 2;
      res.error = e.what();
    } catch (nlohmann::json::exception const& e) {
      res.code  = 2;
      res.error = std::string("malformed input: ") + e.what();
    }
    return res;
  }

}  // namespace theta
