#include "slat/gomega.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace slat {

  GExtension const& g() {
    static GExtension const ext{LOmegaOps{}};
    return ext;
  }

  GElem g_gen(int i, GeneratorId const& xi) {
    return g().lift(l_gen(i, xi));
  }

  GElem g_zero() {
    return g().zero();
  }

  GElem g_one() {
    return g().lift(PairElem::top());
  }

  GElem g_lift(PairElem const& p) {
    return g().lift(p);
  }

  GeneratorSet support(GElem const& x) {
    GeneratorSet out;
    for (auto const& p : constituent_values(x)) {
      auto s = l_support(p);
      out.insert(out.end(), s.begin(), s.end());
    }
    return make_generator_set(std::move(out));
  }

  bool in_G(GElem const& x, GeneratorSet const& xs) {
    auto s = support(x);
    return std::includes(xs.begin(), xs.end(), s.begin(), s.end());
  }

  GElem g_map(std::function<GeneratorId(GeneratorId const&)> const& f,
              GElem const&                                          x) {
    return map_extension(
        g(), g(), [&f](PairElem const& p) { return l_map(f, p); }, x);
  }

  GElem g_retract(GeneratorId const& alpha, int i, GElem const& x) {
    return map_extension(
        g(),
        g(),
        [&alpha, i](PairElem const& p) { return l_retract(alpha, i, p); },
        x);
  }

  char const* to_string(Verdict v) {
    switch (v) {
      case Verdict::premise_failed:
        return "premise-failed";
      case Verdict::holds:
        return "holds";
      case Verdict::counterexample:
        return "counterexample";
    }
    return "unknown";
  }

  namespace {
    bool mentions(GElem const& x, GeneratorId const& id) {
      auto s = support(x);
      return std::binary_search(s.begin(), s.end(), id);
    }
  }  // namespace

  CheckResult check_lemma_xleqy(GeneratorId const& alpha,
                                int                i,
                                GElem const&       x,
                                GElem const&       y) {
    return check_lemma_xleqy(alpha, i, x, y, g().join(y, g_gen(i, alpha)));
  }

  CheckResult check_lemma_xleqy(GeneratorId const& alpha,
                                int                i,
                                GElem const&       x,
                                GElem const&       y,
                                GElem const&       y_join_gen) {
    (void) i;  // already folded into y_join_gen
    CheckResult r;
    if (mentions(x, alpha)) {
      r.failed_premises.push_back("x not in G(Omega\\{alpha})");
    }
    if (mentions(y, alpha)) {
      r.failed_premises.push_back("y not in G(Omega\\{alpha})");
    }
    if (!g().leq(x, y_join_gen)) {
      r.failed_premises.push_back("x <= y v a_i^alpha");
    }
    if (!r.failed_premises.empty()) {
      r.verdict = Verdict::premise_failed;
      return r;
    }
    r.verdict = g().leq(x, y) ? Verdict::holds : Verdict::counterexample;
    return r;
  }

  CheckResult check_evaporation(GeneratorId const& alpha,
                                GeneratorId const& beta,
                                GeneratorId const& delta,
                                int                i,
                                int                j,
                                GElem const&       x,
                                GElem const&       y,
                                GElem const&       z) {
    return check_evaporation(alpha, beta, delta, i, j, x, y, z, g().join(x, y));
  }

  CheckResult check_evaporation(GeneratorId const& alpha,
                                GeneratorId const& beta,
                                GeneratorId const& delta,
                                int                i,
                                int                j,
                                GElem const&       x,
                                GElem const&       y,
                                GElem const&       z,
                                GElem const&       x_join_y) {
    CheckResult r;
    auto        fail = [&r](char const* what) {
      r.failed_premises.emplace_back(what);
    };
    if (alpha == beta || beta == delta || alpha == delta) {
      fail("alpha, beta, delta distinct");
    }
    if (mentions(x, beta)) {
      fail("x in G(Omega\\{beta})");
    }
    if (mentions(y, alpha)) {
      fail("y in G(Omega\\{alpha})");
    }
    if (mentions(z, delta)) {
      fail("z in G(Omega\\{delta})");
    }
    if (!g().leq(z, x_join_y)) {
      fail("z <= x v y");
    }
    if (!g().leq(x, g_gen(0, delta))) {
      fail("x <= a_0^delta");
    }
    if (!g().leq(x, g_gen(i, alpha))) {
      fail("x <= a_i^alpha");
    }
    if (!g().leq(y, g_gen(1, delta))) {
      fail("y <= a_1^delta");
    }
    if (!g().leq(y, g_gen(j, beta))) {
      fail("y <= a_j^beta");
    }
    if (!r.failed_premises.empty()) {
      r.verdict = Verdict::premise_failed;
      return r;
    }
    r.verdict = z.is_zero() ? Verdict::holds : Verdict::counterexample;
    return r;
  }

  Rank1Filter below_filter(GElem const& bound) {
    Rank1Filter f;
    f.proj_ok = [bound](GElem const& p) {
      return p == bound.proj() || g().leq(p, bound.proj());
    };
    f.triple_ok = [bound](GElem const& u, GElem const& v, GElem const& w) {
      GElem const& pb = bound.proj();
      if (bound.rank() == 1) {
        auto key = g().triple(u, v, w).key;
        for (auto const& t : bound.triples()) {
          if (t.key == key) {
            return true;
          }
        }
      }
      return g().leq(u, pb) || g().leq(w, pb);
    };
    if (bound.rank() > 1) {
      throw std::invalid_argument("below_filter: bound rank must be <= 1");
    }
    return f;
  }

  Rank1Filter both(Rank1Filter a, Rank1Filter b) {
    Rank1Filter f;
    f.proj_ok = [a, b](GElem const& p) {
      return a.proj_ok(p) && b.proj_ok(p);
    };
    f.triple_ok = [a, b](GElem const& u, GElem const& v, GElem const& w) {
      return a.triple_ok(u, v, w) && b.triple_ok(u, v, w);
    };
    return f;
  }

  std::size_t for_each_rank_le1(GeneratorSet const&                      gens,
                                Rank1Filter const&                       filter,
                                std::function<void(GElem const&)> const& visit,
                                std::size_t                              limit) {
    auto const&        ext = g();
    std::vector<GElem> base;
    for (auto const& p : l_all(gens)) {
      base.push_back(ext.lift(p));
    }
    std::size_t count = 0;
    auto        emit  = [&](GElem const& x) {
      ++count;
      if (limit != 0 && count > limit) {
        throw std::length_error("rank <= 1 enumeration exceeded its limit");
      }
      visit(x);
    };

    std::vector<GElem> projs;
    for (auto const& p : base) {
      if (filter.proj_ok(p)) {
        projs.push_back(p);
        emit(p);
      }
    }

    // Triples <u,v,w> with u != v, all nonzero, w <= u v v, passing the
    // filter; kept in swap classes {<u,v,w>, <v,u,w>}.
    struct SwapClass {
      std::vector<GExtension::TripleType> members;  // 1 or 2 entries
    };
    std::vector<GExtension::TripleType> all;
    for (auto const& u : base) {
      if (u.is_zero()) {
        continue;
      }
      for (auto const& v : base) {
        if (v.is_zero() || u == v) {
          continue;
        }
        GElem const uv = ext.join(u, v);
        for (auto const& w : base) {
          if (w.is_zero() || !ext.leq(w, uv)) {
            continue;
          }
          if (filter.triple_ok(u, v, w)) {
            all.push_back(ext.triple(u, v, w));
          }
        }
      }
    }

    for (auto const& p : projs) {
      std::vector<SwapClass> classes;
      std::unordered_set<std::string> placed;
      for (auto const& t : all) {
        if (ext.leq(t.u, p) || ext.leq(t.v, p) || ext.leq(t.w, p)) {
          continue;
        }
        if (placed.count(t.key) != 0) {
          continue;
        }
        SwapClass cls;
        cls.members.push_back(t);
        placed.insert(t.key);
        auto swapped = ext.triple(t.v, t.u, t.w);
        for (auto const& s : all) {
          if (s.key == swapped.key) {
            cls.members.push_back(s);
            placed.insert(s.key);
            break;
          }
        }
        classes.push_back(std::move(cls));
      }
      // Mixed-radix counter: digit 0 = class absent, k = member k-1 present.
      std::vector<std::size_t> digit(classes.size(), 0);
      while (true) {
        std::size_t pos = 0;
        while (pos < classes.size()) {
          if (++digit[pos] <= classes[pos].members.size()) {
            break;
          }
          digit[pos] = 0;
          ++pos;
        }
        if (pos == classes.size()) {
          break;
        }
        std::vector<GExtension::TripleType> chosen;
        for (std::size_t k = 0; k < classes.size(); ++k) {
          if (digit[k] != 0) {
            chosen.push_back(classes[k].members[digit[k] - 1]);
          }
        }
        emit(ext.build_node(1, p, std::move(chosen)));
      }
    }
    return count;
  }

}  // namespace slat
