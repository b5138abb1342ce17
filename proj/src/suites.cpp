#include "slat/suites.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "slat/conlat.hpp"
#include "slat/expr.hpp"
#include "slat/gomega.hpp"
#include "slat/harness.hpp"
#include "slat/sample.hpp"

#ifndef SLAT_DATA_DIR
#define SLAT_DATA_DIR "data"
#endif

namespace slat {

  std::string default_data_dir() {
    return SLAT_DATA_DIR;
  }

  namespace {

    // Collects "<suite>.<key> <value>" lines; the first few failures of each
    // kind are listed, the rest only counted.
    class Report {
     public:
      explicit Report(SuiteResult& r) : r_(r) {}

      template <class T>
      void kv(std::string const& key, T const& value) {
        std::ostringstream os;
        os << r_.name << '.' << key << ' ' << value;
        r_.lines.push_back(os.str());
      }

      void fail(std::string const& kind, std::string const& detail) {
        r_.pass = false;
        if (++shown_[kind] <= 3) {
          r_.lines.push_back(r_.name + ".fail " + kind + ": " + detail);
        }
      }

      void require(bool ok, std::string const& what) {
        if (!ok) {
          r_.pass = false;
          r_.lines.push_back(r_.name + ".unmet " + what);
        }
      }

     private:
      SuiteResult&               r_;
      std::map<std::string, int> shown_;
    };

    int cases_or(SuiteConfig const& cfg, int dflt) {
      return cfg.cases > 0 ? cfg.cases : dflt;
    }

    std::string data_dir(SuiteConfig const& cfg) {
      return cfg.data_dir.empty() ? default_data_dir() : cfg.data_dir;
    }

    struct NamedAlgebra {
      std::string name;
      FinAlgebra  L;
    };

    std::vector<NamedAlgebra> load_corpus(SuiteConfig const& cfg) {
      std::filesystem::path const dir = std::filesystem::path(data_dir(cfg)) / "corpus";
      std::vector<std::filesystem::path> files;
      for (auto const& e : std::filesystem::directory_iterator(dir)) {
        if (e.path().extension() == ".alg") {
          files.push_back(e.path());
        }
      }
      std::sort(files.begin(), files.end());
      std::vector<NamedAlgebra> out;
      for (auto const& f : files) {
        out.push_back({f.stem().string(), FinAlgebra::load(f.string())});
      }
      return out;
    }

    GElem const& G0() {
      static GElem const z = g_zero();
      return z;
    }

    ////////////////////////////////////////////////////////////////////////
    // 1. Defining relations of bowtie
    ////////////////////////////////////////////////////////////////////////

    void suite_relations(SuiteConfig const& cfg, Report& rep) {
      auto const gens = omega(cfg.omega_size);
      int const  n    = cases_or(cfg, 1000);
      long long  substantive = 0, failures = 0;
      for (int k = 0; k < n; ++k) {
        Rng     rng(cfg.seed, "relations", static_cast<std::uint64_t>(k));
        CTriple t  = random_c_triple(rng, gens, cfg.max_rank);
        GElem   x  = g().bowtie(t.a, t.b, t.c);
        GElem   y  = g().bowtie(t.b, t.a, t.c);
        bool    ok = true;
        if (!(g().join(x, y) == t.c)) {
          ok = false;
          rep.fail("join", "case " + std::to_string(k) + ": bowtie(a,b,c) v bowtie(b,a,c) != c for a="
                               + t.a.text() + " b=" + t.b.text() + " c=" + t.c.text());
        }
        if (!g().leq(x, t.a) || !g().leq(y, t.b)) {
          ok = false;
          rep.fail("below", "case " + std::to_string(k) + ": bowtie not below its first argument, a="
                                + t.a.text() + " b=" + t.b.text() + " c=" + t.c.text());
        }
        failures += ok ? 0 : 1;
        substantive += (!x.is_base() && !(x == t.c)) ? 1 : 0;
      }
      rep.kv("cases", n);
      rep.kv("substantive", substantive);
      rep.kv("failures", failures);
    }

    ////////////////////////////////////////////////////////////////////////
    // 2. Least upper bounds and semilattice laws
    ////////////////////////////////////////////////////////////////////////

    void suite_lub(SuiteConfig const& cfg, Report& rep) {
      auto const gens = omega(cfg.omega_size);
      int const  n    = cases_or(cfg, 1000);
      long long  checks = 0, bound_premises = 0, failures = 0;
      auto const& G = g();
      for (int k = 0; k < n; ++k) {
        Rng     rng(cfg.seed, "relations", static_cast<std::uint64_t>(k));
        CTriple t = random_c_triple(rng, gens, cfg.max_rank);
        Rng     zr(cfg.seed, "lub", static_cast<std::uint64_t>(k));
        std::vector<GElem> xs{t.a, t.b, t.c, G.bowtie(t.a, t.b, t.c), G.bowtie(t.b, t.a, t.c)};
        GElem const z_rand  = random_elem(zr, gens, cfg.max_rank);
        auto        fail_at = [&](std::string const& law, GElem const& p, GElem const& q) {
          ++failures;
          rep.fail(law, "case " + std::to_string(k) + ": p=" + p.text() + " q=" + q.text());
        };
        for (std::size_t i = 0; i < xs.size(); ++i) {
          GElem const& p = xs[i];
          ++checks;
          if (!(G.join(p, p) == p) || !(G.join(p, G0()) == p) || !G.leq(G0(), p)
              || !G.leq(p, g_one()) || !(G.join(p, g_one()) == g_one())) {
            fail_at("unit-idempotent", p, p);
          }
          for (std::size_t j = 0; j < xs.size(); ++j) {
            GElem const& q  = xs[j];
            GElem const  pq = G.join(p, q);
            ++checks;
            if (!G.leq(p, pq) || !G.leq(q, pq)) {
              fail_at("upper-bound", p, q);
            }
            if (!(pq == G.join(q, p))) {
              fail_at("commutative", p, q);
            }
            if (G.leq(p, q) != (pq == q)) {
              fail_at("order-matches-join", p, q);
            }
            // A random z, and one that is an upper bound by construction.
            GElem const z_above = G.join(pq, random_elem(zr, gens, cfg.max_rank));
            for (GElem const* z : {&z_rand, &z_above}) {
              if (G.leq(p, *z) && G.leq(q, *z)) {
                ++bound_premises;
                if (!G.leq(pq, *z)) {
                  fail_at("least", p, q);
                }
              }
            }
            for (std::size_t l = 0; l < xs.size(); ++l) {
              GElem const& r = xs[l];
              if (!(G.join(pq, r) == G.join(p, G.join(q, r)))) {
                fail_at("associative", p, q);
              }
            }
          }
        }
      }
      rep.kv("cases", n);
      rep.kv("checks", checks);
      rep.kv("bound_premises", bound_premises);
      rep.kv("failures", failures);
    }

    ////////////////////////////////////////////////////////////////////////
    // 3. Confluence of the rewriting join
    ////////////////////////////////////////////////////////////////////////

    void suite_confluence(SuiteConfig const& cfg, Report& rep) {
      auto const gens   = omega(cfg.omega_size);
      int const  n      = cases_or(cfg, 100);
      int const  orders = 10;
      long long  branching = 0, failures = 0;
      for (int k = 0; k < n; ++k) {
        Rng   rng(cfg.seed, "confluence", static_cast<std::uint64_t>(k));
        GElem x, y;
        if (rng.chance(3, 4)) {
          // Several swapped bowtie pairs at one level give competing ->1
          // and ->2 steps.
          std::vector<CTriple> ts;
          int                  level = 1;
          for (std::size_t c = 0, m = 2 + rng.below(3); c < m; ++c) {
            ts.push_back(random_c_triple(rng, gens, std::max(cfg.max_rank - 1, 0)));
            level = std::max({level, ts.back().a.rank() + 1, ts.back().b.rank() + 1,
                              ts.back().c.rank() + 1});
          }
          x = g_zero();
          y = g_zero();
          for (auto const& t : ts) {
            x = g().join(x, g().bowtie_at(level, t.a, t.b, t.c));
            y = g().join(y, rng.chance(3, 4) ? g().bowtie_at(level, t.b, t.a, t.c)
                                             : g().bowtie_at(level, t.a, t.b, t.c));
          }
          if (rng.chance(1, 2)) {
            y = g().join(y, random_elem(rng, gens, std::max(cfg.max_rank - 1, 0)));
          }
        } else {
          x = random_elem(rng, gens, cfg.max_rank);
          y = random_elem(rng, gens, cfg.max_rank);
        }
        std::string const reference = g().join(x, y).text();
        bool              branched  = false;
        for (int o = 0; o < orders; ++o) {
          Rng          orng(cfg.seed, "confluence.order",
                            static_cast<std::uint64_t>(k) * orders + static_cast<std::uint64_t>(o));
          ChoicePolicy policy = [&](std::size_t m) {
            branched = branched || m > 1;
            return orng.below(m);
          };
          GElem const a = o % 2 == 0 ? g().join(x, y, policy) : g().join(y, x, policy);
          if (a.text() != reference) {
            ++failures;
            rep.fail("order-dependent", "case " + std::to_string(k) + " order "
                                            + std::to_string(o) + ": " + a.text()
                                            + " vs " + reference);
          }
        }
        branching += branched ? 1 : 0;
      }
      rep.kv("cases", n);
      rep.kv("orders", orders);
      rep.kv("branching_cases", branching);
      rep.kv("failures", failures);
    }

    ////////////////////////////////////////////////////////////////////////
    // 4. x <= y v a_i^alpha implies x <= y
    ////////////////////////////////////////////////////////////////////////

    struct VerdictCount {
      long long premise_failed = 0, holds = 0, counterexample = 0, substantive = 0;
    };

    void suite_lemma44(SuiteConfig const& cfg, Report& rep) {
      GeneratorId const xi("xi"), alpha("alpha");
      GeneratorSet const gens{xi};
      Rank1Filter const  any{[](GElem const&) { return true; },
                            [](GElem const&, GElem const&, GElem const&) { return true; }};

      // Exhaustive part: every y of rank <= 1 over {xi}, both i, every x
      // below y v a_i^alpha. Those are exactly the premise-satisfying pairs.
      std::vector<GElem> ys;
      for_each_rank_le1(gens, any, [&](GElem const& y) { ys.push_back(y); });
      VerdictCount ex;
      for (auto const& y : ys) {
        for (int i = 0; i < 2; ++i) {
          GElem const b = g().join(y, g_gen(i, alpha));
          for_each_rank_le1(gens, below_filter(b), [&](GElem const& x) {
            auto const r = check_lemma_xleqy(alpha, i, x, y, b);
            switch (r.verdict) {
              case Verdict::premise_failed:
                ++ex.premise_failed;
                rep.fail("enumerator", "premise failed for enumerated x=" + x.text()
                                           + " y=" + y.text());
                break;
              case Verdict::holds:
                ++ex.holds;
                ex.substantive += (!x.is_zero() && !(x == y)) ? 1 : 0;
                break;
              case Verdict::counterexample:
                ++ex.counterexample;
                rep.fail("counterexample", "i=" + std::to_string(i) + " x=" + x.text()
                                               + " y=" + y.text());
                break;
            }
          });
        }
      }
      rep.kv("exhaustive.y_elements", ys.size());
      rep.kv("exhaustive.instances", ex.holds + ex.counterexample + ex.premise_failed);
      rep.kv("exhaustive.holds", ex.holds);
      rep.kv("exhaustive.substantive", ex.substantive);
      rep.kv("exhaustive.counterexamples", ex.counterexample);

      // Randomized part at rank <= max_rank over a larger alphabet.
      auto gens_r = omega(std::max(cfg.omega_size, 2));
      GeneratorId const alpha_r = gens_r.back();
      gens_r.pop_back();
      int const    want     = cases_or(cfg, 200);
      long long    attempts = 0;
      VerdictCount rnd;
      while (rnd.holds + rnd.counterexample < want && attempts < 200LL * want) {
        Rng       rng(cfg.seed, "lemma44", static_cast<std::uint64_t>(attempts++));
        int const i = static_cast<int>(rng.below(2));
        GElem const y = random_elem(rng, gens_r, cfg.max_rank);
        GElem const b = g().join(y, g_gen(i, alpha_r));
        GElem x;
        if (rng.chance(3, 4)) {
          x = random_below(rng, b, gens_r);
        } else {
          x = random_elem(rng, gens_r, cfg.max_rank);
        }
        auto const r = check_lemma_xleqy(alpha_r, i, x, y, b);
        if (r.verdict == Verdict::premise_failed) {
          ++rnd.premise_failed;
        } else if (r.verdict == Verdict::holds) {
          ++rnd.holds;
          rnd.substantive += (!x.is_zero() && !(x == y)) ? 1 : 0;
        } else {
          ++rnd.counterexample;
          rep.fail("counterexample", "random i=" + std::to_string(i) + " x=" + x.text()
                                         + " y=" + y.text());
        }
      }
      rep.kv("random.attempts", attempts);
      rep.kv("random.premise_satisfied", rnd.holds + rnd.counterexample);
      rep.kv("random.substantive", rnd.substantive);
      rep.kv("random.counterexamples", rnd.counterexample);
      long long const substantive = ex.substantive + rnd.substantive;
      rep.kv("substantive", substantive);
      rep.kv("counterexamples", ex.counterexample + rnd.counterexample);
      rep.require(rnd.holds + rnd.counterexample >= want,
                  "randomized premise-satisfying instances below the requested count");
      rep.require(substantive >= 50, "fewer than 50 substantive instances");
    }

    ////////////////////////////////////////////////////////////////////////
    // 5. Evaporation
    ////////////////////////////////////////////////////////////////////////

    void suite_evaporation(SuiteConfig const& cfg, Report& rep) {
      GeneratorId const alpha("alpha"), beta("beta"), delta("delta");
      GeneratorSet const gx = make_generator_set({alpha, delta});
      GeneratorSet const gy = make_generator_set({beta, delta});
      GeneratorSet const gz = make_generator_set({alpha, beta});
      int const          random_pairs = cases_or(cfg, 2000);

      long long covered = 0, checked = 0, substantive = 0, counterexamples = 0;
      long long nonzero_z = 0;
      auto      run = [&](int i, int j, GElem const& x, GElem const& y, char const* where) {
        GElem const xy = g().join(x, y);
        for_each_rank_le1(gz, below_filter(xy), [&](GElem const& z) {
          auto const r = check_evaporation(alpha, beta, delta, i, j, x, y, z, xy);
          ++checked;
          nonzero_z += z.is_zero() ? 0 : 1;
          if (r.verdict == Verdict::counterexample) {
            ++counterexamples;
            rep.fail("counterexample", std::string(where) + " i=" + std::to_string(i)
                                           + " j=" + std::to_string(j) + " x=" + x.text()
                                           + " y=" + y.text() + " z=" + z.text());
          } else if (r.verdict == Verdict::premise_failed) {
            rep.fail("enumerator", std::string(where) + " premise failed: "
                                       + r.failed_premises.front());
          } else if (!x.is_zero() && !y.is_zero()) {
            ++substantive;
          }
        });
      };

      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
          std::vector<GElem> xs, ys;
          for_each_rank_le1(gx, both(below_filter(g_gen(0, delta)), below_filter(g_gen(i, alpha))),
                            [&](GElem const& x) { xs.push_back(x); });
          for_each_rank_le1(gy, both(below_filter(g_gen(1, delta)), below_filter(g_gen(j, beta))),
                            [&](GElem const& y) { ys.push_back(y); });
          // The premises on x (and on y) are closed under joins, so each
          // family has a largest member and z <= x v y <= x_max v y_max.
          // Every z of every instance therefore occurs below x_max v y_max.
          GElem const x_max = g().join_all(xs);
          GElem const y_max = g().join_all(ys);
          bool        dominated = true;
          for (auto const& x : xs) {
            dominated = dominated && g().leq(x, x_max);
          }
          for (auto const& y : ys) {
            dominated = dominated && g().leq(y, y_max);
          }
          bool const closed = std::find(xs.begin(), xs.end(), x_max) != xs.end()
                              && std::find(ys.begin(), ys.end(), y_max) != ys.end();
          if (!dominated || !closed) {
            rep.fail("reduction", "largest premise-satisfying x or y missing for i="
                                      + std::to_string(i) + " j=" + std::to_string(j));
          }
          covered += static_cast<long long>(xs.size()) * static_cast<long long>(ys.size());
          run(i, j, x_max, y_max, "max");
          for (auto const& x : xs) {
            run(i, j, x, y_max, "x-sweep");
          }
          for (auto const& y : ys) {
            run(i, j, x_max, y, "y-sweep");
          }
          int const per = std::max(1, random_pairs / 4);
          for (int c = 0; c < per; ++c) {
            Rng rng(cfg.seed, "evaporation", static_cast<std::uint64_t>((i * 2 + j) * per + c));
            run(i, j, xs[rng.below(xs.size())], ys[rng.below(ys.size())], "random");
          }
          rep.kv("i" + std::to_string(i) + "j" + std::to_string(j) + ".x_family", xs.size());
          rep.kv("i" + std::to_string(i) + "j" + std::to_string(j) + ".y_family", ys.size());
        }
      }
      rep.kv("pairs_covered", covered);
      rep.kv("instances_checked", checked);
      rep.kv("nonzero_z", nonzero_z);
      rep.kv("substantive", substantive);
      rep.kv("counterexamples", counterexamples);
      rep.require(substantive >= 1, "no substantive instance with x, y != 0 (vacuous generator)");
    }

    ////////////////////////////////////////////////////////////////////////
    // 6. Erosion, rechecked with brute-force principal congruences
    ////////////////////////////////////////////////////////////////////////

    bool in_generated_subsemilattice(std::vector<Congruence> const& gens_c, Congruence const& u) {
      std::set<Congruence> seen{Congruence::identity(u.size())};
      std::vector<Congruence> frontier(seen.begin(), seen.end());
      while (!frontier.empty()) {
        Congruence const c = frontier.back();
        frontier.pop_back();
        for (auto const& g : gens_c) {
          Congruence j = c.join(g);
          if (seen.insert(j).second) {
            frontier.push_back(j);
          }
        }
      }
      return seen.count(u) != 0;
    }

    void suite_erosion(SuiteConfig const& cfg, Report& rep) {
      auto const corpus = load_corpus(cfg);
      long long  instances = 0, failures = 0, mismatches = 0, nontrivial = 0;
      for (auto const& [name, L] : corpus) {
        CongruenceTable const C(L);
        int const             k = L.size();
        std::vector<Congruence> oracle(static_cast<std::size_t>(k * k));
        for (int a = 0; a < k; ++a) {
          for (int b = 0; b < k; ++b) {
            oracle[static_cast<std::size_t>(a * k + b)] = theta_oracle(L, a, b);
          }
        }
        auto th = [&](int a, int b) -> Congruence const& {
          return oracle[static_cast<std::size_t>(a * k + b)];
        };
        for (int len = 2; len <= 4; ++len) {
          std::vector<int> z(static_cast<std::size_t>(len), 0);
          while (true) {
            bool valid = true;
            for (int i = 0; i + 1 < len; ++i) {
              valid = valid && L.leq(z[static_cast<std::size_t>(i)], z.back());
            }
            for (int x0 = 0; valid && x0 < k; ++x0) {
              for (int x1 = 0; x1 < k; ++x1) {
                ++instances;
                ErosionReport const r = erosion(C, x0, x1, z);
                if (!r.all_hold()) {
                  ++failures;
                  rep.fail("postcondition", name + " x0=" + std::to_string(x0)
                                                + " x1=" + std::to_string(x1));
                }
                // Independent recomputation.
                int const  x[2] = {x0, x1};
                Congruence u[2] = {Congruence::identity(k), Congruence::identity(k)};
                Congruence a[2] = {Congruence::identity(k), Congruence::identity(k)};
                for (int i = 0; i + 1 < len; ++i) {
                  int const j  = i % 2;
                  int const zi = z[static_cast<std::size_t>(i)];
                  int const zj = z[static_cast<std::size_t>(i + 1)];
                  u[j]         = u[j].join(th(L.join(zi, x[j]), L.join(zj, x[j])));
                  a[j]         = a[j].join(th(zi, zj));
                }
                int const x01 = L.join(x0, x1);
                bool      ok  = u[0].join(u[1]).related(L.join(z[0], x01), L.join(z.back(), x01));
                for (int j = 0; j < 2; ++j) {
                  Congruence const tp = th(x[j], L.join(z.back(), x[j]));
                  ok = ok && u[j].leq(a[j].meet(tp));
                  std::vector<int> U;
                  for (int zi : z) {
                    U.push_back(L.join(x[j], zi));
                  }
                  std::vector<Congruence> gen_c;
                  for (int p : U) {
                    for (int q : U) {
                      gen_c.push_back(th(p, q));
                    }
                  }
                  ok = ok && in_generated_subsemilattice(gen_c, u[j]);
                  if (!(u[j] == r.u[j])) {
                    ++mismatches;
                    rep.fail("oracle-mismatch", name + " u_" + std::to_string(j) + " "
                                                    + r.u[j].to_string() + " vs "
                                                    + u[j].to_string());
                  }
                }
                if (!ok) {
                  ++failures;
                  rep.fail("oracle-postcondition", name + " x0=" + std::to_string(x0)
                                                       + " x1=" + std::to_string(x1));
                }
                nontrivial += (u[0].block_count() < k || u[1].block_count() < k) ? 1 : 0;
              }
            }
            // Next z sequence (odometer).
            int p = len - 1;
            while (p >= 0 && ++z[static_cast<std::size_t>(p)] == k) {
              z[static_cast<std::size_t>(p)] = 0;
              --p;
            }
            if (p < 0) {
              break;
            }
          }
        }
      }
      rep.kv("lattices", corpus.size());
      rep.kv("instances", instances);
      rep.kv("nontrivial", nontrivial);
      rep.kv("failures", failures);
      rep.kv("oracle_mismatches", mismatches);

      // The 3-chain example.
      auto it = std::find_if(corpus.begin(), corpus.end(),
                             [](NamedAlgebra const& a) { return a.name == "chain3"; });
      if (it == corpus.end()) {
        rep.require(false, "corpus has no chain3");
      } else {
        ErosionReport const r = erosion(it->L, 0, 0, {0, 1, 2});
        rep.kv("chain3.u0", r.u[0].to_string());
        rep.kv("chain3.u1", r.u[1].to_string());
        rep.require(r.u[0].to_string() == "{{0,1},{2}}" && r.u[1].to_string() == "{{0},{1,2}}"
                        && r.all_hold(),
                    "3-chain witnesses differ from {{0,1},{2}} and {{0},{1,2}}");
      }
      for (char const* need : {"chain1", "chain2", "chain3", "chain4", "chain5", "chain6",
                               "b2x2", "b2x3", "n5", "m3"}) {
        bool const present = std::any_of(corpus.begin(), corpus.end(),
                                         [&](NamedAlgebra const& a) { return a.name == need; });
        rep.require(present, std::string("corpus lacks ") + need);
      }
      rep.require(corpus.size() >= 20, "corpus has fewer than 20 lattices");
    }

    ////////////////////////////////////////////////////////////////////////
    // 7. Conc L is distributive
    ////////////////////////////////////////////////////////////////////////

    void suite_conc(SuiteConfig const& cfg, Report& rep) {
      auto const corpus = load_corpus(cfg);
      int        distributive = 0;
      for (auto const& [name, L] : corpus) {
        ConcResult const c = conc(L);
        bool const       d = is_distributive(c.table);
        distributive += d ? 1 : 0;
        if (!d) {
          rep.fail("not-distributive", name);
        }
        // Every compatible partition is a finite join of principal ones, so
        // Conc L must list all of them.
        std::size_t compatible = 0;
        for (auto const& p : all_partitions(L.size())) {
          compatible += is_compatible(L, p) ? 1 : 0;
        }
        if (compatible != c.elements.size()) {
          rep.fail("size", name + ": " + std::to_string(c.elements.size())
                               + " congruences listed, " + std::to_string(compatible)
                               + " compatible partitions");
        }
        rep.kv(name + ".size", c.elements.size());
      }
      rep.kv("lattices", corpus.size());
      rep.kv("distributive", distributive);
    }

    ////////////////////////////////////////////////////////////////////////
    // 8. Functoriality of D
    ////////////////////////////////////////////////////////////////////////

    using PairMap = std::function<PairElem(PairElem const&)>;

    struct NamedMap {
      std::string desc;
      PairMap     f;
    };

    NamedMap random_map(Rng& rng, GeneratorSet const& gens) {
      if (rng.chance(1, 2)) {
        std::map<std::string, GeneratorId> image;
        std::string                       desc = "rename{";
        for (auto const& g : gens) {
          image[g.name] = gens[rng.below(gens.size())];
          desc += g.name + "->" + image[g.name].name + ";";
        }
        desc += "}";
        auto fn = [image](GeneratorId const& x) {
          auto it = image.find(x.name);
          return it == image.end() ? x : it->second;
        };
        return {desc, [fn](PairElem const& p) { return l_map(fn, p); }};
      }
      GeneratorId const alpha = gens[rng.below(gens.size())];
      int const         i     = static_cast<int>(rng.below(2));
      return {"retract(" + alpha.name + "," + std::to_string(i) + ")",
              [alpha, i](PairElem const& p) { return l_retract(alpha, i, p); }};
    }

    GElem D(PairMap const& f, GElem const& x) {
      return map_extension(g(), g(), f, x);
    }

    std::string replace_all(std::string s, std::string const& from, std::string const& to) {
      std::size_t pos = 0;
      while ((pos = s.find(from, pos)) != std::string::npos) {
        s.replace(pos, from.size(), to);
        pos += to.size();
      }
      return s;
    }

    void suite_functor(SuiteConfig const& cfg, Report& rep) {
      auto const gens = omega(std::min(cfg.omega_size, 10));
      int const  n    = cases_or(cfg, 500);
      long long  failures = 0;
      PairMap const id = [](PairElem const& p) { return p; };
      // x_k -> y_k preserves the generator order, so on canonical text it is
      // a plain substitution.
      std::map<std::string, GeneratorId> shift;
      for (auto const& g : gens) {
        shift[g.name] = GeneratorId("y" + g.name.substr(1));
      }
      PairMap const rename = [&](PairElem const& p) {
        return l_map([&](GeneratorId const& x) { return shift.at(x.name); }, p);
      };
      for (int k = 0; k < n; ++k) {
        Rng            rng(cfg.seed, "functor", static_cast<std::uint64_t>(k));
        GElem const    x = random_elem(rng, gens, cfg.max_rank);
        GElem const    y = random_elem(rng, gens, cfg.max_rank);
        NamedMap const f = random_map(rng, gens);
        NamedMap const h = random_map(rng, gens);
        CTriple const  t = random_c_triple(rng, gens, cfg.max_rank);
        auto           bad = [&](std::string const& law) {
          ++failures;
          rep.fail(law, "case " + std::to_string(k) + " f=" + f.desc + " h=" + h.desc
                            + " x=" + x.text());
        };
        if (!(D(id, x) == x)) {
          bad("identity");
        }
        PairMap const hf = [&](PairElem const& p) { return h.f(f.f(p)); };
        if (!(D(hf, x) == D(h.f, D(f.f, x)))) {
          bad("composition");
        }
        if (!(D(f.f, g().join(x, y)) == g().join(D(f.f, x), D(f.f, y)))) {
          bad("join");
        }
        GElem const bt    = g().bowtie(t.a, t.b, t.c);
        int const   level = std::max({t.a.rank(), t.b.rank(), t.c.rank()}) + 1;
        if (!(D(f.f, bt) == g().bowtie_at(level, D(f.f, t.a), D(f.f, t.b), D(f.f, t.c)))) {
          bad("bowtie");
        }
        std::string expected = x.text();
        for (auto const& g : gens) {
          expected = replace_all(expected, "[" + g.name + "]", "[" + shift.at(g.name).name + "]");
          expected = replace_all(expected, "[" + g.name + ",", "[" + shift.at(g.name).name + ",");
          expected = replace_all(expected, "," + g.name + "]", "," + shift.at(g.name).name + "]");
          expected = replace_all(expected, "," + g.name + ",", "," + shift.at(g.name).name + ",");
        }
        if (D(rename, x).text() != expected) {
          bad("rename-text");
        }
      }
      rep.kv("cases", n);
      rep.kv("failures", failures);
    }

    ////////////////////////////////////////////////////////////////////////
    // 9. Oracles: theta and weak distributivity
    ////////////////////////////////////////////////////////////////////////

    // Every (v,0)-semilattice on {0..n-1} with 0 as the least element.
    std::vector<SemilatticeTable> small_semilattices(int n) {
      std::vector<SemilatticeTable> out;
      std::vector<std::pair<int, int>> pairs;
      for (int a = 1; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
          pairs.emplace_back(a, b);
        }
      }
      std::size_t combos = 1;
      for (std::size_t k = 0; k < pairs.size(); ++k) {
        combos *= 3;
      }
      for (std::size_t code = 0; code < combos; ++code) {
        std::vector<char> le(static_cast<std::size_t>(n * n), 0);
        auto at = [&](int a, int b) -> char& { return le[static_cast<std::size_t>(a * n + b)]; };
        for (int a = 0; a < n; ++a) {
          at(a, a) = 1;
          at(0, a) = 1;
        }
        std::size_t c = code;
        for (auto [a, b] : pairs) {
          int const r = static_cast<int>(c % 3);
          c /= 3;
          if (r == 1) {
            at(a, b) = 1;
          } else if (r == 2) {
            at(b, a) = 1;
          }
        }
        bool transitive = true;
        for (int a = 0; a < n; ++a) {
          for (int b = 0; b < n; ++b) {
            for (int d = 0; d < n; ++d) {
              if (at(a, b) && at(b, d) && !at(a, d)) {
                transitive = false;
              }
            }
          }
        }
        if (!transitive) {
          continue;
        }
        SemilatticeTable S;
        S.n = n;
        S.join_table.assign(static_cast<std::size_t>(n * n), -1);
        bool ok = true;
        for (int a = 0; a < n && ok; ++a) {
          for (int b = 0; b < n && ok; ++b) {
            int lub = -1;
            for (int u = 0; u < n; ++u) {
              if (!at(a, u) || !at(b, u)) {
                continue;
              }
              bool least = true;
              for (int v = 0; v < n; ++v) {
                if (at(a, v) && at(b, v) && !at(u, v)) {
                  least = false;
                }
              }
              if (least) {
                lub = u;
              }
            }
            ok = lub >= 0;
            S.join_table[static_cast<std::size_t>(a * n + b)] = lub;
          }
        }
        if (ok) {
          out.push_back(std::move(S));
        }
      }
      return out;
    }

    void suite_oracles(SuiteConfig const& cfg, Report& rep) {
      auto const corpus = load_corpus(cfg);
      long long  theta_pairs = 0, theta_bad = 0;
      for (auto const& [name, L] : corpus) {
        if (L.size() > 6) {
          continue;
        }
        for (int x = 0; x < L.size(); ++x) {
          for (int y = 0; y < L.size(); ++y) {
            ++theta_pairs;
            if (!(theta(L, x, y) == theta_oracle(L, x, y))) {
              ++theta_bad;
              rep.fail("theta", name + " (" + std::to_string(x) + "," + std::to_string(y) + ")");
            }
          }
        }
      }
      rep.kv("theta.pairs", theta_pairs);
      rep.kv("theta.mismatches", theta_bad);

      std::vector<SemilatticeTable> sems;
      for (int n = 1; n <= 4; ++n) {
        for (auto& s : small_semilattices(n)) {
          s.check();
          sems.push_back(std::move(s));
        }
      }
      long long homs = 0, points = 0, wd_bad = 0, not_wd = 0;
      for (auto const& S : sems) {
        for (auto const& T : sems) {
          std::size_t total = 1;
          for (int k = 0; k < S.n; ++k) {
            total *= static_cast<std::size_t>(T.n);
          }
          for (std::size_t code = 0; code < total; ++code) {
            SemHom      mu{S, T, std::vector<int>(static_cast<std::size_t>(S.n))};
            std::size_t c = code;
            for (int k = 0; k < S.n; ++k) {
              mu.image[static_cast<std::size_t>(k)] = static_cast<int>(c % static_cast<std::size_t>(T.n));
              c /= static_cast<std::size_t>(T.n);
            }
            if (!mu.is_homomorphism()) {
              continue;
            }
            ++homs;
            for (int x = 0; x < S.n; ++x) {
              ++points;
              bool const fast = weakly_distributive_at(mu, x);
              not_wd += fast ? 0 : 1;
              if (fast != weakly_distributive_at_oracle(mu, x)) {
                ++wd_bad;
                rep.fail("weak-distributivity", "sizes " + std::to_string(S.n) + "->"
                                                    + std::to_string(T.n) + " x=" + std::to_string(x));
              }
            }
          }
        }
      }
      rep.kv("wd.semilattices", sems.size());
      rep.kv("wd.homomorphisms", homs);
      rep.kv("wd.points", points);
      rep.kv("wd.not_weakly_distributive", not_wd);
      rep.kv("wd.mismatches", wd_bad);
    }

    ////////////////////////////////////////////////////////////////////////
    // 10. Kuratowski free sets
    ////////////////////////////////////////////////////////////////////////

    // Quantifier form: for every n-subset V of U and x in U \ V, x not in Phi(V).
    bool free_oracle(std::vector<int> const& U, std::vector<std::uint32_t> const& phi_mask,
                     std::vector<std::uint32_t> const& subsets) {
      std::uint32_t umask = 0;
      for (int x : U) {
        umask |= 1u << x;
      }
      for (std::size_t s = 0; s < subsets.size(); ++s) {
        std::uint32_t const V = subsets[s];
        if ((V & umask) != V) {
          continue;
        }
        if ((umask & ~V) & phi_mask[s]) {
          return false;
        }
      }
      return true;
    }

    void suite_kuratowski(SuiteConfig const& cfg, Report& rep) {
      int const random_maps = cases_or(cfg, 300);
      long long maps = 0, exhaustive_maps = 0, checks = 0, bad = 0, with_free = 0;
      for (int gsize = 1; gsize <= 6; ++gsize) {
        NameSet ground;
        for (int k = 0; k < gsize; ++k) {
          ground.push_back(std::to_string(k));
        }
        for (int n = 0; n <= 2 && n <= gsize; ++n) {
          // n-subsets in lexicographic order of their sorted names.
          std::vector<std::uint32_t> subsets;
          for (std::uint32_t m = 0; m < (1u << gsize); ++m) {
            if (std::popcount(m) == n) {
              subsets.push_back(m);
            }
          }
          std::vector<std::uint32_t> usets;
          for (std::uint32_t m = 0; m < (1u << gsize); ++m) {
            if (std::popcount(m) == n + 1) {
              usets.push_back(m);
            }
          }
          auto names_of = [&](std::uint32_t m) {
            NameSet s;
            for (int k = 0; k < gsize; ++k) {
              if (m & (1u << k)) {
                s.push_back(std::to_string(k));
              }
            }
            return s;
          };
          std::sort(usets.begin(), usets.end(), [&](std::uint32_t a, std::uint32_t b) {
            return names_of(a) < names_of(b);
          });
          // Only the bits of Phi(V) outside V matter for freeness; they are
          // enumerated exhaustively when there are at most 16 of them.
          int const  relevant   = static_cast<int>(subsets.size()) * (gsize - n);
          bool const exhaustive = relevant <= 16;
          std::size_t const total =
              exhaustive ? (std::size_t{1} << relevant) : static_cast<std::size_t>(random_maps);
          for (std::size_t code = 0; code < total; ++code) {
            Rng rng(cfg.seed, "kuratowski",
                    (static_cast<std::uint64_t>(gsize * 3 + n) << 32) | code);
            std::vector<std::uint32_t> mask(subsets.size());
            int                        bit = 0;
            unsigned const             density = 1 + static_cast<unsigned>(rng.below(4));
            for (std::size_t s = 0; s < subsets.size(); ++s) {
              for (int x = 0; x < gsize; ++x) {
                if (subsets[s] & (1u << x)) {
                  if (rng.chance(1, 2)) {
                    mask[s] |= 1u << x;  // irrelevant to freeness
                  }
                  continue;
                }
                bool const on = exhaustive ? ((code >> bit) & 1u) != 0 : rng.chance(density, 8);
                ++bit;
                if (on) {
                  mask[s] |= 1u << x;
                }
              }
            }
            PhiMap phi(ground, n);
            for (std::size_t s = 0; s < subsets.size(); ++s) {
              phi.set(names_of(subsets[s]), names_of(mask[s]));
            }
            ++maps;
            exhaustive_maps += exhaustive ? 1 : 0;
            std::optional<NameSet> first;
            for (std::uint32_t U : usets) {
              std::vector<int> members;
              for (int k = 0; k < gsize; ++k) {
                if (U & (1u << k)) {
                  members.push_back(k);
                }
              }
              bool const o = free_oracle(members, mask, subsets);
              ++checks;
              if (o != is_free(names_of(U), phi)) {
                ++bad;
                rep.fail("is_free", "ground " + std::to_string(gsize) + " n=" + std::to_string(n)
                                        + " U=" + set_text(names_of(U)));
              }
              if (o && !first) {
                first = names_of(U);
              }
            }
            with_free += first ? 1 : 0;
            if (find_free(phi) != first) {
              ++bad;
              rep.fail("find_free", "ground " + std::to_string(gsize) + " n=" + std::to_string(n));
            }
          }
        }
      }
      rep.kv("maps", maps);
      rep.kv("maps_exhaustive", exhaustive_maps);
      rep.kv("maps_with_free_set", with_free);
      rep.kv("subset_checks", checks);
      rep.kv("mismatches", bad);

      std::filesystem::path const fx = std::filesystem::path(data_dir(cfg)) / "fixtures";
      auto const none  = find_free(PhiMap::load((fx / "phi_no_free_pair.phi").string()));
      auto const first = find_free(PhiMap::load((fx / "phi_singleton.phi").string()));
      rep.kv("fixture.no_free_pair", none ? set_text(*none) : std::string("none"));
      rep.kv("fixture.singleton", first ? set_text(*first) : std::string("none"));
      rep.require(!none, "no-free-pair fixture returned a free set");
      rep.require(first && set_text(*first) == "{0,1}", "singleton fixture did not return {0,1}");
    }

    ////////////////////////////////////////////////////////////////////////
    // 11. Mutation detection on the descent fixture
    ////////////////////////////////////////////////////////////////////////

    struct Mutation {
      std::string scope;  // "all" or "validate"
      std::string text;
      std::function<void(DescentInstance&)> apply;
    };

    std::vector<Mutation> load_mutations(std::string const& path) {
      std::ifstream in(path);
      if (!in) {
        throw std::runtime_error("cannot open " + path);
      }
      std::vector<Mutation> out;
      std::string           line;
      int                   lineno = 0;
      while (std::getline(in, line)) {
        ++lineno;
        auto const hash = line.find('#');
        if (hash != std::string::npos) {
          line.erase(hash);
        }
        std::istringstream ss(line);
        std::string        scope, kind;
        if (!(ss >> scope)) {
          continue;
        }
        ss >> kind;
        Mutation m;
        m.scope = scope;
        m.text  = line.substr(line.find(kind, line.find(scope) + scope.size()));
        while (!m.text.empty() && std::isspace(static_cast<unsigned char>(m.text.back()))) {
          m.text.pop_back();
        }
        auto bad = [&] { return std::runtime_error(path + ":" + std::to_string(lineno) + ": bad mutation"); };
        if (kind == "z") {
          int r, i, v;
          std::string xi;
          if (!(ss >> r >> i >> xi >> v)) {
            throw bad();
          }
          m.apply = [=](DescentInstance& D) {
            D.z.at(xi).at(static_cast<std::size_t>(r)).at(static_cast<std::size_t>(i)) = v;
          };
        } else if (kind == "t") {
          int r, v;
          if (!(ss >> r >> v)) {
            throw bad();
          }
          m.apply = [=](DescentInstance& D) { D.t.at(static_cast<std::size_t>(r)) = v; };
        } else if (kind == "mu") {
          int x, y;
          if (!(ss >> x >> y)) {
            throw bad();
          }
          std::string expr;
          std::getline(ss, expr);
          GElem const v = eval_text(expr);
          m.apply       = [=](DescentInstance& D) {
            for (auto& e : D.mu) {
              if (e.x == x && e.y == y) {
                e.value  = v;
                e.source = expr;
                return;
              }
            }
            D.mu.push_back(MuEntry{x, y, v, expr});
          };
        } else {
          throw bad();
        }
        if (scope != "all" && scope != "validate") {
          throw bad();
        }
        out.push_back(std::move(m));
      }
      return out;
    }

    // Outcome of every E_r(X,Y) with X, Y disjoint subsets of Omega.
    std::string er_table(DescentInstance const& D) {
      NameSet const omega = D.omega();
      std::string   out;
      std::size_t   combos = 1;
      for (std::size_t k = 0; k < omega.size(); ++k) {
        combos *= 3;
      }
      for (int r = 0; r < D.m(); ++r) {
        for (int k = 0; k <= D.n - 1; ++k) {
          for (std::size_t code = 0; code < combos; ++code) {
            NameSet     X, Y;
            std::size_t c = code;
            for (auto const& xi : omega) {
              if (c % 3 == 1) {
                X.push_back(xi);
              } else if (c % 3 == 2) {
                Y.push_back(xi);
              }
              c /= 3;
            }
            try {
              out += check_Er(D, r, k, X, Y) ? '1' : '0';
            } catch (DomainError const&) {
              out += 'e';
            }
          }
        }
      }
      return out;
    }

    std::string p_table(DescentInstance const& D) {
      std::string out;
      for (int k = 0; k <= D.n - 1 && k <= 20; ++k) {
        for (int l = 0; l <= (1 << k); ++l) {
          if ((1 << k) - l + 2 * l > static_cast<int>(D.U.size())) {
            continue;  // no instances
          }
          try {
            PReport const p = check_P(D, k, l);
            out += p.holds() ? '1' : '0';
            for (auto const& f : p.failures) {
              out += std::to_string(f.r) + set_text(f.X) + set_text(f.Y);
            }
          } catch (DomainError const&) {
            out += 'e';
          }
          out += ';';
        }
      }
      return out;
    }

    void suite_mutation(SuiteConfig const& cfg, Report& rep) {
      std::filesystem::path const fx = std::filesystem::path(data_dir(cfg)) / "fixtures";
      DescentInstance const base = DescentInstance::load((fx / "descent_chain9.inst").string());
      auto const mutations       = load_mutations((fx / "descent_chain9.mut").string());

      bool const base_ok = validate_instance(base).ok();
      std::string const base_er = er_table(base);
      std::string const base_p  = p_table(base);
      rep.kv("baseline.valid", base_ok ? "true" : "false");
      rep.require(base_ok, "baseline fixture does not validate");
      rep.require(base_p.find('0') == std::string::npos, "baseline fixture has a failing P(k,l)");

      int all = 0, det_v = 0, det_e = 0, det_p = 0, extra = 0, extra_v = 0;
      for (auto const& m : mutations) {
        DescentInstance D = base;
        m.apply(D);
        bool const v = !validate_instance(D).ok();
        if (m.scope == "all") {
          ++all;
          bool const e = er_table(D) != base_er;
          bool const p = p_table(D) != base_p;
          det_v += v ? 1 : 0;
          det_e += e ? 1 : 0;
          det_p += p ? 1 : 0;
          rep.kv("detect", m.text + " validate=" + (v ? "1" : "0") + " er=" + (e ? "1" : "0")
                               + " p=" + (p ? "1" : "0"));
          if (!v || !e || !p) {
            rep.fail("undetected", m.text);
          }
        } else {
          ++extra;
          extra_v += v ? 1 : 0;
          rep.kv("detect", m.text + " validate=" + (v ? "1" : "0"));
          if (!v) {
            rep.fail("undetected", m.text);
          }
        }
      }
      rep.kv("mutations", all);
      rep.kv("validate_detected", det_v);
      rep.kv("er_detected", det_e);
      rep.kv("p_detected", det_p);
      rep.kv("validate_only_mutations", extra);
      rep.kv("validate_only_detected", extra_v);
      rep.require(all >= 10, "fewer than 10 bundled mutations");
    }

    ////////////////////////////////////////////////////////////////////////
    // 12. Serialization round trip
    ////////////////////////////////////////////////////////////////////////

    void suite_roundtrip(SuiteConfig const& cfg, Report& rep) {
      auto const gens = omega(cfg.omega_size);
      int const  n    = cases_or(cfg, 1000);
      long long  failures = 0, nodes = 0;
      for (int k = 0; k < n; ++k) {
        Rng         rng(cfg.seed, "roundtrip", static_cast<std::uint64_t>(k));
        GElem const x = random_elem(rng, gens, cfg.max_rank);
        nodes += x.is_base() ? 0 : 1;
        std::string const s = serialize(x);
        try {
          GElem const y = deserialize(s);
          if (!(y == x) || serialize(y) != s || serialize(evaluate(parse(s))) != s) {
            ++failures;
            rep.fail("mismatch", "case " + std::to_string(k) + ": " + s);
          }
          g().validate(y);
        } catch (std::exception const& e) {
          ++failures;
          rep.fail("error", "case " + std::to_string(k) + ": " + e.what());
        }
      }
      rep.kv("cases", n);
      rep.kv("nodes", nodes);
      rep.kv("failures", failures);
    }

    using SuiteFn = void (*)(SuiteConfig const&, Report&);

    std::vector<std::pair<std::string, SuiteFn>> const& registry() {
      static std::vector<std::pair<std::string, SuiteFn>> const r{
          {"relations", suite_relations},     {"lub", suite_lub},
          {"confluence", suite_confluence},   {"lemma44", suite_lemma44},
          {"evaporation", suite_evaporation}, {"erosion", suite_erosion},
          {"conc", suite_conc},               {"functor", suite_functor},
          {"oracles", suite_oracles},         {"kuratowski", suite_kuratowski},
          {"mutation", suite_mutation},       {"roundtrip", suite_roundtrip},
      };
      return r;
    }

  }  // namespace

  std::vector<std::string> suite_names() {
    std::vector<std::string> out;
    for (auto const& [name, fn] : registry()) {
      out.push_back(name);
    }
    return out;
  }

  bool is_suite(std::string const& name) {
    auto const names = suite_names();
    return std::find(names.begin(), names.end(), name) != names.end();
  }

  SuiteResult run_suite(std::string const& name, SuiteConfig const& cfg) {
    for (auto const& [n, fn] : registry()) {
      if (n == name) {
        SuiteResult r;
        r.name = name;
        Report rep(r);
        try {
          fn(cfg, rep);
        } catch (std::exception const& e) {
          r.pass = false;
          r.lines.push_back(name + ".error " + e.what());
        }
        return r;
      }
    }
    throw std::invalid_argument("unknown suite: " + name);
  }

}  // namespace slat
