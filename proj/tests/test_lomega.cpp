#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <numeric>

#include "slat/lomega.hpp"
#include "slat/sample.hpp"

using namespace slat;

namespace {

  GeneratorId const xi("xi"), eta("eta"), zeta("zeta");

  PairElem P(std::vector<std::string> pos, std::vector<std::string> neg) {
    GeneratorSet p, n;
    for (auto& s : pos) {
      p.emplace_back(s);
    }
    for (auto& s : neg) {
      n.emplace_back(s);
    }
    return PairElem::pair(make_generator_set(p), make_generator_set(n));
  }

  std::vector<PairElem> all_over(std::vector<std::string> const& names) {
    GeneratorSet gs;
    for (auto const& n : names) {
      gs.emplace_back(n);
    }
    return l_all(make_generator_set(gs));
  }

}  // namespace

TEST_CASE("generators") {
  CHECK(l_gen(0, xi) == P({"xi"}, {}));
  CHECK(l_gen(1, xi) == P({}, {"xi"}));
  CHECK(l_join(l_gen(0, xi), l_gen(1, xi)).is_top());
  CHECK(l_gen(0, xi).to_string() == "pair([xi],[])");
  CHECK(PairElem::top().to_string() == "top");
  CHECK(PairElem().to_string() == "pair([],[])");
}

TEST_CASE("pair constructor rejects overlap") {
  CHECK_THROWS_AS(P({"xi"}, {"xi"}), std::invalid_argument);
}

TEST_CASE("join examples") {
  CHECK(l_join(PairElem(), l_gen(0, eta)) == l_gen(0, eta));
  CHECK(l_join(l_gen(0, xi), l_gen(0, eta)) == P({"eta", "xi"}, {}));
  CHECK(l_join(PairElem::top(), PairElem()).is_top());
}

TEST_CASE("order examples") {
  CHECK(l_leq(P({"xi"}, {}), PairElem::top()));
  CHECK(l_leq(P({"xi"}, {}), P({"eta", "xi"}, {})));
  CHECK_FALSE(l_leq(P({"xi"}, {}), P({}, {"xi"})));
  CHECK_FALSE(l_leq(PairElem::top(), P({"xi"}, {"eta"})));
}

TEST_CASE("semilattice laws on all of L({xi,eta,zeta})") {
  auto const all = all_over({"xi", "eta", "zeta"});
  REQUIRE(all.size() == 28);  // 3^3 pairs and top
  for (auto const& p : all) {
    CHECK(l_join(p, p) == p);
    CHECK(l_join(p, PairElem()) == p);
    CHECK(l_join(p, PairElem::top()).is_top());
    for (auto const& q : all) {
      CHECK(l_join(p, q) == l_join(q, p));
      CHECK(l_leq(p, q) == (l_join(p, q) == q));
      for (auto const& r : all) {
        CHECK(l_join(l_join(p, q), r) == l_join(p, l_join(q, r)));
      }
    }
  }
}

// The join-semilattice with 0 and 1 presented by generators a_i^x and the
// relations a_0^x v a_1^x = 1, computed as a quotient of the free one
// (subsets of generators, plus 1) by the least congruence for the relations.
TEST_CASE("pair model matches the presented semilattice on three generators") {
  std::vector<std::string> const names{"eta", "xi", "zeta"};
  int const                      gens = 6;  // a0, a1 per name
  int const                      top  = 1 << gens;
  int const                      size = top + 1;
  auto join = [&](int s, int t) { return (s == top || t == top) ? top : (s | t); };

  std::vector<int> parent(static_cast<std::size_t>(size));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int a) {
    return parent[static_cast<std::size_t>(a)] == a ? a
                                                    : parent[static_cast<std::size_t>(a)] = find(parent[static_cast<std::size_t>(a)]);
  };
  auto unite = [&](int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) {
      return false;
    }
    parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    return true;
  };
  for (int k = 0; k < 3; ++k) {
    unite((1 << (2 * k)) | (1 << (2 * k + 1)), top);
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (int s = 0; s < size; ++s) {
      for (int t = s + 1; t < size; ++t) {
        if (find(s) != find(t)) {
          continue;
        }
        for (int u = 0; u < size; ++u) {
          changed |= unite(join(s, u), join(t, u));
        }
      }
    }
  }

  auto model = [&](int s) {
    if (s == top) {
      return PairElem::top();
    }
    PairElem acc;
    for (int k = 0; k < gens; ++k) {
      if (s & (1 << k)) {
        acc = l_join(acc, l_gen(k % 2, GeneratorId(names[static_cast<std::size_t>(k / 2)])));
      }
    }
    return acc;
  };
  for (int s = 0; s < size; ++s) {
    for (int t = 0; t < size; ++t) {
      CHECK((find(s) == find(t)) == (model(s) == model(t)));
    }
  }
}

TEST_CASE("l_map") {
  auto const id = [](GeneratorId const& g) { return g; };
  for (auto const& p : all_over({"xi", "eta"})) {
    CHECK(l_map(id, p) == p);
  }
  auto const collapse = [](GeneratorId const&) { return GeneratorId("zeta"); };
  CHECK(l_map(collapse, P({"xi"}, {"eta"})).is_top());
  auto const inj = [](GeneratorId const& g) { return GeneratorId(g.name + "2"); };
  CHECK(l_map(inj, P({"xi"}, {"eta"})) == P({"xi2"}, {"eta2"}));

  // Homomorphism and composition on samples.
  GeneratorSet const gs = omega(4);
  for (int k = 0; k < 300; ++k) {
    Rng        rng(7, "l_map", static_cast<std::uint64_t>(k));
    std::map<std::string, GeneratorId> f_img, h_img;
    for (auto const& g : gs) {
      f_img[g.name] = gs[rng.below(gs.size())];
      h_img[g.name] = gs[rng.below(gs.size())];
    }
    auto f = [&](GeneratorId const& g) { return f_img.at(g.name); };
    auto h = [&](GeneratorId const& g) { return h_img.at(g.name); };
    PairElem const p = random_pair(rng, gs);
    PairElem const q = random_pair(rng, gs);
    CHECK(l_map(f, l_join(p, q)) == l_join(l_map(f, p), l_map(f, q)));
    CHECK(l_map(f, PairElem()) == PairElem());
    CHECK(l_map(f, PairElem::top()).is_top());
    CHECK(l_map([&](GeneratorId const& g) { return h(f(g)); }, p) == l_map(h, l_map(f, p)));
  }
}

TEST_CASE("l_retract") {
  GeneratorId const alpha("alpha");
  CHECK(l_retract(alpha, 0, l_gen(0, alpha)) == PairElem());
  CHECK(l_retract(alpha, 0, l_gen(1, alpha)).is_top());
  CHECK(l_retract(alpha, 1, l_gen(1, alpha)) == PairElem());
  CHECK(l_retract(alpha, 1, l_gen(0, alpha)).is_top());
  CHECK(l_retract(alpha, 0, P({"xi"}, {"eta"})) == P({"xi"}, {"eta"}));
  CHECK(l_retract(alpha, 0, P({"alpha", "xi"}, {"eta"})) == P({"xi"}, {"eta"}));

  auto const all = all_over({"alpha", "xi"});
  for (int i = 0; i < 2; ++i) {
    for (auto const& p : all) {
      PairElem const r = l_retract(alpha, i, p);
      CHECK(l_retract(alpha, i, r) == r);
      CHECK(l_in(r, {GeneratorId("xi")}));
      for (auto const& q : all) {
        CHECK(l_retract(alpha, i, l_join(p, q)) == l_join(r, l_retract(alpha, i, q)));
      }
    }
  }
}

TEST_CASE("membership in L(X) is closed under intersections") {
  GeneratorSet const universe = omega(4);
  auto const         all      = l_all(universe);
  for (unsigned a = 0; a < 16; ++a) {
    for (unsigned b = 0; b < 16; ++b) {
      GeneratorSet X, Y, XY;
      for (unsigned k = 0; k < 4; ++k) {
        if (a & (1u << k)) {
          X.push_back(universe[k]);
        }
        if (b & (1u << k)) {
          Y.push_back(universe[k]);
        }
        if ((a & b) & (1u << k)) {
          XY.push_back(universe[k]);
        }
      }
      for (auto const& p : all) {
        CHECK((l_in(p, X) && l_in(p, Y)) == l_in(p, XY));
      }
    }
  }
  CHECK(l_in(PairElem::top(), {}));
  CHECK(l_support(PairElem::top()).empty());
  CHECK(l_support(P({"xi"}, {"eta"})).size() == 2);
}

TEST_CASE("identifiers order as strings") {
  CHECK(GeneratorId("10") < GeneratorId("9"));
  CHECK(P({"9", "10"}, {}).to_string() == "pair([10,9],[])");
  CHECK(is_valid_identifier("x_1"));
  CHECK_FALSE(is_valid_identifier("x-1"));
  CHECK_FALSE(is_valid_identifier(""));
}
