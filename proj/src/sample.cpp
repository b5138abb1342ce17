#include "slat/sample.hpp"

#include <string>

namespace slat {

  std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z               = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z               = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    return h;
  }

  Rng::Rng(std::uint64_t seed, std::string_view stream, std::uint64_t index) {
    std::uint64_t state = seed;
    std::uint64_t k     = splitmix64(state) ^ fnv1a(stream);
    state               = k;
    k                   = splitmix64(state) ^ index;
    state               = k;
    std::seed_seq seq{static_cast<std::uint32_t>(splitmix64(state)),
                      static_cast<std::uint32_t>(splitmix64(state)),
                      static_cast<std::uint32_t>(splitmix64(state)),
                      static_cast<std::uint32_t>(splitmix64(state))};
    engine_.seed(seq);
  }

  std::size_t Rng::below(std::size_t n) {
    // Rejection keeps the result uniform and independent of the standard
    // library's distribution implementations.
    std::uint64_t const bound = n;
    std::uint64_t const limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t       r;
    do {
      r = engine_();
    } while (r >= limit);
    return static_cast<std::size_t>(r % bound);
  }

  ChoicePolicy Rng::policy() {
    return [this](std::size_t n) { return below(n); };
  }

  GeneratorSet omega(int n) {
    GeneratorSet out;
    for (int k = 0; k < n; ++k) {
      out.emplace_back("x" + std::to_string(k));
    }
    return make_generator_set(std::move(out));
  }

  PairElem random_pair(Rng& rng, GeneratorSet const& gens) {
    std::size_t const kind = rng.below(10);
    if (kind == 0) {
      return PairElem::bottom();
    }
    if (kind == 1) {
      return PairElem::top();
    }
    if (kind < 6) {
      return l_gen(static_cast<int>(rng.below(2)), gens[rng.below(gens.size())]);
    }
    GeneratorSet pos, neg;
    for (auto const& g : gens) {
      std::size_t const r = rng.below(4);
      if (r == 0) {
        pos.push_back(g);
      } else if (r == 1) {
        neg.push_back(g);
      }
    }
    return PairElem::pair(std::move(pos), std::move(neg));
  }

  PairElem random_pair_below(Rng& rng, PairElem const& p, GeneratorSet const& gens) {
    if (p.is_top()) {
      return rng.chance(1, 4) ? p : random_pair(rng, gens);
    }
    GeneratorSet pos, neg;
    for (auto const& g : p.pos()) {
      if (rng.chance(1, 2)) {
        pos.push_back(g);
      }
    }
    for (auto const& g : p.neg()) {
      if (rng.chance(1, 2)) {
        neg.push_back(g);
      }
    }
    return PairElem::pair(std::move(pos), std::move(neg));
  }

  GElem random_below(Rng& rng, GElem const& b, GeneratorSet const& gens) {
    if (b.is_base()) {
      return g_lift(random_pair_below(rng, b.base(), gens));
    }
    if (rng.chance(1, 8)) {
      return b;
    }
    auto const pieces = g().decompose(b);
    GElem      acc    = rng.chance(1, 2) ? random_below(rng, pieces[0], gens) : g_zero();
    for (std::size_t k = 1; k < pieces.size(); ++k) {
      if (rng.chance(1, 2)) {
        acc = g().join(acc, pieces[k]);
      }
    }
    return acc;
  }

  CTriple random_c_triple(Rng& rng, GeneratorSet const& gens, int max_rank) {
    CTriple t;
    t.a = random_elem(rng, gens, max_rank);
    t.b = random_elem(rng, gens, max_rank);
    GElem const ab = g().join(t.a, t.b);
    switch (rng.below(8)) {
      case 0:
        t.c = t.a;
        break;
      case 1:
        t.c = t.b;
        break;
      case 2:
        t.c = ab;
        break;
      case 3: {
        // A join of pieces of a and of b.
        t.c = g().join(random_below(rng, t.a, gens), random_below(rng, t.b, gens));
        break;
      }
      default:
        t.c = random_below(rng, ab, gens);
        break;
    }
    return t;
  }

  GElem random_elem(Rng& rng, GeneratorSet const& gens, int max_rank) {
    if (max_rank <= 0 || rng.chance(1, 5)) {
      return g_lift(random_pair(rng, gens));
    }
    std::size_t const parts = 1 + rng.below(2);
    GElem             acc   = g_zero();
    for (std::size_t k = 0; k < parts; ++k) {
      GElem part;
      if (rng.chance(3, 4)) {
        CTriple t = random_c_triple(rng, gens, max_rank - 1);
        part      = g().bowtie(t.a, t.b, t.c);
      } else {
        part = random_elem(rng, gens, max_rank - 1);
      }
      acc = g().join(acc, part);
    }
    return acc;
  }

}  // namespace slat
