#ifndef SLAT_SAMPLE_HPP
#define SLAT_SAMPLE_HPP

// Seeded random elements of L(Omega) and G(Omega).
//
// Every stream is keyed by (seed, stream name, case index), so one case of a
// suite can be replayed without running the cases before it.

#include <cstdint>
#include <random>
#include <string_view>

#include "slat/gomega.hpp"

namespace slat {

  std::uint64_t splitmix64(std::uint64_t& state);
  std::uint64_t fnv1a(std::string_view s);

  class Rng {
   public:
    Rng(std::uint64_t seed, std::string_view stream, std::uint64_t index);

    std::uint64_t next() { return engine_(); }
    // Uniform in [0, n); n > 0.
    std::size_t below(std::size_t n);
    bool        chance(unsigned num, unsigned den) { return below(den) < num; }

    // Uniformly random index choice for the rewriting steps.
    ChoicePolicy policy();

   private:
    std::mt19937_64 engine_;
  };

  // x0, x1, ..., x{n-1}.
  GeneratorSet omega(int n);

  PairElem random_pair(Rng& rng, GeneratorSet const& gens);
  // A random element of L below p.
  PairElem random_pair_below(Rng& rng, PairElem const& p, GeneratorSet const& gens);

  // Rank <= max_rank, built from joins and bowties of smaller random elements.
  GElem random_elem(Rng& rng, GeneratorSet const& gens, int max_rank);
  // A random element below b, assembled from pieces of the decomposition of b.
  GElem random_below(Rng& rng, GElem const& b, GeneratorSet const& gens);

  struct CTriple {
    GElem a, b, c;
  };
  // a, b of rank <= max_rank and c <= a v b.
  CTriple random_c_triple(Rng& rng, GeneratorSet const& gens, int max_rank);

}  // namespace slat

#endif  // SLAT_SAMPLE_HPP
