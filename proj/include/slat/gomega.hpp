#ifndef SLAT_GOMEGA_HPP
#define SLAT_GOMEGA_HPP

// G(Omega) = D(L(Omega)): generators, supports, retractions and the checkers
// for the two lemmas about G that the erosion argument relies on.

#include <functional>
#include <string>
#include <vector>

#include "slat/freedist.hpp"
#include "slat/lomega.hpp"

namespace slat {

  using GExtension = FreeExtension<LOmegaOps>;
  using GElem      = GExtension::Elem;

  // The shared (stateless) extension object for G(Omega).
  GExtension const& g();

  GElem g_gen(int i, GeneratorId const& xi);
  GElem g_zero();
  GElem g_one();
  GElem g_lift(PairElem const& p);

  // Every generator occurring in the canonical form of x.
  GeneratorSet support(GElem const& x);
  bool         in_G(GElem const& x, GeneratorSet const& xs);

  // G(f) for a map f on generators.
  GElem g_map(std::function<GeneratorId(GeneratorId const&)> const& f,
              GElem const&                                          x);

  // D(r) for the retraction r of L(Omega) onto L(Omega \ {alpha}) with
  // r(a_i^alpha) = 0.
  GElem g_retract(GeneratorId const& alpha, int i, GElem const& x);

  enum class Verdict { premise_failed, holds, counterexample };
  char const* to_string(Verdict v);

  struct CheckResult {
    Verdict                  verdict = Verdict::premise_failed;
    std::vector<std::string> failed_premises;
  };

  // x <= y v a_i^alpha implies x <= y, for x, y in G(Omega \ {alpha}).
  CheckResult check_lemma_xleqy(GeneratorId const& alpha,
                                int                i,
                                GElem const&       x,
                                GElem const&       y);
  // Same, with y v a_i^alpha supplied by the caller (for sweeps that reuse it).
  CheckResult check_lemma_xleqy(GeneratorId const& alpha,
                                int                i,
                                GElem const&       x,
                                GElem const&       y,
                                GElem const&       y_join_gen);

  // For distinct alpha, beta, delta; x in G(Omega\{beta}), y in G(Omega\{alpha}),
  // z in G(Omega\{delta}): z <= x v y, x <= a_0^delta, a_i^alpha and
  // y <= a_1^delta, a_j^beta imply z = 0.
  CheckResult check_evaporation(GeneratorId const& alpha,
                                GeneratorId const& beta,
                                GeneratorId const& delta,
                                int                i,
                                int                j,
                                GElem const&       x,
                                GElem const&       y,
                                GElem const&       z);
  CheckResult check_evaporation(GeneratorId const& alpha,
                                GeneratorId const& beta,
                                GeneratorId const& delta,
                                int                i,
                                int                j,
                                GElem const&       x,
                                GElem const&       y,
                                GElem const&       z,
                                GElem const&       x_join_y);

  ////////////////////////////////////////////////////////////////////////////
  // Bounded enumeration of elements of rank <= 1
  ////////////////////////////////////////////////////////////////////////////

  // Per-component filters. An element x of rank <= 1 passes when its
  // projection passes `proj_ok` and each of its triples passes `triple_ok`.
  // The order x <= b is of exactly this shape (see below_filter), so the
  // enumeration of {x : x <= b} is exhaustive without rejection sampling.
  struct Rank1Filter {
    std::function<bool(GElem const&)>                             proj_ok;
    std::function<bool(GElem const&, GElem const&, GElem const&)> triple_ok;
  };

  Rank1Filter below_filter(GElem const& bound);
  Rank1Filter both(Rank1Filter a, Rank1Filter b);

  // Visits every element of rank <= 1 over L(gens) accepted by the filter:
  // rank 0 elements first, then nodes grouped by projection. Returns the
  // number of elements visited. `limit` (if nonzero) aborts with
  // std::length_error once exceeded.
  std::size_t for_each_rank_le1(GeneratorSet const&                    gens,
                                Rank1Filter const&                     filter,
                                std::function<void(GElem const&)> const& visit,
                                std::size_t                            limit = 0);

}  // namespace slat

#endif  // SLAT_GOMEGA_HPP
