#ifndef SLAT_LOMEGA_HPP
#define SLAT_LOMEGA_HPP

// The (v,0,1)-semilattice L(Omega): pairs <X,Y> of finite disjoint generator
// sets, plus a symbolic top. Omega is never materialized; a value only carries
// the generators it mentions.

#include <compare>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace slat {

  // Generator identifiers are ordered lexicographically by name. That order
  // decides every canonical serialization, so "10" < "9".
  struct GeneratorId {
    std::string name;

    GeneratorId() = default;
    explicit GeneratorId(std::string n) : name(std::move(n)) {}

    friend auto operator<=>(GeneratorId const&, GeneratorId const&) = default;
  };

  using GeneratorSet = std::vector<GeneratorId>;  // sorted, unique

  GeneratorSet make_generator_set(std::vector<GeneratorId> ids);
  bool         is_valid_identifier(std::string_view name);

  class PairElem {
   public:
    // Bottom, <{},{}>.
    PairElem() = default;

    static PairElem top();
    static PairElem bottom() { return PairElem(); }
    // Throws std::invalid_argument when pos and neg overlap.
    static PairElem pair(GeneratorSet pos, GeneratorSet neg);

    bool is_top() const noexcept { return top_; }
    bool is_bottom() const noexcept {
      return !top_ && pos_.empty() && neg_.empty();
    }
    GeneratorSet const& pos() const noexcept { return pos_; }
    GeneratorSet const& neg() const noexcept { return neg_; }

    // `top` or `pair([x1,x2],[y1])`.
    std::string to_string() const;

    friend bool operator==(PairElem const&, PairElem const&) = default;

   private:
    bool         top_ = false;
    GeneratorSet pos_;
    GeneratorSet neg_;
  };

  // a_i^xi: <{xi},{}> for i = 0 and <{},{xi}> for i = 1.
  PairElem l_gen(int i, GeneratorId const& xi);

  PairElem l_join(PairElem const& p, PairElem const& q);
  bool     l_leq(PairElem const& p, PairElem const& q);

  // L(f), rebuilt from generator images so that collisions between the two
  // components collapse to top.
  PairElem l_map(std::function<GeneratorId(GeneratorId const&)> const& f,
                 PairElem const&                                     p);

  // The retraction onto L(Omega \ {alpha}) with a_i^alpha |-> 0 (and hence
  // a_{1-i}^alpha |-> 1).
  PairElem l_retract(GeneratorId const& alpha, int i, PairElem const& p);

  // Generators mentioned by p; top mentions none.
  GeneratorSet l_support(PairElem const& p);

  // Membership in L(X) for X given as a sorted set.
  bool l_in(PairElem const& p, GeneratorSet const& x);

  // Every element of L(X): all disjoint (pos, neg) splits plus top, in a
  // deterministic order starting with bottom.
  std::vector<PairElem> l_all(GeneratorSet const& x);

  // Base contract for the free distributive extension.
  struct LOmegaOps {
    using value_type = PairElem;

    PairElem zero() const { return PairElem(); }
    PairElem join(PairElem const& a, PairElem const& b) const {
      return l_join(a, b);
    }
    bool leq(PairElem const& a, PairElem const& b) const {
      return l_leq(a, b);
    }
    std::string to_text(PairElem const& a) const { return a.to_string(); }
  };

}  // namespace slat

#endif  // SLAT_LOMEGA_HPP
