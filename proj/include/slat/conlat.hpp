#ifndef SLAT_CONLAT_HPP
#define SLAT_CONLAT_HPP

// Congruences of finite algebras given by operation tables.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "slat/freedist.hpp"

namespace slat {

  struct Operation {
    std::string      name;
    int              arity = 0;
    std::vector<int> table;  // row-major, k^arity entries

    int apply(int k, std::span<int const> args) const;
  };

  class FinAlgebra {
   public:
    FinAlgebra() = default;
    explicit FinAlgebra(int k) : k_(k) {}

    int  size() const noexcept { return k_; }
    void add_operation(Operation op);
    // Uses the named basic operation as the join.
    void set_join(std::string const& op_name);
    // A join that is not a basic operation.
    void set_join_table(std::vector<int> table);
    void set_top(std::optional<int> top) { top_ = top; }

    std::vector<Operation> const& operations() const noexcept { return ops_; }
    bool has_join() const noexcept { return !join_.empty(); }
    int  join(int a, int b) const { return join_[static_cast<std::size_t>(a * k_ + b)]; }
    std::vector<int> const&   join_table() const noexcept { return join_; }
    std::optional<std::string> const& join_name() const noexcept { return join_name_; }
    std::optional<int> top() const noexcept { return top_; }
    bool leq(int a, int b) const { return join(a, b) == b; }

    // Throws DomainError on malformed tables or a join that is not a
    // semilattice operation.
    void check() const;

    static FinAlgebra parse(std::string_view text);
    static FinAlgebra load(std::string const& path);
    std::string to_text() const;

   private:
    int                        k_ = 0;
    std::vector<Operation>     ops_;
    std::vector<int>           join_;
    std::optional<std::string> join_name_;
    std::optional<int>         top_;
  };

  // A partition of {0..k-1} as block ids: block of 0 is 0, further blocks
  // numbered in order of their least members.
  class Congruence {
   public:
    Congruence() = default;
    static Congruence identity(int k);
    static Congruence all(int k);
    // Canonicalizes an arbitrary labeling.
    static Congruence from_labels(std::vector<int> const& labels);
    static Congruence from_blocks(int k, std::vector<std::vector<int>> const& blocks);

    int  size() const noexcept { return static_cast<int>(block_.size()); }
    int  block_of(int x) const { return block_[static_cast<std::size_t>(x)]; }
    int  block_count() const noexcept;
    bool related(int x, int y) const { return block_of(x) == block_of(y); }
    std::vector<int> const&       labels() const noexcept { return block_; }
    std::vector<std::vector<int>> blocks() const;

    // Refinement order.
    bool leq(Congruence const& other) const;
    Congruence join(Congruence const& other) const;
    Congruence meet(Congruence const& other) const;

    // {{0,1},{2}}
    std::string to_string() const;

    friend bool operator==(Congruence const&, Congruence const&) = default;
    friend auto operator<=>(Congruence const&, Congruence const&) = default;

   private:
    std::vector<int> block_;
  };

  bool is_compatible(FinAlgebra const& L, Congruence const& c);
  bool is_join_compatible(FinAlgebra const& L, Congruence const& c);

  // Least congruence containing the given pairs (basic operations only).
  Congruence generate(FinAlgebra const& L, std::vector<std::pair<int, int>> const& pairs);
  Congruence theta(FinAlgebra const& L, int x, int y);
  Congruence theta_plus(FinAlgebra const& L, int x, int y);

  struct SemilatticeTable {
    int                      n = 0;
    std::vector<int>         join_table;
    int                      zero = 0;
    std::vector<std::string> labels;

    int  join(int a, int b) const { return join_table[static_cast<std::size_t>(a * n + b)]; }
    bool leq(int a, int b) const { return join(a, b) == b; }
    // Throws DomainError unless the table is a (v,0)-semilattice.
    void check() const;
  };

  struct SemHom {
    SemilatticeTable dom;
    SemilatticeTable cod;
    std::vector<int> image;

    int  operator()(int x) const { return image[static_cast<std::size_t>(x)]; }
    bool is_homomorphism() const;
  };

  struct ConcResult {
    SemilatticeTable        table;     // index 0 is the identity congruence
    std::vector<Congruence> elements;
    // principal[x*k+y] = index of theta(x,y).
    std::vector<int> principal;
    int              index_of(Congruence const& c) const;
  };

  ConcResult conc(FinAlgebra const& L);

  bool is_distributive(SemilatticeTable const& S);

  // Largest s with mu(s) <= y (exists since mu(0) = 0).
  int  largest_below(SemHom const& mu, int y);
  bool weakly_distributive_at(SemHom const& mu, int x);
  bool is_weakly_distributive(SemHom const& mu);
  // Direct evaluation of the quantified definition.
  bool weakly_distributive_at_oracle(SemHom const& mu, int x);

  struct Quotient {
    FinAlgebra       algebra;
    std::vector<int> projection;
  };
  // Throws DomainError if c is not compatible with the basic operations and
  // the designated join.
  Quotient quotient(FinAlgebra const& L, Congruence const& c);

  // Relational composition a o b o a o ... with m+1 factors equals a v b,
  // for all congruences a, b.
  bool permutability(FinAlgebra const& L, int m);

  bool check_congruence_compatible(FinAlgebra const& L);

  inline int epsilon(long long n) {
    return static_cast<int>(n & 1);
  }

  // Principal congruences of one algebra, computed once.
  class CongruenceTable {
   public:
    explicit CongruenceTable(FinAlgebra const& L);

    FinAlgebra const& algebra() const noexcept { return *L_; }
    Congruence const& theta(int x, int y) const {
      return principal_[static_cast<std::size_t>(x * L_->size() + y)];
    }
    Congruence theta_plus(int x, int y) const { return theta(y, L_->join(x, y)); }
    bool       join_compatible() const noexcept { return join_compatible_; }

   private:
    FinAlgebra const*       L_;
    std::vector<Congruence> principal_;
    bool                    join_compatible_ = false;
  };

  struct ErosionReport {
    std::vector<Congruence> v;   // v_i, i < n
    Congruence              u[2];
    Congruence              a[2];
    Congruence              theta_plus[2];  // Theta+(z_n, x_j)
    bool                    joins_congruent = false;
    bool                    u_below[2]      = {false, false};
    bool                    u_in_con_c[2]   = {false, false};

    bool all_hold() const {
      return joins_congruent && u_below[0] && u_below[1] && u_in_con_c[0]
             && u_in_con_c[1];
    }
  };

  // Builds u_0, u_1 from the alternating chain and checks the three
  // conclusions. Throws DomainError if the join is not congruence-compatible,
  // |z| < 2, or some z_i (i < n) is not below z_n.
  ErosionReport erosion(CongruenceTable const& C, int x0, int x1, std::vector<int> const& z);
  ErosionReport erosion(FinAlgebra const& L, int x0, int x1, std::vector<int> const& z);

  // u lies in the (v,0)-subsemilattice generated by theta(p,q), p,q in U.
  bool in_con_c(CongruenceTable const& C, std::vector<int> const& U, Congruence const& u);

  ////////////////////////////////////////////////////////////////////////////
  // Brute-force references
  ////////////////////////////////////////////////////////////////////////////

  // Every partition of {0..k-1}, canonical form.
  std::vector<Congruence> all_partitions(int k);
  // Least compatible partition relating x and y, by enumeration.
  Congruence theta_oracle(FinAlgebra const& L, int x, int y);

}  // namespace slat

#endif  // SLAT_CONLAT_HPP
