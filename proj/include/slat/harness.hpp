#ifndef SLAT_HARNESS_HPP
#define SLAT_HARNESS_HPP

// Finite instances of the descent argument: chains z_{r,i}^xi in a finite
// algebra L, a labeling mu of its principal congruences by elements of
// G(Omega), the equalities E_r(X,Y) and the statements P(k,l), plus
// Kuratowski free sets for maps Phi: [X]^n -> finite subsets of X.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "slat/conlat.hpp"
#include "slat/gomega.hpp"

namespace slat {

  using NameSet = std::vector<std::string>;  // sorted, unique

  NameSet make_name_set(std::vector<std::string> names);

  ////////////////////////////////////////////////////////////////////////////
  // Free sets
  ////////////////////////////////////////////////////////////////////////////

  class PhiMap {
   public:
    PhiMap() = default;
    PhiMap(NameSet ground, int arity);

    NameSet const& ground() const noexcept { return ground_; }
    int            arity() const noexcept { return arity_; }

    // Throws DomainError unless `from` is an n-subset of the ground set and
    // `to` a subset of it.
    void set(NameSet const& from, NameSet const& to);
    // Subsets without an explicit line map to the empty set.
    NameSet const& operator()(NameSet const& from) const;

    static PhiMap parse(std::string_view text);
    static PhiMap load(std::string const& path);

   private:
    NameSet                    ground_;
    int                        arity_ = 0;
    std::map<NameSet, NameSet> values_;
  };

  // x not in Phi(U \ {x}) for every x in U. Throws DomainError unless U is an
  // (n+1)-subset of the ground set.
  bool is_free(NameSet const& U, PhiMap const& phi);
  // First free (n+1)-subset in lexicographic order.
  std::optional<NameSet> find_free(PhiMap const& phi);

  ////////////////////////////////////////////////////////////////////////////
  // Descent instances
  ////////////////////////////////////////////////////////////////////////////

  struct MuEntry {
    int         x = 0;
    int         y = 0;
    GElem       value;
    std::string source;
  };

  struct DescentInstance {
    FinAlgebra           L;
    std::vector<MuEntry> mu;
    std::vector<int>     t;  // t_r
    // z[xi][r][i]; -1 marks a missing entry.
    std::map<std::string, std::vector<std::vector<int>>> z;
    NameSet U;  // defaults to every xi with z lines
    int     n = 0;

    int      m() const noexcept { return static_cast<int>(t.size()); }
    NameSet  omega() const;
    int      z_at(int r, int i, std::string const& xi) const;

    static DescentInstance parse(std::string_view text);
    static DescentInstance load(std::string const& path);
    std::string to_text() const;
  };

  // The join-homomorphism Conc L -> G(Omega) induced by the mu lines. The
  // congruences named by mu lines must join-generate Conc L; every other
  // value is the join of the given values below it.
  class MuExtension {
   public:
    explicit MuExtension(DescentInstance const& D);

    ConcResult const& con() const noexcept { return con_; }
    bool  defined() const noexcept { return problems_.empty(); }
    // Why mu could not be extended (empty when defined()).
    std::vector<std::string> const& problems() const noexcept { return problems_; }
    GElem const& at(int index) const;
    GElem const& of_theta(int x, int y) const;
    // Conc indices with a mu line, and the value given there.
    std::vector<int> const& given_indices() const noexcept { return given_; }
    GElem const&            given(int index) const;

   private:
    ConcResult                        con_;
    int                               k_;
    std::vector<std::optional<GElem>> principal_value_;  // by conc index
    std::vector<GElem>                value_;            // by conc index
    std::vector<int>                  given_;
    std::vector<std::string>          problems_;
  };

  struct ReportItem {
    std::string              name;
    bool                     ok = true;
    bool                     informational = false;
    std::vector<std::string> details;
  };

  struct InstanceReport {
    std::vector<ReportItem> items;
    // True when every non-informational item passes.
    bool ok() const;
  };

  InstanceReport validate_instance(DescentInstance const& D);

  // E_r(X,Y): the join of z_{r,n-k}^xi (xi in X) and z_{r,n-k-1}^eta
  // (eta in Y) equals the top. Throws DomainError on bad arguments.
  bool check_Er(DescentInstance const& D, int r, int k, NameSet const& X, NameSet const& Y);

  struct EFailure {
    int     r = 0;
    NameSet X, Y;
  };

  struct PReport {
    int                   k = 0, l = 0;
    long long             instances = 0;
    std::vector<EFailure> failures;
    bool                  holds() const { return failures.empty(); }
  };

  PReport check_P(DescentInstance const& D, int k, int l);

  NameSet phi_from_instance(DescentInstance const& D, MuExtension const& mu, NameSet const& X);
  NameSet phi_from_instance(DescentInstance const& D, NameSet const& X);

  std::string set_text(NameSet const& s);  // {a,b}

}  // namespace slat

#endif  // SLAT_HARNESS_HPP
