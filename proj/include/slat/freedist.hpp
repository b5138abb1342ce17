#ifndef SLAT_FREEDIST_HPP
#define SLAT_FREEDIST_HPP

// Free distributive extension R(S) of a (v,0)-semilattice S and its iterate
// D(S) = union of R^n(S).
//
// An element of R^n(S) \ R^{n-1}(S) is a reduced finite set of triples
// <u,v,w> over R^{n-1}(S) with w <= u v v and exactly one diagonal triple
// <p,p,p>. Elements are stored canonically:
//
//   * rank 0 elements are base values;
//   * higher elements are nodes {level, proj, triples} where `proj` is the
//     diagonal and `triples` holds the non-diagonal triples, sorted by their
//     canonical text. A node never has an empty triple set: such a set is
//     identified with its projection.
//
// A node's level is its rank. It is usually 1 + the largest constituent rank,
// but joins and functorial images can produce level-n reduced sets whose
// constituents all have rank < n - 1, so the level is stored explicitly.
//
// Canonical text:
//   base              -> Ops::to_text
//   node              -> red(<proj>; [(u,v,w), ...])
//   node, level != 1 + max constituent rank -> red@<level>(<proj>; [...])
//
// Two elements are equal iff their canonical texts are equal.

#include <algorithm>
#include <array>
#include <concepts>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace slat {

  class DomainError : public std::domain_error {
   public:
    using std::domain_error::domain_error;
  };

  enum class ReducedViolation {
    not_in_c,         // w <= u v v fails
    diagonal_stored,  // a diagonal triple among the stored triples
    swapped_pair,     // condition (2)
    dominated,        // condition (3): a component below the projection
    empty_triples,    // node without triples
    bad_level,        // a constituent whose rank is not below the level
    duplicate         // the same triple listed twice
  };

  inline char const* to_string(ReducedViolation v);

  class ValidationError : public DomainError {
   public:
    ValidationError(ReducedViolation which, std::string const& what)
        : DomainError(what), which_(which) {}
    ReducedViolation which() const noexcept { return which_; }

   private:
    ReducedViolation which_;
  };

  template <class O>
  concept BaseSemilattice = requires(O const& o, typename O::value_type const& a) {
    { o.zero() } -> std::convertible_to<typename O::value_type>;
    { o.join(a, a) } -> std::convertible_to<typename O::value_type>;
    { o.leq(a, a) } -> std::convertible_to<bool>;
    { o.to_text(a) } -> std::convertible_to<std::string>;
    { a == a } -> std::convertible_to<bool>;
  };

  template <class V>
  struct Triple;

  template <class O>
    requires BaseSemilattice<O>
  class FreeExtension;

  template <class V>
  class DElem {
   public:
    // An empty handle; only useful as a placeholder before assignment.
    DElem() = default;

    bool valid() const noexcept { return rep_ != nullptr; }
    bool is_base() const noexcept;
    bool is_zero() const noexcept;
    V const& base() const;
    int rank() const noexcept;
    // proj of a base element is the element itself.
    DElem const& proj() const noexcept;
    std::span<Triple<V> const> triples() const noexcept;
    std::string const& text() const noexcept;
    std::size_t hash() const noexcept;
    // Largest rank among proj and triple components (-1 for base elements).
    int max_constituent_rank() const noexcept;

    friend bool operator==(DElem const& a, DElem const& b) noexcept {
      return a.rep_ == b.rep_
             || (a.hash() == b.hash() && a.text() == b.text());
    }

    friend bool operator<(DElem const& a, DElem const& b) noexcept {
      return a.text() < b.text();
    }

   private:
    template <class O>
      requires BaseSemilattice<O>
    friend class FreeExtension;

    struct Rep;
    explicit DElem(std::shared_ptr<Rep const> rep) : rep_(std::move(rep)) {}

    std::shared_ptr<Rep const> rep_;
  };

  template <class V>
  struct Triple {
    DElem<V>    u, v, w;
    std::string key;  // (u,v,w)

    bool diagonal() const noexcept { return u == v && v == w; }
    friend bool operator==(Triple const& a, Triple const& b) noexcept {
      return a.key == b.key;
    }
  };

  template <class V>
  struct DElem<V>::Rep {
    std::optional<V>       base;
    bool                   zero  = false;
    int                    level = 0;
    int                    max_constituent = -1;
    DElem<V>               proj;
    std::vector<Triple<V>> triples;
    std::string            text;
    std::size_t            hash = 0;
  };

  template <class V>
  bool DElem<V>::is_base() const noexcept {
    return rep_->level == 0;
  }
  template <class V>
  bool DElem<V>::is_zero() const noexcept {
    return rep_->zero;
  }
  template <class V>
  V const& DElem<V>::base() const {
    if (!is_base()) {
      throw std::logic_error("base() called on a node");
    }
    return *rep_->base;
  }
  template <class V>
  int DElem<V>::rank() const noexcept {
    return rep_->level;
  }
  template <class V>
  DElem<V> const& DElem<V>::proj() const noexcept {
    return is_base() ? *this : rep_->proj;
  }
  template <class V>
  std::span<Triple<V> const> DElem<V>::triples() const noexcept {
    return rep_->triples;
  }
  template <class V>
  std::string const& DElem<V>::text() const noexcept {
    return rep_->text;
  }
  template <class V>
  std::size_t DElem<V>::hash() const noexcept {
    return rep_->hash;
  }
  template <class V>
  int DElem<V>::max_constituent_rank() const noexcept {
    return rep_->max_constituent;
  }

  struct DElemHash {
    template <class V>
    std::size_t operator()(DElem<V> const& x) const noexcept {
      return x.hash();
    }
  };

  // Intermediate state of the join algorithm: a set of triples at a fixed
  // level, sorted by key, possibly with several diagonals and swapped pairs.
  template <class V>
  struct WorkingSet {
    int                    level = 1;
    std::vector<Triple<V>> triples;

    std::size_t diagonal_count() const {
      return static_cast<std::size_t>(std::count_if(
          triples.begin(), triples.end(), [](auto const& t) {
            return t.diagonal();
          }));
    }
  };

  // Picks one of n >= 1 applicable rewrite candidates. An empty policy always
  // takes candidate 0, the least one in canonical order.
  using ChoicePolicy = std::function<std::size_t(std::size_t)>;

  template <class Ops>
    requires BaseSemilattice<Ops>
  class FreeExtension {
   public:
    using value_type  = typename Ops::value_type;
    using Elem        = DElem<value_type>;
    using TripleType  = Triple<value_type>;
    using WorkingSetT = WorkingSet<value_type>;

    explicit FreeExtension(Ops ops = Ops()) : ops_(std::move(ops)) {
      zero_ = lift(ops_.zero());
    }

    Ops const& base_ops() const noexcept { return ops_; }

    Elem lift(value_type const& v) const {
      auto rep  = std::make_shared<typename Elem::Rep>();
      rep->text = ops_.to_text(v);
      rep->hash = std::hash<std::string>()(rep->text);
      rep->zero = (v == ops_.zero());
      rep->base = v;
      return Elem(std::move(rep));
    }

    Elem const& zero() const noexcept { return zero_; }

    TripleType triple(Elem const& u, Elem const& v, Elem const& w) const {
      std::string key;
      key.reserve(u.text().size() + v.text().size() + w.text().size() + 4);
      key += '(';
      key += u.text();
      key += ',';
      key += v.text();
      key += ',';
      key += w.text();
      key += ')';
      return TripleType{u, v, w, std::move(key)};
    }

    ////////////////////////////////////////////////////////////////////////
    // Order
    ////////////////////////////////////////////////////////////////////////

    // x <= y: every triple of x (its diagonal included) that is not a triple
    // of y has u <= proj(y) or w <= proj(y), both operands viewed at the
    // larger of their ranks.
    bool leq(Elem const& x, Elem const& y) const {
      if (x == y || x.is_zero()) {
        return true;
      }
      int const n = std::max(x.rank(), y.rank());
      if (n == 0) {
        return ops_.leq(x.base(), y.base());
      }
      bool const  y_top = y.rank() == n;
      Elem const& py    = y_top ? y.proj() : y;
      if (x.rank() < n) {
        return x == py || leq(x, py);
      }
      if (!(x.proj() == py) && !leq(x.proj(), py)) {
        return false;
      }
      for (auto const& t : x.triples()) {
        if (y_top && contains_key(y.triples(), t.key)) {
          continue;
        }
        if (!leq(t.u, py) && !leq(t.w, py)) {
          return false;
        }
      }
      return true;
    }

    bool equal(Elem const& x, Elem const& y) const { return x == y; }

    ////////////////////////////////////////////////////////////////////////
    // Join
    ////////////////////////////////////////////////////////////////////////

    Elem join(Elem const&         x,
              Elem const&         y,
              ChoicePolicy const& policy = {}) const {
      if (x == y || y.is_zero()) {
        return x;
      }
      if (x.is_zero()) {
        return y;
      }
      int const n = std::max(x.rank(), y.rank());
      if (n == 0) {
        return lift(ops_.join(x.base(), y.base()));
      }
      WorkingSetT ws = initial_working_set(x, y);
      while (auto next = step1(ws, policy)) {
        ws = std::move(*next);
      }
      ws = phi(ws, policy);
      while (auto next = step2(ws, policy)) {
        ws = std::move(*next);
      }
      return psi(ws);
    }

    Elem join_all(std::span<Elem const> xs) const {
      Elem acc = zero_;
      for (auto const& x : xs) {
        acc = join(acc, x);
      }
      return acc;
    }

    // x u y at level max(rank x, rank y); a lower-rank operand contributes
    // its own diagonal.
    WorkingSetT initial_working_set(Elem const& x, Elem const& y) const {
      WorkingSetT ws;
      ws.level = std::max({x.rank(), y.rank(), 1});
      append_lifted(ws.triples, x, ws.level);
      append_lifted(ws.triples, y, ws.level);
      normalize(ws.triples);
      return ws;
    }

    // ->1: replace a swapped pair <a,b,c>, <b,a,c> by <c,c,c>. Returns
    // nullopt at a fixpoint.
    std::optional<WorkingSetT> step1(WorkingSetT const&  ws,
                                     ChoicePolicy const& policy = {}) const {
      std::vector<std::pair<std::size_t, std::size_t>> candidates;
      for (std::size_t k = 0; k < ws.triples.size(); ++k) {
        auto const& t = ws.triples[k];
        if (t.diagonal()) {
          continue;
        }
        auto swapped = triple(t.v, t.u, t.w);
        if (swapped.key < t.key) {
          continue;  // counted from the other side
        }
        auto it = find_key(ws.triples, swapped.key);
        if (it != ws.triples.end()) {
          candidates.emplace_back(
              k, static_cast<std::size_t>(it - ws.triples.begin()));
        }
      }
      if (candidates.empty()) {
        return std::nullopt;
      }
      auto const [first, second] = candidates[choose(policy, candidates.size())];
      WorkingSetT out;
      out.level = ws.level;
      for (std::size_t k = 0; k < ws.triples.size(); ++k) {
        if (k != first && k != second) {
          out.triples.push_back(ws.triples[k]);
        }
      }
      auto const& c = ws.triples[first].w;
      out.triples.push_back(triple(c, c, c));
      normalize(out.triples);
      return out;
    }

    // Replaces all diagonals by the single diagonal of their join.
    WorkingSetT phi(WorkingSetT const& ws, ChoicePolicy const& policy = {}) const {
      WorkingSetT out;
      out.level     = ws.level;
      bool any      = false;
      Elem combined = zero_;
      for (auto const& t : ws.triples) {
        if (t.diagonal()) {
          combined = any ? join(combined, t.u, policy) : t.u;
          any      = true;
        } else {
          out.triples.push_back(t);
        }
      }
      if (!any) {
        throw std::logic_error("phi: working set has no diagonal triple");
      }
      out.triples.push_back(triple(combined, combined, combined));
      normalize(out.triples);
      return out;
    }

    // ->2: for a non-diagonal <a,b,c> with b <= proj, drop it and raise the
    // diagonal to c v proj. Returns nullopt at a fixpoint.
    std::optional<WorkingSetT> step2(WorkingSetT const&  ws,
                                     ChoicePolicy const& policy = {}) const {
      Elem const          p = single_diagonal(ws, "step2");
      std::vector<std::size_t> candidates;
      for (std::size_t k = 0; k < ws.triples.size(); ++k) {
        auto const& t = ws.triples[k];
        if (!t.diagonal() && leq(t.v, p)) {
          candidates.push_back(k);
        }
      }
      if (candidates.empty()) {
        return std::nullopt;
      }
      std::size_t const chosen = candidates[choose(policy, candidates.size())];
      Elem const raised = join(ws.triples[chosen].w, p, policy);
      WorkingSetT       out;
      out.level = ws.level;
      for (std::size_t k = 0; k < ws.triples.size(); ++k) {
        if (k != chosen && !ws.triples[k].diagonal()) {
          out.triples.push_back(ws.triples[k]);
        }
      }
      out.triples.push_back(triple(raised, raised, raised));
      normalize(out.triples);
      return out;
    }

    // Deletes every non-diagonal <a,b,c> with a <= proj or c <= proj and
    // packages the result canonically.
    Elem psi(WorkingSetT const& ws) const {
      Elem const              p = single_diagonal(ws, "psi");
      std::vector<TripleType> kept;
      for (auto const& t : ws.triples) {
        if (t.diagonal()) {
          continue;
        }
        if (leq(t.v, p)) {
          throw std::logic_error("psi: working set is not in R_2 form");
        }
        if (!leq(t.u, p) && !leq(t.w, p)) {
          kept.push_back(t);
        }
      }
      if (kept.empty()) {
        return p;
      }
      return build_node(ws.level, p, std::move(kept));
    }

    ////////////////////////////////////////////////////////////////////////
    // Bowtie elements
    ////////////////////////////////////////////////////////////////////////

    // bowtie over R^{k}(S) where k is the largest argument rank.
    Elem bowtie(Elem const& a, Elem const& b, Elem const& c) const {
      return bowtie_at(std::max({a.rank(), b.rank(), c.rank()}) + 1, a, b, c);
    }

    // bowtie over R^{level-1}(S); requires every argument rank < level.
    Elem bowtie_at(int level, Elem const& a, Elem const& b, Elem const& c) const {
      if (level <= std::max({a.rank(), b.rank(), c.rank()})) {
        throw std::invalid_argument("bowtie_at: level too small for arguments");
      }
      if (!leq(c, join(a, b))) {
        throw DomainError("not in C(S): " + c.text() + " is not below "
                          + a.text() + " v " + b.text());
      }
      if (a == b || b.is_zero() || c.is_zero()) {
        return c;
      }
      if (a.is_zero()) {
        return zero_;
      }
      std::vector<TripleType> ts;
      ts.push_back(triple(a, b, c));
      return build_node(level, zero_, std::move(ts));
    }

    // (bowtie(a,b,c), bowtie(b,a,c)): below a and b respectively, joining to c.
    std::pair<Elem, Elem> distributivity_witness(Elem const& a,
                                                 Elem const& b,
                                                 Elem const& c) const {
      return {bowtie(a, b, c), bowtie(b, a, c)};
    }

    // x as the join of bowtie(u,v,w) over its triples (diagonal included).
    std::vector<Elem> decompose(Elem const& x) const {
      if (x.is_base()) {
        return {x};
      }
      std::vector<Elem> out{x.proj()};
      for (auto const& t : x.triples()) {
        out.push_back(bowtie_at(x.rank(), t.u, t.v, t.w));
      }
      return out;
    }

    ////////////////////////////////////////////////////////////////////////
    // Validated construction
    ////////////////////////////////////////////////////////////////////////

    using RawTriple = std::array<Elem, 3>;

    // Checks every reduced-form condition and returns the canonical element,
    // or throws ValidationError naming the violated condition.
    Elem make_node(int level, Elem const& proj, std::vector<RawTriple> const& raw) const {
      if (raw.empty()) {
        throw ValidationError(ReducedViolation::empty_triples,
                              "node has no triples");
      }
      if (proj.rank() >= level) {
        throw ValidationError(ReducedViolation::bad_level,
                              "projection rank is not below the node level");
      }
      std::vector<TripleType> ts;
      ts.reserve(raw.size());
      for (auto const& r : raw) {
        for (auto const& e : r) {
          if (e.rank() >= level) {
            throw ValidationError(ReducedViolation::bad_level,
                                  "constituent " + e.text()
                                      + " has rank not below the node level");
          }
        }
        ts.push_back(triple(r[0], r[1], r[2]));
      }
      for (auto const& t : ts) {
        if (!leq(t.w, join(t.u, t.v))) {
          throw ValidationError(ReducedViolation::not_in_c,
                                "triple " + t.key + " is not in C(S)");
        }
        if (t.diagonal()) {
          throw ValidationError(ReducedViolation::diagonal_stored,
                                "diagonal triple " + t.key + " stored");
        }
        if (t.u == t.v) {
          throw ValidationError(ReducedViolation::swapped_pair,
                                "triple " + t.key + " is its own swap");
        }
        if (leq(t.u, proj) || leq(t.v, proj) || leq(t.w, proj)) {
          throw ValidationError(ReducedViolation::dominated,
                                "triple " + t.key
                                    + " has a component below the projection");
        }
      }
      std::sort(ts.begin(), ts.end(), [](auto const& a, auto const& b) {
        return a.key < b.key;
      });
      for (std::size_t k = 1; k < ts.size(); ++k) {
        if (ts[k].key == ts[k - 1].key) {
          throw ValidationError(ReducedViolation::duplicate,
                                "triple " + ts[k].key + " listed twice");
        }
      }
      for (auto const& t : ts) {
        auto swapped = triple(t.v, t.u, t.w);
        if (find_key(ts, swapped.key) != ts.end()) {
          throw ValidationError(ReducedViolation::swapped_pair,
                                "triples " + t.key + " and " + swapped.key
                                    + " are swapped versions of each other");
        }
      }
      return build_node(level, proj, std::move(ts));
    }

    // Level defaults to 1 + the largest constituent rank.
    Elem make_node(Elem const& proj, std::vector<RawTriple> const& raw) const {
      int m = proj.rank();
      for (auto const& r : raw) {
        for (auto const& e : r) {
          m = std::max(m, e.rank());
        }
      }
      return make_node(m + 1, proj, raw);
    }

    // Re-checks an existing element, recursively.
    void validate(Elem const& x) const {
      if (x.is_base()) {
        return;
      }
      validate(x.proj());
      std::vector<RawTriple> raw;
      for (auto const& t : x.triples()) {
        validate(t.u);
        validate(t.v);
        validate(t.w);
        raw.push_back({t.u, t.v, t.w});
      }
      auto again = make_node(x.rank(), x.proj(), raw);
      if (!(again == x)) {
        throw std::logic_error("validate: non-canonical element " + x.text());
      }
    }

    ////////////////////////////////////////////////////////////////////////
    // Internal constructors (no validation); used by the rewriting steps and
    // by enumerators that construct reduced sets by design.
    ////////////////////////////////////////////////////////////////////////

    // `ts` must be non-empty and reduced with respect to `proj`.
    Elem build_node(int level, Elem const& proj, std::vector<TripleType> ts) const {
      std::sort(ts.begin(), ts.end(), [](auto const& a, auto const& b) {
        return a.key < b.key;
      });
      auto rep             = std::make_shared<typename Elem::Rep>();
      rep->level           = level;
      rep->max_constituent = proj.rank();
      for (auto const& t : ts) {
        rep->max_constituent = std::max(
            {rep->max_constituent, t.u.rank(), t.v.rank(), t.w.rank()});
      }
      std::string& text = rep->text;
      if (level == rep->max_constituent + 1) {
        text = "red(";
      } else {
        text = "red@" + std::to_string(level) + "(";
      }
      text += proj.text();
      text += "; [";
      for (std::size_t k = 0; k < ts.size(); ++k) {
        if (k != 0) {
          text += ", ";
        }
        text += ts[k].key;
      }
      text += "])";
      rep->hash    = std::hash<std::string>()(text);
      rep->proj    = proj;
      rep->triples = std::move(ts);
      return Elem(std::move(rep));
    }

   private:
    static std::size_t choose(ChoicePolicy const& policy, std::size_t n) {
      if (!policy || n == 1) {
        return 0;
      }
      std::size_t k = policy(n);
      if (k >= n) {
        throw std::out_of_range("choice policy returned an invalid index");
      }
      return k;
    }

    template <class Range>
    static auto find_key(Range const& ts, std::string const& key) {
      auto it = std::lower_bound(
          ts.begin(), ts.end(), key, [](auto const& t, std::string const& k) {
            return t.key < k;
          });
      return (it != ts.end() && it->key == key) ? it : ts.end();
    }

    template <class Range>
    static bool contains_key(Range const& ts, std::string const& key) {
      return find_key(ts, key) != ts.end();
    }

    static void normalize(std::vector<TripleType>& ts) {
      std::sort(ts.begin(), ts.end(), [](auto const& a, auto const& b) {
        return a.key < b.key;
      });
      ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    }

    void append_lifted(std::vector<TripleType>& out, Elem const& x, int level) const {
      if (x.rank() == level) {
        out.push_back(triple(x.proj(), x.proj(), x.proj()));
        for (auto const& t : x.triples()) {
          out.push_back(t);
        }
      } else {
        out.push_back(triple(x, x, x));
      }
    }

    Elem single_diagonal(WorkingSetT const& ws, char const* who) const {
      std::optional<Elem> found;
      for (auto const& t : ws.triples) {
        if (t.diagonal()) {
          if (found) {
            throw std::logic_error(std::string(who)
                                   + ": more than one diagonal triple");
          }
          found = t.u;
        }
      }
      if (!found) {
        throw std::logic_error(std::string(who) + ": no diagonal triple");
      }
      return *found;
    }

    Ops  ops_;
    Elem zero_;
  };

  ////////////////////////////////////////////////////////////////////////////
  // Functoriality
  ////////////////////////////////////////////////////////////////////////////

  // D(f) for a (v,0)-homomorphism f: S -> T of base semilattices, computed
  // through x = V bowtie(a,b,c) over the triples of x.
  template <class OpsS, class OpsT, class F>
  DElem<typename OpsT::value_type> map_extension(FreeExtension<OpsS> const& src,
                                                 FreeExtension<OpsT> const& dst,
                                                 F const&                   f,
                                                 DElem<typename OpsS::value_type> const& x) {
    using Source = DElem<typename OpsS::value_type>;
    using Target = DElem<typename OpsT::value_type>;
    std::unordered_map<std::string, Target> memo;

    std::function<Target(Source const&)> go = [&](Source const& e) -> Target {
      if (auto it = memo.find(e.text()); it != memo.end()) {
        return it->second;
      }
      Target out;
      if (e.is_base()) {
        out = dst.lift(f(e.base()));
      } else {
        out = go(e.proj());
        for (auto const& t : e.triples()) {
          out = dst.join(out,
                         dst.bowtie_at(e.rank(), go(t.u), go(t.v), go(t.w)));
        }
      }
      memo.emplace(e.text(), out);
      return out;
    };
    (void) src;
    return go(x);
  }

  // Every base value occurring in x, in first-visit order, without repeats.
  template <class V>
  std::vector<V> constituent_values(DElem<V> const& x) {
    std::vector<V>                  out;
    std::vector<DElem<V>>           stack{x};
    std::unordered_map<std::string, bool> seen;
    while (!stack.empty()) {
      DElem<V> e = stack.back();
      stack.pop_back();
      if (!seen.emplace(e.text(), true).second) {
        continue;
      }
      if (e.is_base()) {
        if (std::find(out.begin(), out.end(), e.base()) == out.end()) {
          out.push_back(e.base());
        }
        continue;
      }
      stack.push_back(e.proj());
      for (auto const& t : e.triples()) {
        stack.push_back(t.u);
        stack.push_back(t.v);
        stack.push_back(t.w);
      }
    }
    return out;
  }

  inline char const* to_string(ReducedViolation v) {
    switch (v) {
      case ReducedViolation::not_in_c:
        return "not-in-C(S)";
      case ReducedViolation::diagonal_stored:
        return "diagonal-stored";
      case ReducedViolation::swapped_pair:
        return "condition-2-swapped-pair";
      case ReducedViolation::dominated:
        return "condition-3-dominated-constituent";
      case ReducedViolation::empty_triples:
        return "empty-triples";
      case ReducedViolation::bad_level:
        return "bad-level";
      case ReducedViolation::duplicate:
        return "duplicate-triple";
    }
    return "unknown";
  }

}  // namespace slat

#endif  // SLAT_FREEDIST_HPP
