#include "slat/conlat.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

namespace slat {

  namespace {

    class UnionFind {
     public:
      explicit UnionFind(int n) : parent_(static_cast<std::size_t>(n)) {
        std::iota(parent_.begin(), parent_.end(), 0);
      }
      int find(int x) {
        while (parent_[x] != x) {
          parent_[x] = parent_[parent_[x]];
          x          = parent_[x];
        }
        return x;
      }
      bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) {
          return false;
        }
        if (b < a) {
          std::swap(a, b);
        }
        parent_[b] = a;
        return true;
      }
      std::vector<int> labels() {
        std::vector<int> out(parent_.size());
        for (std::size_t k = 0; k < parent_.size(); ++k) {
          out[k] = find(static_cast<int>(k));
        }
        return out;
      }

     private:
      std::vector<int> parent_;
    };

    int ipow(int base, int e) {
      int r = 1;
      while (e-- > 0) {
        r *= base;
      }
      return r;
    }

    // Calls f(args) for every tuple in {0..k-1}^arity.
    template <class F>
    void for_each_tuple(int k, int arity, F&& f) {
      std::vector<int> args(static_cast<std::size_t>(arity), 0);
      int const        total = ipow(k, arity);
      for (int code = 0; code < total; ++code) {
        int c = code;
        for (int p = arity - 1; p >= 0; --p) {
          args[static_cast<std::size_t>(p)] = c % k;
          c /= k;
        }
        f(args);
      }
    }

    [[noreturn]] void format_error(int line, std::string const& msg) {
      throw DomainError("line " + std::to_string(line) + ": " + msg);
    }

    using Relation = std::vector<char>;  // k*k

    Relation relation_of(Congruence const& c) {
      int const k = c.size();
      Relation  r(static_cast<std::size_t>(k * k), 0);
      for (int x = 0; x < k; ++x) {
        for (int y = 0; y < k; ++y) {
          r[static_cast<std::size_t>(x * k + y)] = c.related(x, y) ? 1 : 0;
        }
      }
      return r;
    }

    Relation compose(Relation const& a, Relation const& b, int k) {
      Relation out(static_cast<std::size_t>(k * k), 0);
      for (int x = 0; x < k; ++x) {
        for (int y = 0; y < k; ++y) {
          if (!a[static_cast<std::size_t>(x * k + y)]) {
            continue;
          }
          for (int z = 0; z < k; ++z) {
            if (b[static_cast<std::size_t>(y * k + z)]) {
              out[static_cast<std::size_t>(x * k + z)] = 1;
            }
          }
        }
      }
      return out;
    }

  }  // namespace

  int Operation::apply(int k, std::span<int const> args) const {
    int idx = 0;
    for (int a : args) {
      idx = idx * k + a;
    }
    return table[static_cast<std::size_t>(idx)];
  }

  ////////////////////////////////////////////////////////////////////////////
  // FinAlgebra
  ////////////////////////////////////////////////////////////////////////////

  void FinAlgebra::add_operation(Operation op) {
    if (op.arity < 0
        || op.table.size() != static_cast<std::size_t>(ipow(k_, op.arity))) {
      throw DomainError("operation " + op.name + ": table has "
                        + std::to_string(op.table.size()) + " entries, expected "
                        + std::to_string(ipow(k_, op.arity)));
    }
    for (int v : op.table) {
      if (v < 0 || v >= k_) {
        throw DomainError("operation " + op.name + ": value "
                          + std::to_string(v) + " outside the carrier");
      }
    }
    for (auto const& o : ops_) {
      if (o.name == op.name) {
        throw DomainError("operation " + op.name + " defined twice");
      }
    }
    ops_.push_back(std::move(op));
  }

  void FinAlgebra::set_join(std::string const& op_name) {
    for (auto const& o : ops_) {
      if (o.name == op_name) {
        if (o.arity != 2) {
          throw DomainError("join operation " + op_name + " is not binary");
        }
        join_      = o.table;
        join_name_ = op_name;
        return;
      }
    }
    throw DomainError("unknown operation " + op_name + " named as join");
  }

  void FinAlgebra::set_join_table(std::vector<int> table) {
    if (table.size() != static_cast<std::size_t>(k_ * k_)) {
      throw DomainError("join table must have k*k entries");
    }
    for (int v : table) {
      if (v < 0 || v >= k_) {
        throw DomainError("join table value outside the carrier");
      }
    }
    join_ = std::move(table);
    join_name_.reset();
  }

  void FinAlgebra::check() const {
    if (k_ < 1) {
      throw DomainError("carrier must be nonempty");
    }
    if (top_ && (*top_ < 0 || *top_ >= k_)) {
      throw DomainError("top outside the carrier");
    }
    if (!has_join()) {
      return;
    }
    for (int a = 0; a < k_; ++a) {
      if (join(a, a) != a) {
        throw DomainError("join is not idempotent");
      }
      for (int b = 0; b < k_; ++b) {
        if (join(a, b) != join(b, a)) {
          throw DomainError("join is not commutative");
        }
        for (int c = 0; c < k_; ++c) {
          if (join(join(a, b), c) != join(a, join(b, c))) {
            throw DomainError("join is not associative");
          }
        }
      }
    }
    if (top_) {
      for (int a = 0; a < k_; ++a) {
        if (!leq(a, *top_)) {
          throw DomainError("top is not the largest element");
        }
      }
    }
  }

  FinAlgebra FinAlgebra::parse(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string        raw;
    int                line_no = 0;
    std::optional<FinAlgebra> alg;
    std::optional<std::string> join_decl_name;
    std::optional<std::vector<int>> join_decl_table;
    int join_line = 0;

    auto read_ints = [](std::istringstream& ls, int line) {
      std::vector<int> out;
      std::string      tok;
      while (ls >> tok) {
        try {
          std::size_t used = 0;
          int         v    = std::stoi(tok, &used);
          if (used != tok.size()) {
            throw std::invalid_argument(tok);
          }
          out.push_back(v);
        } catch (std::exception const&) {
          format_error(line, "expected an integer, got '" + tok + "'");
        }
      }
      return out;
    };

    while (std::getline(in, raw)) {
      ++line_no;
      if (auto hash = raw.find('#'); hash != std::string::npos) {
        raw.erase(hash);
      }
      std::istringstream ls(raw);
      std::string        head;
      if (!(ls >> head)) {
        continue;
      }
      if (head == "alg") {
        if (alg) {
          format_error(line_no, "duplicate 'alg' header");
        }
        auto ints = read_ints(ls, line_no);
        if (ints.size() != 1 || ints[0] < 1) {
          format_error(line_no, "'alg' takes one positive size");
        }
        alg.emplace(ints[0]);
        continue;
      }
      if (!alg) {
        format_error(line_no, "expected 'alg <k>' before '" + head + "'");
      }
      if (head == "op") {
        Operation op;
        if (!(ls >> op.name)) {
          format_error(line_no, "'op' needs a name");
        }
        auto ints = read_ints(ls, line_no);
        if (ints.empty()) {
          format_error(line_no, "'op' needs an arity");
        }
        op.arity = ints[0];
        op.table.assign(ints.begin() + 1, ints.end());
        try {
          alg->add_operation(std::move(op));
        } catch (DomainError const& e) {
          format_error(line_no, e.what());
        }
      } else if (head == "join") {
        std::string rest;
        std::getline(ls, rest);
        std::istringstream rs(rest);
        std::string        first;
        rs >> first;
        if (!first.empty() && (std::isalpha(static_cast<unsigned char>(first[0])) || first[0] == '_')) {
          join_decl_name = first;
          std::string extra;
          if (rs >> extra) {
            format_error(line_no, "'join' takes one operation name or a table");
          }
        } else {
          std::istringstream again(rest);
          join_decl_table = read_ints(again, line_no);
        }
        join_line = line_no;
      } else if (head == "top") {
        auto ints = read_ints(ls, line_no);
        if (ints.size() != 1) {
          format_error(line_no, "'top' takes one index");
        }
        alg->set_top(ints[0]);
      } else {
        format_error(line_no, "unknown directive '" + head + "'");
      }
    }
    if (!alg) {
      throw DomainError("missing 'alg <k>' header");
    }
    try {
      if (join_decl_name) {
        alg->set_join(*join_decl_name);
      } else if (join_decl_table) {
        alg->set_join_table(*join_decl_table);
      }
    } catch (DomainError const& e) {
      format_error(join_line, e.what());
    }
    alg->check();
    return *alg;
  }

  FinAlgebra FinAlgebra::load(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
      throw DomainError("cannot open " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
  }

  std::string FinAlgebra::to_text() const {
    std::ostringstream out;
    out << "alg " << k_ << '\n';
    for (auto const& o : ops_) {
      out << "op " << o.name << ' ' << o.arity;
      for (int v : o.table) {
        out << ' ' << v;
      }
      out << '\n';
    }
    if (join_name_) {
      out << "join " << *join_name_ << '\n';
    } else if (has_join()) {
      out << "join";
      for (int v : join_) {
        out << ' ' << v;
      }
      out << '\n';
    }
    if (top_) {
      out << "top " << *top_ << '\n';
    }
    return out.str();
  }

  ////////////////////////////////////////////////////////////////////////////
  // Congruence
  ////////////////////////////////////////////////////////////////////////////

  Congruence Congruence::identity(int k) {
    Congruence c;
    c.block_.resize(static_cast<std::size_t>(k));
    std::iota(c.block_.begin(), c.block_.end(), 0);
    return c;
  }

  Congruence Congruence::all(int k) {
    Congruence c;
    c.block_.assign(static_cast<std::size_t>(k), 0);
    return c;
  }

  Congruence Congruence::from_labels(std::vector<int> const& labels) {
    Congruence          c;
    std::map<int, int>  renum;
    c.block_.reserve(labels.size());
    for (int l : labels) {
      auto [it, fresh] = renum.emplace(l, static_cast<int>(renum.size()));
      c.block_.push_back(it->second);
    }
    return c;
  }

  Congruence Congruence::from_blocks(int k, std::vector<std::vector<int>> const& blocks) {
    std::vector<int> labels(static_cast<std::size_t>(k), -1);
    int              id = 0;
    for (auto const& b : blocks) {
      for (int x : b) {
        if (x < 0 || x >= k || labels[static_cast<std::size_t>(x)] != -1) {
          throw DomainError("blocks do not form a partition");
        }
        labels[static_cast<std::size_t>(x)] = id;
      }
      ++id;
    }
    if (std::find(labels.begin(), labels.end(), -1) != labels.end()) {
      throw DomainError("blocks do not cover the carrier");
    }
    return from_labels(labels);
  }

  int Congruence::block_count() const noexcept {
    return block_.empty() ? 0 : *std::max_element(block_.begin(), block_.end()) + 1;
  }

  std::vector<std::vector<int>> Congruence::blocks() const {
    std::vector<std::vector<int>> out(static_cast<std::size_t>(block_count()));
    for (int x = 0; x < size(); ++x) {
      out[static_cast<std::size_t>(block_of(x))].push_back(x);
    }
    return out;
  }

  bool Congruence::leq(Congruence const& other) const {
    // Each block of *this must sit inside one block of other.
    std::vector<int> image(static_cast<std::size_t>(block_count()), -1);
    for (int x = 0; x < size(); ++x) {
      int& slot = image[static_cast<std::size_t>(block_of(x))];
      if (slot == -1) {
        slot = other.block_of(x);
      } else if (slot != other.block_of(x)) {
        return false;
      }
    }
    return true;
  }

  Congruence Congruence::join(Congruence const& other) const {
    UnionFind uf(size());
    std::vector<int> first_a(static_cast<std::size_t>(block_count()), -1);
    std::vector<int> first_b(static_cast<std::size_t>(other.block_count()), -1);
    for (int x = 0; x < size(); ++x) {
      int& fa = first_a[static_cast<std::size_t>(block_of(x))];
      int& fb = first_b[static_cast<std::size_t>(other.block_of(x))];
      if (fa == -1) {
        fa = x;
      } else {
        uf.unite(fa, x);
      }
      if (fb == -1) {
        fb = x;
      } else {
        uf.unite(fb, x);
      }
    }
    return from_labels(uf.labels());
  }

  Congruence Congruence::meet(Congruence const& other) const {
    std::vector<int> labels(block_.size());
    int const        nb = other.block_count();
    for (int x = 0; x < size(); ++x) {
      labels[static_cast<std::size_t>(x)] = block_of(x) * nb + other.block_of(x);
    }
    return from_labels(labels);
  }

  std::string Congruence::to_string() const {
    std::string out = "{";
    auto        bs  = blocks();
    for (std::size_t b = 0; b < bs.size(); ++b) {
      if (b != 0) {
        out += ',';
      }
      out += '{';
      for (std::size_t k = 0; k < bs[b].size(); ++k) {
        if (k != 0) {
          out += ',';
        }
        out += std::to_string(bs[b][k]);
      }
      out += '}';
    }
    out += '}';
    return out;
  }

  bool is_compatible(FinAlgebra const& L, Congruence const& c) {
    int const k = L.size();
    for (auto const& op : L.operations()) {
      if (op.arity == 0) {
        continue;
      }
      bool ok = true;
      for_each_tuple(k, op.arity, [&](std::vector<int>& args) {
        if (!ok) {
          return;
        }
        int const r = op.apply(k, args);
        for (std::size_t p = 0; p < args.size() && ok; ++p) {
          int const keep = args[p];
          for (int alt = 0; alt < k; ++alt) {
            if (alt != keep && c.related(alt, keep)) {
              args[p] = alt;
              if (!c.related(r, op.apply(k, args))) {
                ok = false;
              }
            }
          }
          args[p] = keep;
        }
      });
      if (!ok) {
        return false;
      }
    }
    return true;
  }

  bool is_join_compatible(FinAlgebra const& L, Congruence const& c) {
    if (!L.has_join()) {
      return false;
    }
    int const k = L.size();
    for (int a = 0; a < k; ++a) {
      for (int b = 0; b < k; ++b) {
        if (!c.related(a, b)) {
          continue;
        }
        for (int x = 0; x < k; ++x) {
          if (!c.related(L.join(a, x), L.join(b, x))) {
            return false;
          }
        }
      }
    }
    return true;
  }

  Congruence generate(FinAlgebra const& L, std::vector<std::pair<int, int>> const& pairs) {
    int const k = L.size();
    UnionFind uf(k);
    for (auto const& [x, y] : pairs) {
      if (x < 0 || x >= k || y < 0 || y >= k) {
        throw DomainError("element outside the carrier");
      }
      uf.unite(x, y);
    }
    bool changed = true;
    while (changed) {
      changed = false;
      for (auto const& op : L.operations()) {
        if (op.arity == 0) {
          continue;
        }
        for_each_tuple(k, op.arity, [&](std::vector<int>& args) {
          int const r = op.apply(k, args);
          for (std::size_t p = 0; p < args.size(); ++p) {
            int const keep = args[p];
            int const rep  = uf.find(keep);
            if (rep != keep) {
              args[p] = rep;
              changed |= uf.unite(r, op.apply(k, args));
              args[p] = keep;
            }
          }
        });
      }
    }
    return Congruence::from_labels(uf.labels());
  }

  Congruence theta(FinAlgebra const& L, int x, int y) {
    return generate(L, {{x, y}});
  }

  Congruence theta_plus(FinAlgebra const& L, int x, int y) {
    if (!L.has_join()) {
      throw DomainError("theta_plus needs a designated join");
    }
    return theta(L, y, L.join(x, y));
  }

  ////////////////////////////////////////////////////////////////////////////
  // Semilattices
  ////////////////////////////////////////////////////////////////////////////

  void SemilatticeTable::check() const {
    if (n < 1 || join_table.size() != static_cast<std::size_t>(n * n)
        || zero < 0 || zero >= n) {
      throw DomainError("malformed semilattice table");
    }
    for (int a = 0; a < n; ++a) {
      if (join(a, a) != a || join(a, zero) != a) {
        throw DomainError("join table is not idempotent with zero neutral");
      }
      for (int b = 0; b < n; ++b) {
        int const ab = join(a, b);
        if (ab < 0 || ab >= n || ab != join(b, a)) {
          throw DomainError("join table is not commutative");
        }
        for (int c = 0; c < n; ++c) {
          if (join(ab, c) != join(a, join(b, c))) {
            throw DomainError("join table is not associative");
          }
        }
      }
    }
  }

  bool SemHom::is_homomorphism() const {
    if (image.size() != static_cast<std::size_t>(dom.n)) {
      return false;
    }
    if ((*this)(dom.zero) != cod.zero) {
      return false;
    }
    for (int a = 0; a < dom.n; ++a) {
      for (int b = 0; b < dom.n; ++b) {
        if ((*this)(dom.join(a, b)) != cod.join((*this)(a), (*this)(b))) {
          return false;
        }
      }
    }
    return true;
  }

  int ConcResult::index_of(Congruence const& c) const {
    auto it = std::find(elements.begin(), elements.end(), c);
    return it == elements.end() ? -1 : static_cast<int>(it - elements.begin());
  }

  ConcResult conc(FinAlgebra const& L) {
    int const                  k = L.size();
    ConcResult                 out;
    std::map<Congruence, int>  index;
    auto add = [&](Congruence const& c) {
      auto [it, fresh] = index.emplace(c, static_cast<int>(out.elements.size()));
      if (fresh) {
        out.elements.push_back(c);
      }
      return it->second;
    };
    add(Congruence::identity(k));
    out.principal.resize(static_cast<std::size_t>(k * k));
    for (int x = 0; x < k; ++x) {
      for (int y = 0; y < k; ++y) {
        out.principal[static_cast<std::size_t>(x * k + y)]
            = y < x ? out.principal[static_cast<std::size_t>(y * k + x)]
                    : add(theta(L, x, y));
      }
    }
    // Close under joins; indices only grow, so a single sweep with a moving
    // end suffices.
    for (std::size_t i = 0; i < out.elements.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        add(out.elements[i].join(out.elements[j]));
      }
    }
    int const n        = static_cast<int>(out.elements.size());
    out.table.n        = n;
    out.table.zero     = 0;
    out.table.join_table.resize(static_cast<std::size_t>(n * n));
    for (int a = 0; a < n; ++a) {
      out.table.labels.push_back(out.elements[static_cast<std::size_t>(a)].to_string());
      for (int b = 0; b < n; ++b) {
        out.table.join_table[static_cast<std::size_t>(a * n + b)]
            = index.at(out.elements[static_cast<std::size_t>(a)].join(
                out.elements[static_cast<std::size_t>(b)]));
      }
    }
    return out;
  }

  bool is_distributive(SemilatticeTable const& S) {
    int const n = S.n;
    for (int c = 0; c < n; ++c) {
      std::vector<int> below_c;
      for (int x = 0; x < n; ++x) {
        if (S.leq(x, c)) {
          below_c.push_back(x);
        }
      }
      for (int a = 0; a < n; ++a) {
        for (int b = a; b < n; ++b) {
          if (!S.leq(c, S.join(a, b))) {
            continue;
          }
          bool found = false;
          for (int x : below_c) {
            if (!S.leq(x, a)) {
              continue;
            }
            for (int y : below_c) {
              if (S.leq(y, b) && S.join(x, y) == c) {
                found = true;
                break;
              }
            }
            if (found) {
              break;
            }
          }
          if (!found) {
            return false;
          }
        }
      }
    }
    return true;
  }

  int largest_below(SemHom const& mu, int y) {
    int m = mu.dom.zero;
    for (int s = 0; s < mu.dom.n; ++s) {
      if (mu.cod.leq(mu(s), y)) {
        m = mu.dom.join(m, s);
      }
    }
    return m;
  }

  bool weakly_distributive_at(SemHom const& mu, int x) {
    int const        nt = mu.cod.n;
    std::vector<int> m(static_cast<std::size_t>(nt));
    for (int y = 0; y < nt; ++y) {
      m[static_cast<std::size_t>(y)] = largest_below(mu, y);
    }
    for (int y0 = 0; y0 < nt; ++y0) {
      for (int y1 = 0; y1 < nt; ++y1) {
        if (!mu.cod.leq(mu(x), mu.cod.join(y0, y1))) {
          continue;
        }
        if (!mu.dom.leq(x, mu.dom.join(m[static_cast<std::size_t>(y0)],
                                       m[static_cast<std::size_t>(y1)]))) {
          return false;
        }
      }
    }
    return true;
  }

  bool is_weakly_distributive(SemHom const& mu) {
    for (int x = 0; x < mu.dom.n; ++x) {
      if (!weakly_distributive_at(mu, x)) {
        return false;
      }
    }
    return true;
  }

  bool weakly_distributive_at_oracle(SemHom const& mu, int x) {
    int const ns = mu.dom.n;
    int const nt = mu.cod.n;
    for (int y0 = 0; y0 < nt; ++y0) {
      for (int y1 = 0; y1 < nt; ++y1) {
        if (!mu.cod.leq(mu(x), mu.cod.join(y0, y1))) {
          continue;
        }
        bool found = false;
        for (int x0 = 0; x0 < ns && !found; ++x0) {
          for (int x1 = 0; x1 < ns && !found; ++x1) {
            found = mu.dom.leq(x, mu.dom.join(x0, x1))
                    && mu.cod.leq(mu(x0), y0) && mu.cod.leq(mu(x1), y1);
          }
        }
        if (!found) {
          return false;
        }
      }
    }
    return true;
  }

  Quotient quotient(FinAlgebra const& L, Congruence const& c) {
    if (c.size() != L.size()) {
      throw DomainError("congruence size does not match the carrier");
    }
    if (!is_compatible(L, c)) {
      throw DomainError("partition " + c.to_string()
                        + " is not compatible with the operations");
    }
    if (L.has_join() && !is_join_compatible(L, c)) {
      throw DomainError("partition " + c.to_string()
                        + " is not compatible with the designated join");
    }
    int const        nb = c.block_count();
    std::vector<int> rep(static_cast<std::size_t>(nb), -1);
    for (int x = L.size() - 1; x >= 0; --x) {
      rep[static_cast<std::size_t>(c.block_of(x))] = x;
    }
    Quotient q;
    q.algebra = FinAlgebra(nb);
    for (auto const& op : L.operations()) {
      Operation qop{op.name, op.arity, {}};
      for_each_tuple(nb, op.arity, [&](std::vector<int>& args) {
        std::vector<int> lifted;
        for (int a : args) {
          lifted.push_back(rep[static_cast<std::size_t>(a)]);
        }
        qop.table.push_back(c.block_of(op.apply(L.size(), lifted)));
      });
      q.algebra.add_operation(std::move(qop));
    }
    if (L.join_name()) {
      q.algebra.set_join(*L.join_name());
    } else if (L.has_join()) {
      std::vector<int> t;
      for (int a = 0; a < nb; ++a) {
        for (int b = 0; b < nb; ++b) {
          t.push_back(c.block_of(L.join(rep[static_cast<std::size_t>(a)],
                                        rep[static_cast<std::size_t>(b)])));
        }
      }
      q.algebra.set_join_table(std::move(t));
    }
    if (L.top()) {
      q.algebra.set_top(c.block_of(*L.top()));
    }
    q.projection = c.labels();
    return q;
  }

  bool permutability(FinAlgebra const& L, int m) {
    if (m < 1) {
      throw DomainError("permutability needs m >= 1");
    }
    int const k    = L.size();
    auto      cons = conc(L).elements;
    std::vector<Relation> rel;
    for (auto const& c : cons) {
      rel.push_back(relation_of(c));
    }
    for (std::size_t a = 0; a < cons.size(); ++a) {
      for (std::size_t b = 0; b < cons.size(); ++b) {
        Relation r = rel[a];
        for (int f = 1; f <= m; ++f) {
          r = compose(r, f % 2 == 1 ? rel[b] : rel[a], k);
        }
        if (r != relation_of(cons[a].join(cons[b]))) {
          return false;
        }
      }
    }
    return true;
  }

  bool check_congruence_compatible(FinAlgebra const& L) {
    if (!L.has_join()) {
      return false;
    }
    for (auto const& c : conc(L).elements) {
      if (!is_join_compatible(L, c)) {
        return false;
      }
    }
    return true;
  }

  ////////////////////////////////////////////////////////////////////////////
  // Erosion
  ////////////////////////////////////////////////////////////////////////////

  CongruenceTable::CongruenceTable(FinAlgebra const& L) : L_(&L) {
    int const k = L.size();
    principal_.resize(static_cast<std::size_t>(k * k));
    for (int x = 0; x < k; ++x) {
      for (int y = 0; y < k; ++y) {
        principal_[static_cast<std::size_t>(x * k + y)]
            = y < x ? principal_[static_cast<std::size_t>(y * k + x)]
                    : slat::theta(L, x, y);
      }
    }
    join_compatible_ = check_congruence_compatible(L);
  }

  bool in_con_c(CongruenceTable const& C, std::vector<int> const& U, Congruence const& u) {
    Congruence acc = Congruence::identity(C.algebra().size());
    for (int p : U) {
      for (int q : U) {
        Congruence const& t = C.theta(p, q);
        if (t.leq(u)) {
          acc = acc.join(t);
        }
      }
    }
    return acc == u;
  }

  ErosionReport erosion(CongruenceTable const& C, int x0, int x1, std::vector<int> const& z) {
    FinAlgebra const& L = C.algebra();
    int const         k = L.size();
    if (!L.has_join() || !C.join_compatible()) {
      throw DomainError("erosion needs a congruence-compatible join");
    }
    if (z.size() < 2) {
      throw DomainError("erosion needs z_0, ..., z_n with n >= 1");
    }
    auto in_range = [k](int e) { return e >= 0 && e < k; };
    if (!in_range(x0) || !in_range(x1)
        || !std::all_of(z.begin(), z.end(), in_range)) {
      throw DomainError("element outside the carrier");
    }
    std::size_t const n  = z.size() - 1;
    int const         zn = z[n];
    for (std::size_t i = 0; i < n; ++i) {
      if (!L.leq(z[i], zn)) {
        throw DomainError("z_" + std::to_string(i) + " is not below z_n");
      }
    }
    int const     x[2] = {x0, x1};
    ErosionReport rep;
    for (int j = 0; j < 2; ++j) {
      rep.u[j]          = Congruence::identity(k);
      rep.a[j]          = Congruence::identity(k);
      rep.theta_plus[j] = C.theta_plus(zn, x[j]);
    }
    for (std::size_t i = 0; i < n; ++i) {
      int const j = epsilon(static_cast<long long>(i));
      rep.v.push_back(C.theta(L.join(z[i], x[j]), L.join(z[i + 1], x[j])));
      rep.u[j] = rep.u[j].join(rep.v.back());
      rep.a[j] = rep.a[j].join(C.theta(z[i], z[i + 1]));
    }
    int const x01         = L.join(x0, x1);
    rep.joins_congruent   = rep.u[0].join(rep.u[1]).related(L.join(z[0], x01),
                                                          L.join(zn, x01));
    for (int j = 0; j < 2; ++j) {
      rep.u_below[j] = rep.u[j].leq(rep.a[j].meet(rep.theta_plus[j]));
      std::vector<int> U;
      for (int zi : z) {
        U.push_back(L.join(x[j], zi));
      }
      rep.u_in_con_c[j] = in_con_c(C, U, rep.u[j]);
    }
    return rep;
  }

  ErosionReport erosion(FinAlgebra const& L, int x0, int x1, std::vector<int> const& z) {
    CongruenceTable C(L);
    return erosion(C, x0, x1, z);
  }

  ////////////////////////////////////////////////////////////////////////////
  // Brute force
  ////////////////////////////////////////////////////////////////////////////

  std::vector<Congruence> all_partitions(int k) {
    std::vector<Congruence> out;
    if (k < 1) {
      return out;
    }
    // Restricted growth strings.
    std::vector<int> a(static_cast<std::size_t>(k), 0);
    std::vector<int> mx(static_cast<std::size_t>(k), 0);
    while (true) {
      out.push_back(Congruence::from_labels(a));
      int i = k - 1;
      while (i > 0 && a[static_cast<std::size_t>(i)] == mx[static_cast<std::size_t>(i - 1)] + 1) {
        --i;
      }
      if (i == 0) {
        break;
      }
      ++a[static_cast<std::size_t>(i)];
      mx[static_cast<std::size_t>(i)] = std::max(mx[static_cast<std::size_t>(i - 1)],
                                                 a[static_cast<std::size_t>(i)]);
      for (int j = i + 1; j < k; ++j) {
        a[static_cast<std::size_t>(j)]  = 0;
        mx[static_cast<std::size_t>(j)] = mx[static_cast<std::size_t>(i)];
      }
    }
    return out;
  }

  Congruence theta_oracle(FinAlgebra const& L, int x, int y) {
    std::vector<Congruence> candidates;
    for (auto const& p : all_partitions(L.size())) {
      if (p.related(x, y) && is_compatible(L, p)) {
        candidates.push_back(p);
      }
    }
    for (auto const& c : candidates) {
      if (std::all_of(candidates.begin(), candidates.end(), [&c](auto const& d) {
            return c.leq(d);
          })) {
        return c;
      }
    }
    throw std::logic_error("theta_oracle: no least compatible partition");
  }

}  // namespace slat
