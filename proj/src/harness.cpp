#include "slat/harness.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "slat/expr.hpp"

namespace slat {

  namespace {

    [[noreturn]] void format_error(int line, std::string const& msg) {
      throw DomainError("line " + std::to_string(line) + ": " + msg);
    }

    std::string read_file(std::string const& path) {
      std::ifstream in(path);
      if (!in) {
        throw DomainError("cannot open " + path);
      }
      std::stringstream ss;
      ss << in.rdbuf();
      return ss.str();
    }

    // Parses "{a,b,c}" starting at `pos`; advances past the closing brace.
    NameSet parse_set(std::string const& s, std::size_t& pos, int line) {
      auto skip = [&] {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) {
          ++pos;
        }
      };
      skip();
      if (pos >= s.size() || s[pos] != '{') {
        format_error(line, "expected '{'");
      }
      ++pos;
      std::vector<std::string> out;
      skip();
      if (pos < s.size() && s[pos] == '}') {
        ++pos;
        return {};
      }
      while (true) {
        skip();
        std::size_t start = pos;
        while (pos < s.size()
               && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) {
          ++pos;
        }
        if (start == pos) {
          format_error(line, "expected an element name");
        }
        out.push_back(s.substr(start, pos - start));
        skip();
        if (pos < s.size() && s[pos] == ',') {
          ++pos;
          continue;
        }
        if (pos < s.size() && s[pos] == '}') {
          ++pos;
          break;
        }
        format_error(line, "expected ',' or '}'");
      }
      std::size_t before = out.size();
      NameSet     set    = make_name_set(std::move(out));
      if (set.size() != before) {
        format_error(line, "repeated element in set");
      }
      return set;
    }

    bool subset_of(NameSet const& a, NameSet const& b) {
      return std::includes(b.begin(), b.end(), a.begin(), a.end());
    }

    // Calls f(chosen) for every size-r subset of `from`, in lexicographic order.
    template <class F>
    void for_each_subset(NameSet const& from, std::size_t r, F&& f) {
      if (r > from.size()) {
        return;
      }
      std::vector<std::size_t> idx(r);
      for (std::size_t k = 0; k < r; ++k) {
        idx[k] = k;
      }
      while (true) {
        NameSet chosen;
        for (auto k : idx) {
          chosen.push_back(from[k]);
        }
        if (!f(chosen)) {
          return;
        }
        std::size_t k = r;
        while (k > 0 && idx[k - 1] == from.size() - r + (k - 1)) {
          --k;
        }
        if (k == 0) {
          return;
        }
        ++idx[k - 1];
        for (std::size_t j = k; j < r; ++j) {
          idx[j] = idx[j - 1] + 1;
        }
      }
    }

    NameSet set_minus(NameSet const& a, NameSet const& b) {
      NameSet out;
      std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
      return out;
    }

    std::optional<int> bottom_of(FinAlgebra const& L) {
      for (int b = 0; b < L.size(); ++b) {
        bool least = true;
        for (int x = 0; x < L.size() && least; ++x) {
          least = L.leq(b, x);
        }
        if (least) {
          return b;
        }
      }
      return std::nullopt;
    }

  }  // namespace

  NameSet make_name_set(std::vector<std::string> names) {
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());
    return names;
  }

  std::string set_text(NameSet const& s) {
    std::string out = "{";
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (k != 0) {
        out += ',';
      }
      out += s[k];
    }
    return out + "}";
  }

  ////////////////////////////////////////////////////////////////////////////
  // PhiMap
  ////////////////////////////////////////////////////////////////////////////

  PhiMap::PhiMap(NameSet ground, int arity) : ground_(std::move(ground)), arity_(arity) {
    if (arity_ < 0) {
      throw DomainError("arity must be nonnegative");
    }
  }

  void PhiMap::set(NameSet const& from, NameSet const& to) {
    if (from.size() != static_cast<std::size_t>(arity_) || !subset_of(from, ground_)) {
      throw DomainError("phi argument " + set_text(from) + " is not an "
                        + std::to_string(arity_) + "-subset of the ground set");
    }
    if (!subset_of(to, ground_)) {
      throw DomainError("phi value " + set_text(to) + " is not a subset of the ground set");
    }
    values_[from] = to;
  }

  NameSet const& PhiMap::operator()(NameSet const& from) const {
    static NameSet const empty;
    auto                 it = values_.find(from);
    return it == values_.end() ? empty : it->second;
  }

  PhiMap PhiMap::parse(std::string_view text) {
    std::istringstream     in{std::string(text)};
    std::string            raw;
    int                    line_no = 0;
    std::optional<NameSet> ground;
    std::optional<int>     arity;
    struct Pending {
      NameSet from, to;
      int     line;
    };
    std::vector<Pending> lines;
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
      std::size_t pos = raw.find(head) + head.size();
      if (head == "ground") {
        ground = parse_set(raw, pos, line_no);
      } else if (head == "arity") {
        int a = -1;
        if (!(ls >> a) || a < 0) {
          format_error(line_no, "'arity' takes a nonnegative integer");
        }
        arity = a;
        continue;
      } else if (head == "phi") {
        Pending p;
        p.line = line_no;
        p.from = parse_set(raw, pos, line_no);
        while (pos < raw.size() && std::isspace(static_cast<unsigned char>(raw[pos]))) {
          ++pos;
        }
        if (raw.compare(pos, 2, "->") != 0) {
          format_error(line_no, "expected '->'");
        }
        pos += 2;
        p.to = parse_set(raw, pos, line_no);
        lines.push_back(std::move(p));
      } else {
        format_error(line_no, "unknown directive '" + head + "'");
      }
      while (pos < raw.size() && std::isspace(static_cast<unsigned char>(raw[pos]))) {
        ++pos;
      }
      if (pos != raw.size()) {
        format_error(line_no, "unexpected trailing input");
      }
    }
    if (!ground || !arity) {
      throw DomainError("phi map needs 'ground' and 'arity' lines");
    }
    PhiMap phi(*ground, *arity);
    std::set<NameSet> seen;
    for (auto const& p : lines) {
      if (!seen.insert(p.from).second) {
        format_error(p.line, "phi given twice on " + set_text(p.from));
      }
      try {
        phi.set(p.from, p.to);
      } catch (DomainError const& e) {
        format_error(p.line, e.what());
      }
    }
    return phi;
  }

  PhiMap PhiMap::load(std::string const& path) {
    return parse(read_file(path));
  }

  bool is_free(NameSet const& U, PhiMap const& phi) {
    if (U.size() != static_cast<std::size_t>(phi.arity()) + 1 || !subset_of(U, phi.ground())) {
      throw DomainError(set_text(U) + " is not an (n+1)-subset of the ground set");
    }
    for (auto const& x : U) {
      NameSet rest;
      for (auto const& y : U) {
        if (y != x) {
          rest.push_back(y);
        }
      }
      auto const& image = phi(rest);
      if (std::binary_search(image.begin(), image.end(), x)) {
        return false;
      }
    }
    return true;
  }

  std::optional<NameSet> find_free(PhiMap const& phi) {
    std::optional<NameSet> found;
    for_each_subset(phi.ground(),
                    static_cast<std::size_t>(phi.arity()) + 1,
                    [&](NameSet const& U) {
                      if (is_free(U, phi)) {
                        found = U;
                        return false;
                      }
                      return true;
                    });
    return found;
  }

  ////////////////////////////////////////////////////////////////////////////
  // DescentInstance
  ////////////////////////////////////////////////////////////////////////////

  NameSet DescentInstance::omega() const {
    NameSet out;
    for (auto const& [xi, rows] : z) {
      out.push_back(xi);
    }
    return out;
  }

  int DescentInstance::z_at(int r, int i, std::string const& xi) const {
    auto it = z.find(xi);
    if (it == z.end() || r < 0 || r >= m() || i < 0 || i > n) {
      throw DomainError("no z_{" + std::to_string(r) + "," + std::to_string(i)
                        + "}^" + xi);
    }
    int v = it->second[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)];
    if (v < 0) {
      throw DomainError("z_{" + std::to_string(r) + "," + std::to_string(i) + "}^"
                        + xi + " is missing");
    }
    return v;
  }

  DescentInstance DescentInstance::parse(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string        raw;
    std::string        algebra_text;
    int                line_no = 0;
    DescentInstance    D;
    struct ZLine {
      int         r, i, value, line;
      std::string xi;
    };
    std::vector<ZLine>             zs;
    std::map<int, std::pair<int, int>> ts;  // r -> (value, line)
    std::vector<std::string>       us;
    bool                           has_u = false;

    while (std::getline(in, raw)) {
      ++line_no;
      std::string body = raw;
      if (auto hash = body.find('#'); hash != std::string::npos) {
        body.erase(hash);
      }
      std::istringstream ls(body);
      std::string        head;
      ls >> head;
      if (head == "mu" || head == "t" || head == "z" || head == "u") {
        algebra_text += '\n';  // keeps line numbers aligned
      } else {
        algebra_text += raw + '\n';
        continue;
      }
      if (head == "mu") {
        MuEntry e;
        if (!(ls >> e.x >> e.y)) {
          format_error(line_no, "'mu' needs two elements and an expression");
        }
        std::string rest;
        std::getline(ls, rest);
        auto first = rest.find_first_not_of(" \t");
        if (first == std::string::npos) {
          format_error(line_no, "'mu' needs an expression");
        }
        e.source = rest.substr(first, rest.find_last_not_of(" \t\r") - first + 1);
        try {
          e.value = eval_text(e.source);
        } catch (std::exception const& err) {
          format_error(line_no, err.what());
        }
        D.mu.push_back(std::move(e));
      } else if (head == "t") {
        int r = -1, v = -1;
        if (!(ls >> r >> v) || r < 0) {
          format_error(line_no, "'t' needs an index and an element");
        }
        if (!ts.emplace(r, std::make_pair(v, line_no)).second) {
          format_error(line_no, "t_" + std::to_string(r) + " given twice");
        }
      } else if (head == "z") {
        ZLine zl{};
        zl.line = line_no;
        if (!(ls >> zl.r >> zl.i >> zl.xi >> zl.value) || zl.r < 0 || zl.i < 0) {
          format_error(line_no, "'z' needs r, i, a generator and an element");
        }
        if (!is_valid_identifier(zl.xi)) {
          format_error(line_no, "bad generator name '" + zl.xi + "'");
        }
        zs.push_back(zl);
      } else {
        has_u = true;
        std::string xi;
        while (ls >> xi) {
          if (!is_valid_identifier(xi)) {
            format_error(line_no, "bad generator name '" + xi + "'");
          }
          us.push_back(xi);
        }
      }
      std::string extra;
      if (head != "mu" && head != "u" && (ls >> extra)) {
        format_error(line_no, "unexpected trailing input");
      }
    }
    D.L = FinAlgebra::parse(algebra_text);
    int const k = D.L.size();
    auto in_carrier = [k](int v) { return v >= 0 && v < k; };
    for (auto const& e : D.mu) {
      if (!in_carrier(e.x) || !in_carrier(e.y)) {
        throw DomainError("mu line refers to an element outside the carrier");
      }
    }
    for (auto const& [r, vl] : ts) {
      if (r != static_cast<int>(D.t.size())) {
        format_error(vl.second, "t indices must be 0, 1, ..., m-1");
      }
      if (!in_carrier(vl.first)) {
        format_error(vl.second, "element outside the carrier");
      }
      D.t.push_back(vl.first);
    }
    for (auto const& zl : zs) {
      D.n = std::max(D.n, zl.i);
    }
    for (auto const& zl : zs) {
      if (zl.r >= D.m()) {
        format_error(zl.line, "z line for r without a t line");
      }
      if (!in_carrier(zl.value)) {
        format_error(zl.line, "element outside the carrier");
      }
      auto& rows = D.z[zl.xi];
      if (rows.empty()) {
        rows.assign(static_cast<std::size_t>(D.m()),
                    std::vector<int>(static_cast<std::size_t>(D.n + 1), -1));
      }
      int& slot = rows[static_cast<std::size_t>(zl.r)][static_cast<std::size_t>(zl.i)];
      if (slot != -1) {
        format_error(zl.line, "z given twice");
      }
      slot = zl.value;
    }
    D.U = has_u ? make_name_set(us) : D.omega();
    return D;
  }

  DescentInstance DescentInstance::load(std::string const& path) {
    return parse(read_file(path));
  }

  std::string DescentInstance::to_text() const {
    std::ostringstream out;
    out << L.to_text();
    for (auto const& e : mu) {
      out << "mu " << e.x << ' ' << e.y << ' ' << e.source << '\n';
    }
    for (int r = 0; r < m(); ++r) {
      out << "t " << r << ' ' << t[static_cast<std::size_t>(r)] << '\n';
    }
    for (auto const& [xi, rows] : z) {
      for (int r = 0; r < m(); ++r) {
        for (int i = 0; i <= n; ++i) {
          int v = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)];
          if (v >= 0) {
            out << "z " << r << ' ' << i << ' ' << xi << ' ' << v << '\n';
          }
        }
      }
    }
    out << "u";
    for (auto const& xi : U) {
      out << ' ' << xi;
    }
    out << '\n';
    return out.str();
  }

  ////////////////////////////////////////////////////////////////////////////
  // mu
  ////////////////////////////////////////////////////////////////////////////

  MuExtension::MuExtension(DescentInstance const& D) : con_(conc(D.L)), k_(D.L.size()) {
    auto const& ext = g();
    int const   k   = D.L.size();
    std::size_t const nc = con_.elements.size();
    principal_value_.resize(nc);
    std::vector<std::string> origin(nc);
    for (auto const& e : D.mu) {
      int const idx = con_.principal[static_cast<std::size_t>(e.x * k + e.y)];
      auto&     slot = principal_value_[static_cast<std::size_t>(idx)];
      std::string const where = "mu " + std::to_string(e.x) + " " + std::to_string(e.y);
      if (idx == 0 && !e.value.is_zero()) {
        problems_.push_back(where + ": the zero congruence must map to 0");
        continue;
      }
      if (!slot) {
        slot                               = e.value;
        origin[static_cast<std::size_t>(idx)] = where;
      } else if (!(*slot == e.value)) {
        problems_.push_back(where + " disagrees with " + origin[static_cast<std::size_t>(idx)]
                            + " on the same congruence "
                            + con_.elements[static_cast<std::size_t>(idx)].to_string());
      }
    }
    principal_value_[0] = g_zero();
    for (std::size_t idx = 0; idx < nc; ++idx) {
      if (principal_value_[idx]) {
        given_.push_back(static_cast<int>(idx));
      }
    }
    value_.assign(nc, g_zero());
    // Every congruence must be the join of the given ones below it.
    for (std::size_t c = 0; c < nc; ++c) {
      Congruence span = Congruence::identity(k);
      for (int p : given_) {
        if (con_.elements[static_cast<std::size_t>(p)].leq(con_.elements[c])) {
          span = span.join(con_.elements[static_cast<std::size_t>(p)]);
        }
      }
      if (!(span == con_.elements[c])) {
        problems_.push_back("congruence " + con_.elements[c].to_string()
                            + " is not a join of congruences with mu values");
      }
    }
    if (!problems_.empty()) {
      return;
    }
    for (std::size_t c = 0; c < nc; ++c) {
      GElem acc = g_zero();
      for (int p : given_) {
        if (con_.elements[static_cast<std::size_t>(p)].leq(con_.elements[c])) {
          acc = ext.join(acc, *principal_value_[static_cast<std::size_t>(p)]);
        }
      }
      value_[c] = acc;
    }
  }

  GElem const& MuExtension::given(int index) const {
    auto const& v = principal_value_.at(static_cast<std::size_t>(index));
    if (!v) {
      throw DomainError("no mu line for this congruence");
    }
    return *v;
  }

  GElem const& MuExtension::at(int index) const {
    if (!defined()) {
      throw DomainError("mu is not defined: " + problems_.front());
    }
    return value_.at(static_cast<std::size_t>(index));
  }

  GElem const& MuExtension::of_theta(int x, int y) const {
    return at(con_.principal.at(static_cast<std::size_t>(x * k_ + y)));
  }

  bool InstanceReport::ok() const {
    return std::all_of(items.begin(), items.end(), [](ReportItem const& it) {
      return it.informational || it.ok;
    });
  }

  InstanceReport validate_instance(DescentInstance const& D) {
    InstanceReport rep;
    rep.items.reserve(16);  // items are filled through references below
    auto const&    ext = g();
    FinAlgebra const& L = D.L;
    auto add = [&rep](std::string name, bool informational = false) -> ReportItem& {
      rep.items.push_back(ReportItem{std::move(name), true, informational, {}});
      return rep.items.back();
    };
    auto fail = [](ReportItem& item, std::string detail) {
      item.ok = false;
      item.details.push_back(std::move(detail));
    };
    auto z_name = [](int r, int i, std::string const& xi) {
      return "z_{" + std::to_string(r) + "," + std::to_string(i) + "}^" + xi;
    };

    auto& top_item = add("algebra-has-top");
    if (!L.top()) {
      fail(top_item, "no designated top");
    }
    auto& compat = add("join-congruence-compatible");
    if (!check_congruence_compatible(L)) {
      fail(compat, "some congruence of L is not compatible with the join");
    }
    auto& structure = add("instance-shape");
    if (D.m() < 1) {
      fail(structure, "no t lines (m = 0)");
    }
    if (D.n < 1) {
      fail(structure, "z chains need n >= 1");
    }
    if (D.z.empty()) {
      fail(structure, "no z lines");
    }
    if (!subset_of(D.U, D.omega())) {
      fail(structure, "U " + set_text(D.U) + " is not contained in " + set_text(D.omega()));
    }

    auto& complete = add("z-complete");
    for (auto const& [xi, rows] : D.z) {
      for (int r = 0; r < D.m(); ++r) {
        for (int i = 0; i <= D.n; ++i) {
          if (rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)] < 0) {
            fail(complete, z_name(r, i, xi) + " missing");
          }
        }
      }
    }
    auto value = [&D](int r, int i, std::string const& xi) {
      return D.z.at(xi)[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)];
    };
    auto& start = add("z-start-equals-t");
    auto& end   = add("z-end-equals-top");
    auto& above = add("t-below-z");
    for (auto const& [xi, rows] : D.z) {
      for (int r = 0; r < D.m(); ++r) {
        int const tr = D.t[static_cast<std::size_t>(r)];
        if (value(r, 0, xi) >= 0 && value(r, 0, xi) != tr) {
          fail(start, z_name(r, 0, xi) + " = " + std::to_string(value(r, 0, xi))
                          + " but t_" + std::to_string(r) + " = " + std::to_string(tr));
        }
        if (value(r, D.n, xi) >= 0 && (!L.top() || value(r, D.n, xi) != *L.top())) {
          fail(end, z_name(r, D.n, xi) + " = " + std::to_string(value(r, D.n, xi))
                        + " is not the top");
        }
        for (int i = 0; i <= D.n; ++i) {
          if (value(r, i, xi) >= 0 && !L.leq(tr, value(r, i, xi))) {
            fail(above, "t_" + std::to_string(r) + " is not below " + z_name(r, i, xi));
          }
        }
      }
    }

    MuExtension mu(D);
    auto&       defined = add("mu-defined");
    for (auto const& p : mu.problems()) {
      fail(defined, p);
    }
    auto& hom   = add("mu-join-preserving");
    auto& decom = add("decomposition-of-one");
    auto& chain = add("chain-premises");
    auto& sep   = add("mu-separates-zero", true);
    if (!mu.defined()) {
      for (ReportItem* item : {&hom, &decom, &chain}) {
        fail(*item, "not evaluated: mu is not defined");
      }
      sep.ok = false;
      sep.details.push_back("not evaluated: mu is not defined");
      return rep;
    }
    auto const& con = mu.con();
    int const   nc  = static_cast<int>(con.elements.size());
    for (int p : mu.given_indices()) {
      if (!(mu.at(p) == mu.given(p))) {
        fail(hom, "mu(" + con.elements[static_cast<std::size_t>(p)].to_string()
                      + ") is not above the values given on smaller congruences");
      }
    }
    for (int c = 0; c < nc && hom.details.size() < 20; ++c) {
      for (int p : mu.given_indices()) {
        int const j = con.table.join(c, p);
        if (!(mu.at(j) == ext.join(mu.at(c), mu.at(p)))) {
          fail(hom, "mu(A v B) != mu(A) v mu(B) for A = "
                        + con.elements[static_cast<std::size_t>(c)].to_string()
                        + ", B = " + con.elements[static_cast<std::size_t>(p)].to_string());
          break;
        }
      }
    }
    if (L.top()) {
      GElem acc = g_zero();
      for (int tr : D.t) {
        acc = ext.join(acc, mu.of_theta(tr, *L.top()));
      }
      if (!(acc == g_one())) {
        fail(decom, "join of mu(theta(t_r, 1)) is " + acc.text());
      }
    } else {
      fail(decom, "not evaluated: no top");
    }
    for (auto const& [xi, rows] : D.z) {
      GeneratorId const id(xi);
      for (int r = 0; r < D.m(); ++r) {
        for (int i = 0; i < D.n; ++i) {
          int const a = value(r, i, xi), b = value(r, i + 1, xi);
          if (a < 0 || b < 0) {
            continue;
          }
          GElem const& img = mu.of_theta(a, b);
          if (!ext.leq(img, g_gen(epsilon(i), id))) {
            fail(chain, "mu(theta(" + z_name(r, i, xi) + ", " + z_name(r, i + 1, xi)
                            + ")) is not below a" + std::to_string(epsilon(i)) + "(" + xi
                            + ")");
          }
        }
      }
    }
    for (int c = 1; c < nc; ++c) {
      if (mu.at(c).is_zero()) {
        sep.ok = false;
        sep.details.push_back("mu maps " + con.elements[static_cast<std::size_t>(c)].to_string()
                              + " to 0");
      }
    }
    return rep;
  }

  ////////////////////////////////////////////////////////////////////////////
  // E_r and P(k,l)
  ////////////////////////////////////////////////////////////////////////////

  bool check_Er(DescentInstance const& D, int r, int k, NameSet const& X, NameSet const& Y) {
    if (!D.L.top()) {
      throw DomainError("E_r needs a top element");
    }
    if (r < 0 || r >= D.m()) {
      throw DomainError("r out of range");
    }
    if (k < 0 || D.n - k - 1 < 0) {
      throw DomainError("k must satisfy 0 <= k <= n-1");
    }
    NameSet const omega = D.omega();
    if (!subset_of(X, omega) || !subset_of(Y, omega)) {
      throw DomainError("X and Y must be subsets of Omega");
    }
    NameSet both;
    std::set_intersection(X.begin(), X.end(), Y.begin(), Y.end(), std::back_inserter(both));
    if (!both.empty()) {
      throw DomainError("X and Y must be disjoint");
    }
    std::optional<int> acc;
    auto join_in = [&](int v) { acc = acc ? D.L.join(*acc, v) : v; };
    for (auto const& xi : X) {
      join_in(D.z_at(r, D.n - k, xi));
    }
    for (auto const& eta : Y) {
      join_in(D.z_at(r, D.n - k - 1, eta));
    }
    if (!acc) {
      auto bottom = bottom_of(D.L);
      return bottom && *bottom == *D.L.top();
    }
    return *acc == *D.L.top();
  }

  PReport check_P(DescentInstance const& D, int k, int l) {
    if (k < 0 || k > D.n - 1) {
      throw DomainError("P(k,l) needs 0 <= k <= n-1");
    }
    if (k > 30 || l < 0 || l > (1 << k)) {
      throw DomainError("P(k,l) needs 0 <= l <= 2^k");
    }
    PReport rep;
    rep.k = k;
    rep.l = l;
    std::size_t const nx = static_cast<std::size_t>((1 << k) - l);
    std::size_t const ny = static_cast<std::size_t>(2 * l);
    for (int r = 0; r < D.m(); ++r) {
      for_each_subset(D.U, nx, [&](NameSet const& X) {
        for_each_subset(set_minus(D.U, X), ny, [&](NameSet const& Y) {
          ++rep.instances;
          if (!check_Er(D, r, k, X, Y)) {
            rep.failures.push_back(EFailure{r, X, Y});
          }
          return true;
        });
        return true;
      });
    }
    return rep;
  }

  NameSet phi_from_instance(DescentInstance const& D, MuExtension const& mu, NameSet const& X) {
    std::set<int> S;
    for (auto const& xi : X) {
      auto it = D.z.find(xi);
      if (it == D.z.end()) {
        continue;  // no chains for xi: contributes no generators
      }
      for (auto const& row : it->second) {
        for (int v : row) {
          if (v >= 0) {
            S.insert(v);
          }
        }
      }
    }
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<int> cur(S.begin(), S.end());
      for (int a : cur) {
        for (int b : cur) {
          grew |= S.insert(D.L.join(a, b)).second;
        }
      }
    }
    std::vector<GeneratorId> ids;
    for (int a : S) {
      for (int b : S) {
        for (auto const& id : support(mu.of_theta(a, b))) {
          ids.push_back(id);
        }
      }
    }
    NameSet out;
    for (auto const& id : make_generator_set(std::move(ids))) {
      out.push_back(id.name);
    }
    return out;
  }

  NameSet phi_from_instance(DescentInstance const& D, NameSet const& X) {
    MuExtension mu(D);
    return phi_from_instance(D, mu, X);
  }

}  // namespace slat
