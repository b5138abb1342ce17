#include "slat/lomega.hpp"

#include <algorithm>
#include <stdexcept>

namespace slat {

  namespace {
    GeneratorSet set_union(GeneratorSet const& a, GeneratorSet const& b) {
      GeneratorSet out;
      out.reserve(a.size() + b.size());
      std::set_union(
          a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
      return out;
    }

    bool intersects(GeneratorSet const& a, GeneratorSet const& b) {
      auto i = a.begin();
      auto j = b.begin();
      while (i != a.end() && j != b.end()) {
        if (*i < *j) {
          ++i;
        } else if (*j < *i) {
          ++j;
        } else {
          return true;
        }
      }
      return false;
    }

    bool contains(GeneratorSet const& s, GeneratorId const& x) {
      return std::binary_search(s.begin(), s.end(), x);
    }

    std::string list_text(GeneratorSet const& s) {
      std::string out = "[";
      for (std::size_t k = 0; k < s.size(); ++k) {
        if (k != 0) {
          out += ',';
        }
        out += s[k].name;
      }
      out += ']';
      return out;
    }
  }  // namespace

  GeneratorSet make_generator_set(std::vector<GeneratorId> ids) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
  }

  bool is_valid_identifier(std::string_view name) {
    if (name.empty()) {
      return false;
    }
    return std::all_of(name.begin(), name.end(), [](char c) {
      return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z')
             || (c >= '0' && c <= '9') || c == '_';
    });
  }

  PairElem PairElem::top() {
    PairElem p;
    p.top_ = true;
    return p;
  }

  PairElem PairElem::pair(GeneratorSet pos, GeneratorSet neg) {
    pos = make_generator_set(std::move(pos));
    neg = make_generator_set(std::move(neg));
    if (intersects(pos, neg)) {
      throw std::invalid_argument("pair components are not disjoint");
    }
    PairElem p;
    p.pos_ = std::move(pos);
    p.neg_ = std::move(neg);
    return p;
  }

  std::string PairElem::to_string() const {
    if (top_) {
      return "top";
    }
    return "pair(" + list_text(pos_) + "," + list_text(neg_) + ")";
  }

  PairElem l_gen(int i, GeneratorId const& xi) {
    if (i != 0 && i != 1) {
      throw std::invalid_argument("generator index must be 0 or 1");
    }
    return i == 0 ? PairElem::pair({xi}, {}) : PairElem::pair({}, {xi});
  }

  PairElem l_join(PairElem const& p, PairElem const& q) {
    if (p.is_top() || q.is_top()) {
      return PairElem::top();
    }
    auto pos = set_union(p.pos(), q.pos());
    auto neg = set_union(p.neg(), q.neg());
    if (intersects(pos, neg)) {
      return PairElem::top();
    }
    return PairElem::pair(std::move(pos), std::move(neg));
  }

  bool l_leq(PairElem const& p, PairElem const& q) {
    if (q.is_top()) {
      return true;
    }
    if (p.is_top()) {
      return false;
    }
    return std::includes(
               q.pos().begin(), q.pos().end(), p.pos().begin(), p.pos().end())
           && std::includes(q.neg().begin(),
                            q.neg().end(),
                            p.neg().begin(),
                            p.neg().end());
  }

  PairElem l_map(std::function<GeneratorId(GeneratorId const&)> const& f,
                 PairElem const&                                     p) {
    if (p.is_top()) {
      return p;
    }
    PairElem out;
    for (auto const& x : p.pos()) {
      out = l_join(out, l_gen(0, f(x)));
    }
    for (auto const& y : p.neg()) {
      out = l_join(out, l_gen(1, f(y)));
    }
    return out;
  }

  PairElem l_retract(GeneratorId const& alpha, int i, PairElem const& p) {
    if (i != 0 && i != 1) {
      throw std::invalid_argument("generator index must be 0 or 1");
    }
    if (p.is_top()) {
      return p;
    }
    auto const& killed = i == 0 ? p.pos() : p.neg();
    auto const& forced = i == 0 ? p.neg() : p.pos();
    if (contains(forced, alpha)) {
      return PairElem::top();
    }
    if (!contains(killed, alpha)) {
      return p;
    }
    GeneratorSet rest;
    for (auto const& x : killed) {
      if (x != alpha) {
        rest.push_back(x);
      }
    }
    return i == 0 ? PairElem::pair(std::move(rest), p.neg())
                  : PairElem::pair(p.pos(), std::move(rest));
  }

  GeneratorSet l_support(PairElem const& p) {
    if (p.is_top()) {
      return {};
    }
    return set_union(p.pos(), p.neg());
  }

  bool l_in(PairElem const& p, GeneratorSet const& x) {
    auto s = l_support(p);
    return std::includes(x.begin(), x.end(), s.begin(), s.end());
  }

  std::vector<PairElem> l_all(GeneratorSet const& x) {
    std::vector<PairElem> out;
    std::size_t           count = 1;
    for (std::size_t k = 0; k < x.size(); ++k) {
      count *= 3;
    }
    out.reserve(count + 1);
    for (std::size_t code = 0; code < count; ++code) {
      GeneratorSet pos, neg;
      std::size_t  c = code;
      for (auto const& g : x) {
        switch (c % 3) {
          case 1:
            pos.push_back(g);
            break;
          case 2:
            neg.push_back(g);
            break;
          default:
            break;
        }
        c /= 3;
      }
      out.push_back(PairElem::pair(std::move(pos), std::move(neg)));
    }
    out.push_back(PairElem::top());
    return out;
  }

}  // namespace slat
