#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "slat/harness.hpp"

using namespace slat;

namespace {

  std::string fixture(std::string const& name) {
    return std::string(SLAT_DATA_DIR) + "/fixtures/" + name;
  }

  ReportItem const* item(InstanceReport const& r, std::string const& name) {
    for (auto const& it : r.items) {
      if (it.name == name) {
        return &it;
      }
    }
    return nullptr;
  }

}  // namespace

TEST_CASE("phi maps") {
  PhiMap const p = PhiMap::parse("ground {a,b,c}\narity 1\nphi {a} -> {b}\n");
  CHECK(p.ground() == NameSet{"a", "b", "c"});
  CHECK(p.arity() == 1);
  CHECK(p({"a"}) == NameSet{"b"});
  CHECK(p({"c"}).empty());  // unlisted subsets go to the empty set
  CHECK(is_free({"a", "c"}, p));
  CHECK_FALSE(is_free({"a", "b"}, p));
  CHECK(find_free(p) == NameSet{"a", "c"});
  CHECK_THROWS_AS(is_free({"a"}, p), DomainError);
  CHECK_THROWS_AS(PhiMap::parse("ground {a,b}\narity 1\nphi {a,b} -> {a}\n"), DomainError);
  CHECK_THROWS_AS(PhiMap::parse("ground {a,b}\narity 1\nphi {a} -> {z}\n"), DomainError);
}

TEST_CASE("free sets on the fixtures") {
  CHECK_FALSE(find_free(PhiMap::load(fixture("phi_no_free_pair.phi"))).has_value());
  auto const s = find_free(PhiMap::load(fixture("phi_singleton.phi")));
  REQUIRE(s.has_value());
  CHECK(set_text(*s) == "{0,1}");
}

// Brute force over all maps on a 3-element ground set with arity 1: a free
// pair exists exactly when some x, y have y not in Phi({x}) and x not in
// Phi({y}).
TEST_CASE("find_free against direct search") {
  NameSet const ground{"0", "1", "2"};
  for (int code = 0; code < 512; ++code) {
    PhiMap phi(ground, 1);
    for (int x = 0; x < 3; ++x) {
      NameSet to;
      for (int y = 0; y < 3; ++y) {
        if (code & (1 << (3 * x + y))) {
          to.push_back(ground[static_cast<std::size_t>(y)]);
        }
      }
      phi.set({ground[static_cast<std::size_t>(x)]}, to);
    }
    std::optional<NameSet> expect;
    for (int x = 0; x < 3 && !expect; ++x) {
      for (int y = x + 1; y < 3 && !expect; ++y) {
        bool const y_in = code & (1 << (3 * x + y));
        bool const x_in = code & (1 << (3 * y + x));
        if (!y_in && !x_in) {
          expect = NameSet{ground[static_cast<std::size_t>(x)], ground[static_cast<std::size_t>(y)]};
        }
      }
    }
    CHECK(find_free(phi) == expect);
  }
}

TEST_CASE("the 9-chain instance") {
  DescentInstance const D = DescentInstance::load(fixture("descent_chain9.inst"));
  CHECK(D.n == 8);
  CHECK(D.m() == 1);
  CHECK(D.omega() == NameSet{"p", "q", "s"});
  CHECK(D.z_at(0, 1, "p") == 4);

  InstanceReport const rep = validate_instance(D);
  CHECK(rep.ok());
  for (auto const& it : rep.items) {
    CHECK_MESSAGE(it.ok, it.name);
  }

  MuExtension const mu(D);
  REQUIRE(mu.defined());
  CHECK(mu.of_theta(0, 8) == g_one());
  CHECK(mu.of_theta(3, 3) == g_zero());

  // z_{0,8} is the top for every xi.
  CHECK(check_Er(D, 0, 0, {"p", "q", "s"}, {}));
  // z_{0,1}^s = 1 and z_{0,0}^q = 0.
  CHECK_FALSE(check_Er(D, 0, 7, {"s"}, {"q"}));
  // z_{0,1}^p v z_{0,0}^q = 4.
  CHECK_FALSE(check_Er(D, 0, 7, {"p"}, {"q"}));
  // An empty join is the bottom, which is not the top here.
  CHECK_FALSE(check_Er(D, 0, 3, {}, {}));
  CHECK_THROWS_AS(check_Er(D, 0, 0, {"p"}, {"p"}), DomainError);
  CHECK_THROWS_AS(check_Er(D, 1, 0, {"p"}, {}), DomainError);
  CHECK_THROWS_AS(check_Er(D, 0, 8, {"p"}, {}), DomainError);
  CHECK_THROWS_AS(check_Er(D, 0, 0, {"w"}, {}), DomainError);

  for (int k = 0; k <= 3; ++k) {
    for (int l = 0; l <= (1 << k); ++l) {
      PReport const p = check_P(D, k, l);
      CHECK_MESSAGE(p.holds(), "P(" << k << "," << l << ")");
      // |X| + |Y| = 2^k + l must fit in U = {p,q,s}.
      CHECK((p.instances > 0) == ((1 << k) + l <= 3));
    }
  }
  CHECK_THROWS_AS(check_P(D, 8, 0), DomainError);
  CHECK_THROWS_AS(check_P(D, 1, 3), DomainError);

  CHECK(phi_from_instance(D, {"p"}) == NameSet{"p"});
  CHECK(phi_from_instance(D, D.omega()) == NameSet{"p", "q", "s"});
  CHECK(phi_from_instance(D, {}).empty());
}

TEST_CASE("instance text round trip") {
  DescentInstance const D = DescentInstance::load(fixture("descent_chain9.inst"));
  DescentInstance const E = DescentInstance::parse(D.to_text());
  CHECK(E.to_text() == D.to_text());
  CHECK(E.z == D.z);
  CHECK(E.t == D.t);
}

TEST_CASE("the 2x2 instance fails only the chain premises") {
  DescentInstance const D   = DescentInstance::load(fixture("descent_b2x2.inst"));
  InstanceReport const  rep = validate_instance(D);
  CHECK_FALSE(rep.ok());
  for (auto const& it : rep.items) {
    if (it.informational) {
      continue;
    }
    CHECK_MESSAGE(it.ok == (it.name != "chain-premises"), it.name);
  }
  ReportItem const* chain = item(rep, "chain-premises");
  REQUIRE(chain);
  REQUIRE_FALSE(chain->details.empty());
  CHECK(chain->details[0].find("q") != std::string::npos);
}

TEST_CASE("malformed instances") {
  CHECK_THROWS_AS(DescentInstance::parse("alg 2\nop join 2 0 1 1 1\njoin join\nmu 0 1 a0(\n"),
                  std::exception);
  DescentInstance const D = DescentInstance::parse(
      "alg 2\nop join 2 0 1 1 1\njoin join\ntop 1\nt 0 0\nz 0 0 p 0\nz 0 1 p 1\n");
  InstanceReport const rep = validate_instance(D);
  ReportItem const*    m   = item(rep, "mu-defined");
  REQUIRE(m);
  CHECK_FALSE(m->ok);
}
