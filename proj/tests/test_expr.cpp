#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "slat/expr.hpp"
#include "slat/sample.hpp"

using namespace slat;

namespace {
  std::string const node_xi = "red(pair([],[]); [(pair([xi],[]),pair([],[xi]),top)])";
}

TEST_CASE("constants and generators") {
  CHECK(eval_text("0") == g_zero());
  CHECK(eval_text("1") == g_one());
  CHECK(eval_text("top") == g_one());
  CHECK(eval_text("a0(xi)") == g_gen(0, GeneratorId("xi")));
  CHECK(eval_text(" a1( xi ) ") == g_gen(1, GeneratorId("xi")));
  CHECK(serialize(g_zero()) == "pair([],[])");
  CHECK(serialize(g_one()) == "top");
  CHECK(serialize(eval_text("join(a0(xi), a0(eta))")) == "pair([eta,xi],[])");
  CHECK(eval_text("join(a0(xi), a1(xi))") == g_one());
  CHECK(eval_text("pair([x1],[x2])") == eval_text("join(a0(x1),a1(x2))"));
}

TEST_CASE("bowtie and red") {
  GElem const x = eval_text("bowtie(a0(xi), a1(xi), 1)");
  CHECK(serialize(x) == node_xi);
  CHECK(eval_text(node_xi) == x);
  CHECK(eval_text("join(bowtie(a0(xi),a1(xi),1), bowtie(a1(xi),a0(xi),1))") == g_one());
  CHECK_THROWS_AS(eval_text("bowtie(a0(xi), a0(xi), a1(xi))"), DomainError);
  CHECK_THROWS_AS(eval_text("pair([xi],[xi])"), DomainError);
}

TEST_CASE("explicit levels") {
  std::string const lifted = "red@3(pair([],[]); [(pair([xi],[]),pair([],[xi]),top)])";
  GElem const       y      = eval_text(lifted);
  CHECK(y.rank() == 3);
  CHECK(serialize(y) == lifted);
  CHECK(deserialize(lifted) == y);
  CHECK_FALSE(y == eval_text(node_xi));
  // Level 1 is the implicit one.
  CHECK(eval_text("red@1(pair([],[]); [(pair([xi],[]),pair([],[xi]),top)])") == eval_text(node_xi));
  CHECK_THROWS_AS(deserialize("red@1(pair([],[]); [(pair([xi],[]),pair([],[xi]),top)])"),
                  DomainError);
  CHECK_THROWS_AS(parse("red@0(0; [(0,0,0)])"), ParseError);
}

TEST_CASE("reducedness is validated") {
  auto which = [](std::string const& text) {
    try {
      eval_text(text);
    } catch (ValidationError const& e) {
      return std::string(to_string(e.which()));
    }
    return std::string("accepted");
  };
  CHECK(which("red(0; [])") == to_string(ReducedViolation::empty_triples));
  CHECK(which("red(0; [(a0(xi),a0(xi),a0(xi))])") == to_string(ReducedViolation::diagonal_stored));
  CHECK(which("red(0; [(a0(xi),a1(xi),1),(a1(xi),a0(xi),1)])")
        == to_string(ReducedViolation::swapped_pair));
  CHECK(which("red(a0(xi); [(a0(xi),a1(xi),1)])") == to_string(ReducedViolation::dominated));
  CHECK(which("red(0; [(a0(xi),a0(eta),a1(xi))])") == to_string(ReducedViolation::not_in_c));
  CHECK(which("red(0; [(a0(xi),a1(xi),1),(a0(xi),a1(xi),1)])")
        == to_string(ReducedViolation::duplicate));
  std::string const rank1 = node_xi;
  CHECK(which("red@1(0; [(" + rank1 + ",a1(eta),join(" + rank1 + ",a1(eta)))])")
        == to_string(ReducedViolation::bad_level));
}

TEST_CASE("parse errors carry positions") {
  try {
    parse("join(a0(xi),\n  foo(xi))");
    FAIL("no error");
  } catch (ParseError const& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 3);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  try {
    parse("a0(x-1)");
    FAIL("no error");
  } catch (ParseError const& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() == 5);
  }
  CHECK_THROWS_AS(parse("join(a0(xi))"), ParseError);
  CHECK_THROWS_AS(parse("bowtie(0,0)"), ParseError);
  CHECK_THROWS_AS(parse("0 0"), ParseError);
  CHECK_THROWS_AS(parse(""), ParseError);
}

TEST_CASE("non-canonical texts are rejected by deserialize") {
  CHECK_THROWS_AS(deserialize("0"), DomainError);
  CHECK_THROWS_AS(deserialize("pair([xi],[ ])"), DomainError);
  CHECK(deserialize("pair([],[])") == g_zero());
}

TEST_CASE("round trip on random elements") {
  GeneratorSet const gens = omega(4);
  for (int k = 0; k < 500; ++k) {
    Rng               rng(5, "expr", static_cast<std::uint64_t>(k));
    GElem const       x = random_elem(rng, gens, 3);
    std::string const t = serialize(x);
    GElem const       y = deserialize(t);
    CHECK(y == x);
    CHECK(serialize(y) == t);
    CHECK(g().leq(x, y));
    CHECK(g().leq(y, x));
  }
}
