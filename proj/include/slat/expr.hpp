#ifndef SLAT_EXPR_HPP
#define SLAT_EXPR_HPP

// Surface syntax for G(Omega) terms.
//
//   E ::= 0 | 1 | a0(ID) | a1(ID) | join(E, E, ...) | bowtie(E, E, E)
//       | top | pair([ID,...],[ID,...])
//       | red(E; [(E,E,E), ...]) | red@N(E; [(E,E,E), ...])
//
// The second line is the canonical serialization, so every canonical text is
// itself a valid expression and parses back to the same element.

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "slat/gomega.hpp"

namespace slat {

  class ParseError : public std::runtime_error {
   public:
    ParseError(std::string const& msg, int line, int column);
    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

   private:
    int line_;
    int column_;
  };

  struct Expr {
    enum class Kind { zero, one, gen, join, bowtie, top, pair, red };

    Kind                     kind = Kind::zero;
    int                      index = 0;      // gen: 0 or 1; red: level (0 = implicit)
    std::string              id;             // gen
    std::vector<std::string> pos, neg;       // pair
    std::vector<Expr>        args;           // join, bowtie, red: proj then triples
    int                      line = 1;
    int                      column = 1;
    std::string              source;         // the text this node was parsed from
  };

  Expr parse(std::string_view text);
  GElem evaluate(Expr const& e);

  // parse + evaluate.
  GElem eval_text(std::string_view text);

  std::string serialize(GElem const& x);
  // Accepts only canonical texts: the result must serialize back to `text`.
  GElem deserialize(std::string_view text);

}  // namespace slat

#endif  // SLAT_EXPR_HPP
