#include "slat/expr.hpp"

#include <algorithm>
#include <cctype>

namespace slat {

  ParseError::ParseError(std::string const& msg, int line, int column)
      : std::runtime_error("line " + std::to_string(line) + ", column "
                           + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}

  namespace {

    class Parser {
     public:
      explicit Parser(std::string_view text) : text_(text) {}

      Expr parse_all() {
        Expr e = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) {
          fail("unexpected trailing input");
        }
        return e;
      }

     private:
      [[noreturn]] void fail(std::string const& msg) const {
        throw ParseError(msg, line_, col_);
      }

      void advance() {
        if (text_[pos_] == '\n') {
          ++line_;
          col_ = 1;
        } else {
          ++col_;
        }
        ++pos_;
      }

      void skip_ws() {
        while (pos_ < text_.size()
               && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
          advance();
        }
      }

      bool peek(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
      }

      void expect(char c) {
        if (!peek(c)) {
          fail(std::string("expected '") + c + "'");
        }
        advance();
      }

      static bool word_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
      }

      std::string word() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && word_char(text_[pos_])) {
          advance();
        }
        return std::string(text_.substr(start, pos_ - start));
      }

      std::string identifier() {
        int         l = line_, c = col_;
        std::string id = word();
        if (!is_valid_identifier(id)) {
          throw ParseError("expected an identifier [A-Za-z0-9_]+", l, c);
        }
        return id;
      }

      std::vector<std::string> id_list() {
        expect('[');
        std::vector<std::string> out;
        if (peek(']')) {
          advance();
          return out;
        }
        while (true) {
          out.push_back(identifier());
          if (peek(',')) {
            advance();
            continue;
          }
          expect(']');
          return out;
        }
      }

      Expr parse_expr() {
        skip_ws();
        Expr e;
        e.line          = line_;
        e.column        = col_;
        std::size_t start = pos_;
        if (pos_ >= text_.size()) {
          fail("unexpected end of input");
        }
        std::string head = word();
        if (head.empty()) {
          fail("expected an expression");
        }
        if (head == "0") {
          e.kind = Expr::Kind::zero;
        } else if (head == "1") {
          e.kind = Expr::Kind::one;
        } else if (head == "top") {
          e.kind = Expr::Kind::top;
        } else if (head == "a0" || head == "a1") {
          e.kind  = Expr::Kind::gen;
          e.index = head == "a0" ? 0 : 1;
          expect('(');
          e.id = identifier();
          expect(')');
        } else if (head == "join" || head == "bowtie") {
          e.kind = head == "join" ? Expr::Kind::join : Expr::Kind::bowtie;
          expect('(');
          e.args.push_back(parse_expr());
          while (peek(',')) {
            advance();
            e.args.push_back(parse_expr());
          }
          expect(')');
          if (e.kind == Expr::Kind::join && e.args.size() < 2) {
            throw ParseError("join needs at least two arguments", e.line, e.column);
          }
          if (e.kind == Expr::Kind::bowtie && e.args.size() != 3) {
            throw ParseError("bowtie needs exactly three arguments", e.line, e.column);
          }
        } else if (head == "pair") {
          e.kind = Expr::Kind::pair;
          expect('(');
          e.pos = id_list();
          expect(',');
          e.neg = id_list();
          expect(')');
        } else if (head == "red") {
          e.kind = Expr::Kind::red;
          if (peek('@')) {
            advance();
            int         l = line_, c = col_;
            std::string n = word();
            if (n.empty() || n.size() > 6
                || !std::all_of(n.begin(), n.end(), [](char ch) {
                     return std::isdigit(static_cast<unsigned char>(ch));
                   })) {
              throw ParseError("expected a level after '@'", l, c);
            }
            e.index = std::stoi(n);
            if (e.index < 1) {
              throw ParseError("level must be positive", l, c);
            }
          }
          expect('(');
          e.args.push_back(parse_expr());
          expect(';');
          expect('[');
          if (!peek(']')) {
            while (true) {
              expect('(');
              e.args.push_back(parse_expr());
              expect(',');
              e.args.push_back(parse_expr());
              expect(',');
              e.args.push_back(parse_expr());
              expect(')');
              if (peek(',')) {
                advance();
                continue;
              }
              break;
            }
          }
          expect(']');
          expect(')');
        } else {
          throw ParseError("unknown term '" + head + "'", e.line, e.column);
        }
        e.source = std::string(text_.substr(start, pos_ - start));
        return e;
      }

      std::string_view text_;
      std::size_t      pos_  = 0;
      int              line_ = 1;
      int              col_  = 1;
    };

    GeneratorSet ids(std::vector<std::string> const& names) {
      GeneratorSet out;
      for (auto const& n : names) {
        out.emplace_back(n);
      }
      return make_generator_set(std::move(out));
    }

  }  // namespace

  Expr parse(std::string_view text) {
    return Parser(text).parse_all();
  }

  GElem evaluate(Expr const& e) {
    auto const& ext = g();
    switch (e.kind) {
      case Expr::Kind::zero:
        return g_zero();
      case Expr::Kind::one:
      case Expr::Kind::top:
        return g_one();
      case Expr::Kind::gen:
        return g_gen(e.index, GeneratorId(e.id));
      case Expr::Kind::pair: {
        try {
          return g_lift(PairElem::pair(ids(e.pos), ids(e.neg)));
        } catch (std::invalid_argument const&) {
          throw DomainError("pair components overlap in " + e.source);
        }
      }
      case Expr::Kind::join: {
        GElem acc = evaluate(e.args[0]);
        for (std::size_t k = 1; k < e.args.size(); ++k) {
          acc = ext.join(acc, evaluate(e.args[k]));
        }
        return acc;
      }
      case Expr::Kind::bowtie: {
        GElem a = evaluate(e.args[0]);
        GElem b = evaluate(e.args[1]);
        GElem c = evaluate(e.args[2]);
        try {
          return ext.bowtie(a, b, c);
        } catch (DomainError const& err) {
          throw DomainError(std::string(err.what()) + " in " + e.source);
        }
      }
      case Expr::Kind::red: {
        GElem                               proj = evaluate(e.args[0]);
        std::vector<GExtension::RawTriple> raw;
        for (std::size_t k = 1; k + 2 < e.args.size(); k += 3) {
          raw.push_back({evaluate(e.args[k]),
                         evaluate(e.args[k + 1]),
                         evaluate(e.args[k + 2])});
        }
        try {
          return e.index == 0 ? ext.make_node(proj, raw)
                              : ext.make_node(e.index, proj, raw);
        } catch (ValidationError const& err) {
          throw ValidationError(err.which(),
                                std::string(err.what()) + " in " + e.source);
        }
      }
    }
    throw std::logic_error("evaluate: unknown expression kind");
  }

  GElem eval_text(std::string_view text) {
    return evaluate(parse(text));
  }

  std::string serialize(GElem const& x) {
    return x.text();
  }

  GElem deserialize(std::string_view text) {
    GElem x = eval_text(text);
    if (x.text() != text) {
      throw DomainError("not in canonical form: " + std::string(text)
                        + " (canonical: " + x.text() + ")");
    }
    return x;
  }

}  // namespace slat
