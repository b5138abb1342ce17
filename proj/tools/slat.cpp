// slat: command-line front end. Exit codes: 0 pass/true, 1 fail/false,
// 2 usage or format error.

#include <CLI11.hpp>

#include <array>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "slat/conlat.hpp"
#include "slat/expr.hpp"
#include "slat/gomega.hpp"
#include "slat/harness.hpp"
#include "slat/suites.hpp"

using namespace slat;

namespace {

  // Raised for bad arguments detected after CLI11 has parsed the command line.
  struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
  };

  int to_int(std::string const& s, char const* what) {
    try {
      std::size_t used = 0;
      int const   v    = std::stoi(s, &used);
      if (used != s.size()) {
        throw std::invalid_argument(s);
      }
      return v;
    } catch (std::exception const&) {
      throw UsageError(std::string("expected an integer for ") + what + ", got '" + s + "'");
    }
  }

  // "{a,b}", "a,b", "{}" or "".
  NameSet to_set(std::string s) {
    if (!s.empty() && s.front() == '{') {
      if (s.back() != '}') {
        throw UsageError("unbalanced braces in set '" + s + "'");
      }
      s = s.substr(1, s.size() - 2);
    }
    std::vector<std::string> out;
    std::stringstream        ss(s);
    std::string              item;
    while (std::getline(ss, item, ',')) {
      auto const b = item.find_first_not_of(" \t");
      auto const e = item.find_last_not_of(" \t");
      if (b == std::string::npos) {
        continue;
      }
      out.push_back(item.substr(b, e - b + 1));
    }
    return make_name_set(std::move(out));
  }

  std::string gens_text(GeneratorSet const& s) {
    std::string out = "{";
    for (std::size_t k = 0; k < s.size(); ++k) {
      out += (k ? "," : "") + s[k].name;
    }
    return out + "}";
  }

  int print_bool(bool b) {
    std::cout << (b ? "true" : "false") << '\n';
    return b ? 0 : 1;
  }

  int print_check(CheckResult const& r) {
    std::cout << to_string(r.verdict) << '\n';
    for (auto const& p : r.failed_premises) {
      std::cout << "premise " << p << '\n';
    }
    return r.verdict == Verdict::holds ? 0 : 1;
  }

  ////////////////////////////////////////////////////////////////////////////
  // con FILE ...
  ////////////////////////////////////////////////////////////////////////////

  int elem(FinAlgebra const& L, std::string const& s) {
    int const v = to_int(s, "an element");
    if (v < 0 || v >= L.size()) {
      throw UsageError("element " + s + " outside 0.." + std::to_string(L.size() - 1));
    }
    return v;
  }

  void need(std::vector<std::string> const& args, std::size_t n, char const* usage) {
    if (args.size() != n) {
      throw UsageError(std::string("usage: ") + usage);
    }
  }

  // A homomorphism Conc L -> T given by a target join table and images of
  // principal congruences:
  //   target N / join <N*N entries> / zero Z / mu X Y V
  SemHom load_mu_map(std::string const& path, ConcResult const& con, int k) {
    std::ifstream in(path);
    if (!in) {
      throw DomainError("cannot open " + path);
    }
    SemilatticeTable                  T;
    std::vector<std::array<int, 3>>   given;
    std::string                       line;
    int                               lineno = 0;
    auto                              bad    = [&](std::string const& m) {
      return DomainError(path + ": line " + std::to_string(lineno) + ": " + m);
    };
    while (std::getline(in, line)) {
      ++lineno;
      if (auto h = line.find('#'); h != std::string::npos) {
        line.erase(h);
      }
      std::istringstream ss(line);
      std::string        key;
      if (!(ss >> key)) {
        continue;
      }
      if (key == "target") {
        if (!(ss >> T.n) || T.n < 1) {
          throw bad("expected a positive size");
        }
      } else if (key == "join") {
        int v;
        while (ss >> v) {
          T.join_table.push_back(v);
        }
      } else if (key == "zero") {
        if (!(ss >> T.zero)) {
          throw bad("expected an element");
        }
      } else if (key == "mu") {
        std::array<int, 3> m{};
        if (!(ss >> m[0] >> m[1] >> m[2])) {
          throw bad("expected: mu X Y V");
        }
        if (m[0] < 0 || m[0] >= k || m[1] < 0 || m[1] >= k || m[2] < 0 || m[2] >= T.n) {
          throw bad("element out of range");
        }
        given.push_back(m);
      } else {
        throw bad("unknown keyword '" + key + "'");
      }
    }
    T.check();
    SemHom mu{con.table, T, std::vector<int>(static_cast<std::size_t>(con.table.n), -1)};
    std::vector<int> principal_image(static_cast<std::size_t>(con.table.n), -1);
    for (auto const& [x, y, v] : given) {
      int const c = con.principal[static_cast<std::size_t>(x * k + y)];
      int&      slot = principal_image[static_cast<std::size_t>(c)];
      if (slot >= 0 && slot != v) {
        throw DomainError("conflicting images for " + con.elements[static_cast<std::size_t>(c)].to_string());
      }
      slot = v;
    }
    for (int c = 0; c < con.table.n; ++c) {
      int acc = T.zero;
      int gen = con.table.zero;
      for (int d = 0; d < con.table.n; ++d) {
        int const img = principal_image[static_cast<std::size_t>(d)];
        if (img >= 0 && con.table.leq(d, c)) {
          acc = T.join(acc, img);
          gen = con.table.join(gen, d);
        }
      }
      if (gen != c) {
        throw DomainError("the given congruences do not generate "
                          + con.elements[static_cast<std::size_t>(c)].to_string());
      }
      mu.image[static_cast<std::size_t>(c)] = acc;
    }
    for (int c = 0; c < con.table.n; ++c) {
      int const img = principal_image[static_cast<std::size_t>(c)];
      if (img >= 0 && img != mu(c)) {
        throw DomainError("mu is not join-preserving at "
                          + con.elements[static_cast<std::size_t>(c)].to_string());
      }
    }
    if (!mu.is_homomorphism()) {
      throw DomainError("mu is not a (v,0)-homomorphism");
    }
    return mu;
  }

  int cmd_con(std::string const& file, std::string const& action,
              std::vector<std::string> const& args) {
    FinAlgebra const L = FinAlgebra::load(file);
    int const        k = L.size();
    if (action == "conc") {
      need(args, 0, "con FILE conc");
      ConcResult const c = conc(L);
      std::cout << "size " << c.table.n << '\n';
      for (int i = 0; i < c.table.n; ++i) {
        std::cout << "element " << i << ' ' << c.elements[static_cast<std::size_t>(i)].to_string() << '\n';
      }
      for (int i = 0; i < c.table.n; ++i) {
        std::cout << "join";
        for (int j = 0; j < c.table.n; ++j) {
          std::cout << ' ' << c.table.join(i, j);
        }
        std::cout << '\n';
      }
      std::cout << "distributive " << (is_distributive(c.table) ? "true" : "false") << '\n';
      return 0;
    }
    if (action == "theta" || action == "theta+") {
      need(args, 2, "con FILE theta X Y");
      int const x = elem(L, args[0]), y = elem(L, args[1]);
      std::cout << (action == "theta" ? theta(L, x, y) : theta_plus(L, x, y)).to_string() << '\n';
      return 0;
    }
    if (action == "erosion") {
      if (args.size() < 4) {
        throw UsageError("usage: con FILE erosion X0 X1 Z0 Z1 [Z2 ...]");
      }
      std::vector<int> z;
      for (std::size_t i = 2; i < args.size(); ++i) {
        z.push_back(elem(L, args[i]));
      }
      ErosionReport const r = erosion(L, elem(L, args[0]), elem(L, args[1]), z);
      for (std::size_t i = 0; i < r.v.size(); ++i) {
        std::cout << "v" << i << ' ' << r.v[i].to_string() << '\n';
      }
      for (int j = 0; j < 2; ++j) {
        std::cout << "u" << j << ' ' << r.u[j].to_string() << '\n';
        std::cout << "a" << j << ' ' << r.a[j].to_string() << '\n';
      }
      std::cout << "joins-congruent " << (r.joins_congruent ? "true" : "false") << '\n';
      for (int j = 0; j < 2; ++j) {
        std::cout << "u" << j << "-below " << (r.u_below[j] ? "true" : "false") << '\n';
        std::cout << "u" << j << "-in-con-c " << (r.u_in_con_c[j] ? "true" : "false") << '\n';
      }
      return r.all_hold() ? 0 : 1;
    }
    if (action == "wd") {
      need(args, 1, "con FILE wd MUFILE");
      ConcResult const c  = conc(L);
      SemHom const     mu = load_mu_map(args[0], c, k);
      bool             all = true;
      for (int x = 0; x < c.table.n; ++x) {
        bool const w = weakly_distributive_at(mu, x);
        all          = all && w;
        std::cout << "wd " << c.elements[static_cast<std::size_t>(x)].to_string() << ' '
                  << (w ? "true" : "false") << '\n';
      }
      std::cout << "weakly-distributive " << (all ? "true" : "false") << '\n';
      return all ? 0 : 1;
    }
    if (action == "perm") {
      need(args, 1, "con FILE perm M");
      int const m = to_int(args[0], "M");
      if (m < 1) {
        throw UsageError("M must be positive");
      }
      return print_bool(permutability(L, m));
    }
    if (action == "quotient") {
      need(args, 2, "con FILE quotient X Y");
      Quotient const q = quotient(L, theta(L, elem(L, args[0]), elem(L, args[1])));
      std::cout << q.algebra.to_text();
      std::cout << "# projection";
      for (int p : q.projection) {
        std::cout << ' ' << p;
      }
      std::cout << '\n';
      return 0;
    }
    if (action == "compat") {
      need(args, 0, "con FILE compat");
      return print_bool(check_congruence_compatible(L));
    }
    if (action == "distributive") {
      need(args, 0, "con FILE distributive");
      return print_bool(is_distributive(conc(L).table));
    }
    throw UsageError("unknown con action '" + action
                     + "' (conc, theta, theta+, erosion, wd, perm, quotient, compat, distributive)");
  }

  ////////////////////////////////////////////////////////////////////////////
  // descent FILE ...
  ////////////////////////////////////////////////////////////////////////////

  int cmd_descent(std::string const& file, std::string const& action,
                  std::vector<std::string> const& args) {
    DescentInstance const D = DescentInstance::load(file);
    if (action == "validate") {
      need(args, 0, "descent FILE validate");
      InstanceReport const rep = validate_instance(D);
      for (auto const& item : rep.items) {
        std::cout << (item.ok ? "ok" : (item.informational ? "note" : "FAIL")) << ' ' << item.name
                  << '\n';
        for (auto const& d : item.details) {
          std::cout << "  " << d << '\n';
        }
      }
      std::cout << "valid " << (rep.ok() ? "true" : "false") << '\n';
      return rep.ok() ? 0 : 1;
    }
    if (action == "er") {
      need(args, 4, "descent FILE er R K XSET YSET");
      return print_bool(check_Er(D, to_int(args[0], "R"), to_int(args[1], "K"), to_set(args[2]),
                                 to_set(args[3])));
    }
    if (action == "p") {
      need(args, 2, "descent FILE p K L");
      PReport const p = check_P(D, to_int(args[0], "K"), to_int(args[1], "L"));
      std::cout << "instances " << p.instances << '\n';
      for (auto const& f : p.failures) {
        std::cout << "failure r=" << f.r << " X=" << set_text(f.X) << " Y=" << set_text(f.Y)
                  << '\n';
      }
      std::cout << (p.holds() ? "holds" : "fails") << '\n';
      return p.holds() ? 0 : 1;
    }
    if (action == "phi") {
      need(args, 1, "descent FILE phi XSET");
      std::cout << set_text(phi_from_instance(D, to_set(args[0]))) << '\n';
      return 0;
    }
    throw UsageError("unknown descent action '" + action + "' (validate, er, p, phi)");
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"slat: free distributive extensions, G(Omega) and congruences of finite algebras"};
  app.require_subcommand(1);

  std::string e1, e2;
  auto*       eval = app.add_subcommand("eval", "Canonical form of an expression");
  eval->add_option("EXPR", e1)->required();
  auto* leq = app.add_subcommand("leq", "Is E1 <= E2");
  leq->add_option("E1", e1)->required();
  leq->add_option("E2", e2)->required();
  auto* join = app.add_subcommand("join", "Canonical form of E1 v E2");
  join->add_option("E1", e1)->required();
  join->add_option("E2", e2)->required();
  auto* rank = app.add_subcommand("rank", "Rank of an expression");
  rank->add_option("EXPR", e1)->required();
  auto* supp = app.add_subcommand("supp", "Support of an expression");
  supp->add_option("EXPR", e1)->required();

  auto*       check = app.add_subcommand("check", "Check one instance of a lemma");
  std::string alpha, beta, delta, xs, ys, zs;
  int         ci = 0, cj = 0;
  check->require_subcommand(1);
  auto* evap = check->add_subcommand("evaporation", "z <= x v y with the evaporation premises");
  evap->add_option("--alpha", alpha)->required();
  evap->add_option("--beta", beta)->required();
  evap->add_option("--delta", delta)->required();
  evap->add_option("--i", ci)->required()->check(CLI::Range(0, 1));
  evap->add_option("--j", cj)->required()->check(CLI::Range(0, 1));
  evap->add_option("--x", xs)->required();
  evap->add_option("--y", ys)->required();
  evap->add_option("--z", zs)->required();
  auto* l44 = check->add_subcommand("lemma44", "x <= y v a_i^alpha implies x <= y");
  l44->add_option("--alpha", alpha)->required();
  l44->add_option("--i", ci)->required()->check(CLI::Range(0, 1));
  l44->add_option("--x", xs)->required();
  l44->add_option("--y", ys)->required();

  std::string              file, action;
  std::vector<std::string> rest;
  auto* con = app.add_subcommand("con", "Congruences of a finite algebra file");
  con->add_option("FILE", file)->required();
  con->add_option("ACTION", action)->required();
  con->add_option("ARGS", rest);
  auto* freeset = app.add_subcommand("freeset", "First free (n+1)-subset of a Phi file");
  freeset->add_option("FILE", file)->required();
  auto* descent = app.add_subcommand("descent", "Descent instance checks");
  descent->add_option("FILE", file)->required();
  descent->add_option("ACTION", action)->required();
  descent->add_option("ARGS", rest);

  SuiteConfig cfg;
  std::string only, data;
  bool        list = false;
  auto*       suite = app.add_subcommand("suite", "Run property suites");
  suite->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  suite->add_option("--cases", cfg.cases, "Cases per randomized suite (0: suite default)")
      ->check(CLI::NonNegativeNumber);
  suite->add_option("--max-rank", cfg.max_rank)->capture_default_str()->check(CLI::Range(0, 4));
  suite->add_option("--omega-size", cfg.omega_size)->capture_default_str()->check(CLI::Range(2, 10));
  suite->add_option("--only", only, "Run a single suite");
  suite->add_option("--data", data, "Data directory (corpus/, fixtures/)");
  suite->add_flag("--list", list, "List suite names");

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const& e) {
    return app.exit(e);
  } catch (CLI::CallForAllHelp const& e) {
    return app.exit(e);
  } catch (CLI::ParseError const& e) {
    app.exit(e);
    return 2;
  }

  auto const start = std::chrono::steady_clock::now();
  int        code  = 0;
  try {
    if (*eval) {
      std::cout << serialize(eval_text(e1)) << '\n';
    } else if (*leq) {
      code = print_bool(g().leq(eval_text(e1), eval_text(e2)));
    } else if (*join) {
      std::cout << serialize(g().join(eval_text(e1), eval_text(e2))) << '\n';
    } else if (*rank) {
      std::cout << eval_text(e1).rank() << '\n';
    } else if (*supp) {
      std::cout << gens_text(support(eval_text(e1))) << '\n';
    } else if (*evap) {
      for (auto const* id : {&alpha, &beta, &delta}) {
        if (!is_valid_identifier(*id)) {
          throw UsageError("invalid generator name '" + *id + "'");
        }
      }
      code = print_check(check_evaporation(GeneratorId(alpha), GeneratorId(beta),
                                           GeneratorId(delta), ci, cj, eval_text(xs),
                                           eval_text(ys), eval_text(zs)));
    } else if (*l44) {
      if (!is_valid_identifier(alpha)) {
        throw UsageError("invalid generator name '" + alpha + "'");
      }
      code = print_check(check_lemma_xleqy(GeneratorId(alpha), ci, eval_text(xs), eval_text(ys)));
    } else if (*con) {
      code = cmd_con(file, action, rest);
    } else if (*freeset) {
      auto const u = find_free(PhiMap::load(file));
      std::cout << (u ? set_text(*u) : std::string("none")) << '\n';
      code = u ? 0 : 1;
    } else if (*descent) {
      code = cmd_descent(file, action, rest);
    } else if (*suite) {
      if (list) {
        for (auto const& n : suite_names()) {
          std::cout << n << '\n';
        }
        return 0;
      }
      cfg.data_dir = data;
      std::vector<std::string> names = suite_names();
      if (!only.empty()) {
        if (!is_suite(only)) {
          throw UsageError("unknown suite '" + only + "'");
        }
        names = {only};
      }
      std::cout << "seed " << cfg.seed << '\n';
      for (auto const& n : names) {
        auto const  t0 = std::chrono::steady_clock::now();
        SuiteResult r  = run_suite(n, cfg);
        for (auto const& l : r.lines) {
          std::cout << l << '\n';
        }
        std::cout << "suite " << n << ' ' << (r.pass ? "PASS" : "FAIL") << '\n' << std::flush;
        std::cerr << "time " << n << ' '
                  << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()
                  << "s\n";
        code = r.pass ? code : 1;
      }
    }
  } catch (UsageError const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (ParseError const& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (DomainError const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  std::cerr << "wall " << std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()
            << "s\n";
  return code;
}
