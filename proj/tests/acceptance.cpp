// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Usage: acceptance [SEED]

#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "slat/suites.hpp"

using namespace slat;

namespace {

  struct Run {
    SuiteResult                        result;
    std::map<std::string, std::string> kv;
    double                             seconds = 0;

    long long num(std::string const& key) const {
      auto it = kv.find(result.name + "." + key);
      return it == kv.end() ? -1 : std::stoll(it->second);
    }
    std::string str(std::string const& key) const {
      auto it = kv.find(result.name + "." + key);
      return it == kv.end() ? std::string() : it->second;
    }
  };

  Run run(std::string const& name, SuiteConfig const& cfg) {
    auto const t0 = std::chrono::steady_clock::now();
    Run        r;
    r.result  = run_suite(name, cfg);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    for (auto const& line : r.result.lines) {
      auto const sp = line.find(' ');
      if (sp != std::string::npos) {
        r.kv.emplace(line.substr(0, sp), line.substr(sp + 1));
      }
    }
    return r;
  }

  // Runs a shell command, returning its stdout and exit status.
  std::pair<std::string, int> capture(std::string const& cmd) {
    std::string out;
    FILE*       p = popen(cmd.c_str(), "r");
    if (!p) {
      return {out, -1};
    }
    std::array<char, 4096> buf;
    std::size_t            n;
    while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) {
      out.append(buf.data(), n);
    }
    int const status = pclose(p);
    return {out, status};
  }

  int failures = 0;

  void report(int k, std::string const& what, bool ok, std::string const& detail) {
    failures += ok ? 0 : 1;
    std::cout << "criterion " << k << ' ' << (ok ? "PASS" : "FAIL") << ' ' << what << ": "
              << detail << std::endl;
  }

  std::string fmt_time(double s) {
    std::ostringstream o;
    o.precision(3);
    o << s << "s";
    return o.str();
  }

  void dump_failures(Run const& r) {
    if (r.result.pass) {
      return;
    }
    for (auto const& line : r.result.lines) {
      if (line.find(".fail ") != std::string::npos || line.find(".unmet ") != std::string::npos
          || line.find(".error ") != std::string::npos) {
        std::cout << "  " << line << '\n';
      }
    }
  }

}  // namespace

int main(int argc, char** argv) {
  SuiteConfig cfg;
  if (argc > 1) {
    cfg.seed = std::strtoull(argv[1], nullptr, 10);
  }
  std::cout << "seed " << cfg.seed << std::endl;

  {
    Run const r  = run("relations", cfg);
    bool const ok = r.result.pass && r.num("cases") >= 1000 && r.num("failures") == 0
                    && r.seconds <= 60;
    report(1, "defining relations", ok,
           std::to_string(r.num("cases")) + " triples, " + std::to_string(r.num("failures"))
               + " failures, " + fmt_time(r.seconds) + " (limit 60s)");
    dump_failures(r);
  }
  {
    Run const r  = run("lub", cfg);
    bool const ok = r.result.pass && r.num("cases") >= 1000 && r.num("failures") == 0;
    report(2, "least upper bound and semilattice laws", ok,
           std::to_string(r.num("checks")) + " checks, " + std::to_string(r.num("failures"))
               + " failures");
    dump_failures(r);
  }
  {
    Run const r  = run("confluence", cfg);
    bool const ok = r.result.pass && r.num("cases") >= 100 && r.num("orders") >= 10
                    && r.num("failures") == 0;
    report(3, "confluence", ok,
           std::to_string(r.num("cases")) + " joins x " + std::to_string(r.num("orders"))
               + " orders, " + std::to_string(r.num("failures")) + " divergent");
    dump_failures(r);
  }
  {
    Run const r  = run("lemma44", cfg);
    bool const ok = r.result.pass && r.num("exhaustive.instances") > 0
                    && r.num("random.premise_satisfied") >= 200 && r.num("substantive") >= 50
                    && r.num("counterexamples") == 0;
    report(4, "x <= y v a_i^alpha sweep", ok,
           std::to_string(r.num("exhaustive.instances")) + " exhaustive + "
               + std::to_string(r.num("random.premise_satisfied")) + " random instances, "
               + std::to_string(r.num("substantive")) + " substantive, "
               + std::to_string(r.num("counterexamples")) + " counterexamples");
    dump_failures(r);
  }
  {
    Run const r  = run("evaporation", cfg);
    bool const ok = r.result.pass && r.num("nonzero_z") == 0 && r.num("counterexamples") == 0
                    && r.num("substantive") >= 1 && r.seconds <= 300;
    report(5, "evaporation sweep", ok,
           std::to_string(r.num("pairs_covered")) + " (x,y) pairs, "
               + std::to_string(r.num("substantive")) + " substantive, nonzero z "
               + std::to_string(r.num("nonzero_z")) + ", " + fmt_time(r.seconds)
               + " (limit 300s)");
    dump_failures(r);
  }
  {
    Run const r  = run("erosion", cfg);
    bool const ok = r.result.pass && r.num("lattices") >= 20 && r.num("failures") == 0
                    && r.str("chain3.u0") == "{{0,1},{2}}" && r.str("chain3.u1") == "{{0},{1,2}}";
    report(6, "erosion sweep", ok,
           std::to_string(r.num("lattices")) + " lattices, " + std::to_string(r.num("instances"))
               + " instances, " + std::to_string(r.num("failures")) + " failures, 3-chain u0 "
               + r.str("chain3.u0") + " u1 " + r.str("chain3.u1"));
    dump_failures(r);
  }
  {
    Run const r  = run("conc", cfg);
    bool const ok = r.result.pass && r.num("lattices") >= 20
                    && r.num("distributive") == r.num("lattices");
    report(7, "Conc L distributive", ok,
           std::to_string(r.num("distributive")) + "/" + std::to_string(r.num("lattices"))
               + " corpus lattices");
    dump_failures(r);
  }
  {
    Run const r  = run("functor", cfg);
    bool const ok = r.result.pass && r.num("cases") >= 500 && r.num("failures") == 0;
    report(8, "functoriality", ok,
           std::to_string(r.num("cases")) + " (f, x) samples, " + std::to_string(r.num("failures"))
               + " failures");
    dump_failures(r);
  }
  {
    Run const r  = run("oracles", cfg);
    bool const ok = r.result.pass && r.num("theta.pairs") > 0 && r.num("theta.mismatches") == 0
                    && r.num("wd.homomorphisms") > 0 && r.num("wd.mismatches") == 0;
    report(9, "oracles", ok,
           std::to_string(r.num("theta.pairs")) + " theta pairs, "
               + std::to_string(r.num("wd.homomorphisms")) + " homomorphisms, "
               + std::to_string(r.num("theta.mismatches") + r.num("wd.mismatches"))
               + " mismatches");
    dump_failures(r);
  }
  {
    Run const r  = run("kuratowski", cfg);
    bool const ok = r.result.pass && r.num("mismatches") == 0
                    && r.str("fixture.no_free_pair") == "none"
                    && r.str("fixture.singleton") == "{0,1}";
    report(10, "Kuratowski free sets", ok,
           std::to_string(r.num("maps")) + " maps, " + std::to_string(r.num("mismatches"))
               + " mismatches, fixtures " + r.str("fixture.no_free_pair") + " and "
               + r.str("fixture.singleton"));
    dump_failures(r);
  }
  {
    Run const       r  = run("mutation", cfg);
    long long const m  = r.num("mutations");
    bool const      ok = r.result.pass && m >= 10 && r.num("validate_detected") == m
                    && r.num("er_detected") == m && r.num("p_detected") == m;
    report(11, "mutation detection", ok,
           "validate " + std::to_string(r.num("validate_detected")) + "/" + std::to_string(m)
               + ", E_r " + std::to_string(r.num("er_detected")) + "/" + std::to_string(m)
               + ", P " + std::to_string(r.num("p_detected")) + "/" + std::to_string(m));
    dump_failures(r);
  }
  {
    Run const r     = run("roundtrip", cfg);
    bool      ok    = r.result.pass && r.num("cases") >= 1000 && r.num("failures") == 0;
    std::string const cmd = std::string("\"") + SLAT_CLI + "\" suite --seed "
                            + std::to_string(cfg.seed) + " 2>/dev/null";
    auto const [out1, st1] = capture(cmd);
    auto const [out2, st2] = capture(cmd);
    bool const same        = !out1.empty() && out1 == out2;
    ok                     = ok && same && st1 == 0 && st2 == 0;
    report(12, "round trip and CLI determinism", ok,
           std::to_string(r.num("cases")) + " round trips, " + std::to_string(r.num("failures"))
               + " failures; two CLI suite runs " + (same ? "byte-identical" : "differ") + " ("
               + std::to_string(out1.size()) + " bytes, exit " + std::to_string(st1) + "/"
               + std::to_string(st2) + ")");
    dump_failures(r);
  }

  std::cout << (failures == 0 ? "all criteria PASS" : std::to_string(failures) + " criteria FAIL")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
