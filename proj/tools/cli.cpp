#include "arithmoduli/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "arithmoduli/criterion.hpp"
#include "arithmoduli/errors.hpp"
#include "arithmoduli/parse.hpp"
#include "arithmoduli/report.hpp"

namespace arithmoduli {

namespace {

struct Options {
  unsigned precision_start = 512;
  unsigned precision_cap = kDefaultPrecisionCap;
  std::string height_bound = "1000000";
  std::string cert_mode = "heuristic";
  std::string fast_paths = "on";
  bool json = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

DecideConfig make_config(const Options& o) {
  DecideConfig c;
  c.relations.precision_start = o.precision_start;
  c.relations.precision_cap = o.precision_cap;
  if (o.precision_start < 64 || o.precision_cap < o.precision_start)
    throw UsageError("--precision-start must be >= 64 and at most --precision-cap");
  try {
    c.relations.height_bound = Integer(o.height_bound);
  } catch (const std::invalid_argument&) {
    throw UsageError("--height-bound must be an integer");
  }
  auto mode = parse_cert_mode(o.cert_mode);
  if (!mode) throw UsageError("--cert-mode must be heuristic or norm-certified");
  c.relations.mode = *mode;
  auto fp = parse_fast_path_mode(o.fast_paths);
  if (!fp) throw UsageError("--fast-paths must be on, off or assert-both");
  c.fast_paths = *fp;
  return c;
}

std::string read_source(const std::string& arg, std::istream& in) {
  if (arg == "-") {
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec)) {
    std::ifstream f(arg);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
  }
  return arg;
}

struct Outcome {
  int code = kExitOk;
  std::string out, err;
};

// Runs one decision and renders it; never throws.
Outcome decide_one(const std::string& text, const DecideConfig& cfg, bool json, bool pretty) {
  Outcome o;
  try {
    IntMatrix a = parse_matrix(text);
    ArithmeticityReport rep = decide_arithmetic(a, cfg);
    o.out = json ? dump(to_json(rep), pretty) + "\n" : describe(rep);
  } catch (const ParseError& e) {
    o.code = kExitUsage;
    o.err = std::string("input: ") + e.what() + "\n";
  } catch (const ValidationError& e) {
    o.code = kExitValidation;
    if (json) {
      Json j;
      j["error"] = "validation";
      j["validation"] = to_json(e.outcome());
      o.out = dump(j, pretty) + "\n";
    }
    o.err = std::string(e.what()) + "\n";
  } catch (const IncompleteDecision& e) {
    o.code = kExitPrecision;
    if (json) o.out = dump(to_json(e.partial()), pretty) + "\n";
    o.err = std::string("precision failure: ") + e.what() + "\n";
  } catch (const PrecisionError& e) {
    o.code = kExitPrecision;
    o.err = std::string("precision failure: ") + e.what() + "\n";
  } catch (const CertificationError& e) {
    o.code = kExitPrecision;
    o.err = std::string("certification failure: ") + e.what() + "\n";
  } catch (const std::invalid_argument& e) {
    o.code = kExitValidation;
    o.err = std::string(e.what()) + "\n";
  } catch (const std::exception& e) {
    o.code = kExitInternal;
    o.err = std::string("internal error: ") + e.what() + "\n";
  }
  return o;
}

int finish(const Outcome& o, std::ostream& out, std::ostream& err) {
  out << o.out;
  err << o.err;
  return o.code;
}

// Maps exceptions from the simpler subcommands onto exit codes.
template <class F>
int guarded(std::ostream& err, F&& f) {
  try {
    return f();
  } catch (const UsageError& e) {
    err << "usage: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ValidationError& e) {
    err << e.what() << "\n";
    return kExitValidation;
  } catch (const PrecisionError& e) {
    err << "precision failure: " << e.what() << "\n";
    return kExitPrecision;
  } catch (const CertificationError& e) {
    err << "certification failure: " << e.what() << "\n";
    return kExitPrecision;
  } catch (const std::invalid_argument& e) {
    err << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

int run_batch(const std::string& path, const Options& opt, std::istream& in, std::ostream& out,
              std::ostream& err) {
  DecideConfig cfg = make_config(opt);
  std::string content = read_source(path, in);
  std::vector<std::pair<std::size_t, std::string>> items;
  std::istringstream ls(content);
  std::string line;
  for (std::size_t ln = 1; std::getline(ls, line); ++ln) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    items.emplace_back(ln, line);
  }
  std::vector<Outcome> results(items.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < items.size(); i = next++)
      results[i] = decide_one(items[i].second, cfg, opt.json, false);
  };
  unsigned nthreads = std::max(1U, std::min<unsigned>(std::thread::hardware_concurrency(),
                                                       static_cast<unsigned>(items.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  int code = kExitOk;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const Outcome& o = results[i];
    const std::size_t ln = items[i].first;
    if (opt.json) {
      if (!o.out.empty()) {
        out << o.out;
      } else {
        Json j;
        j["line"] = ln;
        j["error"] = o.err.substr(0, o.err.size() - (o.err.empty() ? 0 : 1));
        out << dump(j, false) << "\n";
      }
    } else if (o.code == kExitOk) {
      std::string verdict = o.out.substr(9, o.out.find('\n') - 9);
      out << "line " << ln << ": " << verdict << "\n";
    } else {
      out << "line " << ln << ": error (exit " << o.code << ")\n";
    }
    if (!o.err.empty()) err << "line " << ln << ": " << o.err;
    code = std::max(code, o.code);
  }
  return code;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Arithmeticity of Z^n semidirect products with hyperbolic unimodular matrices",
               "arithmoduli"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--precision-start", opt.precision_start, "Initial working precision in bits")
      ->capture_default_str();
  app.add_option("--precision-cap", opt.precision_cap, "Largest working precision in bits")
      ->capture_default_str();
  app.add_option("--height-bound", opt.height_bound, "Relation height the lattice must provably cover")
      ->capture_default_str();
  app.add_option("--cert-mode", opt.cert_mode, "heuristic | norm-certified")->capture_default_str();
  app.add_option("--fast-paths", opt.fast_paths, "on | off | assert-both")->capture_default_str();
  app.add_flag("--json", opt.json, "Emit JSON");

  std::string input_a, input_b;
  auto* decide = app.add_subcommand("decide", "Decide arithmeticity of a matrix");
  decide->add_option("matrix", input_a, "Matrix: inline text, a file, or - for stdin")->required();
  auto* fullirr = app.add_subcommand("fullirr", "Test full irreducibility");
  fullirr->add_option("matrix", input_a)->required();
  auto* charp = app.add_subcommand("charpoly", "Characteristic polynomial (ascending coefficients)");
  charp->add_option("matrix", input_a)->required();
  auto* hyper = app.add_subcommand("hyperbolic", "Count unit-circle roots of a polynomial");
  hyper->add_option("poly", input_a, "Ascending coefficients")->required();
  auto* comm = app.add_subcommand("commensurable", "Fiberwise commensurability of two matrices");
  comm->add_option("a", input_a)->required();
  comm->add_option("b", input_b)->required();
  auto* rel = app.add_subcommand("relations", "Multiplicative relations among the roots of a polynomial");
  rel->add_option("poly", input_a, "Ascending coefficients")->required();
  auto* batch = app.add_subcommand("batch", "Decide one matrix per line, in parallel");
  batch->add_option("file", input_a, "File with one matrix per line, or - for stdin")->required();
  auto* construct = app.add_subcommand("construct", "Build matrices with known answers");
  construct->require_subcommand(1);
  auto* pell = construct->add_subcommand("pell", "Blocks for powers of a fundamental unit");
  long pell_d = 0;
  std::vector<long> pell_exp;
  pell->add_option("--d", pell_d, "Radicand d > 1")->required();
  pell->add_option("--exp", pell_exp, "Comma-separated nonzero exponents")->required()->delimiter(',');

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage: " << e.what() << "\n" << "run with --help for usage\n";
    return kExitUsage;
  }

  if (decide->parsed()) {
    return guarded(err, [&] {
      DecideConfig cfg = make_config(opt);
      return finish(decide_one(read_source(input_a, in), cfg, opt.json, true), out, err);
    });
  }
  if (batch->parsed()) return guarded(err, [&] { return run_batch(input_a, opt, in, out, err); });
  if (fullirr->parsed()) {
    return guarded(err, [&] {
      FullIrreducibility f = fully_irreducible(parse_matrix(read_source(input_a, in)));
      if (opt.json) {
        out << dump(to_json(f)) << "\n";
      } else {
        out << "fully irreducible: " << (f.fully_irreducible ? "yes" : "no") << "\n";
        out << "charpoly irreducible: " << (f.charpoly_irreducible ? "yes" : "no") << "\n";
        if (f.witness_k)
          out << "witness: k=" << *f.witness_k << ", factor " << f.witness_factor->to_string() << "\n";
      }
      return int(kExitOk);
    });
  }
  if (charp->parsed()) {
    return guarded(err, [&] {
      IntPoly p = charpoly(parse_matrix(read_source(input_a, in)));
      if (opt.json)
        out << dump(to_json(p), false) << "\n";
      else
        out << p.to_string() << "\n";
      return int(kExitOk);
    });
  }
  if (hyper->parsed()) {
    return guarded(err, [&] {
      IntPoly p = parse_poly(read_source(input_a, in));
      unsigned c = unit_circle_root_count(p);
      if (opt.json) {
        Json j;
        j["poly"] = to_json(p);
        j["unit_circle_roots"] = c;
        j["hyperbolic"] = c == 0;
        out << dump(j) << "\n";
      } else {
        out << "unit circle roots: " << c << "\n" << "hyperbolic: " << (c == 0 ? "yes" : "no") << "\n";
      }
      return int(kExitOk);
    });
  }
  if (comm->parsed()) {
    return guarded(err, [&] {
      bool c = fiberwise_commensurable(parse_matrix(read_source(input_a, in)),
                                       parse_matrix(read_source(input_b, in)));
      if (opt.json)
        out << dump(Json{{"commensurable", c}}) << "\n";
      else
        out << "commensurable: " << (c ? "yes" : "no") << "\n";
      return int(kExitOk);
    });
  }
  if (rel->parsed()) {
    return guarded(err, [&] {
      DecideConfig cfg = make_config(opt);
      IntPoly p = parse_poly(read_source(input_a, in));
      auto units = units_of(p, cfg.root_precision, cfg.relations.precision_cap);
      RelationLattice r = relation_lattice(units, cfg.relations);
      if (opt.json) {
        Json j = to_json(r);
        Json roots = Json::array();
        for (const auto& u : units) roots.push_back(to_json(u.box));
        j["roots"] = std::move(roots);
        out << dump(j) << "\n";
      } else {
        out << "units: " << units.size() << "\n";
        out << "relation rank: " << r.lattice.rank() << "\n";
        out << "multiplicative rank: " << units.size() - r.lattice.rank() << "\n";
        for (const auto& row : r.lattice.basis()) {
          out << " ";
          for (const auto& x : row) out << " " << x.get_str();
          out << "\n";
        }
      }
      return int(kExitOk);
    });
  }
  if (pell->parsed()) {
    return guarded(err, [&] {
      IntMatrix m = construct_from_unit_powers(pell_d, pell_exp);
      if (opt.json) {
        out << dump(to_json(m), false) << "\n";
      } else {
        for (std::size_t i = 0; i < m.dim(); ++i) {
          for (std::size_t j = 0; j < m.dim(); ++j) out << (j ? " " : "") << m(i, j).get_str();
          out << "\n";
        }
      }
      return int(kExitOk);
    });
  }
  err << "no subcommand\n";
  return kExitUsage;
}

}  // namespace arithmoduli
