// Command-line front end: Khovanov homology, Jones polynomials, flow-category
// face verification, skein splits, and Moore decompositions of thin tables.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "khoflow/exactness.hpp"
#include "khoflow/khcomplex.hpp"
#include "khoflow/moduli.hpp"
#include "khoflow/table_io.hpp"

using namespace khoflow;

namespace {

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream f(path);
  if (!f) throw KhError("cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct Options {
  std::string input;
  bool json = false;
  bool reduced = false;
  bool allow_empty = false;
  int basepoint = -1;
  std::string ring = "Z";
  std::uint64_t gauge = 0;
  bool gauged = false;
  int crossing = -1;
  std::optional<int> sigma;
};

RingSpec parse_ring(const std::string& r) {
  if (r == "Z") return RingSpec::integers();
  if (r == "Q") return RingSpec::rationals();
  if (r.size() > 1 && (r[0] == 'F' || r[0] == 'f')) {
    std::int64_t p = std::stoll(r.substr(1));
    if (p < 2) throw CLI::ValidationError("--ring", "F_p needs a prime p");
    for (std::int64_t d = 2; d * d <= p; ++d)
      if (p % d == 0) throw CLI::ValidationError("--ring", "F_p needs a prime p");
    return RingSpec::field(p);
  }
  throw CLI::ValidationError("--ring", "expected Z, Q or F<p>");
}

LinkDiagram load_diagram(const Options& opt) {
  std::string text = read_input(opt.input);
  PdCode code;
  try {
    code = parse_pd(text);
  } catch (const KhError& e) {
    // find the offending line
    std::stringstream lines(text);
    std::string line;
    int no = 0, bad = -1;
    std::string partial;
    while (std::getline(lines, line)) {
      ++no;
      try {
        parse_pd(line);
      } catch (const KhError&) {
        if (bad < 0) bad = no;
      }
    }
    std::ostringstream os;
    os << opt.input << (bad > 0 ? ":" + std::to_string(bad) : "") << ": " << e.what();
    throw KhError(os.str());
  }
  if (code.size() == 0 && code.unknot_components == 0 && !opt.allow_empty)
    throw KhError("empty diagram (pass --allow-empty to accept)");
  return orient_and_sign(code);
}

KhComplex load_complex(const Options& opt) {
  auto dia = load_diagram(opt);
  auto s = standard_sign(dia.num_crossings());
  if (opt.gauged) s = s.gauged_random(opt.gauge);
  return build_complex(std::move(dia), s);
}

BigradedTable compute_table(const Options& opt, const KhComplex& cx) {
  RingSpec ring = parse_ring(opt.ring);
  if (!opt.reduced) return cx.homology_table(ring);
  int bp = opt.basepoint;
  if (bp < 0) bp = cx.diagram().edge_label.empty() ? -1 : cx.diagram().edge_label[0];
  if (bp < 0) throw KhError("reduced homology needs a basepoint edge");
  return reduced_homology_table(cx, bp, ring);
}

int cmd_homology(const Options& opt) {
  auto cx = load_complex(opt);
  auto table = compute_table(opt, cx);
  if (opt.json) {
    auto j = table_to_json(table);
    j["reduced"] = opt.reduced;
    j["ring"] = opt.ring;
    j["n_plus"] = cx.diagram().n_plus;
    j["n_minus"] = cx.diagram().n_minus;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << (opt.reduced ? "reduced " : "") << "Khovanov homology over " << opt.ring << " ("
              << cx.diagram().num_crossings() << " crossings, n+=" << cx.diagram().n_plus
              << ", n-=" << cx.diagram().n_minus << ")\n";
    std::cout << table_to_text(table);
  }
  return 0;
}

int cmd_jones(const Options& opt) {
  auto cx = load_complex(opt);
  auto chi = cx.graded_euler();
  auto v = cx.jones_polynomial();
  if (opt.json) {
    nlohmann::json j;
    j["euler"] = chi.str();
    j["jones"] = v.str();
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "graded Euler characteristic: " << chi.str() << "\n";
    std::cout << "V(L) = " << v.str() << "\n";
  }
  return 0;
}

int cmd_verify(const Options& opt) {
  auto dia = load_diagram(opt);
  auto sw = sweep_faces(dia);
  if (opt.json) {
    std::cout << sweep_to_json(sw).dump(2) << "\n";
  } else {
    int ind2 = 0, ind3 = 0;
    for (auto& f : sw.faces) (f.index == 2 ? ind2 : ind3)++;
    std::cout << "checked " << ind2 << " index-2 and " << ind3
              << " index-3 decorated faces; ladybug faces: " << sw.ladybug_faces << "\n";
    std::cout << (sw.all_ok ? "all boundary checks passed (both conventions)"
                            : "BOUNDARY CHECKS FAILED")
              << "\n";
  }
  return sw.all_ok ? 0 : 1;
}

int cmd_skein(const Options& opt) {
  auto cx = load_complex(opt);
  if (opt.crossing < 0 || opt.crossing >= cx.crossings())
    throw KhError("--crossing out of range");
  auto sk = skein_split(cx, opt.crossing);
  auto ring = RingSpec::integers();
  auto total = cx.homology_table(ring);
  auto l0 = build_complex(sk.l0).homology_table(ring);
  auto l1 = build_complex(sk.l1).homology_table(ring);
  bool exact = true;
  std::ostringstream notes;
  auto [qlo, qhi] = cx.quantum_range();
  for (int q = qlo; q <= qhi; ++q) {
    auto rep = les_rank_exact(cx.block(q, sk.sub), cx.block(q), cx.block(q, sk.quot));
    if (!rep.exact) {
      exact = false;
      notes << "q=" << q << ": " << rep.detail << "\n";
    }
  }
  if (opt.json) {
    nlohmann::json j;
    j["crossing"] = opt.crossing;
    j["kh"] = table_to_json(total);
    j["kh_l0"] = table_to_json(l0);
    j["kh_l1"] = table_to_json(l1);
    j["shifts"] = {{"sub_h", sk.dh_sub},
                   {"sub_q", sk.dq_sub},
                   {"quot_h", sk.dh_quot},
                   {"quot_q", sk.dq_quot}};
    j["les_exact"] = exact;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "Kh(L):\n" << table_to_text(total);
    std::cout << "Kh(L0) (quotient side, shifts h+" << sk.dh_quot << " q+" << sk.dq_quot
              << "):\n"
              << table_to_text(l0);
    std::cout << "Kh(L1) (subcomplex side, shifts h+" << sk.dh_sub << " q+" << sk.dq_sub
              << "):\n"
              << table_to_text(l1);
    std::cout << "long exact sequence: " << (exact ? "rank-exact" : "NOT EXACT") << "\n"
              << notes.str();
  }
  return exact ? 0 : 1;
}

int cmd_moore(const Options& opt) {
  auto cx = load_complex(opt);
  auto table = compute_table(opt, cx);
  try {
    auto w = moore_decomposition(table, opt.sigma);
    if (opt.json) {
      nlohmann::json j;
      j["sigma"] = w.sigma;
      j["wedge"] = w.str();
      nlohmann::json arr = nlohmann::json::array();
      for (auto& s : w.summands)
        arr.push_back({{"suspension", s.suspension}, {"quantum", s.quantum}, {"torsion", s.torsion}});
      j["summands"] = arr;
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "sigma = " << w.sigma << "\n" << w.str() << "\n";
    }
  } catch (const NotThin& e) {
    std::cerr << "not thin: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Khovanov homology and flow-category verification for planar diagram codes"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub, bool with_input = true) {
    if (with_input)
      sub->add_option("input", opt.input, "PD file, or - for stdin")->required();
    sub->add_flag("--json", opt.json, "machine-readable output");
    sub->add_flag("--allow-empty", opt.allow_empty, "accept the empty diagram");
    sub->add_option("--gauge", opt.gauge, "random gauge seed for the sign assignment")
        ->each([&](const std::string&) { opt.gauged = true; });
  };

  auto* homology = app.add_subcommand("homology", "bigraded homology table");
  add_common(homology);
  homology->add_flag("--reduced", opt.reduced, "reduced homology");
  homology->add_option("--basepoint", opt.basepoint, "basepoint edge label (for --reduced)");
  homology->add_option("--ring", opt.ring, "Z, Q or F<p>")->capture_default_str();

  auto* jones = app.add_subcommand("jones", "graded Euler characteristic and Jones polynomial");
  add_common(jones);

  auto* verify = app.add_subcommand("verify", "sweep index-2/3 faces: ladybug dichotomy, 6-cycles");
  add_common(verify);

  auto* skein = app.add_subcommand("skein", "unoriented skein split at a crossing");
  add_common(skein);
  skein->add_option("--crossing", opt.crossing, "crossing index (0-based)")->required();

  auto* moore = app.add_subcommand("moore", "wedge decomposition of a thin homology table");
  add_common(moore);
  moore->add_flag("--reduced", opt.reduced, "decompose the reduced table");
  moore->add_option("--basepoint", opt.basepoint, "basepoint edge label");
  moore->add_option("--ring", opt.ring, "Z, Q or F<p>")->capture_default_str();
  int sigma_arg = INT32_MIN;
  moore->add_option("--sigma", sigma_arg, "signature (inferred from torsion when omitted)");

  CLI11_PARSE(app, argc, argv);
  if (sigma_arg != INT32_MIN) opt.sigma = sigma_arg;

  try {
    if (homology->parsed()) return cmd_homology(opt);
    if (jones->parsed()) return cmd_jones(opt);
    if (verify->parsed()) return cmd_verify(opt);
    if (skein->parsed()) return cmd_skein(opt);
    if (moore->parsed()) return cmd_moore(opt);
  } catch (const KhError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
