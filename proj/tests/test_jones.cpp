#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "khoflow/khcomplex.hpp"
#include "support/kauffman.hpp"

using namespace khoflow;

static std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

TEST_CASE("euler characteristic equals the kauffman bracket prediction") {
  int checked = 0;
  for (auto& entry : std::filesystem::directory_iterator(KHOFLOW_CORPUS_DIR)) {
    if (entry.path().extension() != ".pd") continue;
    auto code = parse_pd(slurp(entry.path()));
    if (code.size() > 7) continue;  // the full corpus runs in the acceptance suite
    auto dia = orient_and_sign(code);
    auto cx = build_complex(dia);
    auto chi = oracle::kauffman_chi(code, dia.n_plus, dia.n_minus).chi;
    INFO(entry.path().filename().string());
    REQUIRE(cx.graded_euler() == chi);
    ++checked;
  }
  REQUIRE(checked >= 10);
}

TEST_CASE("jones polynomial division is exact on the corpus") {
  for (auto& entry : std::filesystem::directory_iterator(KHOFLOW_CORPUS_DIR)) {
    if (entry.path().extension() != ".pd") continue;
    auto code = parse_pd(slurp(entry.path()));
    if (code.size() > 7) continue;
    auto dia = orient_and_sign(code);
    auto cx = build_complex(dia);
    Laurent qq;
    qq.add_term(1, 1);
    qq.add_term(-1, 1);
    REQUIRE(cx.jones_polynomial() * qq == cx.graded_euler());
  }
}
