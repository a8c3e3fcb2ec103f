#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bzz/braid.hpp"

using namespace bzz;

namespace {

// Independent decategorification oracle: the action of a single generator on
// the classes [P_k], read off the six-case tensor table directly (no
// complexes, no minimization).
LaurentMatrix oracle_generator(int n, int j, bool positive) {
  auto m = LaurentMatrix::identity(n);
  for (int k = 1; k <= n; ++k) {
    if (k == j) {
      m.at(j - 1, k - 1) = laurent_unit(-1, positive ? 2 : -2);
    } else if (std::abs(j - k) == 1) {
      const long long kappa = j == 1 ? 2 : 1;
      m.at(j - 1, k - 1) = laurent_unit(-kappa, positive ? 1 : -1);
    }
  }
  return m;
}

LaurentMatrix oracle_word(int n, const BraidWord& w) {
  auto m = LaurentMatrix::identity(n);
  for (int j : w.letters) m = m * oracle_generator(n, std::abs(j), j > 0);
  return m;
}

}  // namespace

TEST_CASE("braid word parsing") {
  auto w = parse_braid_word("s1 s2 S1", 3);
  CHECK(w.letters == std::vector<int>{1, 2, -1});
  CHECK(braid_word_str(w) == "s1 s2 S1");
  CHECK(parse_braid_word("", 3).letters.empty());
  CHECK_THROWS(parse_braid_word("s4", 3));
  CHECK_THROWS(parse_braid_word("x1", 3));
  CHECK_THROWS(parse_braid_word("s", 3));
}

TEST_CASE("word_to_complex basics") {
  auto alg = Algebra::build(2);
  ModuleContext ctx(alg);
  auto empty = word_to_complex(ctx, parse_braid_word("", 2), 1);
  REQUIRE(empty.terms.size() == 1);
  CHECK(empty.terms.at(0)->graded_dim() == ctx.regular()->graded_dim());

  auto cancel = word_to_complex(ctx, parse_braid_word("s1 S1", 2), 2);
  auto eq = homotopy_equivalent(cancel, unit_complex(ctx), 3);
  CHECK(eq.verdict == EquivResult::Verdict::Yes);
}

TEST_CASE("laurent arithmetic") {
  auto p = laurent_unit(1, 1) + laurent_unit(1, -1);
  auto q = p * p;
  CHECK(q.coeff == std::map<int, long long>{{-2, 1}, {0, 2}, {2, 1}});
  CHECK(p.str() == "v^-1 + v");
  auto id2 = LaurentMatrix::identity(2);
  CHECK(id2 * id2 == id2);
  CHECK(id2.to_json().find("entries") != std::string::npos);
}

TEST_CASE("decat of a single generator matches the spec example") {
  auto alg = Algebra::build(2);
  ModuleContext ctx(alg);
  auto m = decat_matrix(ctx, parse_braid_word("s1", 2), 5);
  // Column P_1: -v^2 [P_1]; column P_2: [P_2] - 2v [P_1].
  CHECK(m.at(0, 0) == laurent_unit(-1, 2));
  CHECK(m.at(1, 0).is_zero());
  CHECK(m.at(0, 1) == laurent_unit(-2, 1));
  CHECK(m.at(1, 1) == laurent_unit(1));
  CHECK(m == oracle_word(2, parse_braid_word("s1", 2)));
}

TEST_CASE("decat matches the substitution oracle on sample words") {
  for (int n = 2; n <= 3; ++n) {
    auto alg = Algebra::build(n);
    ModuleContext ctx(alg);
    std::vector<std::string> words{"s1", "S1", "s2", "s1 s2", "s2 s1", "s1 s1", "s1 S2"};
    for (const auto& ws : words) {
      auto w = parse_braid_word(ws, n);
      INFO("word ", ws, " rank ", n);
      CHECK(decat_matrix(ctx, w, 7) == oracle_word(n, w));
    }
  }
}

TEST_CASE("decat is multiplicative and inverts inverse words") {
  auto alg = Algebra::build(3);
  ModuleContext ctx(alg);
  auto w1 = parse_braid_word("s1 s2", 3);
  auto w2 = parse_braid_word("s3 S1", 3);
  auto w12 = parse_braid_word("s1 s2 s3 S1", 3);
  CHECK(decat_matrix(ctx, w12, 9) == decat_matrix(ctx, w1, 9) * decat_matrix(ctx, w2, 9));

  auto id = LaurentMatrix::identity(3);
  for (const auto& ws : {"s1", "s1 s2", "s2 s3 s2", "s1 s2 s3 s1"}) {
    auto w = parse_braid_word(ws, 3);
    BraidWord winv;
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
      winv.letters.push_back(-*it);
    CHECK(decat_matrix(ctx, w, 11) * decat_matrix(ctx, winv, 11) == id);
  }
}

TEST_CASE("decat satisfies the rank-3 braid relations exactly") {
  auto alg = Algebra::build(3);
  ModuleContext ctx(alg);
  auto d = [&](const char* s) { return decat_matrix(ctx, parse_braid_word(s, 3), 13); };
  CHECK(d("s1 s2 s1 s2") == d("s2 s1 s2 s1"));
  CHECK(d("s1 s3") == d("s3 s1"));
  CHECK(d("s2 s3 s2") == d("s3 s2 s3"));
}

TEST_CASE("distinguishing power at rank 2") {
  auto alg = Algebra::build(2);
  ModuleContext ctx(alg);
  std::vector<std::string> sample{"s1", "s2", "s1 s2", "s2 s1", "s1 s1", "S1"};
  std::vector<LaurentMatrix> mats;
  for (const auto& ws : sample)
    mats.push_back(decat_matrix(ctx, parse_braid_word(ws, 2), 17));
  for (size_t i = 0; i < mats.size(); ++i)
    for (size_t j = i + 1; j < mats.size(); ++j) {
      INFO(sample[i], " vs ", sample[j]);
      CHECK(!(mats[i] == mats[j]));
    }
}

TEST_CASE("braid relations at ranks 2 and 3") {
  for (int n = 2; n <= 3; ++n) {
    auto alg = Algebra::build(n);
    ModuleContext ctx(alg);
    for (const auto& check : verify_braid_relations(ctx, 1000 + n)) {
      INFO(check.name, ": ", check.detail);
      CHECK(check.passed);
    }
  }
}

TEST_CASE("inverse closure of (2.3)") {
  auto alg = Algebra::build(3);
  ModuleContext ctx(alg);
  auto lhs = word_to_complex(ctx, parse_braid_word("s2 s3 s2", 3), 21);
  auto rhs = word_to_complex(ctx, parse_braid_word("s3 s2 s3", 3), 22);
  CHECK(homotopy_equivalent(lhs, rhs, 23).verdict == EquivResult::Verdict::Yes);
}

TEST_CASE("temperley-lieb checks at ranks 2 and 3") {
  for (int n = 2; n <= 3; ++n) {
    auto alg = Algebra::build(n);
    ModuleContext ctx(alg);
    for (const auto& check : tl_check(ctx, 2000 + n)) {
      INFO(check.name);
      CHECK(check.passed);
    }
  }
}

TEST_CASE("projective multiplicities recognise shifted projectives") {
  auto alg = Algebra::build(3);
  auto p2 = onesided_module(projective(alg, 2, Side::Left));
  auto m = direct_sum(alg, {p2, shift_module(p2, -2),
                            onesided_module(projective(alg, 1, Side::Left))});
  auto mult = projective_multiplicities(*m.mod);
  CHECK(mult == std::map<std::pair<int, int>, int>{{{1, 0}, 1}, {{2, 0}, 1}, {{2, 2}, 1}});
}
