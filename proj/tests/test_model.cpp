#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "dcop/io.hpp"
#include "dcop/model.hpp"
#include "dcop/pseudotree.hpp"

using namespace dcop;

namespace {

Problem twoAgentXor() {
  Problem p;
  p.n = 2;
  p.domainSizes = {2, 2};
  p.constraints.push_back({0, 1, {0, 1, 1, 0}});
  return p;
}

std::vector<VariableId> sepOf(const PseudoTree& t, int paperIndex) {
  return t.sep[static_cast<std::size_t>(paperIndex - 1)];
}

std::vector<VariableId> ids(std::initializer_list<int> paperIndices) {
  std::vector<VariableId> out;
  for (int i : paperIndices) out.push_back(i - 1);
  return out;
}

}  // namespace

TEST_CASE("validate accepts a simple problem") {
  CHECK(validate(twoAgentXor()).empty());
}

TEST_CASE("validate reports negative costs") {
  Problem p = twoAgentXor();
  p.constraints[0].costs[2] = -1;
  auto errors = validate(p);
  REQUIRE(!errors.empty());
  CHECK(errors[0].find("negative cost") != std::string::npos);
}

TEST_CASE("validate reports disconnected graphs") {
  Problem p;
  p.n = 3;
  p.domainSizes = {2, 2, 2};
  p.constraints.push_back({0, 1, {0, 1, 1, 0}});
  auto errors = validate(p);
  REQUIRE(!errors.empty());
  CHECK(errors[0].find("disconnected") != std::string::npos);
}

TEST_CASE("validate reports duplicates, self-loops and bad indices") {
  Problem p = twoAgentXor();
  p.constraints.push_back({0, 1, {0, 0, 0, 0}});
  CHECK(!validate(p).empty());

  Problem q = twoAgentXor();
  q.constraints.push_back({1, 1, {0, 0, 0, 0}});
  CHECK(!validate(q).empty());

  Problem r = twoAgentXor();
  r.constraints[0].j = 7;
  CHECK(!validate(r).empty());
}

TEST_CASE("totalCost sums constraint tables") {
  Problem p = twoAgentXor();
  Assignment a(2);
  a[0] = 0;
  a[1] = 0;
  CHECK(totalCost(p, a) == 0);
  a[1] = 1;
  CHECK(totalCost(p, a) == 1);

  Problem zeros = twoAgentXor();
  zeros.constraints[0].costs = {0, 0, 0, 0};
  CHECK(totalCost(zeros, a) == 0);
}

TEST_CASE("totalCost rejects partial assignments") {
  Problem p = twoAgentXor();
  Assignment a(2);
  a[0] = 0;
  CHECK_THROWS(totalCost(p, a));
}

TEST_CASE("totalCost is invariant under constraint order") {
  Problem p;
  p.n = 3;
  p.domainSizes = {2, 2, 2};
  p.constraints.push_back({0, 1, {3, 1, 4, 1}});
  p.constraints.push_back({1, 2, {5, 9, 2, 6}});
  p.constraints.push_back({0, 2, {8, 7, 0, 2}});
  Problem q = p;
  std::swap(q.constraints[0], q.constraints[2]);
  Assignment a(3);
  a[0] = 1;
  a[1] = 0;
  a[2] = 1;
  CHECK(totalCost(p, a) == totalCost(q, a));
}

TEST_CASE("fixture is valid and has the documented shape") {
  Problem p = fig2Fixture();
  CHECK(validate(p).empty());
  CHECK(p.n == 14);
  CHECK(p.constraints.size() == 24);  // 13 tree edges + 11 back edges
  for (int v = 0; v < p.n; ++v) CHECK(p.domain(v) == 3);
  // Deterministic: build twice, identical costs.
  Problem q = fig2Fixture();
  for (std::size_t i = 0; i < p.constraints.size(); ++i)
    CHECK(p.constraints[i].costs == q.constraints[i].costs);
}

TEST_CASE("fixture separators match the worked example") {
  Problem p = fig2Fixture();
  PseudoTree t = buildPseudoTreeFromEdges(p, 0, fig2TreeEdges());
  CHECK(sepOf(t, 14) == ids({9, 10, 13}));
  CHECK(sepOf(t, 8) == ids({1, 2, 4, 5, 6, 7}));
  CHECK(sepOf(t, 3) == ids({1, 2}));
  CHECK(sepOf(t, 11) == ids({3, 9, 10}));
  CHECK(sepOf(t, 12) == ids({9, 10}));
  CHECK(sepOf(t, 4) == ids({1, 2, 3}));
  CHECK(sepOf(t, 7) == ids({1, 2, 4, 5, 6}));
}

TEST_CASE("problem file round trip") {
  Problem p = fig2Fixture();
  std::stringstream ss;
  writeProblem(p, ss);
  Problem q = readProblem(ss);
  CHECK(q.n == p.n);
  CHECK(q.domainSizes == p.domainSizes);
  REQUIRE(q.constraints.size() == p.constraints.size());
  for (std::size_t i = 0; i < p.constraints.size(); ++i) {
    CHECK(q.constraints[i].i == p.constraints[i].i);
    CHECK(q.constraints[i].j == p.constraints[i].j);
    CHECK(q.constraints[i].costs == p.constraints[i].costs);
  }
}

TEST_CASE("reader rejects malformed input") {
  {
    std::stringstream ss("DCOP 2\nagents 1\ndomain 0 2\n");
    CHECK_THROWS_AS(readProblem(ss), ParseError);
  }
  {
    std::stringstream ss("DCOP 1\nagents 2\ndomain 0 2\ndomain 1 2\nconstraint 0 1\n0 1\n");
    CHECK_THROWS_AS(readProblem(ss), ParseError);  // truncated cost table
  }
  {
    std::stringstream ss("DCOP 1\nagents 2\ndomain 0 2\ndomain 1 2\nconstraint 0 1\n0 1\n1\n");
    try {
      readProblem(ss);
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("line") != std::string::npos);
    }
  }
  {
    std::stringstream ss("DCOP 1\nagents 2\ndomain 0 2\ndomain 1 2\nconstraint 0 1\n0 -1\n1 0\n");
    CHECK_THROWS_AS(readProblem(ss), ParseError);
  }
}

TEST_CASE("comments are ignored") {
  std::stringstream ss("# header\nDCOP 1\nagents 1\n# note\ndomain 0 3\n");
  Problem p = readProblem(ss);
  CHECK(p.n == 1);
  CHECK(p.domain(0) == 3);
}
