#include "dcop/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace dcop {

namespace {

std::string atLine(int line, const std::string& msg) {
  return "line " + std::to_string(line) + ": " + msg;
}

}  // namespace

void writeProblem(const Problem& p, std::ostream& os) {
  os << "DCOP 1\n";
  os << "agents " << p.n << "\n";
  for (int v = 0; v < p.n; ++v) os << "domain " << v << " " << p.domain(v) << "\n";
  std::vector<CostTable> sorted = p.constraints;
  std::sort(sorted.begin(), sorted.end(), [](const CostTable& a, const CostTable& b) {
    return std::pair(a.i, a.j) < std::pair(b.i, b.j);
  });
  for (const auto& c : sorted) {
    os << "constraint " << c.i << " " << c.j << "\n";
    const int rows = p.domain(c.i), cols = p.domain(c.j);
    for (int r = 0; r < rows; ++r) {
      for (int col = 0; col < cols; ++col) {
        os << c.costs[static_cast<std::size_t>(r) * cols + col];
        os << (col + 1 < cols ? ' ' : '\n');
      }
    }
  }
}

Problem readProblem(std::istream& is) {
  Problem p;
  std::string line;
  int lineNo = 0;
  auto nextLine = [&](std::string& out) -> bool {
    while (std::getline(is, line)) {
      ++lineNo;
      std::size_t start = line.find_first_not_of(" \t\r");
      if (start == std::string::npos) continue;
      if (line[start] == '#') continue;
      out = line;
      return true;
    }
    return false;
  };

  std::string l;
  if (!nextLine(l)) throw ParseError("empty problem file");
  {
    std::istringstream ss(l);
    std::string tag;
    int version = 0;
    ss >> tag >> version;
    if (tag != "DCOP" || ss.fail()) throw ParseError(atLine(lineNo, "expected 'DCOP <version>' header"));
    if (version != 1) throw ParseError(atLine(lineNo, "unsupported format version " + std::to_string(version)));
  }
  if (!nextLine(l)) throw ParseError("missing 'agents' line");
  {
    std::istringstream ss(l);
    std::string tag;
    ss >> tag >> p.n;
    if (tag != "agents" || ss.fail() || p.n <= 0) throw ParseError(atLine(lineNo, "expected 'agents <n>'"));
  }
  p.domainSizes.assign(static_cast<std::size_t>(p.n), 0);

  while (nextLine(l)) {
    std::istringstream ss(l);
    std::string tag;
    ss >> tag;
    if (tag == "domain") {
      int v = -1, size = 0;
      ss >> v >> size;
      if (ss.fail() || v < 0 || v >= p.n) throw ParseError(atLine(lineNo, "bad domain line"));
      if (size < 1) throw ParseError(atLine(lineNo, "domain size must be positive"));
      p.domainSizes[static_cast<std::size_t>(v)] = size;
    } else if (tag == "constraint") {
      int i = -1, j = -1;
      ss >> i >> j;
      if (ss.fail() || i < 0 || j < 0 || i >= p.n || j >= p.n)
        throw ParseError(atLine(lineNo, "bad constraint indices"));
      if (p.domainSizes[static_cast<std::size_t>(i)] == 0 || p.domainSizes[static_cast<std::size_t>(j)] == 0)
        throw ParseError(atLine(lineNo, "constraint references variable without a domain line"));
      CostTable t;
      t.i = i;
      t.j = j;
      const int rows = p.domain(i), cols = p.domain(j);
      t.costs.reserve(static_cast<std::size_t>(rows) * cols);
      for (int r = 0; r < rows; ++r) {
        std::string rowLine;
        if (!nextLine(rowLine)) throw ParseError(atLine(lineNo, "truncated cost table"));
        std::istringstream rs(rowLine);
        for (int c = 0; c < cols; ++c) {
          Cost v = 0;
          rs >> v;
          if (rs.fail()) throw ParseError(atLine(lineNo, "truncated cost row"));
          if (v < 0) throw ParseError(atLine(lineNo, "negative cost entry"));
          t.costs.push_back(v);
        }
        Cost extra;
        if (rs >> extra) throw ParseError(atLine(lineNo, "too many entries in cost row"));
      }
      p.constraints.push_back(std::move(t));
    } else {
      throw ParseError(atLine(lineNo, "unknown directive '" + tag + "'"));
    }
  }
  for (int v = 0; v < p.n; ++v)
    if (p.domainSizes[static_cast<std::size_t>(v)] == 0)
      throw ParseError("missing domain line for variable " + std::to_string(v));
  return p;
}

void writeProblemFile(const Problem& p, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw ParseError("cannot open " + path + " for writing");
  writeProblem(p, os);
}

Problem readProblemFile(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ParseError("cannot open " + path);
  return readProblem(is);
}

}  // namespace dcop
