#include "treewalk/cnf.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>

#include "treewalk/errors.hpp"

namespace treewalk {

namespace {

bool parse_int(const std::string& tok, long long& out) {
  if (tok.empty()) return false;
  char* end = nullptr;
  out = std::strtoll(tok.c_str(), &end, 10);
  return end == tok.c_str() + tok.size();
}

}  // namespace

Cnf parse_dimacs(std::istream& in) {
  Cnf cnf;
  long long declared_clauses = -1;
  std::vector<int> current;
  std::size_t line_no = 0;
  std::size_t last_line = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (line[first] == 'c') continue;
    std::istringstream tokens(line.substr(first));
    if (line[first] == 'p') {
      if (declared_clauses >= 0) throw ParseError(line_no, "duplicate problem line");
      std::string p, fmt, vars, clauses, extra;
      tokens >> p >> fmt >> vars >> clauses;
      long long v = 0, c = 0;
      if (p != "p" || fmt != "cnf" || !parse_int(vars, v) || !parse_int(clauses, c) || (tokens >> extra)) {
        throw ParseError(line_no, "malformed header, expected 'p cnf <vars> <clauses>'");
      }
      if (v < 1 || c < 0) throw ParseError(line_no, "header counts out of range");
      if (v > NodeAddr::kMaxDepth) {
        throw ParseError(line_no, "more than " + std::to_string(NodeAddr::kMaxDepth) + " variables unsupported");
      }
      cnf.num_vars = static_cast<int>(v);
      declared_clauses = c;
      continue;
    }
    if (declared_clauses < 0) throw ParseError(line_no, "clause data before 'p cnf' header");
    std::string tok;
    while (tokens >> tok) {
      long long lit = 0;
      if (!parse_int(tok, lit)) throw ParseError(line_no, "not an integer literal: '" + tok + "'");
      if (lit == 0) {
        if (current.empty()) throw ParseError(line_no, "empty clause");
        cnf.clauses.push_back(std::move(current));
        current.clear();
        continue;
      }
      if (std::llabs(lit) > cnf.num_vars) {
        throw ParseError(line_no, "literal " + tok + " references a variable outside 1.." + std::to_string(cnf.num_vars));
      }
      current.push_back(static_cast<int>(lit));
    }
    last_line = line_no;
  }
  if (declared_clauses < 0) throw ParseError(line_no, "missing 'p cnf' header");
  if (!current.empty()) throw ParseError(last_line, "last clause is not terminated by 0");
  if (static_cast<long long>(cnf.clauses.size()) != declared_clauses) {
    throw ParseError(line_no, "header declares " + std::to_string(declared_clauses) + " clauses, found " +
                                  std::to_string(cnf.clauses.size()));
  }
  return cnf;
}

Cnf parse_dimacs_string(const std::string& text) {
  std::istringstream in(text);
  return parse_dimacs(in);
}

Cnf parse_dimacs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  return parse_dimacs(in);
}

std::string to_dimacs(const Cnf& cnf) {
  std::ostringstream out;
  out << "p cnf " << cnf.num_vars << ' ' << cnf.clauses.size() << '\n';
  for (const auto& clause : cnf.clauses) {
    for (int lit : clause) out << lit << ' ';
    out << "0\n";
  }
  return out.str();
}

namespace {

// A clause in path coordinates: literal (position, required bit) pairs.
struct PathClause {
  std::vector<std::pair<int, int>> lits;
};

class CnfOracle final : public MembershipOracle {
 public:
  CnfOracle(const Cnf& cnf, const std::vector<int>& order) : by_last_(static_cast<std::size_t>(cnf.num_vars)) {
    std::vector<int> position(static_cast<std::size_t>(cnf.num_vars) + 1);
    for (std::size_t j = 0; j < order.size(); ++j) position[static_cast<std::size_t>(order[j])] = static_cast<int>(j);
    for (const auto& clause : cnf.clauses) {
      PathClause pc;
      int last = 0;
      for (int lit : clause) {
        const int pos = position[static_cast<std::size_t>(std::abs(lit))];
        pc.lits.emplace_back(pos, lit > 0 ? 1 : 0);
        last = std::max(last, pos);
      }
      by_last_[static_cast<std::size_t>(last)].push_back(std::move(pc));
    }
  }

  bool member(NodeAddr a) const override {
    for (int d = 0; d < a.depth(); ++d) {
      if (falsifies_level(a, d)) return false;
    }
    return true;
  }

  bool child_member(NodeAddr parent, int bit) const override {
    const NodeAddr c = parent.child(bit);
    return !falsifies_level(c, c.depth() - 1);
  }

 private:
  // Clauses that become fully assigned at path position d.
  bool falsifies_level(NodeAddr a, int d) const {
    for (const auto& clause : by_last_[static_cast<std::size_t>(d)]) {
      bool satisfied = false;
      for (const auto& [pos, want] : clause.lits) {
        if (a.bit(pos) == want) {
          satisfied = true;
          break;
        }
      }
      if (!satisfied) return true;
    }
    return false;
  }

  std::vector<std::vector<PathClause>> by_last_;
};

}  // namespace

SuccinctTree cnf_tree(const Cnf& cnf, std::vector<int> order) {
  if (cnf.num_vars < 1 || cnf.num_vars > NodeAddr::kMaxDepth) throw InvalidArgument("variable count out of range");
  for (const auto& clause : cnf.clauses) {
    if (clause.empty()) throw InvalidArgument("empty clause");
    for (int lit : clause) {
      if (lit == 0 || std::abs(lit) > cnf.num_vars) throw InvalidArgument("literal out of range");
    }
  }
  if (order.empty()) {
    order.resize(static_cast<std::size_t>(cnf.num_vars));
    std::iota(order.begin(), order.end(), 1);
  }
  std::vector<int> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> identity(static_cast<std::size_t>(cnf.num_vars));
  std::iota(identity.begin(), identity.end(), 1);
  if (sorted != identity) throw InvalidArgument("variable order is not a permutation of 1..num_vars");

  std::ostringstream label;
  label << "cnf:" << cnf.num_vars << "v" << cnf.clauses.size() << "c";
  return SuccinctTree(cnf.num_vars, std::make_shared<CnfOracle>(cnf, order), label.str());
}

}  // namespace treewalk
