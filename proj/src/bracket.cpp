#include "ulab/bracket.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <vector>

#include "ulab/errors.hpp"
#include "ulab/num.hpp"
#include "ulab/rng.hpp"

namespace ulab {

namespace {
constexpr std::size_t kMaxNodes = 10000;
}

struct BracketExpr::Node {
  enum class Kind { constant, variable, add, sub, mul, floor_op, frac_op } kind;
  double value = 0.0;
  char name = 0;
  std::shared_ptr<const Node> left, right;  // unary ops use left only
};

BracketExpr BracketExpr::constant(double c) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::constant;
  n->value = c;
  return BracketExpr(n);
}

BracketExpr BracketExpr::var(char name) {
  if (name != 'n' && name != 'h') throw InputError("BracketExpr: variables are 'n' and 'h'");
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::variable;
  n->name = name;
  return BracketExpr(n);
}

BracketExpr BracketExpr::add(BracketExpr a, BracketExpr b) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::add;
  n->left = a.root_;
  n->right = b.root_;
  return BracketExpr(n);
}

BracketExpr BracketExpr::sub(BracketExpr a, BracketExpr b) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::sub;
  n->left = a.root_;
  n->right = b.root_;
  return BracketExpr(n);
}

BracketExpr BracketExpr::mul(BracketExpr a, BracketExpr b) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::mul;
  n->left = a.root_;
  n->right = b.root_;
  return BracketExpr(n);
}

BracketExpr BracketExpr::floor_of(BracketExpr a) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::floor_op;
  n->left = a.root_;
  return BracketExpr(n);
}

BracketExpr BracketExpr::frac_of(BracketExpr a) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::frac_op;
  n->left = a.root_;
  return BracketExpr(n);
}

namespace {

struct Parser {
  std::string_view text;
  std::size_t pos = 0;
  std::size_t nodes = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  [[noreturn]] void fail(const std::string& what) {
    throw InputError("bracket parse error at offset " + std::to_string(pos) + ": " + what);
  }

  std::string token() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) &&
           text[pos] != '(' && text[pos] != ')')
      ++pos;
    if (start == pos) fail("expected a token");
    return std::string(text.substr(start, pos - start));
  }

  void expect(char c) {
    skip_ws();
    if (pos >= text.size() || text[pos] != c) fail(std::string("expected '") + c + "'");
    ++pos;
  }

  BracketExpr parse_expr() {
    if (++nodes > kMaxNodes) fail("expression exceeds the node cap");
    expect('(');
    std::string op = token();
    BracketExpr result = [&]() -> BracketExpr {
      if (op == "const") {
        std::string lit = token();
        char* end = nullptr;
        double v = std::strtod(lit.c_str(), &end);
        if (end == nullptr || *end != '\0') fail("bad numeric literal '" + lit + "'");
        return BracketExpr::constant(v);
      }
      if (op == "var") {
        std::string name = token();
        if (name.size() != 1) fail("bad variable '" + name + "'");
        return BracketExpr::var(name[0]);
      }
      if (op == "add" || op == "mul" || op == "sub") {
        std::vector<BracketExpr> args;
        skip_ws();
        while (pos < text.size() && text[pos] == '(') {
          args.push_back(parse_expr());
          skip_ws();
        }
        if (args.size() < 2) fail("'" + op + "' needs at least two arguments");
        if (op == "sub" && args.size() != 2) fail("'sub' is binary");
        BracketExpr acc = args[0];
        for (std::size_t i = 1; i < args.size(); ++i) {
          if (op == "add") acc = BracketExpr::add(acc, args[i]);
          else if (op == "mul") acc = BracketExpr::mul(acc, args[i]);
          else acc = BracketExpr::sub(acc, args[i]);
        }
        return acc;
      }
      if (op == "floor" || op == "frac") {
        BracketExpr arg = parse_expr();
        return op == "floor" ? BracketExpr::floor_of(arg) : BracketExpr::frac_of(arg);
      }
      fail("unknown operator '" + op + "'");
    }();
    expect(')');
    return result;
  }
};

}  // namespace

BracketExpr BracketExpr::parse(std::string_view text) {
  Parser p{text};
  BracketExpr e = p.parse_expr();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing characters");
  if (e.node_count() > kMaxNodes) throw InputError("expression exceeds the node cap");
  return e;
}

namespace {

void node_str(const BracketExpr::Node* n, std::ostringstream& out) {
  using K = BracketExpr::Node::Kind;
  switch (n->kind) {
    case K::constant: {
      out << "(const ";
      std::ostringstream num;
      num.precision(17);
      num << n->value;
      out << num.str() << ")";
      return;
    }
    case K::variable: out << "(var " << n->name << ")"; return;
    case K::add:
    case K::sub:
    case K::mul: {
      out << (n->kind == K::add ? "(add " : n->kind == K::sub ? "(sub " : "(mul ");
      node_str(n->left.get(), out);
      out << " ";
      node_str(n->right.get(), out);
      out << ")";
      return;
    }
    case K::floor_op:
    case K::frac_op:
      out << (n->kind == K::floor_op ? "(floor " : "(frac ");
      node_str(n->left.get(), out);
      out << ")";
      return;
  }
}

std::size_t count_nodes(const BracketExpr::Node* n) {
  if (n == nullptr) return 0;
  return 1 + count_nodes(n->left.get()) + count_nodes(n->right.get());
}

void collect_vars(const BracketExpr::Node* n, std::set<char>& out) {
  if (n == nullptr) return;
  if (n->kind == BracketExpr::Node::Kind::variable) out.insert(n->name);
  collect_vars(n->left.get(), out);
  collect_vars(n->right.get(), out);
}

double eval_rec(const BracketExpr::Node* n, const Assignment& a, double* min_gap) {
  using K = BracketExpr::Node::Kind;
  switch (n->kind) {
    case K::constant: return n->value;
    case K::variable: {
      auto it = a.find(n->name);
      if (it == a.end())
        throw InputError(std::string("unassigned variable '") + n->name + "'");
      return static_cast<double>(it->second);
    }
    case K::add: return eval_rec(n->left.get(), a, min_gap) + eval_rec(n->right.get(), a, min_gap);
    case K::sub: return eval_rec(n->left.get(), a, min_gap) - eval_rec(n->right.get(), a, min_gap);
    case K::mul: return eval_rec(n->left.get(), a, min_gap) * eval_rec(n->right.get(), a, min_gap);
    case K::floor_op:
    case K::frac_op: {
      double v = eval_rec(n->left.get(), a, min_gap);
      if (min_gap != nullptr) {
        double gap = std::abs(v - std::round(v));
        if (gap < *min_gap) *min_gap = gap;
      }
      double fl = std::floor(v);
      return n->kind == K::floor_op ? fl : (v - fl < 1.0 ? v - fl : 0.0);
    }
  }
  throw InternalError("bad bracket node");
}

}  // namespace

std::string BracketExpr::str() const {
  std::ostringstream out;
  node_str(root_.get(), out);
  return out.str();
}

std::size_t BracketExpr::node_count() const { return count_nodes(root_.get()); }

std::set<char> BracketExpr::variables() const {
  std::set<char> vars;
  collect_vars(root_.get(), vars);
  return vars;
}

double BracketExpr::eval(const Assignment& a) const { return eval_rec(root_.get(), a, nullptr); }

double BracketExpr::eval_mod1(const Assignment& a) const {
  return mod1(eval_rec(root_.get(), a, nullptr));
}

double BracketExpr::min_floor_gap(const Assignment& a) const {
  double gap = 1.0;
  eval_rec(root_.get(), a, &gap);
  return gap;
}

IdentityReport check_phase_identity(const BracketExpr& lhs, const BracketExpr& rhs,
                                    std::size_t samples, std::uint64_t seed,
                                    const IdentityCheckConfig& cfg) {
  std::set<char> vl = lhs.variables(), vr = rhs.variables();
  if (vl != vr) throw InputError("check_phase_identity: variable sets differ");
  std::vector<char> vars(vl.begin(), vl.end());

  IdentityReport report;
  CounterRng rng(seed, 0x6964);
  for (std::size_t i = 0; i < samples; ++i) {
    Assignment a;
    bool ok = false;
    for (int attempt = 0; attempt < cfg.max_resample && !ok; ++attempt) {
      a.clear();
      for (char v : vars) a[v] = rng.uniform_int(cfg.n_min, cfg.n_max);
      ok = std::min(lhs.min_floor_gap(a), rhs.min_floor_gap(a)) > cfg.floor_guard;
      if (vars.empty()) ok = true;
    }
    double defect = circle_dist(lhs.eval_mod1(a), rhs.eval_mod1(a));
    if (defect > report.max_defect || !report.worst) {
      report.max_defect = defect;
      report.worst = a;
    }
    ++report.samples_used;
    if (vars.empty()) break;  // nothing to sample over
  }
  return report;
}

BracketExpr alphab_identity_lhs(double alpha, double beta) {
  using E = BracketExpr;
  E n = E::var('n');
  return E::mul(E::mul(E::constant(alpha), n), E::floor_of(E::mul(E::constant(beta), n)));
}

BracketExpr alphab_identity_rhs(double alpha, double beta, int sign, bool include_product_term) {
  using E = BracketExpr;
  E n = E::var('n');
  E first = E::mul(E::mul(E::constant(-beta), n), E::floor_of(E::mul(E::constant(alpha), n)));
  E second = E::mul(E::mul(E::constant(alpha * beta), n), n);
  E acc = E::add(first, second);
  if (include_product_term) {
    E prod = E::mul(E::frac_of(E::mul(E::constant(alpha), n)),
                    E::frac_of(E::mul(E::constant(beta), n)));
    acc = sign >= 0 ? E::add(acc, prod) : E::sub(acc, prod);
  }
  return acc;
}

SignOracleResult alphab_sign_oracle(std::size_t samples, std::uint64_t seed) {
  CounterRng rng(seed, 0xa1fab);
  double worst[2] = {0.0, 0.0};  // index 0: sign +1, index 1: sign -1
  IdentityCheckConfig cfg;
  for (std::size_t i = 0; i < samples; ++i) {
    // parameters away from the degenerate alpha,beta = 0 cases
    const double alpha = 0.05 + 0.9 * rng.uniform01();
    const double beta = 0.05 + 0.9 * rng.uniform01();
    std::int64_t n = 0;
    Assignment a;
    for (int attempt = 0; attempt < cfg.max_resample; ++attempt) {
      n = rng.uniform_int(1, 500);
      a = {{'n', n}};
      if (alphab_identity_lhs(alpha, beta).min_floor_gap(a) > cfg.floor_guard &&
          alphab_identity_rhs(alpha, beta, +1, true).min_floor_gap(a) > cfg.floor_guard)
        break;
    }
    const double lhs = alphab_identity_lhs(alpha, beta).eval_mod1(a);
    worst[0] = std::max(worst[0],
                        circle_dist(lhs, alphab_identity_rhs(alpha, beta, +1, true).eval_mod1(a)));
    worst[1] = std::max(worst[1],
                        circle_dist(lhs, alphab_identity_rhs(alpha, beta, -1, true).eval_mod1(a)));
  }
  SignOracleResult r;
  if (worst[1] <= 1e-9) {
    r.sign = -1;
    r.residual = worst[1];
  } else if (worst[0] <= 1e-9) {
    r.sign = +1;
    r.residual = worst[0];
  } else {
    throw InternalError("no sign satisfies the bracket reflection identity: residual +1 = " +
                        std::to_string(worst[0]) + ", -1 = " + std::to_string(worst[1]));
  }
  return r;
}

}  // namespace ulab
