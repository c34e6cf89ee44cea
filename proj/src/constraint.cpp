#include "jetinv/constraint.hpp"

#include <cctype>

#include "jetinv/errors.hpp"

namespace jetinv {

Scalar Bound::resolve(const ParamValues& env) const {
  if (param.empty()) return value;
  auto it = env.find(param);
  if (it == env.end()) throw ConstraintError("bound refers to unknown parameter " + param);
  return it->second;
}

std::string Bound::str() const { return param.empty() ? value.str() : param; }

namespace {

class ConstraintLexer {
 public:
  explicit ConstraintLexer(std::string_view s) : s_(s) {}

  void skip() {
    while (pos_ < s_.size() && (std::isspace(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == ','))
      ++pos_;
  }
  bool done() {
    skip();
    return pos_ >= s_.size();
  }
  bool eat(std::string_view word) {
    skip();
    if (s_.substr(pos_, word.size()) == word) {
      pos_ += word.size();
      return true;
    }
    return false;
  }
  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  Bound bound() {
    skip();
    std::size_t start = pos_;
    if (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      return Bound{Scalar(), std::string(s_.substr(start, pos_ - start))};
    }
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '/' ||
                                s_[pos_] == '.'))
      ++pos_;
    std::string text(s_.substr(start, pos_ - start));
    if (text.empty() || text == "-" || text == "+") fail("expected a number or parameter name");
    if (text.front() == '+') text.erase(0, 1);
    try {
      return Bound{Scalar::from_string(text), {}};
    } catch (const std::exception&) {
      fail("malformed number '" + text + "'");
    }
  }
  [[noreturn]] void fail(const std::string& what) {
    throw ConstraintError("constraint '" + std::string(s_) + "': " + what);
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Constraint Constraint::parse(std::string_view text) {
  Constraint c;
  ConstraintLexer lx(text);
  using Op = Clause::Op;
  while (!lx.done()) {
    if (lx.eat("free")) continue;
    if (lx.eat("int")) {
      c.clauses_.push_back({Op::Integer, {}});
      continue;
    }
    if (lx.eat("in")) {
      char open = lx.peek();
      if (open != '(' && open != '[') lx.fail("expected '(' or '[' after 'in'");
      lx.expect(open);
      Bound lo = lx.bound();
      Bound hi = lx.bound();
      char close = lx.peek();
      if (close != ')' && close != ']') lx.fail("expected ')' or ']'");
      lx.expect(close);
      c.clauses_.push_back({open == '(' ? Op::Gt : Op::Ge, lo});
      c.clauses_.push_back({close == ')' ? Op::Lt : Op::Le, hi});
      continue;
    }
    bool abs = lx.eat("abs");
    Op op;
    if (lx.eat(">=")) op = abs ? Op::AbsGe : Op::Ge;
    else if (lx.eat("<=")) op = abs ? Op::AbsLe : Op::Le;
    else if (lx.eat("!=") || lx.eat("ne")) op = Op::Ne;
    else if (lx.eat(">")) op = abs ? Op::AbsGt : Op::Gt;
    else if (lx.eat("<")) op = abs ? Op::AbsLt : Op::Lt;
    else if (lx.eat("=")) op = Op::Eq;
    else lx.fail("unknown clause");
    if (abs && (op == Op::Ne || op == Op::Eq)) lx.fail("abs takes an inequality");
    c.clauses_.push_back({op, lx.bound()});
  }
  return c;
}

bool Constraint::satisfied(const Scalar& v, const ParamValues& env) const {
  using Op = Clause::Op;
  for (const auto& cl : clauses_) {
    if (cl.op == Op::Integer) {
      if (!v.is_integer()) return false;
      continue;
    }
    Scalar b = cl.bound.resolve(env);
    if (cl.op == Op::Eq) {
      if (!(v == b)) return false;
      continue;
    }
    if (cl.op == Op::Ne) {
      if (v == b) return false;
      continue;
    }
    if (!v.is_real() || !b.is_real()) return false;
    mpq_class x = v.re();
    if (cl.op == Op::AbsGe || cl.op == Op::AbsGt || cl.op == Op::AbsLe || cl.op == Op::AbsLt) x = abs(x);
    const mpq_class& y = b.re();
    bool ok = true;
    switch (cl.op) {
      case Op::Ge: case Op::AbsGe: ok = x >= y; break;
      case Op::Gt: case Op::AbsGt: ok = x > y; break;
      case Op::Le: case Op::AbsLe: ok = x <= y; break;
      case Op::Lt: case Op::AbsLt: ok = x < y; break;
      default: break;
    }
    if (!ok) return false;
  }
  return true;
}

std::string Constraint::str() const {
  if (clauses_.empty()) return "free";
  std::string out;
  for (const auto& cl : clauses_) {
    if (!out.empty()) out += " ";
    switch (cl.op) {
      case Clause::Op::Ge: out += ">= "; break;
      case Clause::Op::Gt: out += "> "; break;
      case Clause::Op::Le: out += "<= "; break;
      case Clause::Op::Lt: out += "< "; break;
      case Clause::Op::Eq: out += "= "; break;
      case Clause::Op::Ne: out += "ne "; break;
      case Clause::Op::AbsGe: out += "abs>="; break;
      case Clause::Op::AbsGt: out += "abs>"; break;
      case Clause::Op::AbsLe: out += "abs<="; break;
      case Clause::Op::AbsLt: out += "abs<"; break;
      case Clause::Op::Integer: out += "int"; continue;
    }
    out += cl.bound.str();
  }
  return out;
}

Scalar sample_value(const Constraint& c, const ParamValues& env, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> den(1, 12);
  for (int attempt = 0; attempt < 4000; ++attempt) {
    int d = attempt < 2000 ? den(rng) : 1;
    int span = attempt < 1000 ? 3 : 12;
    std::uniform_int_distribution<int> num(-span * d, span * d);
    Scalar v = Scalar::ratio(num(rng), d);
    if (v.is_zero() && attempt < 1000) continue;
    if (c.satisfied(v, env)) return v;
  }
  throw ConstraintError("no sample satisfies " + c.str());
}

ParamValues sample_params(const std::vector<ParamDecl>& decls, std::mt19937_64& rng,
                          const ParamValues& fixed) {
  ParamValues env = fixed;
  for (const auto& d : decls) {
    if (env.count(d.name)) continue;
    env[d.name] = sample_value(d.constraint, env, rng);
  }
  return env;
}

}  // namespace jetinv
