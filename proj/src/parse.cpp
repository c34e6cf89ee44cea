#include "jetinv/parse.hpp"

#include <cctype>
#include <sstream>

namespace jetinv {

namespace {

std::string format_error(const std::string& message, const SourceSpan& span, const std::set<std::string>& expected) {
  std::ostringstream os;
  os << span.line << ":" << span.column << ": " << message;
  if (!expected.empty()) {
    os << " (expected";
    bool first = true;
    for (const auto& e : expected) {
      os << (first ? " " : ", ") << e;
      first = false;
    }
    os << ")";
  }
  return os.str();
}

}  // namespace

ParseError::ParseError(const std::string& message, SourceSpan span, std::set<std::string> expected)
    : Error(format_error(message, span, expected)),
      detail_(message),
      span_(span),
      expected_(std::move(expected)) {}

Symbol dx_marker() { return Symbol::param("D[x]"); }
Symbol dy_marker() { return Symbol::param("D[y]"); }

namespace {

enum class Tok { Number, Ident, Jet, Deriv, Op, End };

struct Token {
  Tok kind;
  std::string text;
  int jet = 0;  // order for Jet; 0 = x, 1 = y for Deriv
  std::size_t begin = 0, end = 0;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

class Parser {
 public:
  Parser(std::string_view text, const ParseContext& ctx, TextOrigin origin)
      : text_(text), ctx_(ctx), origin_(origin) {
    advance();
  }

  Expr parse_all() {
    Expr e = expression(0);
    if (tok_.kind != Tok::End) fail("unexpected " + describe(tok_), tok_, {"operator", "end of input"});
    return e;
  }

 private:
  SourceSpan span_of(std::size_t begin, std::size_t end) const {
    SourceSpan s;
    s.begin = origin_.offset + begin;
    s.end = origin_.offset + std::max(end, begin);
    s.line = origin_.line;
    s.column = origin_.column;
    for (std::size_t k = 0; k < begin && k < text_.size(); ++k) {
      if (text_[k] == '\n') {
        ++s.line;
        s.column = 1;
      } else {
        ++s.column;
      }
    }
    return s;
  }

  [[noreturn]] void fail(const std::string& msg, const Token& t, std::set<std::string> expected = {}) const {
    // Spans point inside the token; an empty token at the end gets width one.
    throw ParseError(msg, span_of(t.begin, t.end > t.begin ? t.end : t.begin + 1), std::move(expected));
  }

  static std::string describe(const Token& t) {
    switch (t.kind) {
      case Tok::End: return "end of input";
      case Tok::Number: return "number '" + t.text + "'";
      case Tok::Ident: return "identifier '" + t.text + "'";
      default: return "'" + t.text + "'";
    }
  }

  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    Token t;
    t.begin = pos_;
    if (pos_ >= text_.size()) {
      t.kind = Tok::End;
      t.end = pos_;
      tok_ = t;
      return;
    }
    const char c = text_[pos_];
    if (digit(c) || (c == '.' && pos_ + 1 < text_.size() && digit(text_[pos_ + 1]))) {
      std::size_t p = pos_;
      while (p < text_.size() && digit(text_[p])) ++p;
      if (p < text_.size() && text_[p] == '.') {
        ++p;
        while (p < text_.size() && digit(text_[p])) ++p;
      }
      t.kind = Tok::Number;
      t.text = std::string(text_.substr(pos_, p - pos_));
    } else if (ident_start(c)) {
      std::size_t p = pos_;
      while (p < text_.size() && ident_char(text_[p])) ++p;
      t.kind = Tok::Ident;
      t.text = std::string(text_.substr(pos_, p - pos_));
      if (t.text == "y") {
        std::size_t q = p;
        while (q < text_.size() && text_[q] == '\'') ++q;
        if (q > p) {
          t.kind = Tok::Jet;
          t.jet = static_cast<int>(q - p);
          p = q;
        } else if (text_.substr(p, 2) == "^(") {
          std::size_t d = p + 2;
          while (d < text_.size() && digit(text_[d])) ++d;
          if (d > p + 2 && d < text_.size() && text_[d] == ')') {
            int k = std::stoi(std::string(text_.substr(p + 2, d - p - 2)));
            if (k >= 1) {
              t.kind = Tok::Jet;
              t.jet = k;
              p = d + 1;
            }
          }
        }
      } else if (t.text == "D" && p < text_.size() && text_[p] == '[') {
        std::size_t close = text_.find(']', p);
        std::string inner = close == std::string_view::npos ? "" : std::string(text_.substr(p + 1, close - p - 1));
        if (inner == "x" || inner == "y") {
          t.kind = Tok::Deriv;
          t.jet = inner == "x" ? 0 : 1;
          p = close + 1;
        }
      }
      t.text = std::string(text_.substr(pos_, p - pos_));
      pos_ = p;
      t.end = pos_;
      tok_ = t;
      return;
    } else if (std::string_view("+-*/^(),").find(c) != std::string_view::npos) {
      t.kind = Tok::Op;
      t.text = std::string(1, c);
      ++pos_;
      t.end = pos_;
      tok_ = t;
      return;
    } else {
      t.kind = Tok::Op;
      t.text = std::string(1, c);
      t.end = pos_ + 1;
      fail("unexpected character '" + t.text + "'", t);
    }
    pos_ += t.text.size();
    t.end = pos_;
    tok_ = t;
  }

  bool is_op(const char* s) const { return tok_.kind == Tok::Op && tok_.text == s; }

  void expect(const char* s) {
    if (!is_op(s)) fail(std::string("expected '") + s + "', found " + describe(tok_), tok_, {std::string("'") + s + "'"});
    advance();
  }

  static int infix_prec(const Token& t) {
    if (t.kind != Tok::Op) return -1;
    switch (t.text[0]) {
      case '+':
      case '-': return 10;
      case '*':
      case '/': return 20;
      case '^': return 40;
      default: return -1;
    }
  }

  Expr expression(int min_prec) {
    Expr lhs = prefix();
    for (;;) {
      const int prec = infix_prec(tok_);
      if (prec < 0 || prec < min_prec) return lhs;
      Token op = tok_;
      advance();
      switch (op.text[0]) {
        case '+': lhs = lhs + expression(prec + 1); break;
        case '-': lhs = lhs - expression(prec + 1); break;
        case '*': lhs = lhs * expression(prec + 1); break;
        case '/': {
          Token at = tok_;
          Expr rhs = expression(prec + 1);
          if (rhs.is_zero()) fail("division by zero", at);
          lhs = lhs / rhs;
          break;
        }
        case '^': lhs = power(lhs, op); break;
      }
    }
  }

  Expr power(const Expr& base, const Token& op) {
    Token at = tok_;
    Expr ex = expression(40);
    if (ex.is_const()) {
      if (!ex.value().is_real()) fail("exponent must be real", at);
      const mpq_class q = ex.value().re();
      if (base.is_zero() && sgn(q) < 0) fail("zero to a negative power", op);
      return pow(base, q);
    }
    // Symbolic exponents: u^v = exp(v ln u).
    if (base.is_zero()) fail("zero to a symbolic power", op);
    return exp(ex * ln(base));
  }

  Expr prefix() {
    Token t = tok_;
    switch (t.kind) {
      case Tok::Number: {
        advance();
        return Expr(Scalar::from_string(t.text));
      }
      case Tok::Jet: advance(); return Expr(Symbol::jet(t.jet));
      case Tok::Deriv:
        if (!ctx_.allow_derivations) fail("D[x] and D[y] are only allowed in vector fields", t);
        advance();
        return Expr(t.jet == 0 ? dx_marker() : dy_marker());
      case Tok::Ident: return identifier();
      case Tok::Op:
        if (t.text == "(") {
          advance();
          Expr e = expression(0);
          expect(")");
          return e;
        }
        if (t.text == "-") {
          advance();
          return -expression(30);
        }
        if (t.text == "+") {
          advance();
          return expression(30);
        }
        break;
      case Tok::End: break;
    }
    fail("expected an operand, found " + describe(t), t, {"number", "identifier", "'('", "'-'"});
  }

  std::vector<Expr> call_args() {
    expect("(");
    std::vector<Expr> args;
    if (is_op(")")) {
      advance();
      return args;
    }
    args.push_back(expression(0));
    while (is_op(",")) {
      advance();
      args.push_back(expression(0));
    }
    expect(")");
    return args;
  }

  Expr identifier() {
    Token t = tok_;
    advance();
    const std::string& name = t.text;
    static const std::map<std::string, Expr::Fn> builtins = {
        {"exp", Expr::Fn::Exp}, {"ln", Expr::Fn::Ln}, {"sin", Expr::Fn::Sin},
        {"cos", Expr::Fn::Cos}, {"arctan", Expr::Fn::Arctan}};
    if (auto it = builtins.find(name); it != builtins.end()) {
      if (!is_op("(")) fail(name + " needs an argument in parentheses", tok_, {"'('"});
      auto args = call_args();
      if (args.size() != 1) fail(name + " takes one argument", t);
      if (it->second == Expr::Fn::Ln && args[0].is_zero()) fail("ln 0", t);
      return make_fun(it->second, args[0]);
    }
    if (auto it = ctx_.functions.find(name); it != ctx_.functions.end()) {
      if (!is_op("(")) fail(name + " needs arguments in parentheses", tok_, {"'('"});
      auto args = call_args();
      try {
        return it->second(args);
      } catch (const ParseError&) {
        throw;
      } catch (const std::exception& e) {
        fail(name + ": " + e.what(), t);
      }
    }
    if (auto it = ctx_.constants.find(name); it != ctx_.constants.end()) return it->second;
    if (name == "x") return Expr(Symbol::x());
    if (name == "y") return Expr(Symbol::y());
    if (name == "i") return Expr(Scalar::i());
    if (name == "lambda") return Expr(Symbol::lambda());
    if (name == "D") fail("D must be followed by [x] or [y]", t, {"D[x]", "D[y]"});
    if (is_op("(")) fail("unknown function '" + name + "'", t);
    return Expr(Symbol::param(name));
  }

  std::string_view text_;
  const ParseContext& ctx_;
  TextOrigin origin_;
  std::size_t pos_ = 0;
  Token tok_;
};

}  // namespace

Expr parse_expr(std::string_view text, const ParseContext& ctx, TextOrigin origin) {
  return Parser(text, ctx, origin).parse_all();
}

VectorField parse_vector_field(std::string_view text, const ParseContext& ctx, TextOrigin origin) {
  ParseContext c = ctx;
  c.allow_derivations = true;
  Expr e = parse_expr(text, c, origin);
  const Symbol dx = dx_marker(), dy = dy_marker();
  VectorField v{diff(e, dx), diff(e, dy)};
  SourceSpan whole{origin.offset, origin.offset + text.size(), origin.line, origin.column};
  for (const Expr* part : {&v.xi, &v.eta}) {
    if (depends_on(*part, dx) || depends_on(*part, dy)) {
      throw ParseError("vector field is not linear in D[x], D[y]", whole);
    }
  }
  Expr rest = e - v.xi * Expr(dx) - v.eta * Expr(dy);
  if (!rest.is_zero()) throw ParseError("vector field has a term without D[x] or D[y]", whole, {"D[x]", "D[y]"});
  check_planar(v);
  return v;
}

std::string_view strip_line(std::string_view line, std::size_t* lead) {
  if (auto h = line.find('#'); h != std::string_view::npos) line = line.substr(0, h);
  std::size_t b = 0;
  while (b < line.size() && std::isspace(static_cast<unsigned char>(line[b]))) ++b;
  std::size_t e = line.size();
  while (e > b && std::isspace(static_cast<unsigned char>(line[e - 1]))) --e;
  if (lead) *lead = b;
  return line.substr(b, e - b);
}

namespace {

TextOrigin shifted(TextOrigin o, std::size_t by) {
  o.offset += by;
  o.column += static_cast<int>(by);
  return o;
}

[[noreturn]] void line_error(const std::string& msg, TextOrigin o, std::size_t width,
                             std::set<std::string> expected = {}) {
  throw ParseError(msg, {o.offset, o.offset + std::max<std::size_t>(width, 1), o.line, o.column},
                   std::move(expected));
}

long integer_value(std::string_view text, const ParseContext& ctx, TextOrigin o) {
  Expr e = parse_expr(text, ctx, o);
  if (!e.is_const() || !e.value().is_integer()) line_error("expected an integer", o, text.size());
  return e.value().re().get_num().get_si();
}

}  // namespace

bool parse_realization_line(std::string_view line, TextOrigin origin, Realization& r, const ParseContext& ctx) {
  auto word_end = line.find_first_of(" \t=(");
  std::string_view head = line.substr(0, word_end);

  if (head == "param") {
    std::string_view rest = strip_line(line.substr(5));
    std::size_t name_end = rest.find_first_of(" \t");
    std::string_view name = rest.substr(0, name_end);
    std::size_t name_at = line.find(name, 5);
    if (name.empty() || !ident_start(name[0])) {
      line_error("expected a parameter name", shifted(origin, 5), 1, {"identifier"});
    }
    std::string_view constraint = name_end == std::string_view::npos ? "free" : strip_line(rest.substr(name_end));
    for (const auto& d : r.params) {
      if (d.name == name) line_error("parameter '" + std::string(name) + "' declared twice", shifted(origin, name_at), name.size());
    }
    try {
      r.params.push_back({std::string(name), Constraint::parse(constraint)});
    } catch (const ConstraintError& e) {
      line_error(e.what(), shifted(origin, line.find(constraint)), constraint.size());
    }
    return true;
  }
  if (head == "label") {
    r.label = std::string(strip_line(line.substr(5)));
    return true;
  }
  if (line.size() >= 2 && line[0] == 'e' && strip_line(line.substr(1)).starts_with('=')) {
    // e = field: appended after whatever precedes it
    auto eq = line.find('=');
    r.basis.push_back(parse_vector_field(line.substr(eq + 1), ctx, shifted(origin, eq + 1)));
    return true;
  }
  if (line.size() >= 2 && line[0] == 'e' && (digit(line[1]) || line[1] == '(')) {
    auto eq = line.find('=');
    if (line[1] == '(') {
      // e(k=lo..hi) = field
      auto close = line.find(')');
      if (close == std::string_view::npos) line_error("unterminated series range", origin, line.size(), {"')'"});
      std::string_view range = line.substr(2, close - 2);
      auto inner_eq = range.find('=');
      auto dots = range.find("..");
      if (inner_eq == std::string_view::npos || dots == std::string_view::npos || dots < inner_eq) {
        line_error("expected e(k=lo..hi)", shifted(origin, 2), range.size(), {"k=lo..hi"});
      }
      std::string var(strip_line(range.substr(0, inner_eq)));
      std::string_view lo_text = range.substr(inner_eq + 1, dots - inner_eq - 1);
      std::string_view hi_text = range.substr(dots + 2);
      long lo = integer_value(lo_text, ctx, shifted(origin, 2 + inner_eq + 1));
      long hi = integer_value(hi_text, ctx, shifted(origin, 2 + dots + 2));
      eq = line.find('=', close);
      if (eq == std::string_view::npos) line_error("expected '='", shifted(origin, close + 1), 1, {"'='"});
      std::string_view body = line.substr(eq + 1);
      for (long k = lo; k <= hi; ++k) {
        ParseContext c = ctx;
        c.constants[var] = Expr(k);
        r.basis.push_back(parse_vector_field(body, c, shifted(origin, eq + 1)));
      }
      return true;
    }
    if (eq == std::string_view::npos) line_error("expected '='", shifted(origin, line.size()), 1, {"'='"});
    std::string_view index = strip_line(line.substr(1, eq - 1));
    for (char c : index) {
      if (!digit(c)) line_error("expected e<k> = <field>", origin, eq, {"e<k>"});
    }
    long k = std::stol(std::string(index));
    if (k != static_cast<long>(r.basis.size()) + 1) {
      line_error("basis element e" + std::string(index) + " out of order (expected e" +
                     std::to_string(r.basis.size() + 1) + ")",
                 origin, eq);
    }
    r.basis.push_back(parse_vector_field(line.substr(eq + 1), ctx, shifted(origin, eq + 1)));
    return true;
  }
  return false;
}

Realization parse_realization(std::string_view text, const ParseContext& ctx) {
  Realization r;
  std::size_t offset = 0;
  int line_no = 1;
  while (offset <= text.size()) {
    std::size_t nl = text.find('\n', offset);
    std::string_view raw = text.substr(offset, nl == std::string_view::npos ? std::string_view::npos : nl - offset);
    std::size_t lead = 0;
    std::string_view line = strip_line(raw, &lead);
    if (!line.empty()) {
      TextOrigin o{offset + lead, line_no, static_cast<int>(lead) + 1};
      if (!parse_realization_line(line, o, r, ctx)) {
        line_error("unknown directive", o, line.find_first_of(" \t=") == std::string_view::npos
                                                ? line.size()
                                                : line.find_first_of(" \t="),
                   {"param", "label", "e<k> ="});
      }
    }
    if (nl == std::string_view::npos) break;
    offset = nl + 1;
    ++line_no;
  }
  if (r.basis.empty()) throw ParseError("realization has no basis elements", {text.size(), text.size(), line_no, 1}, {"e1 ="});
  return r;
}

}  // namespace jetinv
