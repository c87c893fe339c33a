#include "vex/expr.hpp"

#include <cctype>
#include <cmath>
#include <limits>

namespace vex {

namespace {

using Fn = std::function<double(const Point&)>;

class Parser {
 public:
  explicit Parser(const std::string& src) : src_(src) {}

  Fn parse() {
    Fn e = expr();
    skip_ws();
    if (pos_ != src_.size()) fail("trailing input");
    return e;
  }

 private:
  const std::string& src_;
  size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("expression error at position " + std::to_string(pos_) +
                     ": " + what + " in '" + src_ + "'");
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(unsigned(src_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  bool eat_word(const std::string& w) {
    skip_ws();
    if (src_.compare(pos_, w.size(), w) == 0) {
      const size_t end = pos_ + w.size();
      if (end == src_.size() || !(std::isalnum(unsigned(src_[end])) ||
                                  src_[end] == '_')) {
        pos_ = end;
        return true;
      }
    }
    return false;
  }

  Fn expr() {
    Fn lhs = term();
    for (;;) {
      if (eat('+')) {
        Fn rhs = term();
        lhs = [lhs, rhs](const Point& p) { return lhs(p) + rhs(p); };
      } else if (eat('-')) {
        Fn rhs = term();
        lhs = [lhs, rhs](const Point& p) { return lhs(p) - rhs(p); };
      } else {
        return lhs;
      }
    }
  }

  Fn term() {
    Fn lhs = unary();
    for (;;) {
      if (eat('*')) {
        Fn rhs = unary();
        lhs = [lhs, rhs](const Point& p) { return lhs(p) * rhs(p); };
      } else if (eat('/')) {
        Fn rhs = unary();
        lhs = [lhs, rhs](const Point& p) { return lhs(p) / rhs(p); };
      } else {
        return lhs;
      }
    }
  }

  Fn unary() {
    if (eat('-')) {
      Fn e = unary();
      return [e](const Point& p) { return -e(p); };
    }
    return power();
  }

  Fn power() {
    Fn base = atom();
    if (eat('^')) {
      Fn ex = unary();
      return [base, ex](const Point& p) { return std::pow(base(p), ex(p)); };
    }
    return base;
  }

  Fn call1(double (*f)(double)) {
    expect('(');
    Fn a = expr();
    expect(')');
    return [f, a](const Point& p) { return f(a(p)); };
  }

  Fn call2(const std::function<double(double, double)>& f) {
    expect('(');
    Fn a = expr();
    expect(',');
    Fn b = expr();
    expect(')');
    return [f, a, b](const Point& p) { return f(a(p), b(p)); };
  }

  Fn ite() {
    expect('(');
    Fn a = expr();
    skip_ws();
    bool ge = false, gt = false, le = false, lt = false;
    if (eat('<')) {
      le = eat('=');
      lt = !le;
    } else if (eat('>')) {
      ge = eat('=');
      gt = !ge;
    } else {
      fail("expected comparison in ite(...)");
    }
    Fn b = expr();
    expect(',');
    Fn then_e = expr();
    expect(',');
    Fn else_e = expr();
    expect(')');
    return [=](const Point& p) {
      const double u = a(p), v = b(p);
      const bool cond = lt ? u < v : le ? u <= v : gt ? u > v : u >= v;
      (void)ge;
      return cond ? then_e(p) : else_e(p);
    };
  }

  Fn atom() {
    skip_ws();
    if (pos_ >= src_.size()) fail("unexpected end of input");
    const char c = src_[pos_];
    if (std::isdigit(unsigned(c)) || c == '.') {
      size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(src_.substr(pos_), &used);
      } catch (const std::exception&) {
        fail("bad number");
      }
      pos_ += used;
      return [v](const Point&) { return v; };
    }
    if (c == '(') {
      ++pos_;
      Fn e = expr();
      expect(')');
      return e;
    }
    if (c == '|') {
      ++pos_;
      if (!eat_word("x")) fail("expected '|x|'");
      expect('|');
      return [](const Point& p) { return p.norm(); };
    }
    if (eat_word("ite")) return ite();
    if (eat_word("log")) return call1(+[](double v) { return std::log(v); });
    if (eat_word("exp")) return call1(+[](double v) { return std::exp(v); });
    if (eat_word("abs")) return call1(+[](double v) { return std::abs(v); });
    if (eat_word("sqrt")) return call1(+[](double v) { return std::sqrt(v); });
    if (eat_word("min"))
      return call2([](double a, double b) { return std::min(a, b); });
    if (eat_word("max"))
      return call2([](double a, double b) { return std::max(a, b); });
    if (eat_word("inf"))
      return [](const Point&) { return std::numeric_limits<double>::infinity(); };
    if (eat_word("pi")) return [](const Point&) { return M_PI; };
    if (eat_word("e")) return [](const Point&) { return std::exp(1.0); };
    if (eat_word("x")) return [](const Point& p) { return p[0]; };
    if (eat_word("y")) return [](const Point& p) { return p[1]; };
    if (eat_word("r")) return [](const Point& p) { return p.norm(); };
    fail("unexpected token");
  }
};

}  // namespace

std::function<double(const Point&)> parse_expr(const std::string& src) {
  return Parser(src).parse();
}

}  // namespace vex
