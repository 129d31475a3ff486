#include "ucnet/expr.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>

#include "ucnet/error.hpp"

namespace ucnet {

namespace {

bool is_number(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

// Appends " + k*name" / " - k*name" to s, or starts it.
void append_term(std::string& s, double k, const std::string& name) {
  if (std::abs(k) < 1e-12) return;
  const bool neg = k < 0;
  const double a = std::abs(k);
  std::string body = name.empty() ? fmt(a) : (std::abs(a - 1) < 1e-12 ? name : fmt(a) + "*" + name);
  if (s.empty())
    s = neg ? "-" + body : body;
  else
    s += (neg ? " - " : " + ") + body;
}

class Parser {
 public:
  explicit Parser(const std::string& t) : text_(t) {}

  AffineExpr expression() {
    AffineExpr e;
    skip();
    double sign = 1;
    if (peek() == '+' || peek() == '-') sign = get() == '-' ? -1 : 1;
    e += term() * sign;
    while (true) {
      skip();
      if (peek() == '+' || peek() == '-') {
        const double s = get() == '-' ? -1 : 1;
        e += term() * s;
      } else {
        break;
      }
    }
    return e;
  }

  bool done() {
    skip();
    return pos_ >= text_.size();
  }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  char get() { return text_[pos_++]; }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorCode::ParseError, why + " at position " + std::to_string(pos_) + " in '" + text_ + "'");
  }

 private:
  AffineExpr term() {
    skip();
    double coef = 1;
    if (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.') {
      coef = number();
      skip();
      if (peek() == '*') {
        get();
        skip();
      } else {
        AffineExpr e;
        e.constant = coef;
        return e;
      }
    }
    return symbol() * coef;
  }

  double number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.' ||
                                   text_[pos_] == 'e' || text_[pos_] == 'E' ||
                                   ((text_[pos_] == '-' || text_[pos_] == '+') && pos_ > start &&
                                    (text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E'))))
      ++pos_;
    try {
      std::size_t used = 0;
      const double v = std::stod(text_.substr(start, pos_ - start), &used);
      if (used != pos_ - start) fail("bad number");
      return v;
    } catch (const std::logic_error&) {
      fail("bad number");
    }
  }

  AffineExpr symbol() {
    AffineExpr e;
    const std::size_t start = pos_;
    if (peek() == 'C') {
      get();
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      if (pos_ == start + 1) fail("capacity symbol needs an edge id");
      e.add_cap(text_.substr(start + 1, pos_ - start - 1), 1.0);
      return e;
    }
    while (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '|'))
      ++pos_;
    const std::string s = text_.substr(start, pos_ - start);
    if (s == "Hx") e.hx = 1;
    else if (s == "Hy") e.hy = 1;
    else if (s == "Hxy") e.hxy = 1;
    else if (s == "Hx|y") { e.hxy = 1; e.hy = -1; }
    else if (s == "Hy|x") { e.hxy = 1; e.hx = -1; }
    else if (s == "Ixy") { e.hx = 1; e.hy = 1; e.hxy = -1; }
    else fail("unknown symbol '" + s + "'");
    return e;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace

bool natural_less(const std::string& a, const std::string& b) {
  const bool na = is_number(a), nb = is_number(b);
  if (na && nb) return a.size() != b.size() ? a.size() < b.size() : a < b;
  if (na != nb) return na;
  return a < b;
}

AffineExpr& AffineExpr::add_cap(const std::string& edge, double coef) {
  auto it = std::find_if(caps.begin(), caps.end(), [&](const auto& p) { return p.first == edge; });
  if (it != caps.end()) {
    it->second += coef;
    if (std::abs(it->second) < 1e-12) caps.erase(it);
  } else if (std::abs(coef) >= 1e-12) {
    auto pos = std::find_if(caps.begin(), caps.end(), [&](const auto& p) { return natural_less(edge, p.first); });
    caps.insert(pos, {edge, coef});
  }
  return *this;
}

AffineExpr& AffineExpr::operator+=(const AffineExpr& o) {
  for (const auto& [e, k] : o.caps) add_cap(e, k);
  hx += o.hx;
  hy += o.hy;
  hxy += o.hxy;
  constant += o.constant;
  return *this;
}

AffineExpr AffineExpr::operator*(double k) const {
  AffineExpr r;
  for (const auto& [e, c] : caps) r.add_cap(e, c * k);
  r.hx = hx * k;
  r.hy = hy * k;
  r.hxy = hxy * k;
  r.constant = constant * k;
  return r;
}

double AffineExpr::cap_coef(const std::string& edge) const {
  for (const auto& [e, k] : caps)
    if (e == edge) return k;
  return 0;
}

std::string measure_terms(double hx, double hy, double hxy) {
  struct Named {
    double a, b, c;
    const char* name;
  };
  static const Named names[] = {{1, 0, 0, "H(X)"},     {0, 1, 0, "H(Y)"},      {0, 0, 1, "H(X,Y)"},
                                {-1, 0, 1, "H(Y|X)"},  {0, -1, 1, "H(X|Y)"},   {1, 1, -1, "I(X;Y)"}};
  std::string s;
  if (std::abs(hx) < 1e-12 && std::abs(hy) < 1e-12 && std::abs(hxy) < 1e-12) return s;
  // Single named quantity.
  for (const auto& n : names) {
    double k = 0;
    const double ref = n.a != 0 ? hx / n.a : (n.b != 0 ? hy / n.b : hxy / n.c);
    k = ref;
    if (std::abs(k * n.a - hx) < 1e-12 && std::abs(k * n.b - hy) < 1e-12 && std::abs(k * n.c - hxy) < 1e-12) {
      append_term(s, k, n.name);
      return s;
    }
  }
  // Two named quantities with the second drawn from the conditional/mutual set.
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j) {
      const auto& p = names[i];
      const auto& q = names[j];
      // Solve k1 p + k2 q = (hx, hy, hxy) by least squares on the 3x2 system.
      const double pp = p.a * p.a + p.b * p.b + p.c * p.c, qq = q.a * q.a + q.b * q.b + q.c * q.c;
      const double pq = p.a * q.a + p.b * q.b + p.c * q.c;
      const double pv = p.a * hx + p.b * hy + p.c * hxy, qv = q.a * hx + q.b * hy + q.c * hxy;
      const double det = pp * qq - pq * pq;
      if (std::abs(det) < 1e-12) continue;
      const double k1 = (pv * qq - qv * pq) / det, k2 = (qv * pp - pv * pq) / det;
      if (std::abs(k1 * p.a + k2 * q.a - hx) < 1e-12 && std::abs(k1 * p.b + k2 * q.b - hy) < 1e-12 &&
          std::abs(k1 * p.c + k2 * q.c - hxy) < 1e-12 && std::abs(k1 - std::round(k1)) < 1e-12 &&
          std::abs(k2 - std::round(k2)) < 1e-12) {
        append_term(s, k1, p.name);
        append_term(s, k2, q.name);
        return s;
      }
    }
  append_term(s, hx, "H(X)");
  append_term(s, hy, "H(Y)");
  append_term(s, hxy, "H(X,Y)");
  return s;
}

std::string AffineExpr::to_string() const {
  std::string s;
  for (const auto& [e, k] : caps) append_term(s, k, "C" + e);
  const std::string m = measure_terms(hx, hy, hxy);
  if (!m.empty()) {
    if (s.empty())
      s = m;
    else if (m[0] == '-')
      s += " - " + m.substr(1);
    else
      s += " + " + m;
  }
  append_term(s, constant, "");
  return s.empty() ? "0" : s;
}

AffineExpr parse_affine(const std::string& text) {
  Parser p(text);
  if (p.done()) p.fail("empty expression");
  AffineExpr e = p.expression();
  if (!p.done()) p.fail("unexpected character");
  return e;
}

AffineExpr parse_tie(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || text.find('=', eq + 1) != std::string::npos)
    throw Error(ErrorCode::ParseError, "tie must contain exactly one '=': '" + text + "'");
  AffineExpr lhs = parse_affine(text.substr(0, eq));
  lhs += parse_affine(text.substr(eq + 1)) * -1.0;
  return lhs;
}

}  // namespace ucnet
