#include "ahom/numfield/polynomial.hpp"

#include "ahom/abgrp/normal_form.hpp"
#include "ahom/core/errors.hpp"
#include "ahom/numfield/integer_factor.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <complex>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ahom::zpoly {

int degree(const ZPoly& f) { return static_cast<int>(f.size()) - 1; }

void trim(ZPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

bool is_monic(const ZPoly& f) { return !f.empty() && f.back() == 1; }

Integer content(const ZPoly& f) {
  Integer g = 0;
  for (const Integer& c : f) g = gcd_of(g, c);
  return g;
}

ZPoly primitive_part(const ZPoly& f) {
  Integer c = content(f);
  if (c == 0) return f;
  if (f.back() < 0) c = -c;
  ZPoly out = f;
  for (Integer& x : out) x /= c;
  return out;
}

Integer eval(const ZPoly& f, const Integer& x) {
  Integer r = 0;
  for (std::size_t i = f.size(); i-- > 0;) r = r * x + f[i];
  return r;
}

ZPoly add(const ZPoly& a, const ZPoly& b) {
  ZPoly out(std::max(a.size(), b.size()), Integer(0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  trim(out);
  return out;
}

ZPoly sub(const ZPoly& a, const ZPoly& b) {
  ZPoly out(std::max(a.size(), b.size()), Integer(0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  trim(out);
  return out;
}

ZPoly mul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly out(a.size() + b.size() - 1, Integer(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  trim(out);
  return out;
}

ZPoly exact_quotient(const ZPoly& a, const ZPoly& b, bool& ok) {
  ok = false;
  if (b.empty()) return {};
  ZPoly r = a;
  trim(r);
  if (r.empty()) {
    ok = true;
    return {};
  }
  if (r.size() < b.size()) return {};
  ZPoly q(r.size() - b.size() + 1, Integer(0));
  for (std::size_t top = r.size() - 1;; --top) {
    if (r[top] % b.back() != 0) return {};
    Integer c = r[top] / b.back();
    const std::size_t shift = top - (b.size() - 1);
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) r[shift + i] -= c * b[i];
    if (top == b.size() - 1) break;
  }
  trim(r);
  if (!r.empty()) return {};
  ok = true;
  trim(q);
  return q;
}

ZPoly derivative(const ZPoly& f) {
  ZPoly out;
  for (std::size_t i = 1; i < f.size(); ++i) out.push_back(f[i] * Integer(i));
  trim(out);
  return out;
}

ZPoly parse(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw std::invalid_argument("empty polynomial");
  ZPoly out;
  std::string var;
  std::size_t i = 0;
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("malformed polynomial '" + text + "': " + why);
  };
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (i != 0) {
      fail("expected + or -");
    }
    std::string digits;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) digits += s[i++];
    if (i < s.size() && s[i] == '*') {
      if (digits.empty()) fail("dangling *");
      ++i;
    }
    Integer coeff = digits.empty() ? Integer(1) : Integer(digits);
    std::size_t exp = 0;
    if (i < s.size() && std::isalpha(static_cast<unsigned char>(s[i]))) {
      std::string name;
      while (i < s.size() && std::isalpha(static_cast<unsigned char>(s[i]))) name += s[i++];
      if (!var.empty() && var != name) fail("mixed variables");
      var = name;
      exp = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        std::string e;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) e += s[i++];
        if (e.empty()) fail("missing exponent");
        exp = std::stoul(e);
      }
    } else if (digits.empty()) {
      fail("expected a term");
    }
    if (out.size() <= exp) out.resize(exp + 1, Integer(0));
    out[exp] += sign * coeff;
  }
  trim(out);
  if (out.empty()) fail("zero polynomial");
  return out;
}

std::string to_string(const ZPoly& f, const std::string& var) {
  if (f.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = f.size(); i-- > 0;) {
    if (f[i] == 0) continue;
    Integer c = f[i];
    if (c < 0) {
      os << "-";
      c = -c;
    } else if (!first) {
      os << "+";
    }
    first = false;
    if (i == 0 || c != 1) os << c;
    if (i > 0) os << var;
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

FqPoly reduce(const ZPoly& f, const FiniteField& k) { return fq::from_integers(k, f); }

ZPoly lift(const FqPoly& f) {
  ZPoly out;
  for (auto c : f) out.emplace_back(c);
  return out;
}

std::vector<Integer> power_sums(const ZPoly& f, int count) {
  const int n = degree(f);
  // f = x^n + a_{n-1} x^{n-1} + ... ; e_k = (-1)^k a_{n-k}.
  std::vector<Integer> s(static_cast<std::size_t>(count), Integer(0));
  if (count > 0) s[0] = n;
  for (int k = 1; k < count; ++k) {
    Integer acc = 0;
    for (int i = 1; i <= std::min(k, n); ++i) {
      if (i < k) acc += f[static_cast<std::size_t>(n - i)] * s[static_cast<std::size_t>(k - i)];
    }
    if (k <= n) acc += Integer(k) * f[static_cast<std::size_t>(n - k)];
    s[static_cast<std::size_t>(k)] = -acc;
  }
  return s;
}

Integer discriminant(const ZPoly& f) {
  if (!is_monic(f)) throw std::invalid_argument("discriminant: polynomial not monic");
  const int n = degree(f);
  auto s = power_sums(f, 2 * n - 1);
  IntMatrix t(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t(i, j) = s[static_cast<std::size_t>(i + j)];
  return determinant(t);
}

namespace {

using QPoly = std::vector<Rational>;

void trim_q(QPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

QPoly rem_q(QPoly a, const QPoly& b) {
  trim_q(a);
  while (a.size() >= b.size() && !a.empty()) {
    Rational c = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
    a.pop_back();
    trim_q(a);
  }
  return a;
}

int sign_at_infinity(const QPoly& f, bool positive) {
  const Rational& lead = f.back();
  int s = lead > 0 ? 1 : -1;
  if (!positive && (f.size() - 1) % 2 == 1) s = -s;
  return s;
}

std::vector<std::complex<long double>> numeric_roots(const ZPoly& f) {
  using C = std::complex<long double>;
  const int n = degree(f);
  std::vector<C> roots(static_cast<std::size_t>(n));
  long double radius = 1;
  for (const Integer& c : f) radius = std::max(radius, 1 + std::fabs(c.convert_to<long double>()));
  for (int i = 0; i < n; ++i)
    roots[static_cast<std::size_t>(i)] = std::polar(radius * 0.9L, 0.4L + 2 * 3.14159265358979L * i / n);
  auto eval_c = [&](C z) {
    C r = 0;
    for (std::size_t i = f.size(); i-- > 0;) r = r * z + C(f[i].convert_to<long double>());
    return r;
  };
  for (int iter = 0; iter < 2000; ++iter) {
    long double delta = 0;
    for (int i = 0; i < n; ++i) {
      C denom = 1;
      for (int j = 0; j < n; ++j)
        if (j != i) denom *= roots[static_cast<std::size_t>(i)] - roots[static_cast<std::size_t>(j)];
      C step = eval_c(roots[static_cast<std::size_t>(i)]) / denom;
      roots[static_cast<std::size_t>(i)] -= step;
      delta = std::max(delta, std::abs(step));
    }
    if (delta < 1e-16L) break;
  }
  return roots;
}

}  // namespace

int count_real_roots(const ZPoly& f) {
  std::vector<QPoly> seq;
  QPoly a(f.begin(), f.end()), b;
  for (const Integer& c : derivative(f)) b.emplace_back(c);
  trim_q(a);
  seq.push_back(a);
  if (b.empty()) return 0;
  seq.push_back(b);
  for (;;) {
    QPoly r = rem_q(seq[seq.size() - 2], seq.back());
    if (r.empty()) break;
    for (Rational& c : r) c = -c;
    seq.push_back(r);
  }
  auto changes = [&](bool positive) {
    int count = 0, last = 0;
    for (const QPoly& p : seq) {
      int s = sign_at_infinity(p, positive);
      if (last != 0 && s != last) ++count;
      last = s;
    }
    return count;
  };
  return changes(false) - changes(true);
}

bool is_irreducible(const ZPoly& f0) {
  ZPoly f = f0;
  trim(f);
  const int n = degree(f);
  if (n < 1) return false;
  if (n == 1) return true;
  if (!is_monic(f)) throw std::invalid_argument("irreducibility test expects a monic polynomial");
  if (n > 12) throw UnsupportedError("irreducibility test limited to degree <= 12");
  const Integer disc = discriminant(f);
  if (disc == 0) return false;  // repeated factor
  if (n == 2) return !is_square(f[1] * f[1] - 4 * f[0]);

  // Possible degrees of a rational factor: subset sums of mod-p factor degrees.
  std::set<int> possible;
  for (int d = 1; d < n; ++d) possible.insert(d);
  int tried = 0;
  for (std::uint64_t p : primes_up_to(400)) {
    if (disc % p == 0) continue;
    FiniteField k(p);
    std::vector<bool> reach(static_cast<std::size_t>(n + 1), false);
    reach[0] = true;
    for (const auto& [g, e] : fq::factor(k, reduce(f, k))) {
      (void)e;
      const int dg = fq::degree(g);
      for (int s = n; s >= dg; --s)
        if (reach[static_cast<std::size_t>(s - dg)]) reach[static_cast<std::size_t>(s)] = true;
    }
    for (auto it = possible.begin(); it != possible.end();)
      it = reach[static_cast<std::size_t>(*it)] ? std::next(it) : possible.erase(it);
    if (possible.empty()) return true;
    if (++tried >= 12) break;
  }

  // Numeric fallback: any factor of degree d is a product of d roots.
  const auto roots = numeric_roots(f);
  for (int d : possible) {
    if (d > n / 2) continue;
    std::vector<int> idx(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) idx[static_cast<std::size_t>(i)] = i;
    for (;;) {
      std::vector<std::complex<long double>> poly{1};
      for (int i : idx) {
        std::vector<std::complex<long double>> next(poly.size() + 1, 0);
        for (std::size_t j = 0; j < poly.size(); ++j) {
          next[j + 1] += poly[j];
          next[j] -= poly[j] * roots[static_cast<std::size_t>(i)];
        }
        poly = next;
      }
      ZPoly cand;
      bool near_integral = true;
      for (const auto& c : poly) {
        long double r = std::round(c.real());
        if (std::fabs(c.imag()) > 1e-6L || std::fabs(c.real() - r) > 1e-6L) near_integral = false;
        cand.emplace_back(static_cast<long long>(r));
      }
      if (near_integral) {
        bool ok = false;
        exact_quotient(f, cand, ok);
        if (ok) return false;
      }
      int pos = d - 1;
      while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - d + pos) --pos;
      if (pos < 0) break;
      ++idx[static_cast<std::size_t>(pos)];
      for (int i = pos + 1; i < d; ++i) idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
    }
  }
  return true;
}

}  // namespace ahom::zpoly
