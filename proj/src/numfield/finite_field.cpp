#include "ahom/numfield/finite_field.hpp"

#include "ahom/core/errors.hpp"
#include "ahom/numfield/integer_factor.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace ahom {

namespace {

using Elem = FiniteField::Elem;

constexpr std::uint64_t kTableLimit = 1u << 20;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t checked_power(std::uint64_t p, unsigned e) {
  unsigned __int128 q = 1;
  for (unsigned i = 0; i < e; ++i) {
    q *= p;
    if (q >= (static_cast<unsigned __int128>(1) << 62))
      throw UnsupportedError("finite field order exceeds 2^62");
  }
  return static_cast<std::uint64_t>(q);
}

}  // namespace

FiniteField::FiniteField(std::uint64_t p) : FiniteField(p, {0, 1}) {}

FiniteField::FiniteField(std::uint64_t p, std::vector<Elem> modulus)
    : p_(p), modulus_(std::move(modulus)) {
  if (p < 2 || !is_prime(Integer(p))) throw std::invalid_argument("field characteristic not prime");
  if (modulus_.size() < 2 || modulus_.back() != 1)
    throw std::invalid_argument("field modulus must be monic of degree >= 1");
  e_ = static_cast<unsigned>(modulus_.size() - 1);
  q_ = checked_power(p, e_);
  for (Elem& c : modulus_) c %= p;
  unit_order_factors_ = factor_integer(Integer(q_ - 1));
  if (e_ > 1 && !fq::is_irreducible(FiniteField(p), modulus_))
    throw std::invalid_argument("field modulus is reducible");
  primitive_ = primitive_element();
  if (e_ > 1 && q_ <= kTableLimit) build_tables();
}

FiniteField FiniteField::of_order(std::uint64_t q) {
  auto f = factor_integer(Integer(q));
  if (f.size() != 1) throw std::invalid_argument("field order must be a prime power");
  const auto p = static_cast<std::uint64_t>(f[0].first);
  if (f[0].second == 1) return FiniteField(p);
  return FiniteField(p, fq::smallest_irreducible(p, f[0].second));
}

void FiniteField::build_tables() {
  exp_.assign(q_ - 1, 0);
  log_.assign(q_, 0);
  Elem x = 1;
  for (std::uint64_t i = 0; i + 1 < q_; ++i) {
    exp_[i] = static_cast<std::uint32_t>(x);
    log_[x] = static_cast<std::uint32_t>(i);
    x = mul_digits(x, primitive_);
  }
}

Elem FiniteField::add(Elem a, Elem b) const {
  if (e_ == 1) {
    Elem s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Elem out = 0, scale = 1;
  while (a || b) {
    Elem d = (a % p_ + b % p_) % p_;
    out += d * scale;
    scale *= p_;
    a /= p_;
    b /= p_;
  }
  return out;
}

Elem FiniteField::sub(Elem a, Elem b) const {
  if (e_ == 1) return a >= b ? a - b : a + p_ - b;
  Elem out = 0, scale = 1;
  while (a || b) {
    Elem d = (a % p_ + p_ - b % p_) % p_;
    out += d * scale;
    scale *= p_;
    a /= p_;
    b /= p_;
  }
  return out;
}

Elem FiniteField::mul_digits(Elem a, Elem b) const {
  auto da = digits(a), db = digits(b);
  std::vector<Elem> prod(2 * e_ - 1, 0);
  for (unsigned i = 0; i < e_; ++i)
    for (unsigned j = 0; j < e_; ++j) prod[i + j] = (prod[i + j] + mulmod(da[i], db[j], p_)) % p_;
  for (std::size_t top = prod.size(); top-- > e_;) {
    Elem c = prod[top];
    if (!c) continue;
    for (unsigned i = 0; i <= e_; ++i) {
      std::size_t at = top - e_ + i;
      prod[at] = (prod[at] + p_ - mulmod(c, modulus_[i], p_)) % p_;
    }
  }
  prod.resize(e_);
  return from_digits(prod);
}

Elem FiniteField::mul(Elem a, Elem b) const {
  if (e_ == 1) return mulmod(a, b, p_);
  if (a == 0 || b == 0) return 0;
  if (!exp_.empty()) return exp_[(static_cast<std::uint64_t>(log_[a]) + log_[b]) % (q_ - 1)];
  return mul_digits(a, b);
}

Elem FiniteField::inv(Elem a) const {
  if (a == 0) throw std::domain_error("inverse of zero in finite field");
  if (e_ == 1) {
    auto [g, s, t] = ext_gcd<std::int64_t>(static_cast<std::int64_t>(a), static_cast<std::int64_t>(p_));
    (void)g;
    (void)t;
    return static_cast<Elem>(floor_mod<std::int64_t>(s, static_cast<std::int64_t>(p_)));
  }
  if (!exp_.empty()) return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  return pow(a, Integer(q_ - 2));
}

Elem FiniteField::pow(Elem a, const Integer& n) const {
  if (n < 0) return pow(inv(a), -n);
  if (e_ == 1) return static_cast<Elem>(powmod(Integer(a), n, Integer(p_)));
  if (a == 0) return n == 0 ? 1 : 0;
  if (!exp_.empty()) {
    auto k = static_cast<std::uint64_t>(Integer(n % (q_ - 1)));
    return exp_[static_cast<std::uint64_t>(
        static_cast<unsigned __int128>(log_[a]) * k % (q_ - 1))];
  }
  Elem r = 1, b = a;
  Integer m = n;
  while (m > 0) {
    if (boost::multiprecision::bit_test(m, 0)) r = mul(r, b);
    b = mul(b, b);
    m >>= 1;
  }
  return r;
}

Elem FiniteField::from_integer(const Integer& n) const {
  return static_cast<Elem>(floor_mod(n, Integer(p_)));
}

std::vector<Elem> FiniteField::digits(Elem a) const {
  std::vector<Elem> d(e_, 0);
  for (unsigned i = 0; i < e_; ++i) {
    d[i] = a % p_;
    a /= p_;
  }
  return d;
}

Elem FiniteField::from_digits(const std::vector<Elem>& d) const {
  Elem out = 0;
  for (std::size_t i = d.size(); i-- > 0;) out = out * p_ + d[i] % p_;
  return out;
}

bool FiniteField::is_primitive(Elem a) const {
  if (a == 0) return false;
  for (const auto& [r, k] : unit_order_factors_) {
    (void)k;
    if (pow(a, Integer(q_ - 1) / r) == 1) return false;
  }
  return true;
}

Elem FiniteField::primitive_element() const {
  if (primitive_ != 0) return primitive_;
  for (Elem a = 1; a < q_; ++a)
    if (is_primitive(a)) return a;
  throw std::logic_error("no primitive element");
}

Integer FiniteField::log(Elem h) const {
  if (h == 0) throw std::domain_error("log of zero");
  if (!exp_.empty()) return Integer(log_[h]);
  const Elem g = primitive_element();
  const Integer n(q_ - 1);
  // Pohlig-Hellman: solve modulo each prime power, then combine by CRT.
  Integer x = 0, mod = 1;
  for (const auto& [r, k] : unit_order_factors_) {
    const Integer rk = ipow(r, k);
    const Elem gr = pow(g, n / r);  // order r
    Elem hk = pow(h, n / rk);
    const Elem gk = pow(g, n / rk);
    Integer digit_sum = 0, rpow = 1;
    const auto step = static_cast<std::uint64_t>(isqrt(r)) + 1;
    std::unordered_map<Elem, std::uint64_t> baby;
    Elem cur = 1;
    for (std::uint64_t j = 0; j < step; ++j) {
      baby.emplace(cur, j);
      cur = mul(cur, gr);
    }
    const Elem giant = inv(pow(gr, Integer(step)));
    for (unsigned i = 0; i < k; ++i) {
      // Solve gr^d = (hk * gk^{-digit_sum})^{r^{k-1-i}}.
      Elem t = mul(hk, inv(pow(gk, digit_sum)));
      t = pow(t, ipow(r, k - 1 - i));
      Elem y = t;
      bool found = false;
      for (std::uint64_t gi = 0; gi <= step && !found; ++gi) {
        auto it = baby.find(y);
        if (it != baby.end()) {
          digit_sum += rpow * (Integer(gi) * step + it->second);
          found = true;
        }
        y = mul(y, giant);
      }
      if (!found) throw std::logic_error("discrete log failed");
      rpow *= r;
    }
    // Combine x mod `mod` with digit_sum mod rk.
    Integer inv_m = invmod(mod % rk, rk);
    Integer t = floor_mod(Integer((digit_sum - x) * inv_m), rk);
    x += mod * t;
    mod *= rk;
  }
  return floor_mod(x, n);
}

std::string FiniteField::to_string(Elem a) const {
  if (e_ == 1) return std::to_string(a);
  FqPoly d = digits(a);
  fq::trim(d);
  return fq::to_string(FiniteField(p_), d, "a");
}

namespace fq {

int degree(const FqPoly& f) { return static_cast<int>(f.size()) - 1; }

void trim(FqPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

FqPoly from_integers(const FiniteField& k, const std::vector<Integer>& coeffs) {
  FqPoly out;
  out.reserve(coeffs.size());
  for (const Integer& c : coeffs) out.push_back(k.from_integer(c));
  trim(out);
  return out;
}

FqPoly add(const FiniteField& k, const FqPoly& a, const FqPoly& b) {
  FqPoly out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = k.add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  trim(out);
  return out;
}

FqPoly sub(const FiniteField& k, const FqPoly& a, const FqPoly& b) {
  FqPoly out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = k.sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  trim(out);
  return out;
}

FqPoly scale(const FiniteField& k, const FqPoly& a, Elem c) {
  FqPoly out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = k.mul(a[i], c);
  trim(out);
  return out;
}

FqPoly mul(const FiniteField& k, const FqPoly& a, const FqPoly& b) {
  if (a.empty() || b.empty()) return {};
  FqPoly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = k.add(out[i + j], k.mul(a[i], b[j]));
  }
  trim(out);
  return out;
}

std::pair<FqPoly, FqPoly> divmod(const FiniteField& k, const FqPoly& a, const FqPoly& b) {
  if (b.empty()) throw std::domain_error("polynomial division by zero");
  FqPoly r = a;
  trim(r);
  if (r.size() < b.size()) return {{}, r};
  FqPoly q(r.size() - b.size() + 1, 0);
  const Elem lead_inv = k.inv(b.back());
  for (std::size_t top = r.size() - 1;; --top) {
    Elem c = k.mul(r[top], lead_inv);
    const std::size_t shift = top - (b.size() - 1);
    q[shift] = c;
    if (c)
      for (std::size_t i = 0; i < b.size(); ++i) r[shift + i] = k.sub(r[shift + i], k.mul(c, b[i]));
    if (top == b.size() - 1) break;
  }
  trim(q);
  trim(r);
  return {q, r};
}

FqPoly mod(const FiniteField& k, const FqPoly& a, const FqPoly& b) { return divmod(k, a, b).second; }
FqPoly quo(const FiniteField& k, const FqPoly& a, const FqPoly& b) { return divmod(k, a, b).first; }

FqPoly monic(const FiniteField& k, const FqPoly& a) {
  if (a.empty()) return a;
  return scale(k, a, k.inv(a.back()));
}

FqPoly gcd(const FiniteField& k, const FqPoly& a0, const FqPoly& b0) {
  FqPoly a = a0, b = b0;
  trim(a);
  trim(b);
  while (!b.empty()) {
    FqPoly r = mod(k, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(k, a);
}

FqPoly powmod(const FiniteField& k, const FqPoly& base, const Integer& n, const FqPoly& m) {
  FqPoly result{1};
  result = mod(k, result, m);
  FqPoly b = mod(k, base, m);
  if (n == 0) return result;
  const auto bits = boost::multiprecision::msb(n);
  for (std::size_t i = bits + 1; i-- > 0;) {
    result = mod(k, mul(k, result, result), m);
    if (boost::multiprecision::bit_test(n, static_cast<unsigned>(i))) result = mod(k, mul(k, result, b), m);
  }
  return result;
}

FqPoly derivative(const FiniteField& k, const FqPoly& f) {
  FqPoly out;
  for (std::size_t i = 1; i < f.size(); ++i) out.push_back(k.mul(f[i], k.from_integer(Integer(i))));
  trim(out);
  return out;
}

Elem eval(const FiniteField& k, const FqPoly& f, Elem x) {
  Elem r = 0;
  for (std::size_t i = f.size(); i-- > 0;) r = k.add(k.mul(r, x), f[i]);
  return r;
}

bool is_irreducible(const FiniteField& k, const FqPoly& f0) {
  FqPoly f = monic(k, f0);
  const int n = degree(f);
  if (n < 1) return false;
  if (n == 1) return true;
  const Integer q(k.order());
  const FqPoly x{0, 1};
  // x^{q^n} == x mod f and gcd(x^{q^{n/r}} - x, f) == 1 for primes r | n.
  if (powmod(k, x, ipow(q, static_cast<unsigned>(n)), f) != mod(k, x, f)) return false;
  for (const auto& [r, e] : factor_integer(Integer(n))) {
    (void)e;
    FqPoly h = powmod(k, x, ipow(q, static_cast<unsigned>(n / static_cast<int>(r))), f);
    if (degree(gcd(k, sub(k, h, x), f)) != 0) return false;
  }
  return true;
}

std::string to_string(const FiniteField& k, const FqPoly& f, const std::string& var) {
  if (f.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = f.size(); i-- > 0;) {
    if (!f[i]) continue;
    if (!first) os << "+";
    first = false;
    const std::string c = k.degree() == 1 ? std::to_string(f[i]) : "(" + k.to_string(f[i]) + ")";
    if (i == 0) {
      os << c;
      continue;
    }
    if (f[i] != 1) os << c;
    os << var;
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

namespace {

// p-th root of a polynomial whose derivative vanishes: coefficients at
// multiples of p, each mapped by the inverse Frobenius a -> a^{q/p}.
FqPoly pth_root(const FiniteField& k, const FqPoly& f) {
  const std::uint64_t p = k.characteristic();
  const Integer root_exp = Integer(k.order()) / p;
  FqPoly out;
  for (std::size_t i = 0; i < f.size(); i += p) out.push_back(k.pow(f[i], root_exp));
  trim(out);
  return out;
}

void squarefree(const FiniteField& k, const FqPoly& f, int mult, std::vector<std::pair<FqPoly, int>>& out) {
  FqPoly c = gcd(k, f, derivative(k, f));
  FqPoly w = quo(k, f, c);
  int i = 1;
  while (degree(w) > 0) {
    FqPoly y = gcd(k, w, c);
    FqPoly fac = quo(k, w, y);
    if (degree(fac) > 0) out.emplace_back(monic(k, fac), i * mult);
    w = y;
    c = quo(k, c, y);
    ++i;
  }
  if (degree(c) > 0)
    squarefree(k, pth_root(k, c), mult * static_cast<int>(k.characteristic()), out);
}

void equal_degree(const FiniteField& k, const FqPoly& f, int d, std::mt19937_64& rng,
                  std::vector<FqPoly>& out) {
  const int n = degree(f);
  if (n == d) {
    out.push_back(f);
    return;
  }
  const Integer qd = ipow(Integer(k.order()), static_cast<unsigned>(d));
  std::uniform_int_distribution<Elem> coeff(0, k.order() - 1);
  for (;;) {
    FqPoly a(static_cast<std::size_t>(n), 0);
    for (Elem& c : a) c = coeff(rng);
    trim(a);
    if (degree(a) < 1) continue;
    FqPoly b;
    if (k.characteristic() == 2) {
      // Trace map a + a^2 + ... + a^{2^{m-1}} with q^d = 2^m.
      const auto m = static_cast<unsigned>(boost::multiprecision::msb(qd));
      FqPoly t = mod(k, a, f), acc = t;
      for (unsigned i = 1; i < m; ++i) {
        t = mod(k, mul(k, t, t), f);
        acc = add(k, acc, t);
      }
      b = acc;
    } else {
      b = sub(k, powmod(k, a, (qd - 1) / 2, f), FqPoly{1});
    }
    FqPoly g = gcd(k, b, f);
    if (degree(g) > 0 && degree(g) < n) {
      equal_degree(k, g, d, rng, out);
      equal_degree(k, quo(k, f, g), d, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<std::pair<FqPoly, int>> factor(const FiniteField& k, const FqPoly& f0) {
  FqPoly f = f0;
  trim(f);
  if (f.empty()) throw std::invalid_argument("factor: zero polynomial");
  std::uint64_t seed = k.order() * 0x9E3779B97F4A7C15ULL;
  for (Elem c : f) seed = seed * 1000003ULL ^ c;
  std::mt19937_64 rng(seed);

  std::vector<std::pair<FqPoly, int>> sqf, out;
  squarefree(k, monic(k, f), 1, sqf);
  const FqPoly x{0, 1};
  for (const auto& [g0, mult] : sqf) {
    FqPoly g = g0;
    FqPoly h = mod(k, x, g);
    for (int d = 1; 2 * d <= degree(g); ++d) {
      h = powmod(k, h, Integer(k.order()), g);
      FqPoly part = gcd(k, sub(k, h, x), g);
      if (degree(part) > 0) {
        std::vector<FqPoly> pieces;
        equal_degree(k, part, d, rng, pieces);
        for (auto& piece : pieces) out.emplace_back(std::move(piece), mult);
        g = quo(k, g, part);
        h = mod(k, h, g);
      }
    }
    if (degree(g) > 0) out.emplace_back(monic(k, g), mult);
  }
  // Merge repeated factors (possible across squarefree layers) and sort.
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
    return a.first < b.first;
  });
  std::vector<std::pair<FqPoly, int>> merged;
  for (auto& fe : out) {
    if (!merged.empty() && merged.back().first == fe.first)
      merged.back().second += fe.second;
    else
      merged.push_back(std::move(fe));
  }
  return merged;
}

FqPoly smallest_irreducible(std::uint64_t p, unsigned degree) {
  const FiniteField k(p);
  const std::uint64_t count = checked_power(p, degree);
  for (std::uint64_t n = 0; n < count; ++n) {
    FqPoly f(degree + 1, 0);
    std::uint64_t m = n;
    for (unsigned i = 0; i < degree; ++i) {
      f[i] = m % p;
      m /= p;
    }
    f[degree] = 1;
    if (is_irreducible(k, f)) return f;
  }
  throw std::logic_error("no irreducible polynomial found");
}

}  // namespace fq

}  // namespace ahom
