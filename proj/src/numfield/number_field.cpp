#include "ahom/numfield/number_field.hpp"

#include "ahom/core/errors.hpp"
#include "ahom/numfield/integer_factor.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace ahom {

namespace {

// Some nonzero vector of the kernel of m mod p, entries in [0, p); empty when
// the kernel is trivial.
IntVector kernel_vector_mod_p(const IntMatrix& m, const Integer& p) {
  const Index rows = m.rows(), cols = m.cols();
  IntMatrix a(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) a(i, j) = floor_mod(Integer(m(i, j)), p);
  std::vector<Index> pivot_col;
  Index r = 0;
  for (Index c = 0; c < cols && r < rows; ++c) {
    Index piv = r;
    while (piv < rows && a(piv, c) == 0) ++piv;
    if (piv == rows) continue;
    a.row(r).swap(a.row(piv));
    const Integer inv = invmod(a(r, c), p);
    for (Index j = 0; j < cols; ++j) a(r, j) = a(r, j) * inv % p;
    for (Index i = 0; i < rows; ++i) {
      if (i == r || a(i, c) == 0) continue;
      const Integer factor = a(i, c);
      for (Index j = 0; j < cols; ++j) a(i, j) = floor_mod(Integer(a(i, j) - factor * a(r, j)), p);
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (Index free = 0; free < cols; ++free) {
    if (std::find(pivot_col.begin(), pivot_col.end(), free) != pivot_col.end()) continue;
    IntVector v = IntVector::Zero(cols);
    v(free) = 1;
    for (std::size_t k = 0; k < pivot_col.size(); ++k)
      v(pivot_col[k]) = floor_mod(Integer(-a(static_cast<Index>(k), free)), p);
    return v;
  }
  return {};
}

bool lex_less(const IntVector& a, const IntVector& b) {
  for (Index i = 0; i < a.size(); ++i)
    if (a(i) != b(i)) return a(i) < b(i);
  return false;
}

RatVector solve_rational(RatMatrix a, RatVector b) {
  const Index n = a.rows();
  for (Index c = 0; c < n; ++c) {
    Index piv = c;
    while (piv < n && a(piv, c) == 0) ++piv;
    if (piv == n) throw std::domain_error("singular system");
    a.row(c).swap(a.row(piv));
    std::swap(b(c), b(piv));
    for (Index i = 0; i < n; ++i) {
      if (i == c || a(i, c) == 0) continue;
      Rational f = a(i, c) / a(c, c);
      a.row(i) -= f * a.row(c);
      b(i) -= f * b(c);
    }
  }
  RatVector x(n);
  for (Index i = 0; i < n; ++i) x(i) = b(i) / a(i, i);
  return x;
}

Integer lcm_of(const Integer& a, const Integer& b) { return a / gcd_of(a, b) * b; }

}  // namespace

std::string PrimeIdeal::label() const {
  return above == 1 ? p.str() : p.str() + ":" + std::to_string(index);
}

NumberField::NumberField() : NumberField(ZPoly{Integer(0), Integer(1)}) {}

NumberField::NumberField(const ZPoly& defining_poly) {
  auto d = std::make_shared<Data>();
  d->defining = defining_poly;
  zpoly::trim(d->defining);
  if (!zpoly::is_monic(d->defining))
    throw UnsupportedError("defining polynomial must be monic with integer coefficients");
  const int n = zpoly::degree(d->defining);
  if (n < 1) throw std::invalid_argument("defining polynomial must have degree >= 1");
  if (n > 8) throw UnsupportedError("fields of degree > 8 are not supported");
  if (!zpoly::is_irreducible(d->defining))
    throw std::invalid_argument("defining polynomial " + zpoly::to_string(d->defining) +
                                " is reducible over Q");
  d->n = n;
  d->basis = RatMatrix::Identity(n, n);
  if (n == 1) {
    // Q: w = 0 is the order generator; the root a of x - c is the integer c.
    d->order = ZPoly{Integer(0), Integer(1)};
    d->disc = 1;
    d->radicand = 1;
    d->r1 = 1;
    d->r2 = 0;
  } else if (n == 2) {
    const Integer& b = d->defining[1];
    const Integer& c = d->defining[0];
    const Integer d0 = b * b - 4 * c;
    const Integer rad = squarefree_part(d0);
    const Integer s = isqrt(d0 / rad);
    d->radicand = rad;
    // sqrt(rad) = (2a + b) / s for the root a.
    if (floor_mod(rad, Integer(4)) == 1) {
      d->order = ZPoly{Integer((1 - rad) / 4), Integer(-1), Integer(1)};
      d->basis(1, 0) = Rational(1, 2) + Rational(b, 2 * s);
      d->basis(1, 1) = Rational(1, s);
      d->disc = rad;
    } else {
      d->order = ZPoly{Integer(-rad), Integer(0), Integer(1)};
      d->basis(1, 0) = Rational(b, s);
      d->basis(1, 1) = Rational(2, s);
      d->disc = 4 * rad;
    }
    d->r1 = rad > 0 ? 2 : 0;
    d->r2 = rad > 0 ? 0 : 1;
  } else {
    d->order = d->defining;
    d->disc = zpoly::discriminant(d->order);
    for (const auto& [p, e] : factor_integer(d->disc)) {
      if (e >= 2 && !dedekind_is_maximal(d->order, p))
        throw UnsupportedError("Z[a] is not maximal at " + p.str() + " for " +
                               zpoly::to_string(d->defining) +
                               "; only monogenic orders are supported beyond degree 2");
    }
    d->r1 = zpoly::count_real_roots(d->order);
    d->r2 = (n - d->r1) / 2;
  }
  d_ = std::move(d);
  init_common();
}

void NumberField::init_common() {
  auto d = std::const_pointer_cast<Data>(d_);
  const int n = d->n;
  const int span = 2 * n - 1;
  d->reduce = IntMatrix::Zero(n, span);
  IntVector cur = IntVector::Zero(n);
  cur(0) = 1;
  for (int k = 0; k < span; ++k) {
    d->reduce.col(k) = cur;
    // cur <- w * cur, using w^n = -sum g_i w^i.
    IntVector next = IntVector::Zero(n);
    const Integer top = cur(n - 1);
    for (int i = n - 1; i > 0; --i) next(i) = cur(i - 1);
    for (int i = 0; i < n; ++i) next(i) -= top * d->order[static_cast<std::size_t>(i)];
    cur = next;
  }
  cache_ = std::make_shared<Cache>();
}

NumberField NumberField::parse(const std::string& spec) {
  std::string s;
  for (char c : spec)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s == "Q") return NumberField();
  for (char c : s)
    if (std::isalpha(static_cast<unsigned char>(c)) && c != 'x')
      throw std::invalid_argument("malformed field spec '" + spec + "': expected Q or a polynomial in x");
  try {
    return NumberField(zpoly::parse(s));
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument("malformed field spec '" + spec + "': " + e.what());
  }
}

std::string NumberField::spec() const {
  return d_->n == 1 ? "Q" : zpoly::to_string(d_->defining);
}

RatVector NumberField::from_integer(const Integer& a) const {
  RatVector v = zero();
  v(0) = a;
  return v;
}

RatVector NumberField::from_integral(const IntVector& a) const {
  RatVector v(a.size());
  for (Index i = 0; i < a.size(); ++i) v(i) = a(i);
  return v;
}

RatVector NumberField::generator() const {
  RatVector v = zero();
  if (d_->n > 1) v(1) = 1;
  return v;
}

RatVector NumberField::mul(const RatVector& a, const RatVector& b) const {
  const int n = d_->n;
  RatVector conv = RatVector::Zero(2 * n - 1);
  for (int i = 0; i < n; ++i) {
    if (a(i) == 0) continue;
    for (int j = 0; j < n; ++j) conv(i + j) += a(i) * b(j);
  }
  RatVector out = RatVector::Zero(n);
  for (int k = 0; k < 2 * n - 1; ++k) {
    if (conv(k) == 0) continue;
    for (int i = 0; i < n; ++i) out(i) += conv(k) * Rational(d_->reduce(i, k));
  }
  return out;
}

IntVector NumberField::mul(const IntVector& a, const IntVector& b) const {
  const int n = d_->n;
  IntVector conv = IntVector::Zero(2 * n - 1);
  for (int i = 0; i < n; ++i) {
    if (a(i) == 0) continue;
    for (int j = 0; j < n; ++j) conv(i + j) += a(i) * b(j);
  }
  return d_->reduce * conv;
}

RatMatrix NumberField::mult_matrix(const RatVector& a) const {
  const int n = d_->n;
  RatMatrix m(n, n);
  for (int j = 0; j < n; ++j) {
    RatVector e = zero();
    e(j) = 1;
    m.col(j) = mul(a, e);
  }
  return m;
}

IntMatrix NumberField::mult_matrix(const IntVector& a) const {
  const int n = d_->n;
  IntMatrix m(n, n);
  for (int j = 0; j < n; ++j) {
    IntVector e = IntVector::Zero(n);
    e(j) = 1;
    m.col(j) = mul(a, e);
  }
  return m;
}

RatVector NumberField::inv(const RatVector& a) const {
  if (a.isZero()) throw std::domain_error("inverse of zero field element");
  return solve_rational(mult_matrix(a), one());
}

RatVector NumberField::pow(const RatVector& a, long n) const {
  if (n < 0) return pow(inv(a), -n);
  RatVector r = one(), b = a;
  while (n) {
    if (n & 1) r = mul(r, b);
    b = mul(b, b);
    n >>= 1;
  }
  return r;
}

IntVector NumberField::pow(const IntVector& a, unsigned long n) const {
  IntVector r = IntVector::Zero(d_->n), b = a;
  r(0) = 1;
  while (n) {
    if (n & 1) r = mul(r, b);
    b = mul(b, b);
    n >>= 1;
  }
  return r;
}

Rational NumberField::norm(const RatVector& a) const { return determinant(mult_matrix(a)); }

Rational NumberField::trace(const RatVector& a) const { return mult_matrix(a).trace(); }

bool NumberField::is_integral(const RatVector& a) const {
  for (Index i = 0; i < a.size(); ++i)
    if (denominator_of(a(i)) != 1) return false;
  return true;
}

IntVector NumberField::to_integral(const RatVector& a) const {
  if (!is_integral(a)) throw std::domain_error("element is not integral: " + to_string(a));
  IntVector v(a.size());
  for (Index i = 0; i < a.size(); ++i) v(i) = numerator_of(a(i));
  return v;
}

Integer NumberField::denominator(const RatVector& a) const {
  Integer d = 1;
  for (Index i = 0; i < a.size(); ++i) d = lcm_of(d, denominator_of(a(i)));
  return d;
}

std::string NumberField::to_string(const RatVector& a) const {
  std::ostringstream os;
  bool first = true;
  for (Index i = 0; i < a.size(); ++i) {
    if (a(i) == 0) continue;
    Rational c = a(i);
    if (c < 0) {
      os << "-";
      c = -c;
    } else if (!first) {
      os << "+";
    }
    first = false;
    if (i == 0) {
      os << ahom::to_string(c);
      continue;
    }
    if (c != 1) os << ahom::to_string(c) << "*";
    os << "w";
    if (i > 1) os << "^" << i;
  }
  return first ? "0" : os.str();
}

std::vector<PrimeIdeal> NumberField::primes_above(const Integer& p) const {
  {
    std::lock_guard<std::mutex> guard(cache_->lock);
    auto it = cache_->primes.find(p);
    if (it != cache_->primes.end()) return it->second;
  }
  auto primes = split(p);
  std::lock_guard<std::mutex> guard(cache_->lock);
  cache_->primes.emplace(p, primes);
  return primes;
}

std::vector<PrimeIdeal> NumberField::split(const Integer& p) const {
  if (!is_prime(p)) throw std::invalid_argument(p.str() + " is not prime");
  if (p >= (Integer(1) << 62)) throw UnsupportedError("prime too large: " + p.str());
  const int n = d_->n;
  const auto pu = static_cast<std::uint64_t>(p);
  const FiniteField fp(pu);
  std::vector<PrimeIdeal> out;
  for (auto& [g, mult] : fq::factor(fp, zpoly::reduce(d_->order, fp))) {
    PrimeIdeal P;
    P.p = p;
    P.e = mult;
    P.f = fq::degree(g);
    P.residue_poly = g;
    P.generator = IntVector::Zero(n);
    if (P.f == n) {
      P.generator(0) = p;
    } else {
      for (std::size_t i = 0; i < g.size(); ++i) P.generator(static_cast<Index>(i)) = Integer(g[i]);
    }
    IntMatrix cols(n, 2 * n);
    cols << IntMatrix::Identity(n, n) * p, mult_matrix(P.generator);
    P.hnf = lattice_basis(cols);
    if (P.hnf.cols() != n || determinant(P.hnf) != P.norm())
      throw std::logic_error("prime ideal lattice has wrong index above " + p.str());
    P.beta = kernel_vector_mod_p(mult_matrix(P.generator), p);
    if (P.beta.size() == 0) throw std::logic_error("no anti-uniformizer for prime above " + p.str());
    P.residue_field = std::make_shared<const FiniteField>(pu, g);
    out.push_back(std::move(P));
  }
  std::sort(out.begin(), out.end(),
            [](const PrimeIdeal& a, const PrimeIdeal& b) { return lex_less(a.generator, b.generator); });
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i].index = static_cast<int>(i);
    out[i].above = static_cast<int>(out.size());
  }
  Ideal product = unit_ideal();
  for (std::size_t i = 0; i < out.size(); ++i) {
    product = mul(product, pow(ideal_of(out[i]), out[i].e));
    Ideal others = unit_ideal();
    for (std::size_t j = 0; j < out.size(); ++j)
      if (j != i) others = mul(others, pow(ideal_of(out[j]), out[j].e));
    if (out.size() == 1) {
      out[i].crt_unit = IntVector::Zero(n);
      out[i].crt_unit(0) = 1;
    } else {
      out[i].crt_unit = crt_split(others, ideal_of(out[i]));
    }
  }
  if (product != principal_ideal(from_integer(p)))
    throw std::logic_error("prime decomposition of " + p.str() + " does not multiply back to pO");
  return out;
}

PrimeIdeal NumberField::prime(const std::string& selector) const {
  const auto colon = selector.find(':');
  Integer p;
  int index = -1;
  try {
    p = Integer(selector.substr(0, colon));
    if (colon != std::string::npos) index = std::stoi(selector.substr(colon + 1));
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed prime selector '" + selector + "'");
  }
  if (!is_prime(p)) throw std::invalid_argument("prime selector '" + selector + "': not a prime");
  auto primes = primes_above(p);
  if (index < 0) {
    if (primes.size() != 1)
      throw std::invalid_argument("prime selector '" + selector + "' is ambiguous: " +
                                  std::to_string(primes.size()) + " primes above " + p.str() +
                                  ", use p:i");
    return primes[0];
  }
  if (index >= static_cast<int>(primes.size()))
    throw std::invalid_argument("prime selector '" + selector + "': index out of range");
  return primes[static_cast<std::size_t>(index)];
}

std::vector<PrimeIdeal> NumberField::primes_up_to_norm(const Integer& bound) const {
  std::vector<PrimeIdeal> out;
  if (bound < 2) return out;
  for (std::uint64_t p : primes_up_to(static_cast<std::uint64_t>(bound)))
    for (auto& P : primes_above(Integer(p)))
      if (P.norm() <= bound) out.push_back(std::move(P));
  return out;
}

int NumberField::integral_valuation(IntVector a, const PrimeIdeal& P) const {
  if (a.isZero()) throw std::domain_error("valuation of zero");
  const IntMatrix mb = mult_matrix(P.beta);
  int v = 0;
  for (;;) {
    IntVector y = mb * a;
    for (Index i = 0; i < y.size(); ++i)
      if (y(i) % P.p != 0) return v;
    a = y / P.p;
    ++v;
  }
}

int NumberField::valuation(const RatVector& a, const PrimeIdeal& P) const {
  const Integer den = denominator(a);
  IntVector num = to_integral(a * Rational(den));
  int v = integral_valuation(num, P);
  if (den % P.p == 0) v -= P.e * static_cast<int>(ahom::valuation(den, P.p));
  return v;
}

FiniteField::Elem NumberField::integral_residue(const IntVector& a, const PrimeIdeal& P) const {
  const FiniteField& fp_field = *P.residue_field;
  const FiniteField prime_field(static_cast<std::uint64_t>(P.p));
  FqPoly poly;
  for (Index i = 0; i < a.size(); ++i) poly.push_back(prime_field.from_integer(a(i)));
  fq::trim(poly);
  FqPoly r = fq::mod(prime_field, poly, P.residue_poly);
  r.resize(static_cast<std::size_t>(P.f), 0);
  return fp_field.from_digits(r);
}

FiniteField::Elem NumberField::residue(const RatVector& a, const PrimeIdeal& P) const {
  if (a.isZero()) return 0;
  const Integer den = denominator(a);
  IntVector num = to_integral(a * Rational(den));
  const unsigned k = den % P.p == 0 ? ahom::valuation(den, P.p) : 0;
  if (integral_valuation(num, P) < P.e * static_cast<int>(k))
    throw std::domain_error("residue of an element with a pole at " + P.label());
  if (k > 0) {
    num = mul(num, pow(P.crt_unit, k));
    const Integer pk = ipow(P.p, k);
    for (Index i = 0; i < num.size(); ++i) {
      if (num(i) % pk != 0) throw std::logic_error("residue: localization failed");
      num(i) /= pk;
    }
  }
  const FiniteField& kf = *P.residue_field;
  const auto unit_part = kf.from_integer(den / ipow(P.p, k));
  return kf.div(integral_residue(num, P), unit_part);
}

IntVector NumberField::lift_residue(FiniteField::Elem r, const PrimeIdeal& P) const {
  IntVector v = IntVector::Zero(d_->n);
  const auto digits = P.residue_field->digits(r);
  for (std::size_t i = 0; i < digits.size(); ++i) v(static_cast<Index>(i)) = Integer(digits[i]);
  return v;
}

Ideal NumberField::unit_ideal() const { return Ideal{IntMatrix::Identity(d_->n, d_->n), 1}; }

Ideal NumberField::normalize(IntMatrix num, Integer den) const {
  IntMatrix h = lattice_basis(num);
  if (h.cols() != d_->n) throw std::domain_error("ideal lattice is not of full rank");
  Integer c = 0;
  for (Index i = 0; i < h.rows(); ++i)
    for (Index j = 0; j < h.cols(); ++j) c = gcd_of(c, Integer(h(i, j)));
  const Integer g = gcd_of(c, den);
  if (g != 1) {
    h /= g;
    den /= g;
  }
  return Ideal{std::move(h), std::move(den)};
}

Ideal NumberField::ideal(const std::vector<RatVector>& generators) const {
  const int n = d_->n;
  Integer den = 1;
  for (const auto& g : generators) den = lcm_of(den, denominator(g));
  IntMatrix cols(n, static_cast<Index>(generators.size()) * n);
  Index at = 0;
  for (const auto& g : generators) {
    IntMatrix m = mult_matrix(to_integral(g * Rational(den)));
    cols.middleCols(at, n) = m;
    at += n;
  }
  if (cols.cols() == 0 || lattice_basis(cols).cols() != n)
    throw std::domain_error("zero ideal");
  return normalize(cols, den);
}

Ideal NumberField::ideal_from_lattice(const IntMatrix& columns, const Integer& den) const {
  Ideal out = normalize(columns, den);
  const IntMatrix w = mult_matrix(to_integral(generator()));
  for (Index j = 0; j < out.num.cols(); ++j)
    if (!in_lattice<Integer>(out.num, w * out.num.col(j)))
      throw std::invalid_argument("lattice is not closed under multiplication by w");
  return out;
}

Ideal NumberField::mul(const Ideal& a, const Ideal& b) const {
  const int n = d_->n;
  IntMatrix cols(n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) cols.col(i * n + j) = mul(IntVector(a.num.col(i)), IntVector(b.num.col(j)));
  return normalize(cols, a.den * b.den);
}

Ideal NumberField::pow(const Ideal& a, int n) const {
  if (n < 0) throw std::invalid_argument("negative ideal power; use factorizations");
  Ideal r = unit_ideal(), b = a;
  while (n) {
    if (n & 1) r = mul(r, b);
    b = mul(b, b);
    n >>= 1;
  }
  return r;
}

Ideal NumberField::sum(const Ideal& a, const Ideal& b) const {
  const Integer den = lcm_of(a.den, b.den);
  IntMatrix cols(d_->n, 2 * d_->n);
  cols << a.num * Integer(den / a.den), b.num * Integer(den / b.den);
  return normalize(cols, den);
}

Rational NumberField::norm(const Ideal& a) const {
  return Rational(determinant(a.num)) / Rational(ipow(a.den, static_cast<unsigned>(d_->n)));
}

bool NumberField::contains(const Ideal& a, const RatVector& x) const {
  RatVector y = x * Rational(a.den);
  if (!is_integral(y)) return false;
  return in_lattice<Integer>(a.num, to_integral(y));
}

IdealFactorization NumberField::factor(const Ideal& a) const {
  std::map<Integer, bool> candidates;
  const Integer N = determinant(a.num);
  for (const auto& [p, e] : factor_integer(N)) candidates[p] = true;
  if (a.den != 1)
    for (const auto& [p, e] : factor_integer(a.den)) candidates[p] = true;
  IdealFactorization out;
  for (const auto& [p, unused] : candidates) {
    (void)unused;
    for (const PrimeIdeal& P : primes_above(p)) {
      int v = std::numeric_limits<int>::max();
      for (Index j = 0; j < a.num.cols(); ++j) v = std::min(v, integral_valuation(a.num.col(j), P));
      if (a.den % p == 0) v -= P.e * static_cast<int>(ahom::valuation(a.den, p));
      if (v != 0) out.emplace_back(P, v);
    }
  }
  return out;
}

Ideal NumberField::from_factorization(const IdealFactorization& f) const {
  Ideal out = unit_ideal();
  for (const auto& [P, v] : f) {
    if (v >= 0) {
      out = mul(out, pow(ideal_of(P), v));
    } else {
      RatVector b = from_integral(P.beta) / Rational(P.p);
      out = mul(out, pow(ideal({one(), b}), -v));
    }
  }
  return out;
}

IntVector NumberField::crt_split(const Ideal& a, const Ideal& b) const {
  if (a.den != 1 || b.den != 1) throw std::invalid_argument("crt_split needs integral ideals");
  const int n = d_->n;
  IntMatrix cols(n, 2 * n);
  cols << a.num, b.num;
  IntVector target = IntVector::Zero(n);
  target(0) = 1;
  auto sol = solve_in_lattice<Integer>(cols, target);
  if (!sol) throw std::domain_error("ideals are not coprime");
  return a.num * IntVector(sol->head(n));
}

IntVector NumberField::reduce_mod(const IntVector& x, const Ideal& a) const {
  IntVector r = x;
  for (Index j = 0; j < a.num.cols(); ++j) {
    const Integer q = floor_div(Integer(r(j)), Integer(a.num(j, j)));
    if (q != 0) r -= q * a.num.col(j);
  }
  return r;
}

IntVector NumberField::crt(const std::vector<PrimeIdeal>& primes,
                           const std::vector<IntVector>& targets) const {
  IntVector x = IntVector::Zero(d_->n);
  Ideal all = unit_ideal();
  for (const auto& P : primes) all = mul(all, ideal_of(P));
  for (std::size_t i = 0; i < primes.size(); ++i) {
    Ideal others = unit_ideal();
    for (std::size_t j = 0; j < primes.size(); ++j)
      if (j != i) others = mul(others, ideal_of(primes[j]));
    IntVector e = IntVector::Zero(d_->n);
    e(0) = 1;
    if (primes.size() > 1) e = crt_split(others, ideal_of(primes[i]));
    x += mul(targets[i], e);
  }
  return reduce_mod(x, all);
}

std::vector<std::pair<FqPoly, int>> factor_poly_mod_p(const ZPoly& f, const Integer& p) {
  if (!is_prime(p)) throw std::invalid_argument(p.str() + " is not prime");
  const FiniteField k(static_cast<std::uint64_t>(p));
  FqPoly fbar = zpoly::reduce(f, k);
  if (fbar.empty()) throw std::invalid_argument("polynomial vanishes mod " + p.str());
  return fq::factor(k, fbar);
}

bool dedekind_is_maximal(const ZPoly& f, const Integer& p) {
  const FiniteField k(static_cast<std::uint64_t>(p));
  FqPoly g{1}, h{1};
  for (const auto& [t, e] : fq::factor(k, zpoly::reduce(f, k))) {
    g = fq::mul(k, g, t);
    for (int i = 1; i < e; ++i) h = fq::mul(k, h, t);
  }
  ZPoly diff = zpoly::sub(f, zpoly::mul(zpoly::lift(g), zpoly::lift(h)));
  for (Integer& c : diff) {
    if (c % p != 0) throw std::logic_error("Dedekind test: f != gh mod p");
    c /= p;
  }
  FqPoly common = fq::gcd(k, fq::gcd(k, g, h), zpoly::reduce(diff, k));
  return fq::degree(common) == 0;
}

}  // namespace ahom
