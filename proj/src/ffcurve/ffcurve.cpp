#include "ahom/ffcurve/ffcurve.hpp"

#include "ahom/core/cyclic_log.hpp"
#include "ahom/numfield/integer_factor.hpp"
#include "ahom/numfield/polynomial.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ahom {

namespace {

using Elem = FiniteField::Elem;

std::string trim(std::string s) {
  s.erase(0, s.find_first_not_of(" \t"));
  s.erase(s.find_last_not_of(" \t") + 1);
  return s;
}

// Monic polynomial of the given degree whose lower coefficients are the
// base-q digits of code.
FqPoly monic_from_code(std::uint64_t q, int degree, std::uint64_t code) {
  FqPoly out(static_cast<std::size_t>(degree) + 1, 0);
  for (int i = 0; i < degree; ++i) {
    out[static_cast<std::size_t>(i)] = code % q;
    code /= q;
  }
  out.back() = 1;
  return out;
}

int strip(const FiniteField& f, FqPoly& a, const FqPoly& pi) {
  int v = 0;
  for (;;) {
    auto [quo, rem] = fq::divmod(f, a, pi);
    if (!rem.empty()) return v;
    a = quo;
    ++v;
  }
}

Elem leading(const FqPoly& a) { return a.back(); }

// Residue of g at p; requires valuation zero.
FqPoly residue_at(const FiniteField& f, const RationalFunction& g, const Place& p) {
  if (g.num.empty()) throw std::domain_error("zero has no residue");
  if (p.infinite) {
    if (fq::degree(g.num) != fq::degree(g.den)) throw std::domain_error("not a unit at inf");
    return FqPoly{f.div(leading(g.num), leading(g.den))};
  }
  FqPoly num = g.num, den = g.den;
  if (strip(f, num, p.pi) != strip(f, den, p.pi)) throw std::domain_error("not a unit at the place");
  const FqPoly n = fq::mod(f, num, p.pi), d = fq::mod(f, den, p.pi);
  // Invert d modulo pi by the extended Euclidean algorithm.
  FqPoly r0 = p.pi, r1 = d, s0{}, s1{1};
  while (!r1.empty()) {
    auto [quo, rem] = fq::divmod(f, r0, r1);
    FqPoly s2 = fq::sub(f, s0, fq::mul(f, quo, s1));
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r0 is a nonzero constant c with s0 * d == c.
  const FqPoly inv = fq::scale(f, s0, f.inv(r0[0]));
  return fq::mod(f, fq::mul(f, n, inv), p.pi);
}

FqPoly poly_power(const FiniteField& f, const FqPoly& a, long n) {
  FqPoly out{1};
  for (long i = 0; i < n; ++i) out = fq::mul(f, out, a);
  return out;
}

}  // namespace

std::shared_ptr<const FiniteField> function_field_constants(std::uint64_t q) {
  static std::mutex lock;
  static std::map<std::uint64_t, std::shared_ptr<const FiniteField>> cache;
  if (q < 2 || q > kMaxFieldOrder)
    throw std::invalid_argument("field size q=" + std::to_string(q) + " outside [2, 65536]");
  if (factor_integer(Integer(q)).size() != 1)
    throw std::invalid_argument("field size q=" + std::to_string(q) + " is not a prime power");
  std::lock_guard<std::mutex> guard(lock);
  auto& slot = cache[q];
  if (!slot) slot = std::make_shared<const FiniteField>(FiniteField::of_order(q));
  return slot;
}

// ---------------------------------------------------------------------------
// Places and divisors

Place Place::parse(const FiniteField& f, const std::string& text) {
  const std::string s = trim(text);
  if (s == "inf" || s == "infinity") return at_infinity();
  ZPoly z;
  try {
    z = zpoly::parse(s);
  } catch (const std::exception& e) {
    throw std::invalid_argument("malformed place '" + s + "': " + e.what());
  }
  FqPoly pi;
  for (const Integer& c : z) {
    if (f.degree() == 1) {
      pi.push_back(f.from_integer(c));
    } else {
      if (c < 0 || c >= f.order())
        throw std::invalid_argument("coefficient " + c.str() + " in place '" + s +
                                    "' is not an encoded element of F_" + std::to_string(f.order()));
      pi.push_back(c.convert_to<Elem>());
    }
  }
  fq::trim(pi);
  if (fq::degree(pi) < 1 || leading(pi) != 1)
    throw std::invalid_argument("place '" + s + "' is not a monic polynomial of positive degree");
  if (!fq::is_irreducible(f, pi))
    throw std::invalid_argument("place '" + s + "' is reducible over F_" + std::to_string(f.order()));
  return Place{false, pi};
}

std::string Place::to_string(const FiniteField& f) const {
  if (infinite) return "inf";
  if (f.degree() == 1) return fq::to_string(f, pi, "t");
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = pi.size(); i-- > 0;) {
    if (!pi[i]) continue;
    if (!first) os << "+";
    first = false;
    if (i == 0 || pi[i] != 1) os << pi[i];
    if (i > 0) os << "t";
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

bool Place::operator<(const Place& o) const {
  if (infinite != o.infinite) return !infinite;
  if (infinite) return false;
  if (pi.size() != o.pi.size()) return pi.size() < o.pi.size();
  return std::lexicographical_compare(pi.rbegin(), pi.rend(), o.pi.rbegin(), o.pi.rend());
}

std::vector<Place> parse_places(const FiniteField& f, const std::string& text) {
  std::vector<Place> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (trim(item).empty()) continue;
    out.push_back(Place::parse(f, item));
  }
  std::sort(out.begin(), out.end());
  for (std::size_t i = 1; i < out.size(); ++i)
    if (out[i] == out[i - 1])
      throw std::invalid_argument("place " + out[i].to_string(f) + " listed twice");
  return out;
}

FFDivisor normalize(FFDivisor d) {
  std::sort(d.begin(), d.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  FFDivisor out;
  for (auto& [p, n] : d) {
    if (!out.empty() && out.back().first == p)
      out.back().second += n;
    else
      out.emplace_back(p, n);
  }
  out.erase(std::remove_if(out.begin(), out.end(), [](const auto& t) { return t.second == 0; }),
            out.end());
  return out;
}

long degree(const FFDivisor& d) {
  long out = 0;
  for (const auto& [p, n] : d) out += n * p.degree();
  return out;
}

std::string to_string(const FiniteField& f, const FFDivisor& d) {
  if (d.empty()) return "0";
  std::string out;
  for (const auto& [p, n] : d) {
    if (!out.empty()) out += n < 0 ? " - " : " + ";
    else if (n < 0) out += "-";
    const long a = std::labs(n);
    if (a != 1) out += std::to_string(a) + "*";
    out += "(" + p.to_string(f) + ")";
  }
  return out;
}

int valuation(const FiniteField& f, const RationalFunction& g, const Place& p) {
  if (g.num.empty()) throw std::domain_error("valuation of zero");
  if (p.infinite) return fq::degree(g.den) - fq::degree(g.num);
  FqPoly num = g.num, den = g.den;
  return strip(f, num, p.pi) - strip(f, den, p.pi);
}

FFDivisor divisor(const FiniteField& f, const RationalFunction& g) {
  if (g.num.empty() || g.den.empty()) throw std::invalid_argument("divisor of zero or of a pole everywhere");
  FFDivisor out;
  for (const auto& [pi, e] : fq::factor(f, g.num)) out.emplace_back(Place{false, pi}, e);
  for (const auto& [pi, e] : fq::factor(f, g.den)) out.emplace_back(Place{false, pi}, -e);
  out.emplace_back(Place::at_infinity(), fq::degree(g.den) - fq::degree(g.num));
  return normalize(std::move(out));
}

std::vector<FqPoly> monic_irreducibles(const FiniteField& f, int degree) {
  std::vector<FqPoly> out;
  const auto count = ipow(Integer(f.order()), static_cast<unsigned>(degree)).convert_to<std::uint64_t>();
  for (std::uint64_t code = 0; code < count; ++code) {
    FqPoly pi = monic_from_code(f.order(), degree, code);
    if (fq::is_irreducible(f, pi)) out.push_back(pi);
  }
  std::sort(out.begin(), out.end(), [](const FqPoly& a, const FqPoly& b) {
    return Place{false, a} < Place{false, b};
  });
  return out;
}

// ---------------------------------------------------------------------------
// Residue fields of places

PlaceResidues::PlaceResidues(std::shared_ptr<const FiniteField> f, const Place& p)
    : f_(std::move(f)), place_(p) {
  modulus_ = p.infinite ? FqPoly{0, 1} : p.pi;
  const int d = fq::degree(modulus_);
  order_ = ipow(Integer(f_->order()), static_cast<unsigned>(d)) - 1;
  for (const auto& [r, e] : factor_integer(order_)) factors_.emplace_back(r, static_cast<unsigned>(e));
  const std::uint64_t q = f_->order();
  const auto size = (order_ + 1).convert_to<std::uint64_t>();
  for (std::uint64_t code = 1; code < size; ++code) {
    FqPoly a;
    for (std::uint64_t c = code; c; c /= q) a.push_back(c % q);
    fq::trim(a);
    bool primitive = true;
    for (const auto& [r, e] : factors_) {
      (void)e;
      if (pow(a, order_ / r) == one()) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      generator_ = a;
      return;
    }
  }
  throw std::logic_error("residue field without a primitive element");
}

FqPoly PlaceResidues::mul(const FqPoly& a, const FqPoly& b) const {
  return fq::mod(*f_, fq::mul(*f_, a, b), modulus_);
}

FqPoly PlaceResidues::pow(const FqPoly& a, const Integer& n) const {
  FqPoly out = fq::powmod(*f_, a, n, modulus_);
  fq::trim(out);
  return out;
}

FqPoly PlaceResidues::residue(const RationalFunction& g) const {
  return residue_at(*f_, g, place_);
}

Integer PlaceResidues::log(const FqPoly& r) const {
  if (r.empty()) throw std::domain_error("log of zero");
  if (order_ == 1) return 0;
  return cyclic_log(*this, generator_, r, order_, factors_);
}

// ---------------------------------------------------------------------------
// Relative Picard groups

FFPicard::FFPicard(std::uint64_t q, std::vector<Place> sigma)
    : field_(function_field_constants(q)), sigma_(std::move(sigma)) {
  std::sort(sigma_.begin(), sigma_.end());
  for (std::size_t i = 1; i < sigma_.size(); ++i)
    if (sigma_[i] == sigma_[i - 1]) throw std::invalid_argument("repeated place in the removed set");
  const auto s = static_cast<Index>(sigma_.size());
  IntMatrix orders = IntMatrix::Zero(s, s);
  for (Index i = 0; i < s; ++i) {
    residues_.emplace_back(field_, sigma_[static_cast<std::size_t>(i)]);
    orders(i, i) = residues_.back().order();
  }
  residue_group_ = AbelianGroup(s, orders);

  // Places outside sigma, infinity first and then by degree, until the gcd of
  // their degrees is 1.
  auto removed = [&](const Place& p) { return std::find(sigma_.begin(), sigma_.end(), p) != sigma_.end(); };
  long g = 0;
  auto consider = [&](const Place& p) {
    if (removed(p)) return;
    const long ng = std::gcd(g, static_cast<long>(p.degree()));
    if (g != 0 && ng == g) return;
    g = ng;
    degree_places_.push_back(p);
  };
  consider(Place::at_infinity());
  for (int d = 1; g != 1; ++d) {
    const auto count = ipow(Integer(q), static_cast<unsigned>(d));
    if (count > Integer(1) << 40) throw std::logic_error("no places of coprime degree found");
    for (std::uint64_t code = 0; code < count && g != 1; ++code) {
      FqPoly pi = monic_from_code(q, d, code);
      if (fq::is_irreducible(*field_, pi)) consider(Place{false, pi});
    }
  }

  const auto nj = static_cast<Index>(degree_places_.size());
  std::vector<IntMatrix> blocks;
  IntMatrix ord = IntMatrix::Zero(s + nj, s);
  ord.topRows(s) = orders;
  blocks.push_back(ord);
  IntMatrix constants = IntMatrix::Zero(s + nj, 1);
  const Elem c = field_->primitive_element();
  constants.col(0).head(s) = dlog(RationalFunction{{c}, {1}});
  blocks.push_back(constants);

  IntMatrix degrees(1, nj);
  for (Index j = 0; j < nj; ++j) degrees(0, j) = degree_places_[static_cast<std::size_t>(j)].degree();
  const IntMatrix ker = integer_kernel(degrees);
  IntMatrix ker_rel = IntMatrix::Zero(s + nj, ker.cols());
  for (Index col = 0; col < ker.cols(); ++col) {
    RationalFunction fr{{1}, {1}};
    for (Index j = 0; j < nj; ++j) {
      const Place& p = degree_places_[static_cast<std::size_t>(j)];
      const long e = to_i64(ker(j, col));
      if (p.infinite || e == 0) continue;
      FqPoly& side = e > 0 ? fr.num : fr.den;
      side = fq::mul(*field_, side, poly_power(*field_, p.pi, std::labs(e)));
    }
    ker_rel.col(col).head(s) = -dlog(fr);
    ker_rel.col(col).tail(nj) = ker.col(col);
  }
  blocks.push_back(ker_rel);
  group_ = AbelianGroup(s + nj, hstack(blocks));
}

IntVector FFPicard::dlog(const RationalFunction& g) const {
  IntVector out(static_cast<Index>(residues_.size()));
  for (std::size_t i = 0; i < residues_.size(); ++i) {
    FqPoly r;
    try {
      r = residues_[i].residue(g);
    } catch (const std::domain_error&) {
      throw std::invalid_argument("function is not a unit at " + sigma_[i].to_string(*field_));
    }
    out(static_cast<Index>(i)) = residues_[i].log(r);
  }
  return out;
}

IntVector FFPicard::class_of(const FFDivisor& d) const {
  for (const auto& [p, n] : d) {
    (void)n;
    if (std::find(sigma_.begin(), sigma_.end(), p) != sigma_.end())
      throw std::invalid_argument("divisor meets the removed place " + p.to_string(*field_));
  }
  const auto nj = static_cast<Index>(degree_places_.size());
  IntMatrix degrees(1, nj);
  for (Index j = 0; j < nj; ++j) degrees(0, j) = degree_places_[static_cast<std::size_t>(j)].degree();
  IntVector target(1);
  target(0) = degree(d);
  const IntVector b = *solve_in_lattice(degrees, target);
  // d - sum b_j Q_j has degree zero, so it is the divisor of the product of
  // its finite part.
  FFDivisor rest = d;
  for (Index j = 0; j < nj; ++j)
    rest.emplace_back(degree_places_[static_cast<std::size_t>(j)], -to_i64(b(j)));
  rest = normalize(std::move(rest));
  RationalFunction fr{{1}, {1}};
  for (const auto& [p, n] : rest) {
    if (p.infinite) continue;
    FqPoly& side = n > 0 ? fr.num : fr.den;
    side = fq::mul(*field_, side, poly_power(*field_, p.pi, std::labs(n)));
  }
  IntVector out(group_.generator_count());
  out.head(static_cast<Index>(sigma_.size())) = dlog(fr);
  out.tail(nj) = b;
  return out;
}

IntVector FFPicard::class_of_place(const Place& p) const {
  for (std::size_t j = 0; j < degree_places_.size(); ++j)
    if (degree_places_[j] == p) return group_.unit(static_cast<Index>(sigma_.size() + j));
  return class_of({{p, 1}});
}

IntVector FFPicard::class_of_function(const RationalFunction& g) const {
  IntVector out = IntVector::Zero(group_.generator_count());
  out.head(static_cast<Index>(sigma_.size())) = dlog(g);
  return out;
}

GroupHom FFPicard::constants_map() const {
  IntMatrix mat(static_cast<Index>(sigma_.size()), 1);
  mat.col(0) = dlog(RationalFunction{{field_->primitive_element()}, {1}});
  return GroupHom(AbelianGroup::cyclic(Integer(q() - 1)), residue_group_, mat);
}

GroupHom FFPicard::residue_map() const {
  const auto s = static_cast<Index>(sigma_.size());
  IntMatrix mat = IntMatrix::Zero(group_.generator_count(), s);
  mat.topRows(s) = IntMatrix::Identity(s, s);
  return GroupHom(residue_group_, group_, mat);
}

GroupHom FFPicard::degree_map() const {
  IntMatrix mat = IntMatrix::Zero(1, group_.generator_count());
  for (std::size_t j = 0; j < degree_places_.size(); ++j)
    mat(0, static_cast<Index>(sigma_.size() + j)) = degree_places_[j].degree();
  return GroupHom(group_, AbelianGroup::free(1), mat);
}

std::vector<GroupHom> FFPicard::exact_sequence() const {
  return {constants_map(), residue_map(), degree_map(),
          GroupHom::zero(AbelianGroup::free(1), AbelianGroup::trivial())};
}

Subgroup FFPicard::degree_zero() const { return hom_kernel(degree_map()); }

FFPicard ff_h0(std::uint64_t q, const std::vector<Place>& sigma) { return FFPicard(q, sigma); }

FFUnits ff_h1(std::uint64_t q, const std::vector<Place>& sigma) {
  auto f = function_field_constants(q);
  if (!sigma.empty()) return {AbelianGroup::trivial(), {}};
  return {AbelianGroup::cyclic(Integer(q - 1)), {f->primitive_element()}};
}

FFDivisor ff_div(const FiniteField& f, const RationalFunction& g, const std::vector<Place>& sigma) {
  if (g.num.empty() || g.den.empty()) throw std::invalid_argument("f must be a nonzero rational function");
  for (const Place& p : sigma) {
    bool ok = true;
    try {
      ok = residue_at(f, g, p) == FqPoly{1};
    } catch (const std::domain_error&) {
      ok = false;
    }
    if (!ok) throw std::invalid_argument("f is not congruent to 1 at " + p.to_string(f));
  }
  return divisor(f, g);
}

GroupHom ff_restriction(const FFPicard& from, const FFPicard& to) {
  if (from.q() != to.q()) throw std::invalid_argument("curves over different fields");
  const auto& big = from.sigma();
  for (const Place& p : to.sigma())
    if (std::find(big.begin(), big.end(), p) == big.end())
      throw std::invalid_argument("target removed set is not contained in the source one");
  IntMatrix mat = IntMatrix::Zero(to.group().generator_count(), from.group().generator_count());
  // A function that is the residue generator at P and 1 at the other removed
  // places maps to that generator when P stays removed, and to 0 otherwise.
  for (std::size_t i = 0; i < big.size(); ++i) {
    auto it = std::find(to.sigma().begin(), to.sigma().end(), big[i]);
    if (it != to.sigma().end()) mat(it - to.sigma().begin(), static_cast<Index>(i)) = 1;
  }
  for (std::size_t j = 0; j < from.degree_places().size(); ++j)
    mat.col(static_cast<Index>(big.size() + j)) = to.class_of_place(from.degree_places()[j]);
  return GroupHom(from.group(), to.group(), mat);
}

}  // namespace ahom
