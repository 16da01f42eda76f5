#pragma once

// Dense polynomials with integer coefficients, constant term first.

#include "ahom/core/integer.hpp"
#include "ahom/numfield/finite_field.hpp"

#include <string>
#include <utility>
#include <vector>

namespace ahom {

using ZPoly = std::vector<Integer>;

namespace zpoly {

int degree(const ZPoly& f);
void trim(ZPoly& f);
bool is_monic(const ZPoly& f);
Integer content(const ZPoly& f);
ZPoly primitive_part(const ZPoly& f);
Integer eval(const ZPoly& f, const Integer& x);
ZPoly add(const ZPoly& a, const ZPoly& b);
ZPoly sub(const ZPoly& a, const ZPoly& b);
ZPoly mul(const ZPoly& a, const ZPoly& b);
/// Exact quotient a / b, or empty optional-like flag via `ok` when b does not
/// divide a over Z.
ZPoly exact_quotient(const ZPoly& a, const ZPoly& b, bool& ok);
ZPoly derivative(const ZPoly& f);

/// Parses "x^2+5", "x^3 - x - 1", "2*t^2+3t+1". The variable name is
/// whatever single identifier appears; mixing names is an error.
ZPoly parse(const std::string& text);
std::string to_string(const ZPoly& f, const std::string& var = "x");

/// Reduction modulo p into F_p[x].
FqPoly reduce(const ZPoly& f, const FiniteField& k);
/// Lift from F_p[x] with coefficients in [0, p).
ZPoly lift(const FqPoly& f);

/// Discriminant of a monic polynomial, via the trace form of Z[x]/(f).
Integer discriminant(const ZPoly& f);
/// Power sums s_0..s_{count-1} of the roots of a monic f (Newton's identities).
std::vector<Integer> power_sums(const ZPoly& f, int count);

/// Number of distinct real roots (Sturm sequence, exact).
int count_real_roots(const ZPoly& f);

/// Irreducibility over Q for a monic squarefree-or-not polynomial of degree
/// <= 12. Mod-p factor degree patterns first; undecided cases fall back to a
/// numeric root-subset search whose candidate factors are verified exactly.
bool is_irreducible(const ZPoly& f);

}  // namespace zpoly

}  // namespace ahom
