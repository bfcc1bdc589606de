#pragma once

#include <map>

#include "nj/arith.hpp"

namespace nj {

// Laurent polynomial in t with integer coefficients.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(long constant);  // NOLINT(implicit)
  static LaurentPoly monomial(const Int& c, long e);
  // (t^2 - 1)^k, k >= 0
  static LaurentPoly t2_minus_one(long k);

  Int coeff(long e) const;
  bool is_zero() const { return c_.empty(); }
  long low() const;   // requires nonzero
  long high() const;  // requires nonzero
  Int at_one() const;
  bool divisible_by_t(long e) const { return is_zero() || low() >= e; }
  LaurentPoly shifted(long by) const;
  // Coefficients of t^from..t^to.
  std::vector<Int> dense(long from, long to) const;
  const std::map<long, Int>& terms() const { return c_; }

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(const Int& s, const LaurentPoly& a);
  bool operator==(const LaurentPoly& o) const { return c_ == o.c_; }

  std::string str() const;

 private:
  std::map<long, Int> c_;
  void add_term(long e, const Int& c);
};

}  // namespace nj
