#include "nj/laurent.hpp"

#include <sstream>

namespace nj {

LaurentPoly::LaurentPoly(long constant) {
  if (constant != 0) c_[0] = constant;
}

LaurentPoly LaurentPoly::monomial(const Int& c, long e) {
  LaurentPoly p;
  p.add_term(e, c);
  return p;
}

LaurentPoly LaurentPoly::t2_minus_one(long k) {
  NJ_ASSERT(k >= 0, "negative power of t^2-1");
  LaurentPoly p;
  for (long i = 0; i <= k; ++i) {
    Int b = binomial(k, i);
    p.add_term(2 * i, (k - i) % 2 ? Int(-b) : b);
  }
  return p;
}

void LaurentPoly::add_term(long e, const Int& c) {
  if (c == 0) return;
  Int& slot = c_[e];
  slot += c;
  if (slot == 0) c_.erase(e);
}

Int LaurentPoly::coeff(long e) const {
  auto it = c_.find(e);
  return it == c_.end() ? Int(0) : it->second;
}

long LaurentPoly::low() const {
  NJ_ASSERT(!c_.empty(), "low degree of zero polynomial");
  return c_.begin()->first;
}

long LaurentPoly::high() const {
  NJ_ASSERT(!c_.empty(), "degree of zero polynomial");
  return c_.rbegin()->first;
}

Int LaurentPoly::at_one() const {
  Int s = 0;
  for (const auto& [e, c] : c_) s += c;
  return s;
}

LaurentPoly LaurentPoly::shifted(long by) const {
  LaurentPoly p;
  for (const auto& [e, c] : c_) p.c_[e + by] = c;
  return p;
}

std::vector<Int> LaurentPoly::dense(long from, long to) const {
  std::vector<Int> r;
  for (long e = from; e <= to; ++e) r.push_back(coeff(e));
  return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.c_) add_term(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.c_) add_term(e, -c);
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly p;
  for (const auto& [ea, ca] : a.c_)
    for (const auto& [eb, cb] : b.c_) p.add_term(ea + eb, ca * cb);
  return p;
}

LaurentPoly operator*(const Int& s, const LaurentPoly& a) {
  LaurentPoly p;
  for (const auto& [e, c] : a.c_) p.add_term(e, s * c);
  return p;
}

std::string LaurentPoly::str() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    Int c = it->second;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    Int a = abs(c);
    if (it->first == 0 || a != 1) os << a;
    if (it->first != 0) os << "t" << (it->first != 1 ? "^" + std::to_string(it->first) : "");
  }
  return os.str();
}

}  // namespace nj
