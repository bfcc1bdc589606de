#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace nj {

using Int = mpz_class;
using Rat = mpq_class;
using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;
using IntMat = std::vector<IntVec>;
using RatMat = std::vector<RatVec>;

// Bad user input. The CLI maps this to exit code 1.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Geometry that should not occur for valid input (degenerate inputs, failed
// internal invariants). Exit code 2.
struct GeometryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

#define NJ_ASSERT(cond, msg)                                                  \
  do {                                                                        \
    if (!(cond)) throw ::nj::InternalError(std::string("assertion failed: ") + \
                                           (msg));                            \
  } while (0)

Rat make_rat(const Int& num, const Int& den);  // canonicalized
RatVec to_rat(const IntVec& v);
IntVec to_int(const RatVec& v);  // throws if any entry is fractional
bool is_integral(const RatVec& v);

Int content(const IntVec& v);  // gcd of absolute values, 0 for the zero vector
IntVec primitive(const IntVec& v);
// Smallest positive integer multiple of v, then made primitive.
IntVec primitive(const RatVec& v);

Int dot(const IntVec& a, const IntVec& b);
Rat dot(const RatVec& a, const RatVec& b);
Rat dot(const IntVec& a, const RatVec& b);

IntVec sub(const IntVec& a, const IntVec& b);
IntVec add(const IntVec& a, const IntVec& b);
RatVec sub(const RatVec& a, const RatVec& b);
RatVec add(const RatVec& a, const RatVec& b);
bool is_zero(const IntVec& v);
bool is_zero(const RatVec& v);

Rat frac(const Rat& x);  // x - floor(x), in [0,1)
Int floor_rat(const Rat& x);
Int ceil_rat(const Rat& x);

Int binomial(long n, long k);  // 0 when k < 0 or k > n; n >= 0 required
Int factorial(long n);
Int lcm(const Int& a, const Int& b);

std::size_t rank(RatMat m);
// Basis of {x : m x = 0}; `cols` is needed when m has no rows.
RatMat nullspace(RatMat m, std::size_t cols);
Rat determinant(RatMat m);
// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RatMat& m);

std::string to_string(const IntVec& v);
std::string to_string(const Rat& q);  // "a/b" or "a"
long to_long(const Int& x);  // throws if out of range

}  // namespace nj
