#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace conekit {

// Exact rational scalar. mpq_class keeps values canonical (lowest terms,
// positive denominator) as long as construction goes through the helpers
// below, which canonicalize explicitly.
using Rat = mpq_class;

// num/den with canonicalization. Throws on zero denominator.
inline Rat rat(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rat: zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

// Parse "p", "p/q" (optional sign on p and q). Throws on malformed input.
Rat rat_from_string(const std::string& s);

// Canonical text form: "p" when the denominator is 1, else "p/q".
std::string rat_to_string(const Rat& q);

inline double rat_to_double(const Rat& q) { return q.get_d(); }
inline double to_double(const Rat& q) { return q.get_d(); }

// Exact conversion: every finite double is a dyadic rational.
Rat rat_from_double(double d);

inline Rat rat_abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

inline int rat_sign(const Rat& q) { return sgn(q); }

}  // namespace conekit
