#include "conekit/rational.hpp"

#include <cmath>

namespace conekit {

Rat rat_from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("rat_from_string: empty string");
  try {
    Rat q(s);  // accepts "p" and "p/q"
    if (q.get_den() == 0)
      throw std::invalid_argument("rat_from_string: zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw;
  } catch (...) {
    throw std::invalid_argument("rat_from_string: malformed rational '" + s + "'");
  }
}

std::string rat_to_string(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rat rat_from_double(double d) {
  if (!std::isfinite(d)) throw std::invalid_argument("rat_from_double: non-finite value");
  Rat q;
  mpq_set_d(q.get_mpq_t(), d);
  return q;
}

}  // namespace conekit
