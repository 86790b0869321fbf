#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace mixfrob {

// Exact rationals. mpq_class keeps the fraction canonical (reduced, positive
// denominator) as long as every constructor goes through canonicalize().
using Rat = mpq_class;

Rat parse_rat(std::string_view s);       // "p", "-p/q"; throws ParseError
std::string to_string(const Rat& q);     // "p/q" or "p"

// a/b reduced; use instead of Rat(a, b), which does not canonicalize
inline Rat frac(long a, long b) {
    Rat q(a, b);
    q.canonicalize();
    return q;
}

inline bool is_zero(const Rat& q) { return sgn(q) == 0; }

}  // namespace mixfrob
