#include "mixfrob/rat.hpp"

#include "mixfrob/errors.hpp"

#include <cctype>

namespace mixfrob {

namespace {

bool valid_int(std::string_view s) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

std::string strip_plus(std::string_view s) {
    return std::string(!s.empty() && s[0] == '+' ? s.substr(1) : s);
}

}  // namespace

Rat parse_rat(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    auto slash = s.find('/');
    std::string_view num = s.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
        throw ParseError("bad rational '" + std::string(s) + "'");
    mpz_class n(strip_plus(num)), d{std::string(den)};
    if (d == 0) throw ParseError("zero denominator in '" + std::string(s) + "'");
    Rat q(n, d);
    q.canonicalize();
    return q;
}

std::string to_string(const Rat& q) { return q.get_str(); }

}  // namespace mixfrob
