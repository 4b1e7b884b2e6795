#include "wcounts/rational.hpp"

#include <cctype>
#include <ostream>

namespace wcounts {

Rational Rational::parse(const std::string& text) {
    if (text.empty()) throw validation_error("rational", "empty rational literal");
    auto parse_int = [](const std::string& s) -> long long {
        if (s.empty()) throw validation_error("rational", "empty integer in rational literal");
        size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) throw validation_error("rational", "sign without digits: '" + s + "'");
        for (size_t k = i; k < s.size(); ++k)
            if (!std::isdigit(static_cast<unsigned char>(s[k])))
                throw validation_error("rational", "invalid rational literal: '" + s + "'");
        try {
            return std::stoll(s);
        } catch (const std::out_of_range&) {
            throw overflow_error("rational", "literal outside 64-bit range: '" + s + "'");
        }
    };
    auto slash = text.find('/');
    if (slash == std::string::npos) return Rational(parse_int(text));
    long long n = parse_int(text.substr(0, slash));
    long long d = parse_int(text.substr(slash + 1));
    if (d == 0) throw validation_error("rational", "zero denominator: '" + text + "'");
    return Rational(n, d);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

} // namespace wcounts
