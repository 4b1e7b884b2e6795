#include "wcounts/place.hpp"

#include <algorithm>

namespace wcounts {

bool is_prime(long long n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    if (n % 3 == 0) return n == 3;
    for (long long d = 5; d * d <= n; d += 6) {
        if (n % d == 0 || n % (d + 2) == 0) return false;
    }
    return true;
}

Place Place::finite(long long p) {
    if (!is_prime(p))
        throw validation_error("place", "finite place must be a prime, got " + std::to_string(p));
    return Place{false, p};
}

Place Place::parse(const std::string& text) {
    if (text == "inf" || text == "oo" || text == "infinity") return infinite();
    try {
        size_t pos = 0;
        long long p = std::stoll(text, &pos);
        if (pos != text.size()) throw std::invalid_argument(text);
        return finite(p);
    } catch (const validation_error&) {
        throw;
    } catch (const std::exception&) {
        throw validation_error("place", "cannot parse place '" + text + "' (expected 'inf' or a prime)");
    }
}

std::vector<long long> finite_primes(const std::vector<Place>& places) {
    std::vector<long long> out;
    for (const auto& v : places)
        if (!v.archimedean) out.push_back(v.prime);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool contains_infinite_place(const std::vector<Place>& places) {
    for (const auto& v : places)
        if (v.archimedean) return true;
    return false;
}

} // namespace wcounts
