#pragma once

#include <string>
#include <vector>

#include "wcounts/errors.hpp"

namespace wcounts {

// A place of Q: either the archimedean place or a finite prime.
struct Place {
    bool archimedean = true;
    long long prime = 0; // meaningful only when !archimedean

    static Place infinite() { return Place{true, 0}; }
    static Place finite(long long p);

    friend bool operator==(const Place& a, const Place& b) {
        return a.archimedean == b.archimedean && (a.archimedean || a.prime == b.prime);
    }
    friend bool operator<(const Place& a, const Place& b) {
        if (a.archimedean != b.archimedean) return a.archimedean; // inf sorts first
        if (a.archimedean) return false;
        return a.prime < b.prime;
    }

    std::string str() const { return archimedean ? "inf" : std::to_string(prime); }

    // Accepts "inf", "oo", or a prime number.
    static Place parse(const std::string& text);
};

bool is_prime(long long n);

// Finite primes of S, sorted ascending.
std::vector<long long> finite_primes(const std::vector<Place>& places);

bool contains_infinite_place(const std::vector<Place>& places);

} // namespace wcounts
