#pragma once

#include <cstdint>
#include <vector>

#include "wcounts/errors.hpp"

namespace wcounts {

// Dense square integer matrix, row-major, with overflow-checked arithmetic.
struct IntMatrix {
    int n = 0;
    std::vector<long long> a; // n*n entries, row-major

    IntMatrix() = default;
    IntMatrix(int size, std::vector<long long> entries);

    long long& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
    long long at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }

    static IntMatrix identity(int size);

    friend bool operator==(const IntMatrix& x, const IntMatrix& y) {
        return x.n == y.n && x.a == y.a;
    }
};

long long checked_add(long long x, long long y);
long long checked_mul(long long x, long long y);

IntMatrix mat_mul(const IntMatrix& x, const IntMatrix& y);
IntMatrix transpose(const IntMatrix& m);

// Exact determinant by fraction-free (Bareiss) elimination.
long long determinant(const IntMatrix& m);

// gcd of the absolute values of all entries (0 for the zero matrix).
long long content(const IntMatrix& m);

// Elementary divisors d_1 | d_2 | ... | d_n of a nonsingular integer matrix,
// all positive, computed by exact elimination with minimal-pivot selection.
std::vector<long long> elementary_divisors(const IntMatrix& m);

// p-adic valuation of n (n != 0).
int p_valuation(long long n, long long p);

} // namespace wcounts
