#include "wcounts/matrix.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace wcounts {

IntMatrix::IntMatrix(int size, std::vector<long long> entries) : n(size), a(std::move(entries)) {
    if (n <= 0 || a.size() != static_cast<size_t>(n) * n)
        throw validation_error("matrix", "entry count does not match matrix size");
}

IntMatrix IntMatrix::identity(int size) {
    IntMatrix m(size, std::vector<long long>(static_cast<size_t>(size) * size, 0));
    for (int i = 0; i < size; ++i) m.at(i, i) = 1;
    return m;
}

long long checked_add(long long x, long long y) {
    long long r;
    if (__builtin_add_overflow(x, y, &r)) throw overflow_error("matrix", "integer addition overflow");
    return r;
}

long long checked_mul(long long x, long long y) {
    long long r;
    if (__builtin_mul_overflow(x, y, &r)) throw overflow_error("matrix", "integer multiplication overflow");
    return r;
}

IntMatrix mat_mul(const IntMatrix& x, const IntMatrix& y) {
    if (x.n != y.n) throw validation_error("matrix", "size mismatch in product");
    IntMatrix r(x.n, std::vector<long long>(static_cast<size_t>(x.n) * x.n, 0));
    for (int i = 0; i < x.n; ++i)
        for (int k = 0; k < x.n; ++k) {
            if (x.at(i, k) == 0) continue;
            for (int j = 0; j < x.n; ++j)
                r.at(i, j) = checked_add(r.at(i, j), checked_mul(x.at(i, k), y.at(k, j)));
        }
    return r;
}

IntMatrix transpose(const IntMatrix& m) {
    IntMatrix r(m.n, std::vector<long long>(m.a.size(), 0));
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j) r.at(j, i) = m.at(i, j);
    return r;
}

long long determinant(const IntMatrix& m) {
    const int n = m.n;
    if (n == 1) return m.a[0];
    if (n == 2) {
        __int128 d = static_cast<__int128>(m.a[0]) * m.a[3] -
                     static_cast<__int128>(m.a[1]) * m.a[2];
        if (d > INT64_MAX || d < INT64_MIN)
            throw overflow_error("matrix", "determinant outside 64-bit range");
        return static_cast<long long>(d);
    }
    if (n == 3) {
        const auto& a = m.a;
        __int128 d = static_cast<__int128>(a[0]) * (static_cast<__int128>(a[4]) * a[8] -
                                                    static_cast<__int128>(a[5]) * a[7]) -
                     static_cast<__int128>(a[1]) * (static_cast<__int128>(a[3]) * a[8] -
                                                    static_cast<__int128>(a[5]) * a[6]) +
                     static_cast<__int128>(a[2]) * (static_cast<__int128>(a[3]) * a[7] -
                                                    static_cast<__int128>(a[4]) * a[6]);
        if (d > INT64_MAX || d < INT64_MIN)
            throw overflow_error("matrix", "determinant outside 64-bit range");
        return static_cast<long long>(d);
    }
    // Bareiss: all intermediate values are minors, exact division at each step.
    std::vector<__int128> w(m.a.begin(), m.a.end());
    auto at = [&](int i, int j) -> __int128& { return w[static_cast<size_t>(i) * n + j]; };
    __int128 prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (at(k, k) == 0) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (at(i, k) != 0) { piv = i; break; }
            if (piv < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(at(k, j), at(piv, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
        prev = at(k, k);
    }
    __int128 det = sign > 0 ? at(n - 1, n - 1) : -at(n - 1, n - 1);
    if (det > INT64_MAX || det < INT64_MIN)
        throw overflow_error("matrix", "determinant outside 64-bit range");
    return static_cast<long long>(det);
}

long long content(const IntMatrix& m) {
    long long g = 0;
    for (long long v : m.a) g = std::gcd(g, v < 0 ? -v : v);
    return g;
}

std::vector<long long> elementary_divisors(const IntMatrix& m) {
    const int n = m.n;
    IntMatrix w = m;

    auto abs64 = [](long long v) { return v < 0 ? -v : v; };

    for (int s = 0; s < n; ++s) {
        while (true) {
            // Pivot: smallest nonzero absolute value in the trailing block.
            int pi = -1, pj = -1;
            long long best = 0;
            for (int i = s; i < n; ++i)
                for (int j = s; j < n; ++j)
                    if (w.at(i, j) != 0 && (pi < 0 || abs64(w.at(i, j)) < best)) {
                        best = abs64(w.at(i, j));
                        pi = i;
                        pj = j;
                    }
            if (pi < 0)
                throw validation_error("matrix", "singular matrix has no elementary divisor chain");
            if (pi != s)
                for (int j = 0; j < n; ++j) std::swap(w.at(s, j), w.at(pi, j));
            if (pj != s)
                for (int i = 0; i < n; ++i) std::swap(w.at(i, s), w.at(i, pj));

            bool clean = true;
            for (int i = s + 1; i < n; ++i) {
                if (w.at(i, s) == 0) continue;
                long long q = w.at(i, s) / w.at(s, s);
                if (q != 0)
                    for (int j = s; j < n; ++j)
                        w.at(i, j) = checked_add(w.at(i, j), checked_mul(-q, w.at(s, j)));
                if (w.at(i, s) != 0) clean = false;
            }
            for (int j = s + 1; j < n; ++j) {
                if (w.at(s, j) == 0) continue;
                long long q = w.at(s, j) / w.at(s, s);
                if (q != 0)
                    for (int i = s; i < n; ++i)
                        w.at(i, j) = checked_add(w.at(i, j), checked_mul(-q, w.at(i, s)));
                if (w.at(s, j) != 0) clean = false;
            }
            if (!clean) continue;

            // Divisibility: pull any non-multiple into the pivot row and redo.
            bool divides_all = true;
            for (int i = s + 1; i < n && divides_all; ++i)
                for (int j = s + 1; j < n && divides_all; ++j)
                    if (w.at(i, j) % w.at(s, s) != 0) {
                        for (int c = s; c < n; ++c)
                            w.at(s, c) = checked_add(w.at(s, c), w.at(i, c));
                        divides_all = false;
                    }
            if (divides_all) break;
        }
    }

    std::vector<long long> d(n);
    for (int i = 0; i < n; ++i) d[i] = abs64(w.at(i, i));
    return d;
}

int p_valuation(long long n, long long p) {
    if (n == 0) throw validation_error("matrix", "valuation of zero is undefined");
    if (n < 0) n = -n;
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

} // namespace wcounts
