#include "wcounts/root_system.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "wcounts/errors.hpp"

namespace wcounts {

namespace {

void require_valid_type(char t, int rank) {
    auto reject = [&](const std::string& constraint) {
        throw validation_error("root_system",
                               std::string("invalid type ") + t + std::to_string(rank) +
                                   ": " + constraint);
    };
    switch (t) {
        case 'A':
            if (rank < 1) reject("type A requires rank >= 1");
            break;
        case 'B':
        case 'C':
            if (rank < 2) reject("types B and C require rank >= 2");
            break;
        case 'D':
            if (rank < 3) reject("type D requires rank >= 3");
            break;
        case 'E':
            if (rank < 6 || rank > 8) reject("type E requires rank in {6,7,8}");
            break;
        case 'F':
            if (rank != 4) reject("type F requires rank 4");
            break;
        case 'G':
            if (rank != 2) reject("type G requires rank 2");
            break;
        default:
            reject("type letter must be one of A,B,C,D,E,F,G");
    }
}

// cartan[i][j] = <alpha_i, alpha_j^vee>, Bourbaki numbering.
std::vector<std::vector<long long>> cartan_matrix(char t, int n) {
    std::vector<std::vector<long long>> a(n, std::vector<long long>(n, 0));
    for (int i = 0; i < n; ++i) a[i][i] = 2;
    auto link = [&](int i, int j) { a[i][j] = -1; a[j][i] = -1; }; // simple edge, 0-based

    switch (t) {
        case 'A':
            for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
            break;
        case 'B':
            // chain with a short last root: <alpha_{n-1}, alpha_n^vee> = -2
            for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
            a[n - 2][n - 1] = -2;
            break;
        case 'C':
            // transpose of B: the last root is long
            for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
            a[n - 1][n - 2] = -2;
            break;
        case 'D':
            for (int i = 0; i + 1 < n - 1; ++i) link(i, i + 1);
            a[n - 1][n - 2] = 0;
            a[n - 2][n - 1] = 0;
            link(n - 3, n - 1);
            break;
        case 'E':
            // nodes 1-3-4-5-... in a chain, node 2 hangs off node 4
            link(0, 2);
            for (int i = 2; i + 1 < n; ++i) link(i, i + 1);
            link(1, 3);
            break;
        case 'F':
            link(0, 1);
            link(2, 3);
            a[1][2] = -2; // alpha_2 long, alpha_3 short
            a[2][1] = -1;
            break;
        case 'G':
            a[0][1] = -1; // alpha_1 short, alpha_2 long
            a[1][0] = -3;
            break;
    }
    return a;
}

} // namespace

RootSystem build_root_system(char type_letter, int rank) {
    require_valid_type(type_letter, rank);

    RootSystem rs;
    rs.type_letter = type_letter;
    rs.rank = rank;
    rs.cartan = cartan_matrix(type_letter, rank);

    // Root-string closure from the simple roots. For a known positive root
    // beta and simple root alpha_i, beta + alpha_i is a root iff
    // q = p - <beta, alpha_i^vee> > 0 where p is the largest k with
    // beta - k*alpha_i a root.
    std::set<std::vector<long long>> roots;
    std::vector<std::vector<long long>> frontier;
    for (int i = 0; i < rank; ++i) {
        std::vector<long long> e(rank, 0);
        e[i] = 1;
        roots.insert(e);
        frontier.push_back(e);
    }

    while (!frontier.empty()) {
        std::vector<std::vector<long long>> next;
        for (const auto& beta : frontier) {
            for (int i = 0; i < rank; ++i) {
                long long pairing = 0;
                for (int j = 0; j < rank; ++j) pairing += beta[j] * rs.cartan[j][i];

                long long p = 0;
                std::vector<long long> back = beta;
                while (true) {
                    back[i] -= 1;
                    if (back[i] < 0 || !roots.count(back)) break;
                    ++p;
                }

                if (p - pairing > 0) {
                    std::vector<long long> up = beta;
                    up[i] += 1;
                    if (roots.insert(up).second) next.push_back(std::move(up));
                }
            }
        }
        frontier = std::move(next);
    }

    rs.positive_roots.assign(roots.begin(), roots.end()); // set order = lexicographic
    rs.kappa.assign(rank, 0);
    for (const auto& beta : rs.positive_roots)
        for (int i = 0; i < rank; ++i) rs.kappa[i] += beta[i];
    return rs;
}

std::vector<long long> kappa_vector(const RootSystem& rs) {
    std::vector<long long> k(rs.rank, 0);
    for (const auto& beta : rs.positive_roots)
        for (int i = 0; i < rs.rank; ++i) k[i] += beta[i];
    return k;
}

Cocharacter cocharacter(const RootSystem& rs, int theta_index) {
    if (theta_index < 0 || theta_index >= rs.rank)
        throw validation_error("root_system",
                               "cocharacter index " + std::to_string(theta_index) +
                                   " out of range for rank " + std::to_string(rs.rank));
    Cocharacter c;
    c.theta_index = theta_index;
    c.pairing_row.assign(rs.rank, 0);
    c.pairing_row[theta_index] = -1;
    return c;
}

bool is_regular_dominant(const RootSystem& rs, const std::vector<Rational>& lam) {
    if (static_cast<int>(lam.size()) != rs.rank)
        throw validation_error("root_system",
                               "divisor vector has " + std::to_string(lam.size()) +
                                   " entries, expected rank " + std::to_string(rs.rank));
    // weight-basis coefficient i of lam is <lam, alpha_i^vee> = (C^T lam)_i
    for (int i = 0; i < rs.rank; ++i) {
        Rational m(0);
        for (int j = 0; j < rs.rank; ++j) m += Rational(rs.cartan[j][i]) * lam[j];
        if (!(m > Rational(0))) return false;
    }
    return true;
}

long long positive_root_count_formula(char t, int n) {
    switch (t) {
        case 'A': return static_cast<long long>(n) * (n + 1) / 2;
        case 'B':
        case 'C': return static_cast<long long>(n) * n;
        case 'D': return static_cast<long long>(n) * (n - 1);
        case 'E': return n == 6 ? 36 : (n == 7 ? 63 : 120);
        case 'F': return 24;
        case 'G': return 6;
    }
    throw validation_error("root_system", std::string("unknown type letter ") + t);
}

std::string type_name(const RootSystem& rs) {
    return std::string(1, rs.type_letter) + std::to_string(rs.rank);
}

} // namespace wcounts
