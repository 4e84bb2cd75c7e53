// formulas.hpp - exact counting formulas and log-space bound evaluators
#ifndef KHAM_FORMULAS_HPP
#define KHAM_FORMULAS_HPP

#include <cmath>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace kham {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

inline BigInt factorial_big(int n) {
    BigInt f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// c_k(ell) = r!(k-ell-r)! with r = k mod (k-ell): the number of
// within-window reorderings fixing a cycle's edge set, per stride block.
inline long long c_k_ell(int k, int ell) {
    if (ell < 0 || ell >= k) throw std::invalid_argument("c_k_ell: need 0 <= ell < k");
    const int d = k - ell;
    const int r = k % d;
    auto fact = [](int x) {
        long long f = 1;
        for (int i = 2; i <= x; ++i) f *= i;
        return f;
    };
    return fact(r) * fact(d - r);
}

struct ExactCount {
    BigRational value;
    bool reliable = true;  // false for degenerate 2-edge cycles (n = 2(k-ell))
};

// Psi_k(n, ell) = (n-1)! * (k-ell)/2 * c_k(ell)^{-n/(k-ell)}: the number of
// Hamiltonian ell-cycles in the complete k-graph on n vertices.
inline ExactCount psi(int n, int k, int ell) {
    if (ell < 0 || ell >= k) throw std::invalid_argument("psi: need 0 <= ell < k");
    const int d = k - ell;
    if (n < k || n % d != 0)
        throw std::invalid_argument("psi: need (k-ell) | n and n >= k");
    BigRational v = BigRational(factorial_big(n - 1) * d, 2);
    BigInt c = c_k_ell(k, ell);
    BigInt cpow = 1;
    for (int i = 0; i < n / d; ++i) cpow *= c;
    v /= BigRational(cpow);
    ExactCount res{v, n / d >= 3};
    return res;
}

struct LogBound {
    double log_value = 0.0;
    double slack = 1.0;
    bool domain_warning = false;  // delta outside the range where the bound holds
};

inline double log_psi(int n, int k, int ell) {
    const int d = k - ell;
    if (n < k || n % d != 0)
        throw std::invalid_argument("log_psi: need (k-ell) | n and n >= k");
    return std::lgamma(n) + std::log(d / 2.0) -
           (static_cast<double>(n) / d) * std::log(static_cast<double>(c_k_ell(k, ell)));
}

// log of slack^n * Psi_k(n,ell) * delta^{n/(k-ell)}.
inline LogBound dirac_lower_bound_log(int n, int k, int ell, double delta,
                                      double slack) {
    if (slack <= 0.0 || slack > 1.0)
        throw std::invalid_argument("dirac_lower_bound_log: slack must be in (0,1]");
    if (delta <= 0.0 || delta > 1.0)
        throw std::invalid_argument("dirac_lower_bound_log: delta must be in (0,1]");
    const int d = k - ell;
    LogBound b;
    b.slack = slack;
    b.domain_warning = delta <= 0.5;  // bound not asserted below 1/2
    b.log_value = n * std::log(slack) + log_psi(n, k, ell) +
                  (static_cast<double>(n) / d) * std::log(delta);
    return b;
}

// log of (n-1)! * p^n / 2: the expected Hamiltonian cycle count in G_{n,p}.
inline double gnp_expected_ham_log(int n, double p) {
    if (n < 3) throw std::invalid_argument("gnp_expected_ham_log: need n >= 3");
    if (p <= 0.0 || p > 1.0)
        throw std::invalid_argument("gnp_expected_ham_log: p must be in (0,1]");
    return std::lgamma(n) + n * std::log(p) - std::log(2.0);
}

struct MatchingBound {
    double log_value = 0.0;
    bool domain_warning = false;  // d below n/2
};

// log of n! * (d/n)^n: the Cuckler-Kahn perfect matching lower bound for a
// bipartite graph with sides of size n and minimum degree d.
inline MatchingBound ck_matching_bound_log(int n_side, double d) {
    if (n_side < 1)
        throw std::invalid_argument("ck_matching_bound_log: need n >= 1");
    if (d < 0 || d > n_side)
        throw std::invalid_argument("ck_matching_bound_log: need 0 <= d <= n");
    MatchingBound b;
    b.domain_warning = d < n_side / 2.0;
    b.log_value = std::lgamma(n_side + 1.0) +
                  n_side * std::log(d / static_cast<double>(n_side));
    return b;
}

}  // namespace kham

#endif  // KHAM_FORMULAS_HPP
