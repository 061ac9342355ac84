#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "recoupler/hadamard.hpp"

namespace recoupler {

// Exact sieve of Eratosthenes; all prime machinery is deterministic.
class PrimeSieve {
public:
    static constexpr long kDefaultLimit = 10'000'000;

    explicit PrimeSieve(long limit = kDefaultLimit);

    long limit() const { return limit_; }
    bool is_prime(long x) const;
    const std::vector<long>& primes() const { return primes_; }

    // Smallest prime > x within the sieve, or nullopt.
    std::optional<long> next_prime_after(long x) const;

private:
    long limit_;
    std::vector<bool> composite_;
    std::vector<long> primes_;
};

// pi(x): primes p with 2 <= p <= x.
long prime_pi(const PrimeSieve& sieve, long x);

// pi(x, a, q): primes p = a (mod q) with 2 <= p <= x; requires gcd(a, q) = 1.
long prime_pi_ap(const PrimeSieve& sieve, long x, long a, long q);

struct RosserCheck {
    double x;
    double lower;  // x / (ln x - 1/2)
    double upper;  // x / (ln x - 3/2)
    long pi;
    bool holds;    // lower < pi < upper
};

// Evaluates the double inequality at x; domain requires ln x > 3/2.
RosserCheck rosser_check(const PrimeSieve& sieve, double x);

struct RosserScan {
    long lo = 0, hi = 0;
    long checked = 0;
    long violations = 0;
    long first_violation = 0;  // 0 when none
    bool holds_everywhere = false;
};

RosserScan rosser_scan(const PrimeSieve& sieve, long lo, long hi);

// Smallest prime in (n, n * (1 + epsilon)], or nullopt when the interval
// holds none.
std::optional<long> prime_in_interval(const PrimeSieve& sieve, long n, double epsilon);

struct IntervalScan {
    long lo = 0, hi = 0;
    long checked = 0;
    long misses = 0;
    long first_miss = 0;
    bool holds_everywhere = false;
};

// Scans n in [lo, hi] for a prime in (n, n * (1 + 2/ln n)].
IntervalScan prime_interval_scan(const PrimeSieve& sieve, long lo, long hi);

// One window (n, n * (1 + eps)^r] with eps = 2 / ln n: how many primes it
// holds, whether one is 3 mod 4, and whether the registry's n_bar obeys the
// implied bound n_bar(n) <= n * (1 + eps)^r + 1.
struct PaleyWindow {
    long n = 0;
    int r = 0;
    double epsilon = 0.0;
    double window_end = 0.0;
    long primes_found = 0;
    bool has_3mod4 = false;
    long first_3mod4 = 0;
    bool bound_holds = false;
};

PaleyWindow paley_reachability(const PrimeSieve& sieve, const OrderRegistry& registry, long n, int r);

struct PaleyScan {
    int r = 0;
    long lo = 0, hi = 0;
    long checked = 0;
    long with_3mod4 = 0;
    double fraction = 0.0;
    double threshold = 0.0;  // 1 - 2^{-r}
    bool holds = false;      // fraction >= threshold
};

PaleyScan paley_scan(const PrimeSieve& sieve, const OrderRegistry& registry, long lo, long hi, int r);

// Per-n availability stats against the constructible registry.
struct GapStats {
    long n = 0;
    long n_under = 0;
    long n_over = 0;
    long delta = 0;
    long c_num = 0, c_den = 0;  // c = n_over / n in lowest terms
    double c = 0.0;
};

std::vector<GapStats> c_table(long max_n, const OrderRegistry& registry);

struct CSummary {
    long max_n = 0;
    double max_c = 0.0;
    double median_c = 0.0;
    long count_above_1_1 = 0;
    long max_delta = 0;
};

CSummary c_summary(const std::vector<GapStats>& table);

// CSV columns: n, n_under, n_over, delta, c.
void write_c_table_csv(std::ostream& os, const std::vector<GapStats>& table);

}  // namespace recoupler
