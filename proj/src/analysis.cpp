#include "recoupler/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace recoupler {

PrimeSieve::PrimeSieve(long limit) : limit_(std::max(limit, 2L)), composite_(limit_ + 1, false) {
    composite_[0] = composite_[1] = true;
    for (long p = 2; p * p <= limit_; ++p)
        if (!composite_[p])
            for (long m = p * p; m <= limit_; m += p) composite_[m] = true;
    for (long p = 2; p <= limit_; ++p)
        if (!composite_[p]) primes_.push_back(p);
}

bool PrimeSieve::is_prime(long x) const {
    if (x < 2) return false;
    if (x > limit_) throw IndexOutOfRangeError("x beyond sieve limit " + std::to_string(limit_));
    return !composite_[x];
}

std::optional<long> PrimeSieve::next_prime_after(long x) const {
    auto it = std::upper_bound(primes_.begin(), primes_.end(), x);
    if (it == primes_.end()) return std::nullopt;
    return *it;
}

long prime_pi(const PrimeSieve& sieve, long x) {
    if (x < 2) return 0;
    if (x > sieve.limit()) throw IndexOutOfRangeError("x beyond sieve limit");
    auto it = std::upper_bound(sieve.primes().begin(), sieve.primes().end(), x);
    return static_cast<long>(it - sieve.primes().begin());
}

long prime_pi_ap(const PrimeSieve& sieve, long x, long a, long q) {
    if (q < 1 || a < 0) throw BadProgressionError(a, q);
    if (std::gcd(a, q) != 1) throw BadProgressionError(a, q);
    if (x > sieve.limit()) throw IndexOutOfRangeError("x beyond sieve limit");
    long count = 0;
    for (long p : sieve.primes()) {
        if (p > x) break;
        if (p % q == a % q) ++count;
    }
    return count;
}

RosserCheck rosser_check(const PrimeSieve& sieve, double x) {
    if (!(std::log(x) > 1.5)) throw DomainTooSmallError(x);
    RosserCheck rc;
    rc.x = x;
    rc.lower = x / (std::log(x) - 0.5);
    rc.upper = x / (std::log(x) - 1.5);
    rc.pi = prime_pi(sieve, static_cast<long>(std::floor(x)));
    rc.holds = rc.lower < static_cast<double>(rc.pi) && static_cast<double>(rc.pi) < rc.upper;
    return rc;
}

RosserScan rosser_scan(const PrimeSieve& sieve, long lo, long hi) {
    RosserScan scan;
    scan.lo = lo;
    scan.hi = hi;
    long pi = prime_pi(sieve, std::max(lo - 1, 0L));
    std::size_t next_idx = static_cast<std::size_t>(pi);
    const auto& primes = sieve.primes();
    for (long x = lo; x <= hi; ++x) {
        while (next_idx < primes.size() && primes[next_idx] <= x) {
            ++pi;
            ++next_idx;
        }
        const double lx = std::log(static_cast<double>(x));
        const double lower = x / (lx - 0.5);
        const double upper = x / (lx - 1.5);
        ++scan.checked;
        if (!(lower < pi && pi < upper)) {
            ++scan.violations;
            if (scan.first_violation == 0) scan.first_violation = x;
        }
    }
    scan.holds_everywhere = scan.violations == 0;
    return scan;
}

std::optional<long> prime_in_interval(const PrimeSieve& sieve, long n, double epsilon) {
    const double end = static_cast<double>(n) * (1.0 + epsilon);
    const long end_floor = static_cast<long>(std::floor(end));
    if (end_floor > sieve.limit()) throw IndexOutOfRangeError("interval end beyond sieve limit");
    auto p = sieve.next_prime_after(n);
    if (p && *p <= end_floor) return p;
    return std::nullopt;
}

IntervalScan prime_interval_scan(const PrimeSieve& sieve, long lo, long hi) {
    IntervalScan scan;
    scan.lo = lo;
    scan.hi = hi;
    for (long n = lo; n <= hi; ++n) {
        const double eps = 2.0 / std::log(static_cast<double>(n));
        ++scan.checked;
        if (!prime_in_interval(sieve, n, eps)) {
            ++scan.misses;
            if (scan.first_miss == 0) scan.first_miss = n;
        }
    }
    scan.holds_everywhere = scan.misses == 0;
    return scan;
}

PaleyWindow paley_reachability(const PrimeSieve& sieve, const OrderRegistry& registry, long n, int r) {
    if (n < 3 || r < 1) throw IndexOutOfRangeError("paley reachability needs n >= 3, r >= 1");
    PaleyWindow w;
    w.n = n;
    w.r = r;
    w.epsilon = 2.0 / std::log(static_cast<double>(n));
    w.window_end = static_cast<double>(n) * std::pow(1.0 + w.epsilon, r);
    const long end_floor = static_cast<long>(std::floor(w.window_end));
    if (end_floor > sieve.limit()) throw IndexOutOfRangeError("window beyond sieve limit");
    for (long p = n + 1; p <= end_floor; ++p) {
        if (!sieve.is_prime(p)) continue;
        ++w.primes_found;
        if (p % 4 == 3 && !w.has_3mod4) {
            w.has_3mod4 = true;
            w.first_3mod4 = p;
        }
    }
    if (w.has_3mod4) {
        const long nbar = registry.n_bar(n);
        w.bound_holds = static_cast<double>(nbar) <= w.window_end + 1.0;
    }
    return w;
}

PaleyScan paley_scan(const PrimeSieve& sieve, const OrderRegistry& registry, long lo, long hi, int r) {
    PaleyScan scan;
    scan.r = r;
    scan.lo = lo;
    scan.hi = hi;
    scan.threshold = 1.0 - std::pow(2.0, -r);
    for (long n = lo; n <= hi; ++n) {
        PaleyWindow w = paley_reachability(sieve, registry, n, r);
        ++scan.checked;
        if (w.has_3mod4) ++scan.with_3mod4;
    }
    scan.fraction = scan.checked > 0 ? static_cast<double>(scan.with_3mod4) / static_cast<double>(scan.checked) : 0.0;
    scan.holds = scan.fraction >= scan.threshold;
    return scan;
}

std::vector<GapStats> c_table(long max_n, const OrderRegistry& registry) {
    if (max_n < 1) throw IndexOutOfRangeError("max_n must be >= 1");
    std::vector<GapStats> table;
    table.reserve(max_n);
    for (long n = 1; n <= max_n; ++n) {
        const OrderGap g = registry.gap(n);
        GapStats st;
        st.n = n;
        st.n_under = g.n_under;
        st.n_over = g.n_over;
        st.delta = g.delta;
        const long d = std::gcd(g.n_over, n);
        st.c_num = g.n_over / d;
        st.c_den = n / d;
        st.c = g.c;
        table.push_back(st);
    }
    return table;
}

CSummary c_summary(const std::vector<GapStats>& table) {
    CSummary s;
    if (table.empty()) return s;
    s.max_n = table.back().n;
    std::vector<double> cs;
    cs.reserve(table.size());
    for (const auto& st : table) {
        cs.push_back(st.c);
        s.max_c = std::max(s.max_c, st.c);
        s.max_delta = std::max(s.max_delta, st.delta);
        if (st.c > 1.1) ++s.count_above_1_1;
    }
    std::sort(cs.begin(), cs.end());
    const std::size_t mid = cs.size() / 2;
    s.median_c = cs.size() % 2 == 1 ? cs[mid] : 0.5 * (cs[mid - 1] + cs[mid]);
    return s;
}

void write_c_table_csv(std::ostream& os, const std::vector<GapStats>& table) {
    os << "n,n_under,n_over,delta,c\n";
    char buf[64];
    for (const auto& st : table) {
        std::snprintf(buf, sizeof buf, "%.6f", st.c);
        os << st.n << ',' << st.n_under << ',' << st.n_over << ',' << st.delta << ',' << buf << '\n';
    }
}

}  // namespace recoupler
