#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <mutex>
#include <numeric>
#include <optional>
#include <vector>

#include "inertial/integer.hpp"
#include "inertial/polynomial.hpp"

namespace inertial {

enum class RootSchedule { aberth, durand_kerner };

struct MahlerOptions {
    double tolerance = 1e-9;
    int max_iterations = 200;
    RootSchedule schedule = RootSchedule::aberth;
};

struct MahlerResult {
    double value = 0.0;
    double error_bound = 0.0;
    bool exact = false;
    std::size_t roots_outside = 0;
    // On exact results value == log(*exact_argument).
    std::optional<Integer> exact_argument;
};

inline std::uint64_t euler_totient(std::uint64_t m) {
    std::uint64_t result = m;
    for (std::uint64_t p = 2; p * p <= m; ++p) {
        if (m % p) continue;
        while (m % p == 0) m /= p;
        result -= result / p;
    }
    if (m > 1) result -= result / m;
    return result;
}

// Phi_m, built as (t^m - 1) / prod_{d | m, d < m} Phi_d and cached.
inline const IntPolynomial& cyclotomic(std::uint64_t m) {
    static std::mutex mutex;
    static std::vector<IntPolynomial> cache{IntPolynomial(), IntPolynomial{-1, 1}};
    std::lock_guard<std::mutex> lock(mutex);
    if (m == 0) fail(Errc::invalid_input, "cyclotomic index must be positive");
    while (cache.size() <= m) {
        const std::uint64_t k = cache.size();
        IntPolynomial f = IntPolynomial::monomial(Integer(1), k) - IntPolynomial{1};
        for (std::uint64_t d = 1; d < k; ++d)
            if (k % d == 0) f = *exact_divide(f, cache[d]);
        cache.push_back(std::move(f));
    }
    return cache[m];
}

namespace detail {

struct CyclotomicSplit {
    IntPolynomial rest;
    std::size_t removed_degree = 0;
};

// Divides out every cyclotomic factor; rest keeps no roots of unity.
inline CyclotomicSplit strip_cyclotomic(IntPolynomial f) {
    CyclotomicSplit out;
    if (f.degree() < 1) {
        out.rest = std::move(f);
        return out;
    }
    const std::uint64_t d0 = static_cast<std::uint64_t>(f.degree());
    const std::uint64_t bound = 2 * d0 * d0 + 2;
    for (std::uint64_t m = 1; m <= bound && f.degree() >= 1; ++m) {
        if (euler_totient(m) > static_cast<std::uint64_t>(f.degree())) continue;
        const IntPolynomial& phi = cyclotomic(m);
        while (f.degree() >= phi.degree()) {
            auto q = exact_divide(f, phi);
            if (!q) break;
            f = std::move(*q);
            out.removed_degree += static_cast<std::size_t>(phi.degree());
        }
    }
    out.rest = std::move(f);
    return out;
}

// Yun's algorithm over Z: f = prod a_i^i with a_i squarefree and primitive.
inline std::vector<std::pair<IntPolynomial, std::size_t>> squarefree_factors(const IntPolynomial& f) {
    std::vector<std::pair<IntPolynomial, std::size_t>> out;
    if (f.degree() < 1) return out;
    IntPolynomial df = f.derivative();
    IntPolynomial a0 = polynomial_gcd(f, df);
    IntPolynomial b = *exact_divide(f, a0);
    IntPolynomial c = *exact_divide(df, a0);
    IntPolynomial d = c - b.derivative();
    std::size_t i = 1;
    while (b.degree() >= 1) {
        IntPolynomial a = polynomial_gcd(b, d);
        if (a.degree() >= 1) out.emplace_back(a, i);
        b = *exact_divide(b, a);
        c = *exact_divide(d, a);
        d = c - b.derivative();
        ++i;
    }
    return out;
}

inline std::vector<Integer> positive_divisors(const Integer& n) {
    std::vector<Integer> small, large;
    Integer m = abs(n);
    for (Integer k = 1; k * k <= m; ++k) {
        if (!divides(k, m)) continue;
        small.push_back(k);
        Integer other = m / k;
        if (other != k) large.push_back(other);
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

// Integer value of q^deg * f(p/q).
inline Integer homogeneous_value(const IntPolynomial& f, const Integer& p, const Integer& q) {
    Integer r = 0, qpow = 1;
    const auto& c = f.coeffs();
    std::vector<Integer> ppow(c.size());
    Integer pp = 1;
    for (std::size_t i = 0; i < c.size(); ++i) {
        ppow[i] = pp;
        pp *= p;
    }
    for (std::size_t i = c.size(); i-- > 0;) {
        r += c[i] * ppow[i] * qpow;
        qpow *= q;
    }
    return r;
}

struct RationalRoot {
    Integer p;
    Integer q;  // q > 0, gcd(p, q) = 1
};

inline constexpr long rational_root_search_limit = 1000000000000L;

// Splits off linear factors q t - p; f must be primitive with f(0) != 0.
inline std::vector<RationalRoot> extract_rational_roots(IntPolynomial& f) {
    std::vector<RationalRoot> roots;
    if (f.degree() < 1) return roots;
    if (abs(f.constant_term()) > rational_root_search_limit || abs(f.leading()) > rational_root_search_limit)
        return roots;
    auto ps = positive_divisors(f.constant_term());
    auto qs = positive_divisors(f.leading());
    for (const auto& q : qs) {
        for (const auto& pa : ps) {
            if (gcd(pa, q) != 1) continue;
            for (int sign : {1, -1}) {
                Integer p = sign * pa;
                while (f.degree() >= 1 && homogeneous_value(f, p, q) == 0) {
                    IntPolynomial lin(std::vector<Integer>{-p, q});
                    f = *exact_divide(f, lin);
                    roots.push_back({p, q});
                }
            }
        }
    }
    return roots;
}

using cld = std::complex<long double>;

struct NumericRoots {
    std::vector<cld> z;
};

inline cld horner(const std::vector<long double>& a, cld z) {
    cld r = 0;
    for (std::size_t i = a.size(); i-- > 0;) r = r * z + a[i];
    return r;
}

inline cld horner_derivative(const std::vector<long double>& a, cld z) {
    cld r = 0;
    for (std::size_t i = a.size(); i-- > 1;) r = r * z + static_cast<long double>(i) * a[i];
    return r;
}

inline long double abs_horner(const std::vector<long double>& a, long double x) {
    long double r = 0;
    for (std::size_t i = a.size(); i-- > 0;) r = r * x + std::fabs(a[i]);
    return r;
}

inline std::vector<cld> initial_guesses(const std::vector<long double>& a, RootSchedule schedule) {
    const std::size_t d = a.size() - 1;
    std::vector<cld> z(d);
    if (schedule == RootSchedule::durand_kerner) {
        long double radius = std::pow(std::fabs(a[0] / a[d]), 1.0L / static_cast<long double>(d));
        cld seed(0.4L, 0.9L);
        cld w = 1;
        for (std::size_t k = 0; k < d; ++k) {
            w *= seed;
            z[k] = radius * w / std::abs(w) * (1.0L + 0.01L * static_cast<long double>(k));
        }
        return z;
    }
    long double radius = std::pow(std::fabs(a[0] / a[d]), 1.0L / static_cast<long double>(d));
    const long double two_pi = 6.283185307179586476925286766559L;
    for (std::size_t k = 0; k < d; ++k) {
        long double theta = two_pi * static_cast<long double>(k) / static_cast<long double>(d) + 0.4L;
        z[k] = std::polar(radius, theta);
    }
    return z;
}

// One sweep; returns the largest relative correction.
inline long double refine_step(const std::vector<long double>& a, std::vector<cld>& z, RootSchedule schedule) {
    const std::size_t d = z.size();
    long double worst = 0;
    for (std::size_t k = 0; k < d; ++k) {
        cld pz = horner(a, z[k]);
        if (pz == cld(0)) continue;
        cld step;
        if (schedule == RootSchedule::aberth) {
            cld ratio = pz / horner_derivative(a, z[k]);
            cld s = 0;
            for (std::size_t j = 0; j < d; ++j)
                if (j != k) s += 1.0L / (z[k] - z[j]);
            step = ratio / (1.0L - ratio * s);
        } else {
            cld denom = a.back();
            for (std::size_t j = 0; j < d; ++j)
                if (j != k) denom *= (z[k] - z[j]);
            step = pz / denom;
        }
        if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) continue;
        z[k] -= step;
        long double rel = std::abs(step) / std::max(std::abs(z[k]), 1e-300L);
        worst = std::max(worst, rel);
    }
    return worst;
}

struct Certificate {
    double value = 0.0;
    double error = std::numeric_limits<double>::infinity();
    std::size_t outside = 0;
    bool straddles = false;
    bool all_inside = false;
};

// Inclusion disks r_i = d |p(z_i)| / |lc prod (z_i - z_j)|; a connected component
// of k disks holds exactly k roots.
inline Certificate certify(const std::vector<long double>& a, const std::vector<cld>& z) {
    const std::size_t d = z.size();
    const long double u = std::numeric_limits<long double>::epsilon();
    std::vector<long double> r(d);
    Certificate cert;
    for (std::size_t i = 0; i < d; ++i) {
        long double pz = std::abs(horner(a, z[i]));
        long double rounding = 2.0L * static_cast<long double>(2 * d + 2) * u * abs_horner(a, std::abs(z[i]));
        cld denom = a.back();
        for (std::size_t j = 0; j < d; ++j)
            if (j != i) denom *= (z[i] - z[j]);
        long double den = std::abs(denom) * (1.0L - 4.0L * static_cast<long double>(d) * u);
        if (!(den > 0) || !std::isfinite(den)) return cert;
        r[i] = static_cast<long double>(d) * (pz + rounding) / den * (1.0L + 1e-12L) + 1e-300L;
        if (!std::isfinite(r[i])) return cert;
    }
    // Connected components of overlapping disks.
    std::vector<std::size_t> comp(d);
    std::iota(comp.begin(), comp.end(), 0);
    auto find = [&](std::size_t x) {
        while (comp[x] != x) x = comp[x] = comp[comp[x]];
        return x;
    };
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j)
            if (std::abs(z[i] - z[j]) <= r[i] + r[j]) comp[find(i)] = find(j);
    cert.value = 0.0;
    cert.error = 0.0;
    cert.all_inside = true;
    for (std::size_t c = 0; c < d; ++c) {
        if (find(c) != c) continue;
        long double lo = std::numeric_limits<long double>::infinity(), hi = 0, est = 0;
        std::size_t k = 0;
        for (std::size_t i = 0; i < d; ++i) {
            if (find(i) != c) continue;
            ++k;
            lo = std::min(lo, std::abs(z[i]) - r[i]);
            hi = std::max(hi, std::abs(z[i]) + r[i]);
            est += std::max(0.0L, std::log(std::abs(z[i])));
        }
        long double kk = static_cast<long double>(k);
        long double low = kk * std::max(0.0L, std::log(std::max(lo, 1e-300L)));
        long double high = kk * std::max(0.0L, std::log(hi));
        if (hi >= 1) cert.all_inside = false;
        if (lo > 1) cert.outside += k;
        else if (hi >= 1) cert.straddles = true;
        est = std::clamp(est, low, high);
        cert.value += static_cast<double>(est);
        cert.error += static_cast<double>(std::max(est - low, high - est));
    }
    return cert;
}

inline Certificate numeric_measure(const IntPolynomial& f, const MahlerOptions& opts) {
    std::vector<long double> a;
    a.reserve(f.coeffs().size());
    for (const auto& c : f.coeffs()) {
        long e = 0;
        long double m = mpz_get_d_2exp(&e, c.get_mpz_t());
        a.push_back(std::ldexp(m, static_cast<int>(e)));
    }
    std::vector<cld> z = initial_guesses(a, opts.schedule);
    Certificate best;
    for (int it = 0; it < opts.max_iterations; ++it) {
        long double change = refine_step(a, z, opts.schedule);
        if (change > 1e-6L) continue;
        Certificate c = certify(a, z);
        if (c.error < best.error || (c.error == best.error && !c.straddles)) best = c;
        if (best.error <= opts.tolerance * 0.5 && (change < 1e-17L || best.error == 0.0)) return best;
    }
    if (best.error <= opts.tolerance) return best;
    if (best.straddles)
        fail(Errc::indeterminate_near_unit_circle,
             "a root modulus could not be separated from 1 within " + std::to_string(opts.max_iterations) + " iterations");
    fail(Errc::budget_exceeded, "root refinement did not reach tolerance within " + std::to_string(opts.max_iterations) +
                                    " iterations");
}

}  // namespace detail

// Exact: t-factors stripped, monic, the remainder after removing cyclotomic factors is +-1.
inline bool kronecker_test(const IntPolynomial& f) {
    if (f.is_zero()) fail(Errc::zero_polynomial, "kronecker test of the zero polynomial");
    IntPolynomial g = f.shift_down(f.low_order());
    if (g.degree() == 0) return abs(g.leading()) == 1;
    if (abs(g.leading()) != 1 || abs(g.constant_term()) != 1) return false;
    auto split = detail::strip_cyclotomic(g);
    return split.rest.degree() == 0 && abs(split.rest.leading()) == 1;
}

inline MahlerResult mahler_measure(const IntPolynomial& f, const MahlerOptions& opts = {}) {
    if (f.is_zero()) fail(Errc::zero_polynomial, "mahler measure of the zero polynomial");
    if (!(opts.tolerance > 0)) fail(Errc::invalid_input, "tolerance must be positive");
    IntPolynomial g = f.shift_down(f.low_order());
    Integer exact_arg = g.content();
    g = primitive_part(g);
    auto split = detail::strip_cyclotomic(std::move(g));
    MahlerResult res;
    double numeric = 0.0, error = 0.0;
    bool numeric_nonzero = false;
    for (auto& [factor, mult] : detail::squarefree_factors(split.rest)) {
        IntPolynomial h = factor;
        for (const auto& root : detail::extract_rational_roots(h)) {
            Integer big = std::max(abs(root.p), abs(root.q));
            for (std::size_t k = 0; k < mult; ++k) exact_arg *= big;
            if (abs(root.p) > root.q) res.roots_outside += mult;
        }
        if (h.degree() < 1) {
            for (std::size_t k = 0; k < mult; ++k) exact_arg *= abs(h.leading());
            continue;
        }
        for (std::size_t k = 0; k < mult; ++k) exact_arg *= abs(h.leading());
        detail::Certificate cert = detail::numeric_measure(h, opts);
        if (cert.all_inside) continue;
        numeric_nonzero = true;
        numeric += static_cast<double>(mult) * cert.value;
        error += static_cast<double>(mult) * cert.error;
        res.roots_outside += mult * cert.outside;
    }
    // Leading coefficient of the primitive remainder of the leading factor product.
    double base = log_abs(exact_arg);
    if (!numeric_nonzero) {
        res.value = base;
        res.error_bound = 0.0;
        res.exact = true;
        res.exact_argument = exact_arg;
        return res;
    }
    res.value = base + numeric;
    res.error_bound = error + 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, res.value);
    res.exact = false;
    return res;
}

struct ScanHit {
    IntPolynomial polynomial;
    MahlerResult measure;
};

inline constexpr std::uint64_t default_scan_budget = 20000000;

// Monic f with f(0) != 0, 1 <= deg f <= degree_max, coefficients in [-h, h],
// not cyclotomic, measure below threshold; sorted by measure then polynomial.
inline std::vector<ScanHit> small_measure_scan(int degree_max, int height_max, double threshold,
                                               const MahlerOptions& opts = {},
                                               std::uint64_t budget = default_scan_budget) {
    if (degree_max < 1 || height_max < 1) fail(Errc::invalid_input, "degree and height bounds must be positive");
    long double total = 0;
    for (int d = 1; d <= degree_max; ++d)
        total += std::pow(static_cast<long double>(2 * height_max + 1), d - 1) * (2.0L * height_max);
    if (total > static_cast<long double>(budget))
        fail(Errc::budget_exceeded, "scan would enumerate more than " + std::to_string(budget) + " polynomials");
    std::vector<ScanHit> hits;
    if (!(threshold > 0)) return hits;
    for (int d = 1; d <= degree_max; ++d) {
        std::vector<long> c(static_cast<std::size_t>(d) + 1, -height_max);
        c[static_cast<std::size_t>(d)] = 1;
        while (true) {
            if (c[0] != 0) {
                IntPolynomial f(std::vector<Integer>(c.begin(), c.end()));
                if (!kronecker_test(f)) {
                    MahlerResult m = mahler_measure(f, opts);
                    if (m.value < threshold) hits.push_back({std::move(f), m});
                }
            }
            std::size_t i = 0;
            while (i < static_cast<std::size_t>(d) && c[i] == height_max) c[i++] = -height_max;
            if (i == static_cast<std::size_t>(d)) break;
            ++c[i];
        }
    }
    std::sort(hits.begin(), hits.end(), [](const ScanHit& a, const ScanHit& b) {
        if (a.measure.value != b.measure.value) return a.measure.value < b.measure.value;
        return a.polynomial < b.polynomial;
    });
    return hits;
}

}  // namespace inertial
