#ifndef LIFTCOAL_RATES_HPP
#define LIFTCOAL_RATES_HPP

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "liftcoal/gauss_jacobi.hpp"
#include "liftcoal/rational.hpp"

namespace liftcoal {

// ---------------------------------------------------------------------------
// Lambda measures

struct BetaMeasure {
    double a;
    double b;
};

struct PointMass {
    double location;  // 0 or 1
    double weight;
};

/// Density x^p (1-x)^q h(x) on (0,1) with h smooth.
struct EndpointDensity {
    double p;
    double q;
    std::function<double(double)> smooth;
};

using LambdaMeasure = std::variant<BetaMeasure, PointMass, EndpointDensity>;

inline LambdaMeasure arcsine_measure() { return BetaMeasure{0.5, 0.5}; }
inline LambdaMeasure uniform_measure() { return BetaMeasure{1.0, 1.0}; }
inline LambdaMeasure kingman_measure() { return PointMass{0.0, 1.0}; }

/// CLI spelling: `arcsine | kingman | uniform | beta:a,b`.
inline LambdaMeasure parse_lambda(std::string_view s) {
    if (s == "arcsine") return arcsine_measure();
    if (s == "kingman") return kingman_measure();
    if (s == "uniform") return uniform_measure();
    if (s.substr(0, 5) == "beta:") {
        std::string rest(s.substr(5));
        std::size_t comma = rest.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("parse_lambda: expected beta:a,b");
        double a = std::stod(rest.substr(0, comma));
        double b = std::stod(rest.substr(comma + 1));
        if (a <= 0.0 || b <= 0.0)
            throw std::invalid_argument("parse_lambda: beta parameters must be positive");
        return BetaMeasure{a, b};
    }
    throw std::invalid_argument("parse_lambda: unknown measure '" + std::string(s) + "'");
}

inline std::string lambda_name(const LambdaMeasure& m) {
    if (const auto* b = std::get_if<BetaMeasure>(&m)) {
        if (b->a == 0.5 && b->b == 0.5) return "arcsine";
        if (b->a == 1.0 && b->b == 1.0) return "uniform";
        return "beta:" + std::to_string(b->a) + "," + std::to_string(b->b);
    }
    if (const auto* p = std::get_if<PointMass>(&m)) {
        if (p->location == 0.0 && p->weight == 1.0) return "kingman";
        return "point_mass:" + std::to_string(p->location) + "," + std::to_string(p->weight);
    }
    return "density";
}

// ---------------------------------------------------------------------------
// Rates

inline void check_bk(int b, int k) {
    if (k < 2 || k > b) throw std::invalid_argument("rate: need 2 <= k <= b");
}

inline constexpr int kQuadratureNodes = 48;

/// lambda_{b,k} = int_0^1 x^{k-2} (1-x)^{b-k} Lambda(dx). Endpoint
/// singularities are absorbed into the Gauss-Jacobi weight, so only the
/// smooth factor is evaluated at the nodes.
inline double rate_integral(int b, int k, const LambdaMeasure& lambda) {
    check_bk(b, k);
    if (const auto* pm = std::get_if<PointMass>(&lambda)) {
        double x = pm->location;
        if (x == 0.0) return k == 2 ? pm->weight : 0.0;
        if (x == 1.0) return k == b ? pm->weight : 0.0;
        throw std::invalid_argument("rate_integral: point mass location must be 0 or 1");
    }
    double p, q;
    std::function<double(double)> h;
    if (const auto* bm = std::get_if<BetaMeasure>(&lambda)) {
        p = bm->a - 1.0;
        q = bm->b - 1.0;
        double logB = std::lgamma(bm->a) + std::lgamma(bm->b) - std::lgamma(bm->a + bm->b);
        double norm = std::exp(-logB);
        h = [norm](double) { return norm; };
    } else {
        const auto& d = std::get<EndpointDensity>(lambda);
        p = d.p;
        q = d.q;
        h = d.smooth;
    }
    double beta_exp = p + (k - 2);   // exponent of x
    double alpha_exp = q + (b - k);  // exponent of (1-x)
    if (beta_exp <= -1.0 || alpha_exp <= -1.0)
        throw std::invalid_argument("rate_integral: non-integrable exponent combination");
    QuadratureRule rule = gauss_jacobi01(kQuadratureNodes, alpha_exp, beta_exp);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.points.size(); ++i)
        sum += rule.weights[i] * h(rule.points[i]);
    return sum;
}

/// Closed form for the beta(a,b) coalescent: B(b-k+beta, k-2+a) / B(a, beta).
inline double rate_beta_closed(int b, int k, double a, double beta) {
    check_bk(b, k);
    if (a <= 0.0 || beta <= 0.0)
        throw std::invalid_argument("rate_beta_closed: parameters must be positive");
    double log_num = std::lgamma(b - k + beta) + std::lgamma(k - 2 + a) -
                     std::lgamma(b - 2 + a + beta);
    double log_den = std::lgamma(a) + std::lgamma(beta) - std::lgamma(a + beta);
    return std::exp(log_num - log_den);
}

// Gamma at a positive integer or half-integer: value = r * pi^(sqrtpi/2).
struct HalfGamma {
    Rational r;
    int sqrtpi;  // 0 or 1
};

/// x given as twice its value (so twice_x/2 = x > 0).
inline HalfGamma gamma_half_lattice(long long twice_x) {
    if (twice_x <= 0)
        throw std::invalid_argument("gamma_half_lattice: argument must be positive");
    if (twice_x % 2 == 0) {
        return HalfGamma{Rational(factorial(twice_x / 2 - 1)), 0};
    }
    // Gamma(n + 1/2) = sqrt(pi) (2n-1)!! / 2^n
    long long n = (twice_x - 1) / 2;
    Rational r(double_factorial(2 * n - 1), BigInt(1) << n);
    return HalfGamma{r, 1};
}

/// Exact beta-coalescent rate for parameters on the half-integer lattice
/// (arguments are twice the parameter values).
inline Rational rate_beta_rational(int b, int k, long long twice_a, long long twice_beta) {
    check_bk(b, k);
    if (twice_a <= 0 || twice_beta <= 0)
        throw std::invalid_argument("rate_beta_rational: parameters must be positive");
    auto beta_fn = [](long long twice_p, long long twice_q) {
        HalfGamma gp = gamma_half_lattice(twice_p);
        HalfGamma gq = gamma_half_lattice(twice_q);
        HalfGamma gpq = gamma_half_lattice(twice_p + twice_q);
        // sqrt(pi) exponents: gp + gq - gpq is 0 or 2 on this lattice.
        return std::pair<Rational, int>(gp.r * gq.r / gpq.r,
                                        gp.sqrtpi + gq.sqrtpi - gpq.sqrtpi);
    };
    auto [num, enum_] = beta_fn(2LL * (b - k) + twice_beta, 2LL * (k - 2) + twice_a);
    auto [den, eden] = beta_fn(twice_a, twice_beta);
    if (enum_ != eden)
        throw std::logic_error("rate_beta_rational: pi factors do not cancel");
    return num / den;
}

/// Exact arcsine rate from the double-factorial form
/// (2k-5)!! (2(b-k)-1)!! / (2^{b-2} (b-2)!).
inline Rational rate_arcsine_rational(int b, int k) {
    check_bk(b, k);
    BigInt num = double_factorial(2LL * k - 5) * double_factorial(2LL * (b - k) - 1);
    BigInt den = (BigInt(1) << (b - 2)) * factorial(b - 2);
    return Rational(num, den);
}

/// Exact per-k-set merger rate of the lifting chain from a state of b
/// blocks: |P_{b-k+1}| |P_{k-1}| / |P_b|.
inline Rational lifted_rate_rational(int b, int k) {
    check_bk(b, k);
    return Rational(port_count(b - k + 1) * port_count(k - 1), port_count(b));
}

// ---------------------------------------------------------------------------
// Rate tables and jump-chain law

/// Rates lambda_{b,k} for 2 <= k <= b <= b_max; exact rationals kept when
/// the measure lives on the half-integer beta lattice or is an atom.
class RateTable {
public:
    static RateTable build(const LambdaMeasure& lambda, int b_max) {
        if (b_max < 2) throw std::invalid_argument("RateTable: b_max must be >= 2");
        RateTable t;
        t.b_max_ = b_max;
        t.name_ = lambda_name(lambda);

        std::optional<std::pair<long long, long long>> lattice;
        if (const auto* bm = std::get_if<BetaMeasure>(&lambda)) {
            double ta = 2.0 * bm->a, tb = 2.0 * bm->b;
            if (ta == std::floor(ta) && tb == std::floor(tb))
                lattice = {static_cast<long long>(ta), static_cast<long long>(tb)};
        }
        const auto* pm = std::get_if<PointMass>(&lambda);

        for (int b = 2; b <= b_max; ++b) {
            for (int k = 2; k <= b; ++k) {
                double val = rate_integral(b, k, lambda);
                std::optional<Rational> ex;
                if (lattice) {
                    ex = rate_beta_rational(b, k, lattice->first, lattice->second);
                    val = static_cast<double>(*ex);
                } else if (pm) {
                    double atom = rate_integral(b, k, lambda);
                    ex = Rational(atom);
                    val = atom;
                }
                t.rates_.push_back(val);
                t.exact_.push_back(std::move(ex));
            }
        }
        return t;
    }

    int b_max() const { return b_max_; }
    const std::string& name() const { return name_; }
    bool is_exact() const { return !exact_.empty() && exact_.front().has_value(); }

    double rate(int b, int k) const { return rates_[index(b, k)]; }
    const std::optional<Rational>& exact_rate(int b, int k) const { return exact_[index(b, k)]; }

    std::vector<double> row(int b) const {
        std::vector<double> r;
        for (int k = 2; k <= b; ++k) r.push_back(rate(b, k));
        return r;
    }

    /// Total rate from a state of b blocks: sum_k C(b,k) lambda_{b,k}.
    double total_rate(int b) const {
        double s = 0.0;
        for (int k = 2; k <= b; ++k)
            s += static_cast<double>(binomial(b, k)) * rate(b, k);
        return s;
    }

private:
    std::size_t index(int b, int k) const {
        if (b < 2 || b > b_max_) throw std::out_of_range("RateTable: b out of range");
        check_bk(b, k);
        // row b starts after rows 2..b-1, row j holding j-1 entries
        std::size_t start = static_cast<std::size_t>((b - 2) * (b - 1) / 2);
        return start + static_cast<std::size_t>(k - 2);
    }

    int b_max_ = 0;
    std::string name_;
    std::vector<double> rates_;
    std::vector<std::optional<Rational>> exact_;
};

/// P(merger size = k) = C(b,k) lambda_{b,k} / sum_j C(b,j) lambda_{b,j},
/// for k = 2..b. `row` holds lambda_{b,k} in that order.
inline std::vector<double> merger_size_pmf(int b, const std::vector<double>& row) {
    if (b < 2 || row.size() != static_cast<std::size_t>(b - 1))
        throw std::invalid_argument("merger_size_pmf: row must hold b-1 rates");
    std::vector<double> p(row.size());
    double total = 0.0;
    for (int k = 2; k <= b; ++k) {
        p[static_cast<std::size_t>(k - 2)] =
            static_cast<double>(binomial(b, k)) * row[static_cast<std::size_t>(k - 2)];
        total += p[static_cast<std::size_t>(k - 2)];
    }
    if (total <= 0.0) throw std::invalid_argument("merger_size_pmf: all rates zero");
    for (auto& x : p) x /= total;
    return p;
}

inline std::vector<Rational> merger_size_pmf_exact(int b, const std::vector<Rational>& row) {
    if (b < 2 || row.size() != static_cast<std::size_t>(b - 1))
        throw std::invalid_argument("merger_size_pmf_exact: row must hold b-1 rates");
    std::vector<Rational> p(row.size());
    Rational total = 0;
    for (int k = 2; k <= b; ++k) {
        p[static_cast<std::size_t>(k - 2)] =
            Rational(binomial(b, k)) * row[static_cast<std::size_t>(k - 2)];
        total += p[static_cast<std::size_t>(k - 2)];
    }
    if (total == 0) throw std::invalid_argument("merger_size_pmf_exact: all rates zero");
    for (auto& x : p) x /= total;
    return p;
}

}  // namespace liftcoal

#endif
