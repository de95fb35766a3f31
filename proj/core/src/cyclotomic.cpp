#include "mirrorcat/cyclotomic.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>

#include <mpfr.h>

namespace mirrorcat {

long euler_phi(long n) {
    long result = n;
    long m = n;
    for (long p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            result -= result / p;
            while (m % p == 0) m /= p;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

long lcm_long(long a, long b) { return a / std::gcd(a, b) * b; }

namespace {

std::vector<long> prime_factors(long n) {
    std::vector<long> ps;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

using ZPoly = std::vector<mpz_class>;  // ascending coefficients

// Exact division of integer polynomials (remainder known to vanish).
ZPoly zpoly_div(const ZPoly& num, const ZPoly& den) {
    ZPoly rem = num;
    ZPoly quo(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, 0);
    long dd = static_cast<long>(den.size()) - 1;
    for (long i = static_cast<long>(rem.size()) - 1; i >= dd; --i) {
        if (rem[i] == 0) continue;
        mpz_class c = rem[i] / den[dd];
        quo[i - dd] = c;
        for (long j = 0; j <= dd; ++j) rem[i - dd + j] -= c * den[j];
    }
    return quo;
}

// N-th cyclotomic polynomial, memoized.
const ZPoly& cyclotomic_poly(long n) {
    static std::map<long, ZPoly> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    std::function<const ZPoly&(long)> get = [&](long m) -> const ZPoly& {
        auto jt = cache.find(m);
        if (jt != cache.end()) return jt->second;
        ZPoly xm1(m + 1, 0);
        xm1[0] = -1;
        xm1[m] = 1;
        ZPoly acc{1};
        for (long d = 1; d < m; ++d) {
            if (m % d != 0) continue;
            const ZPoly& pd = get(d);
            ZPoly next(acc.size() + pd.size() - 1, 0);
            for (size_t i = 0; i < acc.size(); ++i)
                for (size_t j = 0; j < pd.size(); ++j) next[i + j] += acc[i] * pd[j];
            acc = std::move(next);
        }
        return cache.emplace(m, zpoly_div(xm1, acc)).first->second;
    };
    return get(n);
}

struct OrderCtx {
    long n = 1;
    long phi = 1;
    std::vector<long> primes;
    // red[e - phi] = coefficients of zeta^e in the power basis, for e in [phi, n)
    std::vector<std::vector<mpz_class>> red;
};

const OrderCtx& order_ctx(long n) {
    static std::map<long, std::unique_ptr<OrderCtx>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return *it->second;

    auto ctx = std::make_unique<OrderCtx>();
    ctx->n = n;
    ctx->phi = euler_phi(n);
    ctx->primes = prime_factors(n);
    const ZPoly& cp = cyclotomic_poly(n);  // degree phi, monic
    long phi = ctx->phi;
    // zeta^phi = -(cp[0] + cp[1] x + ... + cp[phi-1] x^{phi-1})
    // then propagate upwards.
    ctx->red.reserve(n - phi);
    for (long e = phi; e < n; ++e) {
        std::vector<mpz_class> row(phi, 0);
        if (e == phi) {
            for (long j = 0; j < phi; ++j) row[j] = -cp[j];
        } else {
            const auto& prev = ctx->red[e - 1 - phi];  // zeta^{e-1}
            // multiply by x: shift, reduce the overflow term via red[0]
            mpz_class top = prev[phi - 1];
            for (long j = phi - 1; j >= 1; --j) row[j] = prev[j - 1];
            row[0] = 0;
            if (top != 0) {
                const auto& r0 = ctx->red[0];
                for (long j = 0; j < phi; ++j) row[j] += top * r0[j];
            }
        }
        ctx->red.push_back(std::move(row));
    }
    return *cache.emplace(n, std::move(ctx)).first->second;
}

int rat_sign(const Rat& r) { return sgn(r); }

}  // namespace

CycNumber::CycNumber(long value) : order_(1) {
    if (value != 0) terms_.emplace_back(0, Rat(value));
}

CycNumber::CycNumber(const Rat& value) : order_(1) {
    if (value != 0) terms_.emplace_back(0, value);
}

CycNumber CycNumber::zeta(long order, long exp) {
    if (order < 1) throw CycError("cyclotomic order must be positive");
    return from_terms(order, {{exp, Rat(1)}});
}

CycNumber CycNumber::from_terms(long order, const std::vector<Term>& terms) {
    if (order < 1) throw CycError("cyclotomic order must be positive");
    return reduce(order, terms);
}

CycNumber CycNumber::reduce(long order, std::vector<Term> raw) {
    CycNumber out = reduce_nocanon(order, std::move(raw));
    out.canonicalize_order();
    return out;
}

void CycNumber::canonicalize_order() {
    {
        if (terms_.empty()) {
            order_ = 1;
            return;
        }
        if (order_ == 1) return;

        // Q(zeta_{2m}) = Q(zeta_m) for odd m: zeta_{2m} = -zeta_m^{(m+1)/2}.
        if (order_ % 4 == 2) {
            long m = order_ / 2;
            long h = (m + 1) / 2;
            std::vector<Term> mapped;
            mapped.reserve(terms_.size());
            for (const auto& [e, c] : terms_)
                mapped.emplace_back((e * h) % m, (e % 2 == 0) ? c : -c);
            *this = reduce(m, std::move(mapped));
            return;
        }

        const OrderCtx& ctx = order_ctx(order_);
        for (long p : ctx.primes) {
            long m = order_ / p;
            // Galois-invariance under Gal(Q(zeta_n)/Q(zeta_m)) = {k : k = 1 mod m}.
            // Compared in the reduced power basis at the current order; the
            // reduction mod the cyclotomic polynomial is unique, so this is
            // field equality.
            bool invariant = true;
            for (long k = 1 + m; k < order_ && invariant; k += m) {
                if (std::gcd(k, order_) != 1) continue;
                std::vector<Term> mapped;
                mapped.reserve(terms_.size());
                for (const auto& [e, c] : terms_) mapped.emplace_back(e * k % order_, c);
                CycNumber sig = reduce_nocanon(order_, std::move(mapped));
                if (sig.terms_ != terms_) invariant = false;
            }
            if (!invariant) continue;

            // Rewrite in the power basis of Q(zeta_m): solve B y = a where the
            // columns of B are the lifts of zeta_m^j.
            long phim = euler_phi(m);
            long stride = order_ / m;
            std::vector<std::vector<Rat>> B(ctx.phi, std::vector<Rat>(phim, Rat(0)));
            for (long j = 0; j < phim; ++j) {
                CycNumber col = reduce_nocanon(order_, {{j * stride, Rat(1)}});
                for (const auto& [e, c] : col.terms_) B[e][j] = c;
            }
            std::vector<Rat> rhs(ctx.phi, Rat(0));
            for (const auto& [e, c] : terms_) rhs[e] = c;
            // Gaussian elimination (B has full column rank).
            std::vector<long> pivot_row(phim, -1);
            long row = 0;
            for (long colj = 0; colj < phim && row < ctx.phi; ++colj) {
                long pr = -1;
                for (long r = row; r < ctx.phi; ++r)
                    if (B[r][colj] != 0) { pr = r; break; }
                if (pr < 0) continue;
                std::swap(B[pr], B[row]);
                std::swap(rhs[pr], rhs[row]);
                Rat inv = Rat(1) / B[row][colj];
                for (long cc = colj; cc < phim; ++cc) B[row][cc] *= inv;
                rhs[row] *= inv;
                for (long r = 0; r < ctx.phi; ++r) {
                    if (r == row || B[r][colj] == 0) continue;
                    Rat f = B[r][colj];
                    for (long cc = colj; cc < phim; ++cc) B[r][cc] -= f * B[row][cc];
                    rhs[r] -= f * rhs[row];
                }
                pivot_row[colj] = row;
                ++row;
            }
            std::vector<Term> mterms;
            for (long j = 0; j < phim; ++j) {
                if (pivot_row[j] >= 0 && rhs[pivot_row[j]] != 0)
                    mterms.emplace_back(j, rhs[pivot_row[j]]);
            }
            *this = reduce(m, std::move(mterms));  // recursion strictly lowers the order
            return;
        }
    }
}

// Reduction mod the cyclotomic polynomial without the conductor descent
// (used internally while canonicalizing).
CycNumber CycNumber::reduce_nocanon(long order, std::vector<Term> raw) {
    const OrderCtx& ctx = order_ctx(order);
    std::vector<Rat> dense(ctx.phi, Rat(0));
    for (auto& [e, c] : raw) {
        if (c == 0) continue;
        long ee = e % order;
        if (ee < 0) ee += order;
        if (ee < ctx.phi) {
            dense[ee] += c;
        } else {
            const auto& row = ctx.red[ee - ctx.phi];
            for (long j = 0; j < ctx.phi; ++j)
                if (row[j] != 0) dense[j] += c * Rat(row[j]);
        }
    }
    CycNumber out;
    out.order_ = order;
    for (long j = 0; j < ctx.phi; ++j)
        if (dense[j] != 0) out.terms_.emplace_back(j, dense[j]);
    return out;
}

bool CycNumber::is_one() const {
    return order_ == 1 && terms_.size() == 1 && terms_[0].first == 0 && terms_[0].second == 1;
}

Rat CycNumber::as_rational() const {
    if (!is_rational()) throw CycError("not a rational number: " + str());
    return terms_.empty() ? Rat(0) : terms_[0].second;
}

CycNumber CycNumber::operator-() const {
    CycNumber out = *this;
    for (auto& [e, c] : out.terms_) c = -c;
    return out;
}

CycNumber& CycNumber::operator+=(const CycNumber& rhs) {
    long L = lcm_long(order_, rhs.order_);
    std::vector<Term> raw;
    raw.reserve(terms_.size() + rhs.terms_.size());
    long sa = L / order_, sb = L / rhs.order_;
    for (const auto& [e, c] : terms_) raw.emplace_back(e * sa, c);
    for (const auto& [e, c] : rhs.terms_) raw.emplace_back(e * sb, c);
    *this = reduce(L, std::move(raw));
    return *this;
}

CycNumber& CycNumber::operator-=(const CycNumber& rhs) { return *this += -rhs; }

CycNumber& CycNumber::operator*=(const CycNumber& rhs) {
    if (is_zero() || rhs.is_zero()) {
        *this = CycNumber();
        return *this;
    }
    long L = lcm_long(order_, rhs.order_);
    long sa = L / order_, sb = L / rhs.order_;
    std::vector<Term> raw;
    raw.reserve(terms_.size() * rhs.terms_.size());
    for (const auto& [ea, ca] : terms_)
        for (const auto& [eb, cb] : rhs.terms_)
            raw.emplace_back(ea * sa + eb * sb, ca * cb);
    *this = reduce(L, std::move(raw));
    return *this;
}

CycNumber& CycNumber::operator/=(const CycNumber& rhs) {
    if (rhs.is_zero()) throw CycError("division by zero");
    return *this *= rhs.inverse();
}

CycNumber CycNumber::conj() const {
    if (order_ == 1) return *this;
    return galois(order_ - 1);
}

CycNumber CycNumber::galois(long k) const {
    long kk = k % order_;
    if (kk < 0) kk += order_;
    if (std::gcd(kk, order_) != 1)
        throw CycError("galois exponent not coprime to the order");
    std::vector<Term> raw;
    raw.reserve(terms_.size());
    for (const auto& [e, c] : terms_) raw.emplace_back(e * kk % order_, c);
    return reduce(order_, std::move(raw));
}

CycNumber CycNumber::inverse() const {
    if (is_zero()) throw CycError("division by zero");
    if (order_ == 1) return CycNumber(Rat(1) / terms_[0].second);

    // Extended Euclid in Q[x] against the cyclotomic polynomial.
    using QPoly = std::vector<Rat>;
    const OrderCtx& ctx = order_ctx(order_);
    const ZPoly& cp = cyclotomic_poly(order_);
    QPoly r0(cp.size());
    for (size_t i = 0; i < cp.size(); ++i) r0[i] = Rat(cp[i]);
    QPoly r1(ctx.phi, Rat(0));
    for (const auto& [e, c] : terms_) r1[e] = c;
    while (!r1.empty() && r1.back() == 0) r1.pop_back();

    auto deg = [](const QPoly& p) { return static_cast<long>(p.size()) - 1; };
    QPoly t0{}, t1{Rat(1)};  // coefficients of *this in the Bezout combination
    while (deg(r1) > 0) {
        // divide r0 by r1
        QPoly q(deg(r0) - deg(r1) + 1, Rat(0));
        QPoly rem = r0;
        for (long i = deg(rem); i >= deg(r1); --i) {
            if (rem[i] == 0) continue;
            Rat c = rem[i] / r1.back();
            q[i - deg(r1)] = c;
            for (long j = 0; j <= deg(r1); ++j) rem[i - deg(r1) + j] -= c * r1[j];
        }
        while (!rem.empty() && rem.back() == 0) rem.pop_back();
        // t_next = t0 - q * t1
        QPoly tn(std::max(t0.size(), q.size() + t1.size() - 1), Rat(0));
        for (size_t i = 0; i < t0.size(); ++i) tn[i] = t0[i];
        for (size_t i = 0; i < q.size(); ++i)
            for (size_t j = 0; j < t1.size(); ++j) tn[i + j] -= q[i] * t1[j];
        while (!tn.empty() && tn.back() == 0) tn.pop_back();
        r0 = std::move(r1);
        r1 = std::move(rem);
        t0 = std::move(t1);
        t1 = std::move(tn);
    }
    if (r1.empty()) throw CycError("inverse: zero divisor in cyclotomic reduction");
    Rat scale = Rat(1) / r1[0];
    std::vector<Term> raw;
    for (size_t i = 0; i < t1.size(); ++i)
        if (t1[i] != 0) raw.emplace_back(static_cast<long>(i), t1[i] * scale);
    return reduce(order_, std::move(raw));
}

CycNumber CycNumber::pow(long k) const {
    if (k < 0) return inverse().pow(-k);
    CycNumber acc(1), base = *this;
    while (k > 0) {
        if (k & 1) acc *= base;
        base *= base;
        k >>= 1;
    }
    return acc;
}

std::complex<double> CycNumber::embed() const {
    std::complex<double> out(0.0, 0.0);
    const double tau = 6.283185307179586476925286766559;
    for (const auto& [e, c] : terms_) {
        double arg = tau * static_cast<double>(e) / static_cast<double>(order_);
        out += c.get_d() * std::complex<double>(std::cos(arg), std::sin(arg));
    }
    return out;
}

namespace {

// [lo, hi] interval with outward-rounded mpfr endpoints.
struct Interval {
    mpfr_t lo, hi;
    explicit Interval(mpfr_prec_t prec) {
        mpfr_init2(lo, prec);
        mpfr_init2(hi, prec);
        mpfr_set_zero(lo, 1);
        mpfr_set_zero(hi, 1);
    }
    ~Interval() {
        mpfr_clear(lo);
        mpfr_clear(hi);
    }
    Interval(const Interval&) = delete;
    Interval& operator=(const Interval&) = delete;
};

}  // namespace

int CycNumber::real_sign(long prec_cap_bits) const {
    if (!is_self_conjugate()) throw CycError("not a real element");
    if (is_zero()) return 0;
    if (is_rational()) return rat_sign(terms_[0].second);

    for (long prec = 128; prec <= prec_cap_bits; prec *= 2) {
        Interval sum{static_cast<mpfr_prec_t>(prec)};
        mpfr_t pi_lo, pi_hi, ang_lo, ang_hi, cos_mid, w, t_lo, t_hi, c_lo, c_hi, p;
        mpfr_inits2(prec, pi_lo, pi_hi, ang_lo, ang_hi, cos_mid, w, t_lo, t_hi, c_lo, c_hi, p,
                    static_cast<mpfr_ptr>(nullptr));
        mpfr_const_pi(pi_lo, MPFR_RNDD);
        mpfr_const_pi(pi_hi, MPFR_RNDU);
        for (const auto& [e, c] : terms_) {
            // angle = 2*pi*e/order, e >= 0
            Rat f(2 * e, order_);
            f.canonicalize();
            mpfr_mul_q(ang_lo, pi_lo, f.get_mpq_t(), MPFR_RNDD);
            mpfr_mul_q(ang_hi, pi_hi, f.get_mpq_t(), MPFR_RNDU);
            // cos over the tiny angle interval: Lipschitz bound |cos(x)-cos(a)| <= |x-a|
            mpfr_cos(cos_mid, ang_lo, MPFR_RNDN);
            mpfr_sub(w, ang_hi, ang_lo, MPFR_RNDU);
            mpfr_set_ui_2exp(p, 1, -prec + 2, MPFR_RNDU);
            mpfr_add(w, w, p, MPFR_RNDU);
            mpfr_sub(t_lo, cos_mid, w, MPFR_RNDD);
            mpfr_add(t_hi, cos_mid, w, MPFR_RNDU);
            // multiply by the exact rational coefficient
            mpfr_set_q(c_lo, c.get_mpq_t(), MPFR_RNDD);
            mpfr_set_q(c_hi, c.get_mpq_t(), MPFR_RNDU);
            if (sgn(c) >= 0) {
                mpfr_mul(t_lo, t_lo, c_lo, MPFR_RNDD);
                mpfr_mul(t_hi, t_hi, c_hi, MPFR_RNDU);
            } else {
                mpfr_t tmp;
                mpfr_init2(tmp, prec);
                mpfr_mul(tmp, t_hi, c_lo, MPFR_RNDD);  // most negative
                mpfr_mul(t_hi, t_lo, c_lo, MPFR_RNDU);
                mpfr_set(t_lo, tmp, MPFR_RNDD);
                mpfr_clear(tmp);
            }
            mpfr_add(sum.lo, sum.lo, t_lo, MPFR_RNDD);
            mpfr_add(sum.hi, sum.hi, t_hi, MPFR_RNDU);
        }
        int result = 0;
        if (mpfr_sgn(sum.lo) > 0) result = 1;
        else if (mpfr_sgn(sum.hi) < 0) result = -1;
        mpfr_clears(pi_lo, pi_hi, ang_lo, ang_hi, cos_mid, w, t_lo, t_hi, c_lo, c_hi, p,
                    static_cast<mpfr_ptr>(nullptr));
        if (result != 0) return result;
    }
    throw CycError("real_sign: precision cap exhausted before the interval excluded zero");
}

bool is_real_positive(const CycNumber& a, long prec_cap_bits) {
    return a.real_sign(prec_cap_bits) > 0;
}

std::string CycNumber::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << (sgn(c) >= 0 ? " + " : " - ");
        Rat ac = abs(c);
        if (first && sgn(c) < 0) os << "-";
        first = false;
        if (e == 0) {
            os << ac.get_str();
        } else {
            if (ac != 1) os << ac.get_str() << "*";
            os << "z" << order_;
            if (e != 1) os << "^" << e;
        }
    }
    return os.str();
}

}  // namespace mirrorcat
